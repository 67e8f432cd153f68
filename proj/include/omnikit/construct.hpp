#pragma once

#include <omnikit/core.hpp>

#include <cstdint>
#include <vector>

namespace omnikit {

enum class Orientation : std::uint8_t { horizontal, vertical };

/// k x k diagram assigning a horizontal or vertical line to every cell.
class GridDiagram {
public:
    GridDiagram(int k, std::vector<Orientation> cells);

    static auto all_horizontal(int k) -> GridDiagram;

    [[nodiscard]] auto k() const noexcept -> int { return _k; }
    [[nodiscard]] auto at(int i, int j) const -> Orientation { return _cells[static_cast<std::size_t>(i * _k + j)]; }

    /// Number of horizontal cells in row i.
    [[nodiscard]] auto row_count(int i) const -> int;
    /// Number of vertical cells in column j.
    [[nodiscard]] auto col_count(int j) const -> int;

    [[nodiscard]] auto row_counts() const -> std::vector<int>;
    [[nodiscard]] auto col_counts() const -> std::vector<int>;

    friend auto operator==(const GridDiagram &, const GridDiagram &) -> bool = default;

private:
    int _k;
    std::vector<Orientation> _cells;
};

/// Geometry of a constructed mosaic: the row region of diagram row i spans
/// [row_offsets[i], row_offsets[i+1]); likewise for column regions.
/// h_columns[i] lists the horizontal cells of diagram row i in ascending
/// column order, v_rows[j] the vertical cells of diagram column j.
struct RegionMap {
    int a = 0;
    std::vector<std::size_t> row_offsets;
    std::vector<std::size_t> col_offsets;
    std::vector<std::vector<int>> h_columns;
    std::vector<std::vector<int>> v_rows;
};

/// k strictly increasing row indices and k strictly increasing column indices.
struct Placement {
    std::vector<std::size_t> row_idx;
    std::vector<std::size_t> col_idx;

    friend auto operator==(const Placement &, const Placement &) -> bool = default;
    friend auto operator<=>(const Placement &, const Placement &) = default;
};

struct ConstructedMosaic {
    MosaicMatrix matrix;
    RegionMap regions;
};

/// Horizontal in the top-left floor(k/2) x ceil(k/2) block and in the
/// bottom-right ceil(k/2) x floor(k/2) block, vertical elsewhere.
[[nodiscard]] auto canonical_grid(int k) -> GridDiagram;

[[nodiscard]] auto region_map(const GridDiagram & grid, Alphabet alphabet) -> RegionMap;

/// Expands every horizontal cell (i, j) into a block whose local row l carries
/// the letter of word(l) at the position of j among row i's horizontal cells,
/// where word(l) is the base-a expansion of l (most significant letter first);
/// vertical cells symmetrically by local column.
[[nodiscard]] auto build_mosaic(const GridDiagram & grid, Alphabet alphabet) -> ConstructedMosaic;

/// All a^k words of length k in code order, the list repeated k times.
[[nodiscard]] auto thin_strip(int k, Alphabet alphabet) -> MosaicMatrix;

/// build_mosaic(canonical_grid(k)) padded with copies of its last row (or
/// column) to a square of side ceil(k/2) a^ceil(k/2) + floor(k/2) a^floor(k/2).
[[nodiscard]] auto square_omnimosaic(int k, Alphabet alphabet) -> MosaicMatrix;

/// Finds `target` in the mosaic built from `grid` without searching.
[[nodiscard]] auto locate(const RegionMap & regions, const GridDiagram & grid, const MosaicMatrix & target) -> Placement;

/// Non-constructive size estimate k * a^(k^(d-1)/d) for d-dimensional mosaics.
[[nodiscard]] auto higher_dim_side_estimate(int k, int a, int d) -> double;

/// Largest dimension build_mosaic will produce.
inline constexpr std::size_t max_constructed_dimension = std::size_t{1} << 24;

} // namespace omnikit
