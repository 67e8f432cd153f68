#include <omnikit/construct.hpp>

#include <algorithm>
#include <cmath>

namespace omnikit {

GridDiagram::GridDiagram(int k, std::vector<Orientation> cells) :
    _k(k),
    _cells(std::move(cells))
{
    if (k < 1)
        throw Error("grid side must be positive");
    if (_cells.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
        throw Error("grid must have k*k cells");
}

auto GridDiagram::all_horizontal(int k) -> GridDiagram
{
    return GridDiagram{k, std::vector<Orientation>(static_cast<std::size_t>(k * k), Orientation::horizontal)};
}

auto GridDiagram::row_count(int i) const -> int
{
    int n = 0;
    for (int j = 0; j < _k; ++j)
        n += at(i, j) == Orientation::horizontal;
    return n;
}

auto GridDiagram::col_count(int j) const -> int
{
    int n = 0;
    for (int i = 0; i < _k; ++i)
        n += at(i, j) == Orientation::vertical;
    return n;
}

auto GridDiagram::row_counts() const -> std::vector<int>
{
    std::vector<int> r(static_cast<std::size_t>(_k));
    for (int i = 0; i < _k; ++i)
        r[static_cast<std::size_t>(i)] = row_count(i);
    return r;
}

auto GridDiagram::col_counts() const -> std::vector<int>
{
    std::vector<int> c(static_cast<std::size_t>(_k));
    for (int j = 0; j < _k; ++j)
        c[static_cast<std::size_t>(j)] = col_count(j);
    return c;
}

auto canonical_grid(int k) -> GridDiagram
{
    if (k < 1)
        throw Error("grid side must be positive");
    const int lo = k / 2, hi = (k + 1) / 2;
    std::vector<Orientation> cells;
    cells.reserve(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            bool h = (i < lo && j < hi) || (i >= lo && j >= hi);
            cells.push_back(h ? Orientation::horizontal : Orientation::vertical);
        }
    return GridDiagram{k, std::move(cells)};
}

namespace {
    auto region_size(int a, int exponent) -> std::size_t
    {
        return checked_pow(static_cast<std::uint64_t>(a), static_cast<unsigned>(exponent), max_constructed_dimension,
            "construction dimension overflow");
    }

    /// Letter at position t of the length-len base-a word with index `index`.
    auto word_letter(std::size_t index, int len, int t, int a) -> Letter
    {
        for (int s = len - 1; s > t; --s)
            index /= static_cast<std::size_t>(a);
        return static_cast<Letter>(index % static_cast<std::size_t>(a));
    }
}

auto region_map(const GridDiagram & grid, Alphabet alphabet) -> RegionMap
{
    const int k = grid.k(), a = alphabet.size();
    RegionMap rm;
    rm.a = a;
    rm.row_offsets.assign(1, 0);
    rm.col_offsets.assign(1, 0);
    rm.h_columns.resize(static_cast<std::size_t>(k));
    rm.v_rows.resize(static_cast<std::size_t>(k));

    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (grid.at(i, j) == Orientation::horizontal)
                rm.h_columns[static_cast<std::size_t>(i)].push_back(j);
            else
                rm.v_rows[static_cast<std::size_t>(j)].push_back(i);
        }

    for (int i = 0; i < k; ++i) {
        auto next = rm.row_offsets.back() + region_size(a, grid.row_count(i));
        auto next_col = rm.col_offsets.back() + region_size(a, grid.col_count(i));
        if (next > max_constructed_dimension || next_col > max_constructed_dimension)
            throw Error("construction dimension overflow");
        rm.row_offsets.push_back(next);
        rm.col_offsets.push_back(next_col);
    }
    return rm;
}

auto build_mosaic(const GridDiagram & grid, Alphabet alphabet) -> ConstructedMosaic
{
    auto rm = region_map(grid, alphabet);
    const int k = grid.k(), a = alphabet.size();
    const auto rows = rm.row_offsets.back(), cols = rm.col_offsets.back();
    if (rows * cols > (std::size_t{1} << 32))
        throw Error("construction dimension overflow");

    std::vector<Letter> entries(rows * cols);
    for (int i = 0; i < k; ++i) {
        const auto & hs = rm.h_columns[static_cast<std::size_t>(i)];
        for (int j = 0; j < k; ++j) {
            const auto r0 = rm.row_offsets[static_cast<std::size_t>(i)], r1 = rm.row_offsets[static_cast<std::size_t>(i) + 1];
            const auto c0 = rm.col_offsets[static_cast<std::size_t>(j)], c1 = rm.col_offsets[static_cast<std::size_t>(j) + 1];
            if (grid.at(i, j) == Orientation::horizontal) {
                const int t = static_cast<int>(std::find(hs.begin(), hs.end(), j) - hs.begin());
                const int len = static_cast<int>(hs.size());
                for (auto r = r0; r < r1; ++r) {
                    auto v = word_letter(r - r0, len, t, a);
                    std::fill(entries.begin() + static_cast<std::ptrdiff_t>(r * cols + c0),
                        entries.begin() + static_cast<std::ptrdiff_t>(r * cols + c1), v);
                }
            }
            else {
                const auto & vs = rm.v_rows[static_cast<std::size_t>(j)];
                const int t = static_cast<int>(std::find(vs.begin(), vs.end(), i) - vs.begin());
                const int len = static_cast<int>(vs.size());
                for (auto c = c0; c < c1; ++c) {
                    auto v = word_letter(c - c0, len, t, a);
                    for (auto r = r0; r < r1; ++r)
                        entries[r * cols + c] = v;
                }
            }
        }
    }
    return ConstructedMosaic{MosaicMatrix{rows, cols, alphabet, std::move(entries)}, std::move(rm)};
}

auto thin_strip(int k, Alphabet alphabet) -> MosaicMatrix
{
    return build_mosaic(GridDiagram::all_horizontal(k), alphabet).matrix;
}

auto square_omnimosaic(int k, Alphabet alphabet) -> MosaicMatrix
{
    auto built = build_mosaic(canonical_grid(k), alphabet).matrix;
    const auto rows = built.rows(), cols = built.cols();
    const auto n = std::max(rows, cols);
    if (rows == cols)
        return built;

    std::vector<Letter> entries(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            entries[r * n + c] = built.at(std::min(r, rows - 1), std::min(c, cols - 1));
    return MosaicMatrix{n, n, alphabet, std::move(entries)};
}

auto locate(const RegionMap & regions, const GridDiagram & grid, const MosaicMatrix & target) -> Placement
{
    const int k = grid.k();
    if (target.rows() != static_cast<std::size_t>(k) || target.cols() != static_cast<std::size_t>(k))
        throw Error("target shape does not match grid side " + std::to_string(k));
    if (target.alphabet().size() != regions.a)
        throw Error("target alphabet does not match mosaic alphabet");
    if (regions.row_offsets.size() != static_cast<std::size_t>(k) + 1)
        throw Error("region map does not match grid");

    const auto a = static_cast<std::size_t>(regions.a);
    Placement p;
    for (int i = 0; i < k; ++i) {
        std::size_t index = 0;
        for (int j : regions.h_columns[static_cast<std::size_t>(i)])
            index = index * a + target.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        p.row_idx.push_back(regions.row_offsets[static_cast<std::size_t>(i)] + index);
    }
    for (int j = 0; j < k; ++j) {
        std::size_t index = 0;
        for (int i : regions.v_rows[static_cast<std::size_t>(j)])
            index = index * a + target.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        p.col_idx.push_back(regions.col_offsets[static_cast<std::size_t>(j)] + index);
    }
    return p;
}

auto higher_dim_side_estimate(int k, int a, int d) -> double
{
    if (d < 2)
        throw Error("dimension must be at least 2");
    return k * std::pow(static_cast<double>(a), std::pow(static_cast<double>(k), d - 1) / d);
}

} // namespace omnikit
