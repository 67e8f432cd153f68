#pragma once

#include <omnikit/construct.hpp>
#include <omnikit/core.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace omnikit {

/// Bitset over target codes: bit c is set iff the target with code c occurs.
class CoverageSet {
public:
    CoverageSet(int k, int a, std::uint64_t size);

    [[nodiscard]] auto k() const noexcept -> int { return _k; }
    [[nodiscard]] auto a() const noexcept -> int { return _a; }
    [[nodiscard]] auto size() const noexcept -> std::uint64_t { return _size; }

    [[nodiscard]] auto test(std::uint64_t code) const -> bool { return (_words[code >> 6] >> (code & 63)) & 1U; }
    void set(std::uint64_t code) { _words[code >> 6] |= std::uint64_t{1} << (code & 63); }
    void merge(const CoverageSet & other);

    [[nodiscard]] auto count() const -> std::uint64_t;
    [[nodiscard]] auto full() const -> bool { return count() == _size; }

    /// Smallest `limit` codes whose bit is clear.
    [[nodiscard]] auto missing(std::size_t limit) const -> std::vector<std::uint64_t>;

private:
    int _k;
    int _a;
    std::uint64_t _size;
    std::vector<std::uint64_t> _words;
};

struct VerifyOptions {
    /// Largest a^{k^2} for which a full coverage bitset is built.
    std::uint64_t coverage_guard = std::uint64_t{1} << 32;
    std::size_t missing_limit = 32;
    unsigned workers = 1;
};

struct VerifyReport {
    bool is_omni = false;
    int k = 0;
    int a = 0;
    std::uint64_t covered = 0;
    std::uint64_t targets = 0;
    std::vector<std::uint64_t> missing_sample;
    std::uint64_t submatrices_enumerated = 0;
    std::chrono::duration<double> elapsed{};
};

/// Exact set of k x k targets occurring in m. Every row k-subset is paired
/// with every column k-subset.
[[nodiscard]] auto coverage(const MosaicMatrix & m, int k, const VerifyOptions & options = {}) -> CoverageSet;

/// coverage() plus the number of submatrices enumerated.
[[nodiscard]] auto coverage_with_count(const MosaicMatrix & m, int k, const VerifyOptions & options = {})
    -> std::pair<CoverageSet, std::uint64_t>;

[[nodiscard]] auto is_omnimosaic(const MosaicMatrix & m, int k, const VerifyOptions & options = {}) -> VerifyReport;

/// Lexicographically least placement of `target` in m, or nullopt.
[[nodiscard]] auto contains_target(const MosaicMatrix & m, const MosaicMatrix & target, unsigned workers = 1)
    -> std::optional<Placement>;

[[nodiscard]] auto verify_placement(const MosaicMatrix & m, const Placement & p, const MosaicMatrix & target) -> bool;

/// The submatrix of m selected by p.
[[nodiscard]] auto extract(const MosaicMatrix & m, const Placement & p) -> MosaicMatrix;

} // namespace omnikit
