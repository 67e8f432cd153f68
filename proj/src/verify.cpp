#include <omnikit/detail/combinations.hpp>
#include <omnikit/detail/parallel.hpp>
#include <omnikit/verify.hpp>

#include <algorithm>
#include <bit>

namespace omnikit {

CoverageSet::CoverageSet(int k, int a, std::uint64_t size) :
    _k(k),
    _a(a),
    _size(size),
    _words((size + 63) / 64, 0)
{
}

void CoverageSet::merge(const CoverageSet & other)
{
    if (other._size != _size)
        throw Error("cannot merge coverage sets of different sizes");
    for (std::size_t i = 0; i < _words.size(); ++i)
        _words[i] |= other._words[i];
}

auto CoverageSet::count() const -> std::uint64_t
{
    std::uint64_t n = 0;
    for (auto w : _words)
        n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

auto CoverageSet::missing(std::size_t limit) const -> std::vector<std::uint64_t>
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 0; c < _size && out.size() < limit; ++c)
        if (! test(c))
            out.push_back(c);
    return out;
}

namespace {
    /// For a fixed row subset, column c contributes col_value[c] * a^(k-1-j)
    /// to the code of any placement using it as its j-th column.
    void cover_row_subset(const MosaicMatrix & m, const std::vector<std::size_t> & rows, int k,
        std::vector<std::uint64_t> & col_value, CoverageSet & out, std::uint64_t & enumerated)
    {
        const auto a = static_cast<std::uint64_t>(m.alphabet().size());
        const auto n_cols = m.cols();
        const auto row_weight_step = checked_pow(a, static_cast<unsigned>(k), UINT64_MAX, "overflow");

        for (std::size_t c = 0; c < n_cols; ++c) {
            std::uint64_t v = 0;
            for (auto r : rows)
                v = v * row_weight_step + m.at(r, c);
            col_value[c] = v;
        }

        const auto uk = static_cast<std::size_t>(k);
        std::vector<std::size_t> cols(uk);
        std::vector<std::uint64_t> partial(uk + 1, 0);
        // Iterative depth-first enumeration of increasing column k-tuples.
        std::size_t depth = 0;
        cols[0] = 0;
        while (true) {
            if (cols[depth] + (uk - depth) > n_cols) {
                if (depth == 0)
                    break;
                --depth;
                ++cols[depth];
                continue;
            }
            partial[depth + 1] = partial[depth] * a + col_value[cols[depth]];
            if (depth + 1 == uk) {
                out.set(partial[uk]);
                ++enumerated;
                ++cols[depth];
            }
            else {
                cols[depth + 1] = cols[depth] + 1;
                ++depth;
            }
        }
    }
}

auto coverage(const MosaicMatrix & m, int k, const VerifyOptions & options) -> CoverageSet
{
    return coverage_with_count(m, k, options).first;
}

auto coverage_with_count(const MosaicMatrix & m, int k, const VerifyOptions & options)
    -> std::pair<CoverageSet, std::uint64_t>
{
    const int a = m.alphabet().size();
    const auto size = target_space_size(k, a);
    if (size > options.coverage_guard)
        throw Error("target space a^(k^2) = " + std::to_string(size) + " exceeds the coverage guard of " +
            std::to_string(options.coverage_guard) + "; check targets one at a time with contains_target instead");

    const auto uk = static_cast<std::size_t>(k);
    if (uk > m.rows() || uk > m.cols())
        return {CoverageSet{k, a, size}, 0};

    const unsigned workers = std::max(1U, options.workers);
    std::vector<CoverageSet> partial(workers, CoverageSet{k, a, size});
    std::vector<std::uint64_t> enumerated(workers, 0);

    detail::run_workers(workers, [&](unsigned w) {
        std::vector<std::uint64_t> col_value(m.cols());
        auto rows = detail::first_combination(uk);
        std::uint64_t index = 0;
        do {
            if (index++ % workers == w)
                cover_row_subset(m, rows, k, col_value, partial[w], enumerated[w]);
        } while (detail::next_combination(rows, m.rows()));
    });

    for (unsigned w = 1; w < workers; ++w)
        partial[0].merge(partial[w]);
    std::uint64_t total = 0;
    for (auto e : enumerated)
        total += e;
    return {std::move(partial[0]), total};
}

auto is_omnimosaic(const MosaicMatrix & m, int k, const VerifyOptions & options) -> VerifyReport
{
    const auto start = std::chrono::steady_clock::now();
    auto [set, enumerated] = coverage_with_count(m, k, options);

    VerifyReport report;
    report.k = k;
    report.a = m.alphabet().size();
    report.targets = set.size();
    report.covered = set.count();
    report.is_omni = report.covered == report.targets;
    if (! report.is_omni)
        report.missing_sample = set.missing(options.missing_limit);
    report.submatrices_enumerated = enumerated;
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

namespace {
    /// Greedy leftmost matching of the target's columns against m's columns
    /// restricted to `rows`. Exact for fixed rows: any match can be shifted
    /// left column by column onto the greedy one.
    auto match_columns(const MosaicMatrix & m, const std::vector<std::size_t> & rows, const MosaicMatrix & target)
        -> std::optional<std::vector<std::size_t>>
    {
        const auto k = target.rows();
        std::vector<std::size_t> cols;
        cols.reserve(k);
        std::size_t j = 0;
        for (std::size_t c = 0; c < m.cols() && j < k; ++c) {
            if (m.cols() - c < k - j)
                break;
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i)
                ok = m.at(rows[i], c) == target.at(i, j);
            if (ok) {
                cols.push_back(c);
                ++j;
            }
        }
        if (j < k)
            return std::nullopt;
        return cols;
    }
}

auto contains_target(const MosaicMatrix & m, const MosaicMatrix & target, unsigned workers)
    -> std::optional<Placement>
{
    if (! target.is_square())
        throw Error("target must be square");
    if (target.alphabet() != m.alphabet())
        throw Error("target alphabet does not match matrix alphabet");
    const auto k = target.rows();
    if (k > m.rows() || k > m.cols())
        throw Error("target larger than matrix");

    workers = std::max(1U, workers);
    std::vector<std::optional<Placement>> best(workers);

    detail::run_workers(workers, [&](unsigned w) {
        auto rows = detail::first_combination(k);
        std::uint64_t index = 0;
        do {
            if (index++ % workers != w)
                continue;
            if (auto cols = match_columns(m, rows, target)) {
                // Row subsets are visited in lexicographic order, so the first
                // hit per worker is that worker's minimum.
                best[w] = Placement{rows, std::move(*cols)};
                return;
            }
        } while (detail::next_combination(rows, m.rows()));
    });

    std::optional<Placement> result;
    for (auto & b : best)
        if (b && (! result || *b < *result))
            result = std::move(b);
    return result;
}

auto verify_placement(const MosaicMatrix & m, const Placement & p, const MosaicMatrix & target) -> bool
{
    if (p.row_idx.size() != target.rows() || p.col_idx.size() != target.cols())
        return false;
    auto increasing_within = [](const std::vector<std::size_t> & idx, std::size_t bound) {
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] >= bound || (i > 0 && idx[i - 1] >= idx[i]))
                return false;
        return true;
    };
    if (! increasing_within(p.row_idx, m.rows()) || ! increasing_within(p.col_idx, m.cols()))
        return false;
    for (std::size_t i = 0; i < p.row_idx.size(); ++i)
        for (std::size_t j = 0; j < p.col_idx.size(); ++j)
            if (m.at(p.row_idx[i], p.col_idx[j]) != target.at(i, j))
                return false;
    return true;
}

auto extract(const MosaicMatrix & m, const Placement & p) -> MosaicMatrix
{
    std::vector<Letter> out;
    out.reserve(p.row_idx.size() * p.col_idx.size());
    for (auto r : p.row_idx)
        for (auto c : p.col_idx) {
            if (r >= m.rows() || c >= m.cols())
                throw Error("placement out of bounds");
            out.push_back(m.at(r, c));
        }
    return MosaicMatrix{p.row_idx.size(), p.col_idx.size(), m.alphabet(), std::move(out)};
}

} // namespace omnikit
