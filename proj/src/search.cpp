#include <omnikit/bounds.hpp>
#include <omnikit/detail/combinations.hpp>
#include <omnikit/detail/parallel.hpp>
#include <omnikit/search.hpp>
#include <omnikit/verify.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <map>
#include <mutex>

namespace omnikit {

auto to_string(SearchStatus s) -> std::string
{
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted_none: return "exhausted_none";
    case SearchStatus::budget_exceeded: return "budget_exceeded";
    }
    return "unknown";
}

auto row_letter_necessity(std::uint64_t n, int k, int a) -> bool
{
    using bounds::big_pow;
    using bounds::binomial;
    if (n == 0 || k < 1 || a < 1)
        return false;
    const auto k2 = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    const auto using_letter = big_pow(static_cast<std::uint64_t>(a), k2) - big_pow(static_cast<std::uint64_t>(a - 1), k2);
    const auto capacity = binomial(n - 1, static_cast<std::uint64_t>(k)) * binomial(n, static_cast<std::uint64_t>(k));
    return using_letter > capacity;
}

namespace {
    using Clock = std::chrono::steady_clock;

    /// Immutable tables shared by all workers.
    struct SearchTables {
        std::size_t n = 0;
        int k = 0;
        int a = 0;
        std::uint64_t targets = 0;
        std::uint64_t placements = 0;
        /// For each cell p (row-major), the placements whose last cell in
        /// fill order is p, as k*k cell indices per placement in target order.
        std::vector<std::vector<std::uint32_t>> completed_at;
        /// Placements fully determined once cell p is filled.
        std::vector<std::uint64_t> finalized_after;
        std::vector<std::uint64_t> weight; ///< a^{k^2-1-t}
        bool letter_pruning = false;

        SearchTables(std::size_t n_, int k_, int a_, bool letter_pruning_requested) :
            n(n_),
            k(k_),
            a(a_)
        {
            targets = target_space_size(k, a);
            if (targets > (std::uint64_t{1} << 28))
                throw Error("target space too large for exhaustive search");
            const auto uk = static_cast<std::size_t>(k);
            placements = detail::binomial_u64(n, uk) * detail::binomial_u64(n, uk);

            weight.resize(uk * uk);
            std::uint64_t w = 1;
            for (std::size_t t = uk * uk; t-- > 0;) {
                weight[t] = w;
                w *= static_cast<std::uint64_t>(a);
            }

            completed_at.resize(n * n);
            finalized_after.resize(n * n);
            std::uint64_t finalized = 0;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) {
                    auto & list = completed_at[r * n + c];
                    if (r + 1 >= uk && c + 1 >= uk) {
                        auto rows = detail::first_combination(uk - 1);
                        do {
                            auto cols = detail::first_combination(uk - 1);
                            do {
                                for (std::size_t i = 0; i < uk; ++i) {
                                    auto rr = i + 1 == uk ? r : rows[i];
                                    for (std::size_t j = 0; j < uk; ++j) {
                                        auto cc = j + 1 == uk ? c : cols[j];
                                        list.push_back(static_cast<std::uint32_t>(rr * n + cc));
                                    }
                                }
                                ++finalized;
                            } while (uk > 1 && detail::next_combination(cols, c));
                        } while (uk > 1 && detail::next_combination(rows, r));
                    }
                    finalized_after[r * n + c] = finalized;
                }

            letter_pruning = letter_pruning_requested && row_letter_necessity(n, k, a);
        }
    };

    /// Per first-row accounting; makes results independent of the worker split.
    struct BranchRecord {
        std::uint64_t code = 0;
        std::uint64_t prefix_nodes = 0; ///< first-row nodes visited before entering the branch
        std::uint64_t nodes = 0;
        bool exhausted = false;
    };

    struct SharedState {
        explicit SharedState(const SearchBudget & b) : budget(b) { }

        const SearchBudget & budget;
        Clock::time_point start = Clock::now();
        std::atomic<std::uint64_t> nodes{0};
        std::atomic<bool> stop{false};
        std::atomic<bool> out_of_budget{false};
        /// Least first-row branch index that produced a witness.
        std::atomic<std::uint64_t> found_branch{std::numeric_limits<std::uint64_t>::max()};
        std::mutex mutex;
        std::map<std::uint64_t, BranchRecord> branches;
        std::map<std::uint64_t, MosaicMatrix> witnesses;
        std::uint64_t prefix_nodes = 0;
        std::ofstream checkpoint;
    };

    enum class Outcome { none, found, aborted };

    class Worker {
    public:
        Worker(const SearchTables & t, const SearchOptions & o, SharedState & s, unsigned id, unsigned workers) :
            _t(t),
            _o(o),
            _s(s),
            _id(id),
            _workers(workers),
            _grid(t.n * t.n, 0),
            _counts(t.targets, 0),
            _max_letter(t.n * t.n + 1, -1),
            _row_mask(t.n * t.n, 0),
            _col_mask(t.n * t.n, 0)
        {
        }

        void run()
        {
            dfs(0);
            flush_nodes();
            if (_id == 0) {
                std::lock_guard lock(_s.mutex);
                _s.prefix_nodes = _prefix_nodes;
            }
        }

    private:
        const SearchTables & _t;
        const SearchOptions & _o;
        SharedState & _s;
        unsigned _id;
        unsigned _workers;
        std::vector<Letter> _grid;
        std::vector<std::uint32_t> _counts;
        std::uint64_t _distinct = 0;
        /// Largest letter used in cells [0, p); index p.
        std::vector<int> _max_letter;
        std::vector<std::uint32_t> _row_mask; ///< letters in the row up to and including p
        std::vector<std::uint32_t> _col_mask; ///< letters in the column up to and including p
        std::uint64_t _first_row_index = 0;
        std::uint64_t _current_branch = 0;
        std::uint64_t _prefix_nodes = 0;
        std::uint64_t _branch_nodes = 0;
        std::uint64_t _local_nodes = 0;
        std::uint64_t _checks = 0;

        void flush_nodes()
        {
            _s.nodes += _local_nodes;
            _local_nodes = 0;
        }

        auto should_stop() -> bool
        {
            if (_s.stop.load(std::memory_order_relaxed))
                return true;
            // Branches after a known witness are abandoned; earlier ones still run.
            if (_current_branch > _s.found_branch.load(std::memory_order_relaxed))
                return true;
            // Single-worker runs check the node limit exactly so node counts
            // are reproducible.
            if (_workers == 1 || _local_nodes >= 1024) {
                const bool check_clock = (++_checks & 1023) == 0;
                flush_nodes();
                bool over = _s.nodes.load() >= _s.budget.max_nodes;
                if (! over && check_clock)
                    over = Clock::now() - _s.start >= _s.budget.max_time;
                if (over) {
                    _s.out_of_budget = true;
                    _s.stop = true;
                    return true;
                }
            }
            return false;
        }

        auto code_of(const std::uint32_t * cells) const -> std::uint64_t
        {
            std::uint64_t code = 0;
            const auto kk = _t.weight.size();
            for (std::size_t t = 0; t < kk; ++t)
                code += _grid[cells[t]] * _t.weight[t];
            return code;
        }

        void add_completed(std::size_t p)
        {
            const auto & list = _t.completed_at[p];
            const auto kk = _t.weight.size();
            for (std::size_t off = 0; off < list.size(); off += kk)
                if (_counts[code_of(list.data() + off)]++ == 0)
                    ++_distinct;
        }

        void remove_completed(std::size_t p)
        {
            const auto & list = _t.completed_at[p];
            const auto kk = _t.weight.size();
            for (std::size_t off = 0; off < list.size(); off += kk)
                if (--_counts[code_of(list.data() + off)] == 0)
                    --_distinct;
        }

        /// Letter bounds for cell p from the symmetry constraints.
        auto letter_range(std::size_t p) const -> std::pair<int, int>
        {
            const auto n = _t.n, r = p / n, c = p % n;
            int lo = 0, hi = _t.a - 1;
            if (_o.symmetry_breaking)
                hi = std::min(hi, _max_letter[p] + 1);
            if (_o.assume_sorted_rows && r > 0 && row_tight(r, c))
                lo = std::max(lo, static_cast<int>(_grid[p - n]));
            if (_o.assume_sorted_columns && c > 0 && col_tight(r, c))
                lo = std::max(lo, static_cast<int>(_grid[p - 1]));
            return {lo, hi};
        }

        /// Row r agrees with row r-1 on columns [0, c).
        auto row_tight(std::size_t r, std::size_t c) const -> bool
        {
            const auto n = _t.n;
            return std::equal(_grid.begin() + static_cast<std::ptrdiff_t>(r * n),
                _grid.begin() + static_cast<std::ptrdiff_t>(r * n + c),
                _grid.begin() + static_cast<std::ptrdiff_t>((r - 1) * n));
        }

        /// Column c agrees with column c-1 on rows [0, r).
        auto col_tight(std::size_t r, std::size_t c) const -> bool
        {
            const auto n = _t.n;
            for (std::size_t i = 0; i < r; ++i)
                if (_grid[i * n + c] != _grid[i * n + c - 1])
                    return false;
            return true;
        }

        auto letters_feasible(std::size_t p) const -> bool
        {
            if (! _t.letter_pruning)
                return true;
            const auto n = _t.n, r = p / n, c = p % n;
            const auto a = _t.a;
            const auto row_missing = a - std::popcount(_row_mask[p]);
            const auto col_missing = a - std::popcount(_col_mask[p]);
            return row_missing <= static_cast<int>(n - c - 1) && col_missing <= static_cast<int>(n - r - 1);
        }

        auto first_row_code() const -> std::uint64_t
        {
            std::uint64_t code = 0;
            for (std::size_t c = 0; c < _t.n; ++c)
                code = code * static_cast<std::uint64_t>(_t.a) + _grid[c];
            return code;
        }

        auto dfs(std::size_t p) -> Outcome
        {
            const auto n = _t.n;
            if (p == n && n * n > n) {
                // Top-level branch: one first row per subtree.
                const auto index = _first_row_index++;
                if (index > _s.found_branch.load())
                    return Outcome::aborted;
                if (index % _workers != _id)
                    return Outcome::none;
                const auto code = first_row_code();
                BranchRecord record{code, _prefix_nodes, 0, false};
                if (_o.skip_first_rows.contains(code)) {
                    std::lock_guard lock(_s.mutex);
                    _s.branches[index] = record;
                    return Outcome::none;
                }
                _current_branch = index;
                _branch_nodes = 0;
                auto outcome = descend(p);
                _current_branch = 0;
                record.nodes = _branch_nodes;
                record.exhausted = outcome == Outcome::none;
                std::lock_guard lock(_s.mutex);
                if (outcome != Outcome::aborted)
                    _s.branches[index] = record;
                if (record.exhausted && _s.checkpoint.is_open())
                    _s.checkpoint << code << '\n' << std::flush;
                return outcome;
            }
            return descend(p);
        }

        auto descend(std::size_t p) -> Outcome
        {
            const auto n = _t.n;
            if (p == n * n) {
                MosaicMatrix m{n, n, Alphabet{_t.a}, _grid};
                if (! is_omnimosaic(m, _t.k).is_omni)
                    throw Error("internal error: search produced a non-omnimosaic witness");
                std::lock_guard lock(_s.mutex);
                _s.witnesses.emplace(_current_branch, std::move(m));
                auto seen = _s.found_branch.load();
                while (_current_branch < seen && ! _s.found_branch.compare_exchange_weak(seen, _current_branch)) { }
                return Outcome::found;
            }

            const auto r = p / n, c = p % n;
            auto [lo, hi] = letter_range(p);
            for (int v = lo; v <= hi; ++v) {
                if (p < n) {
                    ++_prefix_nodes;
                    // Every worker walks the first row; only worker 0 bills it.
                    if (_id == 0)
                        ++_local_nodes;
                }
                else {
                    ++_branch_nodes;
                    ++_local_nodes;
                }
                if (should_stop())
                    return Outcome::aborted;

                _grid[p] = static_cast<Letter>(v);
                _max_letter[p + 1] = std::max(_max_letter[p], v);
                const auto bit = std::uint32_t{1} << v;
                _row_mask[p] = (c == 0 ? 0U : _row_mask[p - 1]) | bit;
                _col_mask[p] = (r == 0 ? 0U : _col_mask[p - n]) | bit;
                if (! letters_feasible(p))
                    continue;

                add_completed(p);
                const bool viable = _distinct + (_t.placements - _t.finalized_after[p]) >= _t.targets;
                Outcome outcome = viable ? dfs(p + 1) : Outcome::none;
                remove_completed(p);
                if (outcome != Outcome::none)
                    return outcome;
            }
            _grid[p] = 0;
            return Outcome::none;
        }
    };
}

auto exists_omnimosaic(std::size_t n, int k, Alphabet alphabet, const SearchBudget & budget,
    const SearchOptions & options) -> SearchResult
{
    if (k < 1)
        throw Error("k must be positive");
    if (n < static_cast<std::size_t>(k))
        throw Error("n must be at least k");
    if (alphabet.size() > 32)
        throw Error("search supports at most 32 letters");
    if (n > 64)
        throw Error("search supports n <= 64");

    SearchTables tables{n, k, alphabet.size(), options.letter_pruning};
    SharedState shared{budget};
    if (options.checkpoint_path) {
        shared.checkpoint.open(*options.checkpoint_path, std::ios::app);
        if (! shared.checkpoint)
            throw Error("cannot open checkpoint file '" + *options.checkpoint_path + "'");
    }

    const unsigned workers = std::max(1U, options.workers);
    detail::run_workers(workers, [&](unsigned w) {
        Worker worker{tables, options, shared, w, workers};
        worker.run();
    });

    SearchResult result;
    result.n = n;
    result.elapsed = Clock::now() - shared.start;
    const auto winner = shared.found_branch.load();
    const bool found = ! shared.witnesses.empty();
    // Node totals are reported as a single worker would count them. With a
    // witness, work on branches after the winning one is discarded.
    auto tally = [&](std::uint64_t last) {
        std::uint64_t nodes = 0;
        for (const auto & [index, rec] : shared.branches)
            if (index <= last) {
                nodes += rec.nodes;
                if (rec.exhausted)
                    result.exhausted_first_rows.push_back(rec.code);
            }
        return nodes;
    };
    if (found) {
        result.status = SearchStatus::found;
        result.witness = std::move(shared.witnesses.at(winner));
        result.nodes = shared.branches.at(winner).prefix_nodes + tally(winner);
    }
    else if (shared.out_of_budget) {
        result.status = SearchStatus::budget_exceeded;
        result.nodes = shared.nodes.load();
        tally(std::numeric_limits<std::uint64_t>::max());
    }
    else {
        result.status = SearchStatus::exhausted_none;
        result.nodes = shared.prefix_nodes + tally(std::numeric_limits<std::uint64_t>::max());
    }
    std::sort(result.exhausted_first_rows.begin(), result.exhausted_first_rows.end());
    return result;
}

auto min_omnimosaic_n(int k, Alphabet alphabet, const SearchBudget & budget, const SearchOptions & options)
    -> std::vector<SearchResult>
{
    std::vector<SearchResult> trace;
    auto n = static_cast<std::size_t>(std::max<std::uint64_t>(bounds::pigeonhole_min_n(k, alphabet.size()),
        static_cast<std::uint64_t>(k)));
    std::uint64_t constructive_n = 0;
    try {
        constructive_n = bounds::construction_upper(k, alphabet.size());
    }
    catch (const Error &) {
    }
    while (true) {
        if (n == constructive_n && n <= max_constructed_dimension) {
            SearchResult r;
            r.status = SearchStatus::found;
            r.n = n;
            r.witness = square_omnimosaic(k, alphabet);
            r.constructive = true;
            trace.push_back(std::move(r));
            return trace;
        }
        auto opts = options;
        opts.skip_first_rows.clear();
        opts.checkpoint_path.reset();
        trace.push_back(exists_omnimosaic(n, k, alphabet, budget, opts));
        if (trace.back().status != SearchStatus::exhausted_none)
            return trace;
        ++n;
    }
}

namespace {
    auto sorted_rows(const MosaicMatrix & m, const std::vector<Letter> & relabel) -> std::vector<Letter>
    {
        std::vector<std::vector<Letter>> rows(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (auto e : m.row(r))
                rows[r].push_back(relabel[e]);
        std::sort(rows.begin(), rows.end());
        std::vector<Letter> out;
        out.reserve(m.rows() * m.cols());
        for (auto & row : rows)
            out.insert(out.end(), row.begin(), row.end());
        return out;
    }
}

auto canonicalize(const MosaicMatrix & m) -> MosaicMatrix
{
    const int a = m.alphabet().size();
    if (a > 9)
        throw Error("canonicalize enumerates all letter permutations; supported for a <= 9");

    std::vector<Letter> perm(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i)
        perm[static_cast<std::size_t>(i)] = static_cast<Letter>(i);
    std::optional<std::vector<Letter>> best;
    do {
        auto candidate = sorted_rows(m, perm);
        if (! best || candidate < *best)
            best = std::move(candidate);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return MosaicMatrix{m.rows(), m.cols(), m.alphabet(), std::move(*best)};
}

auto brute_force_exists(std::size_t n, int k, Alphabet alphabet) -> std::optional<MosaicMatrix>
{
    const auto cells = n * n;
    const auto a = static_cast<std::uint64_t>(alphabet.size());
    const auto total = checked_pow(a, static_cast<unsigned>(cells), std::uint64_t{1} << 26, "brute force space too large");
    std::vector<Letter> entries(cells, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        auto rest = code;
        for (std::size_t i = cells; i-- > 0;) {
            entries[i] = static_cast<Letter>(rest % a);
            rest /= a;
        }
        MosaicMatrix m{n, n, alphabet, entries};
        if (is_omnimosaic(m, k).is_omni)
            return m;
    }
    return std::nullopt;
}

auto read_checkpoint(const std::string & path) -> std::set<std::uint64_t>
{
    std::set<std::uint64_t> out;
    std::ifstream in(path);
    if (! in)
        return out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            std::size_t used = 0;
            auto v = std::stoull(line, &used);
            if (used != line.size())
                throw std::invalid_argument("trailing characters");
            out.insert(v);
        }
        catch (const std::exception &) {
            throw ParseError(line_no, "invalid checkpoint entry '" + line + "'");
        }
    }
    return out;
}

} // namespace omnikit
