#include <omnikit/detail/combinations.hpp>
#include <omnikit/detail/parallel.hpp>
#include <omnikit/experiments.hpp>
#include <omnikit/verify.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace omnikit {

auto splitmix64(std::uint64_t x) -> std::uint64_t
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

auto trial_generator(std::uint64_t seed, std::uint64_t trial) -> std::mt19937_64
{
    return std::mt19937_64{splitmix64(seed + trial * 0x9E3779B97F4A7C15ULL)};
}

auto draw_letter(std::mt19937_64 & rng, int a) -> Letter
{
    const auto bound = static_cast<std::uint64_t>(a);
    const auto limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do
        x = rng();
    while (x >= limit);
    return static_cast<Letter>(x % bound);
}

auto random_matrix(std::size_t n, Alphabet alphabet, std::mt19937_64 & rng) -> MosaicMatrix
{
    std::vector<Letter> entries(n * n);
    for (auto & e : entries)
        e = draw_letter(rng, alphabet.size());
    return MosaicMatrix{n, n, alphabet, std::move(entries)};
}

auto estimate(const ExperimentConfig & config) -> MissingStats
{
    if (config.trials == 0)
        throw Error("trials must be at least 1");
    Alphabet alphabet{config.a};
    VerifyOptions vo;
    vo.coverage_guard = config.coverage_guard;
    vo.missing_limit = 0;
    const auto targets = target_space_size(config.k, config.a);
    if (targets > config.coverage_guard)
        throw Error("target space exceeds coverage guard");

    const unsigned workers = std::max(1U, config.workers);
    struct Partial {
        std::uint64_t omni = 0;
        std::uint64_t missing = 0;
        unsigned __int128 missing_sq = 0;
    };
    std::vector<Partial> partial(workers);

    // Contiguous trial ranges per worker. All sums are integers, so the
    // aggregate does not depend on the split.
    detail::run_workers(workers, [&](unsigned w) {
        const auto begin = config.trials * w / workers, end = config.trials * (w + 1) / workers;
        auto & p = partial[w];
        for (auto t = begin; t < end; ++t) {
            auto rng = trial_generator(config.seed, t);
            auto m = random_matrix(config.n, alphabet, rng);
            auto missing = targets - coverage(m, config.k, vo).count();
            p.omni += missing == 0;
            p.missing += missing;
            p.missing_sq += static_cast<unsigned __int128>(missing) * missing;
        }
    });

    MissingStats s;
    s.trials = config.trials;
    std::uint64_t sum = 0;
    unsigned __int128 sum_sq = 0;
    for (const auto & p : partial) {
        s.omni_count += p.omni;
        sum += p.missing;
        sum_sq += p.missing_sq;
    }
    const double T = static_cast<double>(config.trials);
    s.p_omni_hat = static_cast<double>(s.omni_count) / T;
    s.p_omni_stderr = std::sqrt(s.p_omni_hat * (1.0 - s.p_omni_hat) / T);
    s.ex_missing_hat = static_cast<double>(sum) / T;
    if (config.trials > 1) {
        const auto mean = static_cast<long double>(sum) / T;
        const auto variance = (static_cast<long double>(sum_sq) - mean * static_cast<long double>(sum)) / (T - 1);
        s.ex_missing_stderr = static_cast<double>(std::sqrt(std::max<long double>(variance, 0) / T));
    }
    return s;
}

auto ExactStats::p_omni() const -> bounds::Rational
{
    return bounds::Rational(bounds::BigInt(omni_count), bounds::BigInt(matrices));
}

auto ExactStats::expected_missing() const -> bounds::Rational
{
    return bounds::Rational(bounds::BigInt(total_missing), bounds::BigInt(matrices));
}

auto ExactStats::p_missing(std::uint64_t code) const -> bounds::Rational
{
    return bounds::Rational(bounds::BigInt(missing_count.at(code)), bounds::BigInt(matrices));
}

auto exact_enumeration(std::size_t n, int k, Alphabet alphabet, unsigned workers) -> ExactStats
{
    const int a = alphabet.size();
    const auto cells = n * n;
    const auto matrices = checked_pow(static_cast<std::uint64_t>(a), static_cast<unsigned>(cells),
        exact_enumeration_guard, "exact enumeration guard exceeded: a^(n^2) > 2^25");
    const auto targets = target_space_size(k, a);
    if (targets > (std::uint64_t{1} << 24))
        throw Error("target space too large for exact enumeration");
    const auto uk = static_cast<std::size_t>(k);

    // cell lists of every placement, in target order
    std::vector<std::uint32_t> placements;
    if (uk <= n) {
        auto rows = detail::first_combination(uk);
        do {
            auto cols = detail::first_combination(uk);
            do
                for (auto r : rows)
                    for (auto c : cols)
                        placements.push_back(static_cast<std::uint32_t>(r * n + c));
            while (detail::next_combination(cols, n));
        } while (detail::next_combination(rows, n));
    }
    const auto kk = uk * uk;

    workers = std::max(1U, workers);
    std::vector<ExactStats> partial(workers);
    detail::run_workers(workers, [&](unsigned w) {
        auto & st = partial[w];
        st.missing_count.assign(targets, 0);
        std::vector<std::uint32_t> stamp(targets, 0);
        std::uint32_t epoch = 0;
        const auto begin = matrices * w / workers, end = matrices * (w + 1) / workers;

        std::vector<Letter> grid(cells, 0);
        auto rest = begin;
        for (std::size_t i = cells; i-- > 0;) {
            grid[i] = static_cast<Letter>(rest % static_cast<std::uint64_t>(a));
            rest /= static_cast<std::uint64_t>(a);
        }
        for (auto idx = begin; idx < end; ++idx) {
            ++epoch;
            std::uint64_t covered = 0;
            for (std::size_t off = 0; off < placements.size(); off += kk) {
                std::uint64_t code = 0;
                for (std::size_t t = 0; t < kk; ++t)
                    code = code * static_cast<std::uint64_t>(a) + grid[placements[off + t]];
                if (stamp[code] != epoch) {
                    stamp[code] = epoch;
                    ++covered;
                }
            }
            if (covered == targets)
                ++st.omni_count;
            else {
                st.total_missing += targets - covered;
                for (std::uint64_t c = 0; c < targets; ++c)
                    st.missing_count[c] += stamp[c] != epoch;
            }
            // next matrix in base-a order
            for (std::size_t i = cells; i-- > 0;) {
                if (++grid[i] < a)
                    break;
                grid[i] = 0;
            }
        }
    });

    ExactStats out;
    out.n = n;
    out.k = k;
    out.a = a;
    out.matrices = matrices;
    out.missing_count.assign(targets, 0);
    for (const auto & p : partial) {
        out.omni_count += p.omni_count;
        out.total_missing += p.total_missing;
        for (std::uint64_t c = 0; c < targets; ++c)
            out.missing_count[c] += p.missing_count[c];
    }
    return out;
}

auto conjecture_table(const ExactStats & stats) -> ConjectureTable
{
    ConjectureTable t;
    t.n = stats.n;
    t.k = stats.k;
    t.a = stats.a;
    t.matrices = stats.matrices;

    const auto a = static_cast<std::uint64_t>(stats.a);
    std::uint64_t all_ones = 0; // code of the target whose entries are all 1
    for (int i = 0; i < stats.k * stats.k; ++i)
        all_ones = all_ones * a + 1;

    std::uint64_t mono_count = 0;
    for (std::uint64_t code = 0; code < stats.missing_count.size(); ++code) {
        bool mono = code % all_ones == 0;
        t.rows.push_back(ConjectureRow{code, stats.missing_count[code], mono});
        if (mono)
            mono_count = std::max(mono_count, stats.missing_count[code]);
    }
    std::stable_sort(t.rows.begin(), t.rows.end(),
        [](const auto & x, const auto & y) { return x.missing_count > y.missing_count; });

    const auto top = t.rows.empty() ? 0 : t.rows.front().missing_count;
    t.monochromatic_maximal = std::all_of(t.rows.begin(), t.rows.end(),
        [&](const auto & r) { return r.missing_count != top || r.monochromatic; });
    t.max_ratio_to_monochromatic = mono_count == 0
        ? (top == 0 ? 1.0 : std::numeric_limits<double>::infinity())
        : static_cast<double>(top) / static_cast<double>(mono_count);
    return t;
}

auto SuenInputs::missing_bound() const -> double
{
    return std::exp(-mu + delta_pairs * std::exp(2.0 * delta_max));
}

auto exact_suen_inputs(std::size_t n, int k, int a) -> SuenInputs
{
    const auto uk = static_cast<std::size_t>(k);
    if (k < 1 || uk > n)
        throw Error("need 1 <= k <= n");
    const auto subsets = detail::binomial_u64(n, uk);
    if (subsets > 256)
        throw Error("exact Suen inputs need C(n,k) <= 256");

    std::vector<std::uint64_t> masks;
    auto idx = detail::first_combination(uk);
    do {
        std::uint64_t m = 0;
        for (auto i : idx)
            m |= std::uint64_t{1} << i;
        masks.push_back(m);
    } while (detail::next_combination(idx, n));

    SuenInputs s;
    s.placements = subsets * subsets;
    const double k2 = static_cast<double>(k) * k, ln_a = std::log(static_cast<double>(a));
    // histogram[r][c]: unordered overlapping placement pairs sharing r rows and c columns
    std::vector<std::vector<std::uint64_t>> histogram(uk + 1, std::vector<std::uint64_t>(uk + 1, 0));
    std::vector<std::uint64_t> neighbours(s.placements, 0);

    for (std::uint64_t i = 0; i < s.placements; ++i) {
        const auto ri = masks[i / subsets], ci = masks[i % subsets];
        for (std::uint64_t j = i + 1; j < s.placements; ++j) {
            const auto r = std::popcount(ri & masks[j / subsets]);
            const auto c = std::popcount(ci & masks[j % subsets]);
            if (r == 0 || c == 0)
                continue;
            ++histogram[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            ++neighbours[i];
            ++neighbours[j];
        }
    }

    for (std::size_t r = 1; r <= uk; ++r)
        for (std::size_t c = 1; c <= uk; ++c) {
            s.overlapping_pairs += histogram[r][c];
            s.delta_pairs += static_cast<double>(histogram[r][c]) *
                std::exp(-(2.0 * k2 - static_cast<double>(r * c)) * ln_a);
        }
    s.max_neighbours = *std::max_element(neighbours.begin(), neighbours.end());
    s.mu = static_cast<double>(s.placements) * std::exp(-k2 * ln_a);
    s.delta_max = static_cast<double>(s.max_neighbours) * std::exp(-k2 * ln_a);
    return s;
}

auto oned_count_collections(std::span<const Letter> seq, int a) -> std::uint64_t
{
    std::vector<bool> seen(static_cast<std::size_t>(a), false);
    int distinct = 0;
    std::uint64_t collections = 0;
    for (auto x : seq) {
        if (x >= a)
            throw Error("sequence letter outside alphabet");
        if (! seen[x]) {
            seen[x] = true;
            if (++distinct == a) {
                ++collections;
                std::fill(seen.begin(), seen.end(), false);
                distinct = 0;
            }
        }
    }
    return collections;
}

auto oned_is_omni(std::span<const Letter> seq, int k, int a) -> bool
{
    return oned_count_collections(seq, a) >= static_cast<std::uint64_t>(k);
}

auto oned_missing_count(std::span<const Letter> seq, int k, int a) -> std::uint64_t
{
    const auto words = checked_pow(static_cast<std::uint64_t>(a), static_cast<unsigned>(k), std::uint64_t{1} << 32,
        "too many words to enumerate");
    const auto uk = static_cast<std::size_t>(k);
    std::vector<Letter> word(uk, 0);
    std::uint64_t missing = 0;
    for (std::uint64_t w = 0; w < words; ++w) {
        std::size_t matched = 0;
        for (auto x : seq)
            if (matched < uk && x == word[matched])
                ++matched;
        missing += matched < uk;
        for (std::size_t i = uk; i-- > 0;) {
            if (++word[i] < a)
                break;
            word[i] = 0;
        }
    }
    return missing;
}

} // namespace omnikit
