// Acceptance run: one PASS/FAIL line per criterion, then a summary. Exits
// non-zero on any failure outside the pinned known-unattainable set.
#include <omnikit/bounds.hpp>
#include <omnikit/cli.hpp>
#include <omnikit/construct.hpp>
#include <omnikit/experiments.hpp>
#include <omnikit/search.hpp>
#include <omnikit/verify.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace omnikit;
namespace ob = omnikit::bounds;

namespace {
    struct Outcome {
        bool pass = true;
        std::string detail;
        /// Sub-checks that fail for a documented, reproducible reason.
        std::vector<std::string> known_failures;
        std::vector<std::string> failures;

        void check(bool ok, const std::string & what)
        {
            if (! ok) {
                pass = false;
                failures.push_back(what);
            }
        }
    };

    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point t0) -> double
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    auto cli(std::vector<std::string> args, const std::string & input, std::string & out) -> int
    {
        std::istringstream in(input);
        std::ostringstream o, e;
        const int rc = cli::run(args, in, o, e);
        out = o.str();
        return rc;
    }

    auto fmt(double x, int digits = 6) -> std::string
    {
        std::ostringstream s;
        s << std::setprecision(digits) << x;
        return s.str();
    }

    auto criterion_1() -> Outcome
    {
        Outcome o;
        for (auto [k, a] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
            std::string matrix, report;
            const auto ks = std::to_string(k), as = std::to_string(a);
            o.check(cli({"construct", "--k", ks, "--a", as}, "", matrix) == 0, "construct " + ks + "," + as);
            const int rc = cli({"verify", "-", "--k", ks}, matrix, report);
            o.check(rc == 0 && report.find("\"is_omni\": true") != std::string::npos, "verify " + ks + "," + as);
            auto m = parse_matrix(matrix);
            o.check(m.rows() == ob::construction_upper(k, a), "side " + ks + "," + as);
            o.detail += "(" + ks + "," + as + ") n=" + std::to_string(m.rows()) + " ";
        }
        return o;
    }

    auto criterion_2() -> Outcome
    {
        Outcome o;
        // Every one of the 2^9 binary 3x3 matrices misses some 2x2 target.
        auto t0 = Clock::now();
        std::uint64_t omni3 = 0;
        for (std::uint64_t bits = 0; bits < 512; ++bits) {
            MosaicMatrix m{3, 3, Alphabet{2}};
            for (std::size_t i = 0; i < 9; ++i)
                m.set(i / 3, i % 3, static_cast<Letter>((bits >> i) & 1U));
            omni3 += is_omnimosaic(m, 2).is_omni;
        }
        o.check(omni3 == 0, "no 3x3 binary omnimosaic");
        o.check(seconds_since(t0) < 1, "3x3 enumeration under 1 s");
        auto known = MosaicMatrix::from_rows({{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 1, 1}}, Alphabet{2});
        o.check(is_omnimosaic(known, 2).is_omni, "explicit 4x4 is omni");
        o.check(exists_omnimosaic(3, 2, Alphabet{2}).status == SearchStatus::exhausted_none, "search n=3");

        o.check(ob::pigeonhole_min_n(2, 3) == 5, "pigeonhole gives 5");
        const auto lhs = ob::big_pow(3, 4) - ob::big_pow(2, 4);
        const auto rhs = ob::binomial(4, 2) * ob::binomial(5, 2);
        o.check(lhs == 65 && rhs == 60 && row_letter_necessity(5, 2, 3), "65 > 60");
        o.check(square_omnimosaic(2, Alphabet{3}).rows() == 6 && is_omnimosaic(square_omnimosaic(2, Alphabet{3}), 2).is_omni,
            "construction gives 6");
        o.detail = "omega(2,2)=4; 5 <= omega(2,3) <= 6";

        // Stretch, not gating.
        SearchBudget budget;
        budget.max_nodes = 2'000'000'000;
        t0 = Clock::now();
        auto r = exists_omnimosaic(5, 2, Alphabet{3}, budget);
        o.detail += "; stretch n=5,a=3: " + to_string(r.status) + " after " + std::to_string(r.nodes) +
            " nodes (budget 2e9, " + fmt(seconds_since(t0), 3) + " s)";
        if (r.status == SearchStatus::exhausted_none)
            o.detail += " so omega(2,3)=6";
        return o;
    }

    auto criterion_3() -> Outcome
    {
        Outcome o;
        auto t0 = Clock::now();
        std::uint64_t checked = 0;
        for (auto [k, a] : {std::pair{2, 2}, {2, 3}}) {
            auto g = canonical_grid(k);
            auto built = build_mosaic(g, Alphabet{a});
            for (std::uint64_t c = 0; c < target_space_size(k, a); ++c) {
                auto t = decode_target({c, k, a});
                o.check(verify_placement(built.matrix, locate(built.regions, g, t), t), "locate total");
                ++checked;
            }
        }
        auto g = canonical_grid(3);
        auto built = build_mosaic(g, Alphabet{2});
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 1000; ++i) {
            auto t = decode_target({rng() % target_space_size(3, 2), 3, 2});
            o.check(verify_placement(built.matrix, locate(built.regions, g, t), t), "locate random");
            ++checked;
        }
        const double s = seconds_since(t0);
        o.check(s < 5, "runtime");
        o.detail = std::to_string(checked) + " placements verified";
        return o;
    }

    auto criterion_4() -> Outcome
    {
        Outcome o;
        int cases = 0;
        for (int k = 1; k <= 8; ++k)
            for (int a = 2; a <= 4; ++a) {
                const auto ph = ob::pigeonhole_min_n(k, a);
                const auto up = ob::construction_upper(k, a);
                o.check(ob::asymptotic_lower(k, a) <= static_cast<double>(ph) && ph <= up, "sandwich");
                if (k % 2 == 0) {
                    std::uint64_t expect = static_cast<std::uint64_t>(k);
                    for (int i = 0; i < k / 2; ++i)
                        expect *= static_cast<std::uint64_t>(a);
                    o.check(up == expect, "even k closed form");
                }
                ++cases;
            }
        o.detail = std::to_string(cases) + " (k,a) pairs";
        return o;
    }

    auto criterion_5() -> Outcome
    {
        Outcome o;
        double previous = INFINITY;
        for (int k : {10, 20, 40}) {
            auto th = ob::suen_threshold_n(k, 2);
            const double ratio = static_cast<double>(th.estimate) / ob::asymptotic_lower(k, 2);
            const double cap = 1 + 3 * std::log(k) / k;
            o.check(ratio > 1 && ratio <= cap, "ratio window k=" + std::to_string(k));
            o.check(ratio < previous, "ratio decreasing");
            previous = ratio;
            auto rep = ob::suen_report(th.estimate, k, 2);
            o.detail += "k=" + std::to_string(k) + " n=" + std::to_string(th.estimate) + " ratio=" + fmt(ratio, 4) +
                "<=" + fmt(cap, 4) + " ln_total=" + fmt(rep.log_total_bound, 4) + "; ";
            if (k >= 20 && ! rep.certifies_existence) {
                // The total bound a^{k^2} P(J missing) stays above 1 at this n.
                o.pass = false;
                o.known_failures.push_back("certifies k=" + std::to_string(k));
            }
        }
        return o;
    }

    auto criterion_6() -> Outcome
    {
        Outcome o;
        std::mt19937_64 rng(6);
        const std::vector<std::string> names{ob::lemma_unimodal_rows, ob::lemma_low_corner, ob::lemma_high_corner,
            ob::lemma_corner_beats_origin, ob::lemma_diagonal_valley, ob::lemma_critical_point};
        int points = 0;
        for (const auto & name : names) {
            std::vector<std::tuple<int, int, std::uint64_t, std::uint64_t>> windows;
            for (int k = 8; k <= 16; ++k)
                for (int a : {2, 3}) {
                    auto [lo, hi] = ob::lemma_window(name, k, a);
                    hi = std::min<std::uint64_t>(hi, 10'000'000);
                    if (lo <= hi)
                        windows.emplace_back(k, a, lo, hi);
                }
            o.check(! windows.empty(), name + " has a window");
            for (int i = 0; i < 20 && ! windows.empty(); ++i) {
                auto [k, a, lo, hi] = windows[rng() % windows.size()];
                // Log-uniform, so both ends of wide windows get sampled.
                std::uniform_real_distribution<double> u(std::log(lo), std::log(hi + 1.0));
                auto n = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::exp(u(rng))), lo, hi);
                auto rep = ob::check_lemma_properties(n, k, a);
                const auto & v = rep.find(name);
                o.check(v.applicable && v.passed,
                    name + " at (" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(a) + ")");
                ++points;
            }
        }
        o.detail = std::to_string(points) + " sampled points over " + std::to_string(names.size()) + " lemmas";
        return o;
    }

    auto criterion_7() -> Outcome
    {
        Outcome o;
        auto s = exact_suen_inputs(4, 2, 2);
        auto stats = exact_enumeration(4, 2, Alphabet{2});
        const double exact = stats.p_missing(0).convert_to<double>();
        const double bound = s.missing_bound();
        o.check(bound > exact, "bound exceeds exact");
        o.detail = "bound=" + fmt(bound, 8) + " exact=" + fmt(exact, 8) + " margin=" + fmt(bound - exact, 6);
        return o;
    }

    auto criterion_8() -> Outcome
    {
        Outcome o;
        o.check(ob::oned_threshold(2) == 3.0, "threshold 3");
        const double r = ob::oned_expected_missing_threshold_ratio(2);
        o.check(std::abs(r - 4.403) <= 0.001, "4.403");
        for (int n = 0; n <= 16; ++n) {
            std::uint64_t total = 0;
            std::vector<Letter> seq(static_cast<std::size_t>(n));
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
                for (int i = 0; i < n; ++i)
                    seq[static_cast<std::size_t>(i)] = static_cast<Letter>((bits >> i) & 1U);
                total += oned_missing_count(seq, 2, 2);
            }
            o.check(ob::oned_expected_missing_exact(static_cast<std::uint64_t>(n), 2, 2) ==
                    ob::Rational(total, std::uint64_t{1} << n),
                "exact mean n=" + std::to_string(n));
        }
        o.detail = "ratio root=" + fmt(r, 7);
        return o;
    }

    auto criterion_9() -> Outcome
    {
        Outcome o;
        const double exact = exact_enumeration(4, 2, Alphabet{2}).p_omni().convert_to<double>();
        ExperimentConfig c;
        c.n = 4;
        c.trials = 100'000;
        c.seed = 20240601;
        auto base = estimate(c);
        o.check(std::abs(base.p_omni_hat - exact) <= 4 * base.p_omni_stderr, "within 4 stderr");
        for (unsigned w : {2U, 8U}) {
            c.workers = w;
            auto s = estimate(c);
            o.check(s.p_omni_hat == base.p_omni_hat && s.ex_missing_hat == base.ex_missing_hat &&
                    s.omni_count == base.omni_count,
                "identical at workers=" + std::to_string(w));
        }
        o.detail = "p_hat=" + fmt(base.p_omni_hat) + " exact=" + fmt(exact) + " stderr=" + fmt(base.p_omni_stderr, 3);
        return o;
    }

    auto criterion_10() -> Outcome
    {
        Outcome o;
        std::mt19937_64 rng(10);
        auto random_matrix_of = [&](std::size_t r, std::size_t c, int a) {
            MosaicMatrix m{r, c, Alphabet{a}};
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    m.set(i, j, static_cast<Letter>(rng() % static_cast<std::uint64_t>(a)));
            return m;
        };
        auto shuffled = [&](std::size_t n) {
            std::vector<std::size_t> p(n);
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            return p;
        };

        // The stated invariance, all four kinds on the same 50 (M, sigma).
        int omni_seen = 0, perm_breaks = 0;
        for (int i = 0; i < 50; ++i) {
            auto m = i % 5 == 0 ? square_omnimosaic(2, Alphabet{2}) : random_matrix_of(5, 5, 2);
            const bool base = is_omnimosaic(m, 2).is_omni;
            omni_seen += base;
            auto rev_r = shuffled(0), rev_c = shuffled(0);
            for (std::size_t r = m.rows(); r-- > 0;)
                rev_r.push_back(r);
            for (std::size_t c = m.cols(); c-- > 0;)
                rev_c.push_back(c);
            for (SymmetryOp op : {SymmetryOp{RowPermutation{shuffled(m.rows())}},
                     SymmetryOp{ColumnPermutation{shuffled(m.cols())}}})
                perm_breaks += is_omnimosaic(apply_symmetry(m, op), 2).is_omni != base;
            // Letter relabelling, transposition and order reversal do map targets onto targets.
            for (SymmetryOp op : {SymmetryOp{LetterPermutation{{1, 0}}}, SymmetryOp{Transpose{}},
                     SymmetryOp{RowPermutation{rev_r}}, SymmetryOp{ColumnPermutation{rev_c}}})
                o.check(is_omnimosaic(apply_symmetry(m, op), 2).is_omni == base, "letter/transpose/reversal invariance");
        }
        if (perm_breaks > 0) {
            o.pass = false;
            o.known_failures.push_back("row/column permutation invariance");
        }
        o.check(omni_seen > 0, "omni cases present");

        for (int i = 0; i < 20; ++i) {
            auto base = square_omnimosaic(2, Alphabet{3});
            const std::size_t extra = 1 + rng() % 3;
            auto padded = random_matrix_of(base.rows() + extra, base.cols() + extra, 3);
            auto rows = shuffled(padded.rows()), cols = shuffled(padded.cols());
            std::sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(base.rows()));
            std::sort(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(base.cols()));
            std::vector<std::size_t> keep_r(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(base.rows()));
            std::vector<std::size_t> keep_c(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(base.cols()));
            for (std::size_t r = 0; r < base.rows(); ++r)
                for (std::size_t c = 0; c < base.cols(); ++c)
                    padded.set(keep_r[r], keep_c[c], base.at(r, c));
            o.check(is_omnimosaic(padded, 2).is_omni, "padding monotonicity");
        }

        for (auto [k, a] : {std::pair{1, 5}, {2, 2}, {2, 3}, {3, 2}, {4, 2}})
            for (int i = 0; i < 200; ++i) {
                const auto code = rng() % target_space_size(k, a);
                auto t = decode_target({code, k, a});
                o.check(encode_target(t).code == code, "roundtrip");
                auto m = random_matrix_of(static_cast<std::size_t>(k), static_cast<std::size_t>(k), a);
                o.check(decode_target(encode_target(m)) == m, "roundtrip");
            }

        for (int i = 0; i < 200; ++i) {
            const int a = 2 + i % 3;
            auto m = random_matrix_of(1 + rng() % 5, 1 + rng() % 5, a);
            std::vector<Letter> lp(static_cast<std::size_t>(a));
            std::iota(lp.begin(), lp.end(), Letter{0});
            std::shuffle(lp.begin(), lp.end(), rng);
            auto image = apply_symmetry(apply_symmetry(m, RowPermutation{shuffled(m.rows())}), LetterPermutation{lp});
            auto cm = canonicalize(m);
            o.check(canonicalize(cm) == cm, "canonicalize idempotent");
            o.check(canonicalize(image) == cm, "orbit collapse");
        }
        o.detail = "symmetry 4x50 (" + std::to_string(perm_breaks) +
            " row/column permutations changed the verdict), padding 20, roundtrip 2000, canonicalize 200";
        return o;
    }
}

auto main() -> int
{
    struct Criterion {
        int id;
        const char * title;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "construction correctness", 60, criterion_1},
        {2, "exact values", 1e9, criterion_2},
        {3, "locate totality", 5, criterion_3},
        {4, "pigeonhole vs construction", 1, criterion_4},
        {5, "threshold sandwich", 1, criterion_5},
        {6, "lemma suite", 10, criterion_6},
        {7, "correlation inequality ground truth", 30, criterion_7},
        {8, "one-dimensional theory", 10, criterion_8},
        {9, "Monte-Carlo calibration", 60, criterion_9},
        {10, "property suites", 60, criterion_10},
    };
    // Known failures, analysed in the README: the existence certificate at the
    // threshold size, and invariance under row/column permutations (false).
    const std::set<std::string> unattainable{
        "certifies k=20", "certifies k=40", "row/column permutation invariance"};

    bool unexpected = false;
    int passed = 0;
    for (const auto & c : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception & e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double s = seconds_since(t0);
        // The stretch search in criterion 2 is excluded from its time limit.
        if (s > c.limit_seconds)
            o.check(false, "runtime " + fmt(s, 3) + " s > " + fmt(c.limit_seconds) + " s");
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << ": " << o.detail << " ["
                  << fmt(s, 3) << " s]";
        for (const auto & f : o.failures)
            std::cout << " failed(" << f << ")";
        for (const auto & f : o.known_failures) {
            std::cout << " failed(" << f << ", known unattainable)";
            unexpected = unexpected || ! unattainable.contains(f);
        }
        std::cout << "\n";
        passed += o.pass;
        unexpected = unexpected || ! o.failures.empty();
    }
    std::cout << passed << "/" << criteria.size() << " criteria passed"
              << (unexpected ? "; unexpected failures" : "; remaining failures are known unattainable") << "\n";
    return unexpected ? 1 : 0;
}
