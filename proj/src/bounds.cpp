#include <omnikit/bounds.hpp>
#include <omnikit/core.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace omnikit::bounds {

auto binomial(std::uint64_t n, std::uint64_t k) -> BigInt
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

auto big_pow(std::uint64_t base, std::uint64_t exponent) -> BigInt
{
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

auto log_binomial(double n, double k) -> double
{
    if (k < 0 || k > n)
        return -std::numeric_limits<double>::infinity();
    const double m = std::min(k, n - k);
    // lgamma(n) loses absolute precision for large n; sum the short product instead.
    if (m <= 256 && m == std::floor(m)) {
        double s = -std::lgamma(m + 1);
        for (double i = 0; i < m; ++i)
            s += std::log(n - i);
        return s;
    }
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

auto log_big(const BigInt & v) -> double
{
    if (v <= 0)
        return -std::numeric_limits<double>::infinity();
    // Keep the top 64 bits and account for the rest as a power of two.
    const auto bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 64)
        return std::log(v.convert_to<double>());
    const auto shift = bits - 64;
    BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

auto pigeonhole_min_n(int k, int a) -> std::uint64_t
{
    if (k < 1 || a < 1)
        throw Error("pigeonhole bound needs k, a >= 1");
    const auto need = big_pow(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k));
    auto enough = [&](std::uint64_t n) {
        auto b = binomial(n, static_cast<std::uint64_t>(k));
        return b * b >= need;
    };

    std::uint64_t lo = static_cast<std::uint64_t>(k), hi = lo;
    if (enough(lo))
        return lo;
    while (! enough(hi)) {
        lo = hi;
        if (hi > (std::uint64_t{1} << 62))
            throw Error("pigeonhole bound exceeds 2^62");
        hi *= 2;
    }
    // enough(lo) is false, enough(hi) is true
    while (hi - lo > 1) {
        auto mid = lo + (hi - lo) / 2;
        (enough(mid) ? hi : lo) = mid;
    }
    return hi;
}

auto asymptotic_lower(int k, int a) -> double
{
    return k * std::pow(static_cast<double>(a), k / 2.0) / std::numbers::e;
}

auto construction_upper(int k, int a) -> std::uint64_t
{
    const int lo = k / 2, hi = (k + 1) / 2;
    const auto limit = std::numeric_limits<std::uint64_t>::max() / 4;
    auto big = checked_pow(static_cast<std::uint64_t>(a), static_cast<unsigned>(hi), limit / std::max(1, hi),
        "construction bound overflow");
    auto small = checked_pow(static_cast<std::uint64_t>(a), static_cast<unsigned>(lo), limit / std::max(1, lo),
        "construction bound overflow");
    return static_cast<std::uint64_t>(hi) * big + static_cast<std::uint64_t>(lo) * small;
}

auto ramsey_n0(int k) -> double
{
    return std::numbers::sqrt2 / std::numbers::e * k * std::pow(2.0, k / 2.0);
}

auto phi_exact(int r, int c, std::uint64_t n, int k, int a) -> BigInt
{
    const auto uk = static_cast<std::uint64_t>(k);
    return binomial(uk, static_cast<std::uint64_t>(r)) * binomial(uk, static_cast<std::uint64_t>(c)) *
        binomial(n, static_cast<std::uint64_t>(k - r)) * binomial(n, static_cast<std::uint64_t>(k - c)) *
        big_pow(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(c));
}

auto log_phi(int r, int c, double n, int k, int a) -> double
{
    return log_binomial(k, r) + log_binomial(k, c) + log_binomial(n, k - r) + log_binomial(n, k - c) +
        static_cast<double>(r) * c * std::log(static_cast<double>(a));
}

auto suen_exponent(double log_mu, double log_delta, double delta) -> double
{
    const double inf = std::numeric_limits<double>::infinity();
    const double log_term = log_delta + 2.0 * delta;
    const double mu = std::exp(log_mu), term = std::exp(log_term);
    if (std::isfinite(mu) && std::isfinite(term))
        return term - mu;
    // At least one side overflowed; the larger log wins.
    if (log_term == log_mu)
        return 0.0;
    return log_term > log_mu ? inf : -inf;
}

namespace {
    auto ceil_to_u64(double x) -> std::uint64_t
    {
        if (! (x < 1.8e19))
            throw Error("value exceeds 64-bit range");
        return static_cast<std::uint64_t>(std::ceil(x));
    }

    /// a^e / k as a real, for window edges.
    auto pow_over_k(int a, int e, int k) -> double { return std::pow(static_cast<double>(a), e) / k; }

    /// Largest n with n k a^{k(k-1)} >= k^2 (n e/(k-1))^{2k-2} a, the sufficient
    /// condition behind phi(k-1,k) >= phi(1,1).
    auto corner_condition_max_n(int k, int a) -> double
    {
        const double dk = k, la = std::log(static_cast<double>(a));
        const double rhs = dk * (dk - 1) * la - la - std::log(dk) - (2 * dk - 2) * (1 - std::log(dk - 1));
        return std::exp(rhs / (2 * dk - 3));
    }
}

auto suen_report(std::uint64_t n, int k, int a) -> BoundsReport
{
    if (k < 1 || a < 2)
        throw Error("bounds need k >= 1 and a >= 2");
    if (n < static_cast<std::uint64_t>(k))
        throw Error("n must be at least k");

    const double dn = static_cast<double>(n), ln_a = std::log(static_cast<double>(a));
    BoundsReport rep;
    rep.n = n;
    rep.k = k;
    rep.a = a;
    rep.log_mu = 2.0 * log_binomial(dn, k) - static_cast<double>(k) * k * ln_a;
    rep.log_delta_cap = rep.log_mu + std::log(dn) + 3.0 * std::log(static_cast<double>(k)) - k * ln_a;
    rep.log_delta_small = rep.log_mu + std::log(2.0) + 4.0 * std::log(static_cast<double>(k)) - 2.0 * std::log(dn);

    const double delta_small = std::exp(rep.log_delta_small);
    rep.log_missing_bound = std::min(0.0, suen_exponent(rep.log_mu, rep.log_delta_cap, delta_small));
    rep.log_total_bound = static_cast<double>(k) * k * ln_a + rep.log_missing_bound;
    rep.certifies_existence = rep.log_total_bound < 0.0;

    rep.flags.overlap_low_window = dn >= static_cast<double>(k) * k * a / 2.0 + k - 2;
    rep.flags.overlap_high_window = dn <= pow_over_k(a, k, k);
    rep.flags.critical_window = dn <= pow_over_k(a, k - 1, k);
    if (k >= 2)
        rep.flags.overlap_max_at_corner = log_phi(k - 1, k, dn, k, a) >= log_phi(1, 1, dn, k, a);
    rep.flags.neighbourhood_step = 2.0 * (dn - k + 1) * (dn - k + 1) >= dn * dn;
    rep.advisory = ! rep.flags.all();
    return rep;
}

auto suen_threshold_n(int k, int a) -> ThresholdN
{
    if (k < 2)
        throw Error("threshold needs k >= 2");
    if (a < 2)
        throw Error("threshold needs a >= 2");
    const double dk = k, base = asymptotic_lower(k, a);
    const double factor = std::pow(2.0 * std::numbers::pi * dk, 1.0 / (2.0 * dk)) *
        std::pow(1.0 + 1.0 / (12.0 * dk), 1.0 / dk) *
        std::exp(std::log(dk) / dk + std::log(std::log(static_cast<double>(a))) / (2.0 * dk));

    ThresholdN t;
    t.estimate_real = dk + base * factor;
    t.theorem_form_real = base * (1.0 + 2.0 * std::log(dk) / dk);
    t.estimate = ceil_to_u64(t.estimate_real);
    t.theorem_form = ceil_to_u64(t.theorem_form_real);
    return t;
}

auto LemmaReport::find(const std::string & name) const -> const LemmaVerdict &
{
    for (const auto & v : verdicts)
        if (v.name == name)
            return v;
    throw Error("no lemma verdict named " + name);
}

auto LemmaReport::all_passed() const -> bool
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto & v) { return ! v.applicable || v.passed; });
}

auto lemma_window(const std::string & name, int k, int a) -> std::pair<std::uint64_t, std::uint64_t>
{
    const auto uk = static_cast<std::uint64_t>(k);
    const auto none = std::numeric_limits<std::uint64_t>::max();
    auto floor_u = [](double x) { return x >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(std::floor(x)); };
    const auto low_corner = std::max(uk, ceil_to_u64(static_cast<double>(k) * k * a / 2.0 + k - 2));

    if (name == lemma_unimodal_rows)
        return {uk, none};
    if (name == lemma_low_corner)
        return {low_corner, none};
    if (name == lemma_high_corner)
        return {uk, floor_u(pow_over_k(a, k, k))};
    const auto corner_hi = floor_u(corner_condition_max_n(k, a));
    const auto valley_lo = std::max(uk, static_cast<std::uint64_t>(a) * uk * uk + 1);
    if (name == lemma_corner_beats_origin)
        return {uk, corner_hi};
    if (name == lemma_diagonal_valley)
        return {valley_lo, floor_u(pow_over_k(a, k, k))};
    if (name == lemma_critical_point)
        return {uk, std::min(corner_hi, floor_u(pow_over_k(a, k - 1, k)))};
    throw Error("unknown lemma " + name);
}

auto check_lemma_properties(std::uint64_t n, int k, int a) -> LemmaReport
{
    if (k < 2 || a < 2)
        throw Error("lemma checks need k >= 2 and a >= 2");
    if (n < static_cast<std::uint64_t>(k))
        throw Error("n must be at least k");

    // phi[r][c] for 1 <= r, c <= k
    const auto uk = static_cast<std::size_t>(k);
    std::vector<std::vector<BigInt>> phi(uk + 1, std::vector<BigInt>(uk + 1));
    for (int r = 1; r <= k; ++r)
        for (int c = 1; c <= k; ++c)
            phi[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = phi_exact(r, c, n, k, a);
    auto at = [&](int r, int c) -> const BigInt & { return phi[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
    auto coords = [](int r, int c) { return "(" + std::to_string(r) + "," + std::to_string(c) + ")"; };

    LemmaReport rep;
    rep.n = n;
    rep.k = k;
    rep.a = a;
    auto verdict = [&](const char * name) -> LemmaVerdict & {
        auto [lo, hi] = lemma_window(name, k, a);
        rep.verdicts.push_back(LemmaVerdict{name, n >= lo && n <= hi, true, {}});
        return rep.verdicts.back();
    };

    {
        auto & v = verdict(lemma_unimodal_rows);
        for (int c = 1; c <= k && v.passed; ++c) {
            bool decreased = false;
            for (int r = 1; r < k; ++r) {
                bool up = at(r + 1, c) >= at(r, c);
                if (! up)
                    decreased = true;
                else if (decreased) {
                    v.passed = false;
                    v.detail = "phi(., " + std::to_string(c) + ") rises again at r=" + std::to_string(r + 1);
                    break;
                }
            }
        }
    }
    {
        auto & v = verdict(lemma_low_corner);
        if (k >= 2 && ! (at(1, 1) >= at(2, 1))) {
            v.passed = false;
            v.detail = "phi(1,1) < phi(2,1)";
        }
    }
    {
        auto & v = verdict(lemma_high_corner);
        if (! (at(k, k) >= at(k - 1, k))) {
            v.passed = false;
            v.detail = "phi(k,k) < phi(k-1,k)";
        }
    }
    {
        auto & v = verdict(lemma_corner_beats_origin);
        if (! (at(k - 1, k) >= at(1, 1))) {
            v.passed = false;
            v.detail = "phi(k-1,k) < phi(1,1)";
        }
    }
    {
        auto & v = verdict(lemma_diagonal_valley);
        bool increased = false;
        for (int r = 1; r + 1 <= k - 1; ++r) {
            bool down = at(r + 1, r + 1) <= at(r, r);
            if (! down)
                increased = true;
            else if (increased && at(r + 1, r + 1) < at(r, r)) {
                v.passed = false;
                v.detail = "phi(r,r) falls again at r=" + std::to_string(r + 1);
                break;
            }
        }
    }

    // argmax over the overlap domain r + c < 2k
    int best_r = 1, best_c = 1;
    for (int r = 1; r <= k; ++r)
        for (int c = 1; c <= k; ++c)
            if (r + c < 2 * k && at(r, c) > at(best_r, best_c)) {
                best_r = r;
                best_c = c;
            }
    rep.argmax = PhiPoint{best_r, best_c, log_big(at(best_r, best_c))};
    {
        auto & v = verdict(lemma_critical_point);
        if (at(k - 1, k) < at(best_r, best_c)) {
            v.passed = false;
            v.detail = "maximum at " + coords(best_r, best_c) + " exceeds phi(k-1,k)";
        }
        else
            v.detail = "maximum attained at " + coords(k - 1, k);
    }
    return rep;
}

auto oned_threshold(int a) -> double
{
    if (a < 1)
        throw Error("alphabet size must be positive");
    double h = 0.0;
    for (int i = 1; i <= a; ++i)
        h += 1.0 / i;
    return a * h;
}

auto oned_expected_missing_exact(std::uint64_t n, int k, int a) -> Rational
{
    if (k < 1 || a < 2)
        throw Error("need k >= 1 and a >= 2");
    // a^k * sum_{j<k} C(n,j) (a-1)^{n-j} / a^n
    BigInt numerator = 0;
    for (int j = 0; j < k && static_cast<std::uint64_t>(j) <= n; ++j)
        numerator += binomial(n, static_cast<std::uint64_t>(j)) * big_pow(static_cast<std::uint64_t>(a - 1), n - static_cast<std::uint64_t>(j));
    numerator *= big_pow(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(k));
    return Rational(numerator, big_pow(static_cast<std::uint64_t>(a), n));
}

auto oned_expected_missing(std::uint64_t n, int k, int a) -> double
{
    if (k < 1 || a < 2)
        throw Error("need k >= 1 and a >= 2");
    // log-domain sum of binomial terms so large n does not overflow
    const double p = 1.0 / a, ln_p = std::log(p), ln_q = std::log1p(-p), dn = static_cast<double>(n);
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    for (int j = 0; j < k && j <= static_cast<int>(std::min<std::uint64_t>(n, static_cast<std::uint64_t>(k))); ++j) {
        terms.push_back(log_binomial(dn, j) + j * ln_p + (dn - j) * ln_q);
        max_log = std::max(max_log, terms.back());
    }
    double s = 0.0;
    for (auto t : terms)
        s += std::exp(t - max_log);
    return std::exp(k * std::log(static_cast<double>(a)) + max_log + std::log(s));
}

auto oned_expected_missing_threshold_ratio(int a, double tolerance) -> double
{
    if (a < 2)
        throw Error("alphabet size must be at least 2");
    const double p = 1.0 / a, ln_a = std::log(static_cast<double>(a));
    auto f = [&](double r) {
        const double x = 1.0 / r;
        const double kl = x * std::log(x / p) + (1.0 - x) * std::log((1.0 - x) / (1.0 - p));
        return r * kl - ln_a;
    };
    double lo = a, hi = 2.0 * a;
    while (f(hi) < 0.0)
        hi *= 2.0;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace omnikit::bounds
