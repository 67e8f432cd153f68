#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

/// Closed-form bounds on omnimosaic sizes. Every logarithm in this module is
/// natural.
namespace omnikit::bounds {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

[[nodiscard]] auto binomial(std::uint64_t n, std::uint64_t k) -> BigInt;
[[nodiscard]] auto big_pow(std::uint64_t base, std::uint64_t exponent) -> BigInt;
[[nodiscard]] auto log_binomial(double n, double k) -> double;

/// Natural log of an exact non-negative integer (or -inf for zero).
[[nodiscard]] auto log_big(const BigInt & v) -> double;

/// Smallest n with C(n,k)^2 >= a^{k^2}.
[[nodiscard]] auto pigeonhole_min_n(int k, int a) -> std::uint64_t;

/// k a^{k/2} / e.
[[nodiscard]] auto asymptotic_lower(int k, int a) -> double;

/// ceil(k/2) a^ceil(k/2) + floor(k/2) a^floor(k/2), the side of the square
/// grid-diagram construction.
[[nodiscard]] auto construction_upper(int k, int a) -> std::uint64_t;

/// (sqrt 2 / e) k 2^{k/2}, the analogous counting bound for induced-universal graphs.
[[nodiscard]] auto ramsey_n0(int k) -> double;

/// Weight of placement pairs overlapping in an r x c block:
/// phi(r, c) = C(k,r) C(k,c) C(n,k-r) C(n,k-c) a^{rc}.
[[nodiscard]] auto phi_exact(int r, int c, std::uint64_t n, int k, int a) -> BigInt;
[[nodiscard]] auto log_phi(int r, int c, double n, int k, int a) -> double;

struct PhiPoint {
    int r = 0;
    int c = 0;
    double log_phi = 0.0;
};

/// Preconditions of the overlap-maximum argument, evaluated at (n, k, a).
struct ValidityFlags {
    bool overlap_low_window = false;  ///< n >= k^2 a / 2 + k - 2
    bool overlap_high_window = false; ///< n <= a^k / k
    bool critical_window = false;     ///< n <= a^{k-1} / k
    bool overlap_max_at_corner = false; ///< phi(k-1,k) >= phi(1,1), checked numerically
    bool neighbourhood_step = false;  ///< (n-k+1)^2 >= n^2 / 2

    [[nodiscard]] auto all() const -> bool
    {
        return overlap_low_window && overlap_high_window && critical_window && overlap_max_at_corner &&
            neighbourhood_step;
    }
};

struct BoundsReport {
    std::uint64_t n = 0;
    int k = 0;
    int a = 0;
    double log_mu = 0.0;            ///< ln E(placements of a fixed target)
    double log_delta_cap = 0.0;     ///< ln of mu n k^3 / a^k
    double log_delta_small = 0.0;   ///< ln of mu 2 k^4 / n^2
    double log_missing_bound = 0.0; ///< ln of min(1, exp(-mu + Delta e^{2 delta}))
    double log_total_bound = 0.0;   ///< k^2 ln a + log_missing_bound
    bool certifies_existence = false;
    ValidityFlags flags;
    bool advisory = true; ///< true when some precondition fails
};

[[nodiscard]] auto suen_report(std::uint64_t n, int k, int a) -> BoundsReport;

/// Exponent -mu + Delta e^{2 delta} of the correlation-inequality bound, given
/// the three inputs in the log domain. Saturates to +-infinity.
[[nodiscard]] auto suen_exponent(double log_mu, double log_delta, double delta) -> double;

struct ThresholdN {
    /// k + (k a^{k/2}/e) (2 pi k)^{1/2k} (1 + 1/12k)^{1/k} exp(ln k / k + ln ln a / 2k), rounded up.
    std::uint64_t estimate = 0;
    /// (k a^{k/2}/e)(1 + 2 ln k / k), rounded up.
    std::uint64_t theorem_form = 0;
    double estimate_real = 0.0;
    double theorem_form_real = 0.0;
};

[[nodiscard]] auto suen_threshold_n(int k, int a) -> ThresholdN;

struct LemmaVerdict {
    std::string name;
    bool applicable = false;
    bool passed = true;
    std::string detail;
};

struct LemmaReport {
    std::uint64_t n = 0;
    int k = 0;
    int a = 0;
    std::vector<LemmaVerdict> verdicts;
    PhiPoint argmax; ///< over 1 <= r, c <= k with r + c < 2k

    [[nodiscard]] auto find(const std::string & name) const -> const LemmaVerdict &;
    /// True iff every applicable verdict passed.
    [[nodiscard]] auto all_passed() const -> bool;
};

/// Names used in LemmaReport::verdicts.
inline constexpr const char * lemma_unimodal_rows = "unimodal_in_r";
inline constexpr const char * lemma_low_corner = "phi11_ge_phi21";
inline constexpr const char * lemma_high_corner = "phikk_ge_phik1k";
inline constexpr const char * lemma_corner_beats_origin = "phik1k_ge_phi11";
inline constexpr const char * lemma_diagonal_valley = "diagonal_dec_then_inc";
inline constexpr const char * lemma_critical_point = "argmax_at_k1k";

/// Inclusive range of n in which each verdict is applicable:
///   unimodal_in_r          [k, inf)
///   phi11_ge_phi21         [k^2 a/2 + k - 2, inf)
///   phikk_ge_phik1k        [k, a^k/k]
///   phik1k_ge_phi11        [k, N] with N the largest n satisfying
///                          n k a^{k(k-1)} >= k^2 (n e/(k-1))^{2k-2} a
///   diagonal_dec_then_inc  [a k^2 + 1, a^k/k]
///   argmax_at_k1k          [k, min(a^{k-1}/k, N)]
[[nodiscard]] auto lemma_window(const std::string & name, int k, int a) -> std::pair<std::uint64_t, std::uint64_t>;

[[nodiscard]] auto check_lemma_properties(std::uint64_t n, int k, int a) -> LemmaReport;

/// a H(1..a): the ratio n/k at which a random length-n sequence becomes
/// k-omni with high probability.
[[nodiscard]] auto oned_threshold(int a) -> double;

/// Expected number of length-k words missing as subsequences of a uniform
/// random length-n sequence: a^k P(Bin(n, 1/a) <= k-1).
[[nodiscard]] auto oned_expected_missing(std::uint64_t n, int k, int a) -> double;
[[nodiscard]] auto oned_expected_missing_exact(std::uint64_t n, int k, int a) -> Rational;

/// The r > a solving ln a = r D(1/r || 1/a), where E(X) switches from
/// blowing up to vanishing along n = r k.
[[nodiscard]] auto oned_expected_missing_threshold_ratio(int a, double tolerance = 1e-9) -> double;

} // namespace omnikit::bounds
