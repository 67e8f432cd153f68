#pragma once

#include <omnikit/bounds.hpp>
#include <omnikit/core.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace omnikit {

/// Per-trial generator derivation: trial i of a run seeded with s uses
/// std::mt19937_64 seeded with splitmix64(s + i * 0x9E3779B97F4A7C15).
/// Results therefore do not depend on how trials are split across workers.
[[nodiscard]] auto splitmix64(std::uint64_t x) -> std::uint64_t;
[[nodiscard]] auto trial_generator(std::uint64_t seed, std::uint64_t trial) -> std::mt19937_64;

/// Unbiased letter in [0, a) by rejection on the top of the 64-bit range.
[[nodiscard]] auto draw_letter(std::mt19937_64 & rng, int a) -> Letter;

/// n x n matrix of independent uniform letters.
[[nodiscard]] auto random_matrix(std::size_t n, Alphabet alphabet, std::mt19937_64 & rng) -> MosaicMatrix;

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    std::size_t n = 4;
    int k = 2;
    int a = 2;
    unsigned workers = 1;
    std::uint64_t coverage_guard = std::uint64_t{1} << 32;
};

struct MissingStats {
    std::uint64_t trials = 0;
    std::uint64_t omni_count = 0;
    double p_omni_hat = 0.0;
    double p_omni_stderr = 0.0;
    double ex_missing_hat = 0.0;
    double ex_missing_stderr = 0.0;
};

/// Monte-Carlo estimates of P(omni) and E(number of missing targets).
[[nodiscard]] auto estimate(const ExperimentConfig & config) -> MissingStats;

/// Exact statistics over all a^{n^2} matrices, kept as integer counts.
struct ExactStats {
    std::size_t n = 0;
    int k = 0;
    int a = 0;
    std::uint64_t matrices = 0;   ///< a^{n^2}
    std::uint64_t omni_count = 0;
    std::vector<std::uint64_t> missing_count; ///< per target code: matrices missing it
    std::uint64_t total_missing = 0;          ///< sum over matrices of missing targets

    [[nodiscard]] auto p_omni() const -> bounds::Rational;
    [[nodiscard]] auto expected_missing() const -> bounds::Rational;
    [[nodiscard]] auto p_missing(std::uint64_t code) const -> bounds::Rational;
};

inline constexpr std::uint64_t exact_enumeration_guard = std::uint64_t{1} << 25;

[[nodiscard]] auto exact_enumeration(std::size_t n, int k, Alphabet alphabet, unsigned workers = 1) -> ExactStats;

struct ConjectureRow {
    std::uint64_t code = 0;
    std::uint64_t missing_count = 0;
    bool monochromatic = false;
};

struct ConjectureTable {
    std::size_t n = 0;
    int k = 0;
    int a = 0;
    std::uint64_t matrices = 0;
    std::vector<ConjectureRow> rows; ///< sorted by missing_count descending, then code
    /// Every target of maximal missing probability is monochromatic.
    bool monochromatic_maximal = false;
    /// max over targets of P(missing) / P(monochromatic missing).
    double max_ratio_to_monochromatic = 0.0;
};

[[nodiscard]] auto conjecture_table(const ExactStats & stats) -> ConjectureTable;

struct SuenInputs {
    double mu = 0.0;
    /// Sum over unordered overlapping placement pairs of a^{-(2k^2 - rc)},
    /// i.e. the joint occurrence weight for a monochromatic target.
    double delta_pairs = 0.0;
    /// max over placements of (overlapping placements) * a^{-k^2}.
    double delta_max = 0.0;
    std::uint64_t placements = 0;
    std::uint64_t overlapping_pairs = 0;
    std::uint64_t max_neighbours = 0;

    /// exp(-mu + delta_pairs e^{2 delta_max})
    [[nodiscard]] auto missing_bound() const -> double;
};

/// Direct summation over all pairs of placements; needs C(n,k)^2 <= 2^16.
[[nodiscard]] auto exact_suen_inputs(std::size_t n, int k, int a) -> SuenInputs;

/// Number of disjoint consecutive segments each containing all a letters,
/// found greedily from the left.
[[nodiscard]] auto oned_count_collections(std::span<const Letter> seq, int a) -> std::uint64_t;

/// The sequence contains every length-k word as a subsequence.
[[nodiscard]] auto oned_is_omni(std::span<const Letter> seq, int k, int a) -> bool;

/// Number of length-k words that are not subsequences of seq.
[[nodiscard]] auto oned_missing_count(std::span<const Letter> seq, int k, int a) -> std::uint64_t;

} // namespace omnikit
