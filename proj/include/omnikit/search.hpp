#pragma once

#include <omnikit/core.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace omnikit {

enum class SearchStatus { found, exhausted_none, budget_exceeded };

[[nodiscard]] auto to_string(SearchStatus s) -> std::string;

struct SearchBudget {
    std::uint64_t max_nodes = UINT64_MAX;
    std::chrono::duration<double> max_time = std::chrono::duration<double>::max();
};

struct SearchOptions {
    unsigned workers = 1;
    /// Restrict to letter-canonical matrices: first occurrences of letters in
    /// reading order are 0, 1, 2, ... Sound, since relabelling letters maps
    /// omnimosaics to omnimosaics.
    bool symmetry_breaking = true;
    /// Unproven: require every row and column to use every letter whenever
    /// row_letter_necessity() holds. The counting behind it ignores targets
    /// that use the row only for their letter-free rows.
    bool letter_pruning = false;
    /// Unsound: force nondecreasing rows. Row order matters for submatrices,
    /// so a row permutation of an omnimosaic need not be one.
    bool assume_sorted_rows = false;
    /// Unsound: force nondecreasing columns.
    bool assume_sorted_columns = false;
    /// First rows (base-a codes) already known to have no completion.
    std::set<std::uint64_t> skip_first_rows;
    /// Appended with each first-row code as its subtree is exhausted.
    std::optional<std::string> checkpoint_path;
};

struct SearchResult {
    SearchStatus status = SearchStatus::budget_exceeded;
    std::optional<MosaicMatrix> witness;
    std::uint64_t nodes = 0;
    std::chrono::duration<double> elapsed{};
    std::size_t n = 0;
    /// The witness is the square construction; no search was run.
    bool constructive = false;
    /// First-row codes whose subtrees were fully explored in this run.
    std::vector<std::uint64_t> exhausted_first_rows;
};

/// Depth-first search for an n x n omnimosaic for side k over a letters.
/// exhausted_none is a proof of nonexistence unless one of the unproven
/// options (letter_pruning, assume_sorted_rows, assume_sorted_columns) is set.
[[nodiscard]] auto exists_omnimosaic(std::size_t n, int k, Alphabet alphabet, const SearchBudget & budget = {},
    const SearchOptions & options = {}) -> SearchResult;

/// Runs exists_omnimosaic for n = pigeonhole_min_n(k, a), n+1, ... until one
/// is found or the budget runs out. The budget applies per size. Once n
/// reaches construction_upper(k, a) the square construction is returned as
/// the witness instead of searching.
[[nodiscard]] auto min_omnimosaic_n(int k, Alphabet alphabet, const SearchBudget & budget = {},
    const SearchOptions & options = {}) -> std::vector<SearchResult>;

/// True iff a^{k^2} - (a-1)^{k^2} > C(n-1,k) C(n,k): the targets using any
/// given letter outnumber the submatrices avoiding one row, so every row of
/// an O(n,k,a) must contain every letter.
[[nodiscard]] auto row_letter_necessity(std::uint64_t n, int k, int a) -> bool;

/// Least matrix (row-major reading order) among all row and letter
/// permutations of m: letter-canonical with sorted rows.
[[nodiscard]] auto canonicalize(const MosaicMatrix & m) -> MosaicMatrix;

/// Exhaustive enumeration of all a^{n^2} matrices with no symmetry reduction.
/// Oracle for exists_omnimosaic on tiny sizes.
[[nodiscard]] auto brute_force_exists(std::size_t n, int k, Alphabet alphabet) -> std::optional<MosaicMatrix>;

[[nodiscard]] auto read_checkpoint(const std::string & path) -> std::set<std::uint64_t>;

} // namespace omnikit
