#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace omnikit {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string & what);
    [[nodiscard]] auto line() const noexcept -> std::size_t { return _line; }

private:
    std::size_t _line;
};

using Letter = std::uint8_t;

/// Number of letters; letters are 0..a-1 internally (displayed 1..a only by
/// callers that want the 1-based convention).
class Alphabet {
public:
    static constexpr int max_size = 256;

    explicit Alphabet(int a);

    [[nodiscard]] auto size() const noexcept -> int { return _a; }
    [[nodiscard]] auto contains(int letter) const noexcept -> bool { return letter >= 0 && letter < _a; }

    friend auto operator==(const Alphabet &, const Alphabet &) -> bool = default;

private:
    int _a;
};

/// Dense row-major matrix over an alphabet.
class MosaicMatrix {
public:
    MosaicMatrix(std::size_t rows, std::size_t cols, Alphabet alphabet);
    MosaicMatrix(std::size_t rows, std::size_t cols, Alphabet alphabet, std::vector<Letter> entries);

    /// Convenience for tests and literals: every inner list is one row.
    static auto from_rows(const std::vector<std::vector<int>> & rows, Alphabet alphabet) -> MosaicMatrix;

    [[nodiscard]] auto rows() const noexcept -> std::size_t { return _rows; }
    [[nodiscard]] auto cols() const noexcept -> std::size_t { return _cols; }
    [[nodiscard]] auto alphabet() const noexcept -> Alphabet { return _alphabet; }
    [[nodiscard]] auto is_square() const noexcept -> bool { return _rows == _cols; }

    [[nodiscard]] auto at(std::size_t r, std::size_t c) const -> Letter { return _entries[r * _cols + c]; }
    void set(std::size_t r, std::size_t c, Letter v);

    [[nodiscard]] auto row(std::size_t r) const -> std::span<const Letter>
    {
        return {_entries.data() + r * _cols, _cols};
    }
    [[nodiscard]] auto entries() const noexcept -> std::span<const Letter> { return _entries; }

    friend auto operator==(const MosaicMatrix &, const MosaicMatrix &) -> bool = default;

private:
    std::size_t _rows;
    std::size_t _cols;
    Alphabet _alphabet;
    std::vector<Letter> _entries;
};

/// Index of a k x k target among the a^{k^2} targets: row-major base-a
/// digits, most significant first.
struct TargetCode {
    std::uint64_t code = 0;
    int k = 0;
    int a = 0;

    friend auto operator==(const TargetCode &, const TargetCode &) -> bool = default;
};

/// a^{k^2}, or throws Error("target space too large") above 2^63.
[[nodiscard]] auto target_space_size(int k, int a) -> std::uint64_t;

/// base^exponent, throwing Error(what) if the result would exceed `limit`.
[[nodiscard]] auto checked_pow(std::uint64_t base, unsigned exponent, std::uint64_t limit, const char * what)
    -> std::uint64_t;

[[nodiscard]] auto encode_target(const MosaicMatrix & target) -> TargetCode;
[[nodiscard]] auto decode_target(const TargetCode & code) -> MosaicMatrix;

struct RowPermutation {
    std::vector<std::size_t> perm; ///< new row i is old row perm[i]
};

struct ColumnPermutation {
    std::vector<std::size_t> perm; ///< new column j is old column perm[j]
};

struct LetterPermutation {
    std::vector<Letter> perm; ///< letter x becomes perm[x]
};

struct Transpose {};

using SymmetryOp = std::variant<RowPermutation, ColumnPermutation, LetterPermutation, Transpose>;

[[nodiscard]] auto apply_symmetry(const MosaicMatrix & m, const SymmetryOp & op) -> MosaicMatrix;
[[nodiscard]] auto inverse(const SymmetryOp & op) -> SymmetryOp;

/// Matrix file format v1:
///
///     omnimosaic v1
///     <rows> <cols> <a>
///     <cols space-separated letters>   (rows lines)
///
/// LF line endings, trailing newline required.
[[nodiscard]] auto parse_matrix(std::string_view text) -> MosaicMatrix;
[[nodiscard]] auto serialize_matrix(const MosaicMatrix & m) -> std::string;

[[nodiscard]] auto read_matrix_file(const std::string & path) -> MosaicMatrix;
void write_matrix_file(const std::string & path, const MosaicMatrix & m);

} // namespace omnikit
