#include <omnikit/core.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace omnikit {

ParseError::ParseError(std::size_t line, const std::string & what) :
    Error("line " + std::to_string(line) + ": " + what),
    _line(line)
{
}

Alphabet::Alphabet(int a) :
    _a(a)
{
    if (a < 2)
        throw Error("alphabet size must be at least 2, got " + std::to_string(a));
    if (a > max_size)
        throw Error("alphabet size must be at most " + std::to_string(max_size));
}

MosaicMatrix::MosaicMatrix(std::size_t rows, std::size_t cols, Alphabet alphabet) :
    MosaicMatrix(rows, cols, alphabet, std::vector<Letter>(rows * cols, 0))
{
}

MosaicMatrix::MosaicMatrix(std::size_t rows, std::size_t cols, Alphabet alphabet, std::vector<Letter> entries) :
    _rows(rows),
    _cols(cols),
    _alphabet(alphabet),
    _entries(std::move(entries))
{
    if (rows == 0 || cols == 0)
        throw Error("matrix dimensions must be positive");
    if (_entries.size() != rows * cols)
        throw Error("matrix entry count " + std::to_string(_entries.size()) + " does not match " +
            std::to_string(rows) + "x" + std::to_string(cols));
    for (auto e : _entries)
        if (! alphabet.contains(e))
            throw Error("matrix entry " + std::to_string(e) + " outside alphabet of size " +
                std::to_string(alphabet.size()));
}

auto MosaicMatrix::from_rows(const std::vector<std::vector<int>> & rows, Alphabet alphabet) -> MosaicMatrix
{
    if (rows.empty())
        throw Error("matrix must have at least one row");
    std::vector<Letter> entries;
    for (const auto & r : rows) {
        if (r.size() != rows.front().size())
            throw Error("ragged rows");
        for (int v : r) {
            if (! alphabet.contains(v))
                throw Error("entry " + std::to_string(v) + " outside alphabet");
            entries.push_back(static_cast<Letter>(v));
        }
    }
    return MosaicMatrix{rows.size(), rows.front().size(), alphabet, std::move(entries)};
}

void MosaicMatrix::set(std::size_t r, std::size_t c, Letter v)
{
    if (! _alphabet.contains(v))
        throw Error("entry " + std::to_string(v) + " outside alphabet");
    _entries[r * _cols + c] = v;
}

auto checked_pow(std::uint64_t base, unsigned exponent, std::uint64_t limit, const char * what) -> std::uint64_t
{
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (base != 0 && result > limit / base)
            throw Error(what);
        result *= base;
    }
    if (result > limit)
        throw Error(what);
    return result;
}

auto target_space_size(int k, int a) -> std::uint64_t
{
    if (k < 1)
        throw Error("target side k must be positive");
    return checked_pow(static_cast<std::uint64_t>(a), static_cast<unsigned>(k * k), std::uint64_t{1} << 63,
        "target space too large");
}

auto encode_target(const MosaicMatrix & target) -> TargetCode
{
    if (! target.is_square())
        throw Error("target must be square");
    const int k = static_cast<int>(target.rows());
    const int a = target.alphabet().size();
    (void) target_space_size(k, a);

    std::uint64_t code = 0;
    for (auto e : target.entries())
        code = code * static_cast<std::uint64_t>(a) + e;
    return TargetCode{code, k, a};
}

auto decode_target(const TargetCode & code) -> MosaicMatrix
{
    Alphabet alphabet{code.a};
    const auto space = target_space_size(code.k, code.a);
    if (code.code >= space)
        throw Error("target code " + std::to_string(code.code) + " out of range");

    const auto k = static_cast<std::size_t>(code.k);
    std::vector<Letter> entries(k * k);
    auto rest = code.code;
    for (std::size_t i = entries.size(); i-- > 0;) {
        entries[i] = static_cast<Letter>(rest % static_cast<std::uint64_t>(code.a));
        rest /= static_cast<std::uint64_t>(code.a);
    }
    return MosaicMatrix{k, k, alphabet, std::move(entries)};
}

namespace {
    template <typename T>
    void require_permutation(const std::vector<T> & perm, std::size_t size, const char * what)
    {
        if (perm.size() != size)
            throw Error(std::string(what) + " has wrong length");
        std::vector<bool> seen(size, false);
        for (auto p : perm) {
            if (static_cast<std::size_t>(p) >= size || seen[p])
                throw Error(std::string(what) + " is not a permutation");
            seen[p] = true;
        }
    }

    template <typename T>
    auto invert(const std::vector<T> & perm) -> std::vector<T>
    {
        std::vector<T> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            inv[perm[i]] = static_cast<T>(i);
        return inv;
    }

    template <class... Ts>
    struct Overloaded : Ts... {
        using Ts::operator()...;
    };
}

auto apply_symmetry(const MosaicMatrix & m, const SymmetryOp & op) -> MosaicMatrix
{
    return std::visit(
        Overloaded{
            [&](const RowPermutation & p) {
                require_permutation(p.perm, m.rows(), "row permutation");
                std::vector<Letter> out;
                out.reserve(m.rows() * m.cols());
                for (auto src : p.perm)
                    out.insert(out.end(), m.row(src).begin(), m.row(src).end());
                return MosaicMatrix{m.rows(), m.cols(), m.alphabet(), std::move(out)};
            },
            [&](const ColumnPermutation & p) {
                require_permutation(p.perm, m.cols(), "column permutation");
                std::vector<Letter> out(m.rows() * m.cols());
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        out[r * m.cols() + c] = m.at(r, p.perm[c]);
                return MosaicMatrix{m.rows(), m.cols(), m.alphabet(), std::move(out)};
            },
            [&](const LetterPermutation & p) {
                require_permutation(p.perm, static_cast<std::size_t>(m.alphabet().size()), "letter permutation");
                std::vector<Letter> out(m.entries().begin(), m.entries().end());
                for (auto & e : out)
                    e = p.perm[e];
                return MosaicMatrix{m.rows(), m.cols(), m.alphabet(), std::move(out)};
            },
            [&](const Transpose &) {
                std::vector<Letter> out(m.rows() * m.cols());
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        out[c * m.rows() + r] = m.at(r, c);
                return MosaicMatrix{m.cols(), m.rows(), m.alphabet(), std::move(out)};
            }},
        op);
}

auto inverse(const SymmetryOp & op) -> SymmetryOp
{
    return std::visit(Overloaded{[](const RowPermutation & p) -> SymmetryOp { return RowPermutation{invert(p.perm)}; },
                          [](const ColumnPermutation & p) -> SymmetryOp { return ColumnPermutation{invert(p.perm)}; },
                          [](const LetterPermutation & p) -> SymmetryOp { return LetterPermutation{invert(p.perm)}; },
                          [](const Transpose &) -> SymmetryOp { return Transpose{}; }},
        op);
}

namespace {
    auto split_tokens(std::string_view line) -> std::vector<std::string_view>
    {
        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
                ++i;
            auto start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t')
                ++i;
            if (i > start)
                tokens.push_back(line.substr(start, i - start));
        }
        return tokens;
    }

    auto parse_number(std::string_view token, std::size_t line_no, const char * what) -> std::uint64_t
    {
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(token) + "'");
        return value;
    }
}

auto parse_matrix(std::string_view text) -> MosaicMatrix
{
    if (text.empty())
        throw ParseError(1, "empty input");
    if (text.back() != '\n')
        throw ParseError(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1,
            "missing trailing newline");
    if (text.find('\r') != std::string_view::npos)
        throw ParseError(static_cast<std::size_t>(std::count(text.begin(), text.begin() + text.find('\r'), '\n')) + 1,
            "carriage return found; LF line endings required");

    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos < text.size();) {
        auto nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }

    if (lines[0] != "omnimosaic v1")
        throw ParseError(1, "expected header 'omnimosaic v1'");
    if (lines.size() < 2)
        throw ParseError(2, "missing dimension line");

    auto dims = split_tokens(lines[1]);
    if (dims.size() != 3)
        throw ParseError(2, "expected '<rows> <cols> <a>'");
    auto rows = parse_number(dims[0], 2, "row count");
    auto cols = parse_number(dims[1], 2, "column count");
    auto a = parse_number(dims[2], 2, "alphabet size");
    if (rows == 0 || cols == 0)
        throw ParseError(2, "dimensions must be positive");
    if (a < 2 || a > static_cast<std::uint64_t>(Alphabet::max_size))
        throw ParseError(2, "alphabet size must be in [2, " + std::to_string(Alphabet::max_size) + "]");
    if (rows > (std::uint64_t{1} << 24) || cols > (std::uint64_t{1} << 24) || rows * cols > (std::uint64_t{1} << 32))
        throw ParseError(2, "matrix too large");

    if (lines.size() - 2 != rows)
        throw ParseError(std::min<std::size_t>(lines.size(), rows + 2) + 1,
            "expected " + std::to_string(rows) + " matrix rows, found " + std::to_string(lines.size() - 2));

    std::vector<Letter> entries;
    entries.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto line_no = r + 3;
        auto tokens = split_tokens(lines[r + 2]);
        if (tokens.size() != cols)
            throw ParseError(line_no, "expected " + std::to_string(cols) + " entries, found " + std::to_string(tokens.size()));
        for (auto t : tokens) {
            auto v = parse_number(t, line_no, "entry");
            if (v >= a)
                throw ParseError(line_no, "entry " + std::to_string(v) + " not in alphabet [0, " + std::to_string(a) + ")");
            entries.push_back(static_cast<Letter>(v));
        }
    }
    return MosaicMatrix{rows, cols, Alphabet{static_cast<int>(a)}, std::move(entries)};
}

auto serialize_matrix(const MosaicMatrix & m) -> std::string
{
    std::string out = "omnimosaic v1\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + std::to_string(m.alphabet().size()) + "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c != 0)
                out += ' ';
            out += std::to_string(m.at(r, c));
        }
        out += '\n';
    }
    return out;
}

auto read_matrix_file(const std::string & path) -> MosaicMatrix
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str());
}

void write_matrix_file(const std::string & path, const MosaicMatrix & m)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw Error("cannot write '" + path + "'");
    out << serialize_matrix(m);
}

} // namespace omnikit
