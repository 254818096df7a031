#include "refnet/sparse_matrix.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unordered_map>

namespace refnet {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<Entry> entries,
                           std::vector<std::string> row_names, std::vector<std::string> col_names)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)),
      row_names_(std::move(row_names)), col_names_(std::move(col_names)) {
    if (!row_names_.empty() && row_names_.size() != n_rows_)
        throw std::invalid_argument("row name count does not match row count");
    if (!col_names_.empty() && col_names_.size() != n_cols_)
        throw std::invalid_argument("column name count does not match column count");
    for (const auto& e : entries_) {
        if (e.row >= n_rows_ || e.col >= n_cols_)
            throw std::invalid_argument("entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                                        ") outside " + std::to_string(n_rows_) + "x" + std::to_string(n_cols_));
        if (e.value == 0)
            throw std::invalid_argument("zero entry at (" + std::to_string(e.row) + ", " + std::to_string(e.col) + ")");
    }
    index();
}

void SparseMatrix::index() {
    row_nonzeros_.assign(n_rows_, {});
    col_nonzeros_.assign(n_cols_, {});
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        row_nonzeros_[entries_[k].row].push_back(k);
        col_nonzeros_[entries_[k].col].push_back(k);
    }
    for (auto& r : row_nonzeros_) {
        std::sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) { return entries_[a].col < entries_[b].col; });
        for (std::size_t t = 1; t < r.size(); ++t) {
            if (entries_[r[t - 1]].col == entries_[r[t]].col) {
                const auto& e = entries_[r[t]];
                throw std::invalid_argument("duplicate entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) + ")");
            }
        }
    }
    for (auto& c : col_nonzeros_) {
        std::sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) { return entries_[a].row < entries_[b].row; });
    }
}

Rational SparseMatrix::at(std::size_t i, std::size_t j) const {
    const auto& r = row_nonzeros_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [&](std::size_t k, std::size_t col) { return entries_[k].col < col; });
    if (it != r.end() && entries_[*it].col == j) return entries_[*it].value;
    return 0;
}

std::string SparseMatrix::row_label(std::size_t i) const {
    if (i < row_names_.size() && !row_names_[i].empty()) return row_names_[i];
    return "R" + std::to_string(i + 1);
}

SparseMatrix SparseMatrix::with_values(std::vector<Rational> values) const {
    if (values.size() != entries_.size()) throw std::invalid_argument("value count does not match nonzero count");
    SparseMatrix out = *this;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] == 0) throw std::invalid_argument("scaled entry became zero");
        out.entries_[k].value = std::move(values[k]);
    }
    return out;
}

SparseMatrix SparseMatrix::select_rows(std::span<const std::size_t> rows, const std::vector<bool>& negate) const {
    std::vector<Entry> out;
    std::vector<std::string> names;
    for (std::size_t t = 0; t < rows.size(); ++t) {
        const std::size_t i = rows[t];
        const bool flip = t < negate.size() && negate[t];
        for (std::size_t k : row_nonzeros_.at(i)) {
            out.push_back({t, entries_[k].col, flip ? Rational(-entries_[k].value) : entries_[k].value});
        }
        if (!row_names_.empty()) names.push_back(row_names_[i]);
    }
    return SparseMatrix(rows.size(), n_cols_, std::move(out), std::move(names), col_names_);
}

bool SparseMatrix::check_consistency() const {
    if (row_nonzeros_.size() != n_rows_ || col_nonzeros_.size() != n_cols_) return false;
    std::vector<int> seen_row(entries_.size(), 0), seen_col(entries_.size(), 0);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (std::size_t k : row_nonzeros_[i]) {
            if (k >= entries_.size() || entries_[k].row != i) return false;
            ++seen_row[k];
        }
    }
    for (std::size_t j = 0; j < n_cols_; ++j) {
        for (std::size_t k : col_nonzeros_[j]) {
            if (k >= entries_.size() || entries_[k].col != j) return false;
            ++seen_col[k];
        }
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (seen_row[k] != 1 || seen_col[k] != 1 || entries_[k].value == 0) return false;
    }
    return true;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.n_rows_ != b.n_rows_ || a.n_cols_ != b.n_cols_ || a.nnz() != b.nnz()) return false;
    for (std::size_t i = 0; i < a.n_rows_; ++i) {
        auto ra = a.row(i);
        auto rb = b.row(i);
        if (ra.size() != rb.size()) return false;
        for (std::size_t t = 0; t < ra.size(); ++t) {
            const auto& ea = a.entries_[ra[t]];
            const auto& eb = b.entries_[rb[t]];
            if (ea.col != eb.col || ea.value != eb.value) return false;
        }
    }
    return true;
}

std::size_t RowClass::unit_count() const {
    return static_cast<std::size_t>(std::count(unit.begin(), unit.end(), true));
}

RowClass classify_rows(const SparseMatrix& a) {
    RowClass rc;
    rc.unit.assign(a.n_rows(), true);
    for (const auto& e : a.entries()) {
        if (e.value != 1 && e.value != -1) rc.unit[e.row] = false;
    }
    return rc;
}

bool is_network_matrix(const SparseMatrix& a) {
    for (std::size_t j = 0; j < a.n_cols(); ++j) {
        int plus = 0, minus = 0;
        for (std::size_t k : a.col(j)) {
            const auto& v = a.entry(k).value;
            if (v == 1) ++plus;
            else if (v == -1) ++minus;
            else return false;
        }
        if (plus > 1 || minus > 1) return false;
    }
    return true;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

Rational parse_value(std::string_view token, std::size_t line_no) {
    auto v = parse_rational(token);
    if (!v) throw ParseError(line_no, "unparsable numeral '" + std::string(token) + "'");
    return *v;
}

enum class Section { none, name, rows, columns, rhs, ranges, bounds, endata };

std::optional<Section> section_keyword(std::string_view word) {
    if (word == "NAME") return Section::name;
    if (word == "ROWS") return Section::rows;
    if (word == "COLUMNS") return Section::columns;
    if (word == "RHS") return Section::rhs;
    if (word == "RANGES") return Section::ranges;
    if (word == "BOUNDS") return Section::bounds;
    if (word == "ENDATA") return Section::endata;
    return std::nullopt;
}

struct EntryKeyHash {
    std::size_t operator()(const std::pair<std::size_t, std::size_t>& p) const noexcept {
        return std::hash<std::size_t>{}(p.first * 0x9E3779B97F4A7C15ull ^ p.second);
    }
};

} // namespace

SparseMatrix parse_mps(std::istream& in) {
    Section section = Section::none;
    std::unordered_map<std::string, std::optional<std::size_t>> rows; // nullopt for N rows
    std::vector<std::string> row_names;
    std::unordered_map<std::string, std::size_t> cols;
    std::vector<std::string> col_names;
    std::vector<Entry> entries;
    std::unordered_map<std::pair<std::size_t, std::size_t>, std::size_t, EntryKeyHash> seen;

    std::string line;
    std::size_t line_no = 0;
    bool ended = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '*') continue;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (!std::isspace(static_cast<unsigned char>(line[0]))) {
            auto next = section_keyword(tokens[0]);
            if (!next) throw ParseError(line_no, "malformed section header '" + std::string(tokens[0]) + "'");
            if (*next <= section || (*next != Section::name && *next != Section::rows && section < Section::rows) ||
                (*next > Section::columns && section < Section::columns))
                throw ParseError(line_no, "section " + std::string(tokens[0]) + " out of order");
            section = *next;
            if (section == Section::endata) {
                ended = true;
                break;
            }
            continue;
        }

        switch (section) {
        case Section::rows: {
            if (tokens.size() != 2) throw ParseError(line_no, "ROWS line needs a type and a name");
            const auto type = tokens[0];
            const std::string name(tokens[1]);
            if (rows.contains(name)) throw ParseError(line_no, "duplicate row '" + name + "'");
            if (type == "N" || type == "n") {
                rows.emplace(name, std::nullopt);
            } else if (type == "L" || type == "G" || type == "E" || type == "l" || type == "g" || type == "e") {
                rows.emplace(name, row_names.size());
                row_names.push_back(name);
            } else {
                throw ParseError(line_no, "unknown row type '" + std::string(type) + "'");
            }
            break;
        }
        case Section::columns: {
            if (tokens.size() >= 3 && tokens[1] == "'MARKER'") break;
            if (tokens.size() != 3 && tokens.size() != 5)
                throw ParseError(line_no, "COLUMNS line needs a column and one or two (row, value) pairs");
            const std::string col_name(tokens[0]);
            auto [it, inserted] = cols.try_emplace(col_name, col_names.size());
            if (inserted) col_names.push_back(col_name);
            const std::size_t j = it->second;
            for (std::size_t t = 1; t + 1 < tokens.size(); t += 2) {
                auto r = rows.find(std::string(tokens[t]));
                if (r == rows.end()) throw ParseError(line_no, "reference to undeclared row '" + std::string(tokens[t]) + "'");
                Rational v = parse_value(tokens[t + 1], line_no);
                if (!r->second || v == 0) continue;
                if (!seen.try_emplace({*r->second, j}, entries.size()).second)
                    throw ParseError(line_no, "duplicate entry for row '" + r->first + "' in column '" + col_name + "'");
                entries.push_back({*r->second, j, std::move(v)});
            }
            break;
        }
        case Section::rhs:
        case Section::ranges:
        case Section::bounds:
            break;
        case Section::name:
            throw ParseError(line_no, "data line before ROWS");
        default:
            throw ParseError(line_no, "data line outside of any section");
        }
    }
    if (!ended) throw ParseError(line_no, "missing ENDATA");

    const std::size_t n_rows = row_names.size();
    const std::size_t n_cols = col_names.size();
    return SparseMatrix(n_rows, n_cols, std::move(entries), std::move(row_names), std::move(col_names));
}

SparseMatrix parse_mps(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_mps(in);
}

namespace {

std::size_t parse_index(std::string_view token, std::size_t line_no, const char* what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(token) + "'");
    return value;
}

} // namespace

SparseMatrix parse_coord(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n_rows = 0, n_cols = 0, n_entries = 0;
    std::vector<Entry> entries;
    std::unordered_map<std::pair<std::size_t, std::size_t>, std::size_t, EntryKeyHash> seen;

    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0].front() == '%') continue;
        if (tokens.size() != 3) throw ParseError(line_no, "expected three fields");
        if (!have_header) {
            n_rows = parse_index(tokens[0], line_no, "row count");
            n_cols = parse_index(tokens[1], line_no, "column count");
            n_entries = parse_index(tokens[2], line_no, "entry count");
            have_header = true;
            entries.reserve(n_entries);
            continue;
        }
        if (entries.size() == n_entries) throw ParseError(line_no, "more entries than declared in the header");
        const std::size_t i = parse_index(tokens[0], line_no, "row index");
        const std::size_t j = parse_index(tokens[1], line_no, "column index");
        if (i < 1 || i > n_rows) throw ParseError(line_no, "row index " + std::to_string(i) + " out of range");
        if (j < 1 || j > n_cols) throw ParseError(line_no, "column index " + std::to_string(j) + " out of range");
        Rational v = parse_value(tokens[2], line_no);
        if (v == 0) throw ParseError(line_no, "zero value");
        if (!seen.try_emplace({i - 1, j - 1}, entries.size()).second)
            throw ParseError(line_no, "duplicate entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        entries.push_back({i - 1, j - 1, std::move(v)});
    }
    if (!have_header) throw ParseError(line_no, "missing header line");
    if (entries.size() != n_entries)
        throw ParseError(line_no, "expected " + std::to_string(n_entries) + " entries, found " + std::to_string(entries.size()));
    return SparseMatrix(n_rows, n_cols, std::move(entries));
}

SparseMatrix parse_coord(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_coord(in);
}

void write_coord(std::ostream& out, const SparseMatrix& a) {
    out << a.n_rows() << ' ' << a.n_cols() << ' ' << a.nnz() << '\n';
    for (std::size_t i = 0; i < a.n_rows(); ++i) {
        for (std::size_t k : a.row(i)) {
            const auto& e = a.entry(k);
            out << e.row + 1 << ' ' << e.col + 1 << ' ' << to_string(e.value) << '\n';
        }
    }
}

std::string to_coord_string(const SparseMatrix& a) {
    std::ostringstream out;
    write_coord(out, a);
    return out.str();
}

MatrixFormat guess_format(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".mps" ? MatrixFormat::mps : MatrixFormat::coord;
}

SparseMatrix read_matrix(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno ? errno : ENOENT, std::generic_category(), "cannot open " + path.string());
    return format.value_or(guess_format(path)) == MatrixFormat::mps ? parse_mps(in) : parse_coord(in);
}

} // namespace refnet
