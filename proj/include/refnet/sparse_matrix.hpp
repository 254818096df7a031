#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refnet/rational.hpp"

namespace refnet {

struct Entry {
    std::size_t row;
    std::size_t col;
    Rational value;
};

/// Malformed matrix input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Sparse matrix holding only its nonzero entries, with per-row and
/// per-column index lists into the entry array.
///
/// Entries are immutable once constructed. `with_values` builds a copy that
/// shares the sparsity pattern but carries new values, which is how scaling
/// produces its output.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Throws std::invalid_argument on zero values, out-of-range indices or
    /// duplicate (row, col) pairs.
    SparseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<Entry> entries,
                 std::vector<std::string> row_names = {}, std::vector<std::string> col_names = {});

    std::size_t n_rows() const noexcept { return n_rows_; }
    std::size_t n_cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return entries_.size(); }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    const Entry& entry(std::size_t index) const { return entries_[index]; }

    /// Entry indices of row i in ascending column order.
    std::span<const std::size_t> row(std::size_t i) const { return row_nonzeros_[i]; }
    /// Entry indices of column j in ascending row order.
    std::span<const std::size_t> col(std::size_t j) const { return col_nonzeros_[j]; }

    /// Value at (i, j), zero if absent. Logarithmic in the row length.
    Rational at(std::size_t i, std::size_t j) const;

    const std::vector<std::string>& row_names() const noexcept { return row_names_; }
    const std::vector<std::string>& col_names() const noexcept { return col_names_; }

    /// Display name of row i: its MPS name if known, otherwise "R<i+1>".
    std::string row_label(std::size_t i) const;

    /// Same pattern, new values (indexed like `entries()`). Values must be nonzero.
    SparseMatrix with_values(std::vector<Rational> values) const;

    /// Submatrix made of the listed rows, in the listed order, with the rows
    /// whose flag in `negate` is set multiplied by -1.
    SparseMatrix select_rows(std::span<const std::size_t> rows, const std::vector<bool>& negate = {}) const;

    /// Full rescan of the structural invariants. Used by tests.
    bool check_consistency() const;

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    void index();

    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<Entry> entries_;
    std::vector<std::vector<std::size_t>> row_nonzeros_;
    std::vector<std::vector<std::size_t>> col_nonzeros_;
    std::vector<std::string> row_names_;
    std::vector<std::string> col_names_;
};

/// unit[i] is true iff every nonzero of row i is +1 or -1 (empty rows count).
struct RowClass {
    std::vector<bool> unit;

    std::size_t unit_count() const;
};

RowClass classify_rows(const SparseMatrix& a);

/// True iff every entry is ±1 and each column holds at most one +1 and at most one -1.
bool is_network_matrix(const SparseMatrix& a);

enum class MatrixFormat { mps, coord };

/// Parses the constraint matrix of an MPS file. N rows are dropped; RHS,
/// RANGES and BOUNDS are read past without interpretation.
SparseMatrix parse_mps(std::istream& in);
SparseMatrix parse_mps(std::string_view text);

/// Parses "n_rows n_cols n_entries" followed by 1-based "row col value" lines.
SparseMatrix parse_coord(std::istream& in);
SparseMatrix parse_coord(std::string_view text);

void write_coord(std::ostream& out, const SparseMatrix& a);
std::string to_coord_string(const SparseMatrix& a);

/// Format from the extension: ".mps" (case-insensitive) is MPS, everything else coordinate.
MatrixFormat guess_format(const std::filesystem::path& path);

/// Throws std::system_error when the file cannot be opened, ParseError on bad content.
SparseMatrix read_matrix(const std::filesystem::path& path, std::optional<MatrixFormat> format = std::nullopt);

} // namespace refnet
