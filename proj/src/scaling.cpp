#include "refnet/scaling.hpp"

#include <boost/multiprecision/number.hpp>

namespace refnet {

namespace {

bool is_unit(const Rational& v) { return v == 1 || v == -1; }

/// Mutable view of a matrix's values with incrementally maintained flags.
class ScalingWorkspace {
public:
    explicit ScalingWorkspace(const SparseMatrix& a) : a_(a) {
        values_.reserve(a.nnz());
        for (const auto& e : a.entries()) values_.push_back(e.value);
        non_unit_count_.assign(a.n_rows(), 0);
        unit_rows_in_col_.assign(a.n_cols(), 0);
        for (std::size_t k = 0; k < values_.size(); ++k) {
            if (!is_unit(values_[k])) ++non_unit_count_[a.entry(k).row];
        }
        for (std::size_t i = 0; i < a.n_rows(); ++i) {
            if (non_unit_count_[i] == 0) add_unit_row(i, +1);
        }
    }

    bool unit_row(std::size_t i) const { return non_unit_count_[i] == 0; }
    bool bounded(std::size_t j) const { return unit_rows_in_col_[j] > 0; }
    const Rational& value(std::size_t k) const { return values_[k]; }

    void divide_row(std::size_t i, const Rational& divisor) {
        for (std::size_t k : a_.row(i)) set(k, values_[k] / divisor);
    }

    void divide_col(std::size_t j, const Rational& divisor) {
        for (std::size_t k : a_.col(j)) set(k, values_[k] / divisor);
    }

    std::vector<Rational> take_values() && { return std::move(values_); }

private:
    void add_unit_row(std::size_t i, int delta) {
        for (std::size_t k : a_.row(i)) unit_rows_in_col_[a_.entry(k).col] += delta;
    }

    void set(std::size_t k, Rational v) {
        const bool was = is_unit(values_[k]);
        const bool now = is_unit(v);
        values_[k] = std::move(v);
        if (was == now) return;
        const std::size_t i = a_.entry(k).row;
        if (now) {
            if (--non_unit_count_[i] == 0) add_unit_row(i, +1);
        } else {
            if (non_unit_count_[i]++ == 0) add_unit_row(i, -1);
        }
    }

    const SparseMatrix& a_;
    std::vector<Rational> values_;
    std::vector<std::size_t> non_unit_count_;
    std::vector<int> unit_rows_in_col_;
};

/// One extended pass. Returns true if any value changed.
bool extended_pass(const SparseMatrix& a, ScalingWorkspace& ws) {
    bool changed = false;
    for (std::size_t c = 0; c < a.n_rows(); ++c) {
        if (ws.unit_row(c)) continue;
        auto row = a.row(c);

        std::vector<std::size_t> in_j, outside_j;
        for (std::size_t k : row) {
            (ws.bounded(a.entry(k).col) ? in_j : outside_j).push_back(k);
        }

        if (in_j.empty()) {
            for (std::size_t k : outside_j) {
                const Rational pivot = ws.value(k);
                if (pivot != 1) changed = true;
                ws.divide_col(a.entry(k).col, pivot);
            }
            continue;
        }

        const Rational x = boost::multiprecision::abs(ws.value(in_j.front()));
        bool common = true;
        for (std::size_t k : in_j) {
            if (boost::multiprecision::abs(ws.value(k)) != x) {
                common = false;
                break;
            }
        }
        if (!common) continue;

        if (x != 1) {
            ws.divide_row(c, x);
            changed = true;
        }
        for (std::size_t k : outside_j) {
            const Rational pivot = ws.value(k);
            if (pivot != 1) changed = true;
            ws.divide_col(a.entry(k).col, pivot);
        }
    }
    return changed;
}

} // namespace

ScalingState scaling_state(const SparseMatrix& a) {
    ScalingState s;
    s.unit_row = classify_rows(a).unit;
    s.bounded_col.assign(a.n_cols(), false);
    for (const auto& e : a.entries()) {
        if (s.unit_row[e.row]) s.bounded_col[e.col] = true;
    }
    return s;
}

SparseMatrix simple_row_scale(const SparseMatrix& a) {
    std::vector<Rational> values;
    values.reserve(a.nnz());
    for (const auto& e : a.entries()) values.push_back(e.value);

    for (std::size_t i = 0; i < a.n_rows(); ++i) {
        auto row = a.row(i);
        if (row.empty()) continue;
        const Rational x = boost::multiprecision::abs(a.entry(row.front()).value);
        bool uniform = true;
        for (std::size_t k : row) {
            if (boost::multiprecision::abs(a.entry(k).value) != x) {
                uniform = false;
                break;
            }
        }
        if (!uniform || x == 1) continue;
        for (std::size_t k : row) values[k] /= x;
    }
    return a.with_values(std::move(values));
}

SparseMatrix extended_scale(const SparseMatrix& a, ScalingOptions options) {
    ScalingWorkspace ws(a);
    while (extended_pass(a, ws) && options.fixpoint) {
    }
    return a.with_values(std::move(ws).take_values());
}

SparseMatrix scale_matrix(const SparseMatrix& a, ScalingOptions options) {
    return extended_scale(simple_row_scale(a), options);
}

} // namespace refnet
