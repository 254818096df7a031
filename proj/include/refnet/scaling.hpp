#pragma once

#include <vector>

#include "refnet/sparse_matrix.hpp"

namespace refnet {

/// Row/column flags the extended scaling pass works from.
/// `unit_row[i]`: row i is a (0,±1)-row. `bounded_col[j]`: column j has a
/// nonzero in some (0,±1)-row.
struct ScalingState {
    std::vector<bool> unit_row;
    std::vector<bool> bounded_col;
};

ScalingState scaling_state(const SparseMatrix& a);

/// Divides every row whose nonzeros are all +x or -x (x > 0) by x.
SparseMatrix simple_row_scale(const SparseMatrix& a);

struct ScalingOptions {
    /// Repeat the extended pass until a pass leaves the matrix unchanged.
    bool fixpoint = false;
};

/// Row-by-row extended scaling over the non-(0,±1) rows, in ascending row
/// order. Expects `simple_row_scale` to have been applied.
///
/// For a row c, J is the set of bounded columns with a nonzero in c.
///  - J empty: each column j with a_cj != 0 is divided by a_cj.
///  - all a_cj (j in J) share one magnitude x: row c is divided by x, then
///    each remaining (unbounded) column j with a_cj != 0 is divided by a_cj.
///  - otherwise the row is left alone.
/// The unit/bounded flags are refreshed after every row or column scaling.
SparseMatrix extended_scale(const SparseMatrix& a, ScalingOptions options = {});

/// simple_row_scale followed by extended_scale.
SparseMatrix scale_matrix(const SparseMatrix& a, ScalingOptions options = {});

} // namespace refnet
