#pragma once

// Sparse exact elimination for the large, very sparse compatibility systems
// (Thom-Sullivan ends, bar primitivity equations).

#include <rht/linalg.hpp>

#include <utility>
#include <vector>

namespace rht {

/// Sorted by column, no zero entries.
using SparseRow = std::vector<std::pair<Index, Rational>>;

struct SparseKernel {
  /// ncols x dim; restricted to `free_columns` it is the identity, so the
  /// coordinates of a kernel vector are its entries at the free columns.
  Matrix basis;
  std::vector<Index> free_columns;
  std::vector<Index> pivot_columns;
  Index dim() const { return basis.cols(); }
  /// Coordinates of a kernel vector (no membership check).
  Vector coordinates(const Vector& v) const;
};

/// Kernel of the matrix whose rows are `rows`. Pivots are chosen as the
/// smallest remaining column, so order columns with the most constrained
/// unknowns first.
SparseKernel sparse_kernel(const std::vector<SparseRow>& rows, Index ncols);

/// Builds a sparse row from (column, value) pairs, merging duplicates.
SparseRow make_sparse_row(std::vector<std::pair<Index, Rational>> entries);

}  // namespace rht
