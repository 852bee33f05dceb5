#pragma once

#include <cstddef>
#include <vector>

// Minimal dense real matrix plus the one nontrivial primitive the analysis
// engine needs: a full symmetric eigendecomposition.  The decomposition is
// delegated to LAPACK (dsyevd) rather than hand-rolled; the contract below is
// what the rest of the library relies on and what the tests pin down.

namespace qsc {

// Dense real matrix, row-major storage.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
           0.0) {}

  double& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// Eigendecomposition A = Q diag(values) Q^T of a real symmetric matrix.
// `values` ascending; column j of `vectors` is the eigenvector for values[j].
struct SymEigen {
  std::vector<double> values;
  Mat vectors;
};

// Full decomposition.  Input must be square and symmetric within
// 1e-12 * max(1, max|a_ij|); throws std::invalid_argument otherwise and
// std::runtime_error if the backend fails to converge.
// Postconditions (test-enforced): A = Q Lambda Q^T within 1e-10 relative and
// Q orthogonal within 1e-10.
SymEigen symmetric_eigen(const Mat& a);

// Eigenvalues only (ascending); same validation, cheaper backend path.
std::vector<double> symmetric_eigenvalues(const Mat& a);

}  // namespace qsc
