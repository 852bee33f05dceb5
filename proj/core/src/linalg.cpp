#include "qsc/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsc {

namespace {

void check_symmetric(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("matrix must be square");
  const int n = a.rows();
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("matrix is not symmetric");
}

}  // namespace

SymEigen symmetric_eigen(const Mat& a) {
  check_symmetric(a);
  const int n = a.rows();
  SymEigen out;
  out.values.assign(n, 0.0);
  out.vectors = a;  // dsyevd overwrites the input with the eigenvectors
  if (n == 0) return out;
  const lapack_int info = LAPACKE_dsyevd(
      LAPACK_ROW_MAJOR, 'V', 'L', n, out.vectors.data(), n, out.values.data());
  if (info != 0)
    throw std::runtime_error("symmetric eigensolver failed to converge");
  return out;
}

std::vector<double> symmetric_eigenvalues(const Mat& a) {
  check_symmetric(a);
  const int n = a.rows();
  std::vector<double> values(n, 0.0);
  if (n == 0) return values;
  Mat work = a;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'L', n,
                                         work.data(), n, values.data());
  if (info != 0)
    throw std::runtime_error("symmetric eigensolver failed to converge");
  return values;
}

}  // namespace qsc
