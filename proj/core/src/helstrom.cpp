#include "qsc/helstrom.hpp"

#include <cblas.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsc/keystream.hpp"

namespace qsc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_priors(Priors p) {
  if (!(p.p0 >= 0.0) || !(p.p1 >= 0.0) ||
      std::abs(p.p0 + p.p1 - 1.0) > 1e-12)
    throw std::invalid_argument("priors must be nonnegative and sum to 1");
}

}  // namespace

Constellation constellation(int m, double nbar, EncodingKind encoding,
                            std::span<const double> key_weights) {
  if (m < 1) throw std::invalid_argument("M must be >= 1");
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw std::invalid_argument("mean photon number must be finite and >= 0");
  if (!key_weights.empty()) {
    if (static_cast<int>(key_weights.size()) != m)
      throw std::invalid_argument("key weight list must have length M");
    double sum = 0.0;
    for (double w : key_weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("key weights must be >= 0");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("key weights must sum to 1");
  }

  Constellation c;
  c.nbar = nbar;
  c.encoding = encoding;
  c.m = m;
  c.points.resize(2 * static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double w = key_weights.empty() ? 1.0 / m : key_weights[k];
    for (int b = 0; b < 2; ++b) {
      // total_angle lands exactly on the grid {j*pi/M}; recover j and store
      // the grid value so angles are reproducible bit-for-bit.
      const double theta = total_angle(k, b, m);
      const auto j =
          static_cast<int>(std::llround(theta * m / kPi)) % (2 * m);
      c.points[j] = {j * kPi / m, b, w};
    }
  }
  return c;
}

Mat gram(const Constellation& c) {
  const int n = static_cast<int>(c.points.size());
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      // Raw angle difference: the two-mode states are 4*pi periodic in
      // theta, so the difference of canonical angles must not be re-reduced.
      const double v =
          overlap_angle(c.points[i].theta - c.points[j].theta, c.nbar);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

SubspaceBasis embed(const Mat& g, double rank_tol) {
  if (!(rank_tol > 0.0) || rank_tol >= 1.0)
    throw std::invalid_argument("rank tolerance must be in (0, 1)");
  const int n = g.rows();
  SymEigen eig = symmetric_eigen(g);  // validates squareness and symmetry
  const double lam_max = n > 0 ? eig.values.back() : 0.0;
  if (n > 0 && eig.values.front() < -1e-10 * std::max(1.0, lam_max))
    throw std::invalid_argument("matrix is not positive semidefinite");

  const double cut = rank_tol * lam_max;
  int rank = 0;
  for (double lam : eig.values)
    if (lam >= cut && lam > 0.0) ++rank;

  // Rows ordered by descending eigenvalue: row i is sqrt(lambda) * u^T for
  // the (i+1)-th largest eigenpair.
  SubspaceBasis basis;
  basis.rank = rank;
  basis.tol = rank_tol;
  basis.coeffs = Mat(rank, n);
  for (int i = 0; i < rank; ++i) {
    const int src = n - 1 - i;  // eigenvalues come back ascending
    const double s = std::sqrt(eig.values[src]);
    for (int j = 0; j < n; ++j)
      basis.coeffs(i, j) = s * eig.vectors(j, src);
  }
  return basis;
}

std::pair<Mat, Mat> density_pair(const SubspaceBasis& basis,
                                 const Constellation& c) {
  const int n = static_cast<int>(c.points.size());
  const int r = basis.rank;
  if (basis.coeffs.rows() != r || basis.coeffs.cols() != n)
    throw std::invalid_argument("basis does not match constellation size");

  // R_b = S_b S_b^T where S_b stacks the bit-b columns scaled by sqrt(w).
  std::pair<Mat, Mat> out{Mat(r, r), Mat(r, r)};
  for (int b = 0; b < 2; ++b) {
    std::vector<double> s;  // r x n_b, row-major
    int nb = 0;
    s.reserve(static_cast<std::size_t>(r) * n);
    for (int j = 0; j < n; ++j)
      if (c.points[j].bit == b) ++nb;
    s.assign(static_cast<std::size_t>(r) * nb, 0.0);
    int col = 0;
    for (int j = 0; j < n; ++j) {
      if (c.points[j].bit != b) continue;
      const double w = std::sqrt(c.points[j].weight);
      for (int i = 0; i < r; ++i)
        s[static_cast<std::size_t>(i) * nb + col] = w * basis.coeffs(i, j);
      ++col;
    }
    Mat& rho = b == 0 ? out.first : out.second;
    if (r > 0 && nb > 0)
      cblas_dsyrk(CblasRowMajor, CblasLower, CblasNoTrans, r, nb, 1.0,
                  s.data(), nb, 0.0, rho.data(), r);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) rho(i, j) = rho(j, i);
  }
  return out;
}

DiscriminationResult min_error(const Mat& r0, const Mat& r1, Priors priors) {
  check_priors(priors);
  const int n = r0.rows();
  if (r0.cols() != n || r1.rows() != n || r1.cols() != n)
    throw std::invalid_argument("density matrices must be square and match");
  double tr0 = 0.0, tr1 = 0.0;
  for (int i = 0; i < n; ++i) {
    tr0 += r0(i, i);
    tr1 += r1(i, i);
  }
  if (std::abs(tr0 - 1.0) > 1e-6 || std::abs(tr1 - 1.0) > 1e-6)
    throw std::invalid_argument("density matrices must have unit trace");

  Mat delta(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      delta(i, j) = priors.p1 * r1(i, j) - priors.p0 * r0(i, j);

  DiscriminationResult res;
  res.spectrum = symmetric_eigenvalues(delta);
  res.rank = n;
  double tn = 0.0;
  for (double lam : res.spectrum) tn += std::abs(lam);

  // The exact trace norm lies in [|p1-p0|, 1]; allow roundoff-sized excursions
  // and clamp, but treat anything larger as a numerical failure.
  const double lo = std::abs(priors.p1 - priors.p0);
  if (tn < lo - 1e-10 || tn > 1.0 + 1e-10)
    throw std::runtime_error("trace norm escaped [|p1 - p0|, 1]");
  tn = std::min(std::max(tn, lo), 1.0);

  res.trace_norm = tn;
  res.pe = 0.5 * (1.0 - tn);
  return res;
}

DiscriminationResult eve_error(int m, double nbar, EncodingKind encoding,
                               Priors priors, double rank_tol) {
  const Constellation c = constellation(m, nbar, encoding);
  const SubspaceBasis basis = embed(gram(c), rank_tol);
  const auto [rho0, rho1] = density_pair(basis, c);
  return min_error(rho0, rho1, priors);
}

double bob_error(double nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw std::invalid_argument("mean photon number must be finite and >= 0");
  // (1 - sqrt(1 - e^{-2 nbar}))/2; for nbar beyond ~43 the exponential is
  // below 1 ulp and the expression rounds to exactly 0, which is the
  // documented behavior (never NaN).
  return 0.5 * (1.0 - std::sqrt(1.0 - std::exp(-2.0 * nbar)));
}

std::vector<PeCurveRow> pe_curve(std::span<const int> m_values,
                                 std::span<const double> nbar_values,
                                 EncodingKind encoding, Priors priors,
                                 double rank_tol) {
  std::vector<PeCurveRow> rows;
  rows.reserve(m_values.size() * nbar_values.size());
  for (double nbar : nbar_values) {
    const double pb = bob_error(nbar);
    for (int m : m_values) {
      DiscriminationResult r = eve_error(m, nbar, encoding, priors, rank_tol);
      rows.push_back({m, nbar, r.pe, pb, r.rank});
    }
  }
  return rows;
}

}  // namespace qsc
