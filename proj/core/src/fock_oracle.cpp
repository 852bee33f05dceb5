#include "qsc/fock_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace qsc {

namespace {

constexpr int kMaxDimension = 4096;

// Poisson(mean) tail probability P[X > cutoff], summed forward in log space
// so small tails keep their relative accuracy.
double poisson_tail(double mean, int cutoff) {
  if (mean <= 0.0) return 0.0;
  const int n0 = cutoff + 1;
  const double log_first =
      -mean + n0 * std::log(mean) - std::lgamma(static_cast<double>(n0) + 1.0);
  double term = std::exp(log_first);
  double sum = 0.0;
  for (int n = n0; term > 0.0; ++n) {
    sum += term;
    const double next = term * mean / (n + 1);
    if (next < sum * 1e-18 + 1e-300) break;
    term = next;
  }
  return sum;
}

}  // namespace

DimensionOverflowError::DimensionOverflowError(int required)
    : std::invalid_argument(
          "truncated basis needs dimension " + std::to_string(required) +
          " > " + std::to_string(kMaxDimension)),
      required_dimension(required) {}

FockVector fock_coeffs(std::complex<double> beta, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
  FockVector v;
  v.cutoff = cutoff;
  v.coeffs.resize(static_cast<std::size_t>(cutoff) + 1);
  v.coeffs[0] = std::exp(-0.5 * std::norm(beta));
  for (int n = 1; n <= cutoff; ++n)
    v.coeffs[n] = v.coeffs[n - 1] * beta / std::sqrt(static_cast<double>(n));
  return v;
}

int choose_cutoff(double mean_per_mode, double tail_tol) {
  if (!(tail_tol > 0.0) || tail_tol >= 1.0)
    throw std::invalid_argument("tail tolerance must be in (0, 1)");
  if (!(mean_per_mode >= 0.0) || !std::isfinite(mean_per_mode))
    throw std::invalid_argument("per-mode mean must be finite and >= 0");
  for (int cutoff = 0;; ++cutoff) {
    if (poisson_tail(mean_per_mode, cutoff) < tail_tol) return cutoff;
    if (cutoff > 1000000)
      throw std::runtime_error("cutoff search failed to terminate");
  }
}

TruncatedDensity truncated_density(const Constellation& c, int bit,
                                   int cutoff) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
  const int per_mode = cutoff + 1;
  const int dim = per_mode * per_mode;

  TruncatedDensity rho;
  rho.dim = dim;
  rho.cutoff = cutoff;
  rho.matrix.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});

  std::vector<std::complex<double>> psi(dim);
  for (const ConstellationPoint& pt : c.points) {
    if (pt.bit != bit) continue;
    const TwoModeState s = cipher_state(pt.theta, c.nbar, c.encoding);
    const FockVector v1 = fock_coeffs(s.beta1, cutoff);
    const FockVector v2 = fock_coeffs(s.beta2, cutoff);
    for (int n1 = 0; n1 < per_mode; ++n1)
      for (int n2 = 0; n2 < per_mode; ++n2)
        psi[static_cast<std::size_t>(n1) * per_mode + n2] =
            v1.coeffs[n1] * v2.coeffs[n2];
    for (int i = 0; i < dim; ++i) {
      const std::complex<double> wi = pt.weight * psi[i];
      for (int j = 0; j < dim; ++j)
        rho.matrix[static_cast<std::size_t>(i) * dim + j] +=
            wi * std::conj(psi[j]);
    }
  }
  return rho;
}

OracleResult oracle_min_error(int m, double nbar, EncodingKind encoding,
                              Priors priors, double tail_tol) {
  if (!(priors.p0 >= 0.0) || !(priors.p1 >= 0.0) ||
      std::abs(priors.p0 + priors.p1 - 1.0) > 1e-12)
    throw std::invalid_argument("priors must be nonnegative and sum to 1");

  const Constellation c = constellation(m, nbar, encoding);

  // Per-mode mean photon number: exactly nbar/2 in the phase layout; for
  // polarization each mode holds nbar*sin^2 or nbar*cos^2 of the total, so
  // bound it by the constellation maximum.
  double mean = nbar / 2.0;
  if (encoding == EncodingKind::Polarization) {
    double frac = 0.0;
    for (const ConstellationPoint& pt : c.points) {
      const double s2 = std::sin(pt.theta / 2.0) * std::sin(pt.theta / 2.0);
      frac = std::max(frac, std::max(s2, 1.0 - s2));
    }
    mean = nbar * frac;
  }

  const int cutoff = choose_cutoff(mean, tail_tol);
  const int dim = (cutoff + 1) * (cutoff + 1);
  if (dim > kMaxDimension) throw DimensionOverflowError(dim);

  const TruncatedDensity rho0 = truncated_density(c, 0, cutoff);
  const TruncatedDensity rho1 = truncated_density(c, 1, cutoff);

  // Rigorous truncation budget: replacing each pure state |v> by its
  // truncated version changes the mixture by at most sum_j w_j * 2*sqrt(d_j)
  // in trace norm (d_j = norm deficit), and pe by half the prior-weighted
  // total.
  double bound[2] = {0.0, 0.0};
  for (const ConstellationPoint& pt : c.points) {
    const TwoModeState s = cipher_state(pt.theta, c.nbar, c.encoding);
    const FockVector v1 = fock_coeffs(s.beta1, cutoff);
    const FockVector v2 = fock_coeffs(s.beta2, cutoff);
    double norm2 = 0.0;
    for (int n1 = 0; n1 <= cutoff; ++n1)
      for (int n2 = 0; n2 <= cutoff; ++n2)
        norm2 += std::norm(v1.coeffs[n1]) * std::norm(v2.coeffs[n2]);
    const double deficit = std::max(0.0, 1.0 - norm2);
    bound[pt.bit] += pt.weight * 2.0 * std::sqrt(deficit);
  }

  Eigen::MatrixXcd delta(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * dim + j;
      delta(i, j) =
          priors.p1 * rho1.matrix[idx] - priors.p0 * rho0.matrix[idx];
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      delta, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("oracle eigensolver failed to converge");

  OracleResult out;
  out.cutoff = cutoff;
  out.dimension = dim;
  out.truncation_bound =
      0.5 * (priors.p0 * bound[0] + priors.p1 * bound[1]);

  DiscriminationResult& res = out.discrimination;
  res.rank = dim;
  res.spectrum.assign(solver.eigenvalues().data(),
                      solver.eigenvalues().data() + dim);
  double tn = 0.0;
  for (double lam : res.spectrum) tn += std::abs(lam);
  // Truncation can only lose trace-norm mass, so allow the budget (plus
  // roundoff) below |p1-p0| before declaring failure.
  const double lo = std::abs(priors.p1 - priors.p0);
  if (tn < lo - out.truncation_bound - 1e-10 || tn > 1.0 + 1e-10)
    throw std::runtime_error("trace norm escaped [|p1 - p0|, 1]");
  tn = std::min(tn, 1.0);
  res.trace_norm = tn;
  res.pe = 0.5 * (1.0 - tn);
  return out;
}

}  // namespace qsc
