#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qsc/fock_oracle.hpp"
#include "qsc/helstrom.hpp"
#include "qsc/states.hpp"

using namespace qsc;

namespace {

// Independent Poisson tail via direct term-by-term summation in log space.
double direct_tail(double mean, int cutoff) {
  double tail = 0.0;
  for (int n = cutoff + 1; n < cutoff + 2000; ++n) {
    const double log_term =
        -mean + n * std::log(mean) - std::lgamma(n + 1.0);
    tail += std::exp(log_term);
  }
  return tail;
}

std::complex<double> fock_overlap(const FockVector& a, const FockVector& b) {
  std::complex<double> sum = 0.0;
  for (std::size_t n = 0; n < a.coeffs.size(); ++n)
    sum += std::conj(a.coeffs[n]) * b.coeffs[n];
  return sum;
}

}  // namespace

TEST_CASE("fock_coeffs expands coherent states") {
  SUBCASE("vacuum is the first basis vector") {
    const FockVector v = fock_coeffs(0.0, 5);
    CHECK(v.coeffs[0] == std::complex<double>{1.0, 0.0});
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(v.coeffs[n]) == 0.0);
  }
  SUBCASE("photon-number mean equals |beta|^2") {
    const FockVector v = fock_coeffs(1.0, 20);
    double mean = 0.0;
    for (int n = 0; n <= 20; ++n) mean += n * std::norm(v.coeffs[n]);
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("norm of a short truncation is the partial Poisson sum") {
    const FockVector v = fock_coeffs(1.0, 2);
    double norm2 = 0.0;
    for (const auto& c : v.coeffs) norm2 += std::norm(c);
    CHECK(norm2 == doctest::Approx(std::exp(-1.0) * 2.5).epsilon(1e-14));
  }
  SUBCASE("complex amplitudes keep phase structure") {
    const FockVector v = fock_coeffs({0.3, -1.1}, 15);
    double norm2 = 0.0;
    for (const auto& c : v.coeffs) norm2 += std::norm(c);
    CHECK(norm2 <= 1.0 + 1e-14);
    CHECK(norm2 > 0.99);  // cutoff far beyond |beta|^2 = 1.3
  }
  SUBCASE("negative cutoff is rejected") {
    CHECK_THROWS_AS(fock_coeffs(1.0, -1), std::invalid_argument);
  }
}

TEST_CASE("choose_cutoff is the minimal tail crossing") {
  CHECK(choose_cutoff(0.0, 1e-12) == 0);
  for (double mean : {0.5, 1.0}) {
    const int cutoff = choose_cutoff(mean, 1e-12);
    CHECK(direct_tail(mean, cutoff) < 1e-12);
    REQUIRE(cutoff > 0);
    CHECK(direct_tail(mean, cutoff - 1) >= 1e-12);
  }
  CHECK_THROWS_AS(choose_cutoff(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(choose_cutoff(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(choose_cutoff(-1.0, 1e-12), std::invalid_argument);
}

TEST_CASE("truncated densities are Hermitian with near-unit trace") {
  const double tail_tol = 1e-12;
  for (int m : {1, 3, 4}) {
    for (double nbar : {0.25, 1.0, 2.0}) {
      const Constellation c = constellation(m, nbar, EncodingKind::Phase);
      const int cutoff = choose_cutoff(nbar / 2.0, tail_tol);
      for (int bit : {0, 1}) {
        const TruncatedDensity rho = truncated_density(c, bit, cutoff);
        REQUIRE(rho.dim == (cutoff + 1) * (cutoff + 1));
        std::complex<double> trace = 0.0;
        double herm = 0.0;
        for (int i = 0; i < rho.dim; ++i) {
          trace += rho.matrix[static_cast<std::size_t>(i) * rho.dim + i];
          for (int j = 0; j < rho.dim; ++j) {
            const auto ij =
                rho.matrix[static_cast<std::size_t>(i) * rho.dim + j];
            const auto ji =
                rho.matrix[static_cast<std::size_t>(j) * rho.dim + i];
            herm = std::max(herm, std::abs(ij - std::conj(ji)));
          }
        }
        CHECK(herm < 1e-12);
        CHECK(trace.real() <= 1.0 + 1e-12);
        CHECK(trace.real() >= 1.0 - 10 * tail_tol);
        CHECK(std::abs(trace.imag()) < 1e-14);
      }
    }
  }
}

TEST_CASE("tensor products of Fock vectors reproduce two-mode overlaps") {
  const double tail_tol = 1e-12;
  const double nbar = 1.0;
  const Constellation c = constellation(4, nbar, EncodingKind::Phase);
  const int cutoff = choose_cutoff(nbar / 2.0, tail_tol);
  for (const ConstellationPoint& a : c.points) {
    for (const ConstellationPoint& b : c.points) {
      const TwoModeState sa = cipher_state(a.theta, nbar, c.encoding);
      const TwoModeState sb = cipher_state(b.theta, nbar, c.encoding);
      const std::complex<double> via_fock =
          fock_overlap(fock_coeffs(sa.beta1, cutoff),
                       fock_coeffs(sb.beta1, cutoff)) *
          fock_overlap(fock_coeffs(sa.beta2, cutoff),
                       fock_coeffs(sb.beta2, cutoff));
      const std::complex<double> exact = inner_product(sa, sb);
      CHECK(std::abs(via_fock - exact) < 10 * tail_tol);
    }
  }
}

TEST_CASE("oracle_min_error recomputes the bound independently") {
  SUBCASE("M = 1, nbar = 1 matches the closed form") {
    const OracleResult res = oracle_min_error(1, 1.0, EncodingKind::Phase);
    CHECK(std::abs(res.discrimination.pe - 0.0350632) < 1e-6);
    CHECK(std::abs(res.discrimination.pe - bob_error(1.0)) < 1e-9);
  }
  SUBCASE("vacuum is pure guessing") {
    const OracleResult res = oracle_min_error(3, 0.0, EncodingKind::Phase);
    CHECK(res.discrimination.pe == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.cutoff == 0);
  }
  SUBCASE("agrees with the subspace engine at M = 4, nbar = 1") {
    const OracleResult oracle = oracle_min_error(4, 1.0, EncodingKind::Phase);
    const double engine = eve_error(4, 1.0, EncodingKind::Phase).pe;
    CHECK(std::abs(oracle.discrimination.pe - engine) < 1e-8);
  }
  SUBCASE("agrees for the polarization layout too") {
    for (int m : {1, 2, 3}) {
      const OracleResult oracle =
          oracle_min_error(m, 1.0, EncodingKind::Polarization);
      const double engine =
          eve_error(m, 1.0, EncodingKind::Polarization).pe;
      CHECK(std::abs(oracle.discrimination.pe - engine) < 1e-8);
    }
  }
  SUBCASE("truncation bound is tiny at the default budget") {
    const OracleResult res = oracle_min_error(2, 2.0, EncodingKind::Phase);
    CHECK(res.truncation_bound < 1e-5);
    CHECK(res.truncation_bound >= 0.0);
    CHECK(res.dimension == (res.cutoff + 1) * (res.cutoff + 1));
  }
  SUBCASE("skewed priors carry through") {
    const Priors priors{0.8, 0.2};
    const OracleResult oracle =
        oracle_min_error(2, 1.0, EncodingKind::Phase, priors);
    const double engine = eve_error(2, 1.0, EncodingKind::Phase, priors).pe;
    CHECK(std::abs(oracle.discrimination.pe - engine) < 1e-8);
    CHECK(oracle.discrimination.pe <= 0.2 + 1e-12);
  }
  SUBCASE("oversized bases are rejected with the computed requirement") {
    try {
      oracle_min_error(2, 200.0, EncodingKind::Phase);
      FAIL("expected DimensionOverflowError");
    } catch (const DimensionOverflowError& e) {
      CHECK(e.required_dimension > 4096);
      CHECK(std::string(e.what()).find(
                std::to_string(e.required_dimension)) != std::string::npos);
    }
  }
  SUBCASE("bad priors are rejected") {
    CHECK_THROWS_AS(
        oracle_min_error(2, 1.0, EncodingKind::Phase, Priors{0.9, 0.2}),
        std::invalid_argument);
  }
}
