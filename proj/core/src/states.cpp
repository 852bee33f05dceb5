#include "qsc/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_nbar(double nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw std::invalid_argument("mean photon number must be finite and >= 0");
}

void check_theta(double theta) {
  if (!std::isfinite(theta))
    throw std::invalid_argument("angle must be finite");
}

}  // namespace

double canonical_angle(double theta) {
  check_theta(theta);
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a slightly negative value can land exactly on 2*pi after the
  // correction; fold that back to 0.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

TwoModeState phase_state(double theta, double nbar) {
  check_theta(theta);
  check_nbar(nbar);
  const double amp = std::sqrt(nbar / 2.0);
  const double half = theta / 2.0;
  return {std::polar(amp, -half), std::polar(amp, +half)};
}

TwoModeState polarization_state(double theta, double nbar) {
  check_theta(theta);
  check_nbar(nbar);
  const double amp = std::sqrt(nbar);
  const double half = theta / 2.0;
  return {ComplexAmplitude{amp * std::sin(half), 0.0},
          ComplexAmplitude{amp * std::cos(half), 0.0}};
}

TwoModeState cipher_state(double theta, double nbar, EncodingKind encoding) {
  return encoding == EncodingKind::Phase ? phase_state(theta, nbar)
                                         : polarization_state(theta, nbar);
}

ComplexAmplitude inner_product(const TwoModeState& a, const TwoModeState& b) {
  const double na = std::norm(a.beta1) + std::norm(a.beta2);
  const double nb = std::norm(b.beta1) + std::norm(b.beta2);
  const ComplexAmplitude cross =
      std::conj(a.beta1) * b.beta1 + std::conj(a.beta2) * b.beta2;
  return std::exp(-0.5 * na - 0.5 * nb + cross);
}

double overlap_angle(double dtheta, double nbar) {
  if (!std::isfinite(dtheta) || dtheta <= -kTwoPi || dtheta >= kTwoPi)
    throw std::invalid_argument("angle difference must lie in (-2*pi, 2*pi)");
  check_nbar(nbar);
  return std::exp(nbar * (std::cos(dtheta / 2.0) - 1.0));
}

double mean_photon_number(const TwoModeState& s) {
  return std::norm(s.beta1) + std::norm(s.beta2);
}

}  // namespace qsc
