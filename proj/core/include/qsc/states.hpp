#pragma once

#include <complex>

// Two-mode coherent-state signal alphabet.
//
// A signal is a product of two coherent states |beta1>|beta2>.  The cipher
// encodes one running angle theta into the pair, using one of two physical
// layouts:
//
//   phase encoding         beta1 = exp(-i theta/2) sqrt(nbar/2)
//                          beta2 = exp(+i theta/2) sqrt(nbar/2)
//   polarization encoding  beta1 = sqrt(nbar) sin(theta/2)
//                          beta2 = sqrt(nbar) cos(theta/2)
//
// Both layouts carry total mean photon number nbar for every theta, and both
// share the same pairwise overlap law, which is what every distinguishability
// bound in this library is built on.

namespace qsc {

using ComplexAmplitude = std::complex<double>;

enum class EncodingKind { Phase, Polarization };

// Amplitudes of the two modes of a signal state.
struct TwoModeState {
  ComplexAmplitude beta1{};
  ComplexAmplitude beta2{};
};

// Reduce an arbitrary finite angle into [0, 2*pi).
double canonical_angle(double theta);

// Signal state for angle theta (any finite value) at mean photon number
// nbar >= 0.  Throws std::invalid_argument on non-finite theta or bad nbar.
TwoModeState phase_state(double theta, double nbar);
TwoModeState polarization_state(double theta, double nbar);
TwoModeState cipher_state(double theta, double nbar, EncodingKind encoding);

// <a|b> for two-mode coherent states:
//   exp(-|a1|^2/2 - |b1|^2/2 + conj(a1) b1) * (same for mode 2).
ComplexAmplitude inner_product(const TwoModeState& a, const TwoModeState& b);

// Overlap of two signal states whose canonical angles differ by dtheta,
// evaluated in closed form:
//
//   <Psi(t)|Psi(t + dtheta)> = exp(nbar * (cos(dtheta/2) - 1))
//
// dtheta must be the raw difference of canonical angles, in (-2*pi, 2*pi).
// The two-mode construction is 4*pi periodic in theta, so reducing the
// difference mod 2*pi changes the answer; callers keep raw differences.
// Identical for both encodings, and real because the phase factors cancel
// across the two modes.
double overlap_angle(double dtheta, double nbar);

// |beta1|^2 + |beta2|^2.
double mean_photon_number(const TwoModeState& s);

}  // namespace qsc
