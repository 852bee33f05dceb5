#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qsc/linalg.hpp"
#include "qsc/states.hpp"

// Minimum-error discrimination of the two bit-conditional signal mixtures.
//
// With the running key unknown, an eavesdropper intercepting one symbol sees
// bit b as the mixed state rho_b = sum_k w_k |Psi(theta_{k,b})><Psi(theta_{k,b})|
// over the M key values.  Her best possible (Helstrom) error probability is
//
//   pe = (1 - || p1 rho_1 - p0 rho_0 ||_1) / 2,
//
// the trace norm taken over the optimal sign-split projectors.  All 2M pure
// signal states live in an at-most-2M-dimensional subspace, and their exact
// pairwise overlaps are known in closed form, so the computation runs in the
// span of the constellation instead of a photon-number cutoff: factor the
// Gram matrix G = B^T B, represent each state as a column of B, form the
// r x r mixtures, and read the trace norm off the spectrum.  That keeps even
// nbar = 1000 sweeps at dimension 2M.
//
// The intended receiver's error (known key, antipodal pure states) has the
// closed form bob_error below.

namespace qsc {

// One signal point: modulation angle, data bit, and the point's prior weight
// within its bit class.
struct ConstellationPoint {
  double theta;
  int bit;
  double weight;
};

// The full 2M-point cipher alphabet at fixed (M, nbar, encoding), sorted by
// angle; angles are exactly {j*pi/M : j = 0..2M-1}.
struct Constellation {
  std::vector<ConstellationPoint> points;
  double nbar = 0.0;
  EncodingKind encoding = EncodingKind::Phase;
  int m = 0;
};

// Bit priors (p0 + p1 = 1, both nonnegative).
struct Priors {
  double p0 = 0.5;
  double p1 = 0.5;
};

// Basis for the span of the constellation: coeffs is r x 2M with
// coeffs^T coeffs equal to the Gram matrix; column j represents state j.
struct SubspaceBasis {
  Mat coeffs;
  int rank = 0;
  double tol = 0.0;
};

// Output of a binary discrimination problem.
struct DiscriminationResult {
  double pe = 0.0;          // minimum error probability, in [0, 0.5]
  double trace_norm = 0.0;  // ||p1 R1 - p0 R0||_1, in [|p1-p0|, 1]
  int rank = 0;             // dimension of the subspace actually used
  std::vector<double> spectrum;  // eigenvalues of p1 R1 - p0 R0, ascending
};

// Build the 2M-point alphabet.  Key values are uniformly weighted by
// default; key_weights (length M, nonnegative, summing to 1) overrides the
// within-class distribution for both bits.  Throws std::invalid_argument on
// m < 1, bad nbar, or malformed weights.
Constellation constellation(int m, double nbar, EncodingKind encoding,
                            std::span<const double> key_weights = {});

// Pairwise overlaps <Psi_i|Psi_j> (real for both encodings): symmetric, unit
// diagonal, positive semidefinite.
Mat gram(const Constellation& c);

// Factor a Gram matrix: eigendecompose G = U Lambda U^T, keep eigenvalues
// >= rank_tol * max(Lambda), return B = Lambda^{1/2} U^T restricted to the
// kept subspace (rows ordered by descending eigenvalue).  B^T B reproduces g
// within 1e-10 relative Frobenius error.
SubspaceBasis embed(const Mat& g, double rank_tol = 1e-12);

// Bit-conditional mixtures in the subspace basis:
// R_b = sum_{j : bit_j = b} w_j (col_j B)(col_j B)^T.  Unit trace, PSD.
std::pair<Mat, Mat> density_pair(const SubspaceBasis& basis,
                                 const Constellation& c);

// Helstrom bound for two unit-trace PSD matrices under the given priors:
// pe = (1 - ||p1 r1 - p0 r0||_1)/2 via the spectrum of the weighted
// difference.  Throws std::invalid_argument on malformed priors or
// mismatched/non-normalized inputs.
DiscriminationResult min_error(const Mat& r0, const Mat& r1, Priors priors);

// Eavesdropper bound for the full cipher at (M, nbar): the composition
// constellation -> gram -> embed -> density_pair -> min_error.
DiscriminationResult eve_error(int m, double nbar, EncodingKind encoding,
                               Priors priors = {}, double rank_tol = 1e-12);

// Intended receiver's error for antipodal coherent signals with a known key:
// pe = (1 - sqrt(1 - exp(-2*nbar)))/2.  Underflows cleanly to 0 for large
// nbar (never NaN).
double bob_error(double nbar);

// One sweep row: both error bounds plus the subspace rank used.
struct PeCurveRow {
  int m;
  double nbar;
  double pe_eve;
  double pe_bob;
  int rank;
};

// Evaluate eve_error/bob_error over the cartesian product of the two lists,
// in (nbar outer, m inner) order.  Rows are independent and deterministic.
std::vector<PeCurveRow> pe_curve(std::span<const int> m_values,
                                 std::span<const double> nbar_values,
                                 EncodingKind encoding, Priors priors = {},
                                 double rank_tol = 1e-12);

}  // namespace qsc
