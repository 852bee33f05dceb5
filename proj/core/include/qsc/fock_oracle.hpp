#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qsc/helstrom.hpp"
#include "qsc/states.hpp"

// Brute-force verifier for the subspace engine.  Everything here works in an
// explicit two-mode photon-number basis truncated at a per-mode cutoff: the
// bit-conditional mixtures are assembled as dense Hermitian matrices and the
// minimum error probability is recomputed from their full spectrum.  This
// path shares no linear algebra with the Gram-subspace engine (different
// representation, different eigensolver), which is exactly what makes the
// cross-checks in the test suite meaningful.  It is deliberately simple and
// slow; keep it that way.

namespace qsc {

// Number-basis expansion of a coherent state: coeffs[n] = e^{-|b|^2/2} b^n /
// sqrt(n!) for n = 0..cutoff.
struct FockVector {
  std::vector<std::complex<double>> coeffs;
  int cutoff = 0;
};

// Requested basis would exceed the supported dense-matrix size.
struct DimensionOverflowError : std::invalid_argument {
  explicit DimensionOverflowError(int required);
  int required_dimension;
};

// Truncated coherent-state expansion; norm deficit equals the Poisson tail
// beyond the cutoff.  cutoff must be >= 0.
FockVector fock_coeffs(std::complex<double> beta, int cutoff);

// Smallest cutoff whose Poisson(mean) tail is below tail_tol; tail_tol must
// lie in (0, 1).
int choose_cutoff(double mean_per_mode, double tail_tol);

// One bit-conditional mixture over the constellation's key values as a dense
// Hermitian matrix on the truncated two-mode basis |n1>|n2>, n_i <= cutoff
// (row-major, dimension (cutoff+1)^2).  Trace falls short of 1 only by the
// truncation budget.
struct TruncatedDensity {
  std::vector<std::complex<double>> matrix;
  int dim = 0;
  int cutoff = 0;
};
TruncatedDensity truncated_density(const Constellation& c, int bit,
                                   int cutoff);

// Full oracle output: the discrimination result plus the truncation
// bookkeeping needed to interpret it.
struct OracleResult {
  DiscriminationResult discrimination;
  int cutoff = 0;          // per-mode photon cutoff used
  int dimension = 0;       // (cutoff+1)^2
  double truncation_bound = 0.0;  // rigorous bound on |pe - pe_untruncated|
};

// Recompute the eavesdropper bound by brute force.  The per-mode cutoff is
// chosen from the per-mode mean photon number (nbar/2 for phase encoding; an
// nbar * max(sin^2, cos^2) bound over the constellation for polarization).
// Throws DimensionOverflowError if (cutoff+1)^2 would exceed 4096.
OracleResult oracle_min_error(int m, double nbar, EncodingKind encoding,
                              Priors priors = {}, double tail_tol = 1e-12);

}  // namespace qsc
