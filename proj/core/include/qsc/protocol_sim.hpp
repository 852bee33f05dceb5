#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qsc/helstrom.hpp"
#include "qsc/keystream.hpp"
#include "qsc/states.hpp"

// Monte Carlo run of the full cipher: Alice expands the shared seed into a
// running key, modulates random message bits onto the constellation, and the
// signal crosses a lossy channel.  Eve taps the line right at the source
// (before any loss, her best case) with a heterodyne receiver and a
// maximum-a-posteriori guess over the whole constellation; Bob receives the
// attenuated signal and, knowing the key index, makes the two-hypothesis
// maximum-likelihood choice.  Measured bit error rates are reported next to
// the analytic optima so the one-sided bounds (no receiver beats the
// quantum limits) can be checked statistically.

namespace qsc {

// Deterministic random stream: mt19937_64 drives Box-Muller normal pairs
// built from 53-bit uniforms.  Substreams for shard-parallel runs are seeded
// by scrambling (seed, shard) so results never depend on thread count.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  static RandomStream for_shard(std::uint64_t seed, std::uint64_t shard);

  std::uint64_t next_word() { return eng_(); }

  // Two independent standard normals (Box-Muller; consumes exactly two
  // engine words, so the stream layout is fixed).
  std::pair<double, double> normal_pair();

 private:
  std::mt19937_64 eng_;
};

// Identifier for the exact random-number scheme above; recorded in every
// report so results can be reproduced later.
extern const char* const kRngAlgorithm;

// Symbols per RNG shard (fixed: changing it changes every simulation).
inline constexpr std::int64_t kShardSymbols = 8192;

struct SimConfig {
  int m = 2;                 // ciphering levels; power of two
  double nbar = 1.0;         // source mean photon number
  EncodingKind encoding = EncodingKind::Phase;
  std::int64_t bits = 10000; // message length in symbols
  double loss_db = 0.0;      // channel attenuation Alice -> Bob
  std::uint64_t seed = 1;    // measurement-noise RNG seed
  LfsrState lfsr;            // key-expansion seed/taps
  int threads = 1;           // worker count; never affects results
};

struct SimReport {
  // Config echo.
  int m = 0;
  double nbar = 0.0;
  EncodingKind encoding = EncodingKind::Phase;
  std::int64_t bits = 0;
  double loss_db = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t lfsr_seed = 0;
  int lfsr_length = 0;
  std::vector<int> lfsr_taps;
  std::string rng;

  // Measured outcomes.
  std::int64_t bob_errors = 0;
  std::int64_t eve_errors = 0;
  double bob_ber = 0.0;
  double eve_ber = 0.0;
  double bob_se = 0.0;  // binomial standard errors of the BER estimates
  double eve_se = 0.0;

  // Analytic references: Bob's closed form at his received energy, Eve's
  // Helstrom bound at the source energy.
  double analytic_pe_bob = 0.0;
  double analytic_pe_eve_helstrom = 0.0;
};

// Ideal heterodyne measurement of both modes: z = beta + g with the real and
// imaginary parts of g independent zero-mean Gaussians of variance 1/2.
std::pair<ComplexAmplitude, ComplexAmplitude> heterodyne_sample(
    const TwoModeState& s, RandomStream& rng);

// Linear attenuation: amplitudes scaled by sqrt(eta), eta = 10^(-loss_db/10),
// so the mean photon number scales by eta exactly.  loss_db must be >= 0.
TwoModeState apply_loss(const TwoModeState& s, double loss_db);

// Bob's keyed decision: maximum likelihood between the two hypothesis angles
// {phi_k, phi_k + pi} at his received nbar.  Ties resolve to bit 0.
int bob_decide(ComplexAmplitude z1, ComplexAmplitude z2, int k, int m,
               double nbar, EncodingKind encoding);

// Eve's unkeyed decision: posterior mass of each bit summed over the
// constellation under the heterodyne Gaussian likelihood (log-sum-exp);
// ties resolve to bit 0.
int eve_map_decide(ComplexAmplitude z1, ComplexAmplitude z2,
                   const Constellation& c, Priors priors);

// Run one session.  Deterministic in config (including across thread
// counts).  Throws std::invalid_argument on bad config.
SimReport run_session(const SimConfig& config);

// Flat "key = value" text block, one field per line.
std::string report_text(const SimReport& r);

// CSV row with the numeric fields (header below).
std::string report_csv_header();
std::string report_csv_row(const SimReport& r);

}  // namespace qsc
