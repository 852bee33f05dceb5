#include "qsc/protocol_sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qsc/format.hpp"

namespace qsc {

const char* const kRngAlgorithm =
    "mt19937_64-boxmuller53-splitmix64shard8192-v1";

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// splitmix64 finalizer: scrambles (seed, shard) into a substream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t shard) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (shard + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double squared_distance(ComplexAmplitude z1, ComplexAmplitude z2,
                        const TwoModeState& s) {
  return std::norm(z1 - s.beta1) + std::norm(z2 - s.beta2);
}

struct ShardCounts {
  std::int64_t bob_errors = 0;
  std::int64_t eve_errors = 0;
};

}  // namespace

RandomStream RandomStream::for_shard(std::uint64_t seed, std::uint64_t shard) {
  return RandomStream(mix_seed(seed, shard));
}

std::pair<double, double> RandomStream::normal_pair() {
  // 53-bit uniforms; u1 shifted into (0, 1] so the log is always finite.
  const double u1 = ((eng_() >> 11) + 1) * 0x1p-53;
  const double u2 = (eng_() >> 11) * 0x1p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = kTwoPi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

std::pair<ComplexAmplitude, ComplexAmplitude> heterodyne_sample(
    const TwoModeState& s, RandomStream& rng) {
  // Variance 1/2 per quadrature.
  constexpr double kSigma = std::numbers::sqrt2 / 2.0;
  const auto [g1, g2] = rng.normal_pair();
  const auto [g3, g4] = rng.normal_pair();
  return {s.beta1 + kSigma * ComplexAmplitude{g1, g2},
          s.beta2 + kSigma * ComplexAmplitude{g3, g4}};
}

TwoModeState apply_loss(const TwoModeState& s, double loss_db) {
  if (!std::isfinite(loss_db) || loss_db < 0.0)
    throw std::invalid_argument("loss must be finite and >= 0 dB");
  const double amp = std::sqrt(std::pow(10.0, -loss_db / 10.0));
  return {amp * s.beta1, amp * s.beta2};
}

int bob_decide(ComplexAmplitude z1, ComplexAmplitude z2, int k, int m,
               double nbar, EncodingKind encoding) {
  const TwoModeState h0 = cipher_state(total_angle(k, 0, m), nbar, encoding);
  const TwoModeState h1 = cipher_state(total_angle(k, 1, m), nbar, encoding);
  // Gaussian likelihoods have equal covariance, so ML = nearest amplitude.
  return squared_distance(z1, z2, h1) < squared_distance(z1, z2, h0) ? 1 : 0;
}

int eve_map_decide(ComplexAmplitude z1, ComplexAmplitude z2,
                   const Constellation& c, Priors priors) {
  // Log-posterior of point j: log(p_bit * w_j) - |z - beta_j|^2 (Gaussian
  // heterodyne likelihood, constants dropped).  Accumulate each bit's mass
  // with log-sum-exp and compare.
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> lp(c.points.size());
  for (std::size_t j = 0; j < c.points.size(); ++j) {
    const ConstellationPoint& pt = c.points[j];
    const double prior = (pt.bit == 0 ? priors.p0 : priors.p1) * pt.weight;
    if (prior <= 0.0) {
      lp[j] = -std::numeric_limits<double>::infinity();
      continue;
    }
    const TwoModeState s = cipher_state(pt.theta, c.nbar, c.encoding);
    lp[j] = std::log(prior) - squared_distance(z1, z2, s);
    best = std::max(best, lp[j]);
  }
  double mass[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < c.points.size(); ++j)
    if (lp[j] > -std::numeric_limits<double>::infinity())
      mass[c.points[j].bit] += std::exp(lp[j] - best);
  return mass[1] > mass[0] ? 1 : 0;
}

SimReport run_session(const SimConfig& config) {
  if (config.bits < 1) throw std::invalid_argument("bits must be >= 1");
  if (config.m < 1 || (config.m & (config.m - 1)) != 0)
    throw std::invalid_argument("M must be a power of two for simulation");
  if (!std::isfinite(config.nbar) || config.nbar < 0.0)
    throw std::invalid_argument("mean photon number must be finite and >= 0");
  if (!std::isfinite(config.loss_db) || config.loss_db < 0.0)
    throw std::invalid_argument("loss must be finite and >= 0 dB");
  if (config.threads < 1 || config.threads > 1024)
    throw std::invalid_argument("threads must be in [1, 1024]");
  if (config.lfsr.reg == 0)
    throw std::invalid_argument("LFSR register is all-zero");

  // Alice's running key for the whole message, generated once up front so
  // that sharding the measurement noise cannot perturb it.
  const std::vector<int> keys = expand_key(config.lfsr, config.bits, config.m);

  const double eta = std::pow(10.0, -config.loss_db / 10.0);
  const double nbar_bob = config.nbar * eta;
  const Priors priors;  // equal bit priors
  const Constellation eve_view =
      constellation(config.m, config.nbar, config.encoding);

  const std::int64_t shard_count =
      (config.bits + kShardSymbols - 1) / kShardSymbols;
  std::vector<ShardCounts> per_shard(static_cast<std::size_t>(shard_count));

  // Per-symbol draw order (fixed contract): one engine word for the message
  // bit, two normal pairs for Eve's heterodyne, two for Bob's.
  auto run_shard = [&](std::int64_t shard) {
    RandomStream rng = RandomStream::for_shard(config.seed, shard);
    const std::int64_t begin = shard * kShardSymbols;
    const std::int64_t end = std::min(config.bits, begin + kShardSymbols);
    ShardCounts counts;
    for (std::int64_t i = begin; i < end; ++i) {
      const int bit = static_cast<int>(rng.next_word() & 1u);
      const int k = keys[static_cast<std::size_t>(i)];
      const TwoModeState sent =
          cipher_state(total_angle(k, bit, config.m), config.nbar,
                       config.encoding);
      const auto [ze1, ze2] = heterodyne_sample(sent, rng);  // pre-loss tap
      const TwoModeState received = apply_loss(sent, config.loss_db);
      const auto [zb1, zb2] = heterodyne_sample(received, rng);
      if (eve_map_decide(ze1, ze2, eve_view, priors) != bit)
        ++counts.eve_errors;
      if (bob_decide(zb1, zb2, k, config.m, nbar_bob, config.encoding) != bit)
        ++counts.bob_errors;
    }
    per_shard[static_cast<std::size_t>(shard)] = counts;
  };

  const int workers =
      static_cast<int>(std::min<std::int64_t>(config.threads, shard_count));
  if (workers <= 1) {
    for (std::int64_t shard = 0; shard < shard_count; ++shard)
      run_shard(shard);
  } else {
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::int64_t shard = next.fetch_add(1); shard < shard_count;
               shard = next.fetch_add(1))
            run_shard(shard);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  SimReport r;
  r.m = config.m;
  r.nbar = config.nbar;
  r.encoding = config.encoding;
  r.bits = config.bits;
  r.loss_db = config.loss_db;
  r.seed = config.seed;
  r.lfsr_seed = config.lfsr.reg;
  r.lfsr_length = config.lfsr.length;
  for (int p = config.lfsr.length; p >= 1; --p)
    if (config.lfsr.tap_mask >> (config.lfsr.length - p) & 1u)
      r.lfsr_taps.push_back(p);
  r.rng = kRngAlgorithm;
  for (const ShardCounts& counts : per_shard) {
    r.bob_errors += counts.bob_errors;
    r.eve_errors += counts.eve_errors;
  }
  const auto n = static_cast<double>(config.bits);
  r.bob_ber = static_cast<double>(r.bob_errors) / n;
  r.eve_ber = static_cast<double>(r.eve_errors) / n;
  r.bob_se = std::sqrt(r.bob_ber * (1.0 - r.bob_ber) / n);
  r.eve_se = std::sqrt(r.eve_ber * (1.0 - r.eve_ber) / n);
  r.analytic_pe_bob = bob_error(nbar_bob);
  r.analytic_pe_eve_helstrom =
      eve_error(config.m, config.nbar, config.encoding, priors).pe;
  return r;
}

namespace {

std::string taps_csv(const std::vector<int>& taps) {
  std::string out;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(taps[i]);
  }
  return out;
}

std::string hex_string(std::uint64_t v) {
  char buf[19] = "0x";
  char* p = buf + 2;
  const auto res = std::to_chars(p, buf + sizeof buf, v, 16);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string report_text(const SimReport& r) {
  std::string out;
  auto line = [&out](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  line("m", std::to_string(r.m));
  line("nbar", format_number(r.nbar));
  line("encoding", encoding_name(r.encoding));
  line("bits", std::to_string(r.bits));
  line("loss_db", format_number(r.loss_db));
  line("seed", std::to_string(r.seed));
  line("lfsr_seed", hex_string(r.lfsr_seed));
  line("lfsr_length", std::to_string(r.lfsr_length));
  line("lfsr_taps", taps_csv(r.lfsr_taps));
  line("rng", r.rng);
  line("bob_errors", std::to_string(r.bob_errors));
  line("eve_errors", std::to_string(r.eve_errors));
  line("bob_ber", format_probability(r.bob_ber));
  line("eve_ber", format_probability(r.eve_ber));
  line("bob_se", format_probability(r.bob_se));
  line("eve_se", format_probability(r.eve_se));
  line("analytic_pe_bob", format_probability(r.analytic_pe_bob));
  line("analytic_pe_eve_helstrom",
       format_probability(r.analytic_pe_eve_helstrom));
  return out;
}

std::string report_csv_header() {
  return "m,nbar,encoding,bits,loss_db,seed,bob_errors,eve_errors,bob_ber,"
         "eve_ber,bob_se,eve_se,analytic_pe_bob,analytic_pe_eve_helstrom";
}

std::string report_csv_row(const SimReport& r) {
  std::string out;
  out += std::to_string(r.m);
  out += ',';
  out += format_number(r.nbar);
  out += ',';
  out += encoding_name(r.encoding);
  out += ',';
  out += std::to_string(r.bits);
  out += ',';
  out += format_number(r.loss_db);
  out += ',';
  out += std::to_string(r.seed);
  out += ',';
  out += std::to_string(r.bob_errors);
  out += ',';
  out += std::to_string(r.eve_errors);
  out += ',';
  out += format_probability(r.bob_ber);
  out += ',';
  out += format_probability(r.eve_ber);
  out += ',';
  out += format_probability(r.bob_se);
  out += ',';
  out += format_probability(r.eve_se);
  out += ',';
  out += format_probability(r.analytic_pe_bob);
  out += ',';
  out += format_probability(r.analytic_pe_eve_helstrom);
  return out;
}

}  // namespace qsc
