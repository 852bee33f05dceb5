#include "qsc/keystream.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsc {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t length_mask(int length) {
  return length == 64 ? ~std::uint64_t{0}
                      : (std::uint64_t{1} << length) - 1;
}

// log2 of a power of two; -1 if not a power of two.
int exact_log2(int m) {
  if (m < 1 || (m & (m - 1)) != 0) return -1;
  return std::countr_zero(static_cast<unsigned>(m));
}

void check_index(int k, int m) {
  if (m < 1) throw std::invalid_argument("M must be >= 1");
  if (k < 0 || k >= m)
    throw std::invalid_argument("key index out of range [0, M)");
}

}  // namespace

LfsrState make_lfsr(int length, std::span<const int> taps,
                    std::uint64_t seed_bits) {
  if (length < 1 || length > 64)
    throw std::invalid_argument("LFSR length must be in [1, 64]");
  if (taps.empty()) throw std::invalid_argument("tap set must be non-empty");

  std::uint64_t mask = 0;
  bool has_top = false;
  for (int p : taps) {
    if (p < 1 || p > length)
      throw std::invalid_argument("tap position outside [1, length]");
    if (p == length) has_top = true;
    mask |= std::uint64_t{1} << (length - p);
  }
  if (!has_top)
    throw std::invalid_argument("tap set must include position = length");

  if (seed_bits == 0) throw std::invalid_argument("LFSR seed must be nonzero");
  if (seed_bits > length_mask(length))
    throw std::invalid_argument("LFSR seed does not fit in register length");

  return LfsrState{seed_bits, length, mask};
}

std::pair<int, LfsrState> lfsr_next(const LfsrState& state) {
  if (state.reg == 0)
    throw std::invalid_argument("LFSR register is all-zero");
  const int out = static_cast<int>(state.reg & 1u);
  const std::uint64_t fb =
      static_cast<std::uint64_t>(std::popcount(state.reg & state.tap_mask) & 1);
  LfsrState next = state;
  next.reg = (state.reg >> 1) | (fb << (state.length - 1));
  return {out, next};
}

std::vector<int> expand_key(LfsrState seed, std::int64_t count, int m) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  const int bits = exact_log2(m);
  if (bits < 0)
    throw std::invalid_argument("M must be a power of two for key expansion");

  std::vector<int> indices;
  indices.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    int k = 0;
    for (int b = 0; b < bits; ++b) {
      auto [bit, next] = lfsr_next(seed);
      seed = next;
      k = (k << 1) | bit;
    }
    indices.push_back(k);
  }
  return indices;
}

KeyStream::KeyStream(LfsrState lfsr, int m) : lfsr_(lfsr), m_(m) {
  bits_per_index_ = exact_log2(m);
  if (bits_per_index_ < 0)
    throw std::invalid_argument("M must be a power of two for key expansion");
  if (lfsr_.reg == 0) throw std::invalid_argument("LFSR register is all-zero");
}

int KeyStream::next() {
  int k = 0;
  for (int b = 0; b < bits_per_index_; ++b) {
    auto [bit, next] = lfsr_next(lfsr_);
    lfsr_ = next;
    k = (k << 1) | bit;
  }
  ++emitted_;
  return k;
}

double angle_for(int k, int m) {
  check_index(k, m);
  // pi*(k/M + (1 - (-1)^k)/2): odd indices gain a half-turn, so the result
  // sits in [0, pi) for even k and [pi, 2*pi) for odd k — already canonical.
  return kPi * (static_cast<double>(k) / m + (k % 2 != 0 ? 1.0 : 0.0));
}

double total_angle(int k, int b, int m) {
  if (b != 0 && b != 1) throw std::invalid_argument("bit must be 0 or 1");
  double theta = angle_for(k, m) + (b ? kPi : 0.0);
  if (theta >= 2.0 * kPi) theta -= 2.0 * kPi;
  return theta;
}

}  // namespace qsc
