#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

// Key expansion for the cipher: a short seed K drives a Fibonacci LFSR whose
// bit stream is packed into running-key indices k in [0, M), and each index
// selects a ciphering angle
//
//   phi_k = pi * (k/M + (1 - (-1)^k)/2)
//
// i.e. even k fall on [0, pi) and odd k are pushed onto the opposite
// half-circle.  A data bit b shifts the angle by a further b*pi, so the 2M
// possible modulation angles tile {j*pi/M : j = 0..2M-1} with neighboring
// angles carrying opposite bits for odd M.
//
// The LFSR is a deliberately minimal keystream generator, not a
// cryptographically strong one; it stands in for whatever stream cipher
// expands K into K'.

namespace qsc {

// Fibonacci LFSR over GF(2).  Bit i of `reg` (LSB = bit 0) holds stage
// length - i, so the output is always bit 0 and tap position p maps to bit
// length - p.  Tap positions use the conventional 1..L numbering where L is
// the characteristic-polynomial degree; position L (the output stage) must be
// present or the recurrence would not have full degree.
struct LfsrState {
  std::uint64_t reg = 1;
  int length = 1;
  std::uint64_t tap_mask = 1;  // bit (length - p) set for each tap position p
};

// Validate and assemble an LfsrState.  Requirements: 1 <= length <= 64, taps
// non-empty and within [1, length] including `length` itself, and seed_bits
// nonzero and representable in `length` bits.  Throws std::invalid_argument.
LfsrState make_lfsr(int length, std::span<const int> taps,
                    std::uint64_t seed_bits);

// Advance one step: output the low register bit, XOR the tap bits into the
// feedback, shift down, insert feedback at the top.  Throws
// std::invalid_argument if the register is all-zero (the fixed point a valid
// construction can never reach).
std::pair<int, LfsrState> lfsr_next(const LfsrState& state);

// Pack the bit stream into exactly `count` key indices in [0, m), consuming
// log2(m) bits per index, most significant bit first.  m must be a power of
// two (m = 1 yields all-zero indices and consumes no bits).  Throws
// std::invalid_argument otherwise.
std::vector<int> expand_key(LfsrState seed, std::int64_t count, int m);

// A keystream bound to a fixed M: the LFSR plus a count of indices emitted.
class KeyStream {
 public:
  KeyStream(LfsrState lfsr, int m);

  // Next running-key index in [0, m).
  int next();

  const LfsrState& lfsr() const { return lfsr_; }
  int m() const { return m_; }
  std::uint64_t emitted() const { return emitted_; }

 private:
  LfsrState lfsr_;
  int m_;
  int bits_per_index_;
  std::uint64_t emitted_ = 0;
};

// Ciphering angle phi_k for key index k in [0, m), reduced into [0, 2*pi).
double angle_for(int k, int m);

// Full modulation angle (phi_k + b*pi) mod 2*pi for data bit b in {0, 1}.
double total_angle(int k, int b, int m);

}  // namespace qsc
