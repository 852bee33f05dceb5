#include "qsc/format.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace qsc {

namespace {

std::string to_chars_string(double v, bool fixed_precision) {
  char buf[64];
  const std::to_chars_result res =
      fixed_precision
          ? std::to_chars(buf, buf + sizeof buf, v,
                          std::chars_format::general, 17)
          : std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{})
    throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_probability(double v) { return to_chars_string(v, true); }

std::string format_number(double v) { return to_chars_string(v, false); }

const char* encoding_name(EncodingKind encoding) {
  return encoding == EncodingKind::Phase ? "phase" : "polarization";
}

EncodingKind parse_encoding(const std::string& name) {
  if (name == "phase") return EncodingKind::Phase;
  if (name == "polarization") return EncodingKind::Polarization;
  throw std::invalid_argument("encoding must be 'phase' or 'polarization'");
}

}  // namespace qsc
