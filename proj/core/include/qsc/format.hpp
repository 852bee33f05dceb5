#pragma once

#include <string>

#include "qsc/states.hpp"

// Locale-independent text formatting shared by the report writers and the
// CLI.  All numeric output goes through std::to_chars: '.' decimal point
// everywhere, no grouping, deterministic digits.

namespace qsc {

// 17 significant digits (general format) — enough to round-trip any double;
// used for probabilities.
std::string format_probability(double v);

// Shortest representation that round-trips; used for parameters.
std::string format_number(double v);

const char* encoding_name(EncodingKind encoding);

// Parses "phase" / "polarization"; throws std::invalid_argument otherwise.
EncodingKind parse_encoding(const std::string& name);

}  // namespace qsc
