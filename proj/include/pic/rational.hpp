#pragma once

#include <gmpxx.h>

#include <string>

namespace pic {

/// Exact rational scalar used for all rates and LP values.
using Rat = mpq_class;

/// Parses "p/q" or "p" (optional leading '-'). The result is canonical:
/// reduced, denominator positive. Throws std::invalid_argument on junk
/// or a zero denominator.
Rat rat_from_string(const std::string& text);

/// Renders a rational as "p/q", or "p" when the denominator is 1.
std::string rat_to_string(const Rat& value);

inline double rat_to_double(const Rat& value) { return value.get_d(); }

}  // namespace pic
