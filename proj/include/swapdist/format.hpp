#pragma once

#include <string>

namespace swapdist {

// Shortest round-trip decimal text for a double (std::to_chars).
std::string format_double(double v);

// Two significant digits, the table convention for p-values; a leading "<"
// marks upper bounds.
std::string format_pvalue(double p, bool is_bound);

}  // namespace swapdist
