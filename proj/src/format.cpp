#include "swapdist/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace swapdist {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, res.ptr);
}

std::string format_pvalue(double p, bool is_bound) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2g", p);
    std::string s(buf);
    if (is_bound) s.insert(s.begin(), '<');
    return s;
}

}  // namespace swapdist
