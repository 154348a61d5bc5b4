#include "bcmono/extreal.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace bcmono {

std::string ExtReal::str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    // Shortest representation that parses back to the same double.
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v_);
        if (std::strtod(buf, nullptr) == v_) break;
    }
    return buf;
}

ExtReal ExtReal::parse(const std::string& s) {
    if (s == "inf" || s == "+inf") return pos_inf();
    if (s == "-inf") return neg_inf();
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || (end && *end != '\0'))
        throw ParseError("ExtReal: cannot parse '" + s + "'");
    return ExtReal(v);
}

ExtReal sup_over(std::span<const ExtReal> values) {
    ExtReal best = ExtReal::neg_inf();
    for (const auto& v : values)
        if (v > best) best = v;
    return best;
}

ExtReal inf_over(std::span<const ExtReal> values) {
    ExtReal best = ExtReal::pos_inf();
    for (const auto& v : values)
        if (v < best) best = v;
    return best;
}

}  // namespace bcmono
