// Extended-real arithmetic: finite reals together with +inf and -inf.
//
// Indicator functions and suprema over unbounded families evaluate to honest
// infinities instead of sentinel magic numbers.  The one algebraically
// undefined sum, (+inf) + (-inf), raises; it is never swallowed.  All
// comparisons are exact -- tolerance logic belongs to the verification
// suites, not here.
#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>
#include <string>

#include "bcmono/types.hpp"

namespace bcmono {

class ExtReal {
public:
    constexpr ExtReal() : v_(0.0) {}

    // NaN is rejected: no meaningful order or arithmetic extends to it.
    ExtReal(double v) : v_(v) {
        if (std::isnan(v)) throw BcmonoError("ExtReal cannot hold NaN");
    }

    static ExtReal pos_inf() { return ExtReal(Tag{}, std::numeric_limits<double>::infinity()); }
    static ExtReal neg_inf() { return ExtReal(Tag{}, -std::numeric_limits<double>::infinity()); }

    bool is_finite() const { return std::isfinite(v_); }
    bool is_pos_inf() const { return v_ == std::numeric_limits<double>::infinity(); }
    bool is_neg_inf() const { return v_ == -std::numeric_limits<double>::infinity(); }

    // Finite value; throws on +-inf.
    double finite() const {
        if (!is_finite()) throw BcmonoError("ExtReal: finite() on infinite value");
        return v_;
    }

    // Raw IEEE double, infinities included.  The IEEE total order on
    // non-NaN doubles is exactly the extended-real total order.
    double raw() const { return v_; }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw IndeterminateSum();
        return ExtReal(Tag{}, a.v_ + b.v_);
    }

    friend ExtReal operator-(ExtReal a) { return ExtReal(Tag{}, -a.v_); }
    friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

    // Scalar multiplication.  lambda != 0 scales (negative lambda flips the
    // infinities); 0 * (+-inf) raises.
    ExtReal scale(double lambda) const {
        if (std::isnan(lambda)) throw BcmonoError("ExtReal::scale by NaN");
        if (lambda == 0.0) {
            if (!is_finite()) throw IndeterminateProduct();
            return ExtReal(0.0);
        }
        return ExtReal(Tag{}, lambda * v_);
    }

    friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }
    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }

    // "inf", "-inf" or a round-trippable decimal literal.
    std::string str() const;

    // Inverse of str(); accepts "inf", "-inf", "+inf" and decimal literals.
    static ExtReal parse(const std::string& s);

private:
    struct Tag {};
    ExtReal(Tag, double v) : v_(v) {}
    double v_;
};

// Maximum under the total order; the empty supremum is -inf by convention.
ExtReal sup_over(std::span<const ExtReal> values);

ExtReal inf_over(std::span<const ExtReal> values);

}  // namespace bcmono
