#pragma once

#include <array>
#include <optional>
#include <string>

#include "dyadic/local_field.hpp"

namespace dyadic {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a FieldCtx.
// Coefficients need not be integral; Tate's algorithm rescales as needed.
class WeierstrassEq {
public:
    WeierstrassEq(Elem a1, Elem a2, Elem a3, Elem a4, Elem a6);
    static WeierstrassEq from_coeffs(const FieldCtx& ctx, const std::array<Elem, 5>& a);

    const FieldCtx& ctx() const { return a_[0].ctx(); }
    const Elem& a1() const { return a_[0]; }
    const Elem& a2() const { return a_[1]; }
    const Elem& a3() const { return a_[2]; }
    const Elem& a4() const { return a_[3]; }
    const Elem& a6() const { return a_[4]; }
    const std::array<Elem, 5>& coeffs() const { return a_; }

    std::string str() const;

private:
    std::array<Elem, 5> a_;
};

struct StdInvariants {
    Elem b2, b4, b6, b8, c4, c6, delta;
    std::optional<Elem> j; // defined when delta != 0
};

StdInvariants invariants(const WeierstrassEq& E);

// v(j) as a Valuation, computed as 3 v(c4) - v(delta) without forming the
// quotient; infinite exactly when j = 0.  Throws invalid_curve on delta = 0.
Valuation j_valuation(const WeierstrassEq& E);

// The standard change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
// delta' = u^-12 delta and j is unchanged.
WeierstrassEq transform(const WeierstrassEq& E, const Elem& u, const Elem& r, const Elem& s,
                        const Elem& t);

} // namespace dyadic
