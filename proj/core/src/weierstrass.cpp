#include "dyadic/weierstrass.hpp"

#include <sstream>

#include "dyadic/parse.hpp"

namespace dyadic {

WeierstrassEq::WeierstrassEq(Elem a1, Elem a2, Elem a3, Elem a4, Elem a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    for (int i = 1; i < 5; ++i)
        if (!(a_[size_t(i)].ctx() == a_[0].ctx())) throw ctx_mismatch();
}

WeierstrassEq WeierstrassEq::from_coeffs(const FieldCtx& ctx, const std::array<Elem, 5>& a) {
    for (const auto& c : a)
        if (!(c.ctx() == ctx)) throw ctx_mismatch();
    return WeierstrassEq(a[0], a[1], a[2], a[3], a[4]);
}

std::string WeierstrassEq::str() const {
    std::ostringstream out;
    out << "[" << print_elem(a_[0]) << ", " << print_elem(a_[1]) << ", " << print_elem(a_[2])
        << ", " << print_elem(a_[3]) << ", " << print_elem(a_[4]) << "]";
    return out.str();
}

StdInvariants invariants(const WeierstrassEq& E) {
    const FieldCtx& ctx = E.ctx();
    auto Z = [&](long long n) { return Elem::integer(ctx, n); };
    const Elem &a1 = E.a1(), &a2 = E.a2(), &a3 = E.a3(), &a4 = E.a4(), &a6 = E.a6();
    StdInvariants s;
    s.b2 = a1 * a1 + Z(4) * a2;
    s.b4 = Z(2) * a4 + a1 * a3;
    s.b6 = a3 * a3 + Z(4) * a6;
    s.b8 = a1 * a1 * a6 + Z(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    s.c4 = s.b2 * s.b2 - Z(24) * s.b4;
    s.c6 = -(s.b2.pow(3)) + Z(36) * s.b2 * s.b4 - Z(216) * s.b6;
    s.delta = -(s.b2 * s.b2 * s.b8) - Z(8) * s.b4.pow(3) - Z(27) * s.b6 * s.b6 +
              Z(9) * s.b2 * s.b4 * s.b6;
    if (!zero_to_precision(s.delta)) s.j = s.c4.pow(3) / s.delta;
    return s;
}

Valuation j_valuation(const WeierstrassEq& E) {
    StdInvariants s = invariants(E);
    if (zero_to_precision(s.delta)) {
        if (s.delta.exact()) throw invalid_curve("delta = 0: not an elliptic curve");
        throw precision_loss("delta vanishes to working precision");
    }
    Valuation vd = valuation(s.delta);
    if (zero_to_precision(s.c4)) {
        if (s.c4.exact()) return Valuation::infinity(); // j = 0
        // c4 unknown below its horizon: j-valuation only bounded from below
        Valuation lo = valuation_lower_bound(s.c4) + valuation_lower_bound(s.c4) +
                       valuation_lower_bound(s.c4) - vd.value();
        throw precision_loss("v(j) >= " + lo.str() + " but c4 vanishes to precision");
    }
    Valuation vc4 = valuation(s.c4);
    if (vc4.is_infinite()) return Valuation::infinity();
    return Valuation(3 * vc4.value() - vd.value());
}

WeierstrassEq transform(const WeierstrassEq& E, const Elem& u, const Elem& r, const Elem& s,
                        const Elem& t) {
    const FieldCtx& ctx = E.ctx();
    auto Z = [&](long long n) { return Elem::integer(ctx, n); };
    if (u.exactly_zero()) throw division_by_zero("transform with u = 0");
    const Elem &a1 = E.a1(), &a2 = E.a2(), &a3 = E.a3(), &a4 = E.a4(), &a6 = E.a6();
    Elem u2 = u * u;
    Elem u3 = u2 * u;
    Elem a1n = (a1 + Z(2) * s) / u;
    Elem a2n = (a2 - s * a1 + Z(3) * r - s * s) / u2;
    Elem a3n = (a3 + r * a1 + Z(2) * t) / u3;
    Elem a4n = (a4 - s * a3 + Z(2) * r * a2 - (t + r * s) * a1 + Z(3) * r * r - Z(2) * s * t) /
               (u2 * u2);
    Elem a6n = (a6 + r * a4 + r * r * a2 + r.pow(3) - t * a3 - t * t - r * t * a1) / (u3 * u3);
    return WeierstrassEq(a1n, a2n, a3n, a4n, a6n);
}

} // namespace dyadic
