#include "dyadic/quadratic_ext.hpp"

#include <sstream>

#include "dyadic/parse.hpp"

namespace dyadic {

namespace {

void require_mixed(const FieldCtx& ctx, const char* what) {
    if (ctx.regime() != Regime::mixed)
        throw regime_mismatch(std::string(what) + " requires a mixed-characteristic field");
}

void require_equichar(const FieldCtx& ctx, const char* what) {
    if (ctx.regime() != Regime::equichar)
        throw regime_mismatch(std::string(what) + " requires an equicharacteristic field");
}

} // namespace

Elem normalize_as(const Elem& D0) {
    require_equichar(D0.ctx(), "artin_schreier");
    const FieldCtx& ctx = D0.ctx();
    Elem D = D0;
    while (true) {
        if (zero_to_precision(D)) throw reducible_extension();
        Valuation v = valuation(D);
        if (v >= 0) throw reducible_extension();
        long long r = v.value();
        if (r % 2 != 0) return D;
        long long s = -r / 2;
        ResElem lead = residue(D * Elem::pi_pow(ctx, 2 * s));
        Elem c = Elem::from_residue(ctx, res_sqrt(lead)) * Elem::pi_pow(ctx, -s);
        D = D + c * c + c; // char 2: the substitution z -> z + c shifts D by c^2 + c
    }
}

ExtensionSpec ExtensionSpec::artin_schreier(Elem D) {
    Elem Dn = normalize_as(D);
    return ExtensionSpec(Kind::artin_schreier, std::move(Dn), Elem::zero(D.ctx()));
}

ExtensionSpec ExtensionSpec::sqrt_d(Elem D) {
    require_mixed(D.ctx(), "sqrt_d");
    if (zero_to_precision(D)) throw error("sqrt_d of 0");
    long long v = valuation(D).value();
    // normalize the square class so that v(D) lands in {0,1}
    long long shift = -2 * (v >= 0 ? v / 2 : (v - 1) / 2);
    Elem Dn = D * Elem::pi_pow(D.ctx(), shift);
    if (valuation(Dn) == 0) {
        long long w = square_defect(Dn);
        if (w >= 2 * (long long)D.ctx().ram_degree())
            throw not_a_nonsquare_unit("sqrt_d unit argument is a square (defect reaches 2v(2))");
    }
    return ExtensionSpec(Kind::sqrt_d, std::move(Dn), Elem::zero(D.ctx()));
}

ExtensionSpec ExtensionSpec::eisenstein2(Elem a, Elem b) {
    require_mixed(a.ctx(), "eisenstein2");
    if (!(a.ctx() == b.ctx())) throw ctx_mismatch();
    if (!(valuation_lower_bound(a) >= 1))
        throw error("eisenstein2 needs v(a) >= 1, got " + valuation(a).str());
    if (!(valuation(b) == 1))
        throw error("eisenstein2 needs v(b) = 1, got " + valuation(b).str());
    return ExtensionSpec(Kind::eisenstein2, std::move(a), std::move(b));
}

const Elem& ExtensionSpec::D() const {
    if (kind_ == Kind::eisenstein2) throw internal_error("D() on eisenstein2 spec");
    return a_;
}
const Elem& ExtensionSpec::a() const {
    if (kind_ != Kind::eisenstein2) throw internal_error("a() on non-eisenstein2 spec");
    return a_;
}
const Elem& ExtensionSpec::b() const {
    if (kind_ != Kind::eisenstein2) throw internal_error("b() on non-eisenstein2 spec");
    return b_;
}

std::string ExtensionSpec::str() const {
    std::ostringstream out;
    switch (kind_) {
    case Kind::artin_schreier: out << "as(D=" << print_elem(a_) << ")"; break;
    case Kind::sqrt_d: out << "sqrt(" << print_elem(a_) << ")"; break;
    case Kind::eisenstein2:
        out << "eis(a=" << print_elem(a_) << ",b=" << print_elem(b_) << ")";
        break;
    }
    return out.str();
}

long long square_defect(const Elem& x, Elem* approx_out) {
    require_mixed(x.ctx(), "square_defect");
    const FieldCtx& ctx = x.ctx();
    if (!(valuation(x) == 0)) throw error("square_defect needs a unit");
    long long crit = 2 * (long long)ctx.ram_degree();
    Elem beta = Elem::from_residue(ctx, res_sqrt(residue(x)));
    while (true) {
        Elem r = x - beta * beta;
        if (zero_to_precision(r)) {
            if (approx_out) *approx_out = beta;
            return crit; // exact square (or square to precision)
        }
        long long w = valuation(r).value();
        if (w >= crit || w % 2 != 0) {
            if (approx_out) *approx_out = beta;
            return std::min(w, crit);
        }
        ResElem d = res_sqrt(residue(r * Elem::pi_pow(ctx, -w)));
        beta = beta + Elem::from_residue(ctx, d) * Elem::pi_pow(ctx, w / 2);
    }
}

ExtensionSpec to_eisenstein(const ExtensionSpec& ext) {
    if (ext.kind() != ExtensionSpec::Kind::sqrt_d)
        throw error("to_eisenstein takes a sqrt_d presentation");
    const Elem& D = ext.D();
    const FieldCtx& ctx = D.ctx();
    if (!(valuation(D) == 0))
        throw not_a_nonsquare_unit("to_eisenstein needs v(D) = 0");
    long long v2 = (long long)ctx.ram_degree();
    Elem beta = Elem::zero(ctx);
    long long w = square_defect(D, &beta);
    if (w >= 2 * v2)
        throw not_a_nonsquare_unit("argument is a square over the closed residue field");
    // D/beta^2 = 1 + pi^w u; zeta = (sqrt(D/beta^2) - 1) pi^-(w-1)/2 satisfies
    // zeta^2 + 2 pi^-(w-1)/2 zeta - pi u = 0, an Eisenstein polynomial.
    Elem u = (D - beta * beta) / (beta * beta * Elem::pi_pow(ctx, w));
    Elem a = Elem::integer(ctx, 2) * Elem::pi_pow(ctx, -(w - 1) / 2);
    Elem b = -(Elem::pi(ctx) * u);
    ExtensionSpec eis = ExtensionSpec::eisenstein2(a, b);
    // verify a^2 - 4b = D c^2 with v(c) = v(a) instead of assuming it
    Elem ratio = (a * a - Elem::integer(ctx, 4) * b) / D;
    long long vr = valuation(ratio).value();
    if (vr % 2 != 0 || vr / 2 != valuation(a).value())
        throw internal_error("to_eisenstein: v(a^2-4b) - v(D) != 2v(a)");
    Elem unit_part = ratio * Elem::pi_pow(ctx, -vr);
    if (square_defect(unit_part) < 2 * v2)
        throw internal_error("to_eisenstein: (a^2-4b)/D is not a square");
    return eis;
}

RamificationBreak compute_s(const ExtensionSpec& ext) {
    const FieldCtx& ctx = ext.ctx();
    switch (ext.kind()) {
    case ExtensionSpec::Kind::artin_schreier:
        return RamificationBreak{-valuation(ext.D()).value()};
    case ExtensionSpec::Kind::sqrt_d: {
        long long v = valuation(ext.D()).value();
        if (v == 1) return RamificationBreak{2 * (long long)ctx.ram_degree()};
        return compute_s(to_eisenstein(ext));
    }
    case ExtensionSpec::Kind::eisenstein2: {
        long long va = valuation(ext.a()).value();
        long long v2 = (long long)ctx.ram_degree();
        return RamificationBreak{va <= v2 ? 2 * va - 1 : 2 * v2};
    }
    }
    throw internal_error("unreachable");
}

namespace {

// Element x + y*theta of K[z]/(z^2 + A z + B).
struct QA {
    Elem x, y;
};

QA qa_mul(const QA& p, const QA& q, const Elem& A, const Elem& B) {
    // theta^2 = -A theta - B
    return QA{p.x * q.x - B * (p.y * q.y), p.x * q.y + p.y * q.x - A * (p.y * q.y)};
}

// v_L on the basis {1, theta} where v_L(theta) = theta_val (odd): the two
// contributions have different parity, so the minimum is exact.
long long qa_valuation(const QA& p, long long theta_val) {
    Valuation vx = valuation_lower_bound(p.x);
    Valuation vy = valuation_lower_bound(p.y);
    Valuation a = vx.is_infinite() ? vx : Valuation(2 * vx.value());
    Valuation b = vy.is_infinite() ? vy : Valuation(2 * vy.value() + theta_val);
    Valuation m = min(a, b);
    if (m.is_infinite()) throw internal_error("qa_valuation of zero");
    return m.value();
}

} // namespace

long long different_oracle(const ExtensionSpec& ext) {
    const FieldCtx& ctx = ext.ctx();
    auto Z = [&](long long n) { return Elem::integer(ctx, n); };
    switch (ext.kind()) {
    case ExtensionSpec::Kind::eisenstein2: {
        // pi_L = theta, g = z^2 + a z + b, g'(pi_L) = 2 theta + a
        QA gp{ext.a(), Z(2)};
        return qa_valuation(gp, 1);
    }
    case ExtensionSpec::Kind::sqrt_d: {
        if (valuation(ext.D()) == 0) return different_oracle(to_eisenstein(ext));
        // pi_L = theta with theta^2 = D: g = z^2 - D, g'(pi_L) = 2 theta
        QA gp{Elem::zero(ctx), Z(2)};
        return qa_valuation(gp, 1);
    }
    case ExtensionSpec::Kind::artin_schreier: {
        // alpha^2 + alpha + D = 0, v_L(alpha) = -r; pi_L = pi^m alpha^n with
        // 2m - rn = 1 and n odd; n = 1, m = (r+1)/2 works.
        const Elem& D = ext.D();
        long long r = -valuation(D).value();
        long long m = (r + 1) / 2;
        Elem A = Elem::one(ctx); // z^2 + z + D: theta^2 = -theta - D
        Elem B = D;
        QA alpha{Elem::zero(ctx), Elem::one(ctx)};
        QA piL{Elem::zero(ctx), Elem::pi_pow(ctx, m)}; // pi^m * alpha
        // minimal polynomial of pi_L from trace and norm: for w = x + y alpha,
        // sigma(w) = (x + y) + y alpha (char 2), so Tr = y, Nm = x^2 + xy + D y^2
        Elem tr = piL.y + Z(2) * piL.x;                   // 2x + y; char 2 drops 2x
        Elem nm = piL.x * piL.x + piL.x * piL.y + B * (piL.y * piL.y);
        // sanity: pi_L is a root of z^2 - tr z + nm
        QA val = qa_mul(piL, piL, A, B);
        val.x = val.x - tr * piL.x + nm;
        val.y = val.y - tr * piL.y;
        if (!zero_to_precision(val.x) || !zero_to_precision(val.y))
            throw internal_error("constructed uniformizer does not satisfy its minimal polynomial");
        // g'(pi_L) = 2 pi_L - tr
        QA gp{-tr, Z(2) * Elem::pi_pow(ctx, m)};
        return qa_valuation(gp, -r);
    }
    }
    throw internal_error("unreachable");
}

bool admissible_break(const FieldCtx& ctx, long long s) {
    if (s < 1) return false;
    if (ctx.regime() == Regime::equichar) return s % 2 == 1;
    long long v2 = (long long)ctx.ram_degree();
    if (s % 2 == 1) return s <= 2 * v2 - 1;
    return s == 2 * v2;
}

ExtensionSpec construct_extension_with_s(const FieldCtx& ctx, long long s) {
    if (!admissible_break(ctx, s))
        throw invalid_break("no quadratic extension has break " + std::to_string(s) +
                            " over " + ctx.descriptor());
    if (ctx.regime() == Regime::equichar)
        return ExtensionSpec::artin_schreier(Elem::pi_pow(ctx, -s));
    long long v2 = (long long)ctx.ram_degree();
    if (s == 2 * v2) return ExtensionSpec::sqrt_d(Elem::pi(ctx));
    return ExtensionSpec::eisenstein2(Elem::pi_pow(ctx, (s + 1) / 2), Elem::pi(ctx));
}

WeierstrassEq twist(const WeierstrassEq& E, const ExtensionSpec& ext) {
    const FieldCtx& ctx = E.ctx();
    if (!(ctx == ext.ctx())) throw ctx_mismatch();
    auto Z = [&](long long n) { return Elem::integer(ctx, n); };
    if (ctx.regime() == Regime::equichar) {
        if (ext.kind() != ExtensionSpec::Kind::artin_schreier)
            throw regime_mismatch("equicharacteristic twists need an artin_schreier extension");
        const Elem& D = ext.D();
        return WeierstrassEq(E.a1(), E.a2() + D * E.a1() * E.a1(), E.a3(), E.a4(),
                             E.a6() + D * E.a3() * E.a3());
    }
    Elem D = Elem::zero(ctx);
    switch (ext.kind()) {
    case ExtensionSpec::Kind::artin_schreier:
        throw regime_mismatch("artin_schreier twists need an equicharacteristic field");
    case ExtensionSpec::Kind::sqrt_d: D = ext.D(); break;
    case ExtensionSpec::Kind::eisenstein2:
        D = ext.a() * ext.a() - Z(4) * ext.b();
        break;
    }
    StdInvariants s = invariants(E);
    return WeierstrassEq(Elem::zero(ctx), D * s.b2, Elem::zero(ctx), Z(8) * D * D * s.b4,
                         Z(16) * D.pow(3) * s.b6);
}

ExtensionSpec parse_extension(const FieldCtx& ctx, const std::string& text) {
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        if (a == std::string::npos) return std::string();
        return s.substr(a, b - a + 1);
    };
    std::string t = strip(text);
    auto body = [&](const std::string& head) -> std::string {
        if (t.size() < head.size() + 2 || t.compare(0, head.size(), head) != 0) return "";
        if (t[head.size()] != '(' || t.back() != ')') return "";
        return t.substr(head.size() + 1, t.size() - head.size() - 2);
    };
    if (std::string inner = body("as"); !inner.empty()) {
        std::string s = strip(inner);
        if (s.compare(0, 2, "D=") != 0) throw parse_error("as(...) takes D=<element>");
        return ExtensionSpec::artin_schreier(parse_elem(ctx, s.substr(2)));
    }
    if (std::string inner = body("sqrt"); !inner.empty())
        return ExtensionSpec::sqrt_d(parse_elem(ctx, inner));
    if (std::string inner = body("eis"); !inner.empty()) {
        // split on the top-level comma
        int depth = 0;
        size_t comma = std::string::npos;
        for (size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '(') ++depth;
            else if (inner[i] == ')') --depth;
            else if (inner[i] == ',' && depth == 0) { comma = i; break; }
        }
        if (comma == std::string::npos) throw parse_error("eis(...) takes a=<element>,b=<element>");
        std::string sa = strip(inner.substr(0, comma));
        std::string sb = strip(inner.substr(comma + 1));
        if (sa.compare(0, 2, "a=") != 0 || sb.compare(0, 2, "b=") != 0)
            throw parse_error("eis(...) takes a=<element>,b=<element>");
        return ExtensionSpec::eisenstein2(parse_elem(ctx, sa.substr(2)), parse_elem(ctx, sb.substr(2)));
    }
    throw parse_error("extension must be as(D=...), sqrt(...) or eis(a=...,b=...)");
}

} // namespace dyadic
