#pragma once

#include <string>

#include "dyadic/local_field.hpp"
#include "dyadic/weierstrass.hpp"

namespace dyadic {

// A quadratic extension L/K in one of three presentations:
//   artin_schreier  z^2 + z + D, equichar only, v(D) < 0 and odd after
//                   normalization (the constructor normalizes);
//   sqrt_d          L = K(sqrt(D)), mixed only, v(D) in {0,1}; a unit D must
//                   be a non-square (its square defect halts at an odd depth
//                   below 2v(2));
//   eisenstein2     z^2 + a z + b with v(a) >= 1, v(b) = 1, mixed only.
class ExtensionSpec {
public:
    enum class Kind { artin_schreier, sqrt_d, eisenstein2 };

    static ExtensionSpec artin_schreier(Elem D);
    static ExtensionSpec sqrt_d(Elem D);
    static ExtensionSpec eisenstein2(Elem a, Elem b);

    Kind kind() const { return kind_; }
    const FieldCtx& ctx() const { return a_.ctx(); }
    const Elem& D() const;
    const Elem& a() const;
    const Elem& b() const;

    // "as(D=...)", "sqrt(...)", "eis(a=...,b=...)"
    std::string str() const;

private:
    ExtensionSpec(Kind k, Elem a, Elem b) : kind_(k), a_(std::move(a)), b_(std::move(b)) {}
    Kind kind_;
    Elem a_, b_; // artin_schreier/sqrt_d use a_ as D
};

struct RamificationBreak {
    long long s;
};

// Artin-Schreier normalization: replaces D by D' defining the same extension
// with v(D') negative and odd, via z -> z + lift(sqrt(unit)) / pi^(v/2) at
// every even stage.  Raises reducible_extension when the iteration certifies
// a root in K.
Elem normalize_as(const Elem& D);

// The single ramification break s_{L/K} of the quadratic extension:
//   artin_schreier  s = -v(D)
//   sqrt_d, v(D)=1  s = 2 v(2)
//   sqrt_d, v(D)=0  via the Eisenstein presentation
//   eisenstein2     s = 2 v(a) - 1 when v(a) <= v(2), else 2 v(2)
RamificationBreak compute_s(const ExtensionSpec& ext);

// Valuation of the different of O_L/O_K, computed independently of
// compute_s: evaluate g'(pi_L) for the minimal polynomial g of a constructed
// uniformizer pi_L inside the two-dimensional algebra K[z]/(g), where the
// valuation of x + y*theta is exact because the two basis contributions have
// opposite parity.  Always equals compute_s(ext).s + 1.
long long different_oracle(const ExtensionSpec& ext);

// Square defect of a unit: walks approximations beta with v(x - beta^2)
// strictly increasing through even depths; returns the odd halting depth
// w < 2v(2) (x is a non-square with s_{K(sqrt x)/K} = 2v(2) - w), or 2v(2)
// when x is a square over the algebraically closed residue field.  Mixed
// contexts only.  If approx_out is given it receives the final beta.
long long square_defect(const Elem& x, Elem* approx_out = nullptr);

// Lemma-style conversion of sqrt_d with a non-square unit D into an
// Eisenstein presentation z^2 + a z + b with a^2 - 4b = D c^2; verifies the
// square relation and v(c) = v(a) rather than assuming them.
ExtensionSpec to_eisenstein(const ExtensionSpec& ext);

// Bounds on the break (mixed: s odd with 1 <= s <= 2v(2)-1, or s = 2v(2);
// equichar: s odd >= 1).
bool admissible_break(const FieldCtx& ctx, long long s);

// Realizes any admissible break: sqrt(pi) for s = 2v(2),
// z^2 + pi^((s+1)/2) z + pi for odd mixed s, z^2 + z + pi^-s equichar.
ExtensionSpec construct_extension_with_s(const FieldCtx& ctx, long long s);

// Quadratic twist of E by L/K, as an equation over K (not necessarily
// minimal).  Equichar requires an artin_schreier spec; mixed twists by the
// scalar D (sqrt_d) or a^2 - 4b (eisenstein2; the square factor c^2 only
// changes the model).
WeierstrassEq twist(const WeierstrassEq& E, const ExtensionSpec& ext);

// Grammar: as(D=<elem>) | sqrt(<elem>) | eis(a=<elem>,b=<elem>)
ExtensionSpec parse_extension(const FieldCtx& ctx, const std::string& text);

} // namespace dyadic
