#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/errors.hpp"
#include "dyadic/residue.hpp"
#include "dyadic/valuation.hpp"

namespace dyadic {

using BigInt = boost::multiprecision::cpp_int;

enum class Regime { equichar, mixed };

// Descriptor of the base local field K.
//
// Two regimes:
//   equichar  K = F_{2^k}((pi)), v(2) = infinity (2 = 0).
//   mixed     K = W[pi]/(e(pi)) with W the unramified extension of Z_2 of
//             degree k and e an Eisenstein polynomial of degree e over Z,
//             so v(pi) = 1 and v(2) = e.
//
// The residue field F_{2^k} approximates the algebraically closed residue
// field of the theory; operations that need a larger field raise
// residue_field_too_small and the driver restarts at doubled degree.
//
// `precision` is the working precision: number of significant uniformizer
// digits (equichar) or 2-adic bits per coefficient (mixed).  Exact elements
// (integral Laurent polynomials in pi and everything reachable from them by
// ring operations and exact divisions) are not truncated at all.
class FieldCtx {
public:
    static FieldCtx make_equichar(unsigned residue_degree, long long precision = 64);
    // `eisenstein` holds the integer coefficients c_0..c_e of
    // e(z) = c_0 + c_1 z + ... + z^e (monic, c_e = 1); Eisenstein over W:
    // all c_i (i < e) even and v_2(c_0) = 1.
    static FieldCtx make_mixed(unsigned residue_degree, std::vector<BigInt> eisenstein,
                               long long precision = 64, std::string eisenstein_text = "");

    Regime regime() const;
    ResCtx residue_ctx() const;
    unsigned residue_degree() const;
    // Ramification degree e; 1 in a formally unramified mixed tower.  For
    // equichar contexts this is 1 (pi is the only uniformizer data).
    unsigned ram_degree() const;
    // v(2): e in mixed characteristic, infinity in equicharacteristic.
    Valuation v2() const;
    long long precision() const;
    const std::vector<BigInt>& eisenstein() const;
    const std::string& eisenstein_text() const;

    FieldCtx with_precision(long long precision) const;
    FieldCtx with_residue_degree(unsigned k) const;

    // Round-trippable through parse_field(): e.g. "equichar(k=2,prec=64)" or
    // "mixed(k=1,eis=\"z^3-2\",prec=64)".
    std::string descriptor() const;

    friend bool operator==(const FieldCtx& a, const FieldCtx& b);

    struct Data;
    const Data& data() const { return *d_; }

private:
    explicit FieldCtx(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

// Element of a FieldCtx.
//
// Representation:
//   equichar  finitely supported digit window over the residue field,
//             map exponent -> ResElem;
//   mixed     P(pi) / pi^dshift with P a polynomial of degree < e whose
//             coefficients are integer polynomials of degree < k in the
//             unramified generator g.
//
// Every element carries an exactness flag and, when inexact, an absolute
// precision horizon A: digits at pi-valuation >= A are unknown.  An inexact
// element whose known digits all vanish has indeterminate valuation and
// triggers precision_loss when its valuation is demanded.
class Elem {
public:
    Elem() = default;

    static Elem zero(const FieldCtx& ctx);
    static Elem one(const FieldCtx& ctx);
    static Elem integer(const FieldCtx& ctx, const BigInt& n);
    static Elem pi(const FieldCtx& ctx);
    static Elem pi_pow(const FieldCtx& ctx, long long n);
    static Elem from_residue(const FieldCtx& ctx, const ResElem& r);

    const FieldCtx& ctx() const { return ctx_; }
    bool exact() const { return exact_; }
    // Absolute precision horizon (meaningful only when !exact()).
    long long horizon() const { return horizon_; }

    bool known_zero() const;   // all stored digits vanish (exact => element is 0)
    bool exactly_zero() const { return exact_ && known_zero(); }

    friend Elem operator+(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a);
    friend Elem operator*(const Elem& a, const Elem& b);
    friend Elem operator/(const Elem& a, const Elem& b);

    Elem pow(unsigned long long n) const;

    // Structural equality of exact elements; inexact elements compare equal
    // when their difference vanishes to the shared horizon.
    friend bool operator==(const Elem& a, const Elem& b);

    // --- representation accessors (printing, serialization, oracles) ---
    // equichar: sorted (exponent, digit) pairs with nonzero digits.
    std::vector<std::pair<long long, ResElem>> equichar_digits() const;
    // mixed: (pi-power i - dshift, g-coefficients c_i) for nonzero c_i.
    std::vector<std::pair<long long, std::vector<BigInt>>> mixed_monomials() const;

    struct Rep;
    const Rep& rep() const;

private:
    friend struct ElemOps;
    FieldCtx ctx_ = FieldCtx::make_equichar(1);
    std::shared_ptr<const Rep> rep_;
    bool exact_ = true;
    long long horizon_ = 0;
};

// v(x); infinite only for exact zero.  Throws precision_loss when every
// stored digit of an inexact element vanishes.
Valuation valuation(const Elem& x);

// Lower bound on v(x) that never throws: min(valuation of known part, horizon).
Valuation valuation_lower_bound(const Elem& x);

// Image in the residue field; requires v(x) >= 0.
ResElem residue(const Elem& x);

// Square root of a unit (v(x) = 0).  Equichar: exists iff all odd digits of
// the known window vanish (the series is a square).  Mixed: Hensel ladder;
// the obstruction at depth 2 v(2) is an Artin-Schreier equation over the
// residue field, so the result may request residue-field growth.
Elem unit_sqrt(const Elem& x);

// True when x vanishes identically to its precision (exact zero, or inexact
// with empty known window).
bool zero_to_precision(const Elem& x);

} // namespace dyadic
