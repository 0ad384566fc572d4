#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dyadic/errors.hpp"

namespace dyadic {

// Exact arithmetic in F_{2^k}, polynomial-basis representation over F_2.
//
// The residue field of every local field in this library is some F_{2^k};
// it stands in for the algebraically closed residue field of the theory.
// A computation that needs a root outside the current field reports the
// degree that would suffice (see ASOutcome) and the caller restarts at the
// doubled degree.
//
// One fixed modulus per supported degree, so every run is reproducible
// bit for bit.  Supported degrees: 1, 2, 3, 4, 6, 8, 12, 16.
class ResCtx {
public:
    static ResCtx of_degree(unsigned k);
    static bool supported_degree(unsigned k);

    unsigned degree() const { return k_; }
    // Modulus bit i is the coefficient of x^i; bit k is set (monic).
    std::uint32_t modulus_bits() const { return mod_; }

    friend bool operator==(const ResCtx& a, const ResCtx& b) {
        return a.k_ == b.k_ && a.mod_ == b.mod_;
    }

private:
    ResCtx(unsigned k, std::uint32_t mod) : k_(k), mod_(mod) {}
    unsigned k_ = 1;
    std::uint32_t mod_ = 0x3;
};

// Returned by res_artin_schreier when z^2 + z = c has no root in the current
// field; the equation always has one over F_{2^(2k)}.
struct Unsolvable {
    unsigned required_degree;
};

class ResElem;
using ASOutcome = std::variant<ResElem, Unsolvable>;

class ResElem {
public:
    ResElem() : ctx_(ResCtx::of_degree(1)), bits_(0) {}
    ResElem(ResCtx ctx, std::uint32_t bits);

    static ResElem zero(ResCtx ctx) { return ResElem(ctx, 0); }
    static ResElem one(ResCtx ctx) { return ResElem(ctx, 1); }
    // The class of x, i.e. the generator symbol `g`.
    static ResElem gen(ResCtx ctx);

    const ResCtx& ctx() const { return ctx_; }
    std::uint32_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }
    bool is_one() const { return bits_ == 1; }

    friend bool operator==(const ResElem& a, const ResElem& b) {
        return a.ctx_ == b.ctx_ && a.bits_ == b.bits_;
    }

    std::string str() const;

private:
    ResCtx ctx_;
    std::uint32_t bits_;
};

ResElem res_add(const ResElem& a, const ResElem& b);
ResElem res_mul(const ResElem& a, const ResElem& b);
ResElem res_inv(const ResElem& a);
ResElem res_pow(const ResElem& a, std::uint64_t e);

// Frobenius is bijective, so every element has a unique square root,
// namely a^(2^(k-1)).
ResElem res_sqrt(const ResElem& a);

// Absolute trace to F_2.
ResElem res_trace(const ResElem& a);

// Root of z^2 + z + c = 0, when the trace of c vanishes; the root with the
// lexicographically smaller bit vector of the pair {z, z+1} is returned.
ASOutcome res_artin_schreier(const ResElem& c);

// Parses the polynomial-in-g grammar used by str(), e.g. "g^2+g+1".
ResElem parse_residue(ResCtx ctx, const std::string& text);

// Exhaustive irreducibility check over F_2; used by the self-tests.
bool poly_irreducible_f2(std::uint32_t poly, unsigned degree);

} // namespace dyadic
