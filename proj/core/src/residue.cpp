#include "dyadic/residue.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace dyadic {

namespace {

struct ModEntry {
    unsigned k;
    std::uint32_t mod;
};

// One modulus per degree.  x^k + ... , bit i = coefficient of x^i.
constexpr std::array<ModEntry, 8> kModuli = {{
    {1, 0x3},      // x + 1
    {2, 0x7},      // x^2 + x + 1
    {3, 0xb},      // x^3 + x + 1
    {4, 0x13},     // x^4 + x + 1
    {6, 0x5b},     // x^6 + x^4 + x^3 + x + 1
    {8, 0x11d},    // x^8 + x^4 + x^3 + x^2 + 1
    {12, 0x10eb},  // x^12 + x^7 + x^6 + x^5 + x^3 + x + 1
    {16, 0x1002d}, // x^16 + x^5 + x^3 + x^2 + 1
}};

std::uint32_t mul_bits(std::uint32_t a, std::uint32_t b, std::uint32_t mod, unsigned k) {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & (1u << k)) a ^= mod;
    }
    return r;
}

void require_same_ctx(const ResElem& a, const ResElem& b) {
    if (!(a.ctx() == b.ctx())) throw ctx_mismatch();
}

} // namespace

bool ResCtx::supported_degree(unsigned k) {
    for (const auto& e : kModuli)
        if (e.k == k) return true;
    return false;
}

ResCtx ResCtx::of_degree(unsigned k) {
    for (const auto& e : kModuli)
        if (e.k == k) return ResCtx(e.k, e.mod);
    throw error("unsupported residue degree " + std::to_string(k) +
                " (supported: 1,2,3,4,6,8,12,16)");
}

ResElem::ResElem(ResCtx ctx, std::uint32_t bits) : ctx_(ctx), bits_(bits) {
    if (bits_ >> ctx_.degree())
        throw error("residue element out of range for degree " + std::to_string(ctx_.degree()));
}

ResElem ResElem::gen(ResCtx ctx) {
    if (ctx.degree() == 1)
        throw error("F_2 has no generator symbol g");
    return ResElem(ctx, 2);
}

ResElem res_add(const ResElem& a, const ResElem& b) {
    require_same_ctx(a, b);
    return ResElem(a.ctx(), a.bits() ^ b.bits());
}

ResElem res_mul(const ResElem& a, const ResElem& b) {
    require_same_ctx(a, b);
    return ResElem(a.ctx(), mul_bits(a.bits(), b.bits(), a.ctx().modulus_bits(), a.ctx().degree()));
}

ResElem res_pow(const ResElem& a, std::uint64_t e) {
    ResElem r = ResElem::one(a.ctx());
    ResElem base = a;
    while (e) {
        if (e & 1) r = res_mul(r, base);
        base = res_mul(base, base);
        e >>= 1;
    }
    return r;
}

ResElem res_inv(const ResElem& a) {
    if (a.is_zero()) throw division_by_zero("res_inv(0)");
    unsigned k = a.ctx().degree();
    // a^(2^k - 2)
    return res_pow(a, (std::uint64_t(1) << k) - 2);
}

ResElem res_sqrt(const ResElem& a) {
    unsigned k = a.ctx().degree();
    ResElem r = a;
    for (unsigned i = 0; i + 1 < k; ++i) r = res_mul(r, r);
    return r;
}

ResElem res_trace(const ResElem& a) {
    unsigned k = a.ctx().degree();
    ResElem acc = a;
    ResElem f = a;
    for (unsigned i = 1; i < k; ++i) {
        f = res_mul(f, f);
        acc = res_add(acc, f);
    }
    return acc;
}

ASOutcome res_artin_schreier(const ResElem& c) {
    unsigned k = c.ctx().degree();
    if (!res_trace(c).is_zero())
        return Unsolvable{2 * k};
    // z |-> z^2 + z is F_2-linear; solve the k x k system by elimination.
    // Column j is L(x^j) = x^(2j) mod f + x^j.
    std::vector<std::uint32_t> col(k);
    for (unsigned j = 0; j < k; ++j) {
        ResElem xj(c.ctx(), std::uint32_t(1) << j);
        col[j] = res_add(res_mul(xj, xj), xj).bits();
    }
    // Gaussian elimination on the augmented system col * z = c.
    std::vector<std::uint32_t> rows(k, 0); // row i: bits 0..k-1 coefficients, bit k rhs
    for (unsigned i = 0; i < k; ++i) {
        std::uint32_t r = 0;
        for (unsigned j = 0; j < k; ++j)
            if ((col[j] >> i) & 1) r |= (1u << j);
        if ((c.bits() >> i) & 1) r |= (1u << k);
        rows[i] = r;
    }
    std::vector<int> pivot_of_col(k, -1);
    unsigned rank = 0;
    for (unsigned j = 0; j < k && rank < k; ++j) {
        unsigned p = rank;
        while (p < k && !((rows[p] >> j) & 1)) ++p;
        if (p == k) continue;
        std::swap(rows[rank], rows[p]);
        for (unsigned i = 0; i < k; ++i)
            if (i != rank && ((rows[i] >> j) & 1)) rows[i] ^= rows[rank];
        pivot_of_col[j] = int(rank);
        ++rank;
    }
    std::uint32_t z = 0;
    for (unsigned j = 0; j < k; ++j) {
        if (pivot_of_col[j] >= 0 && ((rows[pivot_of_col[j]] >> k) & 1))
            z |= (1u << j);
    }
    ResElem root(c.ctx(), z);
    if (!(res_add(res_mul(root, root), root) == c))
        throw internal_error("artin-schreier solve produced a non-root");
    ResElem other = res_add(root, ResElem::one(c.ctx()));
    return root.bits() <= other.bits() ? root : other;
}

std::string ResElem::str() const {
    if (bits_ == 0) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = int(ctx_.degree()) - 1; i >= 0; --i) {
        if (!((bits_ >> i) & 1)) continue;
        if (!first) out << "+";
        if (i == 0) out << "1";
        else if (i == 1) out << "g";
        else out << "g^" << i;
        first = false;
    }
    return out.str();
}

ResElem parse_residue(ResCtx ctx, const std::string& text) {
    // tiny grammar: term ('+' term)*, term := '1' | '0' | 'g' ('^' int)?
    ResElem acc = ResElem::zero(ctx);
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i == text.size()) throw parse_error("empty residue expression");
    while (true) {
        skip_ws();
        if (i >= text.size()) throw parse_error("expected residue term in '" + text + "'");
        if (text[i] == '0') {
            ++i;
        } else if (text[i] == '1') {
            acc = res_add(acc, ResElem::one(ctx));
            ++i;
        } else if (text[i] == 'g') {
            ++i;
            unsigned e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    throw parse_error("expected exponent after '^' in '" + text + "'");
                e = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    e = e * 10 + unsigned(text[i++] - '0');
            }
            acc = res_add(acc, res_pow(ResElem::gen(ctx), e));
        } else {
            throw parse_error(std::string("unexpected character '") + text[i] + "' in residue expression");
        }
        skip_ws();
        if (i == text.size()) return acc;
        if (text[i] != '+') throw parse_error("expected '+' in residue expression '" + text + "'");
        ++i;
    }
}

bool poly_irreducible_f2(std::uint32_t poly, unsigned degree) {
    if (degree == 0) return false;
    if (degree == 1) return true;
    // trial division by every polynomial of degree 1..degree/2
    for (unsigned d = 1; d <= degree / 2; ++d) {
        for (std::uint32_t q = (1u << d); q < (2u << d); ++q) {
            // remainder of poly mod q
            std::uint32_t r = poly;
            for (int shift = int(degree) - int(d); shift >= 0; --shift) {
                if ((r >> (d + unsigned(shift))) & 1) r ^= (q << shift);
            }
            if (r == 0) return false;
        }
    }
    return true;
}

} // namespace dyadic
