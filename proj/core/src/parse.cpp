#include "dyadic/parse.hpp"

#include <cctype>
#include <sstream>

namespace dyadic {

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw parse_error(std::string("expected '") + c + "' at offset " + std::to_string(i) +
                              " in '" + s + "'");
    }
    bool eat_word(const std::string& w) {
        skip_ws();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool done() {
        skip_ws();
        return i == s.size();
    }
};

BigInt parse_bigint(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
    size_t digits_start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == digits_start) throw parse_error("expected integer at offset " + std::to_string(start));
    return BigInt(c.s.substr(start, c.i - start));
}

long long parse_exponent(Cursor& c) {
    BigInt e = parse_bigint(c);
    if (e > 1'000'000 || e < -1'000'000) throw parse_error("exponent out of range");
    return e.convert_to<long long>();
}

class ElemParser {
public:
    ElemParser(const FieldCtx& ctx, Cursor& c) : ctx_(ctx), c_(c) {}

    Elem expr() {
        bool neg = c_.eat('-');
        Elem acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (c_.eat('+')) acc = acc + term();
            else if (c_.eat('-')) acc = acc - term();
            else return acc;
        }
    }

private:
    Elem term() {
        Elem acc = factor();
        while (c_.eat('*')) acc = acc * factor();
        return acc;
    }

    Elem factor() {
        Elem b = base();
        if (c_.eat('^')) {
            long long e = parse_exponent(c_);
            if (e >= 0) return b.pow(static_cast<unsigned long long>(e));
            return Elem::one(ctx_) / b.pow(static_cast<unsigned long long>(-e));
        }
        return b;
    }

    Elem base() {
        char p = c_.peek();
        if (p == '(') {
            c_.expect('(');
            Elem inner = expr();
            c_.expect(')');
            return inner;
        }
        if (c_.eat_word("pi")) return Elem::pi(ctx_);
        if (p == 'g') {
            ++c_.i;
            return Elem::from_residue(ctx_, ResElem::gen(ctx_.residue_ctx()));
        }
        if (std::isdigit(static_cast<unsigned char>(p)))
            return Elem::integer(ctx_, parse_bigint(c_));
        throw parse_error("unexpected character '" + std::string(1, p) + "' at offset " +
                          std::to_string(c_.i) + " in '" + c_.s + "'");
    }

    const FieldCtx& ctx_;
    Cursor& c_;
};

std::string print_wpoly(const std::vector<BigInt>& c) {
    // polynomial in g; parenthesized by the caller when needed
    std::ostringstream out;
    bool first = true;
    for (size_t j = c.size(); j-- > 0;) {
        if (c[j] == 0) continue;
        BigInt v = c[j];
        if (!first) {
            out << (v < 0 ? "-" : "+");
            if (v < 0) v = -v;
        }
        if (j == 0) {
            out << v;
        } else {
            if (v == -1) out << "-";
            else if (v != 1) out << v << "*";
            out << "g";
            if (j > 1) out << "^" << j;
        }
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

bool wpoly_is_simple(const std::vector<BigInt>& c) {
    int nonzero = 0;
    for (const auto& v : c)
        if (v != 0) ++nonzero;
    return nonzero <= 1;
}

} // namespace

Elem parse_elem(const FieldCtx& ctx, const std::string& text) {
    Cursor c{text};
    ElemParser p(ctx, c);
    Elem r = p.expr();
    if (!c.done())
        throw parse_error("trailing characters at offset " + std::to_string(c.i) + " in '" + text + "'");
    return r;
}

std::string print_elem(const Elem& x) {
    std::ostringstream out;
    bool first = true;
    auto emit_pi = [&](long long e) {
        if (e == 0) return;
        out << "*pi";
        if (e != 1) out << "^" << e;
    };
    if (x.ctx().regime() == Regime::equichar) {
        for (const auto& [e, d] : x.equichar_digits()) {
            if (!first) out << " + ";
            std::string ds = d.str();
            if (e == 0) {
                out << ds;
            } else {
                bool simple = ds.find('+') == std::string::npos;
                if (d.is_one()) {
                    out << "pi";
                    if (e != 1) out << "^" << e;
                } else {
                    out << (simple ? ds : "(" + ds + ")");
                    emit_pi(e);
                }
            }
            first = false;
        }
    } else {
        for (const auto& [e, c] : x.mixed_monomials()) {
            std::string cs = print_wpoly(c);
            if (!first) {
                if (cs[0] == '-') {
                    out << " - ";
                    cs = cs.substr(1);
                } else {
                    out << " + ";
                }
            }
            if (e == 0) {
                out << (wpoly_is_simple(c) ? cs : "(" + cs + ")");
            } else if (cs == "1") {
                out << "pi";
                if (e != 1) out << "^" << e;
            } else if (cs == "-1") {
                out << "-pi";
                if (e != 1) out << "^" << e;
            } else {
                out << (wpoly_is_simple(c) ? cs : "(" + cs + ")");
                emit_pi(e);
            }
            first = false;
        }
    }
    if (first) out << "0";
    if (!x.exact()) out << " + O(pi^" << x.horizon() << ")";
    return out.str();
}

namespace {

std::vector<BigInt> parse_z_poly(const std::string& text) {
    // monic polynomial in z with integer coefficients, e.g. "z^3-2" or "z^2-2*z+2"
    Cursor c{text};
    std::vector<BigInt> coeffs;
    auto bump = [&](size_t deg, const BigInt& v) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, BigInt(0));
        coeffs[deg] += v;
    };
    bool lead_neg = c.eat('-');
    bool first = true;
    while (true) {
        BigInt sign = 1;
        if (!first) {
            if (c.eat('+')) sign = 1;
            else if (c.eat('-')) sign = -1;
            else break;
        } else if (lead_neg) {
            sign = -1;
        }
        first = false;
        BigInt coef = 1;
        bool saw_coef = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coef = parse_bigint(c);
            saw_coef = true;
        }
        bool star = saw_coef && c.eat('*');
        size_t deg = 0;
        if (c.eat_word("z")) {
            deg = 1;
            if (c.eat('^')) {
                long long e = parse_exponent(c);
                if (e < 1) throw parse_error("bad exponent in Eisenstein polynomial");
                deg = size_t(e);
            }
        } else if (star || !saw_coef) {
            throw parse_error("expected term in Eisenstein polynomial '" + text + "'");
        }
        bump(deg, sign * coef);
        if (c.done()) break;
    }
    if (!c.done()) throw parse_error("trailing characters in Eisenstein polynomial '" + text + "'");
    if (coeffs.size() < 2) throw parse_error("Eisenstein polynomial must mention z");
    return coeffs;
}

} // namespace

FieldCtx parse_field(const std::string& text) {
    Cursor c{text};
    bool equi = c.eat_word("equichar");
    if (!equi && !c.eat_word("mixed"))
        throw parse_error("field descriptor must start with 'equichar' or 'mixed'");
    c.expect('(');
    unsigned k = 0;
    long long prec = 64;
    std::string eis_text;
    bool have_k = false;
    while (true) {
        if (c.eat_word("k")) {
            c.expect('=');
            BigInt kk = parse_bigint(c);
            k = kk.convert_to<unsigned>();
            have_k = true;
        } else if (c.eat_word("prec")) {
            c.expect('=');
            prec = parse_exponent(c);
        } else if (c.eat_word("eis")) {
            c.expect('=');
            c.expect('"');
            size_t start = c.i;
            while (c.i < c.s.size() && c.s[c.i] != '"') ++c.i;
            if (c.i == c.s.size()) throw parse_error("unterminated eis=\"...\"");
            eis_text = c.s.substr(start, c.i - start);
            ++c.i;
        } else {
            throw parse_error("unknown key in field descriptor '" + text + "'");
        }
        if (!c.eat(',')) break;
    }
    c.expect(')');
    if (!c.done()) throw parse_error("trailing characters in field descriptor");
    if (!have_k) throw parse_error("field descriptor needs k=<int>");
    if (equi) {
        if (!eis_text.empty()) throw parse_error("equichar descriptor takes no eis=");
        return FieldCtx::make_equichar(k, prec);
    }
    if (eis_text.empty()) throw parse_error("mixed descriptor needs eis=\"...\"");
    return FieldCtx::make_mixed(k, parse_z_poly(eis_text), prec, eis_text);
}

std::array<Elem, 5> parse_curve_coeffs(const FieldCtx& ctx, const std::string& text) {
    Cursor c{text};
    c.expect('[');
    std::array<Elem, 5> a;
    for (int i = 0; i < 5; ++i) {
        size_t depth = 0;
        c.skip_ws();
        size_t start = c.i;
        while (c.i < c.s.size()) {
            char ch = c.s[c.i];
            if (ch == '(') ++depth;
            else if (ch == ')') {
                if (depth == 0) break;
                --depth;
            } else if ((ch == ',' || ch == ']') && depth == 0) {
                break;
            }
            ++c.i;
        }
        a[size_t(i)] = parse_elem(ctx, c.s.substr(start, c.i - start));
        if (i < 4) c.expect(',');
    }
    c.expect(']');
    if (!c.done()) throw parse_error("trailing characters after curve coefficients");
    return a;
}

} // namespace dyadic
