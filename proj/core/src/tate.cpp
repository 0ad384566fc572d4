#include "dyadic/tate.hpp"

#include <sstream>

namespace dyadic {

KodairaType KodairaType::In(long long n) {
    if (n < 1) throw internal_error("In needs n >= 1");
    return {Tag::In, n};
}

KodairaType KodairaType::IStarN(long long n) {
    if (n < 1) throw internal_error("IStarN needs n >= 1");
    return {Tag::IStarN, n};
}

std::string KodairaType::str() const {
    switch (tag) {
    case Tag::I0: return "I0";
    case Tag::In: return "I" + std::to_string(n);
    case Tag::II: return "II";
    case Tag::III: return "III";
    case Tag::IV: return "IV";
    case Tag::IStar0: return "I*0";
    case Tag::IStarN: return "I*" + std::to_string(n);
    case Tag::IVStar: return "IV*";
    case Tag::IIIStar: return "III*";
    case Tag::IIStar: return "II*";
    }
    return "?";
}

std::string kodaira_format(const KodairaType& t) { return t.str(); }

KodairaType KodairaType::parse(const std::string& s) {
    if (s == "II") return II();
    if (s == "III") return III();
    if (s == "IV") return IV();
    if (s == "II*") return IIStar();
    if (s == "III*") return IIIStar();
    if (s == "IV*") return IVStar();
    if (s.size() >= 3 && s[0] == 'I' && s[1] == '*') {
        long long n = std::stoll(s.substr(2));
        return n == 0 ? IStar0() : IStarN(n);
    }
    if (s.size() >= 2 && s[0] == 'I') {
        long long n = std::stoll(s.substr(1));
        return n == 0 ? I0() : In(n);
    }
    throw parse_error("unknown Kodaira symbol '" + s + "'");
}

namespace {

struct Runner {
    FieldCtx ctx;
    std::vector<std::string> trace;
    long long restarts = 0;

    explicit Runner(const FieldCtx& c) : ctx(c) {}

    Elem Z(long long n) const { return Elem::integer(ctx, n); }
    Elem P(long long n) const { return Elem::pi_pow(ctx, n); }
    Elem lift(const ResElem& r) const { return Elem::from_residue(ctx, r); }
    ResElem res_at(const Elem& x, long long depth) const {
        return residue(x * P(-depth));
    }

    void log(const std::string& s) { trace.push_back(s); }

    // v(x) < n, decided without demanding an exact valuation when the known
    // lower bound already settles it
    static bool v_less(const Elem& x, long long n) {
        if (valuation_lower_bound(x) >= n) return false;
        return valuation(x) < n;
    }

    WeierstrassEq integralize(WeierstrassEq E) {
        long long m = 0;
        static const int weight[5] = {1, 2, 3, 4, 6};
        for (int i = 0; i < 5; ++i) {
            const Elem& a = E.coeffs()[size_t(i)];
            if (zero_to_precision(a)) continue;
            Valuation v = valuation(a);
            if (v < 0) {
                long long need = (-v.value() + weight[i] - 1) / weight[i];
                m = std::max(m, need);
            }
        }
        if (m > 0) {
            log("scale: non-integral input, dilating by u = pi^-" + std::to_string(m));
            E = transform(E, P(-m), Z(0), Z(0), Z(0));
        }
        return E;
    }

    // Move the singular point of the reduced curve to (0, 0).
    WeierstrassEq move_singular_point(const WeierstrassEq& E) {
        ResElem a1 = residue(E.a1()), a2 = residue(E.a2()), a3 = residue(E.a3()),
                a4 = residue(E.a4()), a6 = residue(E.a6());
        ResElem x0 = ResElem::zero(ctx.residue_ctx());
        ResElem y0 = x0;
        if (!a1.is_zero()) {
            // F_y = a1 x + a3, F_x = a1 y + x^2 + a4 over the residue field
            x0 = res_mul(a3, res_inv(a1));
            y0 = res_mul(res_add(res_mul(x0, x0), a4), res_inv(a1));
        } else {
            if (!a3.is_zero())
                throw internal_error("v(delta)>0 with a1 = 0, a3 != 0 mod pi: no singular point");
            x0 = res_sqrt(a4);
            ResElem f = res_add(res_add(res_mul(res_mul(x0, x0), x0), res_mul(a2, res_mul(x0, x0))),
                                res_add(res_mul(a4, x0), a6));
            y0 = res_sqrt(f);
        }
        WeierstrassEq F = transform(E, Z(1), lift(x0), Z(0), lift(y0));
        if (!x0.is_zero() || !y0.is_zero())
            log("step2: singular point at (" + x0.str() + ", " + y0.str() + "), translating");
        if (!(valuation_lower_bound(F.a3()) >= 1) || !(valuation_lower_bound(F.a4()) >= 1) ||
            !(valuation_lower_bound(F.a6()) >= 1))
            throw internal_error("singular point translation failed");
        return F;
    }

    // Step 7 subprocedure: paper-style indexing, first quadratic at n = 4,
    // type I*_{n-3} on distinct roots.
    KodairaType istar_subprocedure(WeierstrassEq& E, long long v_delta) {
        long long n = 4;
        while (true) {
            if (n > v_delta + 2) throw internal_error("step 7 subprocedure exceeded v(delta)");
            if (n % 2 == 0) {
                // y^2 + (A3/pi^{n/2}) y - A6/pi^n
                ResElem c3 = res_at(E.a3(), n / 2);
                if (!c3.is_zero()) {
                    log("step7[n=" + std::to_string(n) + "]: distinct roots -> I*" +
                        std::to_string(n - 3));
                    return KodairaType::IStarN(n - 3);
                }
                ResElem rho = res_sqrt(res_at(E.a6(), n));
                if (!rho.is_zero()) {
                    E = transform(E, Z(1), Z(0), Z(0), lift(rho) * P(n / 2));
                    log("step7[n=" + std::to_string(n) + "]: repeated root " + rho.str() +
                        ", y-translation");
                    if (!(valuation_lower_bound(E.a6()) >= n + 1))
                        throw internal_error("y-translation did not raise v(a6)");
                }
            } else {
                // (A2/pi) x^2 + (A4/pi^{(n+1)/2}) x + A6/pi^n
                ResElem a = res_at(E.a2(), 1);
                if (a.is_zero()) throw internal_error("v(a2) != 1 inside step 7");
                ResElem b = res_at(E.a4(), (n + 1) / 2);
                if (!b.is_zero()) {
                    log("step7[n=" + std::to_string(n) + "]: distinct roots -> I*" +
                        std::to_string(n - 3));
                    return KodairaType::IStarN(n - 3);
                }
                ResElem rho = res_sqrt(res_mul(res_at(E.a6(), n), res_inv(a)));
                if (!rho.is_zero()) {
                    E = transform(E, Z(1), lift(rho) * P((n - 1) / 2), Z(0), Z(0));
                    log("step7[n=" + std::to_string(n) + "]: repeated root " + rho.str() +
                        ", x-translation");
                    if (!(valuation_lower_bound(E.a6()) >= n + 1))
                        throw internal_error("x-translation did not raise v(a6)");
                }
            }
            ++n;
        }
    }

    TateReport run(WeierstrassEq E) {
        E = integralize(E);
        int guard = 0;
        while (true) {
            if (++guard > 200) throw internal_error("tate loop failed to terminate");
            StdInvariants inv = invariants(E);
            if (zero_to_precision(inv.delta)) {
                if (inv.delta.exact()) throw invalid_curve("delta = 0: not an elliptic curve");
                throw precision_loss("delta vanishes to working precision");
            }
            long long vd = valuation(inv.delta).value();
            log("step1: v(delta) = " + std::to_string(vd));
            if (vd == 0)
                return TateReport{KodairaType::I0(), 0, E, restarts, trace};

            E = move_singular_point(E);
            inv = invariants(E);
            if (valuation(inv.b2) == 0) {
                log("step2: v(b2) = 0 -> I" + std::to_string(vd));
                return TateReport{KodairaType::In(vd), vd, E, restarts, trace};
            }

            if (v_less(E.a6(), 2)) {
                log("step3: pi^2 does not divide a6 -> II");
                return TateReport{KodairaType::II(), vd, E, restarts, trace};
            }
            if (v_less(inv.b8, 3)) {
                log("step4: pi^3 does not divide b8 -> III");
                return TateReport{KodairaType::III(), vd, E, restarts, trace};
            }
            if (v_less(inv.b6, 3)) {
                log("step5: pi^3 does not divide b6 -> IV");
                return TateReport{KodairaType::IV(), vd, E, restarts, trace};
            }

            // Normalize for step 6: kill a2 mod pi (a1 is already in pi O
            // because v(b2) > 0 forces a1 = 0 mod pi in residue char 2),
            // then raise v(a6) to >= 3 with a y-translation by tau pi.
            ResElem s = res_sqrt(residue(E.a2()));
            E = transform(E, Z(1), Z(0), lift(s), Z(0));
            ResElem tau = res_sqrt(res_at(E.a6(), 2));
            E = transform(E, Z(1), Z(0), Z(0), lift(tau) * P(1));
            if (!(valuation_lower_bound(E.a1()) >= 1) || !(valuation_lower_bound(E.a2()) >= 1) ||
                !(valuation_lower_bound(E.a3()) >= 2) || !(valuation_lower_bound(E.a4()) >= 2) ||
                !(valuation_lower_bound(E.a6()) >= 3))
                throw internal_error("step 6 entry normalization failed");

            // P(T) = T^3 + (a2/pi) T^2 + (a4/pi^2) T + a6/pi^3 over the
            // residue field; in characteristic 2 a repeated root must equal
            // sqrt of the linear coefficient.
            ResElem A = res_at(E.a2(), 1);
            ResElem B = res_at(E.a4(), 2);
            ResElem C = res_at(E.a6(), 3);
            ResElem theta = res_sqrt(B);
            ResElem p_theta = res_add(
                res_add(res_mul(res_mul(theta, theta), theta), res_mul(A, res_mul(theta, theta))),
                res_add(res_mul(B, theta), C));
            if (!p_theta.is_zero()) {
                log("step6: P(T) has distinct roots -> I*0");
                return TateReport{KodairaType::IStar0(), vd, E, restarts, trace};
            }
            bool triple = (A == theta) && (C == res_mul(res_mul(theta, theta), theta));
            if (!triple) {
                // double root theta, simple root A (sum of roots in char 2)
                if (!theta.is_zero()) {
                    E = transform(E, Z(1), lift(theta) * P(1), Z(0), Z(0));
                    log("step7: moving double root " + theta.str() + " to 0");
                }
                log("step6: P(T) has a double root; entering step 7 subprocedure");
                KodairaType t = istar_subprocedure(E, vd);
                return TateReport{t, vd, E, restarts, trace};
            }

            // triple root
            if (!theta.is_zero()) {
                E = transform(E, Z(1), lift(theta) * P(1), Z(0), Z(0));
                log("step8: moving triple root " + theta.str() + " to 0");
            }
            if (!(valuation_lower_bound(E.a2()) >= 2) || !(valuation_lower_bound(E.a4()) >= 3) ||
                !(valuation_lower_bound(E.a6()) >= 4))
                throw internal_error("triple-root normalization failed");
            // Y^2 + (a3/pi^2) Y - a6/pi^4
            ResElem c3 = res_at(E.a3(), 2);
            if (!c3.is_zero()) {
                log("step8: quadratic in y has distinct roots -> IV*");
                return TateReport{KodairaType::IVStar(), vd, E, restarts, trace};
            }
            ResElem rho = res_sqrt(res_at(E.a6(), 4));
            if (!rho.is_zero()) {
                E = transform(E, Z(1), Z(0), Z(0), lift(rho) * P(2));
                log("step9: repeated root " + rho.str() + ", y-translation");
            }
            if (!(valuation_lower_bound(E.a3()) >= 3) || !(valuation_lower_bound(E.a6()) >= 5))
                throw internal_error("step 9 normalization failed");
            if (v_less(E.a4(), 4)) {
                log("step9: pi^4 does not divide a4 -> III*");
                return TateReport{KodairaType::IIIStar(), vd, E, restarts, trace};
            }
            if (v_less(E.a6(), 6)) {
                log("step10: pi^6 does not divide a6 -> II*");
                return TateReport{KodairaType::IIStar(), vd, E, restarts, trace};
            }
            log("step11: rescaling by u = pi and restarting");
            E = transform(E, P(1), Z(0), Z(0), Z(0));
            ++restarts;
        }
    }
};

} // namespace

TateReport tate_run(const WeierstrassEq& E) {
    Runner r(E.ctx());
    return r.run(E);
}

} // namespace dyadic
