#include "dyadic/supersingular.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace dyadic {

Prediction predicted_type(JValuation vj, RamificationBreak br) {
    long long s = br.s;
    if (!(vj > 0)) throw inconsistent_input("predicted_type needs v(j) > 0");
    if (vj.is_finite() && vj.value() <= 4 * s - 4) {
        long long v = vj.value();
        if (v % 12 != 0)
            throw inconsistent_input("case A with v(j) = " + std::to_string(v) +
                                     " not divisible by 12");
        return Prediction{KodairaType::IStarN(4 * s - v), std::nullopt, 'A'};
    }
    int f = int((2 * s + 3) % 6);
    KodairaType t = f == 1 ? KodairaType::II() : f == 3 ? KodairaType::IStar0()
                                                        : KodairaType::IIStar();
    return Prediction{t, f, 'B'};
}

namespace {

bool v_positive(const Elem& x) {
    if (valuation_lower_bound(x) >= 1) return true;
    return valuation(x) >= 1;
}

} // namespace

bool is_good_supersingular(const WeierstrassEq& E) {
    TateReport r = tate_run(E);
    if (!(r.kodaira == KodairaType::I0())) return false;
    StdInvariants inv = invariants(r.minimal_model);
    bool criterion = v_positive(inv.b2) && valuation(inv.b6) == 0;
    bool via_j = j_valuation(r.minimal_model) > 0;
    if (criterion != via_j)
        throw internal_error("supersingular criteria disagree: v(b2)/v(b6) vs v(j)");
    return criterion;
}

WeierstrassEq construct_supersingular_with_vj(const FieldCtx& ctx,
                                              std::optional<long long> u) {
    Elem zero = Elem::zero(ctx);
    Elem one = Elem::one(ctx);
    if (!u.has_value() || *u == 0)
        return WeierstrassEq(zero, zero, one, zero, zero);
    if (*u < 0) throw invalid_u("u must be positive");
    if (ctx.regime() == Regime::mixed && Valuation(*u) >= ctx.v2())
        throw invalid_u("mixed characteristic needs u < v(2) = " +
                        std::to_string(ctx.ram_degree()));
    return WeierstrassEq(Elem::pi_pow(ctx, *u), zero, one, zero, zero);
}

std::vector<long long> allowed_istar_multiples(long long v2) {
    if (v2 < 2) throw error("allowed_istar_multiples needs v(2) >= 2");
    std::vector<long long> out;
    for (long long m = 1; m <= 2 * v2 - 3; ++m)
        if (m != 2 * v2 - 5) out.push_back(m);
    return out;
}

bool AllowedTypes::contains(const KodairaType& t) const {
    for (const auto& b : basics)
        if (b == t) return true;
    if (t.tag == KodairaType::Tag::IStarN && t.n % 4 == 0) {
        long long m = t.n / 4;
        if (every_multiple) return m >= 1;
        return std::find(istar_multiples.begin(), istar_multiples.end(), m) !=
               istar_multiples.end();
    }
    return false;
}

std::vector<KodairaType> AllowedTypes::as_set() const {
    if (every_multiple) throw error("as_set() on an unbounded type family");
    std::vector<KodairaType> out = basics;
    for (long long m : istar_multiples) out.push_back(KodairaType::IStarN(4 * m));
    return out;
}

AllowedTypes allowed_types(Valuation v2) {
    AllowedTypes out;
    auto add_basic = [&](const KodairaType& t) {
        for (const auto& b : out.basics)
            if (b == t) return;
        out.basics.push_back(t);
    };
    if (v2.is_infinite()) {
        // equicharacteristic: all odd breaks occur, so all three residues of
        // 2s+3 mod 6, and every I*_{4m}
        add_basic(KodairaType::II());
        add_basic(KodairaType::IStar0());
        add_basic(KodairaType::IIStar());
        out.every_multiple = true;
        return out;
    }
    long long e = v2.value();
    for (long long s = 1; s <= 2 * e; ++s) {
        bool admissible = (s % 2 == 1 && s <= 2 * e - 1) || s == 2 * e;
        if (!admissible) continue;
        int f = int((2 * s + 3) % 6);
        add_basic(f == 1 ? KodairaType::II() : f == 3 ? KodairaType::IStar0()
                                                      : KodairaType::IIStar());
    }
    if (e >= 2) out.istar_multiples = allowed_istar_multiples(e);
    return out;
}

std::string VerificationRecord::to_json() const {
    nlohmann::json j;
    j["field"] = field;
    j["ext"] = ext;
    j["s"] = s;
    j["vj"] = vj.is_finite() ? nlohmann::json(vj.value()) : nlohmann::json("inf");
    j["applicable"] = applicable;
    j["predicted"] = predicted ? nlohmann::json(predicted->str()) : nlohmann::json(nullptr);
    j["computed"] = computed ? nlohmann::json(computed->str()) : nlohmann::json(nullptr);
    j["match"] = match;
    return j.dump();
}

VerificationRecord verify(const WeierstrassEq& E, const ExtensionSpec& ext) {
    VerificationRecord rec;
    rec.field = E.ctx().descriptor();
    rec.ext = ext.str();
    rec.s = compute_s(ext).s;
    rec.vj = j_valuation(E);

    WeierstrassEq back = twist(E, ext);
    if (!is_good_supersingular(back)) {
        rec.applicable = false;
        return rec;
    }
    rec.applicable = true;
    if (!(rec.vj > 0))
        throw internal_error("good supersingular twist but v(j) <= 0");

    Prediction pred = predicted_type(rec.vj, RamificationBreak{rec.s});
    TateReport rep = tate_run(E);
    rec.predicted = pred.kodaira;
    rec.computed = rep.kodaira;
    rec.match = (pred.kodaira == rep.kodaira);
    if (rep.kodaira.tag == KodairaType::Tag::IStarN) {
        // I*_n forces n = 4s - v(j)
        bool ok = rec.vj.is_finite() && rep.kodaira.n == 4 * rec.s - rec.vj.value();
        rec.match = rec.match && ok;
    }
    return rec;
}

ScanGrid default_grid(const FieldCtx& ctx) {
    ScanGrid g{ctx, {}, {}};
    if (ctx.regime() == Regime::equichar) {
        for (long long s = 1; s <= 11; s += 2) g.s_values.push_back(s);
        for (long long u = 1; u <= 6; ++u) g.u_values.push_back(u);
    } else {
        long long e = (long long)ctx.ram_degree();
        for (long long s = 1; s <= 2 * e - 1; s += 2) g.s_values.push_back(s);
        g.s_values.push_back(2 * e);
        for (long long u = 1; u < e; ++u) g.u_values.push_back(u);
    }
    g.u_values.push_back(std::nullopt); // j = 0
    return g;
}

std::vector<VerificationRecord> run_sweep(const ScanGrid& grid, bool parallel) {
    struct Point {
        long long s;
        std::optional<long long> u;
    };
    std::vector<Point> points;
    for (long long s : grid.s_values)
        for (const auto& u : grid.u_values) points.push_back({s, u});

    auto eval = [&](const Point& p) {
        ExtensionSpec ext = construct_extension_with_s(grid.ctx, p.s);
        WeierstrassEq base = construct_supersingular_with_vj(grid.ctx, p.u);
        WeierstrassEq E = twist(base, ext);
        return verify(E, ext);
    };

    std::vector<VerificationRecord> out(points.size());
    if (!parallel || points.size() < 4) {
        for (size_t i = 0; i < points.size(); ++i) out[i] = eval(points[i]);
        return out;
    }
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= points.size()) return;
                out[i] = eval(points[i]);
            }
        }));
    }
    for (auto& f : futs) f.get();
    return out;
}

} // namespace dyadic
