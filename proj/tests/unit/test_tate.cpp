#include "doctest.h"

#include <random>

#include "dyadic/parse.hpp"
#include "dyadic/quadratic_ext.hpp"
#include "dyadic/tate.hpp"

using namespace dyadic;

namespace {

WeierstrassEq curve(const FieldCtx& ctx, const std::string& text) {
    return WeierstrassEq::from_coeffs(ctx, parse_curve_coeffs(ctx, text));
}

} // namespace

TEST_CASE("kodaira formatting and parsing") {
    CHECK(kodaira_format(KodairaType::IStarN(4)) == "I*4");
    CHECK(kodaira_format(KodairaType::IIStar()) == "II*");
    CHECK(kodaira_format(KodairaType::In(1)) == "I1");
    CHECK(kodaira_format(KodairaType::I0()) == "I0");
    CHECK(kodaira_format(KodairaType::IStar0()) == "I*0");
    for (const char* s : {"I0", "I7", "II", "III", "IV", "I*0", "I*12", "IV*", "III*", "II*"})
        CHECK(KodairaType::parse(s).str() == s);
    CHECK_THROWS_AS(KodairaType::parse("V"), parse_error);
}

TEST_CASE("good reduction") {
    for (const FieldCtx& ctx : {FieldCtx::make_equichar(1), parse_field("mixed(k=1,eis=\"z^3-2\")")}) {
        auto r = tate_run(curve(ctx, "[0,0,1,0,0]"));
        CHECK(r.kodaira == KodairaType::I0());
        CHECK(r.v_delta_min == 0);
        CHECK(r.restarts == 0);
    }
}

TEST_CASE("multiplicative reduction") {
    auto eq = FieldCtx::make_equichar(1);
    auto r = tate_run(curve(eq, "[1,0,0,0,pi]"));
    CHECK(r.kodaira == KodairaType::In(1));

    auto m1 = parse_field("mixed(k=1,eis=\"z-2\")");
    auto r2 = tate_run(curve(m1, "[1,0,0,0,2]"));
    CHECK(r2.kodaira == KodairaType::In(1)); // v(delta) = v(-1730) = 1

    auto r3 = tate_run(curve(eq, "[1,0,0,0,pi^3]"));
    CHECK(r3.kodaira == KodairaType::In(3));
    CHECK(r3.v_delta_min == 3);
}

TEST_CASE("small additive types") {
    auto m1 = parse_field("mixed(k=1,eis=\"z-2\")");
    // y^2 = x^3 + pi x: b8 = -pi^2, so step 4 stops with III
    CHECK(tate_run(curve(m1, "[0,0,0,2,0]")).kodaira == KodairaType::III());
    // y^2 + 2y = x^3: v(b6) = 2, step 5 stops with IV
    CHECK(tate_run(curve(m1, "[0,0,2,0,0]")).kodaira == KodairaType::IV());
    // equichar: y^2 + pi y = x^3 + pi x
    auto eq = FieldCtx::make_equichar(1);
    CHECK(tate_run(curve(eq, "[0,0,pi,pi,0]")).kodaira == KodairaType::III());
    // y^2 = x^3 + pi: type II
    CHECK(tate_run(curve(m1, "[0,0,0,0,2]")).kodaira == KodairaType::II());
}

TEST_CASE("paper quadratic-twist examples") {
    // equichar k=1: twist of y^2+y=x^3 by the break-1 extension is II*
    auto eq = FieldCtx::make_equichar(1);
    auto E0 = curve(eq, "[0,0,1,0,0]");
    auto ext = ExtensionSpec::artin_schreier(Elem::pi_pow(eq, -1));
    auto tw = twist(E0, ext);
    auto r = tate_run(tw);
    CHECK(r.kodaira == KodairaType::IIStar());
    CHECK(r.v_delta_min == 12); // started at v = 0, dilated once to integralize

    // mixed z^3-2, D = pi: E1 = y^2 = x^3 + D^3 has type I*0
    auto m3 = parse_field("mixed(k=1,eis=\"z^3-2\")");
    auto r1 = tate_run(curve(m3, "[0,0,0,0,pi^3]"));
    CHECK(r1.kodaira == KodairaType::IStar0());

    // E2 = y^2 = x^3 - 15 D^2 x + 22 D^3 has type I*12 = I*_{4v(2)}
    auto r2 = tate_run(curve(m3, "[0,0,0,-15*pi^2,22*pi^3]"));
    CHECK(r2.kodaira == KodairaType::IStarN(12));
}

TEST_CASE("step 11 restarts reach the minimal model") {
    auto m1 = parse_field("mixed(k=1,eis=\"z-2\")");
    auto E = curve(m1, "[0,0,1,0,0]");
    // blow the model up by u = pi^-2 twice over: v(delta) grows by 24
    auto big = transform(E, Elem::pi_pow(m1, -2), Elem::zero(m1), Elem::zero(m1), Elem::zero(m1));
    auto r = tate_run(big);
    CHECK(r.kodaira == KodairaType::I0());
    CHECK(r.v_delta_min == 0);
    CHECK(r.restarts == 2);
}

TEST_CASE("tate is invariant under coordinate changes") {
    std::mt19937 rng(314);
    std::uniform_int_distribution<long long> upow(-1, 1);
    std::uniform_int_distribution<int> pick(0, 4);
    for (const FieldCtx& ctx :
         {FieldCtx::make_equichar(1), parse_field("mixed(k=1,eis=\"z^2-2\")")}) {
        std::vector<WeierstrassEq> bases;
        bases.push_back(curve(ctx, "[0,0,1,0,0]"));
        bases.push_back(curve(ctx, "[pi,0,1,0,0]"));
        bases.push_back(curve(ctx, "[1,0,0,0,pi]"));
        bases.push_back(curve(ctx, "[0,0,pi,pi,0]"));
        bases.push_back(curve(ctx, "[0,pi,1,0,pi^2]"));
        auto rnd = [&](std::mt19937& g) {
            std::uniform_int_distribution<int> nterms(0, 2);
            std::uniform_int_distribution<int> expo(0, 3);
            Elem acc = Elem::zero(ctx);
            for (int t = 0; t < nterms(g); ++t) acc = acc + Elem::pi_pow(ctx, expo(g));
            return acc;
        };
        for (int trial = 0; trial < 20; ++trial) {
            const auto& E = bases[size_t(pick(rng))];
            auto base = tate_run(E);
            Elem u = Elem::pi_pow(ctx, upow(rng));
            auto F = transform(E, u, rnd(rng), rnd(rng), rnd(rng));
            auto got = tate_run(F);
            CHECK(got.kodaira == base.kodaira);
            CHECK(got.v_delta_min == base.v_delta_min);
        }
    }
}

TEST_CASE("v_delta_min is v(delta) of the input mod 12") {
    auto m2 = parse_field("mixed(k=1,eis=\"z^2-2\")");
    for (const char* c : {"[0,0,1,0,0]", "[pi,0,1,0,0]", "[0,0,0,-15*pi^2,22*pi^3]"}) {
        auto E = curve(m2, c);
        auto r = tate_run(E);
        long long v_in = valuation(invariants(E).delta).value();
        CHECK((v_in - r.v_delta_min) % 12 == 0);
        CHECK(valuation(invariants(r.minimal_model).delta) == r.v_delta_min);
    }
}

TEST_CASE("rejects delta = 0") {
    auto eq = FieldCtx::make_equichar(1);
    CHECK_THROWS_AS(tate_run(curve(eq, "[0,0,0,0,0]")), invalid_curve);
}

TEST_CASE("trace is populated") {
    auto m3 = parse_field("mixed(k=1,eis=\"z^3-2\")");
    auto r = tate_run(curve(m3, "[0,0,0,-15*pi^2,22*pi^3]"));
    CHECK(r.trace.size() >= 3);
    bool saw_step7 = false;
    for (const auto& line : r.trace)
        if (line.find("step7") != std::string::npos) saw_step7 = true;
    CHECK(saw_step7);
}
