#include "doctest.h"

#include <random>

#include "dyadic/parse.hpp"
#include "dyadic/quadratic_ext.hpp"

using namespace dyadic;

namespace {

FieldCtx equi(unsigned k = 1) { return FieldCtx::make_equichar(k); }
FieldCtx mix(long long v2, unsigned k = 1) {
    std::string eis = v2 == 1 ? "z-2" : "z^" + std::to_string(v2) + "-2";
    return parse_field("mixed(k=" + std::to_string(k) + ",eis=\"" + eis + "\")");
}

} // namespace

TEST_CASE("normalize_as") {
    auto eq = equi(1);
    Elem D = Elem::pi_pow(eq, -3);
    CHECK(normalize_as(D) == D); // already odd

    // D = pi^-2: substitution with b = 1 cancels the even term exactly
    Elem D2 = Elem::pi_pow(eq, -2);
    Elem N2 = normalize_as(D2);
    CHECK(valuation(N2) == -1);
    CHECK(N2 == Elem::pi_pow(eq, -1));

    auto eq2 = equi(2);
    Elem g = Elem::from_residue(eq2, ResElem::gen(ResCtx::of_degree(2)));
    Elem D3 = g * Elem::pi_pow(eq2, -2) + Elem::pi_pow(eq2, -1);
    Elem N3 = normalize_as(D3);
    CHECK(valuation(N3) == -1);
    // b = sqrt(g) = g^2 = g+1 kills the pi^-2 term and leaves (1 + sqrt(g)) pi^-1 = g pi^-1
    CHECK(N3 == g * Elem::pi_pow(eq2, -1));

    CHECK_THROWS_AS(normalize_as(Elem::one(eq)), reducible_extension);
    CHECK_THROWS_AS(ExtensionSpec::artin_schreier(Elem::pi_pow(eq, 2)), reducible_extension);
}

TEST_CASE("compute_s on the three presentations") {
    auto eq = equi(1);
    CHECK(compute_s(ExtensionSpec::artin_schreier(Elem::pi_pow(eq, -3))).s == 3);

    auto m3 = mix(3);
    CHECK(compute_s(ExtensionSpec::sqrt_d(Elem::pi(m3))).s == 6);

    auto m2 = mix(2);
    CHECK(compute_s(ExtensionSpec::eisenstein2(Elem::pi_pow(m2, 2), Elem::pi(m2))).s == 3);
}

TEST_CASE("different oracle equals s + 1") {
    auto m2 = mix(2);
    auto e = ExtensionSpec::eisenstein2(Elem::pi_pow(m2, 2), Elem::pi(m2));
    CHECK(different_oracle(e) == 4); // min(2v(2)+1, 2v(a)) = min(9, 4)

    auto m1 = mix(1);
    CHECK(different_oracle(ExtensionSpec::sqrt_d(Elem::pi(m1))) == 3); // v_L(2 pi_L) = 2*1+1

    auto eq = equi(1);
    CHECK(different_oracle(ExtensionSpec::artin_schreier(Elem::pi_pow(eq, -1))) == 2);
}

TEST_CASE("to_eisenstein") {
    auto m1 = mix(1);
    // v(2)=1: D = -1 is a non-square unit (odd defect 1)
    Elem D = -Elem::one(m1);
    auto e = to_eisenstein(ExtensionSpec::sqrt_d(D));
    CHECK(valuation(e.a()) == 1);
    CHECK(valuation(e.b()) == 1);
    CHECK(compute_s(e).s == 1);
    CHECK(compute_s(e).s == different_oracle(ExtensionSpec::sqrt_d(D)) - 1);

    // v(2)=2: defect depth 3 gives v(a)=1, s=1
    auto m2 = mix(2);
    Elem D2 = Elem::one(m2) + Elem::pi_pow(m2, 3);
    CHECK(square_defect(D2) == 3);
    auto e2 = to_eisenstein(ExtensionSpec::sqrt_d(D2));
    CHECK(valuation(e2.a()) == 1);
    CHECK(compute_s(e2).s == 1);

    // defect 1 over v(2)=2: s = 3, v(a) = 2
    Elem D3 = Elem::one(m2) + Elem::pi(m2);
    CHECK(square_defect(D3) == 1);
    auto e3 = to_eisenstein(ExtensionSpec::sqrt_d(D3));
    CHECK(valuation(e3.a()) == 2);
    CHECK(compute_s(e3).s == 3);

    // squares are rejected: 9 is a square in Q_2, and 5 becomes one after
    // unramified growth (critical-depth Artin-Schreier solvable over kbar)
    CHECK_THROWS_AS(ExtensionSpec::sqrt_d(Elem::integer(m1, 9)), not_a_nonsquare_unit);
    CHECK_THROWS_AS(ExtensionSpec::sqrt_d(Elem::integer(m1, 5)), not_a_nonsquare_unit);
}

TEST_CASE("construct_extension_with_s") {
    auto m2 = mix(2);
    auto e = construct_extension_with_s(m2, 3);
    REQUIRE(e.kind() == ExtensionSpec::Kind::eisenstein2);
    CHECK(e.a() == Elem::pi_pow(m2, 2));
    CHECK(e.b() == Elem::pi(m2));

    auto m3 = mix(3);
    auto f = construct_extension_with_s(m3, 6);
    REQUIRE(f.kind() == ExtensionSpec::Kind::sqrt_d);
    CHECK(f.D() == Elem::pi(m3));

    CHECK_THROWS_AS(construct_extension_with_s(m2, 2), invalid_break);
    CHECK_THROWS_AS(construct_extension_with_s(m2, 5), invalid_break);
    CHECK_THROWS_AS(construct_extension_with_s(equi(1), 2), invalid_break);

    for (long long s : {1, 3, 4}) CHECK(compute_s(construct_extension_with_s(m2, s)).s == s);
    for (long long s : {1, 3, 5, 6}) CHECK(compute_s(construct_extension_with_s(m3, s)).s == s);
    for (long long s : {1, 3, 5, 7, 9, 11})
        CHECK(compute_s(construct_extension_with_s(equi(2), s)).s == s);
}

TEST_CASE("oracle identity on generated extensions") {
    std::mt19937 rng(42);
    int checked = 0;
    // equichar: random normalized artin-schreier data
    for (unsigned k : {1u, 2u}) {
        auto ctx = equi(k);
        std::uniform_int_distribution<long long> sdist(0, 6);
        std::uniform_int_distribution<std::uint32_t> rdist(1, (1u << k) - 1);
        for (int t = 0; t < 15; ++t) {
            long long s = 2 * sdist(rng) + 1;
            Elem D = Elem::from_residue(ctx, ResElem(ctx.residue_ctx(), rdist(rng))) *
                     Elem::pi_pow(ctx, -s);
            if (t % 3 == 0) D = D + Elem::pi_pow(ctx, -(s / 2)); // junk lower term
            auto e = ExtensionSpec::artin_schreier(D);
            CHECK(different_oracle(e) == compute_s(e).s + 1);
            ++checked;
        }
    }
    // mixed: all admissible breaks in towers with v(2) = 1, 2, 3, 4
    for (long long v2 : {1, 2, 3, 4}) {
        auto ctx = mix(v2);
        for (long long s = 1; s <= 2 * v2; ++s) {
            if (!admissible_break(ctx, s)) continue;
            auto e = construct_extension_with_s(ctx, s);
            CHECK(compute_s(e).s == s);
            CHECK(different_oracle(e) == s + 1);
            ++checked;
        }
        // unit-D sqrt presentations with prescribed defects
        for (long long w = 1; w <= 2 * v2 - 1; w += 2) {
            Elem D = Elem::one(ctx) + Elem::pi_pow(ctx, w) * Elem::integer(ctx, 3);
            auto e = ExtensionSpec::sqrt_d(D);
            CHECK(compute_s(e).s == 2 * v2 - w);
            CHECK(different_oracle(e) == compute_s(e).s + 1);
            ++checked;
        }
        // eisenstein with v(a) > v(2) degrades to the even break
        Elem a = Elem::pi_pow(ctx, 2 * v2);
        auto e = ExtensionSpec::eisenstein2(a, Elem::pi(ctx));
        CHECK(compute_s(e).s == 2 * v2);
        CHECK(different_oracle(e) == 2 * v2 + 1);
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("twists") {
    auto eq = equi(1);
    // twist of y^2 + a3 y = x^3 by as(D): a6 picks up D a3^2
    Elem D = Elem::pi_pow(eq, -1);
    WeierstrassEq E(Elem::zero(eq), Elem::zero(eq), Elem::one(eq), Elem::zero(eq), Elem::zero(eq));
    auto T = twist(E, ExtensionSpec::artin_schreier(D));
    CHECK(T.a2().exactly_zero());
    CHECK(T.a6() == D);

    // mixed: y^2 = x^3 + 1 twisted by sqrt(D) is y^2 = x^3 + 64 D^3 (b6 = 4)
    auto m3 = mix(3);
    WeierstrassEq E2(Elem::zero(m3), Elem::zero(m3), Elem::zero(m3), Elem::zero(m3), Elem::one(m3));
    Elem Dm = Elem::pi(m3);
    auto T2 = twist(E2, ExtensionSpec::sqrt_d(Dm));
    CHECK(T2.a2().exactly_zero());
    CHECK(T2.a4().exactly_zero());
    CHECK(T2.a6() == Elem::integer(m3, 64) * Dm.pow(3));
    CHECK(j_valuation(T2).is_infinite());

    CHECK_THROWS_AS(twist(E, ExtensionSpec::sqrt_d(Elem::pi(m3))), ctx_mismatch);
    CHECK_THROWS_AS(twist(E2, ExtensionSpec::artin_schreier(Elem::pi_pow(eq, -1))), ctx_mismatch);
}

TEST_CASE("double twist preserves j") {
    std::mt19937 rng(5);
    auto m2 = mix(2);
    for (long long s : {1, 3, 4}) {
        auto e = construct_extension_with_s(m2, s);
        WeierstrassEq E(Elem::pi(m2), Elem::zero(m2), Elem::one(m2), Elem::pi(m2),
                        Elem::integer(m2, 3));
        auto TT = twist(twist(E, e), e);
        CHECK(j_valuation(TT) == j_valuation(E));
    }
    auto eq = equi(1);
    auto e = ExtensionSpec::artin_schreier(Elem::pi_pow(eq, -3));
    WeierstrassEq E(Elem::pi(eq), Elem::zero(eq), Elem::one(eq), Elem::zero(eq), Elem::zero(eq));
    auto TT = twist(twist(E, e), e);
    CHECK(j_valuation(TT) == j_valuation(E));
    // equichar double twist is literally the identity on coefficients
    for (int i = 0; i < 5; ++i) CHECK(TT.coeffs()[size_t(i)] == E.coeffs()[size_t(i)]);
}

TEST_CASE("extension parsing round trips") {
    auto eq = equi(1);
    auto m2 = mix(2);
    auto e1 = parse_extension(eq, "as(D=pi^-3)");
    CHECK(e1.kind() == ExtensionSpec::Kind::artin_schreier);
    CHECK(compute_s(e1).s == 3);
    auto e2 = parse_extension(m2, "sqrt(pi)");
    CHECK(compute_s(e2).s == 4);
    auto e3 = parse_extension(m2, "eis(a=pi^2,b=pi)");
    CHECK(compute_s(e3).s == 3);
    CHECK_THROWS_AS(parse_extension(m2, "nope(1)"), parse_error);
    // str() output parses back to an equivalent spec
    auto r1 = parse_extension(eq, e1.str());
    CHECK(compute_s(r1).s == 3);
    auto r3 = parse_extension(m2, e3.str());
    CHECK(compute_s(r3).s == 3);
}

TEST_CASE("mixed breaks satisfy the bounds") {
    for (long long v2 : {1, 2, 3}) {
        auto ctx = mix(v2);
        for (long long w = 1; w <= 2 * v2 - 1; w += 2) {
            Elem D = Elem::one(ctx) + Elem::pi_pow(ctx, w);
            long long s = compute_s(ExtensionSpec::sqrt_d(D)).s;
            CHECK(admissible_break(ctx, s));
        }
        CHECK(admissible_break(ctx, 2 * v2));
        CHECK_FALSE(admissible_break(ctx, 2 * v2 + 1));
        if (v2 >= 2) CHECK_FALSE(admissible_break(ctx, 2 * v2 - 2)); // even below 2v(2)
    }
}
