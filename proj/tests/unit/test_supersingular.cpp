#include "doctest.h"

#include <set>

#include "dyadic/parse.hpp"
#include "dyadic/supersingular.hpp"

using namespace dyadic;

namespace {

WeierstrassEq curve(const FieldCtx& ctx, const std::string& text) {
    return WeierstrassEq::from_coeffs(ctx, parse_curve_coeffs(ctx, text));
}

FieldCtx mix(long long v2, unsigned k = 1) {
    std::string eis = v2 == 1 ? "z-2" : "z^" + std::to_string(v2) + "-2";
    return parse_field("mixed(k=" + std::to_string(k) + ",eis=\"" + eis + "\")");
}

} // namespace

TEST_CASE("good supersingular detection") {
    for (const FieldCtx& ctx : {FieldCtx::make_equichar(1), mix(2)}) {
        CHECK(is_good_supersingular(curve(ctx, "[0,0,1,0,0]")));
    }
    // a1 a unit: good but ordinary
    CHECK_FALSE(is_good_supersingular(curve(mix(2), "[1,0,1,0,0]")));
    CHECK_FALSE(is_good_supersingular(curve(FieldCtx::make_equichar(1), "[1,0,0,0,1]")));
    CHECK(is_good_supersingular(curve(mix(2), "[pi,0,1,0,0]")));
    // additive curves are not good
    CHECK_FALSE(is_good_supersingular(curve(mix(3), "[0,0,0,0,pi^3]")));
}

TEST_CASE("supersingular family constructor") {
    auto m3 = mix(3);
    CHECK(j_valuation(construct_supersingular_with_vj(m3, 1)) == 12);
    CHECK(j_valuation(construct_supersingular_with_vj(m3, 2)) == 24);
    CHECK(j_valuation(construct_supersingular_with_vj(m3, std::nullopt)).is_infinite());
    CHECK(j_valuation(construct_supersingular_with_vj(m3, 0)).is_infinite());
    CHECK_THROWS_AS(construct_supersingular_with_vj(m3, 3), invalid_u);
    CHECK_THROWS_AS(construct_supersingular_with_vj(mix(1), 1), invalid_u);

    auto eq = FieldCtx::make_equichar(1);
    CHECK(j_valuation(construct_supersingular_with_vj(eq, 2)) == 24);
    CHECK(is_good_supersingular(construct_supersingular_with_vj(eq, 5)));
}

TEST_CASE("predicted types") {
    auto P = [](long long vj, long long s) {
        return predicted_type(Valuation(vj), RamificationBreak{s});
    };
    CHECK(P(12, 7).kodaira == KodairaType::IStarN(16));
    CHECK(P(12, 7).case_label == 'A');
    CHECK(P(24, 3).kodaira == KodairaType::IStar0());
    CHECK(P(24, 3).f == 3);
    CHECK(predicted_type(Valuation::infinity(), {1}).kodaira == KodairaType::IIStar());
    CHECK(predicted_type(Valuation::infinity(), {1}).f == 5);
    CHECK(P(12, 4).kodaira == KodairaType::IStarN(4));
    CHECK_THROWS_AS(P(6, 7), inconsistent_input);   // case A needs 12 | v(j)
    CHECK_THROWS_AS(predicted_type(Valuation(0), {1}), inconsistent_input);
}

TEST_CASE("allowed multiples and type sets") {
    CHECK(allowed_istar_multiples(2) == std::vector<long long>{1});
    CHECK(allowed_istar_multiples(3) == std::vector<long long>{2, 3});
    CHECK(allowed_istar_multiples(4) == std::vector<long long>{1, 2, 4, 5});

    auto set_of = [](const AllowedTypes& a) {
        std::set<std::string> s;
        for (const auto& t : a.as_set()) s.insert(t.str());
        return s;
    };
    CHECK(set_of(allowed_types(Valuation(1))) == std::set<std::string>{"II", "II*"});
    CHECK(set_of(allowed_types(Valuation(2))) == std::set<std::string>{"I*0", "II*", "I*4"});
    CHECK(set_of(allowed_types(Valuation(3))) ==
          std::set<std::string>{"II", "I*0", "II*", "I*8", "I*12"});

    auto equi = allowed_types(Valuation::infinity());
    CHECK(equi.every_multiple);
    CHECK(equi.contains(KodairaType::IStarN(4)));
    CHECK(equi.contains(KodairaType::IStarN(400)));
    CHECK_FALSE(equi.contains(KodairaType::IStarN(6)));
    CHECK_FALSE(equi.contains(KodairaType::III()));
    CHECK(equi.contains(KodairaType::II()));
}

TEST_CASE("verify on hand-picked instances") {
    // equichar s=3 twist of the j=0 curve: predicted and computed I*0
    auto eq = FieldCtx::make_equichar(1);
    auto ext = construct_extension_with_s(eq, 3);
    auto E = twist(curve(eq, "[0,0,1,0,0]"), ext);
    auto rec = verify(E, ext);
    CHECK(rec.applicable);
    CHECK(rec.match);
    REQUIRE(rec.predicted.has_value());
    CHECK(*rec.predicted == KodairaType::IStar0());
    CHECK(*rec.computed == KodairaType::IStar0());

    // equichar s=7 twist of the u=1 family curve: I*_{4*7-12} = I*16
    auto ext7 = construct_extension_with_s(eq, 7);
    auto E7 = twist(construct_supersingular_with_vj(eq, 1), ext7);
    auto rec7 = verify(E7, ext7);
    CHECK(rec7.applicable);
    CHECK(rec7.match);
    CHECK(*rec7.computed == KodairaType::IStarN(16));

    // hypothesis failure: an additive curve whose twist is still additive
    auto m1 = mix(1);
    auto sq = ExtensionSpec::sqrt_d(Elem::pi(m1));
    auto bad = curve(m1, "[0,0,0,0,2]"); // type II
    auto recb = verify(bad, sq);
    CHECK_FALSE(recb.applicable);
    CHECK_FALSE(recb.match);
    CHECK(recb.to_json().find("\"applicable\":false") != std::string::npos);
}

TEST_CASE("mixed sweep v(2)=2 realizes exactly the corollary set") {
    auto m2 = mix(2);
    auto records = run_sweep(default_grid(m2));
    std::set<std::string> seen;
    int applicable = 0;
    for (const auto& r : records) {
        if (!r.applicable) continue;
        ++applicable;
        CHECK(r.match);
        seen.insert(r.computed->str());
        CHECK(allowed_types(Valuation(2)).contains(*r.computed));
    }
    CHECK(applicable == int(records.size()));
    CHECK(seen == std::set<std::string>{"I*0", "II*", "I*4"});
}

TEST_CASE("equichar sweep k=1, small") {
    auto eq = FieldCtx::make_equichar(1);
    ScanGrid g{eq, {1, 3, 5}, {1, 2, std::nullopt}};
    auto records = run_sweep(g, true);
    CHECK(records.size() == 9);
    for (const auto& r : records) {
        CHECK(r.applicable);
        CHECK(r.match);
    }
}

TEST_CASE("case-A records have 12 | vj and 4 | n") {
    auto m3 = mix(3);
    for (const auto& r : run_sweep(default_grid(m3))) {
        REQUIRE(r.applicable);
        REQUIRE(r.match);
        if (r.computed->tag == KodairaType::Tag::IStarN && r.computed->n > 0) {
            CHECK(r.vj.is_finite());
            CHECK(r.vj.value() % 12 == 0);
            CHECK(r.computed->n % 4 == 0);
            CHECK(r.computed->n == 4 * r.s - r.vj.value());
        }
        // Remark-style consequence: finite v(j) of a potentially supersingular
        // curve is at least 12
        if (r.vj.is_finite()) CHECK(r.vj.value() >= 12);
    }
}
