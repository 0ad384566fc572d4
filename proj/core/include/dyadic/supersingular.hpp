#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyadic/quadratic_ext.hpp"
#include "dyadic/tate.hpp"

namespace dyadic {

// v(j) with the v(0) = infinity convention; infinite encodes j = 0.
using JValuation = Valuation;

// Outcome of the reduction-type law for a curve that becomes good
// supersingular over a quadratic extension with break s:
//   case A (v(j) <= 4s - 4): type I*_{4s - v(j)}, with 12 | v(j);
//   case B (v(j) >  4s - 4): type II / I*0 / II* as f = 1 / 3 / 5, where
//                            f in {1,3,5} satisfies 2s + 3 = f mod 6.
struct Prediction {
    KodairaType kodaira;
    std::optional<int> f; // set in case B
    char case_label;      // 'A' or 'B'
};

Prediction predicted_type(JValuation vj, RamificationBreak s);

// Good supersingular reduction test: the curve must have type I0, and on a
// minimal model v(b2) > 0 with v(b6) = 0 (equivalently, positive v(j)); the
// two criteria are computed independently and must agree.
bool is_good_supersingular(const WeierstrassEq& E);

// y^2 + pi^u xy + y = x^3 with v(j) = 12u; u = nullopt (or 0) requests the
// j = 0 curve y^2 + y = x^3.  Mixed contexts require u < v(2).
WeierstrassEq construct_supersingular_with_vj(const FieldCtx& ctx,
                                              std::optional<long long> u);

// { m : 1 <= m <= 2 v2 - 3, m != 2 v2 - 5 }: the multiples m for which
// I*_{4m} occurs among curves with good supersingular reduction after a
// quadratic extension (mixed characteristic, v2 >= 2).
std::vector<long long> allowed_istar_multiples(long long v2);

// The exact set of reduction types arising over a field with the given
// v(2) (infinite for equicharacteristic, where every I*_{4m} occurs).
struct AllowedTypes {
    std::vector<KodairaType> basics;       // subset of {II, I*0, II*}
    std::vector<long long> istar_multiples; // m with I*_{4m} allowed
    bool every_multiple = false;            // equichar: all m >= 1

    bool contains(const KodairaType& t) const;
    // finite enumeration; only valid when !every_multiple
    std::vector<KodairaType> as_set() const;
};

AllowedTypes allowed_types(Valuation v2);

struct VerificationRecord {
    std::string field;
    std::string ext;
    long long s = 0;
    JValuation vj;
    bool applicable = false; // twist has good supersingular reduction
    std::optional<KodairaType> predicted;
    std::optional<KodairaType> computed;
    bool match = false;

    std::string to_json() const;
};

// Runs the full check on one instance: gates on the twisted curve having
// good supersingular reduction, predicts from (v(j), s), runs the reduction
// algorithm, and for I*_n outcomes additionally requires n = 4s - v(j).
VerificationRecord verify(const WeierstrassEq& E, const ExtensionSpec& ext);

// Sweep grid: curves twisted from the standard supersingular family across
// breaks s and valuations v(j) = 12u (u = nullopt for j = 0).
struct ScanGrid {
    FieldCtx ctx;
    std::vector<long long> s_values;
    std::vector<std::optional<long long>> u_values;
};

// Every admissible break and every admissible u for the context, plus j=0.
ScanGrid default_grid(const FieldCtx& ctx);

// Grid point -> verification record, in grid order (s outer, u inner).
// Points fan out across threads when parallel is set.
std::vector<VerificationRecord> run_sweep(const ScanGrid& grid, bool parallel = false);

} // namespace dyadic
