#pragma once

#include <string>
#include <vector>

#include "dyadic/weierstrass.hpp"

namespace dyadic {

// Kodaira symbol of the special fiber of the minimal regular model.
struct KodairaType {
    enum class Tag { I0, In, II, III, IV, IStar0, IStarN, IVStar, IIIStar, IIStar };
    Tag tag = Tag::I0;
    long long n = 0; // for In (n >= 1) and IStarN (n >= 1)

    static KodairaType I0() { return {Tag::I0, 0}; }
    static KodairaType In(long long n);
    static KodairaType II() { return {Tag::II, 0}; }
    static KodairaType III() { return {Tag::III, 0}; }
    static KodairaType IV() { return {Tag::IV, 0}; }
    static KodairaType IStar0() { return {Tag::IStar0, 0}; }
    static KodairaType IStarN(long long n);
    static KodairaType IVStar() { return {Tag::IVStar, 0}; }
    static KodairaType IIIStar() { return {Tag::IIIStar, 0}; }
    static KodairaType IIStar() { return {Tag::IIStar, 0}; }

    friend bool operator==(const KodairaType& a, const KodairaType& b) {
        return a.tag == b.tag && a.n == b.n;
    }

    // "I0", "I1", ..., "II", "III", "IV", "I*0", "I*n", "IV*", "III*", "II*"
    std::string str() const;
    static KodairaType parse(const std::string& s);
};

std::string kodaira_format(const KodairaType& t);

struct TateReport {
    KodairaType kodaira;
    long long v_delta_min = 0;
    WeierstrassEq minimal_model;
    long long restarts = 0; // u = pi rescalings (step 11)
    std::vector<std::string> trace;
};

// Tate's algorithm over the (approximately algebraically closed) residue
// field, residue characteristic 2.  The general-p formulation is used
// throughout: no c4/c6 shortcuts, root searches over the residue field via
// Frobenius square roots.  Non-integral inputs are rescaled first; step 11
// rescales by u = pi and restarts, so the returned model is minimal.
TateReport tate_run(const WeierstrassEq& E);

} // namespace dyadic
