#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

// All library failures derive from dyadic::error so callers can catch the
// whole family at once.  The precision/residue-degree escalation driver
// (driver.hpp) keys off precision_loss and residue_field_too_small.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ctx_mismatch : error {
    ctx_mismatch() : error("operands belong to different field contexts") {}
    explicit ctx_mismatch(const std::string& what) : error(what) {}
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
    explicit division_by_zero(const std::string& what) : error(what) {}
};

// Raised when a result is demanded (valuation, residue, branch decision)
// that the tracked precision cannot support.  Retryable: re-run at higher
// working precision.
struct precision_loss : error {
    explicit precision_loss(const std::string& what) : error(what) {}
};

// Raised when a residue computation needs a root that only exists over a
// larger F_{2^k}.  Retryable: re-run with residue degree >= required_degree.
struct residue_field_too_small : error {
    unsigned required_degree;
    explicit residue_field_too_small(unsigned req)
        : error("residue field too small; need degree " + std::to_string(req)),
          required_degree(req) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& what) : error("parse error: " + what) {}
};

struct negative_valuation : error {
    negative_valuation() : error("element has negative valuation; no residue") {}
};

struct no_square_root : error {
    explicit no_square_root(const std::string& what) : error(what) {}
};

struct reducible_extension : error {
    reducible_extension() : error("polynomial splits over the base field; not a quadratic extension") {}
};

struct invalid_break : error {
    explicit invalid_break(const std::string& what) : error(what) {}
};

struct regime_mismatch : error {
    explicit regime_mismatch(const std::string& what) : error(what) {}
};

struct not_a_nonsquare_unit : error {
    explicit not_a_nonsquare_unit(const std::string& what) : error(what) {}
};

struct not_two_torsion : error {
    not_two_torsion() : error("given x-coordinate is not a 2-torsion abscissa on the curve") {}
};

struct inconsistent_input : error {
    explicit inconsistent_input(const std::string& what) : error(what) {}
};

struct invalid_u : error {
    explicit invalid_u(const std::string& what) : error(what) {}
};

struct invalid_curve : error {
    explicit invalid_curve(const std::string& what) : error(what) {}
};

struct retries_exhausted : error {
    explicit retries_exhausted(const std::string& what) : error(what) {}
};

struct network_error : error {
    explicit network_error(const std::string& what) : error(what) {}
};

struct unknown_label : error {
    explicit unknown_label(const std::string& label) : error("unknown catalog label: " + label) {}
};

struct unsupported_number_field : error {
    explicit unsupported_number_field(const std::string& what) : error(what) {}
};

// Violated internal invariant.  Never expected on any input; indicates a bug.
struct internal_error : error {
    explicit internal_error(const std::string& what) : error("internal invariant violated: " + what) {}
};

} // namespace dyadic
