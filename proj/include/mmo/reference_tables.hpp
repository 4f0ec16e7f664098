#pragma once

// Published reference data: synthesised parameters for sixteen target PAMs and
// predicted mu windows for eleven signatures, plus the routines that check
// this library against them.

#include "mmo/canonical.hpp"
#include "mmo/pam.hpp"

#include <string>
#include <vector>

namespace mmo {

struct Table1Row {
    std::string signature;
    PamCoefficients pam;
    double alpha, beta, kappa, lambda;
};

struct Table2Row {
    std::string signature;
    double a, b, l;
    double lower, upper;  ///< printed "Predicted mu" endpoints
    double actual_mu;
};

[[nodiscard]] const std::vector<Table1Row>& table1();
[[nodiscard]] const std::vector<Table2Row>& table2();

/// Window predicted for a single-segment signature L^1 or 1^s.
[[nodiscard]] MuInterval predicted_window(const TransformedPam& tp, const Signature& sig);

/// Signature of the PAM from Z0 = -0.5 and Z0 = +0.5; empty if the two disagree or either fails.
struct SignatureCheck {
    std::string from_negative;
    std::string from_positive;
    [[nodiscard]] bool agree() const { return !from_negative.empty() && from_negative == from_positive; }
};
[[nodiscard]] SignatureCheck signature_from_both_sides(const PamCoefficients& pam);

struct Table1Result {
    Table1Row row;
    CanonicalParams computed;
    double max_param_error = 0.0;
    SignatureCheck signature;
    std::string error;  ///< non-empty if synthesis threw
    [[nodiscard]] bool params_ok(double tol) const { return error.empty() && max_param_error <= tol; }
    [[nodiscard]] bool signature_ok() const { return signature.agree() && signature.from_negative == row.signature; }
};

struct Table2Result {
    Table2Row row;
    MuInterval computed;
    double max_endpoint_error = 0.0;
    bool actual_inside = false;
    SignatureCheck actual_signature;
    [[nodiscard]] bool interval_ok(double tol) const { return max_endpoint_error <= tol; }
};

/// Rows are processed on worker threads; results come back in table order.
[[nodiscard]] std::vector<Table1Result> verify_table1(const RhoSpec& rho = RhoSpec::fixed_rational());
[[nodiscard]] std::vector<Table2Result> verify_table2();

}  // namespace mmo
