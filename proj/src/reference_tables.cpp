#include "mmo/reference_tables.hpp"

#include "mmo/errors.hpp"
#include "mmo/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace mmo {

const std::vector<Table1Row>& table1() {
    static const std::vector<Table1Row> rows{
        {"1^1", {0.3, 1, 0.9, -2}, 0.8743, 0.0240, 27.2674, -64.5764},
        {"1^2", {0.3, 3, 0.9, -2}, 0.8743, 0.0240, 28.2364, -73.1866},
        {"1^3", {0.3, 7, 0.9, -2}, 0.8743, 0.0240, 30.1744, -90.4070},
        {"1^4", {0.3, 10, 0.9, -2}, 0.8743, 0.0240, 31.6279, -103.3223},
        {"1^5", {0.3, 12, 0.9, -2}, 0.8743, 0.0240, 32.5969, -111.9325},
        {"1^6", {0.3, 15, 0.9, -2}, 0.8743, 0.0240, 34.0504, -124.8478},
        {"1^7", {0.3, 20, 0.9, -2}, 0.8743, 0.0240, 36.4729, -146.3733},
        {"1^8", {0.3, 25, 0.9, -2}, 0.8743, 0.0240, 38.8954, -167.8987},
        {"1^1", {0.9, 3, 0.4, -3}, -0.5065, 1.0238, 3.2091, -7.7202},
        {"2^1", {0.9, 1.5, 0.4, -3}, -0.5065, 1.0238, 3.9766, -4.4118},
        {"3^1", {0.9, 1, 0.4, -3}, -0.5065, 1.0238, 4.2325, -3.3088},
        {"4^1", {0.9, 0.7, 0.4, -3}, -0.5065, 1.0238, 4.3860, -2.6471},
        {"5^1", {0.9, 0.5, 0.4, -3}, -0.5065, 1.0238, 4.4883, -2.2059},
        {"6^1", {0.9, 0.4, 0.4, -3}, -0.5065, 1.0238, 4.5395, -1.9853},
        {"7^1", {0.9, 0.3, 0.4, -3}, -0.5065, 1.0238, 4.6162, -1.7647},
        {"8^1", {0.9, 0.25, 0.4, -3}, -0.5065, 1.0238, 4.6418, -1.6544},
    };
    return rows;
}

const std::vector<Table2Row>& table2() {
    static const std::vector<Table2Row> rows{
        {"1^2", 0.3, 0.9, -5, 2.9262, 3.5055, 3},
        {"1^3", 0.3, 0.9, -9, 6.5313, 7.0921, 7},
        {"1^4", 0.3, 0.9, -11, 8.8076, 9.2376, 9},
        {"1^8", 0.3, 0.9, -2.28, 2.0932, 2.1197, 2.1},
        {"1^9", 0.3, 0.9, -2.68, 2.4955, 2.5205, 2.5},
        {"1^25", 0.5, 0.94, -15.25, 14.9889, 15.0064, 15},
        {"2^1", 0.9, 0.8, -7.2, 2.1520, 2.4732, 2.2},
        {"3^1", 0.9, 0.8, -6.5, 1.3778, 1.5678, 1.5},
        {"6^1", 0.9, 0.8, -5.6, 0.5704, 0.6410, 0.6},
        {"8^1", 0.9, 0.9, -6.5, 0.4675, 0.5075, 0.5},
        {"9^1", 0.9, 0.9, -9.6, 0.5710, 0.6344, 0.6},
    };
    return rows;
}

MuInterval predicted_window(const TransformedPam& tp, const Signature& sig) {
    if (sig.segments().size() != 1) {
        throw DomainError("predicted windows exist only for L^1 and 1^s signatures");
    }
    const auto seg = sig.segments().front();
    if (seg.sao == 1) return lao_window(tp, seg.lao);
    if (seg.lao == 1) return sao_window(tp, seg.sao);
    throw DomainError("predicted windows exist only for L^1 and 1^s signatures");
}

SignatureCheck signature_from_both_sides(const PamCoefficients& pam) {
    auto run = [&](double z0) -> std::string {
        try {
            const auto orbit = iterate_orbit(pam, z0);
            return orbit.converged ? detect_signature(orbit).str() : std::string{};
        } catch (const Error&) {
            return {};
        }
    };
    return {run(-0.5), run(0.5)};
}

std::vector<Table1Result> verify_table1(const RhoSpec& rho) {
    std::vector<std::future<Table1Result>> jobs;
    for (const auto& row : table1()) {
        jobs.push_back(std::async(std::launch::async, [row, rho] {
            Table1Result r{row, {}, 0.0, signature_from_both_sides(row.pam), {}};
            try {
                r.computed = synthesize(row.pam, rho);
                r.max_param_error = std::max({std::abs(r.computed.alpha - row.alpha),
                                              std::abs(r.computed.beta - row.beta),
                                              std::abs(r.computed.kappa - row.kappa),
                                              std::abs(r.computed.lambda - row.lambda)});
            } catch (const Error& e) {
                r.error = e.what();
                r.max_param_error = INFINITY;
            }
            return r;
        }));
    }
    std::vector<Table1Result> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::vector<Table2Result> verify_table2() {
    std::vector<Table2Result> out;
    for (const auto& row : table2()) {
        Table2Result r;
        r.row = row;
        const TransformedPam tp{row.a, row.b, row.actual_mu, row.l};
        r.computed = predicted_window(tp, Signature::parse(row.signature));
        r.max_endpoint_error = std::max(std::abs(r.computed.lower - row.lower), std::abs(r.computed.upper - row.upper));
        r.actual_inside = r.computed.contains(row.actual_mu);
        r.actual_signature = signature_from_both_sides(inverse_transform(tp));
        out.push_back(r);
    }
    return out;
}

}  // namespace mmo
