// Acceptance checks. One line per criterion: id, PASS/FAIL, measured values,
// elapsed time against the runtime budget. Exit status is nonzero if any
// selected criterion fails.

#include "mmo/associated_pam.hpp"
#include "mmo/crossover.hpp"
#include "mmo/dynamics.hpp"
#include "mmo/errors.hpp"
#include "mmo/pam.hpp"
#include "mmo/reference_tables.hpp"
#include "mmo/synthesis.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mmo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

struct NamedPam {
    std::string name;
    PamCoefficients pam;
};

const std::vector<NamedPam>& dynamics_rows() {
    static const std::vector<NamedPam> rows{
        {"1^1", {0.3, 1, 0.9, -2}},
        {"1^3", {0.3, 7, 0.9, -2}},
        {"3^1", {0.9, 1, 0.4, -3}},
    };
    return rows;
}

// ---------------------------------------------------------------------------

Outcome table1_synthesis() {
    constexpr double tol = 1e-3;
    const auto results = verify_table1();
    int ok = 0;
    double worst = 0.0;
    std::string failures;
    for (const auto& r : results) {
        worst = std::max(worst, r.max_param_error);
        if (r.params_ok(tol)) {
            ++ok;
        } else {
            failures += " " + r.row.signature + "(a11=" + fmt(r.row.pam.a11, 1) + ",err " + sci(r.max_param_error) +
                        (r.error.empty() ? "" : ", " + r.error) + ")";
        }
    }
    return {ok == static_cast<int>(results.size()),
            std::to_string(ok) + "/" + std::to_string(results.size()) + " rows within " + sci(tol) +
                ", max error " + sci(worst) + (failures.empty() ? "" : "; failing:" + failures)};
}

Outcome table1_signatures() {
    int ok = 0;
    std::string failures;
    for (const auto& row : table1()) {
        const auto check = signature_from_both_sides(row.pam);
        if (check.agree() && check.from_negative == row.signature) {
            ++ok;
        } else {
            failures += " " + row.signature + "->" + check.from_negative + "/" + check.from_positive;
        }
    }
    return {ok == static_cast<int>(table1().size()),
            std::to_string(ok) + "/" + std::to_string(table1().size()) + " rows from Z0 = -0.5 and +0.5" +
                (failures.empty() ? "" : "; failing:" + failures)};
}

Outcome table2_bounds() {
    constexpr double tol = 1e-4;
    const auto results = verify_table2();
    int interval_ok = 0, inside = 0;
    std::string failures;
    for (const auto& r : results) {
        interval_ok += r.interval_ok(tol);
        inside += r.actual_inside;
        if (!r.interval_ok(tol) || !r.actual_inside) {
            failures += " " + r.row.signature + " computed " + r.computed.str() + " printed [" + fmt(r.row.lower) +
                        ", " + fmt(r.row.upper) + "] err " + sci(r.max_endpoint_error);
        }
    }
    const int n = static_cast<int>(results.size());
    return {interval_ok == n && inside == n,
            std::to_string(interval_ok) + "/" + std::to_string(n) + " intervals within " + sci(tol) + ", " +
                std::to_string(inside) + "/" + std::to_string(n) + " actual mu inside" +
                (failures.empty() ? "" : "; failing:" + failures)};
}

Outcome roundtrip() {
    constexpr int draws = 100;
    constexpr double tol = 1e-8;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> slope(0.1, 0.99), off12(-10, 25), off22(-10, 10);
    std::vector<PamCoefficients> targets;
    for (int i = 0; i < draws; ++i) targets.push_back({slope(rng), off12(rng), slope(rng), off22(rng)});

    std::ostringstream detail;
    bool pass = true;
    for (const auto& rho : {RhoSpec::fixed_rational(), RhoSpec::quadratic(1, 1)}) {
        const auto geom = compute_geometry(CanonicalParams{0, 0, 0, 0, rho});
        int ok = 0;
        double worst = 0.0;
        for (const auto& m : targets) {
            try {
                const auto forward = associated_pam(synthesize(m, rho), geom);
                const double gap = std::max({relative_gap(forward.a11, m.a11), relative_gap(forward.a12, m.a12),
                                             relative_gap(forward.a21, m.a21), relative_gap(forward.a22, m.a22)});
                worst = std::max(worst, gap);
                ok += gap <= tol;
            } catch (const Error& e) {
                detail << " [" << e.what() << "]";
            }
        }
        pass = pass && ok == draws;
        detail << rho.name() << " " << ok << "/" << draws << " (max gap " << sci(worst) << ") ";
    }
    return {pass, detail.str() + "tolerance " + sci(tol)};
}

Outcome closed_form_vs_quadrature() {
    constexpr int draws = 100;
    constexpr double tol = 1e-8;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ua(-1, 1), uk(-50, 50), ul(-300, 300), upq(0.6, 2.0);
    std::bernoulli_distribution quadratic(0.5);
    int ok = 0, segments = 0;
    double worst = 0.0;
    std::string failures;
    for (int i = 0; i < draws; ++i) {
        CanonicalParams p{ua(rng), ua(rng), uk(rng), ul(rng)};
        if (quadratic(rng)) p.rho = RhoSpec::quadratic(upq(rng), upq(rng));
        const auto g = compute_geometry(p);
        const auto b = branch_segments(g);
        for (const auto& seg : {b.lao_inner, b.lao_outer, b.sao_inner, b.sao_outer,
                                SegmentSpec{g.xhat1, g.xhat3, Sheet::Sa3}}) {
            ++segments;
            try {
                const auto closed = segment_affine(p, seg, SegmentMethod::ClosedForm);
                const auto quad = segment_affine(p, seg, SegmentMethod::Quadrature);
                const double gap = std::max(relative_gap(closed.slope, quad.slope), relative_gap(closed.offset, quad.offset));
                worst = std::max(worst, gap);
                if (gap <= tol) {
                    ++ok;
                } else {
                    failures += " draw " + std::to_string(i) + " gap " + sci(gap);
                }
            } catch (const Error& e) {
                failures += " draw " + std::to_string(i) + " " + e.what();
            }
        }
    }
    return {ok == segments, std::to_string(ok) + "/" + std::to_string(segments) + " segments over " +
                                std::to_string(draws) + " draws, max gap " + sci(worst) +
                                (failures.empty() ? "" : "; failing:" + failures)};
}

// Least-squares slope of log(err) against log(delta).
double fitted_order(const std::vector<double>& deltas, const std::vector<double>& errs) {
    double mx = 0, my = 0;
    const auto n = static_cast<double>(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        mx += std::log(deltas[i]) / n;
        my += std::log(errs[i]) / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double dx = std::log(deltas[i]) - mx;
        sxy += dx * (std::log(errs[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

Outcome hybrid_convergence() {
    const std::vector<double> deltas{1e-2, 5e-3, 1e-3};
    constexpr std::size_t points = 12;
    bool pass = true;
    std::ostringstream detail;
    for (const auto& row : dynamics_rows()) {
        const auto params = synthesize(row.pam);
        const auto orbit = iterate_orbit(row.pam, -0.5);
        const std::size_t n = std::min(points, orbit.iterates.size());
        std::vector<double> errs;
        for (double delta : deltas) {
            double err = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double Z = orbit.iterates[k];
                const double hybrid = hybrid_simulate(params, delta, Z, 1).returns[1];
                err = std::max(err, std::abs(hybrid - pam_eval(row.pam, Z)));
            }
            errs.push_back(err);
        }
        const double order = fitted_order(deltas, errs);
        pass = pass && order >= 0.9;
        detail << row.name << ": order " << fmt(order, 3) << " (err";
        for (double e : errs) detail << " " << sci(e);
        detail << ") ";
    }
    return {pass, detail.str() + "threshold 0.9"};
}

Outcome full_ode_signatures() {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& row : dynamics_rows()) {
        const auto params = synthesize(row.pam);
        const auto geom = compute_geometry(params);
        SimConfig cfg;
        cfg.eps = 1e-7;
        cfg.delta = 5e-3;
        cfg.max_slow_time = 60;
        const std::string expected = signature_from_both_sides(row.pam).from_negative;
        try {
            const auto sec = default_section(geom);
            const auto cls = classify_series_detailed(integrate_full(params, cfg, sec), geom, sec);
            double nearest = std::numeric_limits<double>::infinity();
            for (double z : cls.cycle_z) nearest = std::min(nearest, std::abs(z / cfg.delta));
            const bool hole = nearest <= canard_hole_radius(cfg.eps, cfg.delta);
            const bool ok = cls.signature.str() == expected;
            pass = pass && ok;
            detail << row.name << ": " << cls.signature.str() << " over " << cls.oscillations << " oscillations"
                   << (ok ? "" : " (expected " + expected + ")") << ", min |Z| " << fmt(nearest, 3)
                   << (hole ? " inside canard hole" : "") << "; ";
        } catch (const Error& e) {
            pass = false;
            detail << row.name << ": " << e.what() << "; ";
        }
    }
    return {pass, detail.str() + "eps 1e-7, delta 5e-3, hole radius " + fmt(canard_hole_radius(1e-7, 5e-3), 3)};
}

Outcome crossover() {
    std::ostringstream detail;
    const auto s1 = crossover_from_endpoints({0.9, 6, 0.85, -1}, {0.9, 7.2, 0.85, -1}, 6.5, 121);
    const auto scan = crossover_scan(s1);
    const auto window = std::find_if(scan.windows.begin(), scan.windows.end(),
                                     [](const SignatureWindow& w) { return w.signature == "1^4 1^5"; });
    const bool in_scan = window != scan.windows.end();
    const auto g1 = compute_geometry(CanonicalParams{s1.alpha, s1.beta, 0, 0, s1.rho});
    const auto at_point = crossover_probe(s1, 7.8120, -250.8049, g1).signature;
    detail << "1^4 -> 1^5 scan: " << (in_scan ? "1^4 1^5 for kappa in [" + fmt(window->kappa_lo) + ", " +
                                                    fmt(window->kappa_hi) + "]"
                                              : std::string("1^4 1^5 not found"))
           << "; at (7.8120, -250.8049): " << at_point;

    const auto s2 = crossover_from_endpoints({0.9, 2.2, 0.8, -5}, {0.9, 1.5, 0.8, -5}, 1.8, 2);
    const auto g2 = compute_geometry(CanonicalParams{s2.alpha, s2.beta, 0, 0, s2.rho});
    const auto second = crossover_probe(s2, 24.5348, -87.9962, g2).signature;
    detail << "; at (24.5348, -87.9962), mu 1.8: " << second;
    return {in_scan && at_point == "1^4 1^5" && second == "2^1 3^1", detail.str()};
}

// Maximal runs of LAOs and of SAOs in a periodic signature.
void runs_of(const Signature& sig, std::vector<int>& lao_runs, std::vector<int>& sao_runs) {
    lao_runs.clear();
    sao_runs.clear();
    for (const auto& seg : sig.segments()) {
        if (seg.lao > 0) lao_runs.push_back(seg.lao);
        if (seg.sao > 0) sao_runs.push_back(seg.sao);
    }
}

Outcome properties() {
    constexpr int draws = 1000;
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u01(0.02, 0.98), ul(-20.0, -0.5), unit(0.001, 0.999);
    int bound_violations = 0, mixed = 0, periodic = 0;
    std::string first_violation;
    std::vector<int> lao_runs, sao_runs;
    for (int i = 0; i < draws; ++i) {
        const TransformedPam tp{u01(rng), u01(rng), 0.0, ul(rng)};
        const double mu = -tp.l * unit(rng);
        TransformedPam t = tp;
        t.mu = mu;
        const auto orbit = iterate_orbit(inverse_transform(t), -0.5);
        if (!orbit.converged) continue;
        ++periodic;
        runs_of(detect_signature(orbit), lao_runs, sao_runs);
        const int max_l = *std::max_element(lao_runs.begin(), lao_runs.end());
        const int min_l = *std::min_element(lao_runs.begin(), lao_runs.end());
        const int max_s = *std::max_element(sao_runs.begin(), sao_runs.end());
        const int min_s = *std::min_element(sao_runs.begin(), sao_runs.end());
        if (max_l >= 2 && max_s >= 2) ++mixed;

        bool ok = true;
        for (int L = 1; L <= max_l + 1; ++L) {
            const auto th = lao_thresholds(t, L);
            if (mu <= th.mu1 && min_l < L) ok = false;
            if (mu > th.mu2 && max_l > L) ok = false;
        }
        for (int s = 1; s <= max_s + 1; ++s) {
            const auto th = sao_thresholds(t, s);
            if (mu < th.at_most && max_s > s) ok = false;
            if (mu >= th.at_least && min_s < s) ok = false;
        }
        if (!ok) {
            ++bound_violations;
            if (first_violation.empty()) {
                first_violation = " first: a " + fmt(t.a) + " b " + fmt(t.b) + " l " + fmt(t.l) + " mu " + fmt(mu) +
                                  " -> " + detect_signature(orbit).str();
            }
        }
    }

    // Geometry on random planes z.
    std::uniform_real_distribution<double> uz(-0.05, 0.05);
    int geometry_failures = 0;
    double worst = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double z = uz(rng);
        const auto g = compute_geometry_at(z);
        double err = 0.0;
        for (double x : {g.x1, g.x2, g.x3, g.x4}) err = std::max(err, std::abs(eval_Fx(x, z)));
        err = std::max({err, std::abs(eval_F(g.xhat1, z) - eval_F(g.x1, z)),
                        std::abs(eval_F(g.xhat3, z) - eval_F(g.x3, z)),
                        std::abs(eval_F(g.xhat4, z) - eval_F(g.x4, z))});
        worst = std::max(worst, err);
        const bool folds = eval_Fxx(g.x1, z) < -1e-8 && eval_Fxx(g.x2, z) > 1e-8 && eval_Fxx(g.x3, z) < -1e-8 &&
                           eval_Fxx(g.x4, z) > 1e-8;
        const bool order = g.xhat4 < g.x1 && g.x1 < g.x2 && g.x2 < g.x3 && g.x3 < g.x4 && g.x4 < g.xhat3 &&
                           g.xhat3 < g.xhat1;
        if (err > 1e-8 || !folds || !order) ++geometry_failures;
    }
    const auto g0 = compute_geometry_at(0.0);
    const double height_gap = std::abs(g0.y2 - g0.y4);
    const bool pass = bound_violations == 0 && mixed == 0 && geometry_failures == 0 && height_gap <= 1e-8;
    return {pass, "bounds: " + std::to_string(bound_violations) + " violations in " + std::to_string(periodic) +
                      " periodic draws" + first_violation + "; mixed L>=2 and s>=2: " + std::to_string(mixed) +
                      "; geometry: " + std::to_string(geometry_failures) + "/" + std::to_string(draws) +
                      " planes failing, max residual " + sci(worst) + ", |y2 - y4| at z0 " + sci(height_gap)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> selected;
    app.add_option("--criterion,-c", selected, "criteria to run (default: all)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "reference synthesis table", 10, table1_synthesis},
        {2, "reference table signatures", 1, table1_signatures},
        {3, "reference bounds table", 1, table2_bounds},
        {4, "forward/inverse round trip", 30, roundtrip},
        {5, "closed form vs quadrature", 30, closed_form_vs_quadrature},
        {6, "hybrid delta-convergence", 60, hybrid_convergence},
        {7, "full-system signatures", 540, full_ode_signatures},
        {8, "crossover signatures", 60, crossover},
        {9, "property suites", 60, properties},
    };

    bool all = true;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = elapsed < c.budget_s;
        const bool pass = out.pass && in_time;
        all = all && pass;
        std::cout << "C" << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.name << ": " << out.detail << " ["
                  << fmt(elapsed, 2) << " s of " << c.budget_s << " s" << (in_time ? "" : ", over budget") << "]"
                  << std::endl;
    }
    return all ? 0 : 1;
}
