// Command-line front end for the mmo library.
//
// Exit codes: 0 success, 2 usage or config error, 3 domain or singularity error,
// 4 inconclusive (canard hole), 1 any other failure.

#include "mmo/associated_pam.hpp"
#include "mmo/crossover.hpp"
#include "mmo/dynamics.hpp"
#include "mmo/errors.hpp"
#include "mmo/io.hpp"
#include "mmo/pam.hpp"
#include "mmo/reference_tables.hpp"
#include "mmo/synthesis.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;
using namespace mmo;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInconclusive = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Inconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

template <typename Fn>
void write_with(const std::filesystem::path& path, Fn&& fn) {
    std::ostringstream os;
    fn(os);
    write_file(path, os.str());
}

// ---------------------------------------------------------------------------
// Shared option groups

struct PamFlags {
    std::optional<double> a11, a12, a21, a22;

    void add(CLI::App* cmd) {
        cmd->add_option("--a11", a11, "slope for Z < 0");
        cmd->add_option("--a12", a12, "offset for Z < 0");
        cmd->add_option("--a21", a21, "slope for Z > 0");
        cmd->add_option("--a22", a22, "offset for Z > 0");
    }
    [[nodiscard]] bool any() const { return a11 || a12 || a21 || a22; }
    [[nodiscard]] PamCoefficients resolve(std::optional<PamCoefficients> base = {}) const {
        if (!base && !(a11 && a12 && a21 && a22)) throw UsageError("--a11, --a12, --a21 and --a22 are required");
        PamCoefficients p = base.value_or(PamCoefficients{});
        if (a11) p.a11 = *a11;
        if (a12) p.a12 = *a12;
        if (a21) p.a21 = *a21;
        if (a22) p.a22 = *a22;
        return p;
    }
};

struct RhoFlags {
    std::string kind = "fixed_rational";
    double p = 1.0;
    double q = 1.0;

    void add(CLI::App* cmd) {
        cmd->add_option("--rho", kind, "rho family")->check(CLI::IsMember({"fixed_rational", "quadratic"}));
        cmd->add_option("--p", p, "quadratic rho: constant term");
        cmd->add_option("--q", q, "quadratic rho: x^2 coefficient");
    }
    [[nodiscard]] RhoSpec resolve() const {
        return kind == "quadratic" ? RhoSpec::quadratic(p, q) : RhoSpec::fixed_rational();
    }
};

std::string fixed(double v, int digits = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// pam

struct PamIterateArgs {
    PamFlags pam;
    double z0 = -0.5;
    std::size_t max_iters = 100000;
    std::string csv = "orbit.csv";
    std::string svg = "cobweb.svg";
};

int run_pam_iterate(const PamIterateArgs& a) {
    const auto pam = a.pam.resolve();
    pam.validate();
    OrbitOptions opts;
    opts.max_iters = a.max_iters;
    const auto orbit = iterate_orbit(pam, a.z0, opts);
    write_with(a.csv, [&](std::ostream& os) { write_orbit_csv(os, orbit.iterates); });
    write_file(a.svg, render_svg({cobweb_panel(pam, orbit.iterates)}));
    std::cout << "iterations: " << orbit.iterates.size() - 1 << '\n';
    if (!orbit.converged) {
        std::cout << "no period found\n";
        return 0;
    }
    std::cout << "transient: " << orbit.transient_length << '\n'
              << "period: " << *orbit.period << '\n'
              << "signature: " << detect_signature(orbit).str() << '\n'
              << "stability factor: " << stability_factor(pam, detect_signature(orbit)) << '\n';
    return 0;
}

int run_pam_signature(const PamFlags& flags, double z0) {
    const auto pam = flags.resolve();
    pam.validate();
    std::cout << detect_signature(iterate_orbit(pam, z0)).str() << '\n';
    return 0;
}

struct BoundsArgs {
    double a = 0, b = 0, l = 0;
    std::optional<int> L, s;
};

int run_pam_bounds(const BoundsArgs& a) {
    if (!a.L && !a.s) throw UsageError("give --L, --s or both");
    const TransformedPam tp{a.a, a.b, 0.0, a.l};
    const int L = a.L.value_or(1);
    const int s = a.s.value_or(1);
    const auto [lao, sao] = atmost_atleast_bounds(tp, L, s);
    json out{{"a", a.a}, {"b", a.b}, {"l", a.l}};
    if (a.L) {
        const auto th = lao_thresholds(tp, L);
        out["lao"] = {{"L", L}, {"mu1", th.mu1}, {"mu2", th.mu2}, {"window", lao}};
        std::cerr << L << "^1: " << lao.str() << '\n';
    }
    if (a.s) {
        const auto th = sao_thresholds(tp, s);
        out["sao"] = {{"s", s}, {"at_most", th.at_most}, {"at_least", th.at_least}, {"window", sao}};
        std::cerr << "1^" << s << ": " << sao.str() << '\n';
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct TransformArgs {
    PamFlags pam;
    bool inverse = false;
    std::optional<double> a, b, mu, l;
};

int run_pam_transform(const TransformArgs& t) {
    if (t.inverse) {
        if (!(t.a && t.b && t.mu && t.l)) throw UsageError("--inverse needs --a, --b, --mu and --l");
        std::cout << json(inverse_transform({*t.a, *t.b, *t.mu, *t.l})).dump(2) << '\n';
    } else {
        const auto tp = transform(t.pam.resolve());
        json out = tp;
        out["admissible"] = tp.admissible();
        std::cout << out.dump(2) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    PamFlags pam;
    RhoFlags rho;
    bool verify = false;
    std::string out;
};

int run_synth(const SynthArgs& a) {
    const auto target = a.pam.resolve();
    const auto params = synthesize(target, a.rho.resolve());
    json out = params;
    if (a.verify) {
        const auto geom = compute_geometry(params);
        const auto forward = associated_pam(params, geom);
        out["verify"] = {{"associated_pam", forward},
                         {"residual", synthesis_residual(params, target, geom)},
                         {"tolerance", kSynthesisTolerance}};
    }
    if (!a.out.empty()) write_file(a.out, out.dump(2) + "\n");
    std::cout << out.dump(2) << '\n';
    if (a.verify) {
        std::cerr << "alpha " << fixed(params.alpha) << "  beta " << fixed(params.beta) << "  kappa "
                  << fixed(params.kappa) << "  lambda " << fixed(params.lambda) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string config;
    std::string mode = "full";
    PamFlags pam;
    RhoFlags rho;
    std::optional<double> alpha, beta, kappa, lambda;
    std::optional<double> eps, delta, t_max;
    double Z0 = -0.5;
    std::size_t returns = 60;
    bool compare_pam = false;
    std::string out_dir = "simulate_out";
};

CanonicalParams resolve_params(const SimulateArgs& a, const ConfigDocument& doc, CLI::App* cmd) {
    std::optional<CanonicalParams> params = doc.canonical;
    const bool rho_flag = cmd->count("--rho") > 0;
    if (a.pam.any() || (!params && doc.pam)) {
        const auto target = a.pam.resolve(doc.pam);
        params = synthesize(target, rho_flag || !params ? a.rho.resolve() : params->rho);
    }
    if (!params) {
        if (!(a.alpha && a.beta && a.kappa && a.lambda)) {
            throw UsageError("give the parameters via --config, the --a11..--a22 target, or --alpha..--lambda");
        }
        params = CanonicalParams{};
    }
    if (a.alpha) params->alpha = *a.alpha;
    if (a.beta) params->beta = *a.beta;
    if (a.kappa) params->kappa = *a.kappa;
    if (a.lambda) params->lambda = *a.lambda;
    if (rho_flag) params->rho = a.rho.resolve();
    return *params;
}

int run_simulate(const SimulateArgs& a, CLI::App* cmd) {
    const ConfigDocument doc = a.config.empty() ? ConfigDocument{} : load_config(a.config);
    const auto params = resolve_params(a, doc, cmd);
    SimConfig cfg = doc.sim.value_or(SimConfig{});
    if (a.eps) cfg.eps = *a.eps;
    if (a.delta) cfg.delta = *a.delta;
    if (a.t_max) cfg.max_slow_time = *a.t_max;

    const std::filesystem::path dir(a.out_dir);
    const auto geom = compute_geometry(params);
    json report{{"mode", a.mode}, {"params", params}};

    std::optional<Signature> sig;
    int status = 0;
    if (a.mode == "hybrid") {
        if (!(cfg.delta >= 0.0)) throw DomainError("delta must be nonnegative");
        const auto h = hybrid_simulate(params, cfg.delta, a.Z0, a.returns);
        write_with(dir / "returns.csv", [&](std::ostream& os) { write_orbit_csv(os, h.returns); });
        report["delta"] = cfg.delta;
        report["returns"] = h.returns;
        sig = h.signature;
        if (a.compare_pam) {
            const auto orbit = iterate_orbit(associated_pam(params, geom), a.Z0);
            double gap = 0.0;
            for (std::size_t i = 0; i < std::min(orbit.iterates.size(), h.returns.size()); ++i) {
                gap = std::max(gap, std::abs(orbit.iterates[i] - h.returns[i]));
            }
            report["max_gap_to_pam"] = gap;
        }
    } else {
        cfg.validate();
        const auto sec = default_section(geom);
        TimeSeries ts;
        try {
            ts = integrate_full(params, cfg, sec);
        } catch (const StepSizeUnderflow& e) {
            throw Inconclusive(std::string("step size underflow, likely a canard passage: ") + e.what());
        }
        const auto crossings = detect_section_crossings(ts, sec);
        write_with(dir / "series.csv", [&](std::ostream& os) { write_series_csv(os, ts); });
        write_with(dir / "crossings.csv",
                   [&](std::ostream& os) { write_crossings_csv(os, crossings, cfg.delta, params.z0); });
        auto panels = series_panels(visual_rescale(ts, cfg.delta, params.z0), 1.0, 0.0);
        panels.push_back(projection_panel(visual_rescale(ts, cfg.delta, params.z0)));
        write_file(dir / "series.svg", render_svg(panels));
        report["sim"] = cfg;
        report["crossings"] = crossings.size();
        report["canard_hole_radius"] = canard_hole_radius(cfg.eps, cfg.delta);

        const auto cls = classify_series_detailed(ts, geom, sec);
        sig = cls.signature;
        std::vector<double> cycle;
        bool hole = false;
        for (double z : cls.cycle_z) {
            const double Z = (z - params.z0) / cfg.delta;
            cycle.push_back(Z);
            hole = hole || in_canard_hole(Z, cfg.eps, cfg.delta);
        }
        report["period"] = cls.period;
        report["cycle_Z"] = cycle;
        report["canard_hole"] = hole;
        if (hole) status = kExitInconclusive;
    }
    report["signature"] = sig ? sig->str() : "";
    if (a.compare_pam) {
        const auto check = signature_from_both_sides(associated_pam(params, geom));
        report["pam_signature"] = check.from_negative;
        report["match"] = sig.has_value() && sig->str() == check.from_negative;
    }
    write_file(dir / "report.json", report.dump(2) + "\n");
    std::cout << report.dump(2) << '\n';
    if (status == kExitInconclusive) std::cerr << "inconclusive: the cycle passes through the canard hole\n";
    return status;
}

// ---------------------------------------------------------------------------
// verify-tables

struct VerifyArgs {
    double tol1 = 1e-3;
    double tol2 = 1e-4;
    std::string json_out;
};

int run_verify_tables(const VerifyArgs& a) {
    const auto t1 = verify_table1();
    const auto t2 = verify_table2();
    json rows1 = json::array(), rows2 = json::array();
    int params_ok = 0, sig_ok = 0, interval_ok = 0, inside_ok = 0;
    std::cout << "Synthesis table (tol " << a.tol1 << ") and signatures\n";
    for (const auto& r : t1) {
        const bool p_ok = r.params_ok(a.tol1);
        params_ok += p_ok;
        sig_ok += r.signature_ok();
        std::cout << "  " << std::setw(4) << r.row.signature << "  alpha " << fixed(r.computed.alpha) << "  beta "
                  << fixed(r.computed.beta) << "  kappa " << fixed(r.computed.kappa) << "  lambda "
                  << fixed(r.computed.lambda) << "  max err " << std::scientific << std::setprecision(2)
                  << r.max_param_error << std::defaultfloat << "  params " << (p_ok ? "ok" : "FAIL") << "  signature "
                  << (r.signature_ok() ? "ok" : "FAIL (" + r.signature.from_negative + ")") << '\n';
        rows1.push_back({{"signature", r.row.signature},
                         {"target", r.row.pam},
                         {"computed", r.computed},
                         {"max_param_error", r.max_param_error},
                         {"params_ok", p_ok},
                         {"signature_from_negative", r.signature.from_negative},
                         {"signature_from_positive", r.signature.from_positive},
                         {"signature_ok", r.signature_ok()},
                         {"error", r.error}});
    }
    std::cout << "Bounds table: predicted mu windows (tol " << a.tol2 << ")\n";
    for (const auto& r : t2) {
        const bool i_ok = r.interval_ok(a.tol2);
        interval_ok += i_ok;
        inside_ok += r.actual_inside;
        std::cout << "  " << std::setw(4) << r.row.signature << "  computed " << r.computed.str() << "  printed ["
                  << fixed(r.row.lower) << ", " << fixed(r.row.upper) << "]  interval " << (i_ok ? "ok" : "FAIL")
                  << "  actual mu " << r.row.actual_mu << (r.actual_inside ? " inside" : " OUTSIDE") << '\n';
        rows2.push_back({{"signature", r.row.signature},
                         {"computed", r.computed},
                         {"printed", {r.row.lower, r.row.upper}},
                         {"max_endpoint_error", r.max_endpoint_error},
                         {"interval_ok", i_ok},
                         {"actual_mu", r.row.actual_mu},
                         {"actual_inside", r.actual_inside},
                         {"actual_signature", r.actual_signature.from_negative}});
    }
    std::cout << "summary: table1 params " << params_ok << "/" << t1.size() << ", table1 signatures " << sig_ok << "/"
              << t1.size() << ", table2 intervals " << interval_ok << "/" << t2.size() << ", table2 actual mu "
              << inside_ok << "/" << t2.size() << '\n';
    if (!a.json_out.empty()) {
        const json out{{"table1", rows1},
                       {"table2", rows2},
                       {"summary",
                        {{"table1_params", params_ok},
                         {"table1_signatures", sig_ok},
                         {"table2_intervals", interval_ok},
                         {"table2_actual_inside", inside_ok}}}};
        write_file(a.json_out, out.dump(2) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// crossover

struct CrossoverArgs {
    std::vector<double> from, to;
    double mu = 0.0;
    std::size_t grid = 201;
    RhoFlags rho;
    std::string json_out;
    std::string svg = "crossover.svg";
};

int run_crossover(const CrossoverArgs& a) {
    auto pam = [](const std::vector<double>& v) { return PamCoefficients{v[0], v[1], v[2], v[3]}; };
    const auto spec = crossover_from_endpoints(pam(a.from), pam(a.to), a.mu, a.grid, a.rho.resolve());
    const auto scan = crossover_scan(spec);

    std::cout << "alpha " << fixed(spec.alpha) << "  beta " << fixed(spec.beta) << "  mu " << spec.mu << '\n'
              << "kappa " << fixed(spec.kappa_from) << " -> " << fixed(spec.kappa_to) << "  lambda "
              << fixed(spec.lambda_from) << " -> " << fixed(spec.lambda_to) << '\n';
    json windows = json::array();
    for (const auto& w : scan.windows) {
        const std::string name = w.signature.empty() ? "(none)" : w.signature;
        std::cout << "  " << std::setw(12) << name << "  t [" << fixed(w.t_lo, 3) << ", " << fixed(w.t_hi, 3)
                  << "]  kappa [" << fixed(w.kappa_lo) << ", " << fixed(w.kappa_hi) << "]  lambda ["
                  << fixed(w.lambda_lo) << ", " << fixed(w.lambda_hi) << "]  points " << w.points << '\n';
        windows.push_back({{"signature", w.signature},
                           {"t", {w.t_lo, w.t_hi}},
                           {"kappa", {w.kappa_lo, w.kappa_hi}},
                           {"lambda", {w.lambda_lo, w.lambda_hi}},
                           {"points", w.points}});
    }

    Polyline lao_share{{}, "#1f4e9a", "LAO share of the period"};
    for (const auto& pt : scan.points) {
        if (pt.signature.empty()) continue;
        const auto sig = Signature::parse(pt.signature);
        lao_share.points.emplace_back(pt.kappa, static_cast<double>(sig.total_lao()) / sig.period());
    }
    write_file(a.svg, render_svg({{"crossover scan, mu = " + fixed(spec.mu, 3), "kappa", "L / (L + s)", {lao_share}}}));

    if (!a.json_out.empty()) {
        json points = json::array();
        for (const auto& pt : scan.points) {
            points.push_back({{"t", pt.t},
                              {"kappa", pt.kappa},
                              {"lambda", pt.lambda},
                              {"pam", pt.pam},
                              {"signature", pt.signature},
                              {"signature_positive", pt.signature_positive}});
        }
        const json out{{"alpha", spec.alpha}, {"beta", spec.beta}, {"mu", spec.mu},
                       {"windows", windows},  {"points", points}};
        write_file(a.json_out, out.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-mode oscillations from piecewise affine maps"};
    app.require_subcommand(1);

    // pam
    auto* pam = app.add_subcommand("pam", "piecewise affine map utilities");
    pam->require_subcommand(1);

    PamIterateArgs iter_args;
    auto* iterate = pam->add_subcommand("iterate", "iterate the map; writes an orbit CSV and a cobweb SVG");
    iter_args.pam.add(iterate);
    iterate->add_option("--z0", iter_args.z0, "initial value");
    iterate->add_option("--max-iters", iter_args.max_iters, "iteration cap");
    iterate->add_option("--csv", iter_args.csv, "orbit CSV path");
    iterate->add_option("--svg", iter_args.svg, "cobweb SVG path");

    PamFlags sig_flags;
    double sig_z0 = -0.5;
    auto* signature = pam->add_subcommand("signature", "print the signature of the periodic orbit");
    sig_flags.add(signature);
    signature->add_option("--z0", sig_z0, "initial value");

    BoundsArgs bounds_args;
    auto* bounds = pam->add_subcommand("bounds", "at-most/at-least mu windows as JSON");
    bounds->add_option("--a", bounds_args.a, "slope for Z < 0")->required();
    bounds->add_option("--b", bounds_args.b, "slope for Z > 0")->required();
    bounds->add_option("--l", bounds_args.l, "jump l = a22 - a12")->required();
    bounds->add_option("--L", bounds_args.L, "number of consecutive LAOs");
    bounds->add_option("--s", bounds_args.s, "number of consecutive SAOs");

    TransformArgs transform_args;
    auto* transform_cmd = pam->add_subcommand("transform", "(a11, a12, a21, a22) <-> (a, b, mu, l)");
    transform_args.pam.add(transform_cmd);
    transform_cmd->add_flag("--inverse", transform_args.inverse, "map (a, b, mu, l) back to coefficients");
    transform_cmd->add_option("--a", transform_args.a);
    transform_cmd->add_option("--b", transform_args.b);
    transform_cmd->add_option("--mu", transform_args.mu);
    transform_cmd->add_option("--l", transform_args.l);

    // synth
    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "canonical-family parameters realising a target PAM");
    synth_args.pam.add(synth);
    synth_args.rho.add(synth);
    synth->add_flag("--verify", synth_args.verify, "recompute the associated PAM and print the residual");
    synth->add_option("--out", synth_args.out, "also write the JSON here");

    // simulate
    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "full or hybrid simulation with signature detection");
    simulate->add_option("--config", sim_args.config, "JSON config with sections pam, canonical, sim");
    simulate->add_option("--mode", sim_args.mode)->check(CLI::IsMember({"full", "hybrid"}));
    sim_args.pam.add(simulate);
    sim_args.rho.add(simulate);
    simulate->add_option("--alpha", sim_args.alpha);
    simulate->add_option("--beta", sim_args.beta);
    simulate->add_option("--kappa", sim_args.kappa);
    simulate->add_option("--lambda", sim_args.lambda);
    simulate->add_option("--eps", sim_args.eps);
    simulate->add_option("--delta", sim_args.delta);
    simulate->add_option("--t-max", sim_args.t_max, "slow-time horizon (full mode)");
    simulate->add_option("--Z0", sim_args.Z0, "initial Z (hybrid mode)");
    simulate->add_option("--returns", sim_args.returns, "number of L4 jumps (hybrid mode)");
    simulate->add_flag("--compare-pam", sim_args.compare_pam, "add the PAM signature and a match flag");
    simulate->add_option("--out-dir", sim_args.out_dir, "directory for CSV, SVG and report.json");

    // verify-tables
    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify-tables", "check both reference tables");
    verify->add_option("--tol1", verify_args.tol1, "parameter tolerance for table 1");
    verify->add_option("--tol2", verify_args.tol2, "endpoint tolerance for table 2");
    verify->add_option("--json", verify_args.json_out, "write a JSON report");

    // crossover
    CrossoverArgs cross_args;
    auto* crossover = app.add_subcommand("crossover", "scan (kappa, lambda) between two PAMs at fixed mu");
    crossover->add_option("--from", cross_args.from, "a11 a12 a21 a22 of the first endpoint")
        ->expected(4)
        ->required();
    crossover->add_option("--to", cross_args.to, "a11 a12 a21 a22 of the second endpoint")->expected(4)->required();
    crossover->add_option("--mu", cross_args.mu, "mu held fixed along the scan")->required();
    crossover->add_option("--grid", cross_args.grid, "number of grid points")->check(CLI::Range(2, 100000));
    cross_args.rho.add(crossover);
    crossover->add_option("--json", cross_args.json_out, "write a JSON report");
    crossover->add_option("--svg", cross_args.svg, "SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*iterate) return run_pam_iterate(iter_args);
        if (*signature) return run_pam_signature(sig_flags, sig_z0);
        if (*bounds) return run_pam_bounds(bounds_args);
        if (*transform_cmd) return run_pam_transform(transform_args);
        if (*synth) return run_synth(synth_args);
        if (*simulate) return run_simulate(sim_args, simulate);
        if (*verify) return run_verify_tables(verify_args);
        if (*crossover) return run_crossover(cross_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return kExitInconclusive;
    } catch (const DiscontinuityHit& e) {
        std::cerr << "discontinuity: " << e.what() << '\n';
        return kExitDomain;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const SingularSystem& e) {
        std::cerr << "singular system: " << e.what() << '\n';
        return kExitDomain;
    } catch (const InvalidRho& e) {
        std::cerr << "invalid rho: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
