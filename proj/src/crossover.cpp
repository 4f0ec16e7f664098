#include "mmo/crossover.hpp"

#include "mmo/associated_pam.hpp"
#include "mmo/errors.hpp"
#include "mmo/reference_tables.hpp"
#include "mmo/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace mmo {

CrossoverSpec crossover_from_endpoints(const PamCoefficients& from, const PamCoefficients& to, double mu,
                                       std::size_t grid, const RhoSpec& rho) {
    if (from.a11 != to.a11 || from.a21 != to.a21) {
        throw DomainError("crossover endpoints must share both slopes");
    }
    const auto a = synthesize(from, rho);
    const auto b = synthesize(to, rho);
    return {a.alpha, a.beta, rho, a.kappa, a.lambda, b.kappa, b.lambda, mu, grid};
}

PamCoefficients pam_at_mu(const CanonicalParams& params, const ManifoldGeometry& geom, double mu) {
    auto tp = transform(associated_pam(params, geom));
    tp.mu = mu;
    return inverse_transform(tp);
}

CrossoverPoint crossover_probe(const CrossoverSpec& spec, double kappa, double lambda, const ManifoldGeometry& geom) {
    CanonicalParams params{spec.alpha, spec.beta, kappa, lambda, spec.rho};
    CrossoverPoint pt;
    pt.kappa = kappa;
    pt.lambda = lambda;
    pt.pam = pam_at_mu(params, geom, spec.mu);
    const auto sig = signature_from_both_sides(pt.pam);
    pt.signature = sig.from_negative;
    pt.signature_positive = sig.from_positive;
    return pt;
}

CrossoverScan crossover_scan(const CrossoverSpec& spec) {
    if (spec.grid < 2) throw DomainError("crossover grid needs at least two points");
    const auto geom = compute_geometry(CanonicalParams{spec.alpha, spec.beta, 0, 0, spec.rho});

    const std::size_t n = spec.grid;
    CrossoverScan scan;
    scan.points.resize(n);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            auto pt = crossover_probe(spec, std::lerp(spec.kappa_from, spec.kappa_to, t),
                                      std::lerp(spec.lambda_from, spec.lambda_to, t), geom);
            pt.t = t;
            scan.points[i] = std::move(pt);
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, work, w * n / workers, (w + 1) * n / workers));
    }
    for (auto& j : jobs) j.get();

    for (const auto& pt : scan.points) {
        if (scan.windows.empty() || scan.windows.back().signature != pt.signature) {
            scan.windows.push_back({pt.signature, pt.t, pt.t, pt.kappa, pt.kappa, pt.lambda, pt.lambda, 0});
        }
        auto& w = scan.windows.back();
        w.t_hi = pt.t;
        w.kappa_lo = std::min(w.kappa_lo, pt.kappa);
        w.kappa_hi = std::max(w.kappa_hi, pt.kappa);
        w.lambda_lo = std::min(w.lambda_lo, pt.lambda);
        w.lambda_hi = std::max(w.lambda_hi, pt.lambda);
        ++w.points;
    }
    return scan;
}

}  // namespace mmo
