#include "mmo/dynamics.hpp"

#include "mmo/detail/stiff_stepper.hpp"
#include "mmo/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmo {

namespace odeint = boost::numeric::odeint;

// ---------------------------------------------------------------------------
// Configuration

void SimConfig::validate() const {
    if (!(eps > 0.0 && eps <= 1e-3)) throw DomainError("eps must lie in (0, 1e-3]");
    if (!(delta > 0.0 && delta <= 0.1)) throw DomainError("delta must lie in (0, 0.1]");
    for (double tol : {rel_tol, abs_tol}) {
        if (!(tol >= 1e-14 && tol <= 1e-6)) throw DomainError("integrator tolerances must lie in [1e-14, 1e-6]");
    }
    if (!(max_slow_time > 0.0)) throw DomainError("max_slow_time must be positive");
    if (!(max_dt > 0.0)) throw DomainError("max_dt must be positive");
}

std::array<double, 3> SimConfig::start(const CanonicalParams& params) const {
    if (initial_state) return *initial_state;
    const double z = params.z0 - 0.5 * delta;
    return {1.3, eval_F(1.3, z), z};
}

SectionSpec default_section(const ManifoldGeometry& geom) noexcept { return {0.5 * (geom.x3 + geom.x4), -1}; }

double lao_threshold(const ManifoldGeometry& geom) noexcept { return 0.5 * (geom.xhat4 + geom.x2); }

double canard_hole_radius(double eps, double delta) noexcept {
    return kCanardHoleConstant * std::pow(eps, 2.0 / 3.0) / delta;
}

bool in_canard_hole(double Z, double eps, double delta) noexcept {
    return std::abs(Z) <= canard_hole_radius(eps, delta);
}

// ---------------------------------------------------------------------------
// Full system

namespace {

bool crosses(double before, double after, int direction) {
    return direction < 0 ? (before > 0.0 && after <= 0.0) : (before < 0.0 && after >= 0.0);
}

Sample to_sample(double t, const detail::State3& s) { return {t, s[0], s[1], s[2]}; }

}  // namespace

TimeSeries integrate_full(const CanonicalParams& params, const SimConfig& cfg, const SectionSpec& sec) {
    params.validate();
    cfg.validate();

    const double eps = cfg.eps;
    const double delta = cfg.delta;
    detail::StiffSystem system{
        [&params, eps, delta](const detail::State3& s, detail::State3& ds) {
            const auto t = eval_terms(params, s[0]);
            ds[0] = (s[1] - eval_F(s[0], s[2])) / eps;
            ds[1] = t.J;
            ds[2] = delta * t.G + (s[2] - params.z0) * t.H;
        },
        [&params, eps, delta](const detail::State3& s, detail::Matrix3& jac) {
            const auto t = eval_terms(params, s[0]);
            jac[0] = {-eval_Fx(s[0], s[2]) / eps, 1.0 / eps, -eval_Fz(s[0], s[2]) / eps};
            jac[1] = {-1.0, 0.0, 0.0};
            jac[2] = {delta * t.dG + (s[2] - params.z0) * t.dH, 0.0, t.H};
        },
    };
    detail::StiffStepper stepper(std::move(system), cfg.abs_tol, cfg.rel_tol, cfg.max_dt);
    const auto init = cfg.start(params);
    stepper.initialize(init, 0.0, std::min(cfg.max_dt, 1e-3 * cfg.eps));

    TimeSeries out;
    out.samples.push_back(to_sample(0.0, init));
    auto at = [&](double t) { return to_sample(t, stepper.calc_state(t)); };
    auto side = [&](const Sample& s) { return s.x - sec.x_section; };

    // Append b, inserting points so consecutive |dx| < 0.05 and refining section crossings.
    auto emit = [&](auto&& self, const Sample& a, const Sample& b, int depth) -> void {
        if (std::abs(b.x - a.x) >= 0.05 && depth < 40) {
            const Sample mid = at(0.5 * (a.t + b.t));
            self(self, a, mid, depth + 1);
            self(self, mid, b, depth + 1);
            return;
        }
        if (crosses(side(a), side(b), sec.direction)) {
            double lo = a.t, hi = b.t;
            for (int i = 0; i < 100 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
                const double m = 0.5 * (lo + hi);
                (crosses(side(a), side(at(m)), sec.direction) ? hi : lo) = m;
            }
            Sample c = at(hi);
            c.x = sec.x_section;
            if (c.t > out.samples.back().t) {
                out.samples.push_back(c);
                out.event_marks.push_back(out.samples.size() - 1);
            }
        }
        if (b.t > out.samples.back().t) out.samples.push_back(b);
    };

    while (stepper.current_time() < cfg.max_slow_time) {
        std::pair<double, double> span;
        try {
            span = stepper.do_step();
        } catch (const detail::StepAdjustmentFailure& e) {
            std::ostringstream os;
            os << "step size underflow at t = " << stepper.current_time() << " (x = " << stepper.current_state()[0]
               << "): " << e.message;
            throw StepSizeUnderflow(os.str());
        }
        const auto now = stepper.current_state();
        if (!std::all_of(now.begin(), now.end(), [](double v) { return std::isfinite(v); })) {
            std::ostringstream os;
            os << "non-finite state at t = " << span.second;
            throw NonFiniteState(os.str());
        }
        const Sample a = out.samples.back();
        emit(emit, a, to_sample(span.second, now), 0);
        if (cfg.max_crossings > 0 && out.event_marks.size() >= cfg.max_crossings) break;
    }
    return out;
}

std::vector<Crossing> detect_section_crossings(const TimeSeries& series, const SectionSpec& sec) {
    std::vector<Crossing> out;
    const auto& s = series.samples;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double d0 = s[i - 1].x - sec.x_section;
        const double d1 = s[i].x - sec.x_section;
        if (!crosses(d0, d1, sec.direction)) continue;
        const double w = d0 == d1 ? 1.0 : d0 / (d0 - d1);
        auto lerp = [&](double u, double v) { return u + w * (v - u); };
        out.push_back({lerp(s[i - 1].t, s[i].t), lerp(s[i - 1].y, s[i].y), lerp(s[i - 1].z, s[i].z)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hybrid simulator

namespace {

using ZState = std::array<double, 1>;

template <class Fn>
double bracketed_root(Fn&& f, double a, double b) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "no landing point on [" << a << ", " << b << "]";
        throw GeometryFailure(os.str());
    }
    std::uintmax_t iters = 200;
    auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-14; };
    const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (r.first + r.second);
}

// Abscissa on the outer right sheet at height y.
double land_right(double y, double z, const ManifoldGeometry& g) {
    return bracketed_root([&](double x) { return eval_F(x, z) - y; }, g.x4, kWorkingXMax);
}

struct SheetRun {
    double x_exit = 0.0;
    double Z_exit = 0.0;
};

// Integrate dZ/dx from (x0, Z0) in direction dir until F_x(x, delta Z) drops to zero.
// The independent variable is s = dir * x so the stepper always moves forward.
SheetRun follow_sheet(const CanonicalParams& params, double delta, double x0, double Z0, int dir, double x_limit,
                      const HybridOptions& opts) {
    const double sd = dir;
    auto rhs = [&](const ZState& st, ZState& ds, double s) {
        const double x = sd * s;
        const double z = params.z0 + delta * st[0];
        const auto t = eval_terms(params, x);
        const double w = t.G + st[0] * t.H;
        ds[0] = sd * w * eval_Fx(x, z) / (t.J - delta * eval_Fz(x, z) * w);
    };
    auto fold = [&](double s, double Z) { return eval_Fx(sd * s, params.z0 + delta * Z); };

    auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, 0.02, odeint::runge_kutta_dopri5<ZState>());
    const double s0 = sd * x0;
    stepper.initialize(ZState{Z0}, s0, 1e-4);
    bool armed = fold(s0, Z0) > 0.0;
    ZState probe{};
    double prev = s0;
    while (true) {
        const double s = stepper.do_step(rhs).second;
        const double Z = stepper.current_state()[0];
        if (!std::isfinite(Z)) throw NonFiniteState("hybrid reduced flow produced a non-finite Z");
        const double g = fold(s, Z);
        if (!armed) {
            armed = g > 0.0;
        } else if (g <= 0.0) {
            double lo = prev, hi = s;  // fold between lo (g > 0) and hi (g <= 0)
            for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
                const double m = 0.5 * (lo + hi);
                stepper.calc_state(m, probe);
                (fold(m, probe[0]) > 0.0 ? lo : hi) = m;
            }
            stepper.calc_state(hi, probe);
            return {sd * hi, probe[0]};
        }
        if (s > sd * x_limit) {
            std::ostringstream os;
            os << "reduced flow left the sheet without reaching a fold (x = " << sd * s << ")";
            throw GeometryFailure(os.str());
        }
        prev = s;
    }
}

}  // namespace

std::optional<std::size_t> detect_period(const std::vector<double>& v, double tol) {
    const std::size_t n = v.size();
    for (std::size_t p = 1; 4 * p <= n; ++p) {
        bool ok = true;
        for (std::size_t k = n - 3 * p; k < n && ok; ++k) ok = std::abs(v[k] - v[k - p]) <= tol;
        if (ok) return p;
    }
    return std::nullopt;
}

HybridResult hybrid_simulate(const CanonicalParams& params, double delta, double Z0, std::size_t n_returns,
                             const HybridOptions& opts) {
    params.validate();
    if (!(delta >= 0.0)) throw DomainError("delta must be nonnegative");
    HybridResult out;
    double Z = Z0;
    for (std::size_t n = 0;; ++n) {
        if (std::abs(Z) <= kDiscontinuityGuard) throw DiscontinuityHit(Z);
        out.returns.push_back(Z);
        if (n == n_returns) break;

        // Jump from L4 at height F(x4(z), z).
        double z = params.z0 + delta * Z;
        auto g = compute_geometry_at(z);
        const bool lao = delta == 0.0 ? Z < 0.0 : g.y4 <= g.y2;
        out.lao.push_back(lao);

        double x_start = 0.0;
        if (lao) {
            x_start = delta == 0.0 ? g.xhat4
                                   : bracketed_root([&](double x) { return eval_F(x, z) - g.y4; }, g.left_edge, g.x1);
            const auto s1 = follow_sheet(params, delta, x_start, Z, +1, g.x1 + 0.5, opts);
            Z = s1.Z_exit;
            z = params.z0 + delta * Z;
            x_start = land_right(eval_F(s1.x_exit, z), z, compute_geometry_at(z));
        } else {
            x_start = delta == 0.0 ? g.x2
                                   : bracketed_root([&](double x) { return eval_F(x, z) - g.y4; }, g.x2, g.x3);
            const auto s2 = follow_sheet(params, delta, x_start, Z, +1, g.x3 + 0.5, opts);
            Z = s2.Z_exit;
            z = params.z0 + delta * Z;
            x_start = land_right(eval_F(s2.x_exit, z), z, compute_geometry_at(z));
        }
        g = compute_geometry_at(z);
        Z = follow_sheet(params, delta, x_start, Z, -1, g.x4 - 0.5, opts).Z_exit;
    }

    if (const auto p = detect_period(out.returns, opts.period_tol)) {
        const auto& l = out.lao;
        out.signature = Signature::from_cycle(std::vector<bool>(l.end() - static_cast<long>(*p), l.end()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classification and rescaling

SeriesClassification classify_series_detailed(const TimeSeries& series, const ManifoldGeometry& geom,
                                              const SectionSpec& sec) {
    const auto& s = series.samples;
    std::vector<std::size_t> marks = series.event_marks;
    if (marks.empty()) {
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (crosses(s[i - 1].x - sec.x_section, s[i].x - sec.x_section, sec.direction)) marks.push_back(i);
        }
    }
    if (marks.size() < 3) throw NotPeriodic("fewer than two complete oscillations in the series");

    const double threshold = lao_threshold(geom);
    std::vector<bool> lao;
    std::vector<double> ys, zs;
    for (std::size_t k = 0; k + 1 < marks.size(); ++k) {
        double xmin = s[marks[k]].x;
        for (std::size_t i = marks[k]; i <= marks[k + 1]; ++i) xmin = std::min(xmin, s[i].x);
        lao.push_back(xmin < threshold);
        ys.push_back(s[marks[k]].y);
        zs.push_back(s[marks[k]].z);
    }

    auto range = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    const double ytol = 1e-3 * range(ys) + 1e-9;
    const double ztol = 1e-3 * range(zs) + 1e-9;

    const std::size_t n = lao.size();
    for (std::size_t p = 1; kClassifyPeriods * p <= n; ++p) {
        bool ok = true;
        for (std::size_t k = n - (kClassifyPeriods - 1) * p; k < n && ok; ++k) {
            ok = lao[k] == lao[k - p] && std::abs(ys[k] - ys[k - p]) <= ytol && std::abs(zs[k] - zs[k - p]) <= ztol;
        }
        if (!ok) continue;
        SeriesClassification c;
        c.signature = Signature::from_cycle(std::vector<bool>(lao.end() - static_cast<long>(p), lao.end()));
        c.period = p;
        c.oscillations = n;
        c.cycle_z.assign(zs.end() - static_cast<long>(p), zs.end());
        return c;
    }
    std::ostringstream os;
    os << "oscillation pattern does not repeat over " << kClassifyPeriods << " periods in " << n << " oscillations";
    throw NotPeriodic(os.str());
}

Signature classify_series(const TimeSeries& series, const ManifoldGeometry& geom, const SectionSpec& sec) {
    return classify_series_detailed(series, geom, sec).signature;
}

TimeSeries visual_rescale(const TimeSeries& series, double delta, double z0) {
    TimeSeries out = series;
    for (auto& s : out.samples) {
        s.x *= 2.0 / 7.0;
        s.y *= 1.5;
        s.z = (s.z - z0) / delta;
    }
    return out;
}

TimeSeries inverse_visual_rescale(const TimeSeries& series, double delta, double z0) {
    TimeSeries out = series;
    for (auto& s : out.samples) {
        s.x *= 3.5;
        s.y /= 1.5;
        s.z = z0 + delta * s.z;
    }
    return out;
}

}  // namespace mmo
