#pragma once

// Simulation of the canonical family: the full stiff 3D system in slow time,
// Poincare-section sampling, a finite-delta hybrid (reduced flow + jumps)
// simulator, and LAO/SAO classification of time series.

#include "mmo/canonical.hpp"
#include "mmo/pam.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace mmo {

struct SimConfig {
    double eps = 1e-7;
    double delta = 5e-3;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_slow_time = 40.0;
    /// Largest step of the implicit integrator, in slow time.
    double max_dt = 0.01;
    /// Stop after this many section crossings (0: run to max_slow_time).
    std::size_t max_crossings = 0;
    /// Defaults to x = 1.3 on the outer right sheet, y = F(1.3, z0), z = z0 - delta / 2.
    std::optional<std::array<double, 3>> initial_state;

    /// eps in (0, 1e-3], delta in (0, 0.1], tolerances in [1e-14, 1e-6].
    void validate() const;
    [[nodiscard]] std::array<double, 3> start(const CanonicalParams& params) const;
};

struct Sample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct TimeSeries {
    std::vector<Sample> samples;
    /// Indices into samples that lie exactly on the section.
    std::vector<std::size_t> event_marks;
};

/// The plane {x = x_section}, counted when crossed in `direction` (-1: decreasing x).
struct SectionSpec {
    double x_section = 0.5;
    int direction = -1;
};

/// Midway between x3 and x4, where the fall from L4 passes once per oscillation.
[[nodiscard]] SectionSpec default_section(const ManifoldGeometry& geom) noexcept;

struct Crossing {
    double t = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Slow-time integration with a Rosenbrock method (order 4, analytic Jacobian).
/// Output points keep consecutive |dx| < 0.05; section crossings are refined on
/// the dense output and recorded in event_marks.
/// Throws StepSizeUnderflow, NonFiniteState, and DomainError if x leaves the working interval.
[[nodiscard]] TimeSeries integrate_full(const CanonicalParams& params, const SimConfig& cfg,
                                        const SectionSpec& sec = {});

/// Sign changes of x - x_section in the section's direction, located by linear interpolation.
[[nodiscard]] std::vector<Crossing> detect_section_crossings(const TimeSeries& series, const SectionSpec& sec);

struct HybridOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double period_tol = 1e-7;
};

struct HybridResult {
    /// Z at each jump from L4, starting with Z0.
    std::vector<double> returns;
    /// Landing sheet after each L4 jump: true for the outer left sheet (an LAO).
    std::vector<bool> lao;
    std::optional<Signature> signature;
};

/// Reduced flow on the attracting sheets in the rescaled coordinate Z = (z - z0) / delta,
///     dZ/dx = (G + Z H) F_x / (J - delta F_z (G + Z H)),
/// with instantaneous jumps at the folds. delta = 0 reproduces the associated PAM.
/// Throws DiscontinuityHit when an L4 jump starts at |Z| <= the PAM guard.
[[nodiscard]] HybridResult hybrid_simulate(const CanonicalParams& params, double delta, double Z0,
                                           std::size_t n_returns, const HybridOptions& opts = {});

/// Smallest p with |v[n] - v[n-p]| <= tol for the last 3p entries.
[[nodiscard]] std::optional<std::size_t> detect_period(const std::vector<double>& values, double tol);

/// LAO/SAO threshold (xhat4 + x2) / 2.
[[nodiscard]] double lao_threshold(const ManifoldGeometry& geom) noexcept;

struct SeriesClassification {
    Signature signature;
    std::size_t period = 0;
    /// Number of complete oscillations found between section crossings.
    std::size_t oscillations = 0;
    /// Z at the section crossings of the final period.
    std::vector<double> cycle_z;
};

/// Full periods that must repeat before a series is classified.
inline constexpr std::size_t kClassifyPeriods = 3;

/// Oscillations run between consecutive section crossings; an oscillation is an
/// LAO when its minimum x is below lao_threshold. The last kClassifyPeriods periods
/// must repeat (oscillation type, and crossing y and z to 1e-3 of their range).
/// Throws NotPeriodic.
[[nodiscard]] SeriesClassification classify_series_detailed(const TimeSeries& series, const ManifoldGeometry& geom,
                                                            const SectionSpec& sec = {});
[[nodiscard]] Signature classify_series(const TimeSeries& series, const ManifoldGeometry& geom,
                                        const SectionSpec& sec = {});

/// x -> 2x/7, y -> 3y/2, z -> (z - z0) / delta.
[[nodiscard]] TimeSeries visual_rescale(const TimeSeries& series, double delta, double z0 = 0.0);
[[nodiscard]] TimeSeries inverse_visual_rescale(const TimeSeries& series, double delta, double z0 = 0.0);

/// Radius in Z of the neighbourhood of the jump point excluded from signature
/// statistics: kCanardHoleConstant * eps^(2/3) / delta. In the full system the
/// LAO/SAO switch sits near Z = -24 eps^(2/3) / delta; the constant is twice that.
inline constexpr double kCanardHoleConstant = 50.0;
[[nodiscard]] double canard_hole_radius(double eps, double delta) noexcept;
[[nodiscard]] bool in_canard_hole(double Z, double eps, double delta) noexcept;

}  // namespace mmo
