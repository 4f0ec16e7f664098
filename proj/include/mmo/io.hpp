#pragma once

// Artifact formats: JSON for parameters and configs, CSV for series and orbits,
// and minimal SVG 1.1 line plots.

#include "mmo/canonical.hpp"
#include "mmo/dynamics.hpp"
#include "mmo/pam.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mmo {

// ---------------------------------------------------------------------------
// JSON
//
// CanonicalParams: {"alpha", "beta", "kappa", "lambda", "z0",
//                   "rho": "fixed_rational" | {"quadratic": {"p", "q"}}}
// PamCoefficients: {"a11", "a12", "a21", "a22"}
// SimConfig:       {"eps", "delta", "rel_tol", "abs_tol", "max_slow_time", "max_dt",
//                   "max_crossings", "initial_state": [x, y, z]}
// Missing keys keep their defaults; unknown keys are rejected.

void to_json(nlohmann::json& j, const RhoSpec& rho);
void from_json(const nlohmann::json& j, RhoSpec& rho);
void to_json(nlohmann::json& j, const CanonicalParams& p);
void from_json(const nlohmann::json& j, CanonicalParams& p);
void to_json(nlohmann::json& j, const PamCoefficients& p);
void from_json(const nlohmann::json& j, PamCoefficients& p);
void to_json(nlohmann::json& j, const TransformedPam& p);
void to_json(nlohmann::json& j, const SimConfig& c);
void from_json(const nlohmann::json& j, SimConfig& c);
void to_json(nlohmann::json& j, const MuInterval& m);

/// A config document with optional sections {"pam", "canonical", "sim"}.
struct ConfigDocument {
    std::optional<PamCoefficients> pam;
    std::optional<CanonicalParams> canonical;
    std::optional<SimConfig> sim;
};

/// Throws ConfigError on unreadable files, malformed JSON or bad keys.
[[nodiscard]] ConfigDocument parse_config(const std::string& text);
[[nodiscard]] ConfigDocument load_config(const std::string& path);

// ---------------------------------------------------------------------------
// CSV

/// Header "t,x,y,z".
void write_series_csv(std::ostream& os, const TimeSeries& series);
/// Header "n,Z,branch" with branch "LAO" for Z < 0 and "SAO" for Z > 0.
void write_orbit_csv(std::ostream& os, const std::vector<double>& iterates);
/// Header "t,y,z,Z".
void write_crossings_csv(std::ostream& os, const std::vector<Crossing>& crossings, double delta, double z0 = 0.0);

// ---------------------------------------------------------------------------
// SVG

struct Polyline {
    std::vector<std::pair<double, double>> points;
    std::string colour = "#1f4e9a";
    std::string label;
};

struct PlotPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Polyline> lines;
};

/// Panels are stacked vertically, each with a framed axis box and min/max tick labels.
[[nodiscard]] std::string render_svg(const std::vector<PlotPanel>& panels, double width = 800.0,
                                     double panel_height = 260.0);

/// Three panels: x, y and Z = (z - z0) / delta against t.
[[nodiscard]] std::vector<PlotPanel> series_panels(const TimeSeries& series, double delta, double z0 = 0.0);
/// (x, y) projection.
[[nodiscard]] PlotPanel projection_panel(const TimeSeries& series);
/// Map graph, diagonal and the cobweb path of the iterates.
[[nodiscard]] PlotPanel cobweb_panel(const PamCoefficients& pam, const std::vector<double>& iterates);

}  // namespace mmo
