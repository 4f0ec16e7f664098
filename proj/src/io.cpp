#include "mmo/io.hpp"

#include "mmo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace mmo {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.count(key)) throw ConfigError(std::string("unknown key '") + key + "' in " + what);
    }
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) j.at(key).get_to(out);
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON

void to_json(json& j, const RhoSpec& rho) {
    if (rho.kind() == RhoSpec::Kind::FixedRational) {
        j = "fixed_rational";
    } else {
        j = json{{"quadratic", {{"p", rho.p()}, {"q", rho.q()}}}};
    }
}

void from_json(const json& j, RhoSpec& rho) {
    if (j.is_string()) {
        if (j.get<std::string>() != "fixed_rational") throw ConfigError("rho must be \"fixed_rational\" or {\"quadratic\": ...}");
        rho = RhoSpec::fixed_rational();
        return;
    }
    check_keys(j, {"quadratic"}, "rho");
    const auto& q = j.at("quadratic");
    check_keys(q, {"p", "q"}, "rho.quadratic");
    rho = RhoSpec::quadratic(q.value("p", 1.0), q.value("q", 1.0));
}

void to_json(json& j, const CanonicalParams& p) {
    j = json{{"alpha", p.alpha}, {"beta", p.beta}, {"kappa", p.kappa},
             {"lambda", p.lambda}, {"rho", p.rho},   {"z0", p.z0}};
}

void from_json(const json& j, CanonicalParams& p) {
    check_keys(j, {"alpha", "beta", "kappa", "lambda", "rho", "z0"}, "canonical");
    read_opt(j, "alpha", p.alpha);
    read_opt(j, "beta", p.beta);
    read_opt(j, "kappa", p.kappa);
    read_opt(j, "lambda", p.lambda);
    read_opt(j, "rho", p.rho);
    read_opt(j, "z0", p.z0);
}

void to_json(json& j, const PamCoefficients& p) {
    j = json{{"a11", p.a11}, {"a12", p.a12}, {"a21", p.a21}, {"a22", p.a22}};
}

void from_json(const json& j, PamCoefficients& p) {
    check_keys(j, {"a11", "a12", "a21", "a22"}, "pam");
    read_opt(j, "a11", p.a11);
    read_opt(j, "a12", p.a12);
    read_opt(j, "a21", p.a21);
    read_opt(j, "a22", p.a22);
}

void to_json(json& j, const TransformedPam& p) { j = json{{"a", p.a}, {"b", p.b}, {"mu", p.mu}, {"l", p.l}}; }

void to_json(json& j, const SimConfig& c) {
    j = json{{"eps", c.eps},       {"delta", c.delta},
             {"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol},
             {"max_slow_time", c.max_slow_time}, {"max_dt", c.max_dt},
             {"max_crossings", c.max_crossings}};
    if (c.initial_state) j["initial_state"] = *c.initial_state;
}

void from_json(const json& j, SimConfig& c) {
    check_keys(j, {"eps", "delta", "rel_tol", "abs_tol", "max_slow_time", "max_dt", "max_crossings", "initial_state"},
               "sim");
    read_opt(j, "eps", c.eps);
    read_opt(j, "delta", c.delta);
    read_opt(j, "rel_tol", c.rel_tol);
    read_opt(j, "abs_tol", c.abs_tol);
    read_opt(j, "max_slow_time", c.max_slow_time);
    read_opt(j, "max_dt", c.max_dt);
    read_opt(j, "max_crossings", c.max_crossings);
    if (j.contains("initial_state")) c.initial_state = j.at("initial_state").get<std::array<double, 3>>();
}

void to_json(json& j, const MuInterval& m) {
    j = json{{"lower", m.lower},
             {"upper", m.upper},
             {"lower_closed", m.lower_closed},
             {"upper_closed", m.upper_closed},
             {"empty", m.empty()},
             {"text", m.str()}};
}

ConfigDocument parse_config(const std::string& text) {
    try {
        const json j = json::parse(text);
        check_keys(j, {"pam", "canonical", "sim"}, "config");
        ConfigDocument doc;
        if (j.contains("pam")) doc.pam = j.at("pam").get<PamCoefficients>();
        if (j.contains("canonical")) doc.canonical = j.at("canonical").get<CanonicalParams>();
        if (j.contains("sim")) doc.sim = j.at("sim").get<SimConfig>();
        return doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// ---------------------------------------------------------------------------
// CSV

void write_series_csv(std::ostream& os, const TimeSeries& series) {
    os << "t,x,y,z\n" << std::setprecision(17);
    for (const auto& s : series.samples) os << s.t << ',' << s.x << ',' << s.y << ',' << s.z << '\n';
}

void write_orbit_csv(std::ostream& os, const std::vector<double>& iterates) {
    os << "n,Z,branch\n" << std::setprecision(17);
    for (std::size_t n = 0; n < iterates.size(); ++n) {
        os << n << ',' << iterates[n] << ',' << (iterates[n] < 0 ? "LAO" : "SAO") << '\n';
    }
}

void write_crossings_csv(std::ostream& os, const std::vector<Crossing>& crossings, double delta, double z0) {
    os << "t,y,z,Z\n" << std::setprecision(17);
    for (const auto& c : crossings) os << c.t << ',' << c.y << ',' << c.z << ',' << (c.z - z0) / delta << '\n';
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

std::vector<std::pair<double, double>> decimate(std::vector<std::pair<double, double>> pts, std::size_t cap) {
    if (pts.size() <= cap) return pts;
    const std::size_t stride = (pts.size() + cap - 1) / cap;
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
    out.push_back(pts.back());
    return out;
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels, double width, double panel_height) {
    const double ml = 70, mr = 20, mt = 30, mb = 40;
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
       << panel_height * static_cast<double>(panels.size()) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const auto& panel = panels[k];
        const double top = panel_height * static_cast<double>(k);
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
        for (const auto& line : panel.lines) {
            for (const auto& [x, y] : line.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
        if (!(xmin <= xmax)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
        if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
        if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;

        const double x0 = ml, x1 = width - mr, y0 = top + panel_height - mb, y1 = top + mt;
        auto px = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); };
        auto py = [&](double y) { return y0 + (y - ymin) / (ymax - ymin) * (y1 - y0); };

        os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
        os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
           << "\" fill=\"none\" stroke=\"black\"/>\n";
        os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << top + 18 << "\" text-anchor=\"middle\">"
           << escape(panel.title) << "</text>\n";
        os << "<text x=\"" << x0 << "\" y=\"" << y0 + 16 << "\" text-anchor=\"start\">" << num(xmin) << "</text>\n";
        os << "<text x=\"" << x1 << "\" y=\"" << y0 + 16 << "\" text-anchor=\"end\">" << num(xmax) << "</text>\n";
        os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << y0 + 32 << "\" text-anchor=\"middle\">"
           << escape(panel.x_label) << "</text>\n";
        os << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 << "\" text-anchor=\"end\">" << num(ymin) << "</text>\n";
        os << "<text x=\"" << x0 - 6 << "\" y=\"" << y1 + 10 << "\" text-anchor=\"end\">" << num(ymax) << "</text>\n";
        os << "<text x=\"" << 14 << "\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
           << (y0 + y1) / 2 << ")\">" << escape(panel.y_label) << "</text>\n";
        if (ymin < 0 && ymax > 0) {
            os << "<line x1=\"" << x0 << "\" y1=\"" << py(0) << "\" x2=\"" << x1 << "\" y2=\"" << py(0)
               << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
        }
        double legend_y = y1 + 14;
        for (const auto& line : panel.lines) {
            os << "<polyline fill=\"none\" stroke=\"" << line.colour << "\" stroke-width=\"1\" points=\"";
            for (const auto& [x, y] : decimate(line.points, 8000)) {
                if (std::isfinite(x) && std::isfinite(y)) os << px(x) << ',' << py(y) << ' ';
            }
            os << "\"/>\n";
            if (!line.label.empty()) {
                os << "<text x=\"" << x1 - 6 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" fill=\"" << line.colour
                   << "\">" << escape(line.label) << "</text>\n";
                legend_y += 14;
            }
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<PlotPanel> series_panels(const TimeSeries& series, double delta, double z0) {
    Polyline x{{}, "#1f4e9a", ""}, y{{}, "#9a1f1f", ""}, z{{}, "#1f7a3a", ""};
    for (const auto& s : series.samples) {
        x.points.emplace_back(s.t, s.x);
        y.points.emplace_back(s.t, s.y);
        z.points.emplace_back(s.t, (s.z - z0) / delta);
    }
    return {{"x", "t", "x", {x}}, {"y", "t", "y", {y}}, {"Z = (z - z0) / delta", "t", "Z", {z}}};
}

PlotPanel projection_panel(const TimeSeries& series) {
    Polyline line;
    for (const auto& s : series.samples) line.points.emplace_back(s.x, s.y);
    return {"(x, y) projection", "x", "y", {line}};
}

PlotPanel cobweb_panel(const PamCoefficients& pam, const std::vector<double>& iterates) {
    double lo = -1.0, hi = 1.0;
    for (double v : iterates) {
        if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
    }
    const double pad = 0.1 * (hi - lo);
    lo -= pad;
    hi += pad;
    Polyline left{{{lo, pam_eval(pam, lo)}, {0.0, pam.a12}}, "#1f4e9a", "Z < 0"};
    Polyline right{{{0.0, pam.a22}, {hi, pam_eval(pam, hi)}}, "#9a1f1f", "Z > 0"};
    Polyline diag{{{lo, lo}, {hi, hi}}, "#888888", ""};
    Polyline web{{}, "#1f7a3a", "orbit"};
    const std::size_t n = std::min<std::size_t>(iterates.size(), 400);
    if (n > 0) web.points.emplace_back(iterates[0], iterates[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        web.points.emplace_back(iterates[i], iterates[i + 1]);
        web.points.emplace_back(iterates[i + 1], iterates[i + 1]);
    }
    return {"cobweb", "Z_n", "Z_n+1", {left, right, diag, web}};
}

}  // namespace mmo
