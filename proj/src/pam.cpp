#include "mmo/pam.hpp"

#include "mmo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace mmo {

void PamCoefficients::validate() const {
    if (!(a11 > 0.0) || !(a21 > 0.0)) {
        throw DomainError("PAM slopes must be strictly positive (a11 = " + std::to_string(a11) +
                          ", a21 = " + std::to_string(a21) + ")");
    }
    if (!std::isfinite(a12) || !std::isfinite(a22) || !std::isfinite(a11) || !std::isfinite(a21)) {
        throw DomainError("PAM coefficients must be finite");
    }
}

bool TransformedPam::admissible() const noexcept {
    return a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0 && l < 0.0 && mu > 0.0 && mu < -l;
}

// ---------------------------------------------------------------------------
// Signature

namespace {

std::vector<SignatureSegment> canonical_rotation(std::vector<SignatureSegment> segs) {
    if (segs.size() < 2) {
        return segs;
    }
    auto best = segs;
    for (std::size_t r = 1; r < segs.size(); ++r) {
        std::rotate(segs.begin(), segs.begin() + 1, segs.end());
        if (std::lexicographical_compare(segs.begin(), segs.end(), best.begin(), best.end())) {
            best = segs;
        }
    }
    return best;
}

}  // namespace

Signature::Signature(std::vector<SignatureSegment> segments) {
    if (segments.empty()) {
        throw DomainError("signature needs at least one segment");
    }
    for (const auto& s : segments) {
        if (s.lao < 0 || s.sao < 0 || s.lao + s.sao == 0) {
            throw DomainError("signature segment counts must be nonnegative and not both zero");
        }
    }
    if (segments.size() > 1) {
        for (const auto& s : segments) {
            if (s.lao == 0 || s.sao == 0) {
                throw DomainError("only single-segment signatures may have a zero count");
            }
        }
    }
    segments_ = canonical_rotation(std::move(segments));
}

Signature Signature::from_cycle(const std::vector<bool>& is_lao) {
    if (is_lao.empty()) {
        throw DomainError("empty oscillation cycle");
    }
    const auto n = is_lao.size();
    const auto n_lao = static_cast<int>(std::count(is_lao.begin(), is_lao.end(), true));
    if (n_lao == 0) {
        return Signature({{0, static_cast<int>(n)}});
    }
    if (n_lao == static_cast<int>(n)) {
        return Signature({{static_cast<int>(n), 0}});
    }
    // Start at an LAO that follows an SAO so every block reads L...LS...S.
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_lao[i] && !is_lao[(i + n - 1) % n]) {
            start = i;
            break;
        }
    }
    std::vector<SignatureSegment> segs;
    std::size_t k = 0;
    while (k < n) {
        SignatureSegment seg;
        while (k < n && is_lao[(start + k) % n]) {
            ++seg.lao;
            ++k;
        }
        while (k < n && !is_lao[(start + k) % n]) {
            ++seg.sao;
            ++k;
        }
        segs.push_back(seg);
    }
    return Signature(std::move(segs));
}

Signature Signature::parse(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    std::vector<SignatureSegment> segs;
    while (in >> token) {
        const auto caret = token.find('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == token.size()) {
            throw DomainError("malformed signature token '" + token + "'");
        }
        try {
            std::size_t used_l = 0;
            std::size_t used_s = 0;
            const std::string lhs = token.substr(0, caret);
            const std::string rhs = token.substr(caret + 1);
            SignatureSegment seg{std::stoi(lhs, &used_l), std::stoi(rhs, &used_s)};
            if (used_l != lhs.size() || used_s != rhs.size()) {
                throw DomainError("malformed signature token '" + token + "'");
            }
            segs.push_back(seg);
        } catch (const std::logic_error&) {
            throw DomainError("malformed signature token '" + token + "'");
        }
    }
    return Signature(std::move(segs));
}

int Signature::total_lao() const noexcept {
    int n = 0;
    for (const auto& s : segments_) n += s.lao;
    return n;
}

int Signature::total_sao() const noexcept {
    int n = 0;
    for (const auto& s : segments_) n += s.sao;
    return n;
}

std::string Signature::str() const {
    std::string out;
    for (const auto& s : segments_) {
        if (!out.empty()) out += ' ';
        out += std::to_string(s.lao) + '^' + std::to_string(s.sao);
    }
    return out;
}

// ---------------------------------------------------------------------------
// MuInterval

bool MuInterval::empty() const noexcept {
    if (lower > upper) return true;
    if (lower == upper) return !(lower_closed && upper_closed);
    return false;
}

bool MuInterval::contains(double mu) const noexcept {
    const bool above = lower_closed ? mu >= lower : mu > lower;
    const bool below = upper_closed ? mu <= upper : mu < upper;
    return above && below;
}

std::string MuInterval::str(int precision) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << (lower_closed ? '[' : '(') << lower << ", " << upper
       << (upper_closed ? ']' : ')');
    return os.str();
}

// ---------------------------------------------------------------------------
// Map evaluation and iteration

double pam_eval(const PamCoefficients& pam, double z) {
    if (std::abs(z) <= kDiscontinuityGuard) {
        throw DiscontinuityHit(z);
    }
    return z < 0.0 ? pam.a11 * z + pam.a12 : pam.a21 * z + pam.a22;
}

TransformedPam transform(const PamCoefficients& pam) noexcept {
    return {pam.a11, pam.a21, pam.a12, pam.a22 - pam.a12};
}

PamCoefficients inverse_transform(const TransformedPam& tp) noexcept {
    return {tp.a, tp.mu, tp.b, tp.mu + tp.l};
}

OrbitResult iterate_orbit(const PamCoefficients& pam, double z0, const OrbitOptions& opts) {
    if (opts.max_iters == 0 || !(opts.tol > 0.0)) {
        throw DomainError("iterate_orbit needs max_iters > 0 and tol > 0");
    }
    if (std::abs(z0) <= kDiscontinuityGuard) {
        throw DiscontinuityHit(z0);
    }
    OrbitResult out;
    auto& zs = out.iterates;
    zs.reserve(std::min<std::size_t>(opts.max_iters + 1, 4096));
    zs.push_back(z0);

    // run[p] counts consecutive recent n with |Z_n - Z_{n-p}| <= tol.
    const std::size_t p_cap = std::max<std::size_t>(1, opts.max_period);
    std::vector<std::size_t> run(p_cap + 1, 0);

    for (std::size_t n = 1; n <= opts.max_iters; ++n) {
        const double z = pam_eval(pam, zs.back());
        if (!std::isfinite(z)) {
            break;
        }
        zs.push_back(z);
        const std::size_t p_lim = std::min(p_cap, n);
        for (std::size_t p = 1; p <= p_lim; ++p) {
            run[p] = std::abs(z - zs[n - p]) <= opts.tol ? run[p] + 1 : 0;
            if (run[p] >= 3 * p) {
                out.period = p;
                out.converged = true;
                out.transient_length = n - run[p] + 1 - p;
                return out;
            }
        }
    }
    return out;
}

Signature detect_signature(const OrbitResult& orbit) {
    if (!orbit.converged || !orbit.period) {
        throw NotPeriodic("orbit has not converged to a periodic pattern");
    }
    const auto p = *orbit.period;
    const auto& zs = orbit.iterates;
    std::vector<bool> cycle;
    cycle.reserve(p);
    for (std::size_t k = zs.size() - p; k < zs.size(); ++k) {
        cycle.push_back(zs[k] < 0.0);
    }
    return Signature::from_cycle(cycle);
}

double stability_factor(const PamCoefficients& pam, const Signature& sig) {
    return std::pow(pam.a11, sig.total_lao()) * std::pow(pam.a21, sig.total_sao());
}

// ---------------------------------------------------------------------------
// At-most / at-least thresholds

namespace {

double geometric_sum(double r, int n) {  // sum_{k=0}^{n} r^k
    double s = 0.0;
    double term = 1.0;
    for (int k = 0; k <= n; ++k) {
        s += term;
        term *= r;
    }
    return s;
}

void require_bounds_domain(const TransformedPam& tp, int count) {
    if (!(tp.a > 0.0 && tp.a < 1.0) || !(tp.b > 0.0 && tp.b < 1.0)) {
        throw DomainError("bounds need 0 < a, b < 1");
    }
    if (!(tp.l < 0.0)) {
        throw DomainError("bounds need a negative jump height l");
    }
    if (count < 1) {
        throw DomainError("oscillation count must be positive");
    }
}

}  // namespace

LaoThresholds lao_thresholds(const TransformedPam& tp, int L) {
    require_bounds_domain(tp, L);
    const double a = tp.a;
    const double aLm1 = std::pow(a, L - 1);
    const double aL = aLm1 * a;
    return {-tp.l * aLm1 / (aLm1 * tp.b + geometric_sum(a, L - 1)), -tp.l * aL / geometric_sum(a, L)};
}

SaoThresholds sao_thresholds(const TransformedPam& tp, int s) {
    require_bounds_domain(tp, s);
    const double b = tp.b;
    const double bsm1 = std::pow(b, s - 1);
    const double head = geometric_sum(b, s - 1);
    return {-tp.l * head / geometric_sum(b, s), -tp.l * (head + bsm1 * (tp.a - 1.0)) / (bsm1 * tp.a + head)};
}

MuInterval lao_window(const TransformedPam& tp, int L) {
    const auto t = lao_thresholds(tp, L);
    return {t.mu2, t.mu1, false, true};
}

MuInterval sao_window(const TransformedPam& tp, int s) {
    const auto t = sao_thresholds(tp, s);
    return {t.at_least, t.at_most, true, false};
}

std::pair<MuInterval, MuInterval> atmost_atleast_bounds(const TransformedPam& tp, int L, int s) {
    return {lao_window(tp, L), sao_window(tp, s)};
}

}  // namespace mmo
