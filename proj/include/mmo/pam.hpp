#pragma once

// Piecewise affine maps with a jump at Z = 0:
//
//     M(Z) = a11 Z + a12   for Z < 0   (large-amplitude branch)
//            a21 Z + a22   for Z > 0   (small-amplitude branch)
//
// Iteration, period detection, signatures and the at-most/at-least mu windows.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mmo {

/// |Z| at or below this is treated as a hit of the jump point.
inline constexpr double kDiscontinuityGuard = 1e-12;

struct PamCoefficients {
    double a11 = 1.0;  ///< slope, Z < 0
    double a12 = 0.0;  ///< offset, Z < 0
    double a21 = 1.0;  ///< slope, Z > 0
    double a22 = 0.0;  ///< offset, Z > 0

    /// Throws DomainError unless both slopes are strictly positive.
    void validate() const;

    friend bool operator==(const PamCoefficients&, const PamCoefficients&) = default;
};

/// The (a, b, mu, l) form used by the at-most/at-least lemma:
/// a Z + mu for Z < 0 and b Z + mu + l for Z > 0.
struct TransformedPam {
    double a = 0.0;
    double b = 0.0;
    double mu = 0.0;
    double l = 0.0;

    /// 0 < a, b < 1, l < 0 and 0 < mu < -l.
    [[nodiscard]] bool admissible() const noexcept;
};

/// One block L^s of a mixed-mode pattern: L large oscillations followed by s small ones.
struct SignatureSegment {
    int lao = 0;
    int sao = 0;

    friend auto operator<=>(const SignatureSegment&, const SignatureSegment&) = default;
};

/// Cyclic pattern L1^s1 L2^s2 ... stored in its lexicographically smallest rotation.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<SignatureSegment> segments);

    /// Groups a cyclic sequence of oscillation types (true = LAO) into segments.
    static Signature from_cycle(const std::vector<bool>& is_lao);

    /// Parses the output of str(), e.g. "1^3" or "1^4 1^5".
    static Signature parse(const std::string& text);

    [[nodiscard]] const std::vector<SignatureSegment>& segments() const noexcept { return segments_; }
    [[nodiscard]] int total_lao() const noexcept;
    [[nodiscard]] int total_sao() const noexcept;
    [[nodiscard]] int period() const noexcept { return total_lao() + total_sao(); }
    [[nodiscard]] bool empty() const noexcept { return segments_.empty(); }

    /// "1^3", or "1^4 1^5" for composite patterns.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<SignatureSegment> segments_;
};

struct OrbitResult {
    std::vector<double> iterates;  ///< Z_0, Z_1, ... (includes the initial value)
    std::size_t transient_length = 0;
    std::optional<std::size_t> period;
    bool converged = false;
};

/// Interval of the control parameter mu; `empty` when lower > upper or the
/// bounds meet at an open end.
struct MuInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool lower_closed = false;
    bool upper_closed = false;

    [[nodiscard]] bool empty() const noexcept;
    [[nodiscard]] bool contains(double mu) const noexcept;
    /// "(2.1520, 2.4732]" style, four decimals.
    [[nodiscard]] std::string str(int precision = 4) const;
};

struct OrbitOptions {
    std::size_t max_iters = 100000;
    double tol = 1e-10;
    std::size_t max_period = 1000;
};

[[nodiscard]] double pam_eval(const PamCoefficients& pam, double z);

[[nodiscard]] TransformedPam transform(const PamCoefficients& pam) noexcept;
[[nodiscard]] PamCoefficients inverse_transform(const TransformedPam& tp) noexcept;

/// Iterates the map and looks for the smallest period p whose recurrence
/// |Z_{n+p} - Z_n| <= tol holds over 3p consecutive iterations.
[[nodiscard]] OrbitResult iterate_orbit(const PamCoefficients& pam, double z0, const OrbitOptions& opts = {});

/// Signature of the periodic tail of a converged orbit. Throws NotPeriodic otherwise.
[[nodiscard]] Signature detect_signature(const OrbitResult& orbit);

/// a11^L * a21^s with L, s the total LAO / SAO counts; < 1 means the cycle is stable.
[[nodiscard]] double stability_factor(const PamCoefficients& pam, const Signature& sig);

/// mu thresholds for L consecutive LAOs: at least L when mu <= mu1, at most L when mu > mu2.
struct LaoThresholds {
    double mu1 = 0.0;
    double mu2 = 0.0;
};

/// mu thresholds for s consecutive SAOs: at most s when mu < at_most, at least s when mu >= at_least.
struct SaoThresholds {
    double at_most = 0.0;
    double at_least = 0.0;
};

[[nodiscard]] LaoThresholds lao_thresholds(const TransformedPam& tp, int L);
[[nodiscard]] SaoThresholds sao_thresholds(const TransformedPam& tp, int s);

/// Window (mu2, mu1] on which the only periodic pattern is L^1.
[[nodiscard]] MuInterval lao_window(const TransformedPam& tp, int L);
/// Window [at_least, at_most) on which the only periodic pattern is 1^s.
[[nodiscard]] MuInterval sao_window(const TransformedPam& tp, int s);

/// Both windows at once. Throws DomainError unless 0 < a, b < 1, l < 0 and L, s >= 1.
[[nodiscard]] std::pair<MuInterval, MuInterval> atmost_atleast_bounds(const TransformedPam& tp, int L, int s);

}  // namespace mmo
