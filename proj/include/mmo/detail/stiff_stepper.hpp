#pragma once

// Dense-output Rosenbrock stepper for three-dimensional systems. Kept behind a
// plain interface: the implementation is compiled as C++17 because the uBLAS
// containers it relies on do not build under C++20 with this Boost.

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>

namespace mmo::detail {

using State3 = std::array<double, 3>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

struct StiffSystem {
    std::function<void(const State3&, State3&)> rhs;
    std::function<void(const State3&, Matrix3&)> jacobian;
};

class StiffStepper {
public:
    StiffStepper(StiffSystem system, double abs_tol, double rel_tol, double max_dt);
    ~StiffStepper();
    StiffStepper(const StiffStepper&) = delete;
    StiffStepper& operator=(const StiffStepper&) = delete;

    void initialize(const State3& state, double t0, double dt0);
    /// Advances one accepted step; returns the covered interval.
    /// Throws StepAdjustmentFailure when the controller gives up.
    std::pair<double, double> do_step();
    [[nodiscard]] State3 calc_state(double t) const;
    [[nodiscard]] State3 current_state() const;
    [[nodiscard]] double current_time() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct StepAdjustmentFailure {
    std::string message;
};

}  // namespace mmo::detail
