#include "mmo/detail/stiff_stepper.hpp"

#include <boost/numeric/odeint.hpp>

namespace mmo::detail {

namespace odeint = boost::numeric::odeint;

namespace {

using UVec = boost::numeric::ublas::vector<double>;
using UMat = boost::numeric::ublas::matrix<double>;

State3 to_array(const UVec& v) { return {v[0], v[1], v[2]}; }

struct Rhs {
    const StiffSystem* sys;
    void operator()(const UVec& s, UVec& ds, double /*t*/) const {
        State3 d{};
        sys->rhs(to_array(s), d);
        for (int i = 0; i < 3; ++i) ds[i] = d[i];
    }
};

struct Jac {
    const StiffSystem* sys;
    void operator()(const UVec& s, UMat& jac, double /*t*/, UVec& dfdt) const {
        Matrix3 m{};
        sys->jacobian(to_array(s), m);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) jac(i, j) = m[i][j];
            dfdt[i] = 0.0;
        }
    }
};

using Dense = odeint::rosenbrock4_dense_output<odeint::rosenbrock4_controller<odeint::rosenbrock4<double>>>;

}  // namespace

struct StiffStepper::Impl {
    StiffSystem system;
    Dense stepper;
    Impl(StiffSystem s, double abs_tol, double rel_tol, double max_dt)
        : system(std::move(s)),
          stepper(odeint::make_dense_output(abs_tol, rel_tol, max_dt, odeint::rosenbrock4<double>())) {}
};

StiffStepper::StiffStepper(StiffSystem system, double abs_tol, double rel_tol, double max_dt)
    : impl_(std::make_unique<Impl>(std::move(system), abs_tol, rel_tol, max_dt)) {}

StiffStepper::~StiffStepper() = default;

void StiffStepper::initialize(const State3& state, double t0, double dt0) {
    UVec s(3);
    for (int i = 0; i < 3; ++i) s[i] = state[i];
    impl_->stepper.initialize(s, t0, dt0);
}

std::pair<double, double> StiffStepper::do_step() {
    try {
        return impl_->stepper.do_step(std::make_pair(Rhs{&impl_->system}, Jac{&impl_->system}));
    } catch (const odeint::step_adjustment_error& e) {
        throw StepAdjustmentFailure{e.what()};
    }
}

State3 StiffStepper::calc_state(double t) const {
    UVec s(3);
    impl_->stepper.calc_state(t, s);
    return to_array(s);
}

State3 StiffStepper::current_state() const { return to_array(impl_->stepper.current_state()); }

double StiffStepper::current_time() const { return impl_->stepper.current_time(); }

}  // namespace mmo::detail
