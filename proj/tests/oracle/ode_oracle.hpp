// Adaptive Runge–Kutta integration of the coupled amplitude equations
//   dc_e,n/dt   = −i g κ_n e^{+iΩ_n t} c_g,n+1
//   dc_g,n+1/dt = −i g κ_n e^{−iΩ_n t} c_e,n
// Test-only oracle for the closed-form propagator.

#pragma once

#include "reference_jcm.hpp"

#include <boost/numeric/odeint.hpp>

#include <complex>
#include <vector>

namespace oracle {

struct OdeTrajectory {
    std::vector<double> times;
    // [time][n] amplitudes
    std::vector<std::vector<std::complex<double>>> excited;
    std::vector<std::vector<std::complex<double>>> ground;
};

inline OdeTrajectory integrate_amplitudes(const std::vector<std::complex<double>>& excited0,
                                          const std::vector<std::complex<double>>& ground0,
                                          const std::vector<double>& times, double lambda,
                                          double omega, double omega_eg, double g,
                                          double tol = 1e-13) {
    namespace ode = boost::numeric::odeint;
    using state_t = std::vector<double>;

    const std::size_t count = excited0.size();
    std::vector<double> kappa(count), detuning(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double nn = static_cast<double>(n);
        kappa[n] = std::sqrt((nn + 1.0) * (gamma_ref(lambda) + lambda * nn / 2.0));
        detuning[n] = detuning_ref(nn, lambda, omega, omega_eg);
    }

    // layout per subspace: Re c_e, Im c_e, Re c_g, Im c_g
    state_t y(4 * count);
    for (std::size_t n = 0; n < count; ++n) {
        y[4 * n + 0] = excited0[n].real();
        y[4 * n + 1] = excited0[n].imag();
        y[4 * n + 2] = ground0[n].real();
        y[4 * n + 3] = ground0[n].imag();
    }

    auto rhs = [&](const state_t& s, state_t& ds, double t) {
        using namespace std::complex_literals;
        for (std::size_t n = 0; n < count; ++n) {
            const std::complex<double> ce{s[4 * n], s[4 * n + 1]};
            const std::complex<double> cg{s[4 * n + 2], s[4 * n + 3]};
            const std::complex<double> phase = std::exp(1i * detuning[n] * t);
            const std::complex<double> dce = -1i * g * kappa[n] * phase * cg;
            const std::complex<double> dcg = -1i * g * kappa[n] * std::conj(phase) * ce;
            ds[4 * n + 0] = dce.real();
            ds[4 * n + 1] = dce.imag();
            ds[4 * n + 2] = dcg.real();
            ds[4 * n + 3] = dcg.imag();
        }
    };

    OdeTrajectory traj;
    auto observer = [&](const state_t& s, double t) {
        traj.times.push_back(t);
        std::vector<std::complex<double>> e(count), gr(count);
        for (std::size_t n = 0; n < count; ++n) {
            e[n] = {s[4 * n], s[4 * n + 1]};
            gr[n] = {s[4 * n + 2], s[4 * n + 3]};
        }
        traj.excited.push_back(std::move(e));
        traj.ground.push_back(std::move(gr));
    };

    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<state_t>());
    ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3, observer);
    return traj;
}

}  // namespace oracle
