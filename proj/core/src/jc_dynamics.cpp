#include "curvjc/jc_dynamics.hpp"

#include "curvjc/deformed_algebra.hpp"
#include "curvjc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvjc {

namespace {

constexpr double kCoherentTail = 1e-12;
constexpr double kInputNormTol = 1e-8;
constexpr int kMinTruncation = 16;

double log_poisson(double mean, int k) {
    return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
}

}  // namespace

void SystemParams::validate() const {
    if (!(g > 0.0)) throw DomainError("coupling g must be > 0");
    if (!(omega > 0.0)) throw DomainError("field frequency omega must be > 0");
    if (!(omega_eg > 0.0)) throw DomainError("atomic frequency omega_eg must be > 0");
    if (!(lambda >= 0.0)) throw DomainError("curvature lambda must be >= 0");
}

double detuning_n(double n, const SystemParams& p) {
    if (n < 0.0) throw DomainError("Fock index must be >= 0");
    return p.omega_eg - p.omega * (n * p.lambda + gamma(p.lambda));
}

double rabi_frequency(double n, const SystemParams& p) {
    const double om = detuning_n(n, p);
    const double coupling_sq = (n + 1.0) * (gamma(p.lambda) + 0.5 * p.lambda * n);
    return std::sqrt(om * om + 4.0 * p.g * p.g * coupling_sq);
}

double poisson_tail(double mean, int n_max) {
    if (mean <= 0.0) return 0.0;
    double tail = 0.0;
    for (int k = n_max + 1;; ++k) {
        const double term = std::exp(log_poisson(mean, k));
        tail += term;
        if (k > mean && term <= 1e-20 * tail) break;
        if (term == 0.0 && k > mean) break;
    }
    return tail;
}

int choose_truncation(complex alpha, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("truncation epsilon must be > 0");
    const double mean = std::norm(alpha);
    int n_max = kMinTruncation;
    while (poisson_tail(mean, n_max) >= epsilon) ++n_max;
    return n_max;
}

int state_truncation(complex alpha, double epsilon) {
    int n_max = choose_truncation(alpha, epsilon);
    const double mean = std::norm(alpha);
    if (mean == 0.0) return n_max;
    while (std::exp(log_poisson(mean, n_max)) >= epsilon) ++n_max;
    return n_max;
}

AmplitudeVector coherent_amplitudes(complex alpha, int n_max) {
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    AmplitudeVector c(static_cast<std::size_t>(n_max) + 1, complex{0.0, 0.0});
    const double r = std::abs(alpha);
    if (r == 0.0) {
        c[0] = 1.0;
        return c;
    }
    const double mean = r * r;
    const double tail = poisson_tail(mean, n_max);
    if (tail >= kCoherentTail) {
        throw InvariantError("coherent truncation tail < 1e-12",
                             "|alpha|^2 = " + std::to_string(mean) + " needs n_max > " +
                                 std::to_string(n_max) + " (tail " + std::to_string(tail) + ")");
    }
    const double phase = std::arg(alpha);
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double mag = std::exp(0.5 * log_poisson(mean, n));
        c[n] = std::polar(mag, n * phase);
        total += mag * mag;
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& v : c) v *= scale;
    return c;
}

AmplitudeVector field_amplitudes(const InitialField& field, int n_max) {
    struct Visitor {
        int n_max;
        AmplitudeVector operator()(const CoherentField& f) const {
            return coherent_amplitudes(f.alpha, n_max);
        }
        AmplitudeVector operator()(const FockField& f) const {
            if (f.n < 0 || f.n > n_max) throw DomainError("Fock index outside truncation");
            AmplitudeVector c(static_cast<std::size_t>(n_max) + 1, complex{0.0, 0.0});
            c[f.n] = 1.0;
            return c;
        }
        AmplitudeVector operator()(const CustomField& f) const {
            double total = 0.0;
            for (const auto& v : f.amplitudes) total += std::norm(v);
            if (f.amplitudes.empty() || std::abs(total - 1.0) > 1e-12) {
                throw InvariantError("custom field normalized",
                                     "sum |c_n|^2 = " + std::to_string(total));
            }
            return f.amplitudes;
        }
    };
    return std::visit(Visitor{n_max}, field);
}

int truncation_for(const InitialField& field, double epsilon) {
    if (const auto* c = std::get_if<CoherentField>(&field)) {
        return state_truncation(c->alpha, epsilon);
    }
    if (const auto* f = std::get_if<FockField>(&field)) {
        return std::max(kMinTruncation, f->n + 1);
    }
    return static_cast<int>(std::get<CustomField>(field).amplitudes.size()) - 1;
}

JointState propagate(const JointState& state, double t_target, const SystemParams& p) {
    if (state.excited.size() != state.ground.size()) {
        throw DomainError("excited and ground amplitude vectors differ in length");
    }
    const double nrm = norm(state);
    if (std::abs(nrm - 1.0) > kInputNormTol) {
        throw InvariantError("input state normalized", "norm = " + std::to_string(nrm));
    }

    const double gam = gamma(p.lambda);
    const double t0 = state.time;
    const double dt = t_target - t0;
    const std::size_t size = state.excited.size();

    JointState out;
    out.excited.resize(size);
    out.ground.resize(size);
    out.time = t_target;

    // Per subspace, b_e = c_e e^{-iΩt/2}, b_g = c_g e^{iΩt/2} obey a
    // time-independent 2×2 Hamiltonian [[Ω/2, gκ], [gκ, -Ω/2]].
    for (std::size_t i = 0; i < size; ++i) {
        const double n = static_cast<double>(i);
        const double om = p.omega_eg - p.omega * (n * p.lambda + gam);
        const double kappa = std::sqrt((n + 1.0) * (gam + 0.5 * p.lambda * n));
        const double phi = std::sqrt(om * om + 4.0 * p.g * p.g * kappa * kappa);

        const double c = std::cos(0.5 * phi * dt);
        const double s = std::sin(0.5 * phi * dt);
        const complex diag_e{c, -om / phi * s};
        const complex diag_g{c, om / phi * s};
        const complex off{0.0, -2.0 * p.g * kappa / phi * s};

        const complex in_e = state.excited[i] * std::polar(1.0, -0.5 * om * t0);
        const complex in_g = state.ground[i] * std::polar(1.0, 0.5 * om * t0);
        const complex b_e = diag_e * in_e + off * in_g;
        const complex b_g = diag_g * in_g + off * in_e;
        out.excited[i] = b_e * std::polar(1.0, 0.5 * om * t_target);
        out.ground[i] = b_g * std::polar(1.0, -0.5 * om * t_target);
    }
    return out;
}

JointState evolve_general(const AmplitudeVector& excited0, const AmplitudeVector& ground0,
                          double t, const SystemParams& p) {
    return propagate(JointState{excited0, ground0, 0.0}, t, p);
}

JointState evolve_excited(const AmplitudeVector& field0, double t, const SystemParams& p) {
    return evolve_general(field0, AmplitudeVector(field0.size(), complex{0.0, 0.0}), t, p);
}

JointState evolve_excited_coherent(complex alpha, double t, const SystemParams& p, int n_max) {
    if (n_max < 0) n_max = state_truncation(alpha);
    return evolve_excited(coherent_amplitudes(alpha, n_max), t, p);
}

double norm(const JointState& state) {
    double total = 0.0;
    for (std::size_t i = 0; i < state.excited.size(); ++i) {
        total += std::norm(state.excited[i]) + std::norm(state.ground[i]);
    }
    return total;
}

double tail_weight(const JointState& state) {
    if (state.excited.empty()) return 0.0;
    return std::norm(state.excited.back()) + std::norm(state.ground.back());
}

}  // namespace curvjc
