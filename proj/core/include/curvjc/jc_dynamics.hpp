// jc_dynamics.hpp: closed-form evolution of the curvature-dependent JCM
//
// Units: ħ = 1, times are the dimensionless gt, frequencies are in units of g.
// The joint state lives in the invariant subspaces {|e,n⟩, |g,n+1⟩}; each is
// propagated by its own 2×2 unitary, so nothing is ever exponentiated.

#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace curvjc {

using complex = std::complex<double>;
using AmplitudeVector = std::vector<complex>;

struct SystemParams {
    double omega = 1.0;     // field frequency
    double omega_eg = 1.0;  // atomic transition frequency
    double g = 1.0;         // coupling
    double lambda = 0.0;    // curvature

    /// Flat detuning Δ = ω − ω_eg.
    double detuning() const noexcept { return omega - omega_eg; }
    /// Throws DomainError when any invariant is violated.
    void validate() const;
};

/// Amplitudes of |Ψ(t)⟩ = Σ_n c_e,n |e,n⟩ + c_g,n+1 |g,n+1⟩.
/// `ground[n]` stores c_g,n+1; there is no slot for |g,0⟩.
struct JointState {
    AmplitudeVector excited;
    AmplitudeVector ground;
    double time = 0.0;

    int n_max() const noexcept { return static_cast<int>(excited.size()) - 1; }
    /// Largest field Fock index with a slot (n_max + 1).
    int field_dim() const noexcept { return static_cast<int>(excited.size()) + 1; }
};

struct CoherentField {
    complex alpha;
};
struct FockField {
    int n = 0;
};
struct CustomField {
    AmplitudeVector amplitudes;
};
using InitialField = std::variant<CoherentField, FockField, CustomField>;

/// Ω_n = ω_eg − ω(nλ + γ).
double detuning_n(double n, const SystemParams& p);

/// Φ_n = √(Ω_n² + 4g²(n+1)(γ + λn/2)). Real-valued n is accepted so that
/// revival estimates can be evaluated at non-integer mean photon numbers.
double rabi_frequency(double n, const SystemParams& p);

/// Poissonian amplitudes e^{−|α|²/2} αⁿ/√(n!) for n = 0..n_max, computed in
/// log space. Throws InvariantError when the discarded tail carries ≥ 1e-12.
AmplitudeVector coherent_amplitudes(complex alpha, int n_max);

/// Probability mass of Poisson(|α|²) above n_max.
double poisson_tail(double mean, int n_max);

/// Smallest n_max ≥ 16 whose Poisson tail is below epsilon.
int choose_truncation(complex alpha, double epsilon = 1e-12);

/// choose_truncation, extended until the last kept weight P(n_max) is also
/// below epsilon. Subspace weights are conserved, so the evolved state then
/// meets the tail criterion at every time.
int state_truncation(complex alpha, double epsilon = 1e-12);

/// Field amplitudes for any InitialField; `n_max` is used only for coherent
/// and Fock inputs (custom amplitudes keep their own length).
AmplitudeVector field_amplitudes(const InitialField& field, int n_max);
int truncation_for(const InitialField& field, double epsilon = 1e-12);

/// Propagates `state` from state.time to t_target. The interaction-picture
/// Hamiltonian is time dependent whenever Ω_n ≠ 0, so the propagator depends
/// on both endpoints; chaining calls through this function composes exactly.
JointState propagate(const JointState& state, double t_target, const SystemParams& p);

/// Applies the closed-form per-subspace propagator to (c_e(0), c_g(0)).
JointState evolve_general(const AmplitudeVector& excited0, const AmplitudeVector& ground0,
                          double t, const SystemParams& p);

/// Atom excited, field coherent. Truncation is chosen automatically unless
/// n_max ≥ 0 is given.
JointState evolve_excited_coherent(complex alpha, double t, const SystemParams& p,
                                   int n_max = -1);

/// Atom excited, arbitrary field amplitudes.
JointState evolve_excited(const AmplitudeVector& field0, double t, const SystemParams& p);

/// Σ_n |c_e,n|² + |c_g,n+1|², summed in index order.
double norm(const JointState& state);

/// Weight |c_e,n_max|² + |c_g,n_max+1|² of the last subspace kept.
double tail_weight(const JointState& state);

}  // namespace curvjc
