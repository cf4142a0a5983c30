// entanglement.hpp: reduced atomic state and atom–field entanglement entropy

#pragma once

#include "curvjc/density_matrix.hpp"
#include "curvjc/jc_dynamics.hpp"

#include <array>
#include <complex>

namespace curvjc {

/// ρ_a in the {|e⟩, |g⟩} basis from the strict partial trace over the field:
/// ρ_eg = Σ_m c_e,m c*_g,m (same field index m).
DensityMatrix reduced_atom_density(const JointState& state);

/// The alternative coherence Σ_n c_e,n c*_g,n+1, which pairs different field
/// indices. Reported for comparison only; it is not a partial trace.
std::complex<double> shifted_index_coherence(const JointState& state);

/// Closed-form eigenvalues of a 2×2 Hermitian matrix, ascending, clipped at 0.
/// Throws InvariantError if one lies below −1e-10 or above 1 + 1e-10.
std::array<double, 2> qubit_eigenvalues(const DensityMatrix& rho_a);

/// −Σ ρ_m ln ρ_m over the two eigenvalues of ρ_a, in nats.
double atom_entropy(const DensityMatrix& rho_a);

/// Von Neumann entropy of the reduced field state from a full Hermitian
/// diagonalization of ρ_f.
double field_entropy(const JointState& state);

}  // namespace curvjc
