#include "curvjc/entanglement.hpp"

#include "curvjc/errors.hpp"
#include "curvjc/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvjc {

namespace {

constexpr double kEigTol = 1e-10;
// Eigenvalues of ρ_f below this carry no entropy worth resolving (x ln x < 3e-13).
constexpr double kFieldEigFloor = 1e-14;

}  // namespace

DensityMatrix reduced_atom_density(const JointState& state) {
    double pe = 0.0;
    double pg = 0.0;
    std::complex<double> coherence{0.0, 0.0};
    const std::size_t size = state.excited.size();
    for (std::size_t i = 0; i < size; ++i) {
        pe += std::norm(state.excited[i]);
        pg += std::norm(state.ground[i]);
    }
    // c_e,m pairs with c_g,m, stored at ground[m − 1].
    for (std::size_t m = 1; m < size; ++m) {
        coherence += state.excited[m] * std::conj(state.ground[m - 1]);
    }
    Eigen::Matrix2cd rho;
    rho << pe, coherence, std::conj(coherence), pg;
    return DensityMatrix(rho);
}

std::complex<double> shifted_index_coherence(const JointState& state) {
    std::complex<double> coherence{0.0, 0.0};
    for (std::size_t n = 0; n < state.excited.size(); ++n) {
        coherence += state.excited[n] * std::conj(state.ground[n]);
    }
    return coherence;
}

std::array<double, 2> qubit_eigenvalues(const DensityMatrix& rho_a) {
    if (rho_a.dim() != 2) {
        throw DomainError("expected a 2x2 density matrix, got dim " + std::to_string(rho_a.dim()));
    }
    const double a = rho_a(0, 0).real();
    const double d = rho_a(1, 1).real();
    const double off = std::norm(rho_a(0, 1));
    const double half_tr = 0.5 * (a + d);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + off));
    std::array<double, 2> ev{half_tr - disc, half_tr + disc};
    for (auto& v : ev) {
        if (v < -kEigTol || v > 1.0 + kEigTol) {
            throw InvariantError("atomic eigenvalues in [0, 1]", "eigenvalue " + std::to_string(v));
        }
        v = std::clamp(v, 0.0, 1.0);
    }
    return ev;
}

double atom_entropy(const DensityMatrix& rho_a) {
    double s = 0.0;
    for (const double v : qubit_eigenvalues(rho_a)) {
        if (v > 0.0) s -= v * std::log(v);
    }
    return s;
}

double field_entropy(const JointState& state) {
    return von_neumann_entropy(reduced_field_density(state).eigenvalues(), kFieldEigFloor);
}

}  // namespace curvjc
