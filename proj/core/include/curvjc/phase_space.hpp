// phase_space.hpp: reduced field state, Wigner function and its negativity
//
// Convention: ħ = 1, x = (a + a†)/√2, p = (a − a†)/(i√2). A coherent state |α⟩
// is centred at (√2 Re α, √2 Im α) and the vacuum is e^{−(x²+p²)}/π.

#pragma once

#include "curvjc/density_matrix.hpp"
#include "curvjc/jc_dynamics.hpp"

#include <Eigen/Dense>

#include <complex>

namespace curvjc {

/// Rectangular phase-space grid with an odd number of nodes per axis.
struct PhaseGrid {
    double x_min = -6.0;
    double x_max = 6.0;
    double p_min = -6.0;
    double p_max = 6.0;
    int nx = 241;
    int np = 241;

    /// Throws DomainError naming the violated constraint.
    void validate() const;

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dp() const { return (p_max - p_min) / (np - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double p(int j) const { return p_min + j * dp(); }

    /// Every other node; Simpson-compatible only if (n − 1) % 4 == 0.
    PhaseGrid coarsened() const;
    bool coarsenable() const { return (nx - 1) % 4 == 0 && (np - 1) % 4 == 0; }
};

struct WignerField {
    PhaseGrid grid;
    Eigen::MatrixXd values;  // values(i, j) = W(x_i, p_j)
    double time = 0.0;
    double lambda = 0.0;

    /// ∬ W dx dp by composite Simpson quadrature.
    double normalization() const;
};

/// ρ_f(n, m) = c_e,n c*_e,m + c_g,n c*_g,m over field indices 0 .. n_max+1.
DensityMatrix reduced_field_density(const JointState& state);

/// Wigner transform of |n⟩⟨m| for m ≥ n. For m < n use the conjugate of (m, n).
std::complex<double> fock_wigner_kernel(int n, int m, double x, double p);

/// √(n!/(n+k)!) · √(k!) · L_n^k(u) for n = 0 .. count−1 by three-term recurrence.
/// Bounded for moderate u and free of factorial overflow.
void scaled_laguerre(int k, double u, int count, double* out);

/// Plain generalized Laguerre polynomial L_n^k(u).
double laguerre(int n, int k, double u);

/// Evaluates W on every grid node. Throws InvariantError if ρ's Hermiticity
/// residual (which bounds the discarded imaginary part of W) reaches 1e-10.
WignerField wigner(const DensityMatrix& rho, const PhaseGrid& grid, double time = 0.0,
                   double lambda = 0.0);

/// Single-point evaluation, same kernel sum as `wigner`.
double wigner_at(const DensityMatrix& rho, double x, double p);

/// Harmonic-oscillator eigenfunction ψ_n(y) by the stable Hermite-function recurrence.
double hermite_function(int n, double y);

/// Validation path: W(x,p) = (1/2π)∫dξ e^{−ipξ}⟨x+ξ/2|ρ|x−ξ/2⟩ integrated directly
/// with position wavefunctions. Restricted to rho.dim() <= dim_cap <= 12.
double wigner_quadrature_oracle(const DensityMatrix& rho, double x, double p, int dim_cap = 12);

/// Composite Simpson over both axes.
double simpson_2d(const Eigen::MatrixXd& values, const PhaseGrid& grid);

struct NegativityResult {
    double value = 0.0;           // ∬|W| − 1
    double error_estimate = 0.0;  // |full − half-resolution|
    double normalization = 0.0;   // ∬W
};

NegativityResult negativity(const WignerField& w);

}  // namespace curvjc
