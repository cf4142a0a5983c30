#include "curvjc/phase_space.hpp"

#include "curvjc/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace curvjc {

namespace {

constexpr double kImagResidueTol = 1e-10;
constexpr double kInvPi = std::numbers::inv_pi;

// Composite Simpson weights (h/3 · 1,4,2,...,4,1) for n odd nodes.
std::vector<double> simpson_weights(int n, double h) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        w[i] = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[i] *= h / 3.0;
    }
    return w;
}

double weighted_sum(const Eigen::MatrixXd& values, const std::vector<double>& wx,
                    const std::vector<double>& wp, bool absolute) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            const double v = absolute ? std::abs(values(i, j)) : values(i, j);
            row += wp[j] * v;
        }
        total += wx[i] * row;
    }
    return total;
}

double trapezoid_abs(const Eigen::MatrixXd& values, const PhaseGrid& grid) {
    std::vector<double> wx(grid.nx, grid.dx()), wp(grid.np, grid.dp());
    wx.front() = wx.back() = 0.5 * grid.dx();
    wp.front() = wp.back() = 0.5 * grid.dp();
    return weighted_sum(values, wx, wp, true);
}

// Sum over one node. `rho` is column-major dense, dim×dim.
double wigner_node(const Eigen::MatrixXcd& rho, double x, double p, std::vector<double>& h) {
    const int dim = static_cast<int>(rho.rows());
    const double r2 = x * x + p * p;
    const double u = 2.0 * r2;
    const std::complex<double> z{std::numbers::sqrt2 * x, std::numbers::sqrt2 * p};

    // g_k = e^{−r²} z^k / √(k!)
    std::complex<double> g_k = std::exp(-r2);
    double total = 0.0;
    for (int k = 0; k < dim; ++k) {
        if (k > 0) g_k *= z / std::sqrt(static_cast<double>(k));
        const int count = dim - k;
        scaled_laguerre(k, u, count, h.data());
        std::complex<double> s{0.0, 0.0};
        for (int n = 0; n < count; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            s += sign * h[n] * rho(n, n + k);
        }
        const double contrib = (s * g_k).real();
        total += (k == 0) ? contrib : 2.0 * contrib;
    }
    return kInvPi * total;
}

void check_imaginary_residue(const DensityMatrix& rho) {
    const auto& m = rho.entries();
    double residue = rho.hermiticity_residual();
    for (Eigen::Index i = 0; i < m.rows(); ++i) residue = std::max(residue, std::abs(m(i, i).imag()));
    if (residue >= kImagResidueTol) {
        throw InvariantError("Wigner function real (Hermitian symmetry)",
                             "imaginary residue bound " + std::to_string(residue));
    }
}

}  // namespace

void PhaseGrid::validate() const {
    if (!(x_min < x_max)) throw DomainError("phase grid requires x_min < x_max");
    if (!(p_min < p_max)) throw DomainError("phase grid requires p_min < p_max");
    if (nx < 3 || np < 3) throw DomainError("phase grid needs at least 3 nodes per axis");
    if (nx % 2 == 0 || np % 2 == 0) {
        throw DomainError("phase grid point counts must be odd (Simpson-compatible), got " +
                          std::to_string(nx) + "x" + std::to_string(np));
    }
}

PhaseGrid PhaseGrid::coarsened() const {
    PhaseGrid g = *this;
    g.nx = (nx + 1) / 2;
    g.np = (np + 1) / 2;
    return g;
}

double WignerField::normalization() const { return simpson_2d(values, grid); }

DensityMatrix reduced_field_density(const JointState& state) {
    const int dim = state.field_dim();
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(dim);
    for (int n = 0; n + 1 < dim; ++n) {
        e(n) = state.excited[n];
        g(n + 1) = state.ground[n];
    }
    Eigen::MatrixXcd rho = e * e.adjoint() + g * g.adjoint();
    return DensityMatrix(std::move(rho)).clipped();
}

void scaled_laguerre(int k, double u, int count, double* out) {
    if (count <= 0) return;
    out[0] = 1.0;
    if (count == 1) return;
    const double kk = k;
    out[1] = (1.0 + kk - u) / std::sqrt(1.0 + kk);
    for (int n = 1; n + 1 < count; ++n) {
        const double nn = n;
        out[n + 1] = ((2.0 * nn + 1.0 + kk - u) * out[n] - std::sqrt(nn * (nn + kk)) * out[n - 1]) /
                     std::sqrt((nn + 1.0) * (nn + 1.0 + kk));
    }
}

double laguerre(int n, int k, double u) {
    if (n < 0) throw DomainError("Laguerre degree must be >= 0");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + k - u;
    for (int j = 1; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 + k - u) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::complex<double> fock_wigner_kernel(int n, int m, double x, double p) {
    if (n < 0 || m < 0) throw DomainError("Fock indices must be >= 0");
    if (m < n) return std::conj(fock_wigner_kernel(m, n, x, p));
    const int k = m - n;
    const double r2 = x * x + p * p;
    const std::complex<double> z{std::numbers::sqrt2 * x, std::numbers::sqrt2 * p};
    std::complex<double> g_k = std::exp(-r2);
    for (int j = 1; j <= k; ++j) g_k *= z / std::sqrt(static_cast<double>(j));
    std::vector<double> h(static_cast<std::size_t>(n) + 1);
    scaled_laguerre(k, 2.0 * r2, n + 1, h.data());
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return kInvPi * sign * h[n] * g_k;
}

WignerField wigner(const DensityMatrix& rho, const PhaseGrid& grid, double time, double lambda) {
    grid.validate();
    check_imaginary_residue(rho);

    WignerField out;
    out.grid = grid;
    out.time = time;
    out.lambda = lambda;
    out.values.resize(grid.nx, grid.np);

    const Eigen::MatrixXcd& m = rho.entries();
    const int dim = rho.dim();
#pragma omp parallel
    {
        std::vector<double> h(static_cast<std::size_t>(dim));
#pragma omp for schedule(static)
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            for (int j = 0; j < grid.np; ++j) {
                out.values(i, j) = wigner_node(m, x, grid.p(j), h);
            }
        }
    }
    return out;
}

double wigner_at(const DensityMatrix& rho, double x, double p) {
    check_imaginary_residue(rho);
    std::vector<double> h(static_cast<std::size_t>(rho.dim()));
    return wigner_node(rho.entries(), x, p, h);
}

double hermite_function(int n, double y) {
    if (n < 0) throw DomainError("Hermite index must be >= 0");
    double prev = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
    if (n == 0) return prev;
    double cur = std::numbers::sqrt2 * y * prev;
    for (int j = 1; j < n; ++j) {
        const double next =
            std::sqrt(2.0 / (j + 1.0)) * y * cur - std::sqrt(static_cast<double>(j) / (j + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double wigner_quadrature_oracle(const DensityMatrix& rho, double x, double p, int dim_cap) {
    if (dim_cap > 12) throw DomainError("quadrature oracle is limited to dim_cap <= 12");
    const int dim = rho.dim();
    if (dim > dim_cap) {
        throw DomainError("density matrix dimension " + std::to_string(dim) + " exceeds dim_cap " +
                          std::to_string(dim_cap));
    }
    // ψ_n(y) is negligible beyond |y| ≈ 10 for n ≤ 11, so |ξ| ≤ 2(|x| + 10) suffices.
    // The integrand is smooth and decays like a Gaussian: the trapezoid rule
    // converges geometrically.
    const double half_span = 2.0 * (std::abs(x) + 10.0);
    const double h = 0.01;
    const int steps = static_cast<int>(std::ceil(2.0 * half_span / h));
    const double step = 2.0 * half_span / steps;

    const Eigen::MatrixXcd& m = rho.entries();
    Eigen::VectorXd plus(dim), minus(dim);
    std::complex<double> total{0.0, 0.0};
    for (int s = 0; s <= steps; ++s) {
        const double xi = -half_span + s * step;
        for (int n = 0; n < dim; ++n) {
            plus(n) = hermite_function(n, x + 0.5 * xi);
            minus(n) = hermite_function(n, x - 0.5 * xi);
        }
        const std::complex<double> matrix_element =
            (plus.cast<std::complex<double>>().transpose() * m * minus.cast<std::complex<double>>())(0, 0);
        const double weight = (s == 0 || s == steps) ? 0.5 : 1.0;
        total += weight * std::polar(1.0, -p * xi) * matrix_element;
    }
    return (total * step).real() / (2.0 * std::numbers::pi);
}

double simpson_2d(const Eigen::MatrixXd& values, const PhaseGrid& grid) {
    return weighted_sum(values, simpson_weights(grid.nx, grid.dx()),
                        simpson_weights(grid.np, grid.dp()), false);
}

NegativityResult negativity(const WignerField& w) {
    const auto wx = simpson_weights(w.grid.nx, w.grid.dx());
    const auto wp = simpson_weights(w.grid.np, w.grid.dp());
    NegativityResult r;
    const double abs_full = weighted_sum(w.values, wx, wp, true);
    r.value = abs_full - 1.0;
    r.normalization = weighted_sum(w.values, wx, wp, false);

    double abs_other = 0.0;
    if (w.grid.coarsenable()) {
        const PhaseGrid coarse = w.grid.coarsened();
        Eigen::MatrixXd sub(coarse.nx, coarse.np);
        for (int i = 0; i < coarse.nx; ++i)
            for (int j = 0; j < coarse.np; ++j) sub(i, j) = w.values(2 * i, 2 * j);
        abs_other = weighted_sum(sub, simpson_weights(coarse.nx, coarse.dx()),
                                 simpson_weights(coarse.np, coarse.dp()), true);
    } else {
        abs_other = trapezoid_abs(w.values, w.grid);
    }
    r.error_estimate = std::abs(abs_full - abs_other);
    return r;
}

}  // namespace curvjc
