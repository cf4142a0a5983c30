#include "curvjc/density_matrix.hpp"

#include "curvjc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace curvjc {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kNegativeEigTol = 1e-10;

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvariantError("density matrix square", "got " + std::to_string(entries_.rows()) +
                                                          "x" + std::to_string(entries_.cols()));
    }
    const double herm = hermiticity_residual();
    if (herm > kHermitianTol) {
        throw InvariantError("density matrix Hermitian", "residual " + std::to_string(herm));
    }
    const double tr = trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw InvariantError("density matrix unit trace", "trace " + std::to_string(tr));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kNegativeEigTol) {
        throw InvariantError("density matrix positive semidefinite",
                             "eigenvalue " + std::to_string(min_eig));
    }
}

double DensityMatrix::trace() const { return entries_.trace().real(); }

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::hermiticity_residual() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = solver.eigenvalues();
    for (auto& v : ev) {
        if (v < 0.0) v = 0.0;
    }
    return ev;
}

DensityMatrix DensityMatrix::clipped() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_);
    Eigen::VectorXd ev = solver.eigenvalues();
    if (ev.minCoeff() >= 0.0) return *this;
    for (auto& v : ev) {
        if (v < 0.0) v = 0.0;
    }
    ev /= ev.sum();
    const auto& vecs = solver.eigenvectors();
    Eigen::MatrixXcd rebuilt = vecs * ev.cast<std::complex<double>>().asDiagonal() * vecs.adjoint();
    rebuilt = 0.5 * (rebuilt + rebuilt.adjoint()).eval();
    return DensityMatrix(std::move(rebuilt));
}

double von_neumann_entropy(const Eigen::VectorXd& eigenvalues, double floor) {
    double s = 0.0;
    for (const double v : eigenvalues) {
        if (v > floor && v > 0.0) s -= v * std::log(v);
    }
    return s;
}

}  // namespace curvjc
