#pragma once

#include <Eigen/Dense>

namespace curvjc {

/// Hermitian, unit-trace, positive semidefinite matrix over a truncated basis.
class DensityMatrix {
public:
    DensityMatrix() = default;
    /// Validates the invariants (Hermitian within 1e-12, trace 1 within 1e-10,
    /// eigenvalues >= -1e-10) and throws InvariantError otherwise.
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    std::complex<double> operator()(int row, int col) const { return entries_(row, col); }

    double trace() const;
    double purity() const;
    /// Ascending eigenvalues, with values in [-1e-10, 0) clipped to zero.
    Eigen::VectorXd eigenvalues() const;
    /// Largest |ρ − ρ†| entry.
    double hermiticity_residual() const;

    /// Clips eigenvalues in [-1e-10, 0) to zero and restores unit trace.
    /// Returns *this unchanged when the spectrum is already nonnegative.
    DensityMatrix clipped() const;

private:
    Eigen::MatrixXcd entries_;
};

/// -Σ λ ln λ over eigenvalues above `floor` (0·ln 0 := 0), in nats.
double von_neumann_entropy(const Eigen::VectorXd& eigenvalues, double floor = 0.0);

}  // namespace curvjc
