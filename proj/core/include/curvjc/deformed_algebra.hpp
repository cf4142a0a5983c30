// deformed_algebra.hpp: curvature-deformed oscillator algebra on a circle

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace curvjc {

/// Curvature λ = R⁻² of the circle hosting the oscillator. Always ≥ 0.
class Curvature {
public:
    explicit Curvature(double lambda);

    double value() const noexcept { return lambda_; }
    /// Positive root of γ² − λγ − 1 = 0.
    double gamma() const noexcept { return gamma_; }

private:
    double lambda_;
    double gamma_;
};

/// γ(λ) = (λ + √(λ² + 4)) / 2. Throws DomainError for λ < 0.
double gamma(double lambda);

/// κ_λ(n) = √((n+1)(γ + λn/2)) = ⟨n+1| a†_λ |n⟩.
double coupling_strength(int n, double lambda);

/// Dense number-basis representation of the deformed ladder operators.
struct LadderRep {
    int dim = 0;
    double lambda = 0.0;
    Eigen::MatrixXcd lowering;  // a_λ, nonzero only on (n, n+1)
    Eigen::MatrixXcd raising;   // a†_λ
    Eigen::MatrixXd number;     // diag(0 .. dim-1)
};

LadderRep build_ladder_rep(double lambda, int dim);

struct RelationDeviation {
    std::string relation;
    double max_abs_deviation = 0.0;
    bool passed = false;
};

struct AlgebraReport {
    std::vector<RelationDeviation> relations;

    bool all_passed() const;
    double worst() const;
};

/// Checks the deformed commutators and the λ-deformed su(1,1) relations on the
/// interior block (the last basis state is dropped: truncation breaks them there).
AlgebraReport verify_algebra(const LadderRep& rep, double lambda, double tol);

}  // namespace curvjc
