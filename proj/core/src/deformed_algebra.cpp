#include "curvjc/deformed_algebra.hpp"

#include "curvjc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvjc {

double gamma(double lambda) {
    if (!(lambda >= 0.0)) {
        throw DomainError("curvature lambda must be >= 0, got " + std::to_string(lambda));
    }
    return 0.5 * (lambda + std::sqrt(lambda * lambda + 4.0));
}

Curvature::Curvature(double lambda) : lambda_(lambda), gamma_(curvjc::gamma(lambda)) {}

double coupling_strength(int n, double lambda) {
    if (n < 0) {
        throw DomainError("Fock index must be >= 0, got " + std::to_string(n));
    }
    const double nn = static_cast<double>(n);
    return std::sqrt((nn + 1.0) * (gamma(lambda) + 0.5 * lambda * nn));
}

LadderRep build_ladder_rep(double lambda, int dim) {
    if (dim < 2) {
        throw DomainError("ladder representation needs dim >= 2, got " + std::to_string(dim));
    }
    LadderRep rep;
    rep.dim = dim;
    rep.lambda = lambda;
    rep.lowering = Eigen::MatrixXcd::Zero(dim, dim);
    rep.number = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        rep.lowering(n, n + 1) = coupling_strength(n, lambda);
    }
    for (int n = 0; n < dim; ++n) {
        rep.number(n, n) = n;
    }
    rep.raising = rep.lowering.adjoint();
    return rep;
}

bool AlgebraReport::all_passed() const {
    return std::all_of(relations.begin(), relations.end(),
                       [](const RelationDeviation& r) { return r.passed; });
}

double AlgebraReport::worst() const {
    double w = 0.0;
    for (const auto& r : relations) w = std::max(w, r.max_abs_deviation);
    return w;
}

namespace {

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a * b - b * a;
}

}  // namespace

AlgebraReport verify_algebra(const LadderRep& rep, double lambda, double tol) {
    const double g = gamma(lambda);
    const int dim = rep.dim;
    const int inner = dim - 1;

    const Eigen::MatrixXcd a = rep.lowering;
    const Eigen::MatrixXcd ad = rep.raising;
    const Eigen::MatrixXcd n = rep.number.cast<std::complex<double>>();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);

    // su(1,1) images: K⁻ = a_λ, K⁺ = a†_λ, K⁰ = (λn̂ + γ)/2
    const Eigen::MatrixXcd k0 = 0.5 * (lambda * n + g * id);

    struct Check {
        const char* name;
        Eigen::MatrixXcd lhs;
        Eigen::MatrixXcd rhs;
    };
    const Check checks[] = {
        {"[n, a] = -a", commutator(n, a), -a},
        {"[n, a+] = a+", commutator(n, ad), ad},
        {"[a, a+] = lambda*n + gamma", commutator(a, ad), lambda * n + g * id},
        {"[K0, K-] = -(lambda/2) K-", commutator(k0, a), -0.5 * lambda * a},
        {"[K0, K+] = (lambda/2) K+", commutator(k0, ad), 0.5 * lambda * ad},
        {"[K+, K-] = -2 K0", commutator(ad, a), -2.0 * k0},
    };

    AlgebraReport report;
    for (const auto& c : checks) {
        const double dev =
            (c.lhs - c.rhs).topLeftCorner(inner, inner).cwiseAbs().maxCoeff();
        report.relations.push_back({c.name, dev, dev <= tol});
    }
    return report;
}

}  // namespace curvjc
