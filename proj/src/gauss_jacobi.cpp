#include "chainbf/detail/gauss_jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "chainbf/errors.hpp"

namespace chainbf::detail {

QuadratureRule beta_gauss_rule(double a, double b, int m) {
    if (!(a > 0.0 && b > 0.0) || m < 1) {
        throw DomainError("beta_gauss_rule: need a, b > 0 and m >= 1");
    }
    // Jacobi weight (1 - s)^alpha (1 + s)^beta on [-1, 1] with x = (1 + s) / 2.
    const double alpha = b - 1.0;
    const double beta = a - 1.0;
    const double ab = alpha + beta;

    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
    diag(0) = (beta - alpha) / (ab + 2.0);
    for (int n = 1; n < m; ++n) {
        const double nn = n;
        const double s = 2.0 * nn + ab;
        diag(n) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        double bn = 0.0;
        if (n == 1) {
            bn = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            bn = 4.0 * nn * (nn + alpha) * (nn + beta) * (nn + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        sub(n - 1) = std::sqrt(bn);
    }

    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    if (m == 1) {
        rule.nodes[0] = 0.5 * (1.0 + diag(0));
        rule.weights[0] = 1.0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw DomainError("beta_gauss_rule: eigenvalue iteration did not converge");
    }
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 + solver.eigenvalues()(i));
        rule.weights[static_cast<std::size_t>(i)] = v0 * v0;
        total += v0 * v0;
    }
    for (double& w : rule.weights) {
        w /= total;
    }
    return rule;
}

}  // namespace chainbf::detail
