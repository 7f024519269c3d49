#pragma once

/** U(n)-invariant symplectic potentials g = g0 + h(x_1 + ... + x_n) on the standard simplex.
    Everything about the metric is a function of h'' alone:

      Hess g   = diag(1/x_i) + U(t) J,          U(t) = 1/(1-t) + h''(t),  t = sum x_i
      det Hess = (1/(1-t) + t h''(t)) / prod x_i
      V(mu)    = sqrt(1/(1-mu) + mu h''(mu))

    where J is the all-ones matrix.
*/

#include "toricspec/numerics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace toricspec {

/// The unknown of a U(n)-invariant metric: h'' on [0, 1]. The gauge h(0) = h'(0) = 0 fixes
/// h itself when values of the potential are needed.
class RadialProfile {
public:
    /// h''(t) = sum_i c_i t^i.
    static RadialProfile polynomial(std::vector<double> coefficients);
    /// Tabulated h'' with monotone cubic interpolation; samples must cover [0, 1].
    static RadialProfile table(std::vector<double> t, std::vector<double> hpp);
    static RadialProfile table(const GridFunction& hpp);

    double hpp(double t) const;
    double hp(double t) const;
    double h(double t) const;

    bool is_polynomial() const { return std::holds_alternative<std::vector<double>>(rep_); }
    /// Polynomial coefficients, when that is the representation.
    std::optional<std::vector<double>> coefficients() const;

private:
    using Rep = std::variant<std::vector<double>, MonotoneCubic>;
    explicit RadialProfile(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

/// diag(1/x_i) + rank_one_coeff * J.
struct HessianClosedForm {
    Eigen::VectorXd diag;
    double rank_one_coeff;

    Eigen::MatrixXd assemble() const;
};

/// U(t) = 1/(1-t) + h''(t). Throws std::domain_error for t >= 1.
double u_value(const RadialProfile& prof, double t);

HessianClosedForm hessian_closed_form(const RadialProfile& prof, std::span<const double> x);
Eigen::MatrixXd hessian(const RadialProfile& prof, std::span<const double> x);

/// alpha^t Hess(g) alpha = sum alpha_i^2/x_i + U(t) (sum alpha_i)^2.
double quadratic_form(const RadialProfile& prof, std::span<const double> alpha,
                      std::span<const double> x);

/// (1/(1-t) + t h''(t)) / prod x_i.
double det_hessian(const RadialProfile& prof, std::span<const double> x);

/// Determinant of the leading k x k block: (1 + U(t) sum_{i<=k} x_i) / prod_{i<=k} x_i.
double leading_minor(const RadialProfile& prof, std::span<const double> x, int k);

/// g0(x) + h(sum x_i) on the closed simplex, in the gauge h(0) = h'(0) = 0.
double symplectic_potential(const RadialProfile& prof, std::span<const double> x);

/// delta(t) = 1 / (1 + t(1-t) h''(t)), so that det Hess g = (delta prod l_i)^{-1}.
double delta_value(const RadialProfile& prof, double t);

/// V(mu) = sqrt(1/(1-mu) + mu h''(mu)). Throws for mu >= 1 or a negative radicand.
double v_value(const RadialProfile& prof, double mu);

/// sqrt(1-mu) V(mu) = sqrt(1 + mu(1-mu) h''(mu)); finite on the closed interval.
double v_regularized(const RadialProfile& prof, double mu);

/// h''(mu) = (V(mu)^2 - 1/(1-mu)) / mu on a grid of [lo, hi] with hi < 1.
/// A node at mu = 0 is filled by quadratic extrapolation from the next three nodes.
GridFunction recover_hpp_from_v(const GridFunction& v);

struct ValidityReport {
    bool valid = true;
    double min_numerator = 0.0;  ///< min over the grid of 1 + t(1-t) h''(t)
    double argmin = 0.0;
    std::string diagnostic;
};

/// Checks 1 + t(1-t) h''(t) > 0 on a uniform grid of [0, 1] and spot-checks the leading
/// principal minors of Hess(g) at seeded random interior points of the n-simplex.
ValidityReport is_valid(const RadialProfile& prof, int n = 2, std::size_t grid_points = 10001,
                        int spot_checks = 64, std::uint64_t seed = 1);

}  // namespace toricspec
