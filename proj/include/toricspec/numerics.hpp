#pragma once

/** Grids, interpolation and the quadrature machinery shared by every transform
    in the library: square-root substitution rules for endpoint 1/sqrt singularities,
    Duffy-type tensor quadrature over the standard simplex, and reproducible
    (counter-based, fixed reduction order) Monte Carlo integration.
*/

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace toricspec {

using ScalarFunction = std::function<double(double)>;
using VectorFunction = std::function<double(std::span<const double>)>;

/// Uniformly sampled function on [lo, hi]; node i sits at lo + i*(hi-lo)/(N-1).
class GridFunction {
public:
    GridFunction(double lo, double hi, std::vector<double> values);

    /// Sample f at N uniform nodes of [lo, hi].
    static GridFunction sample(const ScalarFunction& f, double lo, double hi, std::size_t n);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t size() const { return values_.size(); }
    double step() const { return (hi_ - lo_) / double(values_.size() - 1); }
    double node(std::size_t i) const;
    std::vector<double> nodes() const;

    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Piecewise-linear interpolation; constant extension outside [lo, hi].
    double operator()(double x) const;

    /// The same samples read on the mirrored grid x -> lo + hi - x.
    GridFunction reversed() const;

private:
    double lo_, hi_;
    std::vector<double> values_;
};

/// Shape-preserving piecewise cubic Hermite interpolation (Fritsch-Carlson slopes).
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    explicit MonotoneCubic(const GridFunction& g);

    double operator()(double x) const;
    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }

private:
    std::vector<double> x_, y_, slope_;
};

/// Smooth compactly supported test function
///   rho(t) = exp(1 - 1/(1 - ((t-c)/w)^2)) for |t-c| < w, and 0 otherwise,
/// normalized so that rho(c) = 1.
struct BumpFunction {
    double center;
    double half_width;

    BumpFunction(double center, double half_width);

    double operator()(double t) const;
    double support_lo() const { return center - half_width; }
    double support_hi() const { return center + half_width; }
    /// Integral over the real line.
    double integral() const;
};

/// A scalar function together with an interval outside of which it vanishes.
struct SupportedFunction {
    ScalarFunction f;
    double lo;
    double hi;

    double operator()(double t) const { return (t < lo || t > hi) ? 0.0 : f(t); }
    static SupportedFunction from(const BumpFunction& b);
    static SupportedFunction from(const GridFunction& g);
};

/// Which end(s) of [a, b] carry a 1/sqrt blow-up.
enum class SingularEnd { none, left, right, both };

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    template <class F>
    double apply(F&& f) const
    {
        std::vector<double> terms(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            terms[i] = weights[i] * f(nodes[i]);
        return pairwise_sum_impl(terms);
    }

private:
    static double pairwise_sum_impl(std::span<const double> v);
};

/// Composite rule on [a, b] after the substitution x = a + u^2 (left), x = b - u^2
/// (right), or both halves split at the midpoint. Panels are 4-point Gauss-Legendre
/// cells in the substituted variable; the substitution Jacobian is folded into the weights.
QuadratureRule singular_rule(double a, double b, SingularEnd end, int panels);

/// Integral of f over [a, b] with at most a 1/sqrt singularity at the flagged end(s).
/// Throws std::invalid_argument for a >= b, std::domain_error when f returns NaN.
double integrate_singular(const ScalarFunction& f, double a, double b, SingularEnd end, int panels);

/// Plain composite Gauss-Legendre rule, used for smooth integrands.
double integrate_smooth(const ScalarFunction& f, double a, double b, int panels);

enum class SimplexScheme { tensor_duffy, monte_carlo };

struct Estimate {
    double value = 0.0;
    double error = 0.0;  ///< refinement difference (tensor) or standard error (Monte Carlo)
};

/// Integral of f over the open standard simplex {x_i > 0, sum x_i < 1} in R^n.
/// f may blow up like prod x_i^{-1/2} (1 - sum x_i)^{-1/2} at the boundary.
///   tensor_duffy: stick-breaking map x_k = u_k prod_{j<k}(1-u_j) to the unit cube with the
///     two-sided square-root rule on every axis; `budget` is the panel count per axis and the
///     error is |I(budget) - I(budget/2)|.
///   monte_carlo: Dirichlet(1/2,...,1/2) importance sampling, `budget` samples, seeded.
Estimate integrate_simplex(const VectorFunction& f, int n, SimplexScheme scheme, long budget,
                           std::uint64_t seed);

/// Axis-aligned box [lower_i, upper_i].
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;
    double volume() const;
};

/// Plain Monte Carlo over a box. Deterministic for a given seed regardless of threading.
Estimate monte_carlo_box(const VectorFunction& f, const Box& box, long samples, std::uint64_t seed);

/// Second-order finite differences (central inside, one-sided three-point at the ends).
GridFunction differentiate(const GridFunction& g);

/// Running integral from lo by the trapezoidal rule.
GridFunction cumulative_integral(const GridFunction& g);

/// 1-2-1 binomial smoother; end values are kept.
GridFunction binomial_smooth(const GridFunction& g);

/// Sum in a fixed pairwise order.
double pairwise_sum(std::span<const double> v);

/// Stateless counter-based generator: draw k of stream `seed` depends only on (seed, k).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t bits(std::uint64_t counter) const;
    /// Uniform on the open interval (0, 1).
    double uniform(std::uint64_t counter) const;
    /// Standard normal via Box-Muller on draws 2k and 2k+1.
    double normal(std::uint64_t k) const;

private:
    std::uint64_t seed_;
};

/// Run body(i) for i in [0, count) across the available hardware threads.
/// Work is partitioned statically; callers write into per-index slots and reduce afterwards.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Polynomial extrapolation of samples y(x) to x = 0 (Neville's scheme).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

}  // namespace toricspec
