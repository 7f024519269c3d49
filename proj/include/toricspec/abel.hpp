#pragma once

/** The half-order fractional integral (Abel transform)

      left:   J f(x) = int_lo^x f(v) / sqrt(x - v) dv
      right:  J f(x) = int_x^hi f(v) / sqrt(v - x) dv

    and its inverse f = (1/pi) d/dx J(J f) (left) or -(1/pi) d/dx J(J f) (right).
    The 1/pi follows from J(J f)(x) = pi int_lo^x f.

    All transforms use product integration: the smooth part of the input is taken as
    piecewise linear between grid nodes and every cell integral against the kernel is
    evaluated in closed form. Left-sided inputs may carry an explicit endpoint factor
    (x - lo)^power (WeightedGrid), which is how s^{-1/2}-singular data and the sqrt(x)
    behaviour of transformed data are represented without loss of accuracy.
*/

#include "toricspec/numerics.hpp"

namespace toricspec {

enum class AbelSide { left, right };

/// f(x) = (x - lo)^power * regular(x); power is a half-integer >= -1/2.
struct WeightedGrid {
    GridFunction regular;
    double power = 0.0;

    double operator()(double x) const;
    /// Plain samples; requires power >= 0.
    GridFunction values() const;
    /// Split plain samples g = (x - lo)^power * regular; the lo node of `regular` is
    /// filled by quadratic extrapolation when power > 0.
    static WeightedGrid from_values(const GridFunction& g, double power);
};

struct AbelOptions {
    /// Apply a 1-2-1 binomial smoother before differentiating inside the inverse.
    bool smooth = false;
};

/// J f at the nodes of f's grid.
GridFunction abel_forward(const GridFunction& f, AbelSide side);

/// Left-sided J of a weighted input; the result has power + 1/2.
WeightedGrid abel_forward(const WeightedGrid& f);

/// Left-sided J f evaluated at an arbitrary x in [lo, hi].
double abel_at(const WeightedGrid& f, double x);

/// Inverse transform. The left-sided input must vanish at lo (it behaves like
/// sqrt(x - lo) near lo); the right-sided input must vanish at hi.
GridFunction abel_inverse(const GridFunction& g, AbelSide side, const AbelOptions& opt = {});

/// Left-sided inverse of a weighted input with power >= 0; the result has power - 1/2.
WeightedGrid abel_inverse(const WeightedGrid& g, const AbelOptions& opt = {});

/// k-fold application of abel_forward; k = 0 is the identity.
GridFunction abel_iterate(const GridFunction& f, int k, AbelSide side);
WeightedGrid abel_iterate(const WeightedGrid& f, int k);

/// Beta(power + 1, 1/2): the value of J(y^power)(x) / x^(power + 1/2).
double abel_power_constant(double power);

}  // namespace toricspec
