#pragma once

/** Equivariant spectral invariants of a U(n)-invariant toric metric on the simplex.

    The spectral functional
        I(rho, alpha) = int_P rho(alpha^T H alpha) sqrt(det H) dx,     H = Hess g,
    the raw phase-space integral it comes from
        int_{P x R^n} F(alpha^T H alpha + xi^T H^{-1} xi) dx dxi,
    and the radial reduction that links them,
        rho(t) = int_0^inf F(t + r^2) r^(n-1) dr
               = (1/2) int_t^inf F(s) (s - t)^((n-2)/2) ds,
    with raw = sphere_area(n) * I(rho, alpha).
*/

#include "toricspec/abel.hpp"
#include "toricspec/metric.hpp"

#include <cstdint>
#include <vector>

namespace toricspec {

/// Area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

struct QuadratureSpec {
    SimplexScheme scheme = SimplexScheme::tensor_duffy;
    long budget = 256;
    std::uint64_t seed = 0;
};

struct InvariantRequest {
    RadialProfile profile = RadialProfile::polynomial({0.0});
    std::vector<double> alpha;  ///< length n
    SupportedFunction rho;
    QuadratureSpec quadrature;
};

/// int_P rho(alpha^T H alpha) sqrt(det H) dx. Throws std::invalid_argument on a
/// non-finite alpha or an invalid profile.
Estimate spectral_invariant(const InvariantRequest& req);

enum class RawMode { reduced, brute_force };

/// The raw invariant.
///   reduced:     sphere_area(n) int_P sqrt(det H) [int_0^inf F(Q + r^2) r^(n-1) dr] dx,
///                integrated with `quad` (the inner radial integral by Gauss-Legendre).
///   brute_force: Monte Carlo over P x box of F(Q + xi^T H^{-1} xi), `quad.budget` samples.
///                The xi box comes from a sampled bound on (sup F - Q) * H_kk over P; if
///                that bound is attained at the sampled boundary layer the box cannot be
///                certified and std::runtime_error is thrown.
Estimate raw_invariant(const RadialProfile& profile, std::span<const double> alpha,
                       const SupportedFunction& F, RawMode mode, const QuadratureSpec& quad);

/// rho(t) = (1/2) int_t^inf F(s) (s - t)^((n-2)/2) ds at one point.
double rho_from_F_at(const SupportedFunction& F, int n, double t, int panels = 256);

/// rho on `points` uniform nodes of [0, F.hi].
GridFunction rho_from_F(const SupportedFunction& F, int n, std::size_t points = 4097,
                        int panels = 256);
GridFunction rho_from_F(const BumpFunction& F, int n, std::size_t points = 4097, int panels = 256);
/// F is read by linear interpolation and taken as zero outside its grid.
GridFunction rho_from_F(const GridFunction& F, int n, std::size_t points = 0, int panels = 256);

/// Inverse of rho_from_F on rho's grid. rho must vanish at the right end of its grid.
///   n = 1: F = -(2/pi) d/dt int_t^T rho(s) (s - t)^{-1/2} ds   (right-sided Abel inversion)
///   n = 2: F = -2 rho'
///   n >= 3: f = F_from_rho(-2 rho / (n - 2), n - 2), F = f'
GridFunction F_from_rho(const GridFunction& rho, int n, const AbelOptions& opt = {});

/// n = 1 inversion through the reciprocal variable v = 1/t: with q(v) = rho(1/v)/sqrt(v),
///   F(t) = 2 / (pi t^{3/2}) * [d/dv J q](1/t),
/// J the left-sided Abel transform. Needs rho supported in (t_min, T] with t_min > 0;
/// returns F on `points` uniform nodes of [t_min, T]. Cross-check for the n = 1 path.
GridFunction F_from_rho_reciprocal(const ScalarFunction& rho, double t_min, double t_max,
                                   std::size_t abel_points = 8192, std::size_t points = 1025);

}  // namespace toricspec
