#pragma once

/** Recovery of a U(n)-invariant metric from its spectral profile.

    On the half P+ = {x1 > x2} of the simplex the coordinates
        nu = 1/x1 + 1/x2,   mu_k = x1 + ... + xk   (k = 2..n)
    turn the spectral functional with alpha = (1, -1, 0, ..., 0) into
        2 int_4^inf rho(nu) nu^{-3/2} f_u(nu) dnu,
    where, with a = 4/nu and V(mu) = sqrt(1/(1-mu) + mu h''(mu)),
        f_u(nu) = int_{a < mu_2 < ... < mu_n < 1} V(mu_n) / (sqrt(mu_2 - a) prod_j sqrt(mu_j - mu_{j-1})).
    In s = 1 - mu this is the (n-1)-fold left Abel transform of s -> V(1 - s) read at
    s1 = 1 - 4/nu, so f_u determines V and hence h''.
*/

#include "toricspec/abel.hpp"
#include "toricspec/invariant.hpp"
#include "toricspec/metric.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace toricspec {

/// (nu, mu_2, ..., mu_n) with 4/nu < mu_2 < ... < mu_n < 1.
struct NuMuPoint {
    double nu = 0.0;
    std::vector<double> mu;
};

/// x in P+ (x1 > x2) from (nu, mu). Throws std::domain_error outside the region,
/// including the degenerate x1 = x2 locus nu = 4/mu_2.
std::vector<double> cov_inverse(const NuMuPoint& p, int n);

/// (nu, mu) from an interior x with x1 > x2.
NuMuPoint cov_forward(std::span<const double> x);

/// |det d x / d(nu, mu)| = mu2 / (nu^2 sqrt(mu2^2 - 4 mu2 / nu)).
double jacobian_factor(double nu, double mu2);

/// s1 = 1 - 4/nu and its inverse.
double s_from_nu(double nu);
double nu_from_s(double s1);

/// sqrt(s) V(1 - s) on `points` uniform nodes of [0, 1]: the bounded factor of V(1 - s).
GridFunction regular_v_grid(const RadialProfile& profile, std::size_t points);

/// f_u(nu) through the Abel form on a grid of `points` nodes. Requires nu > 4.
double fu_forward(const RadialProfile& profile, double nu, int n, std::size_t points = 2048);

/// f_u at s1 = 1 - 4/nu in [0, 1); s1 = 0 is the nu -> 4 limit (pi for n = 2, 0 for n > 2).
double fu_forward_s(const RadialProfile& profile, double s1, int n, std::size_t points = 2048);

/// f_u on `points` uniform nodes of [0, s_max], every node through the same Abel grid.
GridFunction fu_curve(const RadialProfile& profile, int n, double s_max, std::size_t points);

/// f_u by nested singular quadrature in the original mu coordinates (independent oracle).
double fu_direct(const RadialProfile& profile, double nu, int n, int panels = 64);

struct Extraction {
    double value = 0.0;                  ///< extrapolated to zero width
    std::vector<double> widths;
    std::vector<double> normalized;      ///< invariant / (2 nu0^{-3/2} int rho) per width
    std::vector<double> quadrature_error;
};

/// f_u(nu0) from values of the spectral functional alone: bumps rho of half-width w
/// centred at nu0, alpha = (1, -1, 0, ...), tensor quadrature with `budget` panels per axis,
/// extrapolated to w = 0 in w^2.
Extraction invariant_to_fu(const RadialProfile& profile, int n, double nu0,
                           const std::vector<double>& widths, long budget = 1024,
                           std::uint64_t seed = 0);

struct ReconstructionReport {
    int n = 0;
    std::size_t points = 0;  ///< grid nodes of the input; mu has one more row (mu = 0)
    double s_max = 0.0;
    double nu_max = 0.0;
    std::vector<double> mu;
    std::vector<double> recovered_v;
    std::vector<double> recovered_hpp;
    std::optional<std::vector<double>> reference_hpp;
    std::vector<bool> extrapolated;  ///< nodes filled by extrapolation rather than inversion
    double window_lo = 0.05;
    double window_hi = 0.95;
    double sup_error = 0.0;
    double l2_error = 0.0;
    double covered_mu_lo = 0.0;  ///< mu below this is not reached by data with nu <= nu_max

    void write_csv(std::ostream& os) const;
};

/// Invert f_u given on a uniform s1 grid [0, s_max] (s1 = 1 - 4/nu). `fu` must be the
/// plain values; the known s1^{(n-2)/2} endpoint factor is divided out internally.
/// Recovers V on mu in [1 - s_max, 1) and h'' there. Two flagged rows are added: mu = 1
/// (h'' by linear extrapolation) and mu = 0 (V = 1 exactly, h'' by quadratic extrapolation);
/// mu in (0, 1 - s_max) is left uncovered. Errors against `reference` are measured on
/// [window_lo, window_hi] intersected with the covered range.
/// Throws std::runtime_error if the recovered V is not positive.
ReconstructionReport reconstruct_profile(const GridFunction& fu, int n,
                                         const RadialProfile* reference = nullptr,
                                         const AbelOptions& opt = {});

}  // namespace toricspec
