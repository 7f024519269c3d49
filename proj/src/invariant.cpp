#include "toricspec/invariant.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace toricspec {

namespace {

constexpr int RADIAL_PANELS = 16;
constexpr double BOX_MARGIN = 1.25;

void require_profile(const RadialProfile& profile, int n, const char* who)
{
    const ValidityReport rep = is_valid(profile, n);
    if (!rep.valid)
        throw std::invalid_argument(std::string(who) + ": invalid profile: " + rep.diagnostic);
}

void require_alpha(std::span<const double> alpha, const char* who)
{
    if (alpha.empty())
        throw std::invalid_argument(std::string(who) + ": alpha is empty");
    for (double a : alpha)
        if (!std::isfinite(a))
            throw std::invalid_argument(std::string(who) + ": alpha is not finite");
}

/// int_0^inf F(Q + r^2) r^(n-1) dr over the r-interval where F can be nonzero.
double radial_integral(const SupportedFunction& F, int n, double Q)
{
    if (!(Q < F.hi))
        return 0.0;
    const double r_lo = std::sqrt(std::max(0.0, F.lo - Q));
    const double r_hi = std::sqrt(F.hi - Q);
    if (!(r_lo < r_hi))
        return 0.0;
    return integrate_smooth(
        [&](double r) { return F(Q + r * r) * std::pow(r, n - 1); }, r_lo, r_hi, RADIAL_PANELS);
}

/// Lattice points k/m of the open simplex, k_i >= 1, sum k_i <= m - 1.
template <class Visit>
void simplex_lattice(int n, int m, Visit&& visit)
{
    std::vector<int> k(std::size_t(n), 1);
    std::vector<double> x(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int axis, int used) -> void {
        if (axis == n) {
            bool boundary = used == m - 1;
            for (int i = 0; i < n; ++i) {
                x[std::size_t(i)] = double(k[std::size_t(i)]) / m;
                boundary = boundary || k[std::size_t(i)] == 1;
            }
            visit(std::span<const double>(x), boundary);
            return;
        }
        for (int v = 1; used + v <= m - 1 - (n - 1 - axis); ++v) {
            k[std::size_t(axis)] = v;
            self(self, axis + 1, used + v);
        }
    };
    rec(rec, 0, 0);
}

Box xi_box(const RadialProfile& profile, std::span<const double> alpha, double f_hi)
{
    const int n = int(alpha.size());
    const int m = n == 2 ? 400 : (n == 3 ? 90 : 30);
    std::vector<double> sup(std::size_t(n), 0.0);
    std::vector<bool> at_boundary(std::size_t(n), false);
    simplex_lattice(n, m, [&](std::span<const double> x, bool boundary) {
        const double slack = f_hi - quadratic_form(profile, alpha, x);
        if (!(slack > 0.0))
            return;
        const HessianClosedForm h = hessian_closed_form(profile, x);
        for (int k = 0; k < n; ++k) {
            const double b = slack * (h.diag[k] + h.rank_one_coeff);
            if (b > sup[std::size_t(k)]) {
                sup[std::size_t(k)] = b;
                at_boundary[std::size_t(k)] = boundary;
            }
        }
    });
    Box box;
    for (int k = 0; k < n; ++k) {
        box.lower.push_back(0.0);
        box.upper.push_back(1.0);
    }
    for (int k = 0; k < n; ++k) {
        if (at_boundary[std::size_t(k)])
            throw std::runtime_error(
                "raw_invariant: box construction failure: the xi bound peaks at the simplex "
                "boundary (choose alpha with nonzero components and nonzero sum)");
        const double half = std::sqrt(BOX_MARGIN * sup[std::size_t(k)]);
        box.lower.push_back(-half);
        box.upper.push_back(half);
    }
    return box;
}

}  // namespace

double sphere_area(int n)
{
    if (n < 1)
        throw std::invalid_argument("sphere_area: n must be positive");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

Estimate spectral_invariant(const InvariantRequest& req)
{
    const int n = int(req.alpha.size());
    require_alpha(req.alpha, "spectral_invariant");
    require_profile(req.profile, n, "spectral_invariant");
    if (!req.rho.f)
        throw std::invalid_argument("spectral_invariant: rho is empty");
    auto integrand = [&](std::span<const double> x) {
        const double q = quadratic_form(req.profile, req.alpha, x);
        const double r = req.rho(q);
        if (r == 0.0)
            return 0.0;
        return r * std::sqrt(det_hessian(req.profile, x));
    };
    return integrate_simplex(integrand, n, req.quadrature.scheme, req.quadrature.budget,
                             req.quadrature.seed);
}

Estimate raw_invariant(const RadialProfile& profile, std::span<const double> alpha,
                       const SupportedFunction& F, RawMode mode, const QuadratureSpec& quad)
{
    const int n = int(alpha.size());
    require_alpha(alpha, "raw_invariant");
    require_profile(profile, n, "raw_invariant");
    if (!F.f || !(F.lo < F.hi))
        throw std::invalid_argument("raw_invariant: F needs a nonempty support interval");

    if (mode == RawMode::reduced) {
        auto integrand = [&](std::span<const double> x) {
            const double inner = radial_integral(F, n, quadratic_form(profile, alpha, x));
            if (inner == 0.0)
                return 0.0;
            return inner * std::sqrt(det_hessian(profile, x));
        };
        Estimate e = integrate_simplex(integrand, n, quad.scheme, quad.budget, quad.seed);
        const double c = sphere_area(n);
        return {c * e.value, c * e.error};
    }

    const Box box = xi_box(profile, alpha, F.hi);
    if (box.upper[std::size_t(n)] == 0.0)
        return {0.0, 0.0};
    auto integrand = [&](std::span<const double> z) {
        const auto x = z.first(std::size_t(n));
        double t = 0.0;
        for (double v : x)
            t += v;
        if (!(t < 1.0))
            return 0.0;
        const double q = quadratic_form(profile, alpha, x);
        if (!(q < F.hi))
            return 0.0;
        const Eigen::Map<const Eigen::VectorXd> xi(z.data() + n, n);
        const Eigen::VectorXd y = hessian(profile, x).ldlt().solve(xi);
        return F(q + xi.dot(y));
    };
    return monte_carlo_box(integrand, box, quad.budget, quad.seed);
}

double rho_from_F_at(const SupportedFunction& F, int n, double t, int panels)
{
    if (n < 1)
        throw std::invalid_argument("rho_from_F: n must be positive");
    const double a = std::max(t, F.lo);
    if (!(a < F.hi))
        return 0.0;
    const double p = 0.5 * (n - 2);
    auto integrand = [&](double s) {
        const double d = s - t;
        return 0.5 * F(s) * (n == 2 ? 1.0 : std::pow(d, p));
    };
    return integrate_singular(integrand, a, F.hi, a == t ? SingularEnd::left : SingularEnd::none,
                              panels);
}

GridFunction rho_from_F(const SupportedFunction& F, int n, std::size_t points, int panels)
{
    if (!(F.hi > 0.0))
        throw std::invalid_argument("rho_from_F: F must be supported somewhere in (0, inf)");
    if (points < 2)
        throw std::invalid_argument("rho_from_F: need at least 2 grid points");
    std::vector<double> out(points);
    const double h = F.hi / double(points - 1);
    parallel_for(points, [&](std::size_t i) { out[i] = rho_from_F_at(F, n, double(i) * h, panels); });
    return GridFunction(0.0, F.hi, std::move(out));
}

GridFunction rho_from_F(const BumpFunction& F, int n, std::size_t points, int panels)
{
    return rho_from_F(SupportedFunction::from(F), n, points, panels);
}

GridFunction rho_from_F(const GridFunction& F, int n, std::size_t points, int panels)
{
    if (F.lo() < 0.0)
        throw std::invalid_argument("rho_from_F: F grid must start at t >= 0");
    const std::size_t m = points == 0 ? F.size() + std::size_t(std::lround(F.lo() / F.step())) : points;
    return rho_from_F(SupportedFunction::from(F), n, m, panels);
}

GridFunction F_from_rho(const GridFunction& rho, int n, const AbelOptions& opt)
{
    if (n < 1)
        throw std::invalid_argument("F_from_rho: n must be positive");
    double scale = 0.0;
    for (double v : rho.values())
        scale = std::max(scale, std::abs(v));
    if (std::abs(rho.values().back()) > 1e-9 * scale)
        throw std::invalid_argument(
            "F_from_rho: rho does not vanish at the right end of its grid; extend the grid past "
            "the support of F");

    if (n == 1) {
        const GridFunction g = abel_inverse(rho, AbelSide::right, opt);
        std::vector<double> v = g.values();
        for (double& x : v)
            x *= 2.0;
        return GridFunction(g.lo(), g.hi(), std::move(v));
    }
    if (n == 2) {
        const GridFunction d = differentiate(rho);
        std::vector<double> v = d.values();
        for (double& x : v)
            x *= -2.0;
        return GridFunction(d.lo(), d.hi(), std::move(v));
    }
    std::vector<double> scaled = rho.values();
    for (double& x : scaled)
        x *= -2.0 / (n - 2);
    const GridFunction f = F_from_rho(GridFunction(rho.lo(), rho.hi(), std::move(scaled)), n - 2, opt);
    return differentiate(f);
}

GridFunction F_from_rho_reciprocal(const ScalarFunction& rho, double t_min, double t_max,
                                   std::size_t abel_points, std::size_t points)
{
    if (!(t_min > 0.0) || !(t_min < t_max))
        throw std::invalid_argument("F_from_rho_reciprocal: need 0 < t_min < t_max");
    const double v_lo = 1.0 / t_max, v_hi = 1.0 / t_min;
    const GridFunction q = GridFunction::sample(
        [&](double v) { return 2.0 * rho(1.0 / v) / std::sqrt(v); }, v_lo, v_hi, abel_points);
    const GridFunction G = abel_inverse(q, AbelSide::left);
    return GridFunction::sample(
        [&](double t) { return G(1.0 / t) * std::pow(t, -1.5); }, t_min, t_max, points);
}

}  // namespace toricspec
