#include "toricspec/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace toricspec {

namespace {

void require_n(int n, const char* who)
{
    if (n < 2)
        throw std::invalid_argument(std::string(who) + ": n must be at least 2");
}

/// Weighted form of V(1 - s) = s^{-1/2} W(s) on [0, 1], pushed through n - 2 transforms.
WeightedGrid partial_transform(const RadialProfile& profile, int n, std::size_t points)
{
    return abel_iterate(WeightedGrid{regular_v_grid(profile, points), -0.5}, n - 2);
}

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> cov_inverse(const NuMuPoint& p, int n)
{
    require_n(n, "cov_inverse");
    if (p.mu.size() != std::size_t(n - 1))
        throw std::invalid_argument("cov_inverse: expected n - 1 values of mu");
    const double mu2 = p.mu[0];
    if (!(p.nu > 4.0) || !(mu2 < 1.0) || !(4.0 / p.nu < mu2))
        throw std::domain_error("cov_inverse: point outside 0 < 4/nu < mu_2 < 1");
    for (std::size_t k = 1; k < p.mu.size(); ++k)
        if (!(p.mu[k - 1] < p.mu[k]) || !(p.mu[k] < 1.0))
            throw std::domain_error("cov_inverse: mu must increase strictly and stay below 1");
    const double disc = mu2 * mu2 - 4.0 * mu2 / p.nu;
    if (!(disc > 0.0))
        throw std::domain_error("cov_inverse: degenerate point x1 = x2");
    const double r = std::sqrt(disc);
    std::vector<double> x(static_cast<std::size_t>(n));
    x[0] = 0.5 * (mu2 + r);
    // the smaller root via the product x1 x2 = mu2 / nu avoids cancellation
    x[1] = (mu2 / p.nu) / x[0];
    for (std::size_t k = 1; k < p.mu.size(); ++k)
        x[k + 1] = p.mu[k] - p.mu[k - 1];
    return x;
}

NuMuPoint cov_forward(std::span<const double> x)
{
    if (x.size() < 2)
        throw std::invalid_argument("cov_forward: need n >= 2 coordinates");
    double t = 0.0;
    for (double v : x) {
        if (!(v > 0.0))
            throw std::domain_error("cov_forward: point is not interior");
        t += v;
    }
    if (!(t < 1.0))
        throw std::domain_error("cov_forward: point is not interior");
    if (!(x[0] > x[1]))
        throw std::domain_error("cov_forward: need x1 > x2 (the half P+)");
    NuMuPoint p;
    p.nu = 1.0 / x[0] + 1.0 / x[1];
    double partial = x[0];
    for (std::size_t k = 1; k < x.size(); ++k) {
        partial += x[k];
        p.mu.push_back(partial);
    }
    return p;
}

double jacobian_factor(double nu, double mu2)
{
    const double disc = mu2 * mu2 - 4.0 * mu2 / nu;
    if (!(disc > 0.0))
        throw std::domain_error("jacobian_factor: mu2^2 - 4 mu2/nu must be positive");
    return mu2 / (nu * nu * std::sqrt(disc));
}

double s_from_nu(double nu)
{
    if (!(nu > 4.0))
        throw std::domain_error("s_from_nu: nu must exceed 4");
    return 1.0 - 4.0 / nu;
}

double nu_from_s(double s1)
{
    if (!(s1 > 0.0) || !(s1 < 1.0))
        throw std::domain_error("nu_from_s: s1 must lie in (0, 1)");
    return 4.0 / (1.0 - s1);
}

GridFunction regular_v_grid(const RadialProfile& profile, std::size_t points)
{
    return GridFunction::sample([&](double s) { return v_regularized(profile, 1.0 - s); }, 0.0, 1.0,
                                points);
}

double fu_forward_s(const RadialProfile& profile, double s1, int n, std::size_t points)
{
    require_n(n, "fu_forward");
    if (!(s1 >= 0.0) || !(s1 < 1.0))
        throw std::domain_error("fu_forward: s1 must lie in [0, 1), i.e. nu >= 4");
    return abel_at(partial_transform(profile, n, points), s1);
}

double fu_forward(const RadialProfile& profile, double nu, int n, std::size_t points)
{
    if (!(nu > 4.0))
        throw std::domain_error("fu_forward: nu must exceed 4");
    return fu_forward_s(profile, 1.0 - 4.0 / nu, n, points);
}

GridFunction fu_curve(const RadialProfile& profile, int n, double s_max, std::size_t points)
{
    require_n(n, "fu_curve");
    if (!(s_max > 0.0) || !(s_max < 1.0))
        throw std::domain_error("fu_curve: s_max must lie in (0, 1)");
    if (points < 8)
        throw std::invalid_argument("fu_curve: need at least 8 points");
    // the transform grid is finer than the output grid so the data carry no trace of
    // the grid the inversion will use
    const std::size_t fine = std::max<std::size_t>(8 * points, 8193);
    const WeightedGrid base = partial_transform(profile, n, fine);
    std::vector<double> out(points);
    const double h = s_max / double(points - 1);
    parallel_for(points, [&](std::size_t i) { out[i] = abel_at(base, std::min(double(i) * h, s_max)); });
    return GridFunction(0.0, s_max, std::move(out));
}

double fu_direct(const RadialProfile& profile, double nu, int n, int panels)
{
    require_n(n, "fu_direct");
    if (!(nu > 4.0))
        throw std::domain_error("fu_direct: nu must exceed 4");
    const double a = 4.0 / nu;
    // kernel(level, mu): the inner (level - 1)-fold integral; level 2 is (mu - a)^{-1/2}
    std::function<double(int, double)> kernel = [&](int level, double mu) -> double {
        if (level == 2)
            return 1.0 / std::sqrt(mu - a);
        return integrate_singular(
            [&](double m) { return kernel(level - 1, m) / std::sqrt(mu - m); }, a, mu,
            SingularEnd::both, panels);
    };
    return integrate_singular([&](double mu) { return v_value(profile, mu) * kernel(n, mu); }, a,
                              1.0, SingularEnd::both, panels);
}

Extraction invariant_to_fu(const RadialProfile& profile, int n, double nu0,
                           const std::vector<double>& widths, long budget, std::uint64_t seed)
{
    require_n(n, "invariant_to_fu");
    if (widths.empty())
        throw std::invalid_argument("invariant_to_fu: empty width schedule");
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (!(widths[i] > 0.0) || (i > 0 && !(widths[i] < widths[i - 1])))
            throw std::invalid_argument("invariant_to_fu: widths must be positive and decreasing");
        if (!(nu0 - widths[i] > 4.0))
            throw std::domain_error("invariant_to_fu: bump support crosses nu = 4");
    }
    // spacing of tensor nodes across the band nu ~ nu0 near x2 ~ 1/nu0
    const double node_spacing = 2.0 * std::pow(nu0, 1.5) * std::numbers::sqrt2 / (4.0 * double(budget));
    if (widths.back() < node_spacing)
        throw std::invalid_argument("invariant_to_fu: width " + std::to_string(widths.back()) +
                                    " is below the quadrature resolution; raise the budget");

    Extraction ex;
    ex.widths = widths;
    std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
    alpha[0] = 1.0;
    alpha[1] = -1.0;
    std::vector<double> w2;
    for (double w : widths) {
        const BumpFunction rho(nu0, w);
        InvariantRequest req;
        req.profile = profile;
        req.alpha = alpha;
        req.rho = SupportedFunction::from(rho);
        req.quadrature = {SimplexScheme::tensor_duffy, budget, seed};
        const Estimate e = spectral_invariant(req);
        const double scale = 2.0 * std::pow(nu0, -1.5) * rho.integral();
        ex.normalized.push_back(e.value / scale);
        ex.quadrature_error.push_back(e.error / scale);
        w2.push_back(w * w);
    }
    ex.value = extrapolate_to_zero(w2, ex.normalized);
    return ex;
}

ReconstructionReport reconstruct_profile(const GridFunction& fu, int n,
                                         const RadialProfile* reference, const AbelOptions& opt)
{
    require_n(n, "reconstruct_profile");
    if (fu.lo() != 0.0 || !(fu.hi() < 1.0))
        throw std::invalid_argument("reconstruct_profile: data must sit on an s1 grid [0, s_max], s_max < 1");
    WeightedGrid g = WeightedGrid::from_values(fu, 0.5 * (n - 2));
    for (int k = 0; k < n - 1; ++k)
        g = abel_inverse(g, opt);
    const GridFunction& w = g.regular;  // V(1 - s) = s^{-1/2} w(s)

    const std::size_t N = w.size();
    for (std::size_t i = 0; i < N; ++i)
        if (!(w[i] > 0.0))
            throw std::runtime_error(
                "reconstruct_profile: recovered V is not positive at mu = " +
                std::to_string(1.0 - w.node(i)) +
                "; the data are corrupted or the grid is too coarse");

    ReconstructionReport rep;
    rep.n = n;
    rep.points = N;
    rep.s_max = fu.hi();
    rep.nu_max = 4.0 / (1.0 - fu.hi());
    rep.covered_mu_lo = 1.0 - fu.hi();
    rep.mu.resize(N);
    rep.recovered_v.resize(N);
    rep.recovered_hpp.resize(N);
    rep.extrapolated.assign(N, false);
    // ascending mu = descending s
    for (std::size_t j = 0; j < N; ++j) {
        const std::size_t i = N - 1 - j;
        const double s = w.node(i);
        rep.mu[j] = 1.0 - s;
        if (i == 0) {
            rep.recovered_v[j] = INFINITY;
            continue;
        }
        rep.recovered_v[j] = w[i] / std::sqrt(s);
        rep.recovered_hpp[j] = (w[i] * w[i] - 1.0) / (s * (1.0 - s));
    }
    rep.recovered_hpp[N - 1] = 2.0 * rep.recovered_hpp[N - 2] - rep.recovered_hpp[N - 3];
    rep.extrapolated[N - 1] = true;

    // mu = 0 is not reached by finite nu_max; V(0) = 1 exactly, h'' by a quadratic through
    // the first three recovered nodes
    {
        const double m0 = rep.mu[0], m1 = rep.mu[1], m2 = rep.mu[2];
        const double y0 = rep.recovered_hpp[0], y1 = rep.recovered_hpp[1], y2 = rep.recovered_hpp[2];
        const double at0 = y0 * (m1 * m2) / ((m0 - m1) * (m0 - m2)) +
                           y1 * (m0 * m2) / ((m1 - m0) * (m1 - m2)) +
                           y2 * (m0 * m1) / ((m2 - m0) * (m2 - m1));
        rep.mu.insert(rep.mu.begin(), 0.0);
        rep.recovered_v.insert(rep.recovered_v.begin(), 1.0);
        rep.recovered_hpp.insert(rep.recovered_hpp.begin(), at0);
        rep.extrapolated.insert(rep.extrapolated.begin(), true);
    }

    if (reference) {
        std::vector<double> ref(rep.mu.size());
        for (std::size_t j = 0; j < ref.size(); ++j)
            ref[j] = reference->hpp(rep.mu[j]);
        double sup = 0.0, sq = 0.0;
        const double h = w.step();
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (rep.mu[j] < rep.window_lo || rep.mu[j] > rep.window_hi)
                continue;
            const double e = std::abs(rep.recovered_hpp[j] - ref[j]);
            sup = std::max(sup, e);
            sq += e * e * h;
        }
        rep.sup_error = sup;
        rep.l2_error = std::sqrt(sq);
        rep.reference_hpp = std::move(ref);
    }
    return rep;
}

void ReconstructionReport::write_csv(std::ostream& os) const
{
    os << "mu,V_recovered,hpp_recovered,hpp_reference,abs_error\n";
    for (std::size_t j = 0; j < mu.size(); ++j) {
        os << format_double(mu[j]) << ',' << format_double(recovered_v[j]) << ','
           << format_double(recovered_hpp[j]) << ',';
        if (reference_hpp)
            os << format_double((*reference_hpp)[j]) << ','
               << format_double(std::abs(recovered_hpp[j] - (*reference_hpp)[j]));
        else
            os << ',';
        os << '\n';
    }
    os << "# sup_error=" << format_double(sup_error) << ",l2_error=" << format_double(l2_error)
       << ",N=" << points << ",n=" << n << ",nu_max=" << format_double(nu_max)
       << ",window=[" << format_double(window_lo) << ';' << format_double(window_hi) << ']'
       << ",uncovered_mu=(0;" << format_double(covered_mu_lo) << ')'
       << ",extrapolated_mu=0;1\n";
}

}  // namespace toricspec
