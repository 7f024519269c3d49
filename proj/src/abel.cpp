#include "toricspec/abel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace toricspec {

namespace {

constexpr std::size_t MIN_NODES = 8;

void require_resolution(std::size_t n, const char* who)
{
    if (n < MIN_NODES)
        throw std::invalid_argument(std::string(who) + ": grid too coarse, need at least " +
                                    std::to_string(MIN_NODES) + " nodes");
}

int sine_order(double power)
{
    const double k = 2.0 * power + 1.0;
    const long r = std::lround(k);
    if (r < 0 || std::abs(k - double(r)) > 1e-12)
        throw std::invalid_argument("abel: endpoint power must be a half-integer >= -1/2");
    return int(r);
}

/// S_k = int_0^theta sin^k, for k = 0..kmax, with sin(theta) = s, cos(theta) = c.
void sine_integrals(double s, double c, int kmax, double* out)
{
    out[0] = std::atan2(s, c);
    if (kmax >= 1)
        out[1] = s * s / (1.0 + c);
    double spow = s;  // s^(k-1)
    for (int k = 2; k <= kmax; ++k) {
        out[k] = -spow * c / k + double(k - 1) / k * out[k - 2];
        spow *= s;
    }
}

/// J(y^power phi)(X) / X^(power + 1/2) for X > 0, phi linear between nodes y_j = j h.
double reduced_transform(const std::vector<double>& phi, double h, double power, double X)
{
    const int k = sine_order(power);
    const int kmax = k + 2;
    double sa[16], sb[16];
    if (kmax >= 16)
        throw std::invalid_argument("abel: endpoint power too large");

    const double last = double(phi.size() - 1) * h;
    if (X > last * (1.0 + 1e-12))
        throw std::domain_error("abel: evaluation point beyond the grid");
    X = std::min(X, last);

    auto boundary = [&](double y, double* out) {
        const double r = std::clamp(y / X, 0.0, 1.0);
        sine_integrals(std::sqrt(r), std::sqrt(std::max(0.0, (X - y) / X)), kmax, out);
    };

    double sum = 0.0;
    double a = 0.0;
    boundary(a, sa);
    for (std::size_t j = 0; j + 1 < phi.size(); ++j) {
        if (!(a < X))
            break;
        double b = double(j + 1) * h;
        double pb = phi[j + 1];
        if (b > X) {
            pb = phi[j] + (phi[j + 1] - phi[j]) * (X - a) / h;
            b = X;
        }
        boundary(b, sb);
        const double dk = sb[k] - sa[k];
        const double dk2 = sb[k + 2] - sa[k + 2];
        sum += (phi[j] * (b * dk - X * dk2) + pb * (X * dk2 - a * dk)) / (b - a);
        a = b;
        std::copy(sb, sb + kmax + 1, sa);
    }
    return 2.0 * sum;
}

/// Toeplitz product-integration weights for power 0 at the nodes.
std::vector<double> plain_left_transform(const std::vector<double>& f, double h)
{
    const std::size_t n = f.size();
    std::vector<double> w0(n), w1(n);  // w0: weight on the far node, w1: on the near node
    const double sh = std::sqrt(h);
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = double(k);
        const double r = std::sqrt(kk), rm = std::sqrt(kk - 1.0);
        const double dsqrt = 1.0 / (r + rm);
        const double d32 = (3.0 * kk * kk - 3.0 * kk + 1.0) / (kk * r + (kk - 1.0) * rm);
        const double i0 = 2.0 * sh * dsqrt;
        const double i1 = sh * (2.0 * kk * dsqrt - (2.0 / 3.0) * d32);
        w0[k] = i0 - i1;
        w1[k] = i1;
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 1; k <= i; ++k)
            s += w0[k] * f[i - k] + w1[k] * f[i - k + 1];
        out[i] = s;
    }
    return out;
}

GridFunction left_inverse_from_transform(const GridFunction& chi, double power, const AbelOptions& opt)
{
    const GridFunction c = opt.smooth ? binomial_smooth(chi) : chi;
    const GridFunction dc = differentiate(c);
    std::vector<double> phi(c.size());
    const double q = power + 0.5;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double y = c.node(i) - c.lo();
        phi[i] = (q * c[i] + y * dc[i]) / std::numbers::pi;
    }
    return GridFunction(c.lo(), c.hi(), std::move(phi));
}

}  // namespace

double abel_power_constant(double power)
{
    return std::tgamma(power + 1.0) * std::sqrt(std::numbers::pi) / std::tgamma(power + 1.5);
}

double WeightedGrid::operator()(double x) const
{
    const double y = x - regular.lo();
    if (power == 0.0)
        return regular(x);
    return std::pow(y, power) * regular(x);
}

GridFunction WeightedGrid::values() const
{
    if (power < 0.0)
        throw std::domain_error("WeightedGrid::values: singular at lo");
    std::vector<double> v(regular.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double y = regular.node(i) - regular.lo();
        v[i] = (power == 0.0 ? 1.0 : std::pow(y, power)) * regular[i];
    }
    return GridFunction(regular.lo(), regular.hi(), std::move(v));
}

WeightedGrid WeightedGrid::from_values(const GridFunction& g, double power)
{
    if (power == 0.0)
        return {g, 0.0};
    if (g.size() < 4)
        throw std::invalid_argument("WeightedGrid::from_values: need at least 4 nodes");
    std::vector<double> r(g.size());
    for (std::size_t i = 1; i < r.size(); ++i)
        r[i] = g[i] / std::pow(g.node(i) - g.lo(), power);
    r[0] = 3.0 * r[1] - 3.0 * r[2] + r[3];
    return {GridFunction(g.lo(), g.hi(), std::move(r)), power};
}

WeightedGrid abel_forward(const WeightedGrid& f)
{
    const GridFunction& phi = f.regular;
    require_resolution(phi.size(), "abel_forward");
    const double h = phi.step();
    std::vector<double> out(phi.size());
    out[0] = phi[0] * abel_power_constant(f.power);
    if (f.power == 0.0) {
        const std::vector<double> j = plain_left_transform(phi.values(), h);
        for (std::size_t i = 1; i < out.size(); ++i)
            out[i] = j[i] / std::sqrt(double(i) * h);
    } else {
        for (std::size_t i = 1; i < out.size(); ++i)
            out[i] = reduced_transform(phi.values(), h, f.power, double(i) * h);
    }
    return {GridFunction(phi.lo(), phi.hi(), std::move(out)), f.power + 0.5};
}

double abel_at(const WeightedGrid& f, double x)
{
    const GridFunction& phi = f.regular;
    require_resolution(phi.size(), "abel_at");
    const double X = x - phi.lo();
    if (X < 0.0)
        throw std::domain_error("abel_at: point below the grid");
    if (X == 0.0)
        return f.power == -0.5 ? phi[0] * std::numbers::pi : 0.0;
    const double r = reduced_transform(phi.values(), phi.step(), f.power, X);
    return std::pow(X, f.power + 0.5) * r;
}

GridFunction abel_forward(const GridFunction& f, AbelSide side)
{
    require_resolution(f.size(), "abel_forward");
    if (side == AbelSide::right)
        return abel_forward(f.reversed(), AbelSide::left).reversed();
    std::vector<double> j = plain_left_transform(f.values(), f.step());
    return GridFunction(f.lo(), f.hi(), std::move(j));
}

WeightedGrid abel_inverse(const WeightedGrid& g, const AbelOptions& opt)
{
    require_resolution(g.regular.size(), "abel_inverse");
    if (g.power < 0.0)
        throw std::invalid_argument("abel_inverse: input power must be >= 0");
    const WeightedGrid chi = abel_forward(g);
    return {left_inverse_from_transform(chi.regular, g.power, opt), g.power - 0.5};
}

GridFunction abel_inverse(const GridFunction& g, AbelSide side, const AbelOptions& opt)
{
    require_resolution(g.size(), "abel_inverse");
    if (side == AbelSide::right)
        return abel_inverse(g.reversed(), AbelSide::left, opt).reversed();
    double scale = 0.0;
    for (double v : g.values())
        scale = std::max(scale, std::abs(v));
    if (std::abs(g[0]) > 1e-9 * scale)
        throw std::invalid_argument(
            "abel_inverse: input does not vanish at the integration endpoint; "
            "use the weighted form for inputs with a nonzero endpoint value");
    return abel_inverse(WeightedGrid::from_values(g, 0.5), opt).regular;
}

GridFunction abel_iterate(const GridFunction& f, int k, AbelSide side)
{
    if (k < 0)
        throw std::invalid_argument("abel_iterate: k must be non-negative");
    GridFunction out = f;
    for (int i = 0; i < k; ++i)
        out = abel_forward(out, side);
    return out;
}

WeightedGrid abel_iterate(const WeightedGrid& f, int k)
{
    if (k < 0)
        throw std::invalid_argument("abel_iterate: k must be non-negative");
    WeightedGrid out = f;
    for (int i = 0; i < k; ++i)
        out = abel_forward(out);
    return out;
}

}  // namespace toricspec
