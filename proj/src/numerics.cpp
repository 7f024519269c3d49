#include "toricspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace toricspec {

namespace {

// 4-point Gauss-Legendre on [-1, 1]
constexpr double GL_X[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                            0.8611363115940526};
constexpr double GL_W[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                            0.3478548451374538};

/// Samples per Monte Carlo batch; batches are the unit of parallel work and reduction.
constexpr long MC_BATCH = 4096;

void append_gauss(double a, double b, int panels, const std::function<void(double, double)>& emit)
{
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int k = 0; k < 4; ++k)
            emit(mid + 0.5 * h * GL_X[k], 0.5 * h * GL_W[k]);
    }
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
};

/// Accumulate f over `samples` draws in fixed-size batches, reducing in index order.
Moments batched_moments(long samples, const std::function<double(long)>& draw)
{
    const long nbatch = (samples + MC_BATCH - 1) / MC_BATCH;
    std::vector<double> sums(nbatch), sumsqs(nbatch);
    parallel_for(std::size_t(nbatch), [&](std::size_t b) {
        const long begin = long(b) * MC_BATCH;
        const long end = std::min(samples, begin + MC_BATCH);
        double s = 0.0, s2 = 0.0;
        for (long i = begin; i < end; ++i) {
            const double v = draw(i);
            s += v;
            s2 += v * v;
        }
        sums[b] = s;
        sumsqs[b] = s2;
    });
    return {pairwise_sum(sums), pairwise_sum(sumsqs)};
}

Estimate finish(const Moments& m, long samples, double scale)
{
    const double mean = m.sum / double(samples);
    double var = m.sumsq / double(samples) - mean * mean;
    if (var < 0.0)
        var = 0.0;
    Estimate e;
    e.value = scale * mean;
    e.error = samples > 1 ? scale * std::sqrt(var / double(samples - 1)) : 0.0;
    return e;
}

double tensor_duffy(const VectorFunction& f, int n, int panels)
{
    const QuadratureRule rule = singular_rule(0.0, 1.0, SingularEnd::both, panels);
    const std::size_t m = rule.nodes.size();

    // Recursive sweep over axes 1..n-1 for a fixed first-axis node.
    std::function<double(int, std::vector<double>&, double, double)> sweep =
        [&](int axis, std::vector<double>& x, double rest, double jac) -> double {
        if (axis == n) {
            // nodes that round onto the slanted face carry negligible weight; drop them
            double t = 0.0;
            for (double v : x)
                t += v;
            return t < 1.0 ? jac * f(x) : 0.0;
        }
        std::vector<double> terms(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double u = rule.nodes[k];
            x[axis] = rest * u;
            terms[k] = rule.weights[k] * sweep(axis + 1, x, rest * (1.0 - u), jac * rest);
        }
        return pairwise_sum(terms);
    };

    std::vector<double> outer(m);
    parallel_for(m, [&](std::size_t k) {
        std::vector<double> x(n);
        const double u = rule.nodes[k];
        x[0] = u;
        outer[k] = rule.weights[k] * sweep(1, x, 1.0 - u, 1.0);
    });
    return pairwise_sum(outer);
}

Estimate simplex_monte_carlo(const VectorFunction& f, int n, long samples, std::uint64_t seed)
{
    // Dirichlet(1/2, ..., 1/2) on n+1 barycentric coordinates: normalized squares of normals.
    const CounterRng rng(seed);
    const double norm = std::pow(std::sqrt(std::numbers::pi), n + 1) / std::tgamma(0.5 * (n + 1));
    const auto stride = std::uint64_t(n + 1);
    Moments m = batched_moments(samples, [&](long i) {
        std::vector<double> g(n + 1);
        double total = 0.0;
        for (int d = 0; d <= n; ++d) {
            const double z = rng.normal(std::uint64_t(i) * stride + std::uint64_t(d));
            g[d] = z * z;
            total += g[d];
        }
        std::vector<double> x(n);
        double weight = 1.0;
        for (int d = 0; d <= n; ++d) {
            const double b = g[d] / total;
            if (d < n)
                x[d] = b;
            weight *= std::sqrt(b);
        }
        return f(x) * weight;
    });
    return finish(m, samples, norm);
}

}  // namespace

// ---------------------------------------------------------------------------------------

GridFunction::GridFunction(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values))
{
    if (values_.size() < 2)
        throw std::invalid_argument("GridFunction: need at least 2 samples");
    if (!(lo_ < hi_))
        throw std::invalid_argument("GridFunction: need lo < hi");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunction: non-finite sample");
}

GridFunction GridFunction::sample(const ScalarFunction& f, double lo, double hi, std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("GridFunction::sample: need at least 2 samples");
    std::vector<double> v(n);
    const double h = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = f(i + 1 == n ? hi : lo + double(i) * h);
    return GridFunction(lo, hi, std::move(v));
}

double GridFunction::node(std::size_t i) const
{
    return i + 1 == values_.size() ? hi_ : lo_ + double(i) * step();
}

std::vector<double> GridFunction::nodes() const
{
    std::vector<double> x(values_.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = node(i);
    return x;
}

double GridFunction::operator()(double x) const
{
    if (x <= lo_)
        return values_.front();
    if (x >= hi_)
        return values_.back();
    const double pos = (x - lo_) / step();
    auto i = std::size_t(pos);
    if (i >= values_.size() - 1)
        i = values_.size() - 2;
    const double frac = pos - double(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

GridFunction GridFunction::reversed() const
{
    std::vector<double> v(values_.rbegin(), values_.rend());
    return GridFunction(lo_, hi_, std::move(v));
}

// ---------------------------------------------------------------------------------------

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y))
{
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need at least 2 matching samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneCubic: abscissae must increase strictly");

    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    if (n == 2) {
        slope_[0] = slope_[1] = d[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            continue;
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
    // shape-preserving three-point end slopes
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    slope_[0] = end_slope(h[0], h[1], d[0], d[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

MonotoneCubic::MonotoneCubic(const GridFunction& g) : MonotoneCubic(g.nodes(), g.values()) {}

double MonotoneCubic::operator()(double x) const
{
    if (x <= x_.front())
        return y_.front();
    if (x >= x_.back())
        return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = std::size_t(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

// ---------------------------------------------------------------------------------------

BumpFunction::BumpFunction(double c, double w) : center(c), half_width(w)
{
    if (!(w > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("BumpFunction: half width must be positive");
}

double BumpFunction::operator()(double t) const
{
    const double z = (t - center) / half_width;
    const double q = 1.0 - z * z;
    if (q <= 0.0)
        return 0.0;
    return std::exp(1.0 - 1.0 / q);
}

double BumpFunction::integral() const
{
    static const double unit = integrate_smooth(
        [](double z) {
            const double q = 1.0 - z * z;
            return q > 0.0 ? std::exp(1.0 - 1.0 / q) : 0.0;
        },
        -1.0, 1.0, 400);
    return half_width * unit;
}

SupportedFunction SupportedFunction::from(const BumpFunction& b)
{
    return {[b](double t) { return b(t); }, b.support_lo(), b.support_hi()};
}

SupportedFunction SupportedFunction::from(const GridFunction& g)
{
    return {[g](double t) { return g(t); }, g.lo(), g.hi()};
}

// ---------------------------------------------------------------------------------------

double QuadratureRule::pairwise_sum_impl(std::span<const double> v) { return pairwise_sum(v); }

QuadratureRule singular_rule(double a, double b, SingularEnd end, int panels)
{
    if (!(a < b))
        throw std::invalid_argument("singular_rule: need a < b");
    if (panels < 1)
        throw std::invalid_argument("singular_rule: need at least one panel");
    QuadratureRule rule;
    auto push = [&](double x, double w) {
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
    };
    auto left = [&](double lo, double hi) {
        append_gauss(0.0, std::sqrt(hi - lo), panels,
                     [&](double u, double w) { push(lo + u * u, 2.0 * u * w); });
    };
    auto right = [&](double lo, double hi) {
        append_gauss(0.0, std::sqrt(hi - lo), panels,
                     [&](double u, double w) { push(hi - u * u, 2.0 * u * w); });
    };
    switch (end) {
    case SingularEnd::none:
        append_gauss(a, b, panels, push);
        break;
    case SingularEnd::left:
        left(a, b);
        break;
    case SingularEnd::right:
        right(a, b);
        break;
    case SingularEnd::both: {
        const double m = 0.5 * (a + b);
        left(a, m);
        right(m, b);
        break;
    }
    }
    return rule;
}

double integrate_singular(const ScalarFunction& f, double a, double b, SingularEnd end, int panels)
{
    if (!(a < b))
        throw std::invalid_argument("integrate_singular: need a < b, got [" + std::to_string(a) +
                                    ", " + std::to_string(b) + "]");
    const QuadratureRule rule = singular_rule(a, b, end, panels);
    const double r = rule.apply([&](double x) {
        const double v = f(x);
        if (std::isnan(v))
            throw std::domain_error("integrate_singular: integrand is NaN at x = " +
                                    std::to_string(x));
        return v;
    });
    return r;
}

double integrate_smooth(const ScalarFunction& f, double a, double b, int panels)
{
    return integrate_singular(f, a, b, SingularEnd::none, panels);
}

Estimate integrate_simplex(const VectorFunction& f, int n, SimplexScheme scheme, long budget,
                           std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("integrate_simplex: dimension must be positive");
    if (budget < 8)
        throw std::invalid_argument("integrate_simplex: budget below 8 points per axis");
    if (scheme == SimplexScheme::monte_carlo)
        return simplex_monte_carlo(f, n, budget, seed);

    Estimate e;
    e.value = tensor_duffy(f, n, int(budget));
    e.error = std::abs(e.value - tensor_duffy(f, n, int(budget / 2)));
    if (std::isnan(e.value))
        throw std::domain_error("integrate_simplex: integrand produced NaN");
    return e;
}

double Box::volume() const
{
    double v = 1.0;
    for (std::size_t i = 0; i < lower.size(); ++i)
        v *= upper[i] - lower[i];
    return v;
}

Estimate monte_carlo_box(const VectorFunction& f, const Box& box, long samples, std::uint64_t seed)
{
    if (samples <= 0)
        throw std::invalid_argument("monte_carlo_box: samples must be positive");
    const std::size_t dim = box.lower.size();
    if (dim == 0 || box.upper.size() != dim)
        throw std::invalid_argument("monte_carlo_box: malformed box");
    for (std::size_t d = 0; d < dim; ++d)
        if (!(box.upper[d] > box.lower[d]))
            throw std::invalid_argument("monte_carlo_box: empty box side");

    const CounterRng rng(seed);
    Moments m = batched_moments(samples, [&](long i) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const double u = rng.uniform(std::uint64_t(i) * dim + d);
            p[d] = box.lower[d] + u * (box.upper[d] - box.lower[d]);
        }
        return f(p);
    });
    return finish(m, samples, box.volume());
}

GridFunction differentiate(const GridFunction& g)
{
    const std::size_t n = g.size();
    if (n < 3)
        throw std::invalid_argument("differentiate: need at least 3 samples");
    const double h = g.step();
    const auto& v = g.values();
    std::vector<double> d(n);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return GridFunction(g.lo(), g.hi(), std::move(d));
}

GridFunction cumulative_integral(const GridFunction& g)
{
    const double h = g.step();
    const auto& v = g.values();
    std::vector<double> c(v.size(), 0.0);
    for (std::size_t i = 1; i < v.size(); ++i)
        c[i] = c[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
    return GridFunction(g.lo(), g.hi(), std::move(c));
}

GridFunction binomial_smooth(const GridFunction& g)
{
    const auto& v = g.values();
    std::vector<double> s(v);
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        s[i] = 0.25 * v[i - 1] + 0.5 * v[i] + 0.25 * v[i + 1];
    return GridFunction(g.lo(), g.hi(), std::move(s));
}

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const
{
    return mix64(mix64(seed_ ^ 0x6a09e667f3bcc909ULL) + (counter + 1) * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::uniform(std::uint64_t counter) const
{
    // 53 random bits, shifted off zero
    return (double(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t k) const
{
    const double u1 = uniform(2 * k);
    const double u2 = uniform(2 * k + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t nthreads = std::min(hw, count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            try {
                const std::size_t end = std::min(count, (t + 1) * chunk);
                for (std::size_t i = t * chunk; i < end; ++i)
                    body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y)
{
    if (x.empty() || x.size() != y.size())
        throw std::invalid_argument("extrapolate_to_zero: need matching non-empty samples");
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = p.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
    return p[0];
}

}  // namespace toricspec
