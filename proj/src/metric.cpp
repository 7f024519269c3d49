#include "toricspec/metric.hpp"

#include "toricspec/polytope.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace toricspec {

namespace {

struct Sums {
    double t = 0.0;
    double prod = 1.0;
};

Sums interior_sums(std::span<const double> x, const char* who)
{
    if (x.empty())
        throw std::invalid_argument(std::string(who) + ": empty point");
    Sums s;
    for (double xi : x) {
        if (!(xi > 0.0))
            throw std::domain_error(std::string(who) + ": point is not interior (x_i <= 0)");
        s.t += xi;
        s.prod *= xi;
    }
    if (!(s.t < 1.0))
        throw std::domain_error(std::string(who) + ": point is not interior (sum x_i >= 1)");
    return s;
}

}  // namespace

RadialProfile RadialProfile::polynomial(std::vector<double> coefficients)
{
    if (coefficients.empty())
        coefficients.push_back(0.0);
    for (double c : coefficients)
        if (!std::isfinite(c))
            throw std::invalid_argument("RadialProfile: non-finite polynomial coefficient");
    return RadialProfile(Rep(std::move(coefficients)));
}

RadialProfile RadialProfile::table(std::vector<double> t, std::vector<double> hpp)
{
    if (t.size() < 2 || t.front() > 0.0 || t.back() < 1.0)
        throw std::invalid_argument("RadialProfile: tabulated h'' must cover [0, 1]");
    for (double v : hpp)
        if (!std::isfinite(v))
            throw std::invalid_argument("RadialProfile: non-finite tabulated h''");
    return RadialProfile(Rep(MonotoneCubic(std::move(t), std::move(hpp))));
}

RadialProfile RadialProfile::table(const GridFunction& hpp)
{
    return table(hpp.nodes(), hpp.values());
}

double RadialProfile::hpp(double t) const
{
    if (const auto* c = std::get_if<std::vector<double>>(&rep_)) {
        double v = 0.0;
        for (auto it = c->rbegin(); it != c->rend(); ++it)
            v = v * t + *it;
        return v;
    }
    return std::get<MonotoneCubic>(rep_)(t);
}

double RadialProfile::hp(double t) const
{
    if (const auto* c = std::get_if<std::vector<double>>(&rep_)) {
        double v = 0.0;
        for (std::size_t i = c->size(); i-- > 0;)
            v = v * t + (*c)[i] / double(i + 1);
        return v * t;
    }
    if (t == 0.0)
        return 0.0;
    return integrate_smooth([this](double s) { return hpp(s); }, 0.0, t, 64);
}

double RadialProfile::h(double t) const
{
    if (const auto* c = std::get_if<std::vector<double>>(&rep_)) {
        double v = 0.0;
        for (std::size_t i = c->size(); i-- > 0;)
            v = v * t + (*c)[i] / double((i + 1) * (i + 2));
        return v * t * t;
    }
    if (t == 0.0)
        return 0.0;
    return integrate_smooth([this, t](double s) { return (t - s) * hpp(s); }, 0.0, t, 64);
}

std::optional<std::vector<double>> RadialProfile::coefficients() const
{
    if (const auto* c = std::get_if<std::vector<double>>(&rep_))
        return *c;
    return std::nullopt;
}

Eigen::MatrixXd HessianClosedForm::assemble() const
{
    const auto n = diag.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, rank_one_coeff);
    m.diagonal() += diag;
    return m;
}

double u_value(const RadialProfile& prof, double t)
{
    if (!(t < 1.0))
        throw std::domain_error("u_value: t must be below 1 (pole of the Guillemin term)");
    return 1.0 / (1.0 - t) + prof.hpp(t);
}

HessianClosedForm hessian_closed_form(const RadialProfile& prof, std::span<const double> x)
{
    const Sums s = interior_sums(x, "hessian");
    HessianClosedForm h;
    h.diag.resize(Eigen::Index(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        h.diag[Eigen::Index(i)] = 1.0 / x[i];
    h.rank_one_coeff = u_value(prof, s.t);
    return h;
}

Eigen::MatrixXd hessian(const RadialProfile& prof, std::span<const double> x)
{
    return hessian_closed_form(prof, x).assemble();
}

double quadratic_form(const RadialProfile& prof, std::span<const double> alpha,
                      std::span<const double> x)
{
    if (alpha.size() != x.size())
        throw std::invalid_argument("quadratic_form: alpha and x differ in length");
    const Sums s = interior_sums(x, "quadratic_form");
    double diag = 0.0, total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        diag += alpha[i] * alpha[i] / x[i];
        total += alpha[i];
    }
    return diag + u_value(prof, s.t) * total * total;
}

double det_hessian(const RadialProfile& prof, std::span<const double> x)
{
    const Sums s = interior_sums(x, "det_hessian");
    return (1.0 / (1.0 - s.t) + s.t * prof.hpp(s.t)) / s.prod;
}

double leading_minor(const RadialProfile& prof, std::span<const double> x, int k)
{
    const Sums s = interior_sums(x, "leading_minor");
    if (k < 1 || k > int(x.size()))
        throw std::invalid_argument("leading_minor: block size out of range");
    double partial = 0.0, prod = 1.0;
    for (int i = 0; i < k; ++i) {
        partial += x[std::size_t(i)];
        prod *= x[std::size_t(i)];
    }
    return (1.0 + u_value(prof, s.t) * partial) / prod;
}

double symplectic_potential(const RadialProfile& prof, std::span<const double> x)
{
    const DelzantPolytope p = standard_simplex(int(x.size()));
    double t = 0.0;
    for (double xi : x)
        t += xi;
    return guillemin_potential(p, x) + prof.h(t);
}

double delta_value(const RadialProfile& prof, double t)
{
    return 1.0 / (1.0 + t * (1.0 - t) * prof.hpp(t));
}

double v_value(const RadialProfile& prof, double mu)
{
    if (!(mu < 1.0))
        throw std::domain_error("v_value: mu must be below 1");
    const double r = 1.0 / (1.0 - mu) + mu * prof.hpp(mu);
    if (!(r >= 0.0))
        throw std::domain_error("v_value: negative radicand, profile is not valid");
    return std::sqrt(r);
}

double v_regularized(const RadialProfile& prof, double mu)
{
    const double r = 1.0 + mu * (1.0 - mu) * prof.hpp(mu);
    if (!(r >= 0.0))
        throw std::domain_error("v_regularized: negative radicand, profile is not valid");
    return std::sqrt(r);
}

GridFunction recover_hpp_from_v(const GridFunction& v)
{
    if (v.lo() < 0.0 || !(v.hi() < 1.0))
        throw std::invalid_argument("recover_hpp_from_v: grid must lie in [0, 1)");
    const std::size_t n = v.size();
    std::vector<double> out(n);
    std::size_t first = 0;
    if (v.lo() == 0.0) {
        if (n < 4)
            throw std::invalid_argument("recover_hpp_from_v: need 4 nodes to fill mu = 0");
        first = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!(v[i] > 0.0))
            throw std::domain_error("recover_hpp_from_v: V must be strictly positive");
    for (std::size_t i = first; i < n; ++i) {
        const double mu = v.node(i);
        out[i] = (v[i] * v[i] - 1.0 / (1.0 - mu)) / mu;
    }
    if (first == 1)
        out[0] = 3.0 * out[1] - 3.0 * out[2] + out[3];
    return GridFunction(v.lo(), v.hi(), std::move(out));
}

ValidityReport is_valid(const RadialProfile& prof, int n, std::size_t grid_points, int spot_checks,
                        std::uint64_t seed)
{
    ValidityReport rep;
    rep.min_numerator = INFINITY;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double t = double(i) / double(grid_points - 1);
        const double q = 1.0 + t * (1.0 - t) * prof.hpp(t);
        if (!std::isfinite(q)) {
            rep.valid = false;
            rep.diagnostic = "h'' is not finite at t = " + std::to_string(t);
            return rep;
        }
        if (q < rep.min_numerator) {
            rep.min_numerator = q;
            rep.argmin = t;
        }
    }
    if (!(rep.min_numerator > 0.0)) {
        std::ostringstream os;
        os << "1 + t(1-t)h''(t) = " << rep.min_numerator << " <= 0 at t = " << rep.argmin
           << ": Hess(g) is not positive definite there";
        rep.valid = false;
        rep.diagnostic = os.str();
        return rep;
    }

    // uniform points of the open simplex via normalized exponentials
    const CounterRng rng(seed);
    std::uint64_t counter = 0;
    for (int c = 0; c < spot_checks; ++c) {
        std::vector<double> e(std::size_t(n) + 1);
        double total = 0.0;
        for (auto& ei : e) {
            ei = -std::log(rng.uniform(counter++));
            total += ei;
        }
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            x[std::size_t(i)] = e[std::size_t(i)] / total;
        for (int k = 1; k <= n; ++k) {
            const double m = leading_minor(prof, x, k);
            if (!(m > 0.0)) {
                std::ostringstream os;
                os << "leading minor " << k << " = " << m << " <= 0 at a random interior point";
                rep.valid = false;
                rep.diagnostic = os.str();
                return rep;
            }
        }
    }
    rep.diagnostic = "ok";
    return rep;
}

}  // namespace toricspec
