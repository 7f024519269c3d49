#include "doctest.h"

#include "toricspec/invariant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace toricspec;

namespace {

constexpr double PI = std::numbers::pi;

const RadialProfile ZERO = RadialProfile::polynomial({0.0});
const RadialProfile LINEAR = RadialProfile::polynomial({0.25, -0.25});

SupportedFunction exp_cutoff(double T)
{
    return {[](double s) { return std::exp(-s); }, 0.0, T};
}

double sup_diff(const GridFunction& a, const ScalarFunction& f)
{
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e = std::max(e, std::abs(a[i] - f(a.node(i))));
    return e;
}

double sup_diff(const GridFunction& a, const GridFunction& b)
{
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

InvariantRequest request(const RadialProfile& p, std::vector<double> alpha,
                         SupportedFunction rho, long budget)
{
    InvariantRequest r;
    r.profile = p;
    r.alpha = std::move(alpha);
    r.rho = std::move(rho);
    r.quadrature.budget = budget;
    return r;
}

}  // namespace

TEST_CASE("sphere_area")
{
    CHECK(sphere_area(1) == doctest::Approx(2.0));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * PI));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * PI));
    CHECK(sphere_area(4) == doctest::Approx(2.0 * PI * PI));
    CHECK_THROWS_AS(sphere_area(0), std::invalid_argument);
}

TEST_CASE("rho_from_F: exponential triples")
{
    const SupportedFunction F = exp_cutoff(40.0);
    const double c[4] = {0.0, std::sqrt(PI) / 2.0, 0.5, std::sqrt(PI) / 4.0};
    for (int n = 1; n <= 3; ++n)
        for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
            const double r = rho_from_F_at(F, n, t);
            CHECK(std::abs(r - c[n] * std::exp(-t)) < 1e-8);
        }
    CHECK_THROWS_AS(rho_from_F_at(F, 0, 1.0), std::invalid_argument);
}

TEST_CASE("F_from_rho: exponential inverses")
{
    const double T = 20.0;
    const std::size_t N = 4096;
    auto interior = [](const GridFunction& g, double hi) {
        double e = 0.0;
        for (std::size_t i = 1; i + 1 < g.size(); ++i)
            if (g.node(i) < hi)
                e = std::max(e, std::abs(g[i] - std::exp(-g.node(i))));
        return e;
    };
    const GridFunction rho2 = GridFunction::sample(
        [&](double t) { return 0.5 * (std::exp(-t) - std::exp(-T)); }, 0.0, T, N);
    CHECK(interior(F_from_rho(rho2, 2), T) <= 1e-3);

    const GridFunction rho1 = rho_from_F(exp_cutoff(T), 1, N);
    CHECK(interior(F_from_rho(rho1, 1), T) <= 5e-3);

    const GridFunction bad(0.0, 1.0, std::vector<double>(64, 1.0));
    CHECK_THROWS_AS(F_from_rho(bad, 2), std::invalid_argument);
    CHECK_THROWS_AS(F_from_rho(rho2, 0), std::invalid_argument);
}

TEST_CASE("rho <-> F round trips on a bump, n = 1, 2, 3")
{
    const BumpFunction bump(2.0, 1.0);
    const std::size_t N = 4096;
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        const GridFunction rho = rho_from_F(bump, n, N);
        CHECK(sup_diff(F_from_rho(rho, n), [&](double t) { return bump(t); }) <= 1e-3);

        const GridFunction r0 = GridFunction::sample([&](double t) { return bump(t); }, 0.0, 3.0, N);
        const GridFunction back = rho_from_F(F_from_rho(r0, n), n);
        CHECK(sup_diff(back, r0) <= 1e-3);
    }
}

TEST_CASE("n = 1 inversion agrees with the reciprocal-variable route")
{
    const BumpFunction F(2.0, 1.0);
    const GridFunction rho = rho_from_F(F, 1, 4097);
    const GridFunction direct = F_from_rho(rho, 1);
    const GridFunction recip = F_from_rho_reciprocal([&](double t) { return rho(t); }, 0.5, 3.0);
    double e = 0.0;
    for (std::size_t i = 0; i < recip.size(); ++i)
        e = std::max(e, std::abs(recip[i] - direct(recip.node(i))));
    CHECK(e < 5e-3);
    CHECK_THROWS_AS(F_from_rho_reciprocal([](double) { return 0.0; }, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("spectral_invariant: Dirichlet volume oracles")
{
    const BumpFunction rho(0.0, 1.0);  // rho(0) = 1
    const Estimate v2 = spectral_invariant(request(ZERO, {0.0, 0.0}, SupportedFunction::from(rho), 64));
    CHECK(std::abs(v2.value - 2.0 * PI) / (2.0 * PI) < 1e-3);
    const Estimate v3 =
        spectral_invariant(request(ZERO, {0.0, 0.0, 0.0}, SupportedFunction::from(rho), 16));
    CHECK(std::abs(v3.value - PI * PI) / (PI * PI) < 1e-2);

    // 1/x1 + 1/x2 >= 4 on the simplex
    const BumpFunction low(2.0, 1.9);
    const Estimate z = spectral_invariant(request(LINEAR, {1.0, -1.0}, SupportedFunction::from(low), 32));
    CHECK(z.value == 0.0);

    CHECK_THROWS_AS(spectral_invariant(request(RadialProfile::polynomial({-5.0}), {0.0, 0.0},
                                               SupportedFunction::from(rho), 16)),
                    std::invalid_argument);
    CHECK_THROWS_AS(spectral_invariant(request(ZERO, {NAN, 0.0}, SupportedFunction::from(rho), 16)),
                    std::invalid_argument);
}

TEST_CASE("property: spectral_invariant is nonnegative and Lipschitz in alpha")
{
    const CounterRng rng(31);
    std::uint64_t k = 0;
    const BumpFunction rho(12.0, 6.0);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> a{2.0 * rng.uniform(k++) - 1.0, 2.0 * rng.uniform(k++) - 1.0};
        auto b = a;
        b[0] += 1e-3;
        const double va = spectral_invariant(request(LINEAR, a, SupportedFunction::from(rho), 48)).value;
        const double vb = spectral_invariant(request(LINEAR, b, SupportedFunction::from(rho), 48)).value;
        CHECK(va >= 0.0);
        CHECK(std::abs(vb - va) / 1e-3 < 1e3);
    }
}

TEST_CASE("raw_invariant: reduced mode equals sphere area times the spectral functional")
{
    const BumpFunction F(14.0, 5.0);
    const std::vector<double> alpha{1.0, 0.5};
    for (int n : {2}) {
        const double raw =
            raw_invariant(LINEAR, alpha, SupportedFunction::from(F), RawMode::reduced, {SimplexScheme::tensor_duffy, 64, 0})
                .value;
        const GridFunction rho = rho_from_F(F, n, 4097);
        const double spec =
            spectral_invariant(request(LINEAR, alpha, SupportedFunction::from(rho), 64)).value;
        CHECK(std::abs(raw - sphere_area(n) * spec) <= 1e-4 * std::abs(raw));
    }
}

TEST_CASE("raw_invariant: brute force agrees with the reduction at modest sample counts")
{
    const BumpFunction F(14.0, 5.0);
    const std::vector<double> alpha{1.0, 0.5};
    const SupportedFunction f = SupportedFunction::from(F);
    const Estimate red = raw_invariant(LINEAR, alpha, f, RawMode::reduced, {SimplexScheme::tensor_duffy, 64, 0});
    const Estimate mc = raw_invariant(LINEAR, alpha, f, RawMode::brute_force, {SimplexScheme::monte_carlo, 200000, 5});
    CHECK(mc.error > 0.0);
    CHECK(std::abs(mc.value - red.value) < 3.0 * mc.error);

    const SupportedFunction zero{[](double) { return 0.0; }, 5.0, 30.0};
    CHECK(raw_invariant(LINEAR, alpha, zero, RawMode::reduced, {SimplexScheme::tensor_duffy, 16, 0}).value == 0.0);
    CHECK(raw_invariant(LINEAR, alpha, zero, RawMode::brute_force, {SimplexScheme::monte_carlo, 1000, 1}).value == 0.0);

    // alpha_2 = 0 lets x_2 reach the boundary inside the support: no finite box
    CHECK_THROWS_AS(raw_invariant(LINEAR, std::vector<double>{1.0, 0.0}, f, RawMode::brute_force,
                                  {SimplexScheme::monte_carlo, 1000, 1}),
                    std::runtime_error);
}
