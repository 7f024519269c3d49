#include "doctest.h"

#include "toricspec/numerics.hpp"
#include "toricspec/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace toricspec;

TEST_CASE("standard_simplex facets")
{
    const DelzantPolytope p1 = standard_simplex(1);
    CHECK(p1.facets().size() == 2);
    const auto l1 = facet_values(p1, std::vector<double>{0.25});
    CHECK(l1[0] == doctest::Approx(0.25));
    CHECK(l1[1] == doctest::Approx(0.75));

    const DelzantPolytope p2 = standard_simplex(2);
    const auto l2 = facet_values(p2, std::vector<double>{0.2, 0.3});
    CHECK(l2[0] == doctest::Approx(0.2));
    CHECK(l2[1] == doctest::Approx(0.3));
    CHECK(l2[2] == doctest::Approx(0.5));

    const auto edge = facet_values(p2, std::vector<double>{0.5, 0.5});
    CHECK(edge[2] == 0.0);
    CHECK_FALSE(is_interior(p2, std::vector<double>{0.5, 0.5}));

    CHECK_THROWS_AS(standard_simplex(0), std::invalid_argument);
}

TEST_CASE("facet_values")
{
    const auto c = facet_values(standard_simplex(2), std::vector<double>{1.0 / 3, 1.0 / 3});
    for (double v : c)
        CHECK(v == doctest::Approx(1.0 / 3));

    const auto l3 = facet_values(standard_simplex(3), std::vector<double>{0.1, 0.2, 0.3});
    CHECK(l3[3] == doctest::Approx(0.4));

    const std::vector<double> outside{0.6, 0.6};
    const auto lo = facet_values(standard_simplex(2), outside);
    CHECK(lo[2] == doctest::Approx(-0.2));
    CHECK_FALSE(is_interior(standard_simplex(2), outside));

    CHECK_THROWS_AS(facet_values(standard_simplex(2), std::vector<double>{0.1}),
                    std::invalid_argument);
}

TEST_CASE("DelzantPolytope rejects malformed facets")
{
    CHECK_THROWS_AS(DelzantPolytope(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(DelzantPolytope(2, {{{0.0, 0.0}, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DelzantPolytope(2, {{{1.0}, 0.0}}), std::invalid_argument);
}

TEST_CASE("guillemin_potential values")
{
    CHECK(guillemin_potential(standard_simplex(1), std::vector<double>{0.5}) ==
          doctest::Approx(-1.0 - std::log(2.0)));
    CHECK(guillemin_potential(standard_simplex(2), std::vector<double>{1.0 / 3, 1.0 / 3}) ==
          doctest::Approx(std::log(1.0 / 3) - 1.0));
    for (int n = 1; n <= 4; ++n)
        CHECK(guillemin_potential(standard_simplex(n), std::vector<double>(n, 0.0)) ==
              doctest::Approx(-1.0));
    CHECK_THROWS_AS(guillemin_potential(standard_simplex(2), std::vector<double>{0.7, 0.7}),
                    std::domain_error);
}

namespace {

std::vector<double> random_point(const CounterRng& rng, std::uint64_t& k, int n, double scale)
{
    std::vector<double> x(n);
    for (auto& v : x)
        v = scale * rng.uniform(k++);
    return x;
}

std::vector<double> random_interior(const CounterRng& rng, std::uint64_t& k, int n)
{
    std::vector<double> e(n + 1);
    double total = 0.0;
    for (auto& v : e) {
        v = -std::log(rng.uniform(k++));
        total += v;
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = e[i] / total;
    return x;
}

}  // namespace

TEST_CASE("property: facet values are nonnegative exactly on the closed simplex")
{
    const CounterRng rng(42);
    std::uint64_t k = 0;
    for (int n = 1; n <= 4; ++n) {
        const DelzantPolytope p = standard_simplex(n);
        for (int trial = 0; trial < 500; ++trial) {
            const auto x = random_point(rng, k, n, 1.2);
            double s = 0.0;
            bool inside = true;
            for (double v : x) {
                s += v;
                inside = inside && v >= 0.0;
            }
            inside = inside && s <= 1.0;
            const auto l = facet_values(p, x);
            const bool nonneg = std::all_of(l.begin(), l.end(), [](double v) { return v >= 0.0; });
            CHECK(nonneg == inside);
        }
    }
}

TEST_CASE("property: Guillemin potential is strictly convex and permutation symmetric")
{
    const CounterRng rng(7);
    std::uint64_t k = 0;
    for (int n = 1; n <= 4; ++n) {
        const DelzantPolytope p = standard_simplex(n);
        for (int trial = 0; trial < 200; ++trial) {
            const auto x = random_interior(rng, k, n);
            const auto y = random_interior(rng, k, n);
            const double t = 0.05 + 0.9 * rng.uniform(k++);
            std::vector<double> z(n);
            for (int i = 0; i < n; ++i)
                z[i] = t * x[i] + (1 - t) * y[i];
            CHECK(guillemin_potential(p, z) <
                  t * guillemin_potential(p, x) + (1 - t) * guillemin_potential(p, y) + 1e-12);

            auto perm = x;
            std::reverse(perm.begin(), perm.end());
            CHECK(guillemin_potential(p, perm) == doctest::Approx(guillemin_potential(p, x)));
        }
    }
}
