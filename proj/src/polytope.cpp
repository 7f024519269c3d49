#include "toricspec/polytope.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace toricspec {

namespace {

/// Facet values at or below this count as exactly on the facet for 0 log 0.
constexpr double ZERO_FACET = 1e-300;

/// Slack for points that sit on a facet up to rounding.
constexpr double BOUNDARY_SLACK = 1e-14;

}  // namespace

DelzantPolytope::DelzantPolytope(int dimension, std::vector<Facet> facets)
    : dimension_(dimension), facets_(std::move(facets))
{
    if (dimension_ < 1)
        throw std::invalid_argument("DelzantPolytope: dimension must be positive");
    if (facets_.empty())
        throw std::invalid_argument("DelzantPolytope: need at least one facet");
    for (const Facet& f : facets_) {
        if (int(f.normal.size()) != dimension_)
            throw std::invalid_argument("DelzantPolytope: facet normal has wrong length");
        bool nonzero = false;
        for (double c : f.normal)
            nonzero = nonzero || c != 0.0;
        if (!nonzero)
            throw std::invalid_argument("DelzantPolytope: zero facet normal");
    }
}

DelzantPolytope standard_simplex(int n)
{
    if (n < 1)
        throw std::invalid_argument("standard_simplex: n must be at least 1, got " +
                                    std::to_string(n));
    std::vector<Facet> facets;
    for (int i = 0; i < n; ++i) {
        Facet f{std::vector<double>(n, 0.0), 0.0};
        f.normal[i] = 1.0;
        facets.push_back(std::move(f));
    }
    facets.push_back({std::vector<double>(n, -1.0), -1.0});
    return DelzantPolytope(n, std::move(facets));
}

std::vector<double> facet_values(const DelzantPolytope& p, std::span<const double> x)
{
    if (int(x.size()) != p.dimension())
        throw std::invalid_argument("facet_values: point has dimension " +
                                    std::to_string(x.size()) + ", polytope has " +
                                    std::to_string(p.dimension()));
    std::vector<double> l;
    l.reserve(p.facets().size());
    for (const Facet& f : p.facets()) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += f.normal[i] * x[i];
        l.push_back(s - f.offset);
    }
    return l;
}

bool is_interior(const DelzantPolytope& p, std::span<const double> x)
{
    for (double l : facet_values(p, x))
        if (!(l > 0.0))
            return false;
    return true;
}

double guillemin_potential(const DelzantPolytope& p, std::span<const double> x)
{
    double g = 0.0;
    for (double l : facet_values(p, x)) {
        if (l < -BOUNDARY_SLACK)
            throw std::domain_error("guillemin_potential: point outside the polytope");
        if (l <= ZERO_FACET)
            continue;
        g += l * std::log(l) - l;
    }
    return g;
}

}  // namespace toricspec
