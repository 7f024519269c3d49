#pragma once

#include <span>
#include <vector>

namespace toricspec {

/// One facet {x : <x, normal> - offset >= 0}.
struct Facet {
    std::vector<double> normal;
    double offset;
};

/// Polytope given by its facet data. Boundedness and the Delzant condition are
/// not checked for arbitrary input.
class DelzantPolytope {
public:
    DelzantPolytope(int dimension, std::vector<Facet> facets);

    int dimension() const { return dimension_; }
    const std::vector<Facet>& facets() const { return facets_; }

private:
    int dimension_;
    std::vector<Facet> facets_;
};

/// Moment polytope of CP^n: l_i(x) = x_i for i = 1..n and l_{n+1}(x) = 1 - sum x_i.
DelzantPolytope standard_simplex(int n);

/// (l_1(x), ..., l_d(x)).
std::vector<double> facet_values(const DelzantPolytope& p, std::span<const double> x);

/// All facet values strictly positive.
bool is_interior(const DelzantPolytope& p, std::span<const double> x);

/// Guillemin potential sum_i l_i log l_i - l_i, with 0 log 0 = 0 on the boundary.
/// Throws std::domain_error outside the closed polytope.
double guillemin_potential(const DelzantPolytope& p, std::span<const double> x);

}  // namespace toricspec
