#pragma once

#include <span>
#include <vector>

#include "hgsg/lattice.hpp"

namespace hgsg {

/// Highest polynomial degree the grid may use per dimension.
struct DegreeRule {
    std::int32_t p_max = 1;
};

/// Implementation ceiling on the per-dimension degree (the degree-4 basis is
/// the highest exercised by the benchmarks; 8 leaves headroom).
constexpr std::int32_t kMaxDegree = 8;

void validate_degree_rule(const DegreeRule& rule);

/// Degree available at a level: min(p_max, level). Level 0 is the constant.
std::int32_t degree_for_level(std::int32_t level, std::int32_t p_max);

/// Zero-nodes of the 1D basis at c for the given degree:
/// the support endpoints x-h and x+h, then the nearest hierarchical
/// ancestors until `degree` nodes are collected. Degree 1 keeps both hat
/// endpoints for bookkeeping (a single node at level 1, where the support is
/// clipped to the domain). Throws std::invalid_argument if degree > level.
std::vector<double> support_nodes(Coord1D c, std::int32_t degree);

/// A fully resolved 1D basis function.
struct BasisSpec {
    Coord1D center{};
    std::int32_t degree = 0;
    double x = 0.5;          // coordinate of the center
    double h = 0.5;          // support halfwidth
    double lo = 0.0, hi = 1.0;  // support clipped to [0, 1]
    std::vector<double> nodes;
    double denom = 1.0;      // prod (x - node), degree >= 2 only
};

BasisSpec make_basis(Coord1D c, std::int32_t degree);
BasisSpec make_basis(Coord1D c, const DegreeRule& rule);

/// Pointwise value: 0 outside the open support, the constant 1 at level 0,
/// the hat for degree 1, the Lagrange product for degree >= 2.
double eval_1d(const BasisSpec& spec, double x);

/// Exact integral over [0, 1]: Gauss-Legendre of minimal sufficient order on
/// each half of the support (exact for polynomials of the basis degree).
double volume_1d(const BasisSpec& spec);

/// Tensor-product basis value at x; degrees follow degree_for_level.
double eval_nd(const LatticePoint& p, const DegreeRule& rule, std::span<const double> x);

/// Tensor-product basis volume (the quadrature weight of the point).
double volume_nd(const LatticePoint& p, const DegreeRule& rule);

/// Gauss-Legendre nodes/weights on [-1, 1]; cached, thread-safe for readers.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(std::int32_t n);

}  // namespace hgsg
