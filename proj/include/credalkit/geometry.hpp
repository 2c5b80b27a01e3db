#pragma once

#include <cstddef>
#include <vector>

#include "credalkit/errors.hpp"

namespace credalkit::geom {

using Vec = std::vector<double>;

// Shared numeric contract: coordinates are compared in max-norm, half-space
// and membership decisions carry this slack, and no two vertices of a minimal
// representation sit closer than this.
constexpr double kGeomTol = 1e-9;

// Facet/vertex enumeration is exact but combinatorial; dimensions above this
// are rejected outright.
constexpr std::size_t kMaxEnumDim = 16;

// normal . x <= offset, with |normal| = 1 so kGeomTol is meaningful.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

// normal . x == value, with |normal| = 1.
struct AffineEq {
  Vec normal;
  double value = 0.0;
};

struct HForm {
  std::size_t dim = 0;
  std::vector<AffineEq> equalities;  // affine hull of the set
  std::vector<Halfspace> facets;     // facets within the affine hull
};

// Convex polytope in minimal V-representation. An empty vertex list is the
// empty polytope (a legal value: intersections may be empty).
struct Polytope {
  std::size_t dim = 0;
  std::vector<Vec> vertices;

  bool empty() const { return vertices.empty(); }
};

// Minimal vertex representation of the convex hull of `points`.
// Errors: EmptyInput (no points), DimensionMismatch (ragged lengths),
// InvalidInput (non-finite coordinates).
Polytope convex_hull(std::vector<Vec> points);

// Least max-norm distance from `point` to any convex combination of the
// polytope's vertices (the value of a Chebyshev feasibility LP). Infinity for
// the empty polytope.
double containment_gap(const Polytope& poly, const Vec& point);

// Membership within tolerance `tol` (max-norm).
bool contains(const Polytope& poly, const Vec& point, double tol = kGeomTol);

// V -> H conversion by facet enumeration. Degenerate polytopes are handled by
// splitting off their affine hull as equality rows.
// Errors: EmptyInput (empty polytope), FrameTooLarge (dim > kMaxEnumDim or
// enumeration too large).
HForm to_halfspaces(const Polytope& poly);

// All vertices of {x : equalities hold, facets hold}, assuming the system is
// bounded (which holds for intersections of polytopes). Returns an empty list
// when the system is infeasible.
std::vector<Vec> enumerate_vertices(std::size_t dim,
                                    const std::vector<AffineEq>& equalities,
                                    const std::vector<Halfspace>& facets);

// Intersection of two polytopes over the same ambient dimension; the result
// may be empty. Errors: DimensionMismatch, FrameTooLarge.
Polytope intersect(const Polytope& a, const Polytope& b);

}  // namespace credalkit::geom
