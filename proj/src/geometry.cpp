#include "credalkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "credalkit/lp.hpp"

namespace credalkit::geom {

namespace {

constexpr double kRankTol = 1e-10;          // affine/rank decisions
constexpr std::size_t kHullPointCap = 4096; // exact minimization gets quadratic in LPs
constexpr std::uint64_t kEnumCap = 25000000;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double max_abs_diff(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void validate_points(const std::vector<Vec>& points, std::size_t dim) {
  for (const Vec& p : points) {
    if (p.size() != dim) fail(errc::dimension_mismatch, "points of differing length");
    for (double v : p) {
      if (!std::isfinite(v)) fail(errc::invalid_input, "non-finite coordinate");
    }
  }
}

std::vector<Vec> dedup_points(const std::vector<Vec>& points) {
  std::vector<Vec> out;
  out.reserve(points.size());
  for (const Vec& p : points) {
    bool dup = false;
    for (const Vec& q : out) {
      if (max_abs_diff(p, q) <= kGeomTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

// Projects v against `basis` (orthonormal) and appends the normalized
// remainder when it is numerically independent. Two projection passes keep
// the basis orthogonal to working precision.
bool append_orthonormal(std::vector<Vec>& basis, Vec v, double tol = kRankTol) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& q : basis) {
      const double d = dot(q, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * q[i];
    }
  }
  const double n = norm2(v);
  if (n <= tol) return false;
  for (double& x : v) x /= n;
  basis.push_back(std::move(v));
  return true;
}

// Orthonormal completion of `basis` to the full space, built from coordinate
// directions.
std::vector<Vec> complement_basis(std::vector<Vec> basis, std::size_t dim) {
  std::vector<Vec> added;
  for (std::size_t k = 0; k < dim && basis.size() < dim; ++k) {
    Vec e(dim, 0.0);
    e[k] = 1.0;
    if (append_orthonormal(basis, std::move(e))) added.push_back(basis.back());
  }
  return added;
}

// Gaussian elimination with partial pivoting; nullopt when singular within
// tolerance.
std::optional<Vec> solve_square(std::vector<Vec> m, Vec rhs) {
  const std::size_t k = rhs.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) <= kRankTol) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  Vec x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > cap) return cap + 1;
  }
  return r;
}

template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    // advance odometer
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) break;
      if (i == 0) return;
    }
    if (idx[i] == i + n - k) return;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Chebyshev membership LP over an explicit vertex list:
//   min t  s.t.  |V^T alpha - p| <= t,  sum alpha = 1,  alpha >= 0.
double gap_against(const std::vector<Vec>& vertices, const Vec& p) {
  const std::size_t n = vertices.size();
  const std::size_t m = p.size();
  // columns: alpha(n), t, s+(m), s-(m)
  const std::size_t cols = n + 1 + 2 * m;
  std::vector<std::vector<double>> A(2 * m + 1, std::vector<double>(cols, 0.0));
  std::vector<double> b(2 * m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      A[j][i] = vertices[i][j];
      A[m + j][i] = vertices[i][j];
    }
    A[j][n] = -1.0;             // -t
    A[j][n + 1 + j] = 1.0;      // s+
    A[m + j][n] = 1.0;          // +t
    A[m + j][n + 1 + m + j] = -1.0;  // -s-
    b[j] = p[j];
    b[m + j] = p[j];
  }
  for (std::size_t i = 0; i < n; ++i) A[2 * m][i] = 1.0;
  b[2 * m] = 1.0;
  std::vector<double> c(cols, 0.0);
  c[n] = 1.0;

  const detail::LpSolution sol = detail::solve_lp(std::move(A), std::move(b), c);
  if (sol.status != detail::LpStatus::optimal) {
    fail(errc::numeric_failure, "membership LP did not solve");
  }
  return std::max(0.0, sol.objective);
}

// Affine subspace satisfying a list of equalities: origin + span(basis).
struct ReducedSystem {
  bool feasible = true;
  Vec origin;
  std::vector<Vec> basis;
};

ReducedSystem reduce_equalities(std::size_t dim, const std::vector<AffineEq>& eqs) {
  ReducedSystem red;
  std::vector<Vec> q;
  std::vector<double> rho;
  for (const AffineEq& e : eqs) {
    Vec v = e.normal;
    const double n0 = norm2(v);
    if (n0 <= kRankTol) {
      if (std::abs(e.value) > kGeomTol) return {false, {}, {}};
      continue;
    }
    double val = e.value / n0;
    for (double& x : v) x /= n0;
    // project against accepted rows, transforming the rhs alongside
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < q.size(); ++j) {
        const double d = dot(q[j], v);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= d * q[j][i];
        val -= d * rho[j];
      }
    }
    const double n1 = norm2(v);
    if (n1 > kRankTol) {
      for (double& x : v) x /= n1;
      q.push_back(std::move(v));
      rho.push_back(val / n1);
    } else if (std::abs(val) > kGeomTol) {
      return {false, {}, {}};  // inconsistent equalities
    }
  }
  red.origin.assign(dim, 0.0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) red.origin[i] += rho[j] * q[j][i];
  }
  red.basis = complement_basis(std::move(q), dim);
  return red;
}

}  // namespace

Polytope convex_hull(std::vector<Vec> points) {
  if (points.empty()) fail(errc::empty_input, "convex_hull: no points");
  const std::size_t dim = points[0].size();
  validate_points(points, dim);

  std::vector<Vec> uniq = dedup_points(points);
  if (uniq.size() > kHullPointCap) {
    fail(errc::frame_too_large, "convex_hull: too many points for exact minimization");
  }
  // A point is a vertex iff it is not in the hull of the remaining points;
  // removing a non-vertex never changes the hull, so one pass suffices.
  std::size_t i = 0;
  while (uniq.size() > 1 && i < uniq.size()) {
    std::vector<Vec> others;
    others.reserve(uniq.size() - 1);
    for (std::size_t j = 0; j < uniq.size(); ++j) {
      if (j != i) others.push_back(uniq[j]);
    }
    if (gap_against(others, uniq[i]) <= kGeomTol) {
      uniq.erase(uniq.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return Polytope{dim, std::move(uniq)};
}

double containment_gap(const Polytope& poly, const Vec& point) {
  if (point.size() != poly.dim) fail(errc::dimension_mismatch, "containment_gap: point length");
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  return gap_against(poly.vertices, point);
}

bool contains(const Polytope& poly, const Vec& point, double tol) {
  return containment_gap(poly, point) <= tol;
}

HForm to_halfspaces(const Polytope& poly) {
  if (poly.dim > kMaxEnumDim) fail(errc::frame_too_large, "to_halfspaces: dimension above 16");
  if (poly.empty()) fail(errc::empty_input, "to_halfspaces: empty polytope");

  HForm out;
  out.dim = poly.dim;
  const Vec& v0 = poly.vertices[0];
  const std::size_t nv = poly.vertices.size();

  std::vector<Vec> abasis;  // orthonormal basis of the affine hull directions
  for (std::size_t i = 1; i < nv; ++i) {
    Vec d(poly.dim);
    for (std::size_t j = 0; j < poly.dim; ++j) d[j] = poly.vertices[i][j] - v0[j];
    append_orthonormal(abasis, std::move(d));
  }
  for (const Vec& qn : complement_basis(abasis, poly.dim)) {
    out.equalities.push_back({qn, dot(qn, v0)});
  }
  const std::size_t r = abasis.size();
  if (r == 0) return out;  // a single point: equalities pin everything

  // Work in affine-hull coordinates, where the polytope is full-dimensional.
  std::vector<Vec> ys(nv, Vec(r, 0.0));
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < poly.dim; ++k) {
        s += abasis[j][k] * (poly.vertices[i][k] - v0[k]);
      }
      ys[i][j] = s;
    }
  }

  if (binomial_capped(nv, r, kEnumCap) > kEnumCap) {
    fail(errc::frame_too_large, "to_halfspaces: facet enumeration too large");
  }

  struct RFacet {
    Vec normal;
    double offset;
  };
  std::vector<RFacet> rfacets;
  auto push_facet = [&](Vec n, double b) {
    for (const RFacet& f : rfacets) {
      if (std::abs(dot(f.normal, n) - 1.0) <= 1e-9 && std::abs(f.offset - b) <= 1e-9) return;
    }
    rfacets.push_back({std::move(n), b});
  };

  for_each_combination(nv, r, [&](const std::vector<std::size_t>& idx) {
    std::vector<Vec> dirs;
    for (std::size_t j = 1; j < r; ++j) {
      Vec d(r);
      for (std::size_t k = 0; k < r; ++k) d[k] = ys[idx[j]][k] - ys[idx[0]][k];
      if (!append_orthonormal(dirs, std::move(d))) return;  // degenerate subset
    }
    const std::vector<Vec> comp = complement_basis(std::move(dirs), r);
    if (comp.size() != 1) return;
    Vec n = comp[0];
    const double b = dot(n, ys[idx[0]]);
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    for (const Vec& y : ys) {
      const double d = dot(n, y) - b;
      mx = std::max(mx, d);
      mn = std::min(mn, d);
    }
    if (mx <= kGeomTol) {
      push_facet(std::move(n), b);
    } else if (mn >= -kGeomTol) {
      for (double& x : n) x = -x;
      push_facet(std::move(n), -b);
    }
  });

  for (const RFacet& f : rfacets) {
    Vec na(poly.dim, 0.0);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < poly.dim; ++k) na[k] += f.normal[j] * abasis[j][k];
    }
    const double off = f.offset + dot(na, v0);
    out.facets.push_back({std::move(na), off});
  }
  return out;
}

std::vector<Vec> enumerate_vertices(std::size_t dim,
                                    const std::vector<AffineEq>& equalities,
                                    const std::vector<Halfspace>& facets) {
  const ReducedSystem red = reduce_equalities(dim, equalities);
  if (!red.feasible) return {};
  const std::size_t k = red.basis.size();

  struct Row {
    Vec a;
    double b;
  };
  std::vector<Row> rows;
  rows.reserve(facets.size());
  for (const Halfspace& hs : facets) {
    Vec a(k, 0.0);
    double amax = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      a[j] = dot(hs.normal, red.basis[j]);
      amax = std::max(amax, std::abs(a[j]));
    }
    const double b = hs.offset - dot(hs.normal, red.origin);
    if (amax <= 1e-12) {
      if (b < -kGeomTol) return {};  // constraint contradicts the affine hull
      continue;
    }
    rows.push_back({std::move(a), b});
  }

  if (k == 0) return {red.origin};
  if (rows.size() < k) return {};  // bounded feasible sets have >= k facets

  if (binomial_capped(rows.size(), k, kEnumCap) > kEnumCap) {
    fail(errc::frame_too_large, "enumerate_vertices: subset enumeration too large");
  }

  std::vector<Vec> found;
  for_each_combination(rows.size(), k, [&](const std::vector<std::size_t>& idx) {
    std::vector<Vec> m(k);
    Vec rhs(k);
    for (std::size_t j = 0; j < k; ++j) {
      m[j] = rows[idx[j]].a;
      rhs[j] = rows[idx[j]].b;
    }
    const std::optional<Vec> t = solve_square(std::move(m), std::move(rhs));
    if (!t) return;
    for (const Row& row : rows) {
      if (dot(row.a, *t) > row.b + kGeomTol) return;
    }
    Vec x = red.origin;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < dim; ++i) x[i] += (*t)[j] * red.basis[j][i];
    }
    for (const Vec& got : found) {
      if (max_abs_diff(got, x) <= kGeomTol) return;
    }
    found.push_back(std::move(x));
  });
  return found;
}

Polytope intersect(const Polytope& a, const Polytope& b) {
  if (a.dim != b.dim) fail(errc::dimension_mismatch, "intersect: ambient dimensions differ");
  if (a.empty() || b.empty()) return Polytope{a.dim, {}};

  const HForm ha = to_halfspaces(a);
  const HForm hb = to_halfspaces(b);
  std::vector<AffineEq> eqs = ha.equalities;
  eqs.insert(eqs.end(), hb.equalities.begin(), hb.equalities.end());
  std::vector<Halfspace> ineqs = ha.facets;
  ineqs.insert(ineqs.end(), hb.facets.begin(), hb.facets.end());

  std::vector<Vec> verts = enumerate_vertices(a.dim, eqs, ineqs);
  if (verts.empty()) return Polytope{a.dim, {}};
  return convex_hull(std::move(verts));
}

}  // namespace credalkit::geom
