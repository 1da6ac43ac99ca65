#pragma once

// Short Weierstrass curves y^2 = x^3 + a4 x + a6 over F_{q} (char > 3):
// exhaustive point counting, trace of Frobenius and its angle, trace
// extension along field extensions, supersingularity, twist orbits,
// automorphism orders, and exact point-order tallies.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "frobscan/gf.hpp"

namespace frobscan {

struct Curve {
  FieldPtr field;
  Elt a4, a6;

  // throws std::invalid_argument when 4 a4^3 + 27 a6^2 = 0
  Curve(FieldPtr f, Elt a4_in, Elt a6_in);

  const Field& F() const { return *field; }
};

// 1728 * 4 a4^3 / (4 a4^3 + 27 a6^2); zero iff a4 = 0, 1728 iff a6 = 0
Elt j_invariant(const Curve& e);

// #E(F_q) = q + 1 + sum_x chi(x^3 + a4 x + a6); requires q <= 2^24
i64 count_points(const Curve& e);

struct TraceRecord {
  i64 q_point = 0;        // cardinality of the field of definition
  i64 t = 0;              // q + 1 - #E
  double theta = 0.0;     // angle in [0, pi] with t = 2 sqrt(q) cos(theta)
};

TraceRecord trace(const Curve& e);

// Trace over F_{q^m} from the trace over F_q via t_0 = 2, t_1 = t1,
// t_{j+1} = t1 t_j - q t_{j-1}.  Requires t1^2 <= 4q.
i64 trace_extend(i64 t1, u64 q, int m);

// standard criterion: supersingular iff p | t
bool is_supersingular(const Curve& e);

// coefficient pairs (u^4 a4, u^6 a6) for u in F*, i.e. every curve
// F-isomorphic to e, plus the lexicographically least representative
struct TwistOrbit {
  std::vector<std::pair<u64, u64>> members;  // sorted, deduplicated codes
  std::pair<u64, u64> canonical;
};

TwistOrbit twist_orbit(const Curve& e);

// geometric automorphism order: 6 if j = 0, 4 if j = 1728, 2 otherwise
int aut_order(const Curve& e);

// order of the group of automorphisms defined over the base field,
// #{u in F* : u^4 a4 = a4 and u^6 a6 = a6}; always (q-1)/orbit size
int aut_order_rational(const Curve& e);

// affine point or the point at infinity
struct Point {
  bool infinity = true;
  Elt x, y;
};

Point point_add(const Curve& e, const Point& P, const Point& Q);
Point point_scalar_mul(const Curve& e, i64 n, const Point& P);

// all points of E(F); requires q <= 2^20 (square-root table)
std::vector<Point> enumerate_points(const Curve& e);

// order of a point, given the factored group order
i64 point_order(const Curve& e, const Point& P, i64 group_order);

// for each divisor d of m, the number of points of exact order d in E(F)
std::map<i64, i64> point_order_census(const Curve& e, i64 m);

}  // namespace frobscan
