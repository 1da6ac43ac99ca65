#include "frobscan/ellcurve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace frobscan {

namespace {

Elt curve_disc_term(const Field& F, const Elt& a4, const Elt& a6) {
  // 4 a4^3 + 27 a6^2
  Elt four = F.from_int(4), twentyseven = F.from_int(27);
  return four * a4 * a4 * a4 + twentyseven * a6 * a6;
}

}  // namespace

Curve::Curve(FieldPtr f, Elt a4_in, Elt a6_in)
    : field(std::move(f)), a4(a4_in), a6(a6_in) {
  if (a4.f != field.get() || a6.f != field.get())
    throw std::invalid_argument("curve coefficients from a different field");
  if (curve_disc_term(*field, a4, a6) == field->zero())
    throw std::invalid_argument("singular curve: 4 a4^3 + 27 a6^2 = 0");
}

Elt j_invariant(const Curve& e) {
  const Field& F = e.F();
  Elt num = F.from_int(4) * e.a4 * e.a4 * e.a4;
  Elt den = curve_disc_term(F, e.a4, e.a6);
  return F.from_int(1728) * num * F.inv(den);
}

i64 count_points(const Curve& e) {
  const Field& F = e.F();
  u64 q = F.size();
  if (!F.has_chi_table())
    throw std::runtime_error("count_points: field too large for exhaustive mode");
  i64 sum = 0;
  int k = F.k();
  if (k == 1) {
    u64 p = F.p();
    u64 a = e.a4.code, b = e.a6.code;
    for (u64 x = 0; x < p; ++x) {
      u64 v = (mulmod_u64(mulmod_u64(x, x, p) + a % p, x, p) + b) % p;
      sum += F.chi_code(v);
    }
  } else {
    u64 x[Field::kMaxDegree] = {0};
    u64 a4c[Field::kMaxDegree], a6c[Field::kMaxDegree];
    u64 t[Field::kMaxDegree], v[Field::kMaxDegree];
    F.decode_raw(e.a4.code, a4c);
    F.decode_raw(e.a6.code, a6c);
    u64 p = F.p();
    for (u64 code = 0;; ++code) {
      // v = (x^2 + a4) * x + a6
      F.mul_raw(x, x, t);
      F.add_raw(t, a4c, t);
      F.mul_raw(t, x, v);
      F.add_raw(v, a6c, v);
      sum += F.chi_code(F.encode_raw(v));
      if (code + 1 == q) break;
      // increment coefficient tuple; top-degree digit moves fastest
      for (int i = k - 1; i >= 0; --i) {
        if (++x[i] < p) break;
        x[i] = 0;
      }
    }
  }
  return static_cast<i64>(q) + 1 + sum;
}

TraceRecord trace(const Curve& e) {
  i64 q = static_cast<i64>(e.F().size());
  i64 n = count_points(e);
  i64 t = q + 1 - n;
  double c = static_cast<double>(t) / (2.0 * std::sqrt(static_cast<double>(q)));
  c = std::clamp(c, -1.0, 1.0);
  return {q, t, std::acos(c)};
}

i64 trace_extend(i64 t1, u64 q, int m) {
  if (m < 1) throw std::invalid_argument("trace_extend: m must be >= 1");
  if (i128(t1) * t1 > i128(4) * q)
    throw std::invalid_argument("trace_extend: |t1| exceeds the Hasse bound");
  i128 prev = 2, cur = t1;
  for (int j = 1; j < m; ++j) {
    i128 next = i128(t1) * cur - i128(q) * prev;
    prev = cur;
    cur = next;
    constexpr i128 lim = i128(1) << 62;
    if (cur > lim || cur < -lim)
      throw std::overflow_error("trace_extend: trace exceeds 2^62");
  }
  return static_cast<i64>(cur);
}

bool is_supersingular(const Curve& e) {
  i64 t = trace(e).t;
  return t % static_cast<i64>(e.F().p()) == 0;
}

TwistOrbit twist_orbit(const Curve& e) {
  const Field& F = e.F();
  std::vector<std::pair<u64, u64>> members;
  for (u64 u = 1; u < F.size(); ++u) {
    Elt uu = F.from_code(u);
    Elt u2 = uu * uu;
    Elt u4 = u2 * u2;
    Elt u6 = u4 * u2;
    members.emplace_back((u4 * e.a4).code, (u6 * e.a6).code);
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return {members, members.front()};
}

int aut_order(const Curve& e) {
  const Field& F = e.F();
  Elt j = j_invariant(e);
  if (j == F.zero()) return 6;
  if (j == F.from_int(1728)) return 4;
  return 2;
}

int aut_order_rational(const Curve& e) {
  const Field& F = e.F();
  int n = 0;
  for (u64 u = 1; u < F.size(); ++u) {
    Elt uu = F.from_code(u);
    Elt u2 = uu * uu;
    Elt u4 = u2 * u2;
    Elt u6 = u4 * u2;
    if (u4 * e.a4 == e.a4 && u6 * e.a6 == e.a6) ++n;
  }
  return n;
}

Point point_add(const Curve& e, const Point& P, const Point& Q) {
  const Field& F = e.F();
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  if (P.x == Q.x) {
    if (P.y == F.neg(Q.y)) return Point{};  // includes the 2-torsion case y = 0
    // doubling
    Elt num = F.from_int(3) * P.x * P.x + e.a4;
    Elt den = F.from_int(2) * P.y;
    Elt s = num * F.inv(den);
    Elt x3 = s * s - P.x - P.x;
    Elt y3 = s * (P.x - x3) - P.y;
    return {false, x3, y3};
  }
  Elt s = (Q.y - P.y) * F.inv(Q.x - P.x);
  Elt x3 = s * s - P.x - Q.x;
  Elt y3 = s * (P.x - x3) - P.y;
  return {false, x3, y3};
}

Point point_scalar_mul(const Curve& e, i64 n, const Point& P) {
  if (n < 0) throw std::invalid_argument("point_scalar_mul: negative scalar");
  Point acc{};  // infinity
  Point base = P;
  while (n) {
    if (n & 1) acc = point_add(e, acc, base);
    base = point_add(e, base, base);
    n >>= 1;
  }
  return acc;
}

std::vector<Point> enumerate_points(const Curve& e) {
  const Field& F = e.F();
  if (!F.has_sqrt_table())
    throw std::runtime_error("enumerate_points: field too large for full enumeration");
  std::vector<Point> pts;
  pts.push_back(Point{});  // infinity
  for (u64 xc = 0; xc < F.size(); ++xc) {
    Elt x = F.from_code(xc);
    Elt v = (x * x + e.a4) * x + e.a6;
    int c = F.chi(v);
    if (c < 0) continue;
    if (c == 0) {
      pts.push_back({false, x, F.zero()});
      continue;
    }
    Elt y = *F.sqrt(v);
    pts.push_back({false, x, y});
    pts.push_back({false, x, F.neg(y)});
  }
  return pts;
}

namespace {

i64 order_from_factors(const Curve& e, const Point& P, i64 group_order,
                       const std::vector<std::pair<u64, int>>& factors) {
  i64 ord = group_order;
  for (auto& [p, mult] : factors) {
    for (int i = 0; i < mult; ++i) {
      i64 cand = ord / static_cast<i64>(p);
      if (point_scalar_mul(e, cand, P).infinity)
        ord = cand;
      else
        break;
    }
  }
  return ord;
}

}  // namespace

i64 point_order(const Curve& e, const Point& P, i64 group_order) {
  return order_from_factors(e, P, group_order,
                            factorize_u64(static_cast<u64>(group_order)));
}

std::map<i64, i64> point_order_census(const Curve& e, i64 m) {
  if (m < 1) throw std::invalid_argument("point_order_census: m must be >= 1");
  std::vector<Point> pts = enumerate_points(e);
  i64 n = static_cast<i64>(pts.size());
  auto factors = factorize_u64(static_cast<u64>(n));
  std::map<i64, i64> tally;
  for (i64 d = 1; d <= m; ++d)
    if (m % d == 0) tally[d] = 0;
  for (const Point& P : pts) {
    i64 ord = P.infinity ? 1 : order_from_factors(e, P, n, factors);
    auto it = tally.find(ord);
    if (it != tally.end()) ++it->second;
  }
  return tally;
}

}  // namespace frobscan
