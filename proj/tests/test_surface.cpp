#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "frobscan/surface.hpp"

using namespace frobscan;

TEST_CASE("polynomial parsing") {
  PolyFp a = parse_poly("3*l^2 + 1", 5);
  CHECK(a.coeffs() == std::vector<u64>{1, 0, 3});
  CHECK(parse_poly("l", 5).coeffs() == std::vector<u64>{0, 1});
  CHECK(parse_poly("-l^3 + 2", 7).coeffs() == std::vector<u64>{2, 0, 0, 6});
  CHECK(parse_poly("10", 7).coeffs() == std::vector<u64>{3});
  CHECK(parse_poly("2*l + l", 5).coeffs() == std::vector<u64>{0, 3});
  CHECK_THROWS_AS(parse_poly("", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x + 1", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("l ^", 5), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic round trips") {
  u64 p = 13;
  PolyFp f = parse_poly("l^3 + 4*l + 2", p);
  PolyFp g = parse_poly("2*l^2 + 1", p);
  auto [q, r] = PolyFp::divrem(f * g + parse_poly("5", p), g);
  CHECK(q == f);
  CHECK(r == parse_poly("5", p));
  CHECK(poly_gcd(f * g, g) == g.monic());
  auto F = Field::make(p, 2);
  for (u64 code = 0; code < 20; ++code) {
    Elt x = F->from_code(code);
    Elt lhs = (f * g).eval(*F, x);
    CHECK(lhs == f.eval(*F, x) * g.eval(*F, x));
  }
}

TEST_CASE("family file parsing") {
  Family fam = parse_family("p = 5\na4 = l\na6 = 1\n");
  CHECK(fam.p == 5);
  CHECK(fam.a4.coeffs() == std::vector<u64>{0, 1});

  Family leg = parse_family("builtin = legendre\np = 5\n");
  CHECK(leg.name == "legendre");

  // comments and blank lines are fine
  CHECK_NOTHROW(parse_family("# a family\n\np = 7\na4 = l\na6 = 1\n"));

  CHECK_THROWS_AS(parse_family("a4 = l\na6 = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("p = 5\na4 = l\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("p = 5\nbogus = 3\na4 = l\na6 = 1\n"),
                  std::invalid_argument);
  // isotrivial: constant coefficients
  CHECK_THROWS_AS(parse_family("p = 5\na4 = 1\na6 = 2\n"),
                  std::invalid_argument);
  // singular generic fiber: 4 l^3 + 27 l^2... use a4 = a6 = 0
  CHECK_THROWS_AS(parse_family("p = 5\na4 = 0\na6 = 0\n"),
                  std::invalid_argument);
}

TEST_CASE("legendre family: bad fibers, j-degree, and the j formula") {
  for (u64 p : {5ull, 7ull, 11ull}) {
    Family fam = legendre_family(p);
    JDegree jd = j_map_degree(fam);
    CHECK(jd.degree == 6);
    CHECK(jd.separable_degree == 6);

    // j = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)
    auto [num, den] = j_fraction(fam);
    PolyFp s = parse_poly("l^2 - l + 1", p);
    PolyFp expected_num = (s * s * s).scaled(256);
    PolyFp l = PolyFp::x(p);
    PolyFp lm1 = l - PolyFp::constant(p, 1);
    PolyFp expected_den = l * l * lm1 * lm1;
    CHECK(num == expected_num);
    CHECK(den == expected_den.monic());

    ScanLayer layer = scan_layer(fam, 1);
    FiberCounts fc = classify_fibers(layer);
    CHECK(fc.bad == 2);  // lambda in {0, 1}
    CHECK(fc.good_ordinary + fc.good_supersingular + fc.bad ==
          static_cast<i64>(p));
  }
}

TEST_CASE("legendre over F_5: singular fibers exactly at lambda in {0, 1}") {
  Family fam = legendre_family(5);
  auto F = Field::make(5, 1);
  for (u64 lam = 0; lam < 5; ++lam) {
    Elt x = F->from_code(lam);
    Elt a4v = fam.a4.eval(*F, x);
    Elt a6v = fam.a6.eval(*F, x);
    Elt disc = F->from_int(4) * a4v * a4v * a4v + F->from_int(27) * a6v * a6v;
    CHECK((disc == F->zero()) == (lam == 0 || lam == 1));
  }
}

TEST_CASE("supersingular fiber counts stay bounded as k grows") {
  // the supersingular locus is a fixed finite set of closed points, so the
  // per-k counts stabilize once the residue fields are contained
  Family fam5 = legendre_family(5);
  std::vector<i64> ss5;
  for (int k = 1; k <= 4; ++k)
    ss5.push_back(classify_fibers(scan_layer(fam5, k)).good_supersingular);
  CHECK(ss5 == std::vector<i64>{0, 2, 0, 2});  // two conjugate lambda in F_25

  Family fam7 = legendre_family(7);
  ScanLayer l1 = scan_layer(fam7, 1);
  CHECK(classify_fibers(l1).good_supersingular == 3);  // lambda in {-1, 2, 4}
  ScanLayer l2 = scan_layer(fam7, 2);
  CHECK(classify_fibers(l2).good_supersingular == 3);  // no new ones appear
}

TEST_CASE("custom family a4 = l, a6 = 1 has j-degree 3") {
  Family fam = parse_family("p = 5\na4 = l\na6 = 1\n");
  JDegree jd = j_map_degree(fam);
  CHECK(jd.degree == 3);
  CHECK(jd.separable_degree == 3);
}

TEST_CASE("precomposing with l -> l^p multiplies the degree, not the separable degree") {
  Family plain = parse_family("p = 5\na4 = l\na6 = 1\n");
  Family inseparable = parse_family("p = 5\na4 = l^5\na6 = 1\n");
  JDegree a = j_map_degree(plain);
  JDegree b = j_map_degree(inseparable);
  CHECK(b.degree == a.degree * 5);
  CHECK(b.separable_degree == a.separable_degree);
}

TEST_CASE("legendre over F_5: trace spectrum at k = 1") {
  Family fam = legendre_family(5);
  ScanLayer layer = scan_layer(fam, 1);
  CHECK(pi_k_t_doubleprime(layer, -2) == 2);  // lambda in {2, 4}
  CHECK(pi_k_t_doubleprime(layer, 2) == 1);   // lambda = 3
  i64 total = 0;
  for (i64 t = -4; t <= 4; ++t) total += pi_k_t_doubleprime(layer, t);
  CHECK(total == 3);
  CHECK(total == good_fiber_count(layer));
  // degree-1 closed points are the rational ones
  for (i64 t = -4; t <= 4; ++t)
    CHECK(pi_k_t_prime(layer, t) == pi_k_t_doubleprime(layer, t));
}

TEST_CASE("trace bound: pi(k,t)'' <= deg(j) N(t) for legendre over F_5, k <= 3") {
  Family fam = legendre_family(5);
  for (int k = 1; k <= 3; ++k) {
    ScanLayer layer = scan_layer(fam, k);
    u64 qk = checked_pow_u64(5, k);
    for (i64 t = -static_cast<i64>(2 * std::sqrt(double(qk))) - 1;
         i128(t) * t <= i128(4) * qk; ++t) {
      CHECK(pi_k_t_doubleprime(layer, t) <= 6 * schoof_N(t, 5, 1, k));
      CHECK(pi_k_t_prime(layer, t) <= pi_k_t_doubleprime(layer, t));
    }
  }
}

TEST_CASE("orbit partition: sum of d * (degree-d good points) = good fibers") {
  Family fam = legendre_family(7);
  for (int k = 1; k <= 3; ++k) {
    ScanLayer layer = scan_layer(fam, k);
    std::map<int, i64> orbit_count;
    for (const auto& o : layer.orbits)
      if (o.good) ++orbit_count[o.degree];
    i64 total = 0;
    for (auto& [d, n] : orbit_count) {
      CHECK(k % d == 0);
      total += static_cast<i64>(d) * n;
    }
    CHECK(total == good_fiber_count(layer));
  }
}

TEST_CASE("two pipelines agree: recurrence-extended vs direct recount") {
  Family fam = legendre_family(5);
  Family custom = parse_family("p = 5\na4 = l\na6 = 1\n");
  for (const Family& f : {fam, custom}) {
    for (int k = 1; k <= 3; ++k) {
      ScanLayer layer = scan_layer(f, k);
      u64 qk = checked_pow_u64(5, k);
      for (i64 t = -static_cast<i64>(2 * std::sqrt(double(qk))) - 1;
           i128(t) * t <= i128(4) * qk; ++t)
        REQUIRE(pi_k_t_doubleprime(layer, t) ==
                pi_k_t_doubleprime_direct(f, k, t));
    }
  }
}

TEST_CASE("scan layers are deterministic and job-count independent") {
  Family fam = legendre_family(7);
  ScanLayer a = scan_layer(fam, 2, 1);
  ScanLayer b = scan_layer(fam, 2, 4);
  REQUIRE(a.orbits.size() == b.orbits.size());
  for (size_t i = 0; i < a.orbits.size(); ++i) {
    CHECK(a.orbits[i].lambda_min == b.orbits[i].lambda_min);
    CHECK(a.orbits[i].degree == b.orbits[i].degree);
    CHECK(a.orbits[i].good == b.orbits[i].good);
    CHECK(a.orbits[i].t_res == b.orbits[i].t_res);
    CHECK(a.orbits[i].t_ext == b.orbits[i].t_ext);
  }
}

TEST_CASE("angle parsing: symbolic tokens and numeric fallback") {
  AngleSpec a = AngleSpec::parse("pi/3");
  CHECK(a.exact);
  CHECK(a.num == 1);
  CHECK(a.den == 2);
  CHECK(a.surd == 1);
  AngleSpec b = AngleSpec::parse("1.0471975512");
  CHECK(!b.exact);
  CHECK(std::abs(static_cast<double>(b.radians) - 1.0471975512) < 1e-12);
  CHECK_THROWS_AS(AngleSpec::parse("2pi"), std::invalid_argument);
  CHECK_THROWS_AS(AngleSpec::parse("4.0"), std::invalid_argument);
  CHECK_THROWS_AS(AngleSpec::parse("-0.5"), std::invalid_argument);
}

TEST_CASE("exact angle-interval membership") {
  // over a field of size 25, 2 sqrt(q) = 10; cos pi/3 = 1/2 puts the
  // boundary exactly at t = 5
  AngleSpec zero = AngleSpec::parse("0");
  AngleSpec third = AngleSpec::parse("pi/3");
  AngleSpec half = AngleSpec::parse("pi/2");
  AngleSpec pi = AngleSpec::parse("pi");
  CHECK(trace_in_angle_range(5, 25, zero, third));    // theta = pi/3 boundary
  CHECK(trace_in_angle_range(5, 25, third, half));    // counted on both sides
  CHECK(trace_in_angle_range(6, 25, zero, third));
  CHECK(!trace_in_angle_range(4, 25, zero, third));
  CHECK(!trace_in_angle_range(6, 25, third, half));
  // [pi/2, pi/2] selects exactly t = 0
  CHECK(trace_in_angle_range(0, 25, half, half));
  CHECK(!trace_in_angle_range(1, 25, half, half));
  CHECK(!trace_in_angle_range(-1, 25, half, half));
  // the full interval holds everything in the Hasse range
  for (i64 t = -10; t <= 10; ++t) CHECK(trace_in_angle_range(t, 25, zero, pi));
  // numeric fallback agrees with the exact path away from boundaries
  AngleSpec num_third = AngleSpec::from_radians(1.0471975511965977L);
  for (i64 t = -10; t <= 10; ++t) {
    if (t == 5) continue;  // the boundary trace is what the guard band is for
    CHECK(trace_in_angle_range(t, 25, zero, num_third) ==
          trace_in_angle_range(t, 25, zero, third));
  }
}

TEST_CASE("pi_B_t: monotone in B, bounded, and B = 1 reduces to pi(1,t)'") {
  Family fam = legendre_family(5);
  std::vector<ScanLayer> layers;
  for (int k = 1; k <= 3; ++k) layers.push_back(scan_layer(fam, k));
  std::vector<ScanLayer> first(layers.begin(), layers.begin() + 1);
  std::vector<ScanLayer> two(layers.begin(), layers.begin() + 2);

  for (i64 t = -4; t <= 4; ++t) {
    BoundedCount b1 = pi_B_t(fam, first, t);
    CHECK(b1.count == pi_k_t_prime(layers[0], t));
    BoundedCount b2 = pi_B_t(fam, two, t);
    BoundedCount b3 = pi_B_t(fam, layers, t);
    CHECK(b2.count >= b1.count);
    CHECK(b3.count >= b2.count);
    CHECK(b1.count <= b1.bound);
    CHECK(b2.count <= b2.bound);
    CHECK(b3.count <= b3.bound);
  }
}

TEST_CASE("pi_B_angle: full interval, complementary split, bounds") {
  Family fam = legendre_family(5);
  std::vector<ScanLayer> layers;
  for (int k = 1; k <= 2; ++k) layers.push_back(scan_layer(fam, k));
  AngleSpec zero = AngleSpec::parse("0");
  AngleSpec half = AngleSpec::parse("pi/2");
  AngleSpec pi = AngleSpec::parse("pi");

  BoundedCount full = pi_B_angle(fam, layers, zero, pi);
  i64 good_closed = 0;
  for (const auto& layer : layers)
    for (const auto& o : layer.orbits)
      if (o.good && o.degree == layer.k) ++good_closed;
  CHECK(full.count == good_closed);
  CHECK(full.count <= full.bound);

  BoundedCount lowhalf = pi_B_angle(fam, layers, zero, half);
  BoundedCount highhalf = pi_B_angle(fam, layers, half, pi);
  i64 zero_traces = 0;
  for (const auto& layer : layers)
    for (const auto& o : layer.orbits)
      if (o.good && o.degree == layer.k && o.t_res == 0) ++zero_traces;
  CHECK(lowhalf.count + highhalf.count == full.count + zero_traces);
  CHECK(lowhalf.count <= lowhalf.bound);
  CHECK(highhalf.count <= highhalf.bound);

  CHECK_THROWS_AS(pi_B_angle(fam, layers, pi, zero), std::invalid_argument);
}

TEST_CASE("shared boundaries are double counted exactly") {
  // legendre over F_5 at k = 2 has supersingular fibers with t = 5 or -5
  // sitting exactly on the pi/3 (resp. 2pi/3) boundary of a 25-element field
  Family fam = legendre_family(5);
  std::vector<ScanLayer> layers;
  for (int k = 1; k <= 2; ++k) layers.push_back(scan_layer(fam, k));
  AngleSpec zero = AngleSpec::parse("0");
  AngleSpec third = AngleSpec::parse("pi/3");
  AngleSpec half = AngleSpec::parse("pi/2");

  BoundedCount left = pi_B_angle(fam, layers, zero, third);
  BoundedCount right = pi_B_angle(fam, layers, third, half);
  BoundedCount whole = pi_B_angle(fam, layers, zero, half);
  i64 boundary = 0;
  for (const auto& layer : layers) {
    u64 qk = checked_pow_u64(5, layer.k);
    for (const auto& o : layer.orbits)
      if (o.good && o.degree == layer.k &&
          trace_in_angle_range(o.t_res, qk, third, third))
        ++boundary;
  }
  CHECK(left.count + right.count == whole.count + boundary);
}

TEST_CASE("sato-tate histogram: mass, bins, reference density") {
  Family fam = legendre_family(5);
  std::vector<ScanLayer> layers;
  for (int k = 1; k <= 4; ++k) layers.push_back(scan_layer(fam, k));

  Histogram h1 = satotate_histogram(layers, 1);
  BoundedCount full = pi_B_angle(fam, layers, AngleSpec::parse("0"),
                                 AngleSpec::parse("pi"));
  CHECK(h1.total == full.count);
  CHECK(h1.counts[0] == h1.total);

  Histogram h = satotate_histogram(layers, 16);
  i64 sum = 0;
  double ref_total = 0.0, freq_total = 0.0;
  for (int i = 0; i < 16; ++i) {
    sum += h.counts[static_cast<size_t>(i)];
    ref_total += h.reference_mass[static_cast<size_t>(i)];
    freq_total += h.observed_freq[static_cast<size_t>(i)];
  }
  CHECK(sum == h.total);
  CHECK(std::abs(ref_total - 1.0) < 1e-9);
  CHECK(std::abs(freq_total - 1.0) < 1e-9);

  CHECK_THROWS_AS(satotate_histogram(layers, 0), std::invalid_argument);
}
