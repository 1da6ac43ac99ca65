#pragma once

// One-parameter Weierstrass families y^2 = x^3 + a4(l) x + a6(l) over the
// affine line, coefficients in F_p[l]: fiber classification, j-map degrees,
// trace spectra over F_{p^k} and over closed points, angle-interval counts
// with exact boundary decisions, and Sato-Tate histograms.

#include <string>
#include <vector>

#include "frobscan/classnum.hpp"
#include "frobscan/ellcurve.hpp"
#include "frobscan/poly.hpp"

namespace frobscan {

struct Family {
  u64 p = 0;
  PolyFp a4, a6;
  std::string name;

  // throws when the generic fiber is singular or j(l) is constant
  Family(u64 p, PolyFp a4_in, PolyFp a6_in, std::string name = "");
};

// short Weierstrass model of y^2 = x(x-1)(x-l)
Family legendre_family(u64 p);

// Line-oriented "key = value" text: keys p, a4, a6 (polynomials in l),
// builtin (= legendre), name.  Blank lines and lines starting with '#' are
// skipped; unknown keys are errors.
Family parse_family(const std::string& text);

// j(l) = 6912 a4^3 / (4 a4^3 + 27 a6^2) as a reduced fraction, monic
// denominator
std::pair<PolyFp, PolyFp> j_fraction(const Family& fam);

struct JDegree {
  i64 degree = 0;
  i64 separable_degree = 0;
};

JDegree j_map_degree(const Family& fam);

// ---------------------------------------------------------------------------
// per-extension scans
// ---------------------------------------------------------------------------

// One Frobenius orbit of parameter values in F_{p^k}; a closed point of
// degree d of the affine line, with the fiber data computed over its
// residue field F_{p^d}.
struct OrbitRecord {
  u64 lambda_min = 0;   // least member code
  int degree = 0;       // orbit size d, divides k
  bool good = false;    // nonvanishing discriminant
  bool supersingular = false;
  i64 t_res = 0;   // fiber trace over F_{p^d}
  i64 t_ext = 0;   // trace after base change to F_{p^k}
};

struct ScanLayer {
  FieldPtr field;  // F_{p^k}
  int k = 0;
  std::vector<OrbitRecord> orbits;  // ascending lambda_min
};

// Exhaustively classifies every lambda in F_{p^k}.  Traces of conjugate
// parameters are computed independently over the residue field and must
// agree.  With jobs > 1 the per-orbit counting is spread across threads;
// output is identical to the single-threaded scan.
ScanLayer scan_layer(const Family& fam, int k, int jobs = 1);

struct FiberCounts {
  i64 good_ordinary = 0;
  i64 good_supersingular = 0;
  i64 bad = 0;
};

// partition of F_{p^k}; the three counts sum to p^k
FiberCounts classify_fibers(const ScanLayer& layer);

// #{lambda in F_{p^k} : good fiber, trace over F_{p^k} equals t}
i64 pi_k_t_doubleprime(const ScanLayer& layer, i64 t);

// #{closed points of degree exactly k with residue-field trace t}
i64 pi_k_t_prime(const ScanLayer& layer, i64 t);

i64 good_fiber_count(const ScanLayer& layer);

// Independent pipeline for cross-checks: recounts every good fiber
// directly over F_{p^k} without orbit grouping or the trace recurrence.
i64 pi_k_t_doubleprime_direct(const Family& fam, int k, i64 t);

// ---------------------------------------------------------------------------
// angle intervals
// ---------------------------------------------------------------------------

// An endpoint of an angle interval.  The tokens 0, pi/6, pi/4, pi/3, pi/2,
// 2pi/3, 3pi/4, 5pi/6, pi carry cos(angle) = num * sqrt(surd) / den exactly
// and boundary comparisons are decided in integer arithmetic; any other
// value falls back to long-double comparison with a 1e-9 relative guard
// band.
struct AngleSpec {
  bool exact = false;
  int num = 0, den = 1, surd = 1;
  long double radians = 0.0L;
  std::string token;

  static AngleSpec parse(const std::string& text);
  static AngleSpec from_radians(long double r);
};

// alpha <= theta <= beta for a fiber of trace t over a field of size qk,
// i.e. 2 sqrt(qk) cos(beta) <= t <= 2 sqrt(qk) cos(alpha)
bool trace_in_angle_range(i64 t, u64 qk, const AngleSpec& alpha,
                          const AngleSpec& beta);

// ---------------------------------------------------------------------------
// cumulative counts and bounds
// ---------------------------------------------------------------------------

struct BoundedCount {
  i64 count = 0;
  i64 bound = 0;
};

// #{closed points, degree <= B, residue trace t}, with the bound
// deg(j) * sum_{k <= B, t^2 <= 4 p^k} N(t).  layers must hold scan layers
// for k = 1..B.
BoundedCount pi_B_t(const Family& fam, const std::vector<ScanLayer>& layers,
                    i64 t);

// #{closed points, degree <= B, alpha <= theta <= beta}, with the bound
// deg(j) * sum_{k <= B} sum_{t in the angle window, t^2 <= 4 p^k} N(t)
BoundedCount pi_B_angle(const Family& fam,
                        const std::vector<ScanLayer>& layers,
                        const AngleSpec& alpha, const AngleSpec& beta);

struct Histogram {
  int nbins = 0;
  i64 total = 0;
  std::vector<i64> counts;            // right-open bins, last bin closed
  std::vector<double> observed_freq;  // counts / total (0 when total = 0)
  std::vector<double> reference_mass; // integral of (2/pi) sin^2 over the bin
};

Histogram satotate_histogram(const std::vector<ScanLayer>& layers, int nbins);

}  // namespace frobscan
