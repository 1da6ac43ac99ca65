#pragma once

// Exhaustive censuses of F_q-isomorphism classes of elliptic curves: one
// record per twist orbit of nonsingular (a4, a6), with empirical trace
// counts N(t) and weighted level-structure tallies for Igusa(p^n), full
// level N, and Gamma_1(l) structures.

#include <string>
#include <vector>

#include "frobscan/ellcurve.hpp"

namespace frobscan {

struct ClassRecord {
  Curve curve;       // lexicographically least (a4, a6) in its twist orbit
  i64 trace = 0;
  int aut = 0;       // #Aut over the base field; orbit_size * aut = q - 1
  i64 orbit_size = 0;
};

// One record per twist orbit, ordered by canonical (a4, a6) codes.
// Requires q <= 2^14.  With jobs > 1 the (a4, a6) grid is partitioned
// across threads; the result is identical to the single-threaded one.
std::vector<ClassRecord> full_census(const FieldPtr& F, int jobs = 1);

i64 empirical_N(const std::vector<ClassRecord>& census, i64 t);
i64 empirical_N(const FieldPtr& F, i64 t);

// ---------------------------------------------------------------------------
// level structures
// ---------------------------------------------------------------------------

struct LevelStructure {
  enum class Kind { kIgusa, kGammaFull, kGamma1 };
  Kind kind;
  u64 p = 0;   // Igusa: field characteristic
  int n = 0;   // Igusa: level p^n
  i64 N = 0;   // GammaFull: level N > 2, p does not divide N
  i64 ell = 0; // Gamma1: prime level l > 4, l not in {2, 3, p}

  static LevelStructure igusa(u64 p, int n);
  static LevelStructure gamma_full(i64 N);
  static LevelStructure gamma1(i64 ell);

  std::string describe() const;
};

struct Eligibility {
  bool ok = false;
  std::string reason;  // names the failed congruence when not ok
};

// Structure-specific congruences plus t^2 <= 4 q^k:
//   Igusa(p^n):  t = q + 1 (mod p^n), field characteristic p
//   Gamma(N):    t = q + 1 (mod N^2) and q = 1 (mod N), p does not divide N
//   Gamma_1(l):  t = q + 1 (mod l), l != p
// where q denotes the cardinality of F.
Eligibility eligibility(const LevelStructure& L, const FieldPtr& F, i64 t);

// Weighted count of level structures on curves of trace t, counted in the
// unweighted class-number convention: each class contributes
// (number of structures)/2, the quotient by {+-1}.  Per kind the structure
// count is
//   Igusa(p^n):  rational points of exact order p^n on E^(p^n)
//                (0 for supersingular classes)
//   Gamma_1(l):  l^2 - 1 when E(F) has a point of exact order l, else 0
//   Gamma(N):    N phi(N) psi(N) = #SL_2(Z/N) when the full N-torsion is
//                rational (#{P : [N]P = O} = N^2), else 0
// An odd structure total signals a census bug and raises std::logic_error.
i64 level_census(const FieldPtr& F, const LevelStructure& L, i64 t,
                 const std::vector<ClassRecord>* cached_census = nullptr);

// The closed-form prediction the census is compared against:
//   Igusa:   (phi(p^n)/2) H(t^2 - 4q)
//   Gamma_1: ((l^2-1)/2)  H(t^2 - 4q)
//   Gamma:   (1/2) N phi(N) psi(N) H((t^2 - 4q)/N^2)
// Defined only for eligible t with t^2 < 4q (and, for Gamma, a valid
// reduced discriminant); throws std::domain_error otherwise.
i64 level_formula(const FieldPtr& F, const LevelStructure& L, i64 t);

// psi(N) = N prod_{l | N} (1 + 1/l)
i64 psi_multiplicative(i64 N);

// N phi(N) psi(N)
i64 sl2_group_order(i64 N);

}  // namespace frobscan
