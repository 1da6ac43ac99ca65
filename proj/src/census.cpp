#include "frobscan/census.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <thread>

#include "frobscan/classnum.hpp"

namespace frobscan {

namespace {

struct TwistTables {
  std::vector<u64> u4, u6;  // codes of u^4 and u^6 for u = 1 .. q-1
};

TwistTables make_twist_tables(const Field& F) {
  TwistTables t;
  u64 q = F.size();
  t.u4.reserve(q - 1);
  t.u6.reserve(q - 1);
  for (u64 u = 1; u < q; ++u) {
    Elt uu = F.from_code(u);
    Elt u2 = uu * uu;
    Elt u4 = u2 * u2;
    t.u4.push_back(u4.code);
    t.u6.push_back((u4 * u2).code);
  }
  return t;
}

// Scans rows a4 = [row_begin, row_end) and appends one record per canonical
// pair found.  A pair is canonical when no twist (u^4 a4, u^6 a6) precedes
// it lexicographically; the stabilizer size gives aut and the orbit size.
void census_rows(const FieldPtr& F, const TwistTables& tw, u64 row_begin,
                 u64 row_end, std::vector<ClassRecord>* out) {
  const Field& f = *F;
  u64 q = f.size();
  Elt four = f.from_int(4), twentyseven = f.from_int(27);
  for (u64 A = row_begin; A < row_end; ++A) {
    Elt a4 = f.from_code(A);
    Elt cube_term = four * a4 * a4 * a4;
    // twists of a4 by every u, reused across the row
    std::vector<u64> a4_tw(q - 1);
    for (u64 i = 0; i < q - 1; ++i)
      a4_tw[i] = f.mul(f.from_code(tw.u4[i]), a4).code;
    for (u64 B = 0; B < q; ++B) {
      Elt a6 = f.from_code(B);
      if (cube_term + twentyseven * a6 * a6 == f.zero()) continue;  // singular
      bool canonical = true;
      int stab = 0;
      for (u64 i = 0; i < q - 1; ++i) {
        u64 ta = a4_tw[i];
        if (ta > A) continue;
        u64 tb = f.mul(f.from_code(tw.u6[i]), a6).code;
        if (ta < A || tb < B) {
          canonical = false;
          break;
        }
        if (tb == B) ++stab;  // ta == A here
      }
      if (!canonical) continue;
      Curve e(F, a4, a6);
      i64 t = trace(e).t;
      if ((q - 1) % static_cast<u64>(stab) != 0)
        throw std::logic_error("census: stabilizer does not divide q-1");
      i64 orbit = static_cast<i64>((q - 1) / static_cast<u64>(stab));
      out->push_back({e, t, stab, orbit});
    }
  }
}

}  // namespace

std::vector<ClassRecord> full_census(const FieldPtr& F, int jobs) {
  u64 q = F->size();
  if (q > (u64(1) << 14))
    throw std::invalid_argument("full_census: field larger than 2^14");
  if (jobs < 1) jobs = 1;
  TwistTables tw = make_twist_tables(*F);
  if (jobs == 1 || q < 64) {
    std::vector<ClassRecord> out;
    census_rows(F, tw, 0, q, &out);
    return out;
  }
  int workers = std::min<int>(jobs, static_cast<int>(q));
  std::vector<std::vector<ClassRecord>> parts(workers);
  std::vector<std::thread> threads;
  u64 chunk = (q + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    u64 lo = chunk * static_cast<u64>(w);
    u64 hi = std::min<u64>(q, lo + chunk);
    if (lo >= hi) continue;
    threads.emplace_back(census_rows, F, std::cref(tw), lo, hi, &parts[w]);
  }
  for (auto& th : threads) th.join();
  std::vector<ClassRecord> out;
  for (auto& part : parts)
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

i64 empirical_N(const std::vector<ClassRecord>& census, i64 t) {
  i64 n = 0;
  for (const auto& rec : census)
    if (rec.trace == t) ++n;
  return n;
}

i64 empirical_N(const FieldPtr& F, i64 t) {
  return empirical_N(full_census(F), t);
}

// ---------------------------------------------------------------------------
// level structures
// ---------------------------------------------------------------------------

LevelStructure LevelStructure::igusa(u64 p, int n) {
  if (!is_prime_u64(p) || p <= 3)
    throw std::invalid_argument("igusa level: p must be a prime > 3");
  if (n < 1) throw std::invalid_argument("igusa level: n must be >= 1");
  LevelStructure L{Kind::kIgusa};
  L.p = p;
  L.n = n;
  return L;
}

LevelStructure LevelStructure::gamma_full(i64 N) {
  if (N <= 2) throw std::invalid_argument("gamma level: N must exceed 2");
  LevelStructure L{Kind::kGammaFull};
  L.N = N;
  return L;
}

LevelStructure LevelStructure::gamma1(i64 ell) {
  if (ell <= 4 || !is_prime_u64(static_cast<u64>(ell)) || ell == 2 || ell == 3)
    throw std::invalid_argument("gamma1 level: l must be a prime > 4");
  LevelStructure L{Kind::kGamma1};
  L.ell = ell;
  return L;
}

std::string LevelStructure::describe() const {
  switch (kind) {
    case Kind::kIgusa:
      return "igusa:" + std::to_string(n) + " (p=" + std::to_string(p) + ")";
    case Kind::kGammaFull:
      return "gamma:" + std::to_string(N);
    case Kind::kGamma1:
      return "gamma1:" + std::to_string(ell);
  }
  return "";
}

Eligibility eligibility(const LevelStructure& L, const FieldPtr& F, i64 t) {
  i64 Q = static_cast<i64>(F->size());
  if (i128(t) * t > i128(4) * Q)
    return {false, "t^2 > 4q^k"};
  auto congruent = [&](i64 mod) { return ((Q + 1 - t) % mod + mod) % mod == 0; };
  switch (L.kind) {
    case LevelStructure::Kind::kIgusa: {
      if (L.p != F->p())
        return {false, "level characteristic differs from the field's"};
      i64 pn = static_cast<i64>(checked_pow_u64(L.p, L.n));
      if (!congruent(pn))
        return {false, "t !== q^k+1 (mod " + std::to_string(pn) + ")"};
      return {true, "ok"};
    }
    case LevelStructure::Kind::kGammaFull: {
      if (L.N % static_cast<i64>(F->p()) == 0)
        return {false, "p divides N"};
      if ((Q - 1) % L.N != 0)
        return {false, "q^k !== 1 (mod " + std::to_string(L.N) + ")"};
      if (!congruent(L.N * L.N))
        return {false, "t !== q^k+1 (mod " + std::to_string(L.N * L.N) + ")"};
      return {true, "ok"};
    }
    case LevelStructure::Kind::kGamma1: {
      if (L.ell == static_cast<i64>(F->p()))
        return {false, "l equals the field characteristic"};
      if (!congruent(L.ell))
        return {false, "t !== q^k+1 (mod " + std::to_string(L.ell) + ")"};
      return {true, "ok"};
    }
  }
  return {false, "unknown level structure"};
}

namespace {

// coefficients raised to the p^n-th power: the conjugate curve E^(p^n)
Curve conjugate_curve(const Curve& e, int n) {
  const Field& F = e.F();
  int i = n % F.k();
  return Curve(e.field, F.frobenius(e.a4, i), F.frobenius(e.a6, i));
}

// number of structures of the given kind on one class representative
i64 structure_count(const Curve& e, i64 t, const LevelStructure& L) {
  const Field& F = e.F();
  switch (L.kind) {
    case LevelStructure::Kind::kIgusa: {
      if (t % static_cast<i64>(F.p()) == 0) return 0;  // supersingular
      i64 pn = static_cast<i64>(checked_pow_u64(L.p, L.n));
      Curve conj = conjugate_curve(e, L.n);
      i64 s = point_order_census(conj, pn).at(pn);
      i64 expected = static_cast<i64>(euler_phi(static_cast<u64>(pn)));
      if (s != 0 && s != expected)
        throw std::logic_error("igusa census: unexpected p^n-torsion count");
      return s;
    }
    case LevelStructure::Kind::kGamma1: {
      i64 rational = point_order_census(e, L.ell).at(L.ell);
      if (rational != 0 && rational != L.ell - 1 &&
          rational != L.ell * L.ell - 1)
        throw std::logic_error("gamma1 census: unexpected l-torsion count");
      return rational > 0 ? L.ell * L.ell - 1 : 0;
    }
    case LevelStructure::Kind::kGammaFull: {
      auto tally = point_order_census(e, L.N);
      i64 kernel = 0;
      for (auto& [d, cnt] : tally) kernel += cnt;
      if (kernel > L.N * L.N)
        throw std::logic_error("gamma census: N-torsion larger than N^2");
      return kernel == L.N * L.N ? sl2_group_order(L.N) : 0;
    }
  }
  return 0;
}

}  // namespace

i64 level_census(const FieldPtr& F, const LevelStructure& L, i64 t,
                 const std::vector<ClassRecord>* cached_census) {
  Eligibility e = eligibility(L, F, t);
  if (!e.ok) return 0;
  std::vector<ClassRecord> own;
  if (!cached_census) {
    own = full_census(F);
    cached_census = &own;
  }
  i64 total = 0;
  for (const auto& rec : *cached_census) {
    if (rec.trace != t) continue;
    total += structure_count(rec.curve, t, L);
  }
  if (total % 2 != 0)
    throw std::logic_error("level_census: odd structure total; mass is not "
                           "an integer in the unweighted convention");
  return total / 2;
}

i64 level_formula(const FieldPtr& F, const LevelStructure& L, i64 t) {
  Eligibility e = eligibility(L, F, t);
  if (!e.ok) throw std::domain_error("level_formula: ineligible t (" + e.reason + ")");
  i64 Q = static_cast<i64>(F->size());
  i64 disc = t * t - 4 * Q;
  if (disc >= 0)
    throw std::domain_error("level_formula: requires t^2 < 4q^k");
  switch (L.kind) {
    case LevelStructure::Kind::kIgusa: {
      i64 pn = static_cast<i64>(checked_pow_u64(L.p, L.n));
      i64 phi = static_cast<i64>(euler_phi(static_cast<u64>(pn)));
      return phi / 2 * kronecker_H(disc);
    }
    case LevelStructure::Kind::kGamma1:
      return (L.ell * L.ell - 1) / 2 * kronecker_H(disc);
    case LevelStructure::Kind::kGammaFull: {
      if (disc % (L.N * L.N) != 0)
        throw std::domain_error("level_formula: N^2 does not divide t^2-4q^k");
      i64 inner = disc / (L.N * L.N);
      if (!is_valid_discriminant(inner))
        throw std::domain_error("level_formula: (t^2-4q^k)/N^2 is not a "
                                "valid discriminant");
      return sl2_group_order(L.N) / 2 * kronecker_H(inner);
    }
  }
  throw std::logic_error("level_formula: unknown kind");
}

i64 psi_multiplicative(i64 N) {
  if (N < 1) throw std::invalid_argument("psi: N must be >= 1");
  i64 r = N;
  for (auto& [p, e] : factorize_u64(static_cast<u64>(N)))
    r = r / static_cast<i64>(p) * (static_cast<i64>(p) + 1);
  return r;
}

i64 sl2_group_order(i64 N) {
  return N * static_cast<i64>(euler_phi(static_cast<u64>(N))) *
         psi_multiplicative(N);
}

}  // namespace frobscan
