#include "frobscan/classnum.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace frobscan {

bool is_valid_discriminant(i64 d) {
  if (d >= 0) return false;
  i64 r = d % 4;
  if (r < 0) r += 4;
  return r == 0 || r == 1;
}

void require_valid_discriminant(i64 d) {
  if (d >= 0)
    throw std::invalid_argument("discriminant must be negative, got " +
                                std::to_string(d));
  if (!is_valid_discriminant(d))
    throw std::invalid_argument("discriminant " + std::to_string(d) +
                                " is not 0 or 1 mod 4");
}

std::vector<QuadForm> reduced_forms(i64 d, bool primitive_only) {
  require_valid_discriminant(d);
  std::vector<QuadForm> out;
  // |b| <= a <= c forces 3a^2 <= -d
  for (i64 a = 1; 3 * a * a <= -d; ++a) {
    for (i64 b = -a; b <= a; ++b) {
      i64 num = b * b - d;
      if (num % (4 * a)) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if ((b == -a || a == c) && b < 0) continue;
      if (primitive_only &&
          std::gcd(std::gcd(a, std::llabs(b)), c) != 1)
        continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

i64 class_number_h(i64 d) {
  return static_cast<i64>(reduced_forms(d, true).size());
}

i64 kronecker_H(i64 d) {
  require_valid_discriminant(d);
  i64 total = 0;
  for (i64 f = 1; f * f <= -d; ++f) {
    if ((-d) % (f * f)) continue;
    i64 dd = d / (f * f);
    if (!is_valid_discriminant(dd)) continue;
    total += class_number_h(dd);
  }
  return total;
}

namespace {

enum class SchoofCase { kOrdinary, kSupersingularH4p, kFullTrace, kHalfTrace,
                        kZeroSquare, kOtherwise };

SchoofCase classify(i64 t, u64 p, int e, int k) {
  if (e < 1 || k < 1)
    throw std::invalid_argument("schoof_N: exponents must be >= 1");
  if (!is_prime_u64(p) || p <= 3)
    throw std::invalid_argument("schoof_N: p must be a prime > 3");
  int m = e * k;
  u64 Q = checked_pow_u64(p, m);
  i128 tt = i128(t) * t;
  bool square = m % 2 == 0;
  if (tt < i128(4) * Q && t % static_cast<i64>(p) != 0)
    return SchoofCase::kOrdinary;
  if (t == 0 && !square) return SchoofCase::kSupersingularH4p;
  if (tt == i128(4) * Q && square) return SchoofCase::kFullTrace;
  if (tt == i128(Q) && square) return SchoofCase::kHalfTrace;
  if (t == 0 && square) return SchoofCase::kZeroSquare;
  return SchoofCase::kOtherwise;
}

}  // namespace

i64 schoof_N(i64 t, u64 p, int e, int k) {
  u64 Q = checked_pow_u64(p, e * k);
  i64 ip = static_cast<i64>(p);
  switch (classify(t, p, e, k)) {
    case SchoofCase::kOrdinary: {
      if (Q > static_cast<u64>(std::numeric_limits<i64>::max() / 4))
        throw std::overflow_error("schoof_N: q^k too large for H(t^2-4q^k)");
      return kronecker_H(t * t - 4 * static_cast<i64>(Q));
    }
    case SchoofCase::kSupersingularH4p:
      return kronecker_H(-4 * ip);
    case SchoofCase::kFullTrace: {
      i64 v = ip + 6 - 4 * legendre_symbol(-3, p) - 3 * legendre_symbol(-4, p);
      if (v % 12)
        throw std::logic_error("schoof_N: (p+6-4(-3/p)-3(-4/p)) not divisible by 12");
      return v / 12;
    }
    case SchoofCase::kHalfTrace:
      return 1 - legendre_symbol(-3, p);
    case SchoofCase::kZeroSquare:
      return 1 - legendre_symbol(-4, p);
    case SchoofCase::kOtherwise:
      return 0;
  }
  return 0;
}

std::string schoof_case_label(i64 t, u64 p, int e, int k) {
  switch (classify(t, p, e, k)) {
    case SchoofCase::kOrdinary: return "H(t^2-4q^k)";
    case SchoofCase::kSupersingularH4p: return "H(-4p)";
    case SchoofCase::kFullTrace: return "t^2=4q^k square";
    case SchoofCase::kHalfTrace: return "t^2=q^k square";
    case SchoofCase::kZeroSquare: return "t=0 square";
    case SchoofCase::kOtherwise: return "otherwise";
  }
  return "otherwise";
}

}  // namespace frobscan
