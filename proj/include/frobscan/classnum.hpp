#pragma once

// Binary quadratic forms, class numbers h and Kronecker class numbers H,
// and Schoof's six-case count N(t) of F_{q^k}-isomorphism classes of
// elliptic curves with trace t.

#include <string>
#include <vector>

#include "frobscan/gf.hpp"

namespace frobscan {

// positive definite integer form a x^2 + b xy + c y^2
struct QuadForm {
  i64 a = 0, b = 0, c = 0;

  i64 discriminant() const { return b * b - 4 * a * c; }
  friend bool operator==(const QuadForm& x, const QuadForm& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
  friend bool operator<(const QuadForm& x, const QuadForm& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};

// true iff d < 0 and d = 0 or 1 (mod 4)
bool is_valid_discriminant(i64 d);
void require_valid_discriminant(i64 d);

// One reduced representative per SL_2(Z) class: all (a, b, c) with
// |b| <= a <= c, b^2 - 4ac = d, and b >= 0 when |b| = a or a = c.
// With primitive_only, additionally gcd(a, b, c) = 1.
std::vector<QuadForm> reduced_forms(i64 d, bool primitive_only);

// h(d): number of primitive reduced forms
i64 class_number_h(i64 d);

// H(d) = sum over f with f^2 | d and d/f^2 = 0,1 (mod 4) of h(d / f^2).
// Equals the number of all (not necessarily primitive) reduced forms.
i64 kronecker_H(i64 d);

// Number of F_{q^k}-isomorphism classes of elliptic curves E with
// #E(F_{q^k}) = q^k + 1 - t, where q = p^e (Schoof's formula). The six
// cases are tried in order; exactly one applies:
//   H(t^2 - 4q^k)                       t^2 < 4q^k, p does not divide t
//   H(-4p)                              t = 0, q^k not a square
//   (p + 6 - 4(-3/p) - 3(-4/p)) / 12    t^2 = 4q^k, q^k a square
//   1 - (-3/p)                          t^2 = q^k, q^k a square
//   1 - (-4/p)                          t = 0, q^k a square
//   0                                   otherwise
i64 schoof_N(i64 t, u64 p, int e, int k);

// which of the six cases fired, as a short label for table output
std::string schoof_case_label(i64 t, u64 p, int e, int k);

}  // namespace frobscan
