#pragma once

// Dense univariate polynomials over a prime field F_p, low degree first.
// Just enough arithmetic for one-parameter Weierstrass families: ring
// operations, gcd, evaluation (in F_p and in extensions), and p-th-root
// deflation for separability degrees.

#include <string>
#include <vector>

#include "frobscan/gf.hpp"

namespace frobscan {

class PolyFp {
 public:
  PolyFp() : p_(0) {}
  PolyFp(u64 p, std::vector<u64> coeffs);

  static PolyFp zero(u64 p) { return PolyFp(p, {}); }
  static PolyFp constant(u64 p, i64 value);
  static PolyFp x(u64 p) { return PolyFp(p, {0, 1}); }

  u64 p() const { return p_; }
  // degree, -1 for the zero polynomial
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<u64>& coeffs() const { return c_; }
  u64 coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(i)] : 0;
  }
  u64 leading() const { return c_.empty() ? 0 : c_.back(); }

  friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator-(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
  friend bool operator==(const PolyFp& a, const PolyFp& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  PolyFp scaled(i64 s) const;  // s * this
  PolyFp monic() const;

  // quotient and remainder by a nonzero divisor
  static std::pair<PolyFp, PolyFp> divrem(const PolyFp& a, const PolyFp& b);

  u64 eval(u64 x) const;                      // in F_p
  Elt eval(const Field& F, const Elt& x) const;  // in an extension of F_p

  // true when every exponent with a nonzero coefficient is divisible by p
  bool is_p_power_composite() const;
  // replace x^p by x; only valid when is_p_power_composite()
  PolyFp deflate_p() const;

  std::string to_string(const std::string& var = "l") const;

 private:
  void trim();
  u64 p_;
  std::vector<u64> c_;
};

PolyFp poly_gcd(const PolyFp& a, const PolyFp& b);  // monic gcd
PolyFp poly_pow(const PolyFp& a, int e);

// parses expressions like "3*l^2 + 4*l + 1", "-l^3 + 2", "7" over F_p
PolyFp parse_poly(const std::string& text, u64 p, char var = 'l');

}  // namespace frobscan
