#include "frobscan/poly.hpp"

#include <cctype>
#include <stdexcept>

namespace frobscan {

PolyFp::PolyFp(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw std::invalid_argument("PolyFp: characteristic must be >= 2");
  for (auto& v : c_) v %= p_;
  trim();
}

PolyFp PolyFp::constant(u64 p, i64 value) {
  i64 m = value % static_cast<i64>(p);
  if (m < 0) m += static_cast<i64>(p);
  return PolyFp(p, {static_cast<u64>(m)});
}

void PolyFp::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

namespace {
void require_same_p(const PolyFp& a, const PolyFp& b) {
  if (a.p() != b.p())
    throw std::invalid_argument("PolyFp: mixed characteristics");
}
}  // namespace

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
  require_same_p(a, b);
  u64 p = a.p();
  std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = (a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i))) % p;
  return PolyFp(p, std::move(c));
}

PolyFp operator-(const PolyFp& a, const PolyFp& b) {
  require_same_p(a, b);
  u64 p = a.p();
  std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = (a.coeff(static_cast<int>(i)) + p - b.coeff(static_cast<int>(i))) % p;
  return PolyFp(p, std::move(c));
}

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
  require_same_p(a, b);
  u64 p = a.p();
  if (a.is_zero() || b.is_zero()) return PolyFp::zero(p);
  std::vector<u64> c(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (!a.c_[i]) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = (c[i + j] + mulmod_u64(a.c_[i], b.c_[j], p)) % p;
  }
  return PolyFp(p, std::move(c));
}

PolyFp PolyFp::scaled(i64 s) const {
  i64 m = s % static_cast<i64>(p_);
  if (m < 0) m += static_cast<i64>(p_);
  std::vector<u64> c = c_;
  for (auto& v : c) v = mulmod_u64(v, static_cast<u64>(m), p_);
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::monic() const {
  if (is_zero()) return *this;
  u64 inv = powmod_u64(leading(), p_ - 2, p_);
  std::vector<u64> c = c_;
  for (auto& v : c) v = mulmod_u64(v, inv, p_);
  return PolyFp(p_, std::move(c));
}

std::pair<PolyFp, PolyFp> PolyFp::divrem(const PolyFp& a, const PolyFp& b) {
  require_same_p(a, b);
  if (b.is_zero()) throw std::domain_error("PolyFp: division by zero");
  u64 p = a.p();
  if (a.degree() < b.degree()) return {PolyFp::zero(p), a};
  u64 lead_inv = powmod_u64(b.leading(), p - 2, p);
  std::vector<u64> rem = a.c_;
  std::vector<u64> quot(static_cast<size_t>(a.degree() - b.degree() + 1), 0);
  for (int i = a.degree(); i >= b.degree(); --i) {
    u64 top = rem[static_cast<size_t>(i)];
    if (!top) continue;
    u64 qc = mulmod_u64(top, lead_inv, p);
    quot[static_cast<size_t>(i - b.degree())] = qc;
    for (int j = 0; j <= b.degree(); ++j) {
      size_t idx = static_cast<size_t>(i - b.degree() + j);
      u64 sub = mulmod_u64(qc, b.coeff(j), p);
      rem[idx] = (rem[idx] + p - sub) % p;
    }
  }
  return {PolyFp(p, std::move(quot)), PolyFp(p, std::move(rem))};
}

u64 PolyFp::eval(u64 x) const {
  u64 r = 0;
  x %= p_;
  for (size_t i = c_.size(); i-- > 0;)
    r = (mulmod_u64(r, x, p_) + c_[i]) % p_;
  return r;
}

Elt PolyFp::eval(const Field& F, const Elt& x) const {
  if (F.p() != p_)
    throw std::invalid_argument("PolyFp::eval: field characteristic differs");
  Elt r = F.zero();
  for (size_t i = c_.size(); i-- > 0;)
    r = r * x + F.from_int(static_cast<i64>(c_[i]));
  return r;
}

bool PolyFp::is_p_power_composite() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0 && i % p_ != 0) return false;
  return true;
}

PolyFp PolyFp::deflate_p() const {
  if (!is_p_power_composite())
    throw std::logic_error("deflate_p: polynomial is not in F_p[x^p]");
  std::vector<u64> c;
  for (size_t i = 0; i < c_.size(); i += p_) c.push_back(c_[i]);
  return PolyFp(p_, std::move(c));
}

std::string PolyFp::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    u64 v = coeff(i);
    if (!v) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || v != 1) out += std::to_string(v);
    if (i > 0) {
      if (v != 1) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

PolyFp poly_gcd(const PolyFp& a, const PolyFp& b) {
  PolyFp x = a, y = b;
  while (!y.is_zero()) {
    PolyFp r = PolyFp::divrem(x, y).second;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

PolyFp poly_pow(const PolyFp& a, int e) {
  if (e < 0) throw std::invalid_argument("poly_pow: negative exponent");
  PolyFp r = PolyFp::constant(a.p(), 1);
  PolyFp base = a;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// parser: sums of terms  [+-] [coeff] [* ] [var [^exp]]
// ---------------------------------------------------------------------------

PolyFp parse_poly(const std::string& text, u64 p, char var) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_uint = [&]() -> i64 {
    size_t start = i;
    i64 v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > (i64(1) << 60)) throw std::invalid_argument("polynomial literal too large");
      ++i;
    }
    if (i == start) throw std::invalid_argument("expected a number in polynomial at position " +
                                                std::to_string(start));
    return v;
  };

  PolyFp result = PolyFp::zero(p);
  skip_ws();
  if (i == text.size()) throw std::invalid_argument("empty polynomial");
  bool first = true;
  while (true) {
    skip_ws();
    if (i == text.size()) {
      if (first) throw std::invalid_argument("empty polynomial");
      break;
    }
    i64 sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in polynomial at position " +
                                  std::to_string(i));
    }
    first = false;
    i64 coeff = 1;
    bool saw_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = parse_uint();
      saw_coeff = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    int exp = 0;
    if (i < text.size() && text[i] == var) {
      ++i;
      exp = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        exp = static_cast<int>(parse_uint());
        if (exp > 4096) throw std::invalid_argument("polynomial exponent too large");
      }
    } else if (!saw_coeff) {
      throw std::invalid_argument("unexpected character '" + std::string(1, text[i]) +
                                  "' in polynomial at position " + std::to_string(i));
    }
    std::vector<u64> mono(static_cast<size_t>(exp) + 1, 0);
    i64 m = (sign * coeff) % static_cast<i64>(p);
    if (m < 0) m += static_cast<i64>(p);
    mono[static_cast<size_t>(exp)] = static_cast<u64>(m);
    result = result + PolyFp(p, std::move(mono));
  }
  return result;
}

}  // namespace frobscan
