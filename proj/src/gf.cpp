#include "frobscan/gf.hpp"

#include <algorithm>
#include <cassert>

namespace frobscan {

// ---------------------------------------------------------------------------
// integer utilities
// ---------------------------------------------------------------------------

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>(u128(a) * b % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // this witness set is deterministic for all n < 2^64
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 d = 2; d * d <= n; d += (d == 2) ? 1 : 2) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) n /= d, ++e;
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto& [p, e] : factorize_u64(n)) r = r / p * (p - 1);
  return r;
}

u64 checked_pow_u64(u64 base, int exp) {
  constexpr u64 kLimit = (u64(1) << 63) - 1;
  u64 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kLimit / base)
      throw std::overflow_error("checked_pow_u64: result exceeds 2^63-1");
    r *= base;
  }
  return r;
}

int legendre_symbol(i64 a, u64 p) {
  if (p == 2 || !is_prime_u64(p))
    throw std::invalid_argument("legendre_symbol: p must be an odd prime");
  i64 m = a % static_cast<i64>(p);
  if (m < 0) m += static_cast<i64>(p);
  if (m == 0) return 0;
  u64 r = powmod_u64(static_cast<u64>(m), (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// polynomial helpers over F_p used for modulus selection (dense, low first)
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<u64>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b mod (f, p); f monic of degree k, a and b of degree < k
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  int k = static_cast<int>(f.size()) - 1;
  std::vector<u64> prod(2 * k - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  for (int i = 2 * k - 2; i >= k; --i) {
    u64 t = prod[i];
    if (!t) continue;
    prod[i] = 0;
    for (int j = 0; j < k; ++j) {
      if (!f[j]) continue;
      u64 sub = (f[j] * t) % p;
      prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
    }
  }
  prod.resize(k);
  poly_trim(prod);
  return prod;
}

Poly poly_powmod_x(u64 e_base, int e_exp, const Poly& f, u64 p) {
  // computes x^(e_base^e_exp) mod f by repeated exponentiation
  int k = static_cast<int>(f.size()) - 1;
  Poly x{0, 1};
  if (k == 1) x = Poly{f[0] ? p - f[0] : 0};  // x == -f0 mod f
  Poly acc = x;
  for (int step = 0; step < e_exp; ++step) {
    // acc <- acc^e_base
    Poly r{1};
    Poly base = acc;
    u64 e = e_base;
    while (e) {
      if (e & 1) r = poly_mulmod(r, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1;
    }
    acc = r;
  }
  return acc;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // a mod b, with b made monic on the fly
    u64 lead = b.back();
    u64 lead_inv = powmod_u64(lead, p - 2, p);
    Poly bm = b;
    for (auto& c : bm) c = (c * lead_inv) % p;
    Poly r = a;
    while (r.size() >= bm.size() && !r.empty()) {
      u64 c = r.back();
      if (c) {
        size_t off = r.size() - bm.size();
        for (size_t j = 0; j < bm.size(); ++j)
          r[off + j] = (r[off + j] + p - (bm[j] * c) % p) % p;
      }
      poly_trim(r);
      if (r.size() < bm.size()) break;
    }
    a = b;
    b = r;
    poly_trim(b);
  }
  return a;
}

// Rabin's irreducibility test for a monic polynomial of degree k over F_p:
// x^(p^k) == x (mod f) and gcd(x^(p^(k/r)) - x, f) = 1 for each prime r | k.
bool poly_irreducible(const Poly& f, u64 p) {
  int k = static_cast<int>(f.size()) - 1;
  Poly xq = poly_powmod_x(p, k, f, p);
  // xq must equal x
  Poly x{0, 1};
  poly_trim(x);
  if (xq != x) return false;
  for (auto& [r, e] : factorize_u64(static_cast<u64>(k))) {
    Poly xd = poly_powmod_x(p, k / static_cast<int>(r), f, p);
    // xd - x
    Poly diff = xd;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(diff);
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

FieldPtr Field::make(u64 p, int k) {
  if (!is_prime_u64(p)) throw std::invalid_argument("make_field: p is not prime");
  if (p <= 3) throw std::invalid_argument("make_field: characteristic must exceed 3");
  if (k < 1) throw std::invalid_argument("make_field: extension degree must be >= 1");
  checked_pow_u64(p, k);  // rejects p^k >= 2^63

  std::vector<u64> modulus;
  if (k == 1) {
    modulus = {0, 1};  // convention: x - 0
  } else {
    // first irreducible in lexicographic order of (c_{k-1}, ..., c_0)
    std::vector<u64> c(static_cast<size_t>(k), 0);  // c[i] multiplies x^i
    bool found = false;
    while (!found) {
      Poly f(c.begin(), c.end());
      f.push_back(1);
      if (poly_irreducible(f, p)) {
        modulus = f;
        found = true;
        break;
      }
      // increment the tuple (c_{k-1}, ..., c_0), constant coefficient fastest
      int i = 0;
      while (i < k) {
        if (++c[static_cast<size_t>(i)] < p) break;
        c[static_cast<size_t>(i)] = 0;
        ++i;
      }
      if (i == k)
        throw std::logic_error("make_field: no irreducible polynomial found");
    }
  }
  auto f = FieldPtr(new Field(p, k, std::move(modulus)));
  return f;
}

Field::Field(u64 p, int k, std::vector<u64> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  q_ = 1;
  pow_p_.push_back(1);
  for (int i = 0; i < k; ++i) {
    q_ *= p;
    pow_p_.push_back(q_);
  }
  build_tables();
}

void Field::build_tables() {
  if (q_ > kChiTableLimit) return;
  chi_table_.assign(q_, -1);
  chi_table_[0] = 0;
  bool sqrt_too = q_ <= kSqrtTableLimit;
  if (sqrt_too) sqrt_table_.assign(q_, ~u64(0));
  u64 ca[kMaxDegree], sq[kMaxDegree];
  for (u64 y = 0; y < q_; ++y) {
    decode_raw(y, ca);
    mul_raw(ca, ca, sq);
    u64 s = encode_raw(sq);
    if (s != 0) chi_table_[s] = 1;
    if (sqrt_too && sqrt_table_[s] == ~u64(0)) sqrt_table_[s] = y;
  }
}

Elt Field::from_code(u64 code) const {
  if (code >= q_) throw std::invalid_argument("from_code: out of range");
  return {this, code};
}

Elt Field::from_int(i64 n) const {
  i64 m = n % static_cast<i64>(p_);
  if (m < 0) m += static_cast<i64>(p_);
  // constant coefficient is the most significant digit
  return {this, static_cast<u64>(m) * pow_p_[static_cast<size_t>(k_ - 1)]};
}

std::vector<u64> Field::coeffs(const Elt& a) const {
  u64 c[kMaxDegree];
  decode_raw(a.code, c);
  return std::vector<u64>(c, c + k_);
}

void Field::decode_raw(u64 code, u64* c) const {
  // c[k-1] (top-degree coefficient) is the least significant digit
  for (int i = k_ - 1; i >= 0; --i) {
    c[i] = code % p_;
    code /= p_;
  }
}

u64 Field::encode_raw(const u64* c) const {
  u64 code = 0;
  for (int i = 0; i < k_; ++i) code = code * p_ + c[i];
  return code;
}

void Field::add_raw(const u64* a, const u64* b, u64* out) const {
  for (int i = 0; i < k_; ++i) {
    u64 s = a[i] + b[i];
    out[i] = s >= p_ ? s - p_ : s;
  }
}

void Field::mul_raw(const u64* a, const u64* b, u64* out) const {
  if (k_ == 1) {
    out[0] = mulmod_u64(a[0], b[0], p_);
    return;
  }
  // k >= 2 implies p < 2^32, so u128 accumulation never overflows
  u128 prod[2 * kMaxDegree];
  int n = 2 * k_ - 1;
  for (int i = 0; i < n; ++i) prod[i] = 0;
  for (int i = 0; i < k_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < k_; ++j) prod[i + j] += u128(a[i]) * b[j];
  }
  for (int i = n - 1; i >= k_; --i) {
    u64 t = static_cast<u64>(prod[i] % p_);
    if (!t) continue;
    u128 mult = u128(t);
    for (int j = 0; j < k_; ++j) {
      if (!modulus_[j]) continue;
      u128 sub = mult * modulus_[j] % p_;
      prod[i - k_ + j] += p_ - static_cast<u64>(sub);
    }
  }
  for (int i = 0; i < k_; ++i) out[i] = static_cast<u64>(prod[i] % p_);
}

namespace {
inline void require_same(const Elt& a, const Elt& b) {
  if (a.f != b.f)
    throw std::invalid_argument("field elements from different descriptors");
}
}  // namespace

Elt Field::add(const Elt& a, const Elt& b) const {
  require_same(a, b);
  if (k_ == 1) {
    u64 s = a.code + b.code;
    return {this, s >= p_ ? s - p_ : s};
  }
  u64 ca[kMaxDegree], cb[kMaxDegree], co[kMaxDegree];
  decode_raw(a.code, ca);
  decode_raw(b.code, cb);
  add_raw(ca, cb, co);
  return {this, encode_raw(co)};
}

Elt Field::neg(const Elt& a) const {
  if (k_ == 1) return {this, a.code ? p_ - a.code : 0};
  u64 ca[kMaxDegree];
  decode_raw(a.code, ca);
  for (int i = 0; i < k_; ++i) ca[i] = ca[i] ? p_ - ca[i] : 0;
  return {this, encode_raw(ca)};
}

Elt Field::sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }

Elt Field::mul(const Elt& a, const Elt& b) const {
  require_same(a, b);
  if (k_ == 1) return {this, mulmod_u64(a.code, b.code, p_)};
  u64 ca[kMaxDegree], cb[kMaxDegree], co[kMaxDegree];
  decode_raw(a.code, ca);
  decode_raw(b.code, cb);
  mul_raw(ca, cb, co);
  return {this, encode_raw(co)};
}

Elt Field::pow(const Elt& a, u64 e) const {
  Elt r = one();
  Elt base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Elt Field::inv(const Elt& a) const {
  if (a.code == 0)
    throw std::domain_error("inverse of zero in F_" + std::to_string(p_) +
                            (k_ > 1 ? "^" + std::to_string(k_) : ""));
  return pow(a, q_ - 2);
}

Elt Field::frobenius(const Elt& a, int i) const {
  if (i < 0) throw std::invalid_argument("frobenius: negative iterate");
  int r = i % k_;
  if (r == 0) return a;
  return pow(a, pow_p_[static_cast<size_t>(r)]);
}

bool Field::is_square(const Elt& a) const {
  if (a.code == 0) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

int Field::chi(const Elt& a) const {
  if (!chi_table_.empty()) return chi_table_[a.code];
  if (a.code == 0) return 0;
  return is_square(a) ? 1 : -1;
}

std::optional<Elt> Field::sqrt(const Elt& a) const {
  if (sqrt_table_.empty())
    throw std::runtime_error("sqrt: field too large for the square-root table");
  u64 r = sqrt_table_[a.code];
  if (r == ~u64(0)) return std::nullopt;
  return Elt{this, r};
}

// ---------------------------------------------------------------------------
// element operators
// ---------------------------------------------------------------------------

Elt operator+(const Elt& a, const Elt& b) { return a.f->add(a, b); }
Elt operator-(const Elt& a, const Elt& b) { return a.f->sub(a, b); }
Elt operator*(const Elt& a, const Elt& b) { return a.f->mul(a, b); }
Elt operator-(const Elt& a) { return a.f->neg(a); }

}  // namespace frobscan
