#pragma once

// Exact arithmetic in F_p and F_{p^k} for p > 3, with element enumeration,
// Frobenius, and quadratic-character tests.  Fields are immutable after
// construction and shareable across threads; elements are plain values.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobscan {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// integer utilities
// ---------------------------------------------------------------------------

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);

// deterministic Miller-Rabin, valid for all 64-bit inputs
bool is_prime_u64(u64 n);

// prime factorization by trial division; intended for the small integers
// that appear here (group orders, torsion levels, q-1)
std::vector<std::pair<u64, int>> factorize_u64(u64 n);

u64 euler_phi(u64 n);

// base^exp, throwing std::overflow_error if the result exceeds 2^63 - 1
u64 checked_pow_u64(u64 base, int exp);

// Legendre symbol (a/p) in {-1, 0, +1}; requires p an odd prime
int legendre_symbol(i64 a, u64 p);

// ---------------------------------------------------------------------------
// field descriptor and elements
// ---------------------------------------------------------------------------

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// An element of F_{p^k}, identified by the rank of its coefficient vector
// (c_0, ..., c_{k-1}), constant coefficient first, in lexicographic order.
// rank = c_0 p^{k-1} + c_1 p^{k-2} + ... + c_{k-1}.
struct Elt {
  const Field* f = nullptr;
  u64 code = 0;

  friend bool operator==(const Elt& a, const Elt& b) {
    return a.f == b.f && a.code == b.code;
  }
  friend bool operator!=(const Elt& a, const Elt& b) { return !(a == b); }
  friend bool operator<(const Elt& a, const Elt& b) { return a.code < b.code; }
};

Elt operator+(const Elt& a, const Elt& b);
Elt operator-(const Elt& a, const Elt& b);
Elt operator*(const Elt& a, const Elt& b);
Elt operator-(const Elt& a);

class Field : public std::enable_shared_from_this<Field> {
 public:
  // Constructs F_{p^k}.  Requires p prime > 3, k >= 1, p^k < 2^63.  The
  // modulus for k >= 2 is the first monic irreducible polynomial of degree k
  // in lexicographic order of the coefficient tuple
  // (c_{k-1}, ..., c_1, c_0) below the leading term, so the same (p, k)
  // always yields the same field.  For k = 1 the modulus is x.
  static FieldPtr make(u64 p, int k);

  u64 p() const { return p_; }
  int k() const { return k_; }
  u64 size() const { return q_; }  // p^k

  // monic modulus, coefficients low degree first, length k+1
  const std::vector<u64>& modulus() const { return modulus_; }

  Elt zero() const { return {this, 0}; }
  Elt one() const { return from_int(1); }
  Elt from_code(u64 code) const;
  Elt from_int(i64 n) const;  // image of n under Z -> F_p -> F_{p^k}
  std::vector<u64> coeffs(const Elt& a) const;

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt inv(const Elt& a) const;  // throws std::domain_error on zero
  Elt pow(const Elt& a, u64 e) const;

  // a^(p^i); frobenius(a, k) == a
  Elt frobenius(const Elt& a, int i) const;

  // Euler criterion a^((q-1)/2); is_square(0) = true
  bool is_square(const Elt& a) const;

  // quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
  // Backed by the square table when present, Euler's criterion otherwise.
  int chi(const Elt& a) const;

  // least square root in element order, if a is a square (table-backed;
  // requires size() <= kSqrtTableLimit)
  std::optional<Elt> sqrt(const Elt& a) const;

  bool has_chi_table() const { return !chi_table_.empty(); }
  bool has_sqrt_table() const { return !sqrt_table_.empty(); }

  // --- low-level interface for counting loops ---
  // Coefficient buffers are arrays of length k with entries in [0, p).
  static constexpr int kMaxDegree = 32;
  void decode_raw(u64 code, u64* c) const;
  u64 encode_raw(const u64* c) const;
  void add_raw(const u64* a, const u64* b, u64* out) const;
  void mul_raw(const u64* a, const u64* b, u64* out) const;
  int chi_code(u64 code) const { return chi_table_[code]; }

  // table size thresholds
  static constexpr u64 kChiTableLimit = u64(1) << 24;
  static constexpr u64 kSqrtTableLimit = u64(1) << 20;

 private:
  Field(u64 p, int k, std::vector<u64> modulus);
  void build_tables();

  u64 p_;
  int k_;
  u64 q_;
  std::vector<u64> modulus_;       // length k+1, monic
  std::vector<u64> pow_p_;         // p^0 .. p^k
  std::vector<signed char> chi_table_;  // built when q <= kChiTableLimit
  std::vector<u64> sqrt_table_;    // built when q <= kSqrtTableLimit
};

// Ordered stream of all field elements, code 0 .. q-1.
class ElementRange {
 public:
  explicit ElementRange(FieldPtr f) : f_(std::move(f)) {}

  class iterator {
   public:
    iterator(const Field* f, u64 code) : f_(f), code_(code) {}
    Elt operator*() const { return {f_, code_}; }
    iterator& operator++() { ++code_; return *this; }
    bool operator!=(const iterator& o) const { return code_ != o.code_; }

   private:
    const Field* f_;
    u64 code_;
  };

  iterator begin() const { return {f_.get(), 0}; }
  iterator end() const { return {f_.get(), f_->size()}; }

 private:
  FieldPtr f_;
};

inline ElementRange elements(FieldPtr f) { return ElementRange(std::move(f)); }

}  // namespace frobscan
