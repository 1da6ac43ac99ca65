#include "frobscan/surface.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace frobscan {

namespace {

PolyFp disc_term(const Family& fam) {
  // 4 a4^3 + 27 a6^2; the curve discriminant is -16 times this
  return fam.a4 * fam.a4 * fam.a4 * PolyFp::constant(fam.p, 4) +
         fam.a6 * fam.a6 * PolyFp::constant(fam.p, 27);
}

}  // namespace

Family::Family(u64 p_in, PolyFp a4_in, PolyFp a6_in, std::string name_in)
    : p(p_in), a4(std::move(a4_in)), a6(std::move(a6_in)), name(std::move(name_in)) {
  if (!is_prime_u64(p) || p <= 3)
    throw std::invalid_argument("family: p must be a prime > 3");
  if (a4.p() != p || a6.p() != p)
    throw std::invalid_argument("family: coefficient characteristic mismatch");
  if (disc_term(*this).is_zero())
    throw std::invalid_argument("family: generic fiber is singular");
  auto [num, den] = j_fraction(*this);
  if (num.degree() <= 0 && den.degree() <= 0)
    throw std::invalid_argument("family: constant j-invariant (isotrivial)");
}

Family legendre_family(u64 p) {
  if (!is_prime_u64(p) || p <= 3)
    throw std::invalid_argument("legendre family: p must be a prime > 3");
  // depress x(x-1)(x-l) = x^3 - (1+l) x^2 + l x
  u64 inv3 = powmod_u64(3 % p, p - 2, p);
  u64 inv27 = mulmod_u64(mulmod_u64(inv3, inv3, p), inv3, p);
  PolyFp lam = PolyFp::x(p);
  PolyFp s = lam + PolyFp::constant(p, 1);  // 1 + l
  PolyFp a4 = lam - (s * s).scaled(static_cast<i64>(inv3));
  PolyFp a6 = (lam * s).scaled(static_cast<i64>(inv3)) -
              (s * s * s).scaled(static_cast<i64>(mulmod_u64(2, inv27, p)));
  return Family(p, a4, a6, "legendre");
}

Family parse_family(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_p = false, have_a4 = false, have_a6 = false;
  u64 p = 0;
  std::string a4_text, a6_text, builtin, name;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("family file line " + std::to_string(lineno) +
                                  ": expected key = value");
    auto strip = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key == "p") {
      p = std::stoull(value);
      have_p = true;
    } else if (key == "a4") {
      a4_text = value;
      have_a4 = true;
    } else if (key == "a6") {
      a6_text = value;
      have_a6 = true;
    } else if (key == "builtin") {
      builtin = value;
    } else if (key == "name") {
      name = value;
    } else {
      throw std::invalid_argument("family file line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  if (!have_p) throw std::invalid_argument("family file: missing p");
  if (!builtin.empty()) {
    if (have_a4 || have_a6)
      throw std::invalid_argument("family file: builtin excludes a4/a6");
    if (builtin == "legendre") return legendre_family(p);
    throw std::invalid_argument("family file: unknown builtin '" + builtin + "'");
  }
  if (!have_a4 || !have_a6)
    throw std::invalid_argument("family file: a4 and a6 are both required");
  Family fam(p, parse_poly(a4_text, p), parse_poly(a6_text, p),
             name.empty() ? "custom" : name);
  return fam;
}

std::pair<PolyFp, PolyFp> j_fraction(const Family& fam) {
  PolyFp num = (fam.a4 * fam.a4 * fam.a4).scaled(6912);  // 1728 * 4
  PolyFp den = disc_term(fam);
  PolyFp g = poly_gcd(num, den);
  if (g.degree() > 0) {
    num = PolyFp::divrem(num, g).first;
    den = PolyFp::divrem(den, g).first;
  }
  // normalize: monic denominator
  u64 lead = den.leading();
  u64 inv = powmod_u64(lead, fam.p - 2, fam.p);
  num = num.scaled(static_cast<i64>(inv));
  den = den.scaled(static_cast<i64>(inv));
  return {num, den};
}

JDegree j_map_degree(const Family& fam) {
  auto [num, den] = j_fraction(fam);
  i64 deg = std::max<i64>(std::max(num.degree(), den.degree()), 0);
  PolyFp n = num, d = den;
  i64 sep = deg;
  u64 p = fam.p;
  while (sep > 0 && sep % static_cast<i64>(p) == 0 &&
         n.is_p_power_composite() && d.is_p_power_composite()) {
    n = n.deflate_p();
    d = d.deflate_p();
    i64 next = std::max<i64>(std::max(n.degree(), d.degree()), 0);
    if (next * static_cast<i64>(p) != sep)
      throw std::logic_error("j_map_degree: inconsistent deflation");
    sep = next;
  }
  return {deg, sep};
}

// ---------------------------------------------------------------------------
// scans
// ---------------------------------------------------------------------------

namespace {

// trace of y^2 = x^3 + a4 x + a6 over the subfield of F with p^d elements,
// the subfield given as an explicit element list (d properly divides k)
i64 trace_over_subfield(const Field& F, const Elt& a4, const Elt& a6,
                        const std::vector<u64>& subfield, u64 qd) {
  u64 half = (qd - 1) / 2;
  i64 sum = 0;
  for (u64 code : subfield) {
    Elt x = F.from_code(code);
    Elt v = (x * x + a4) * x + a6;
    if (v.code == 0) continue;
    Elt c = F.pow(v, half);
    sum += (c == F.one()) ? 1 : -1;
  }
  i64 n = static_cast<i64>(qd) + 1 + sum;
  return static_cast<i64>(qd) + 1 - n;  // = -sum
}

struct OrbitWork {
  std::vector<u64> members;
  int degree = 0;
};

}  // namespace

ScanLayer scan_layer(const Family& fam, int k, int jobs) {
  if (k < 1) throw std::invalid_argument("scan_layer: k must be >= 1");
  if (jobs < 1) jobs = 1;
  FieldPtr F = Field::make(fam.p, k);
  const Field& f = *F;
  u64 q = f.size();
  if (!f.has_chi_table())
    throw std::invalid_argument("scan_layer: p^k too large for exhaustive counting");

  // subfield element lists for each proper divisor of k
  std::vector<std::vector<u64>> subfield_of_degree(static_cast<size_t>(k) + 1);
  for (int d = 1; d < k; ++d) {
    if (k % d) continue;
    auto& list = subfield_of_degree[static_cast<size_t>(d)];
    for (u64 code = 0; code < q; ++code) {
      Elt e = f.from_code(code);
      if (f.frobenius(e, d) == e) list.push_back(code);
    }
  }

  // orbit discovery; ascending iteration makes the first member the least
  std::vector<bool> visited(q, false);
  std::vector<OrbitWork> orbits;
  for (u64 code = 0; code < q; ++code) {
    if (visited[code]) continue;
    OrbitWork w;
    u64 x = code;
    do {
      visited[x] = true;
      w.members.push_back(x);
      x = f.frobenius(f.from_code(x), 1).code;
    } while (x != code);
    w.degree = static_cast<int>(w.members.size());
    if (k % w.degree)
      throw std::logic_error("scan_layer: orbit size does not divide k");
    orbits.push_back(std::move(w));
  }

  std::vector<OrbitRecord> records(orbits.size());
  auto process = [&](size_t begin, size_t end) {
    for (size_t idx = begin; idx < end; ++idx) {
      const OrbitWork& w = orbits[idx];
      int d = w.degree;
      u64 qd = checked_pow_u64(fam.p, d);
      OrbitRecord rec;
      rec.lambda_min = w.members.front();
      rec.degree = d;
      bool first = true;
      bool bad = false;
      i64 t_res = 0;
      for (u64 code : w.members) {
        Elt lam = f.from_code(code);
        Elt a4v = fam.a4.eval(f, lam);
        Elt a6v = fam.a6.eval(f, lam);
        Elt disc = (f.from_int(4) * a4v * a4v * a4v +
                    f.from_int(27) * a6v * a6v);
        bool member_bad = disc == f.zero();
        if (first) {
          bad = member_bad;
        } else if (member_bad != bad) {
          throw std::logic_error("scan_layer: conjugates disagree on reduction");
        }
        if (!member_bad) {
          // fiber coefficients land in the residue field
          if (d < k && (f.frobenius(a4v, d) != a4v || f.frobenius(a6v, d) != a6v))
            throw std::logic_error("scan_layer: fiber not defined over residue field");
          i64 t;
          if (d == k) {
            t = trace(Curve(F, a4v, a6v)).t;
          } else {
            t = trace_over_subfield(f, a4v, a6v,
                                    subfield_of_degree[static_cast<size_t>(d)], qd);
          }
          if (i128(t) * t > i128(4) * qd)
            throw std::logic_error("scan_layer: Hasse bound violated");
          if (first)
            t_res = t;
          else if (t != t_res)
            throw std::logic_error("scan_layer: conjugates disagree on trace");
        }
        first = false;
      }
      rec.good = !bad;
      if (rec.good) {
        rec.t_res = t_res;
        rec.t_ext = trace_extend(t_res, qd, k / d);
        rec.supersingular = (t_res % static_cast<i64>(fam.p) == 0);
      }
      records[idx] = rec;
    }
  };

  if (jobs == 1 || orbits.size() < 64) {
    process(0, orbits.size());
  } else {
    size_t workers = std::min<size_t>(static_cast<size_t>(jobs), orbits.size());
    size_t chunk = (orbits.size() + workers - 1) / workers;
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) {
      size_t lo = w * chunk;
      size_t hi = std::min(orbits.size(), lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back(process, lo, hi);
    }
    for (auto& th : threads) th.join();
  }

  ScanLayer layer;
  layer.field = F;
  layer.k = k;
  layer.orbits = std::move(records);
  return layer;
}

FiberCounts classify_fibers(const ScanLayer& layer) {
  FiberCounts c;
  for (const auto& o : layer.orbits) {
    if (!o.good)
      c.bad += o.degree;
    else if (o.supersingular)
      c.good_supersingular += o.degree;
    else
      c.good_ordinary += o.degree;
  }
  return c;
}

i64 pi_k_t_doubleprime(const ScanLayer& layer, i64 t) {
  i64 n = 0;
  for (const auto& o : layer.orbits)
    if (o.good && o.t_ext == t) n += o.degree;
  return n;
}

i64 pi_k_t_prime(const ScanLayer& layer, i64 t) {
  i64 n = 0;
  for (const auto& o : layer.orbits)
    if (o.good && o.degree == layer.k && o.t_res == t) ++n;
  return n;
}

i64 good_fiber_count(const ScanLayer& layer) {
  i64 n = 0;
  for (const auto& o : layer.orbits)
    if (o.good) n += o.degree;
  return n;
}

i64 pi_k_t_doubleprime_direct(const Family& fam, int k, i64 t) {
  FieldPtr F = Field::make(fam.p, k);
  const Field& f = *F;
  i64 n = 0;
  for (u64 code = 0; code < f.size(); ++code) {
    Elt lam = f.from_code(code);
    Elt a4v = fam.a4.eval(f, lam);
    Elt a6v = fam.a6.eval(f, lam);
    if (f.from_int(4) * a4v * a4v * a4v + f.from_int(27) * a6v * a6v == f.zero())
      continue;
    if (trace(Curve(F, a4v, a6v)).t == t) ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// angles
// ---------------------------------------------------------------------------

AngleSpec AngleSpec::parse(const std::string& text) {
  static const struct {
    const char* token;
    int num, den, surd;
    long double value;
  } kTable[] = {
      {"0", 1, 1, 1, 0.0L},
      {"pi/6", 1, 2, 3, 0.52359877559829887308L},
      {"pi/4", 1, 2, 2, 0.78539816339744830961L},
      {"pi/3", 1, 2, 1, 1.04719755119659774615L},
      {"pi/2", 0, 1, 1, 1.57079632679489661923L},
      {"2pi/3", -1, 2, 1, 2.09439510239319549231L},
      {"3pi/4", -1, 2, 2, 2.35619449019234492885L},
      {"5pi/6", -1, 2, 3, 2.61799387799149436539L},
      {"pi", -1, 1, 1, 3.14159265358979323846L},
  };
  for (const auto& row : kTable) {
    if (text == row.token) {
      AngleSpec a;
      a.exact = true;
      a.num = row.num;
      a.den = row.den;
      a.surd = row.surd;
      a.radians = row.value;
      a.token = row.token;
      return a;
    }
  }
  size_t pos = 0;
  long double v;
  try {
    v = std::stold(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse angle '" + text + "'");
  }
  if (pos != text.size())
    throw std::invalid_argument("cannot parse angle '" + text + "'");
  return from_radians(v);
}

AngleSpec AngleSpec::from_radians(long double r) {
  constexpr long double kPi = 3.14159265358979323846L;
  if (r < -1e-12L || r > kPi + 1e-12L)
    throw std::invalid_argument("angle outside [0, pi]");
  AngleSpec a;
  a.exact = false;
  a.radians = std::clamp(r, 0.0L, kPi);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12Lg", static_cast<long double>(a.radians));
  a.token = buf;
  return a;
}

namespace {

// t <= 2 sqrt(qk) cos(angle)?
bool trace_le_cos_bound(i64 t, u64 qk, const AngleSpec& a) {
  if (a.exact) {
    i128 L = i128(t) * a.den;
    i128 R2 = i128(4) * qk * a.surd;
    if (a.num == 0) return L <= 0;
    if (a.num > 0) {
      if (L <= 0) return true;
      return L * L <= R2;
    }
    if (L >= 0) return false;
    return L * L >= R2;
  }
  long double bound = 2.0L * std::sqrt(static_cast<long double>(qk)) *
                      std::cos(a.radians);
  long double guard = 1e-9L * std::max<long double>(1.0L, std::fabs(bound));
  return static_cast<long double>(t) <= bound + guard;
}

// t >= 2 sqrt(qk) cos(angle)?
bool trace_ge_cos_bound(i64 t, u64 qk, const AngleSpec& a) {
  if (a.exact) {
    i128 L = i128(t) * a.den;
    i128 R2 = i128(4) * qk * a.surd;
    if (a.num == 0) return L >= 0;
    if (a.num > 0) {
      if (L < 0) return false;
      return L * L >= R2;
    }
    if (L >= 0) return true;
    return L * L <= R2;
  }
  long double bound = 2.0L * std::sqrt(static_cast<long double>(qk)) *
                      std::cos(a.radians);
  long double guard = 1e-9L * std::max<long double>(1.0L, std::fabs(bound));
  return static_cast<long double>(t) >= bound - guard;
}

void require_ordered(const AngleSpec& alpha, const AngleSpec& beta) {
  if (alpha.radians > beta.radians + 1e-15L)
    throw std::invalid_argument("angle interval: alpha exceeds beta");
}

}  // namespace

bool trace_in_angle_range(i64 t, u64 qk, const AngleSpec& alpha,
                          const AngleSpec& beta) {
  return trace_ge_cos_bound(t, qk, beta) && trace_le_cos_bound(t, qk, alpha);
}

// ---------------------------------------------------------------------------
// cumulative counts and bounds
// ---------------------------------------------------------------------------

namespace {

void require_layers(const std::vector<ScanLayer>& layers) {
  for (size_t i = 0; i < layers.size(); ++i)
    if (layers[i].k != static_cast<int>(i) + 1)
      throw std::invalid_argument("layers must cover k = 1..B in order");
}

}  // namespace

BoundedCount pi_B_t(const Family& fam, const std::vector<ScanLayer>& layers,
                    i64 t) {
  require_layers(layers);
  i64 deg = j_map_degree(fam).degree;
  BoundedCount r;
  for (const auto& layer : layers) {
    r.count += pi_k_t_prime(layer, t);
    u64 qk = checked_pow_u64(fam.p, layer.k);
    if (i128(t) * t <= i128(4) * qk)
      r.bound += schoof_N(t, fam.p, 1, layer.k);
  }
  r.bound *= deg;
  return r;
}

BoundedCount pi_B_angle(const Family& fam,
                        const std::vector<ScanLayer>& layers,
                        const AngleSpec& alpha, const AngleSpec& beta) {
  require_layers(layers);
  require_ordered(alpha, beta);
  i64 deg = j_map_degree(fam).degree;
  BoundedCount r;
  for (const auto& layer : layers) {
    u64 qk = checked_pow_u64(fam.p, layer.k);
    for (const auto& o : layer.orbits)
      if (o.good && o.degree == layer.k &&
          trace_in_angle_range(o.t_res, qk, alpha, beta))
        ++r.count;
    i64 tmax = static_cast<i64>(2.0 * std::sqrt(static_cast<double>(qk))) + 2;
    for (i64 t = -tmax; t <= tmax; ++t) {
      if (i128(t) * t > i128(4) * qk) continue;
      if (trace_in_angle_range(t, qk, alpha, beta))
        r.bound += schoof_N(t, fam.p, 1, layer.k);
    }
  }
  r.bound *= deg;
  return r;
}

Histogram satotate_histogram(const std::vector<ScanLayer>& layers, int nbins) {
  require_layers(layers);
  if (nbins < 1) throw std::invalid_argument("histogram: nbins must be >= 1");
  constexpr double kPi = 3.14159265358979323846;
  Histogram h;
  h.nbins = nbins;
  h.counts.assign(static_cast<size_t>(nbins), 0);
  for (const auto& layer : layers) {
    double sq = 2.0 * std::sqrt(static_cast<double>(
        checked_pow_u64(layers[0].field->p(), layer.k)));
    for (const auto& o : layer.orbits) {
      if (!o.good || o.degree != layer.k) continue;
      double c = std::clamp(static_cast<double>(o.t_res) / sq, -1.0, 1.0);
      double theta = std::acos(c);
      int bin = static_cast<int>(theta / kPi * nbins);
      bin = std::clamp(bin, 0, nbins - 1);  // theta = pi lands in the last bin
      ++h.counts[static_cast<size_t>(bin)];
      ++h.total;
    }
  }
  h.observed_freq.assign(static_cast<size_t>(nbins), 0.0);
  h.reference_mass.assign(static_cast<size_t>(nbins), 0.0);
  auto cdf = [&](double theta) {
    // integral of (2/pi) sin^2 from 0 to theta
    return (theta - std::sin(theta) * std::cos(theta)) / kPi;
  };
  for (int i = 0; i < nbins; ++i) {
    double lo = kPi * i / nbins, hi = kPi * (i + 1) / nbins;
    h.reference_mass[static_cast<size_t>(i)] = cdf(hi) - cdf(lo);
    if (h.total)
      h.observed_freq[static_cast<size_t>(i)] =
          static_cast<double>(h.counts[static_cast<size_t>(i)]) /
          static_cast<double>(h.total);
  }
  return h;
}

}  // namespace frobscan
