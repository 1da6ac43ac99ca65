// frobscan: class numbers, isogeny-class counts, and exhaustive censuses of
// Frobenius traces and angles for elliptic curves and one-parameter families
// over small finite fields.  Subcommands: classnum, ntrace, census, scan.
//
// Exit codes: 0 success, 1 usage error, 2 computation error,
// 3 verification failure (a MISMATCH or BOUND-VIOLATED row).

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "frobscan/census.hpp"
#include "frobscan/classnum.hpp"
#include "frobscan/report.hpp"
#include "frobscan/surface.hpp"

namespace {

using namespace frobscan;

struct Output {
  std::string format = "csv";
  std::string path;
};

int emit(const Table& table, const Output& out, bool verification_failed) {
  std::string text = out.format == "json" ? to_json(table) : to_csv(table);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out.path);
    f << text;
  }
  return verification_failed ? 3 : 0;
}

i64 hasse_tmax(u64 Q) {
  u64 s = static_cast<u64>(std::sqrt(4.0 * static_cast<double>(Q)));
  while (i128(s + 1) * (s + 1) <= i128(4) * Q) ++s;
  while (i128(s) * s > i128(4) * Q) --s;
  return static_cast<i64>(s);
}

int default_jobs() {
  if (const char* env = std::getenv("FROBSCAN_JOBS")) {
    int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// classnum
// ---------------------------------------------------------------------------

int run_classnum(i64 d_single, bool have_single, i64 from, i64 to,
                 const Output& out) {
  Table t;
  std::ostringstream cmd;
  if (have_single)
    cmd << "frobscan classnum -d " << d_single;
  else
    cmd << "frobscan classnum --from " << from << " --to " << to;
  t.command = cmd.str();
  t.header = {"delta", "h", "H", "status"};
  i64 lo = have_single ? d_single : from;
  i64 hi = have_single ? d_single : to;
  if (lo > hi) std::swap(lo, hi);
  for (i64 d = lo; d <= hi; ++d) {
    std::vector<std::string> row(4);
    row[0] = std::to_string(d);
    if (!is_valid_discriminant(d)) {
      row[1] = row[2] = "";
      row[3] = d >= 0 ? "error: not negative" : "error: not 0 or 1 mod 4";
    } else {
      row[1] = std::to_string(class_number_h(d));
      row[2] = std::to_string(kronecker_H(d));
      row[3] = "ok";
    }
    t.rows.push_back(std::move(row));
  }
  return emit(t, out, false);
}

// ---------------------------------------------------------------------------
// ntrace
// ---------------------------------------------------------------------------

int run_ntrace(u64 p, int e, int k, i64 t_single, bool all_t,
               const Output& out) {
  u64 Q = checked_pow_u64(p, e * k);
  Table t;
  std::ostringstream cmd;
  cmd << "frobscan ntrace -p " << p << " -e " << e << " -k " << k;
  if (all_t)
    cmd << " --all-t";
  else
    cmd << " -t " << t_single;
  t.command = cmd.str();
  t.header = {"t", "N", "case"};
  i64 total = 0;
  auto add_row = [&](i64 tv) {
    i64 n = schoof_N(tv, p, e, k);
    total += n;
    t.rows.push_back({std::to_string(tv), std::to_string(n),
                      schoof_case_label(tv, p, e, k)});
  };
  if (all_t) {
    i64 tmax = hasse_tmax(Q);
    for (i64 tv = -tmax; tv <= tmax; ++tv) add_row(tv);
    t.rows.push_back({"sum", std::to_string(total), ""});
  } else {
    add_row(t_single);
  }
  return emit(t, out, false);
}

// ---------------------------------------------------------------------------
// census
// ---------------------------------------------------------------------------

int run_census(u64 p, int e, int k, const std::string& level_text, int jobs,
               const Output& out) {
  FieldPtr F = Field::make(p, e * k);
  u64 Q = F->size();
  i64 tmax = hasse_tmax(Q);
  std::vector<ClassRecord> census = full_census(F, jobs);

  Table t;
  std::ostringstream cmd;
  cmd << "frobscan census -p " << p << " -e " << e << " -k " << k;
  if (!level_text.empty()) cmd << " --level " << level_text;
  t.command = cmd.str();

  bool failed = false;
  if (level_text.empty()) {
    t.header = {"t", "empirical_N", "schoof_N", "flag"};
    for (i64 tv = -tmax; tv <= tmax; ++tv) {
      i64 emp = empirical_N(census, tv);
      i64 formula = schoof_N(tv, p, e, k);
      bool match = emp == formula;
      failed |= !match;
      t.rows.push_back({std::to_string(tv), std::to_string(emp),
                        std::to_string(formula), match ? "MATCH" : "MISMATCH"});
    }
    return emit(t, out, failed);
  }

  // --level igusa:n | gamma:N | gamma1:l
  size_t colon = level_text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--level expects kind:parameter");
  std::string kind = level_text.substr(0, colon);
  i64 param = 0;
  try {
    size_t used = 0;
    param = std::stoll(level_text.substr(colon + 1), &used);
    if (used != level_text.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw CLI::ValidationError("--level parameter must be an integer");
  }
  LevelStructure L = [&] {
    if (kind == "igusa") return LevelStructure::igusa(p, static_cast<int>(param));
    if (kind == "gamma") return LevelStructure::gamma_full(param);
    if (kind == "gamma1") return LevelStructure::gamma1(param);
    throw CLI::ValidationError("unknown level kind '" + kind + "'");
  }();

  t.header = {"t", "census", "formula", "flag"};
  for (i64 tv = -tmax; tv <= tmax; ++tv) {
    if (!eligibility(L, F, tv).ok) continue;
    i64 weighted = level_census(F, L, tv, &census);
    std::string formula_cell, flag;
    try {
      i64 formula = level_formula(F, L, tv);
      formula_cell = std::to_string(formula);
      flag = weighted == formula ? "MATCH" : "MISMATCH";
      failed |= weighted != formula;
    } catch (const std::domain_error&) {
      formula_cell = "";
      flag = "NO-FORMULA";
    }
    t.rows.push_back({std::to_string(tv), std::to_string(weighted),
                      formula_cell, flag});
  }
  return emit(t, out, failed);
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanArgs {
  std::string builtin;
  std::string family_path;
  u64 p = 0;
  int B = 1;
  bool have_t = false;
  i64 t = 0;
  std::vector<std::string> angles;
  int hist_bins = 0;
  int jobs = 1;
};

Family load_family(const ScanArgs& args) {
  if (!args.builtin.empty()) {
    if (args.builtin != "legendre")
      throw CLI::ValidationError("unknown builtin family '" + args.builtin + "'");
    if (args.p == 0)
      throw CLI::ValidationError("--builtin requires -p");
    return legendre_family(args.p);
  }
  if (args.family_path.empty())
    throw CLI::ValidationError("scan needs --builtin or -f <family file>");
  std::ifstream f(args.family_path);
  if (!f) throw std::runtime_error("cannot read family file " + args.family_path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_family(ss.str());
}

int run_scan(const ScanArgs& args, const Output& out) {
  Family fam = load_family(args);
  std::ostringstream cmd;
  cmd << "frobscan scan";
  if (!args.builtin.empty())
    cmd << " --builtin " << args.builtin << " -p " << fam.p;
  else
    cmd << " -f " << args.family_path;
  cmd << " -B " << args.B;

  std::vector<ScanLayer> layers;
  layers.reserve(static_cast<size_t>(args.B));
  for (int k = 1; k <= args.B; ++k)
    layers.push_back(scan_layer(fam, k, args.jobs));

  JDegree jd = j_map_degree(fam);
  Table t;
  bool failed = false;

  if (args.have_t) {
    cmd << " -t " << args.t;
    t.command = cmd.str();
    t.header = {"B", "t", "count", "bound", "flag"};
    BoundedCount bc = pi_B_t(fam, layers, args.t);
    bool ok = bc.count <= bc.bound;
    failed = !ok;
    t.rows.push_back({std::to_string(args.B), std::to_string(args.t),
                      std::to_string(bc.count), std::to_string(bc.bound),
                      ok ? "BOUND-OK" : "BOUND-VIOLATED"});
    return emit(t, out, failed);
  }

  if (!args.angles.empty()) {
    AngleSpec alpha = AngleSpec::parse(args.angles[0]);
    AngleSpec beta = AngleSpec::parse(args.angles[1]);
    cmd << " --angles " << alpha.token << " " << beta.token;
    t.command = cmd.str();
    t.header = {"B", "alpha", "beta", "count", "bound", "flag"};
    BoundedCount bc = pi_B_angle(fam, layers, alpha, beta);
    bool ok = bc.count <= bc.bound;
    failed = !ok;
    t.rows.push_back({std::to_string(args.B), alpha.token, beta.token,
                      std::to_string(bc.count), std::to_string(bc.bound),
                      ok ? "BOUND-OK" : "BOUND-VIOLATED"});
    return emit(t, out, failed);
  }

  if (args.hist_bins > 0) {
    cmd << " --hist " << args.hist_bins;
    t.command = cmd.str();
    t.header = {"bin", "theta_lo", "theta_hi", "count", "observed_freq",
                "reference_mass"};
    Histogram h = satotate_histogram(layers, args.hist_bins);
    constexpr double kPi = 3.14159265358979323846;
    for (int i = 0; i < h.nbins; ++i) {
      t.rows.push_back({std::to_string(i),
                        fmt_g12(kPi * i / h.nbins),
                        fmt_g12(kPi * (i + 1) / h.nbins),
                        std::to_string(h.counts[static_cast<size_t>(i)]),
                        fmt_g12(h.observed_freq[static_cast<size_t>(i)]),
                        fmt_g12(h.reference_mass[static_cast<size_t>(i)])});
    }
    return emit(t, out, false);
  }

  // full report: per-(k, t) spectrum with the class-count bound
  t.command = cmd.str();
  t.comments.push_back("family=" + fam.name + " p=" + std::to_string(fam.p));
  t.comments.push_back("j_degree=" + std::to_string(jd.degree) +
                       " separable_degree=" + std::to_string(jd.separable_degree));
  for (const auto& layer : layers) {
    FiberCounts fc = classify_fibers(layer);
    t.comments.push_back("k=" + std::to_string(layer.k) +
                         " good_ordinary=" + std::to_string(fc.good_ordinary) +
                         " good_supersingular=" + std::to_string(fc.good_supersingular) +
                         " bad=" + std::to_string(fc.bad));
  }
  t.header = {"k", "t", "pi_doubleprime", "pi_prime", "N_t", "bound", "flag"};
  for (const auto& layer : layers) {
    u64 qk = checked_pow_u64(fam.p, layer.k);
    i64 tmax = hasse_tmax(qk);
    for (i64 tv = -tmax; tv <= tmax; ++tv) {
      i64 dd = pi_k_t_doubleprime(layer, tv);
      i64 pp = pi_k_t_prime(layer, tv);
      if (dd == 0 && pp == 0) continue;
      i64 nt = schoof_N(tv, fam.p, 1, layer.k);
      i64 bound = jd.degree * nt;
      bool ok = dd <= bound;
      failed |= !ok;
      t.rows.push_back({std::to_string(layer.k), std::to_string(tv),
                        std::to_string(dd), std::to_string(pp),
                        std::to_string(nt), std::to_string(bound),
                        ok ? "BOUND-OK" : "BOUND-VIOLATED"});
    }
  }
  return emit(t, out, failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exhaustive Frobenius-trace censuses for elliptic curves and "
               "elliptic surfaces over small finite fields"};
  app.require_subcommand(1);

  Output out;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("-o,--output", out.path, "write output to a file");
  int jobs = default_jobs();
  app.add_option("--jobs", jobs, "worker threads for census/scan")
      ->check(CLI::PositiveNumber);

  // classnum
  auto* c_cmd = app.add_subcommand("classnum",
      "class numbers h and Kronecker class numbers H of negative discriminants");
  i64 c_delta = 0;
  i64 c_from = 0, c_to = 0;
  auto* c_d_opt = c_cmd->add_option("-d,--delta", c_delta, "single discriminant");
  auto* c_from_opt = c_cmd->add_option("--from", c_from, "range start");
  auto* c_to_opt = c_cmd->add_option("--to", c_to, "range end (inclusive)");
  c_from_opt->needs(c_to_opt);
  c_to_opt->needs(c_from_opt);
  c_d_opt->excludes(c_from_opt);

  // ntrace
  auto* n_cmd = app.add_subcommand("ntrace",
      "isogeny-class counts N(t) over F_{q^k}, q = p^e");
  u64 n_p = 0;
  int n_e = 1, n_k = 1;
  i64 n_t = 0;
  bool n_all = false;
  n_cmd->add_option("-p", n_p, "characteristic")->required();
  n_cmd->add_option("-e", n_e, "q = p^e");
  n_cmd->add_option("-k", n_k, "extension degree");
  auto* n_t_opt = n_cmd->add_option("-t", n_t, "single trace");
  n_cmd->add_flag("--all-t", n_all, "every t in the Hasse range, plus a sum row");

  // census
  auto* s_cmd = app.add_subcommand("census",
      "empirical class counts per trace, checked against the closed formulas");
  u64 s_p = 0;
  int s_e = 1, s_k = 1;
  std::string s_level;
  s_cmd->add_option("-p", s_p, "characteristic")->required();
  s_cmd->add_option("-e", s_e, "q = p^e");
  s_cmd->add_option("-k", s_k, "extension degree");
  s_cmd->add_option("--level", s_level,
                    "level structure: igusa:n | gamma:N | gamma1:l");

  // scan
  auto* f_cmd = app.add_subcommand("scan",
      "fiber-by-fiber trace and angle statistics of a Weierstrass family");
  ScanArgs sa;
  f_cmd->add_option("--builtin", sa.builtin, "built-in family name (legendre)");
  f_cmd->add_option("-f,--family", sa.family_path, "family file");
  f_cmd->add_option("-p", sa.p, "characteristic for --builtin");
  f_cmd->add_option("-B", sa.B, "maximum closed-point degree")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* f_t_opt = f_cmd->add_option("-t", sa.t, "cumulative count of one trace");
  f_cmd->add_option("--angles", sa.angles,
                    "angle interval endpoints (radians or symbolic pi fractions)")
      ->expected(2);
  f_cmd->add_option("--hist", sa.hist_bins, "Sato-Tate histogram with n bins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message or the help text
    return code == 0 ? 0 : 1;
  }

  try {
    if (*c_cmd) {
      bool have_single = c_d_opt->count() > 0;
      if (!have_single && c_from_opt->count() == 0)
        throw CLI::ValidationError("classnum needs -d or --from/--to");
      return run_classnum(c_delta, have_single, c_from, c_to, out);
    }
    if (*n_cmd) {
      if (!n_all && n_t_opt->count() == 0)
        throw CLI::ValidationError("ntrace needs -t or --all-t");
      return run_ntrace(n_p, n_e, n_k, n_t, n_all, out);
    }
    if (*s_cmd) return run_census(s_p, s_e, s_k, s_level, jobs, out);
    if (*f_cmd) {
      sa.have_t = f_t_opt->count() > 0;
      sa.jobs = jobs;
      int modes = (sa.have_t ? 1 : 0) + (sa.angles.empty() ? 0 : 1) +
                  (sa.hist_bins > 0 ? 1 : 0);
      if (modes > 1)
        throw CLI::ValidationError("scan modes -t, --angles, --hist are exclusive");
      return run_scan(sa, out);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
