// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qtwist/charsum.hpp"
#include "qtwist/constants.hpp"
#include "qtwist/lfunc.hpp"
#include "qtwist/moments.hpp"
#include "suites.hpp"

namespace qtw::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kDefaultCurve = "y^2=x^3+(t)*x+(1)";
constexpr const char* kDefaultCurve2 = "y^2=x^3+(1)*x+(t)";

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct CurveSpec {
  std::string text, a, b;
  bool given() const { return !text.empty() || !a.empty() || !b.empty(); }
};

void add_curve_options(CLI::App* s, CurveSpec& c, const std::string& suffix) {
  s->add_option("--curve" + suffix, c.text, "Weierstrass model y^2=x^3+(A)*x+(B)");
  s->add_option("--a" + suffix, c.a, "coefficient A as a polynomial in t");
  s->add_option("--b" + suffix, c.b, "coefficient B as a polynomial in t");
}

Field make_field(long long q) {
  const std::string v = field_violation(q);
  if (!v.empty()) throw ValidationError("--q " + std::to_string(q) + ": " + v);
  return Field(static_cast<std::uint32_t>(q));
}

CurveModel load_curve(const Field& F, const CurveSpec& c, const std::string& suffix) {
  const std::string flag = "--curve" + suffix;
  if (!c.text.empty()) {
    if (!c.a.empty() || !c.b.empty())
      throw ValidationError("give either " + flag + " or --a" + suffix + "/--b" + suffix + ", not both");
    return parse_curve(F, c.text);
  }
  if (c.a.empty() || c.b.empty()) throw ValidationError("missing " + flag + " (or both --a" + suffix + " and --b" + suffix + ")");
  return build_curve(F, parse_poly(F, c.a), parse_poly(F, c.b));
}

int resolve_threads(const CLI::Option* opt, int value) {
  if (opt->count() > 0) {
    if (value < 1) throw ValidationError("--threads must be at least 1");
    return value;
  }
  if (const char* env = std::getenv("QTWIST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 4096)
      throw ValidationError(std::string("QTWIST_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(v);
  }
  return 1;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw ValidationError("failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json check_json(const CheckRecord& c) {
  return {{"what", c.what}, {"witness", c.witness}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}};
}

json suite_json(const SuiteReport& r, json job) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  return {{"job", std::move(job)},
          {"suite", r.suite},
          {"total", r.checks.size()},
          {"failures", r.failures()},
          {"checks", std::move(checks)}};
}

// ---------------------------------------------------------------------------
// moment / trend

struct MomentArgs {
  long long q = 5;
  CurveSpec c1, c2;
  std::string kind = "first";
  int g = 1, g_min = 1, g_max = 3;
  int cutoff = 8;
  int threads = 0;
  CLI::Option* threads_opt = nullptr;
  bool force = false;
  double cost_cap = 1e11;
  int stride = 64;
  std::string second_length = "proof";
  std::string out, csv, plot;
  bool timing = false;
};

void add_moment_options(CLI::App* s, MomentArgs& a, bool trend) {
  s->add_option("--q", a.q, "field size p, prime with p = 1 mod 4")->capture_default_str();
  add_curve_options(s, a.c1, "");
  add_curve_options(s, a.c2, "2");
  s->add_option("--kind", a.kind, "first|second|llprime|lplp|ranks")
      ->check(CLI::IsMember({"first", "second", "llprime", "lplp", "ranks"}))
      ->capture_default_str();
  if (trend) {
    s->add_option("--g-min", a.g_min, "smallest genus")->capture_default_str();
    s->add_option("--g-max", a.g_max, "largest genus")->capture_default_str();
  } else {
    s->add_option("--g", a.g, "family H*_{2g+1}")->capture_default_str();
  }
  s->add_option("--cutoff", a.cutoff, "Euler product cutoff degree B")->capture_default_str();
  a.threads_opt = s->add_option("--threads", a.threads, "worker threads (default: QTWIST_THREADS or 1)");
  s->add_flag("--force", a.force, "run even when the cost model exceeds the cap");
  s->add_option("--cost-cap", a.cost_cap, "cost cap in symbol kernel calls")->capture_default_str();
  s->add_option("--integrity-stride", a.stride, "check the full L-polynomial of every n-th twist (0: off)")
      ->capture_default_str();
  s->add_option("--second-length", a.second_length, "second-moment main term length: proof (2g) or theorem (g)")
      ->check(CLI::IsMember({"proof", "theorem"}))
      ->capture_default_str();
  s->add_option("--out", a.out, "JSON report path (stdout when omitted)");
  s->add_option("--csv", a.csv, "CSV report path");
  s->add_option("--plot", a.plot, "prefix for (g, ratio) and (g, empirical) data files");
  s->add_flag("--timing", a.timing, "fill the seconds column of the CSV");
}

json moment_job(const std::string& command, const MomentArgs& a, const std::vector<CurveModel>& curves) {
  json cs = json::array();
  for (const auto& E : curves) cs.push_back(E.equation());
  json j = {{"command", command}, {"q", a.q}, {"kind", a.kind}, {"curves", cs}};
  if (command == "trend") {
    j["g_min"] = a.g_min;
    j["g_max"] = a.g_max;
  } else {
    j["g"] = a.g;
  }
  j["cutoff_B"] = a.cutoff;
  j["second_length"] = a.second_length;
  j["integrity_stride"] = a.stride;
  j["cost_cap"] = a.cost_cap;
  j["force"] = a.force;
  return j;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const MomentReport& r) {
  json j = {{"kind", to_string(r.kind)}, {"q", r.q}, {"g", r.g}, {"curves", r.curves},
            {"sign_base", r.sign_base},  {"n_eff", r.n_eff}, {"family_size", r.family_size}};
  if (r.kind == MomentKind::RankJoint) {
    j["rank_counts"] = {{"r1_0_r2_1", r.rank_r0_r1}, {"r1_1_r2_1", r.rank_r1_r1}};
  } else {
    j["empirical_exact"] = to_string(r.exact);
    j["log_power"] = r.log_power;
    j["empirical"] = finite_or_null(r.empirical);
    j["predicted"] = finite_or_null(r.predicted);
    j["predicted_tail"] = finite_or_null(r.predicted_tail);
    j["ratio"] = finite_or_null(r.ratio);
    json lv = json::array(), lt = json::array();
    for (double v : r.prediction.l_values) lv.push_back(finite_or_null(v));
    for (double v : r.prediction.l_tails) lt.push_back(finite_or_null(v));
    j["prediction"] = {{"constant", finite_or_null(r.prediction.constant)},
                       {"constant_tail", finite_or_null(r.prediction.constant_tail)},
                       {"l_values", lv},
                       {"l_tails", lt},
                       {"exclusion", r.prediction.exclusion}};
  }
  j["integrity_checked"] = r.integrity_checked;
  j["notes"] = r.notes;
  return j;
}

std::vector<CurveModel> moment_curves(const Field& F, const MomentArgs& a, MomentKind kind) {
  std::vector<CurveModel> cs{load_curve(F, a.c1, "")};
  const bool two = kind != MomentKind::First && kind != MomentKind::Second;
  if (two) cs.push_back(load_curve(F, a.c2, "2"));
  else if (a.c2.given()) throw ValidationError("--curve2 is only used by llprime, lplp and ranks");
  return cs;
}

std::vector<MomentReport> run_series(const MomentArgs& a, const std::vector<int>& gs, int threads,
                                     std::vector<CurveModel>& curves_out) {
  const Field F = make_field(a.q);
  const MomentKind kind = parse_moment_kind(a.kind);
  if (a.cutoff < 1) throw ValidationError("--cutoff must be at least 1");
  if (a.stride < 0) throw ValidationError("--integrity-stride must be non-negative");
  for (int g : gs)
    if (g < 0) throw ValidationError("genus must be non-negative");
  auto curves = moment_curves(F, a, kind);
  curves_out = curves;
  const int gmax = *std::max_element(gs.begin(), gs.end());

  // Calibrate on a small sieve so the cost cap is enforced before the big one is built.
  std::vector<int> n_eff;
  {
    const Workspace small(F, curves, 1);
    int n_max = -1000;
    for (std::size_t i = 0; i < small.curve_count(); ++i) {
      n_eff.push_back(small.calibration(i).n_eff);
      n_max = std::max(n_max, n_eff.back());
    }
    const double cost = moment_cost(F.p(), n_max, gmax);
    if (cost > a.cost_cap && !a.force)
      throw CostCapError("estimated " + fmt12(cost) + " symbol kernel calls at g = " + std::to_string(gmax) +
                         " exceeds the cap of " + fmt12(a.cost_cap) + "; rerun with --force");
  }
  const int deg = std::max(moment_sieve_degree(curves, n_eff, gmax), a.cutoff);
  if (F.power(deg) > (1ULL << 29) && !a.force)
    throw CostCapError("sieve of degree " + std::to_string(deg) + " needs " + std::to_string(F.power(deg)) +
                       " entries; rerun with --force");
  const Workspace W(F, curves, deg);
  std::vector<MomentReport> reps;
  for (int g : gs) {
    MomentOptions o;
    o.kind = kind;
    o.g = g;
    o.threads = threads;
    o.cutoff_B = a.cutoff;
    o.force = a.force;
    o.cost_cap = a.cost_cap;
    o.integrity_stride = a.stride;
    o.second_length = a.second_length == "theorem" ? SecondLength::Theorem : SecondLength::Proof;
    reps.push_back(run_moment(W, o));
  }
  return reps;
}

void emit_series(const std::string& command, const MomentArgs& a, const std::vector<CurveModel>& curves,
                 const std::vector<MomentReport>& reps, int threads, std::ostream& out) {
  json doc;
  if (command == "moment") {
    doc = {{"job", moment_job(command, a, curves)}};
    const json body = report_json(reps.front());
    for (const auto& [k, v] : body.items()) doc[k] = v;
  } else {
    json rows = json::array();
    for (const auto& r : reps) rows.push_back(report_json(r));
    json diffs = json::array(), errs = json::array(), decay = json::array(), per_g2 = json::array();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      errs.push_back(finite_or_null(std::abs(reps[i].ratio - 1)));
      per_g2.push_back(reps[i].g > 0 ? finite_or_null(reps[i].empirical / (double(reps[i].g) * reps[i].g))
                                     : json(nullptr));
      if (i == 0) {
        diffs.push_back(nullptr);
        decay.push_back(nullptr);
        continue;
      }
      diffs.push_back(finite_or_null(reps[i].ratio - reps[i - 1].ratio));
      decay.push_back(finite_or_null(std::abs(reps[i].ratio - 1) / std::abs(reps[i - 1].ratio - 1)));
    }
    json trend = {{"ratio_diff", diffs}, {"abs_error", errs}};
    if (reps.front().kind == MomentKind::First) trend["decay"] = decay;
    if (reps.front().kind == MomentKind::LprimeLprime) trend["empirical_over_g2"] = per_g2;
    doc = {{"job", moment_job(command, a, curves)}, {"rows", rows}, {"trend", trend}};
  }
  write_text(a.out, dump(doc), out);

  if (!a.out.empty()) {
    json secs = json::array();
    for (const auto& r : reps) secs.push_back(r.seconds);
    json run = {{"version", kVersion}, {"threads", threads}, {"seconds", secs}};
    write_text(a.out + ".run.json", dump(run), out);
  }
  if (!a.csv.empty()) {
    std::string csv = "g,kind,empirical,predicted,ratio,family_size,seconds\n";
    for (const auto& r : reps) {
      // Rank counts live in the JSON report; the value columns stay empty.
      const bool values = r.kind != MomentKind::RankJoint;
      csv += std::to_string(r.g) + "," + to_string(r.kind) + "," + (values ? fmt12(r.empirical) : "") + "," +
             (values ? fmt12(r.predicted) : "") + "," + (values ? fmt12(r.ratio) : "") + "," +
             std::to_string(r.family_size) + "," + (a.timing ? fmt12(r.seconds) : std::string()) + "\n";
    }
    write_text(a.csv, csv, out);
  }
  if (!a.plot.empty()) {
    std::string ratio = "# g ratio\n", emp = "# g empirical\n";
    for (const auto& r : reps) {
      ratio += std::to_string(r.g) + " " + fmt12(r.ratio) + "\n";
      emp += std::to_string(r.g) + " " + fmt12(r.empirical) + "\n";
    }
    write_text(a.plot + ".ratio.dat", ratio, out);
    write_text(a.plot + ".empirical.dat", emp, out);
  }
}

int cmd_moment(const MomentArgs& a, bool trend, std::ostream& out) {
  const int threads = resolve_threads(a.threads_opt, a.threads);
  std::vector<int> gs;
  if (trend) {
    if (a.g_min > a.g_max) throw ValidationError("--g-min must not exceed --g-max");
    for (int g = a.g_min; g <= a.g_max; ++g) gs.push_back(g);
  } else {
    gs.push_back(a.g);
  }
  std::vector<CurveModel> curves;
  const auto reps = run_series(a, gs, threads, curves);
  emit_series(trend ? "trend" : "moment", a, curves, reps, threads, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// lpoly

struct LpolyArgs {
  long long q = 5;
  CurveSpec c;
  std::string D, out;
  bool oracle = false, force = false;
};

json mpz_json(const mpz_class& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

int cmd_lpoly(const LpolyArgs& a, std::ostream& out) {
  const Field F = make_field(a.q);
  const CurveModel E = load_curve(F, a.c, "");
  if (a.D.empty()) throw ValidationError("missing --D");
  const Poly D = parse_poly(F, a.D);
  if (D.degree() < 1) throw ValidationError("--D must have positive degree");
  const int parity = D.degree() % 2;

  auto build = [&](int deg) {
    auto S = std::make_shared<const MonicSieve>(F, std::max(deg, calibration_degree(E, parity)));
    auto ctx = std::make_unique<LContext>(E, S);
    return ctx;
  };
  auto ctx = build(1);
  Calibration cal = calibrate_degree(*ctx, parity);
  validate_twist(*ctx, cal, D);
  const int N = cal.n_eff + 2 * D.degree();
  const int need = a.oracle ? N + 2 : (N + 1) / 2;
  if (need > ctx->sieve().max_deg()) {
    if (F.power(need) > (1ULL << 29) && !a.force)
      throw CostCapError("sieve of degree " + std::to_string(need) + " needs " + std::to_string(F.power(need)) +
                         " entries; rerun with --force");
    ctx = build(need);
    cal = calibrate_degree(*ctx, parity);
  }
  const LPolynomial L = compute_l_polynomial(*ctx, cal, D, a.oracle ? LMode::Oracle : LMode::Symmetric);
  if (!satisfies_symmetry(L, F.p())) throw IntegrityError("functional equation violated for D = " + to_string(D));
  json b = json::array();
  for (int n = 0; n <= L.N; ++n) b.push_back(mpz_json(L.b[n]));
  json job = {{"command", "lpoly"}, {"q", a.q}, {"curve", E.equation()}, {"D", to_string(D)},
              {"mode", a.oracle ? "oracle" : "symmetric"}};
  json doc = {{"job", job},
              {"q", F.p()},
              {"curve", E.equation()},
              {"D", to_string(D)},
              {"N", L.N},
              {"epsilon", L.epsilon},
              {"b", b},
              {"central_value", to_string(central_value(L, F.p()))},
              {"derivative_logq", to_string(central_derivative(L, F.p()))},
              {"rank", analytic_rank(L, F.p())}};
  write_text(a.out, dump(doc), out);
  return kOk;
}

// ---------------------------------------------------------------------------
// constants

struct ConstArgs {
  long long q = 5;
  CurveSpec c1, c2;
  int cutoff = 8;
  int threads = 0;
  CLI::Option* threads_opt = nullptr;
  std::string out;
};

int cmd_constants(const ConstArgs& a, std::ostream& out) {
  const Field F = make_field(a.q);
  const int threads = resolve_threads(a.threads_opt, a.threads);
  if (a.cutoff < 1) throw ValidationError("--cutoff must be at least 1");
  std::vector<CurveModel> curves{load_curve(F, a.c1, "")};
  if (a.c2.given()) curves.push_back(load_curve(F, a.c2, "2"));
  const Workspace W(F, curves, a.cutoff);
  const CurveModel& E1 = W.curve(0);
  const int s1 = W.calibration(0).sign_base;
  const EulerContext same(E1, W.traces(0), E1, W.traces(0), W.sieve(), a.cutoff, threads);
  const PredictedMoment p1 = predicted_moment(MomentKind::First, same, E1, s1, E1, s1);
  const PredictedMoment p2 = predicted_moment(MomentKind::Second, same, E1, s1, E1, s1);
  json c = {{"c1", p1.constant}, {"c2", p2.constant}, {"c3", nullptr}, {"c4", nullptr}};
  json tails = {{"c1", p1.constant_tail}, {"c2", p2.constant_tail}, {"c3", nullptr}, {"c4", nullptr}};
  json excl = {{"c1", p1.exclusion}, {"c2", p2.exclusion}};
  json lsym = json::array({p1.l_values.at(0)}), lsym_t = json::array({p1.l_tails.at(0)});
  json lr = nullptr, lr_t = nullptr;
  json signs = json::array({s1});
  if (W.curve_count() == 2) {
    const CurveModel& E2 = W.curve(1);
    const int s2 = W.calibration(1).sign_base;
    signs.push_back(s2);
    const EulerContext pair(E1, W.traces(0), E2, W.traces(1), W.sieve(), a.cutoff, threads);
    const PredictedMoment p3 = predicted_moment(MomentKind::LLprime, pair, E1, s1, E2, s2);
    const PredictedMoment p4 = predicted_moment(MomentKind::LprimeLprime, pair, E1, s1, E2, s2);
    c["c3"] = p3.constant;
    c["c4"] = p4.constant;
    tails["c3"] = p3.constant_tail;
    tails["c4"] = p4.constant_tail;
    excl["c3"] = p3.exclusion;
    excl["c4"] = p4.exclusion;
    lsym.push_back(p3.l_values.at(1));
    lsym_t.push_back(p3.l_tails.at(1));
    lr = p3.l_values.at(2);
    lr_t = p3.l_tails.at(2);
  }
  json cs = json::array();
  for (const auto& E : curves) cs.push_back(E.equation());
  json job = {{"command", "constants"}, {"q", a.q}, {"curves", cs}, {"cutoff_B", a.cutoff}};
  json doc = {{"job", job}, {"B", a.cutoff}, {"sign_base", signs}};
  for (const auto& [k, v] : c.items()) doc[k] = v;
  doc["L_sym2"] = lsym;
  doc["L_rankin"] = lr;
  tails["L_sym2"] = lsym_t;
  tails["L_rankin"] = lr_t;
  doc["tail_bounds"] = tails;
  doc["exclusions"] = excl;
  write_text(a.out, dump(doc), out);
  return kOk;
}

// ---------------------------------------------------------------------------
// ranks

struct RanksArgs {
  long long q = 5;
  CurveSpec c1, c2;
  int g = 1;
  int threads = 0;
  CLI::Option* threads_opt = nullptr;
  bool force = false;
  double cost_cap = 1e11;
  std::string out;
};

int cmd_ranks(const RanksArgs& a, std::ostream& out) {
  const Field F = make_field(a.q);
  const int threads = resolve_threads(a.threads_opt, a.threads);
  if (a.g < 0) throw ValidationError("--g must be non-negative");
  std::vector<CurveModel> curves{load_curve(F, a.c1, "")};
  if (a.c2.given()) curves.push_back(load_curve(F, a.c2, "2"));
  std::vector<int> n_eff;
  int n_max = -1000;
  {
    const Workspace small(F, curves, 1);
    for (std::size_t i = 0; i < small.curve_count(); ++i) {
      n_eff.push_back(small.calibration(i).n_eff);
      n_max = std::max(n_max, n_eff.back());
    }
  }
  const double cost = moment_cost(F.p(), n_max, a.g);
  if (cost > a.cost_cap && !a.force)
    throw CostCapError("estimated " + fmt12(cost) + " symbol kernel calls exceeds the cap of " + fmt12(a.cost_cap) +
                       "; rerun with --force");
  const Workspace W(F, curves, moment_sieve_degree(curves, n_eff, a.g));
  json per_curve = json::array();
  std::uint64_t family_size = 0;
  for (std::size_t c = 0; c < W.curve_count(); ++c) {
    const auto fam = enumerate_family(F, a.g, W.family_delta());
    family_size = fam.size();
    std::vector<std::vector<std::uint64_t>> hist(threads);
    std::vector<std::string> errors(threads);
    std::vector<std::thread> pool;
    auto work = [&](int w) {
      try {
        auto [lo, hi] = shard_range(fam.size(), threads, w);
        for (std::size_t i = lo; i < hi; ++i) {
          const LPolynomial L = compute_l_polynomial(W.ctx(c), W.calibration(c), fam[i]);
          const int r = analytic_rank(L, F.p());
          if ((r % 2 == 0 ? 1 : -1) != L.epsilon)
            throw IntegrityError("rank parity violated for D = " + to_string(fam[i]));
          if (hist[w].size() <= static_cast<std::size_t>(r)) hist[w].resize(r + 1, 0);
          ++hist[w][r];
        }
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    };
    for (int w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (!e.empty()) throw IntegrityError(e);
    std::vector<std::uint64_t> total;
    for (const auto& h : hist) {
      if (h.size() > total.size()) total.resize(h.size(), 0);
      for (std::size_t r = 0; r < h.size(); ++r) total[r] += h[r];
    }
    json histogram = json::object();
    for (std::size_t r = 0; r < total.size(); ++r) histogram[std::to_string(r)] = total[r];
    per_curve.push_back({{"curve", W.curve(c).equation()},
                         {"sign_base", W.calibration(c).sign_base},
                         {"n_eff", W.calibration(c).n_eff},
                         {"histogram", histogram}});
  }
  json cs = json::array();
  for (const auto& E : curves) cs.push_back(E.equation());
  json job = {{"command", "ranks"}, {"q", a.q}, {"curves", cs}, {"g", a.g}, {"cost_cap", a.cost_cap}, {"force", a.force}};
  json doc = {{"job", job}, {"g", a.g}, {"family_size", family_size}, {"curves", per_curve}};
  if (W.curve_count() == 2) {
    MomentOptions o;
    o.kind = MomentKind::RankJoint;
    o.g = a.g;
    o.threads = threads;
    o.force = a.force;
    o.cost_cap = a.cost_cap;
    o.integrity_stride = 0;
    const MomentReport r = run_moment(W, o);
    doc["joint"] = {{"r1_0_r2_1", r.rank_r0_r1}, {"r1_1_r2_1", r.rank_r1_r1}};
  }
  write_text(a.out, dump(doc), out);
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  long long q = 5;
  std::string suite;
  CurveSpec c1, c2;
  int max_deg = -1, max_j = 4, max_m = 4, g_max = 1;
  int samples = 100;
  std::uint64_t seed = 20260101;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Field F = make_field(a.q);
  auto deg = [&](int dflt) { return a.max_deg >= 0 ? a.max_deg : dflt; };
  auto curve1 = [&] {
    if (a.c1.given()) return load_curve(F, a.c1, "");
    return parse_curve(F, kDefaultCurve);
  };
  auto curve2 = [&] {
    if (a.c2.given()) return load_curve(F, a.c2, "2");
    return parse_curve(F, kDefaultCurve2);
  };
  json job = {{"command", "verify"}, {"q", a.q}, {"suite", a.suite}};
  SuiteReport rep;
  if (a.suite == "gauss") {
    job["max_deg"] = deg(2);
    job["max_j"] = a.max_j;
    rep = verify_gauss_closed_forms(F, deg(2), a.max_j);
  } else if (a.suite == "poisson") {
    job["max_deg"] = deg(3);
    job["max_m"] = a.max_m;
    rep = verify_poisson_suite(F, deg(3), a.max_m);
  } else if (a.suite == "sumd") {
    const CurveModel E = curve1();
    job["curve"] = E.equation();
    job["max_deg"] = deg(4);
    job["g_max"] = a.g_max;
    rep = verify_sumd_suite(F, a.g_max, deg(4), E.delta);
  } else if (a.suite == "symbol") {
    job["max_deg"] = deg(4);
    rep = suites::symbol_suite(F, deg(4));
  } else if (a.suite == "euler") {
    const CurveModel E1 = curve1(), E2 = curve2();
    job["curves"] = {E1.equation(), E2.equation()};
    job["max_deg"] = deg(6);
    const Workspace W(F, {E1, E2}, deg(6));
    const EulerContext same(W.curve(0), W.traces(0), W.curve(0), W.traces(0), W.sieve(), deg(6));
    const EulerContext pair(W.curve(0), W.traces(0), W.curve(1), W.traces(1), W.sieve(), deg(6));
    rep = suites::euler_suite(same, pair, 1e-12);
  } else {
    const CurveModel E = curve1();
    job["curve"] = E.equation();
    job["g_max"] = a.g_max;
    if (a.g_max < 0) throw ValidationError("--g-max must be non-negative");
    if (a.g_max > 2) throw CostCapError("verify suites over twists are limited to --g-max <= 2");
    const suites::TwistSetup s = suites::make_oracle_setup(E, std::min(a.g_max, 1));
    if (a.suite == "fe") {
      rep = suites::fe_suite(s, a.g_max);
    } else if (a.suite == "central") {
      job["samples"] = a.samples;
      job["seed"] = a.seed;
      rep = suites::central_suite(s, std::min(a.g_max, 1), 2, a.g_max >= 2 ? a.samples : 0, a.seed);
    } else if (a.suite == "hasse") {
      job["max_deg"] = deg(4);
      rep = suites::hasse_suite(s, deg(4), a.g_max);
    } else if (a.suite == "rh") {
      rep = suites::rh_suite(s, a.g_max, 1e-6);
    } else {
      job["samples"] = a.samples;
      job["seed"] = a.seed;
      rep = suites::logbound_suite(s, a.g_max, a.samples, a.seed);
    }
  }
  write_text(a.out, dump(suite_json(rep, job)), out);
  return rep.failures() == 0 ? kOk : kIntegrity;
}

std::vector<std::string> suite_names() {
  return {"gauss", "poisson", "sumd", "symbol", "fe", "central", "hasse", "rh", "logbound", "euler"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic-twist L-function experiments over F_q(t)", "qtwist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  LpolyArgs lp;
  auto* s_lpoly = app.add_subcommand("lpoly", "L-polynomial of one quadratic twist");
  s_lpoly->add_option("--q", lp.q, "field size p")->capture_default_str();
  add_curve_options(s_lpoly, lp.c, "");
  s_lpoly->add_option("--D", lp.D, "monic square-free twist polynomial")->required();
  s_lpoly->add_flag("--oracle", lp.oracle, "compute every coefficient directly and check all relations");
  s_lpoly->add_flag("--force", lp.force, "allow large sieves");
  s_lpoly->add_option("--out", lp.out, "output path (stdout when omitted)");

  MomentArgs mo, tr;
  auto* s_moment = app.add_subcommand("moment", "family moment at one genus");
  add_moment_options(s_moment, mo, false);
  auto* s_trend = app.add_subcommand("trend", "family moments over a range of genera");
  add_moment_options(s_trend, tr, true);

  ConstArgs co;
  auto* s_const = app.add_subcommand("constants", "Euler-product constants and L-values at 1");
  s_const->add_option("--q", co.q, "field size p")->capture_default_str();
  add_curve_options(s_const, co.c1, "");
  add_curve_options(s_const, co.c2, "2");
  s_const->add_option("--cutoff", co.cutoff, "Euler product cutoff degree B")->capture_default_str();
  co.threads_opt = s_const->add_option("--threads", co.threads, "worker threads");
  s_const->add_option("--out", co.out, "output path (stdout when omitted)");

  VerifyArgs ve;
  auto* s_verify = app.add_subcommand("verify", "exact identity suites");
  s_verify->add_option("--suite", ve.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  s_verify->add_option("--q", ve.q, "field size p")->capture_default_str();
  add_curve_options(s_verify, ve.c1, "");
  add_curve_options(s_verify, ve.c2, "2");
  s_verify->add_option("--max-deg", ve.max_deg, "degree bound (suite default when omitted)");
  s_verify->add_option("--max-j", ve.max_j, "largest prime power for gauss")->capture_default_str();
  s_verify->add_option("--max-m", ve.max_m, "largest m for poisson")->capture_default_str();
  s_verify->add_option("--g-max", ve.g_max, "largest genus for twist suites")->capture_default_str();
  s_verify->add_option("--samples", ve.samples, "random samples")->capture_default_str();
  s_verify->add_option("--seed", ve.seed, "random seed")->capture_default_str();
  s_verify->add_option("--out", ve.out, "output path (stdout when omitted)");

  RanksArgs ra;
  auto* s_ranks = app.add_subcommand("ranks", "analytic rank distribution over a twist family");
  s_ranks->add_option("--q", ra.q, "field size p")->capture_default_str();
  add_curve_options(s_ranks, ra.c1, "");
  add_curve_options(s_ranks, ra.c2, "2");
  s_ranks->add_option("--g", ra.g, "family H*_{2g+1}")->capture_default_str();
  ra.threads_opt = s_ranks->add_option("--threads", ra.threads, "worker threads");
  s_ranks->add_flag("--force", ra.force, "run even when the cost model exceeds the cap");
  s_ranks->add_option("--cost-cap", ra.cost_cap, "cost cap in symbol kernel calls")->capture_default_str();
  s_ranks->add_option("--out", ra.out, "output path (stdout when omitted)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (s_lpoly->parsed()) return cmd_lpoly(lp, out);
    if (s_moment->parsed()) return cmd_moment(mo, false, out);
    if (s_trend->parsed()) return cmd_moment(tr, true, out);
    if (s_const->parsed()) return cmd_constants(co, out);
    if (s_verify->parsed()) return cmd_verify(ve, out);
    if (s_ranks->parsed()) return cmd_ranks(ra, out);
  } catch (const CostCapError& e) {
    err << "qtwist: cost cap: " << e.what() << "\n";
    return kCostCap;
  } catch (const std::length_error& e) {
    err << "qtwist: cost cap: " << e.what() << "\n";
    return kCostCap;
  } catch (const IntegrityError& e) {
    err << "qtwist: integrity failure: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::invalid_argument& e) {
    err << "qtwist: invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::out_of_range& e) {
    err << "qtwist: invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "qtwist: invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "qtwist: internal error: " << e.what() << "\n";
    return kIntegrity;
  }
  return kValidation;
}

}  // namespace qtw::cli
