#pragma once

// chowla_lab command line: verify, kmin, brute, sidon, explore-t, report.
// Exit codes: 0 pass, 1 check failure, 2 usage or configuration error,
// 3 enumeration cap reached.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chowla/config.hpp"
#include "chowla/generators.hpp"
#include "chowla/gridfn.hpp"
#include "chowla/oracle.hpp"
#include "chowla/verify.hpp"

namespace chowla::cli {

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kCap = 3 };

struct RunConfig {
  std::string command;
  double tol = 1e-9;
  std::size_t grid_factor = 64;
  Constants constants;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;

  void validate() const {
    if (!(tol > 0.0)) throw Error(ErrorCode::ParseError, "tol must be positive");
    if (grid_factor < 16) throw Error(ErrorCode::ParseError, "grid-factor must be at least 16");
    if (jobs < 1) throw Error(ErrorCode::ParseError, "jobs must be at least 1");
  }

  CheckOptions check_options() const {
    CheckOptions o;
    o.min_tol = tol;
    o.grid_factor = grid_factor;
    o.constants = constants;
    return o;
  }

  json to_json() const {
    return json{{"command", command}, {"tol", tol},   {"grid_factor", grid_factor}, {"constants", constants.to_json()},
                {"seed", seed},       {"jobs", jobs}, {"out", out}};
  }
};

/// Canonical checker ids and the grouped names accepted by --suite.
inline const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{
      "min_to_l1", "conv_min", "kconv",      "roth",           "ruzsa",        "ap_bound",
      "ft_gt",     "cube",     "bt_lower",   "hh",             "l1_bound",     "q1q2",
      "x_bounds",  "general_lambda", "general_cube", "vandermonde", "holder"};
  return ids;
}

inline const std::map<std::string, std::vector<std::string>>& suite_aliases() {
  static const std::map<std::string, std::vector<std::string>> aliases{
      {"calculus", {"min_to_l1", "conv_min", "kconv"}},
      {"lemma3", {"min_to_l1", "conv_min", "kconv"}},
      {"lemma3.2", {"min_to_l1"}},
      {"lemma3.3", {"conv_min"}},
      {"lemma3.4", {"kconv"}},
      {"additive", {"roth", "ruzsa", "ap_bound"}},
      {"lemma4", {"roth", "ruzsa", "ap_bound"}},
      {"lemma4.1", {"roth"}},
      {"lemma4.2", {"ruzsa"}},
      {"cor4.3", {"ap_bound"}},
      {"pipeline", {"ft_gt", "cube", "bt_lower", "hh", "l1_bound"}},
      {"lemma5", {"ft_gt", "cube", "bt_lower", "hh", "l1_bound"}},
      {"lemma5.1", {"ft_gt"}},
      {"prop5.2", {"cube"}},
      {"lemma5.3", {"bt_lower"}},
      {"prop5.4", {"hh"}},
      {"lemma5.5", {"l1_bound"}},
      {"general", {"general_lambda", "general_cube", "vandermonde", "holder"}},
      {"claim6.4", {"general_lambda"}},
      {"claim6.5", {"general_cube"}},
      {"claim6.6", {"vandermonde"}},
      {"lemma6.7", {"holder"}},
      {"refined", {"q1q2", "x_bounds"}},
      {"lemma7.1", {"q1q2"}},
      {"lemma7.2", {"l1_bound"}},
      {"xbounds", {"x_bounds"}}};
  return aliases;
}

inline std::vector<std::string> resolve_suites(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  auto push = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  const auto& ids = suite_ids();
  for (const auto& item : requested) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      if (name == "all") {
        for (const auto& id : ids) push(id);
      } else if (std::find(ids.begin(), ids.end(), name) != ids.end()) {
        push(name);
      } else if (auto it = suite_aliases().find(name); it != suite_aliases().end()) {
        for (const auto& id : it->second) push(id);
      } else {
        throw Error(ErrorCode::ParseError, "unknown suite '" + name + "'");
      }
    }
  }
  return out;
}

namespace detail {

/// Splits a set into two disjoint symmetric parts by its positive half.
inline std::vector<GeneralCosinePoly::Part> split_parts(const SymSet& a, double s1, double s2) {
  const auto pos = a.positive_half().vec();
  if (pos.size() < 2) return {{s1, a}};
  const std::size_t cut = (pos.size() + 1) / 2;
  std::vector<Int> p1(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<Int> p2(pos.begin() + static_cast<std::ptrdiff_t>(cut), pos.end());
  return {{s1, SymSet::from_positive(IntSet(std::move(p1)))}, {s2, SymSet::from_positive(IntSet(std::move(p2)))}};
}

inline Int pick_shift(const SymSet& a, Int t_flag) {
  if (t_flag != 0) return t_flag;
  return max_overlap_shift(a.set()).first;
}

}  // namespace detail

/// Runs one checker on one set; polynomial suites also take a partner set.
inline LemmaReport run_set_check(const std::string& id, const SymSet& a, const SymSet& partner, Int t_flag,
                                 const CheckOptions& o) {
  const Int t = detail::pick_shift(a, t_flag);
  if (id == "min_to_l1") return check_min_to_l1(indicator(a.set()), o);
  if (id == "conv_min") return check_conv_min(indicator(a.set()), indicator(partner.set()), o);
  if (id == "kconv") return check_kconv(indicator(a.set()), indicator(partner.set()), o);
  if (id == "roth") {
    const double k = min_norm(indicator(a.set()), o.min_tol).norm_upper();
    return check_roth(a, a.set(), k, o);
  }
  if (id == "ruzsa") {
    const RuzsaWitness w = ap_witness(a);
    if (w.d == 0) {
      LemmaReport r;
      r.lemma_id = "ruzsa_witness";
      r.inputs = json{{"A", a.set().vec()}};
      r.mark_vacuous("no progression of length 2");
      return r;
    }
    return check_ruzsa_witness(a, w.u, w.v, w.d, o);
  }
  if (id == "ap_bound") return check_ap_bound(a, o);
  if (id == "ft_gt") return build_ft_gt(a, t, o).report;
  if (id == "cube") return check_cube_inequality(a, t, o);
  if (id == "bt_lower") return bt_lower_bound_check(a, t, longest_ap(a.set()).length);
  if (id == "hh") {
    const double k = min_norm(indicator(a.set()), o.min_tol).norm_upper();
    const HhInstance h = cube_hh_instance(a, t, k, o.constants);
    LemmaReport r = check_hh_trick(h.p1, h.p2, h.b, h.c, h.l, o);
    r.inputs["A"] = a.set().vec();
    r.inputs["t"] = t;
    return r;
  }
  if (id == "l1_bound") return check_l1_bound(a, t, o);
  if (id == "q1q2") {
    const double k = min_norm(indicator(a.set()), o.min_tol).norm_upper();
    return q1_q2_decompose(a, t, k, decomposition_grid(a, t), o.constants, o.min_tol).report;
  }
  if (id == "x_bounds") return check_x_bounds(a, t, o);
  if (id == "general_lambda") {
    return build_general_Ft(GeneralCosinePoly(detail::split_parts(a, 1.0, 1.0 / 2000.0)), t, o).report;
  }
  if (id == "general_cube") return check_general_cube(GeneralCosinePoly(detail::split_parts(a, 1.0, 1.0 / 2000.0)), t, o);
  if (id == "vandermonde") return check_vandermonde_extraction(GeneralCosinePoly(detail::split_parts(a, 1.0, 0.5)), o);
  if (id == "holder") return check_holder_energy(a, norms(indicator(a.set())).l1 * (1.0 + 1e-6), o);
  throw Error(ErrorCode::ParseError, "unknown suite '" + id + "'");
}

inline bool is_poly_suite(const std::string& id) { return id == "min_to_l1" || id == "conv_min" || id == "kconv"; }

namespace detail {

struct Sink {
  std::ostream* os = nullptr;
  std::unique_ptr<std::ofstream> file;

  Sink(const std::string& path, std::ostream& fallback, bool append = false) {
    if (path.empty()) {
      os = &fallback;
    } else {
      file = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
      if (!*file) throw Error(ErrorCode::ParseError, "cannot open output '" + path + "'");
      os = file.get();
    }
  }
  std::ostream& operator*() { return *os; }
};

inline std::pair<Int, Int> parse_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      const Int v = std::stoll(s);
      return {v, v};
    }
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "bad range '" + s + "'");
  }
}

}  // namespace detail

struct Instances {
  std::vector<std::string> labels;
  std::vector<SymSet> sets;
};

inline Instances gather_sets(const std::vector<std::string>& specs, const std::vector<std::size_t>& sidon, Rng& rng) {
  Instances in;
  for (const auto& s : specs) {
    in.sets.push_back(parse_set_spec(s, rng));
    in.labels.push_back(s);
  }
  for (std::size_t m : sidon) {
    in.sets.push_back(sidon_difference_construction(m));
    in.labels.push_back("sidon:" + std::to_string(m));
  }
  return in;
}

inline int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& suites, const Instances& given,
                      std::size_t random_count, Int t_flag, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> ids = resolve_suites(suites.empty() ? std::vector<std::string>{"all"} : suites);
  Rng rng(cfg.seed);
  Instances inst = given;
  const bool defaults = inst.sets.empty();
  if (defaults) {
    for (std::size_t m : {3, 4, 5}) {
      inst.sets.push_back(sidon_difference_construction(m));
      inst.labels.push_back("sidon:" + std::to_string(m));
    }
    inst.sets.push_back(parse_set_spec("ap:8", rng));
    inst.labels.push_back("ap:8");
    for (std::size_t i = 0; i < random_count; ++i) {
      inst.sets.push_back(random_symmetric(rng, 8));
      inst.labels.push_back("random#" + std::to_string(i));
    }
  }
  const CheckOptions o = cfg.check_options();
  const json config = cfg.to_json();
  std::size_t failures = 0, total = 0, vacuous = 0;

  auto emit = [&](const std::string& id, const std::string& label, const std::function<LemmaReport()>& fn) {
    ++total;
    json line{{"suite", id}, {"instance", label}, {"config", config}};
    try {
      const LemmaReport r = fn();
      line["report"] = r;
      if (r.vacuous) ++vacuous;
      if (!r.ok()) ++failures;
    } catch (const Error& e) {
      line["error"] = json{{"code", to_string(e.code())}, {"message", e.what()}};
      ++failures;
    }
    out << line.dump() << '\n';
  };

  for (const auto& id : ids) {
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
      const SymSet& partner = inst.sets[(i + 1) % inst.sets.size()];
      emit(id, inst.labels[i], [&] { return run_set_check(id, inst.sets[i], partner, t_flag, o); });
    }
    if (is_poly_suite(id) && defaults) {
      Rng prng(cfg.seed + 7919);
      for (std::size_t i = 0; i < random_count; ++i) {
        std::uniform_int_distribution<Int> deg(1, 64);
        const ComplexPoly f = random_real_poly(prng, deg(prng));
        const ComplexPoly g = random_real_poly(prng, deg(prng));
        const std::string label = "poly#" + std::to_string(i);
        if (id == "min_to_l1") emit(id, label, [&] { return check_min_to_l1(f, o); });
        if (id == "conv_min") emit(id, label, [&] { return check_conv_min(f, g, o); });
        if (id == "kconv") emit(id, label, [&] { return check_kconv(f, g, o); });
      }
    }
  }
  err << "verify: " << total << " checks, " << failures << " failed, " << vacuous << " vacuous\n";
  return failures == 0 ? kPass : kFail;
}

inline int cmd_kmin(const RunConfig& cfg, const Instances& inst, std::ostream& out) {
  if (inst.sets.empty()) throw Error(ErrorCode::ParseError, "kmin needs --set or --sidon");
  const json config = cfg.to_json();
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    const SymSet& a = inst.sets[i];
    const MinCertificate c = min_norm(indicator(a.set()), cfg.tol);
    out << json{{"instance", inst.labels[i]},
                {"config", config},
                {"set", a.set().vec()},
                {"certificate", c},
                {"min", c.lower},
                {"norm_min", c.norm_upper()},
                {"norm_min_lower", c.norm_lower()},
                {"convention", "symmetric"},
                {"k_cos", c.norm_upper() / 2.0}}
               .dump()
        << '\n';
  }
  return kPass;
}

inline int cmd_brute(const RunConfig& cfg, const std::string& n_spec, const std::string& m_spec, std::uint64_t cap,
                     bool resume, std::ostream& out) {
  const auto [n_lo, n_hi] = detail::parse_range(n_spec);
  const auto [m_lo, m_hi] = detail::parse_range(m_spec);
  if (n_lo < 1 || n_hi < n_lo || m_hi < m_lo) throw Error(ErrorCode::ParseError, "bad --n/--M ranges");
  BruteOptions bo;
  bo.tol = cfg.tol;
  bo.cap = cap;
  bo.jobs = cfg.jobs;
  bo.resume = resume;
  if (const char* cache = std::getenv("CHOWLA_LAB_CACHE"); cache && *cache) bo.cache_dir = cache;

  const bool as_json = cfg.out.size() >= 5 && (cfg.out.ends_with(".json") || cfg.out.ends_with(".jsonl"));
  const bool fresh_file = cfg.out.empty() || !std::filesystem::exists(cfg.out);
  detail::Sink sink(cfg.out, out, true);
  if (!as_json && fresh_file) *sink << csv_header() << '\n';
  bool capped = false;
  for (Int n = n_lo; n <= n_hi; ++n) {
    for (Int m = std::max(m_lo, n); m <= m_hi; ++m) {
      const FrontierEntry e = brute_k(static_cast<std::size_t>(n), m, bo);
      capped = capped || e.partial;
      if (as_json) {
        json j = to_json(e);
        j["config"] = cfg.to_json();
        *sink << j.dump() << '\n';
      } else {
        *sink << to_csv(e) << '\n';
      }
    }
  }
  return capped ? kCap : kPass;
}

inline int cmd_sidon(const RunConfig& cfg, const std::vector<std::size_t>& ms, std::ostream& out) {
  std::vector<std::size_t> list = ms;
  if (list.empty())
    for (std::size_t m = 2; m <= 10; ++m) list.push_back(m);
  const json config = cfg.to_json();
  bool ok = true;
  for (std::size_t m : list) {
    const SidonReport s = sidon_upper_experiment(m, cfg.tol);
    ok = ok && s.report.ok();
    out << json{{"m", m}, {"config", config}, {"report", s.report}}.dump() << '\n';
  }
  return ok ? kPass : kFail;
}

inline int cmd_explore(const RunConfig& cfg, const Instances& inst, Int m_param, Int l_flag, std::ostream& out) {
  if (inst.sets.empty()) throw Error(ErrorCode::ParseError, "explore-t needs --set or --sidon");
  const json config = cfg.to_json();
  bool ok = true;
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    const SymSet& a = inst.sets[i];
    const Int l = l_flag > 0 ? l_flag : (a.empty() ? 1 : static_cast<Int>(longest_ap(a.set()).length));
    const PrimeSearch ps = prime_product_t_search(a, m_param, l);
    ok = ok && ps.all_hold();
    json trace = json::array();
    for (const auto& s : ps.trace) trace.push_back(to_json(s));
    out << json{{"instance", inst.labels[i]}, {"config", config}, {"M_param", m_param}, {"L", l},
                {"t0", ps.t0},   {"t", ps.t},    {"B_t_size", ps.b_size}, {"explored", ps.explored},
                {"capped", ps.capped}, {"all_hold", ps.all_hold()}, {"trace", trace}}
               .dump()
        << '\n';
  }
  return ok ? kPass : kFail;
}

inline int cmd_report(const std::vector<std::string>& inputs, std::ostream& out) {
  if (inputs.empty()) throw Error(ErrorCode::ParseError, "report needs at least one JSON Lines file");
  struct Tally {
    std::size_t pass = 0, fail = 0, vacuous = 0, error = 0;
    double max_constant = 0.0;
    bool has_constant = false;
  };
  std::map<std::string, Tally> tallies;
  std::size_t lines = 0;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ++lines;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception&) {
        throw Error(ErrorCode::ParseError, path + ": line " + std::to_string(lines) + " is not JSON");
      }
      const std::string key = j.value("suite", j.contains("report") ? j["report"].value("lemma_id", "?") : "?");
      Tally& t = tallies[key];
      if (j.contains("error")) {
        ++t.error;
        continue;
      }
      if (!j.contains("report")) continue;
      const json& r = j["report"];
      if (r.value("vacuous", false)) ++t.vacuous;
      if (r.value("all_pass", false)) ++t.pass; else ++t.fail;
      if (r.contains("observed_min_constant") && r["observed_min_constant"].is_number()) {
        t.max_constant = std::max(t.max_constant, r["observed_min_constant"].get<double>());
        t.has_constant = true;
      }
    }
  }
  json summary = json::object();
  bool ok = true;
  for (const auto& [k, t] : tallies) {
    summary[k] = json{{"pass", t.pass}, {"fail", t.fail}, {"vacuous", t.vacuous}, {"error", t.error},
                      {"max_observed_constant", t.has_constant ? json(t.max_constant) : json(nullptr)}};
    ok = ok && t.fail == 0 && t.error == 0;
  }
  out << json{{"lines", lines}, {"suites", summary}, {"all_pass", ok}}.dump(2) << '\n';
  return ok ? kPass : kFail;
}

/// Entry point; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified checks and experiments for the cosine-sum minimum problem", "chowla_lab"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> suites, sets, consts, inputs;
  std::vector<std::size_t> sidon;
  std::string n_spec = "1", m_spec = "10";
  Int t_flag = 0, l_flag = 0, m_param = 3;
  std::size_t random_count = 8;
  std::uint64_t cap = 100'000'000;
  bool resume = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "certificate radius target");
    sub->add_option("--grid-factor", cfg.grid_factor, "grid points per unit degree");
    sub->add_option("--const", consts, "override a constant, NAME=VALUE");
    sub->add_option("--seed", cfg.seed, "seed for generated instances");
    sub->add_option("--jobs", cfg.jobs, "worker threads");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };
  auto set_flags = [&](CLI::App* sub) {
    sub->add_option("--set,--sets", sets, "JSON array or generator sidon:m, ap:k, random:h (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("--sidon", sidon, "Sidon difference set of size m² - m");
  };

  CLI::App* verify = app.add_subcommand("verify", "run checkers and emit JSON Lines reports");
  common(verify);
  set_flags(verify);
  verify->add_option("--suite", suites, "checker ids or groups (comma separated)");
  verify->add_option("--t", t_flag, "shift (default: the shift of largest overlap)");
  verify->add_option("--n", random_count, "number of random instances");

  CLI::App* kmin = app.add_subcommand("kmin", "certify the minimum of the indicator polynomial");
  common(kmin);
  set_flags(kmin);

  CLI::App* brute = app.add_subcommand("brute", "exhaustive frontier K(n, M)");
  common(brute);
  brute->add_option("--n", n_spec, "set size or range a..b")->required();
  brute->add_option("--M", m_spec, "largest element or range a..b")->required();
  brute->add_option("--cap", cap, "enumeration cap");
  brute->add_flag("--resume", resume, "reuse chunk checkpoints from CHOWLA_LAB_CACHE");

  CLI::App* sidon_cmd = app.add_subcommand("sidon", "Sidon difference upper-bound experiment");
  common(sidon_cmd);
  sidon_cmd->add_option("--sidon,--m", sidon, "Sidon set sizes (default 2..10)");

  CLI::App* explore = app.add_subcommand("explore-t", "prime-product shift search");
  common(explore);
  set_flags(explore);
  explore->add_option("--M", m_param, "prime bound M");
  explore->add_option("--L", l_flag, "L in the overlap inequality (default: longest progression)");

  CLI::App* report = app.add_subcommand("report", "summarize JSON Lines reports");
  report->add_option("inputs", inputs, "report files")->required();
  report->add_option("--out", cfg.out, "output path (default stdout)");

  std::vector<std::string> argv_store{"chowla_lab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    for (const auto& c : consts) {
      const auto eq = c.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--const expects NAME=VALUE");
      double v = 0.0;
      try {
        v = std::stod(c.substr(eq + 1));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "bad value in --const " + c);
      }
      if (!(v > 0.0)) throw Error(ErrorCode::ParseError, "constants must be positive");
      cfg.constants.set(c.substr(0, eq), v);
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.validate();
    Rng rng(cfg.seed);

    if (cfg.command == "report") {
      detail::Sink sink(cfg.out, out);
      return cmd_report(inputs, *sink);
    }
    if (cfg.command == "brute") return cmd_brute(cfg, n_spec, m_spec, cap, resume, out);

    const Instances inst = gather_sets(sets, cfg.command == "sidon" ? std::vector<std::size_t>{} : sidon, rng);
    detail::Sink sink(cfg.out, out);
    if (cfg.command == "verify") return cmd_verify(cfg, suites, inst, random_count, t_flag, *sink, err);
    if (cfg.command == "kmin") return cmd_kmin(cfg, inst, *sink);
    if (cfg.command == "sidon") return cmd_sidon(cfg, sidon, *sink);
    if (cfg.command == "explore-t") return cmd_explore(cfg, inst, m_param, l_flag, *sink);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace chowla::cli
