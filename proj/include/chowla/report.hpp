#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace chowla {

using json = nlohmann::ordered_json;

/// Certified bracket for the global minimum of a real trigonometric polynomial:
/// the minimum lies in [lower, lower + radius] and the polynomial evaluates to
/// lower + radius at argmin.
struct MinCertificate {
  double lower = 0.0;
  double argmin = 0.0;
  double radius = 0.0;
  std::uint64_t grid_size = 0;
  std::uint64_t evaluations = 0;  ///< point evaluations spent in refinement
  bool mean_zero = true;          ///< false: plain global minimum, not ‖·‖_min
  bool converged = true;

  double upper() const { return lower + radius; }
  /// Bounds for ‖g‖_min = -min g.
  double norm_upper() const { return -lower; }
  double norm_lower() const { return -(lower + radius); }
};

inline void to_json(json& j, const MinCertificate& c) {
  j = json{{"lower", c.lower},         {"argmin", c.argmin},       {"radius", c.radius},
           {"grid_size", c.grid_size}, {"evaluations", c.evaluations}, {"mean_zero", c.mean_zero},
           {"converged", c.converged}};
}

inline void from_json(const json& j, MinCertificate& c) {
  c.lower = j.at("lower").get<double>();
  c.argmin = j.at("argmin").get<double>();
  c.radius = j.at("radius").get<double>();
  c.grid_size = j.at("grid_size").get<std::uint64_t>();
  c.evaluations = j.value("evaluations", std::uint64_t{0});
  c.mean_zero = j.value("mean_zero", true);
  c.converged = j.value("converged", true);
}

enum class Relation { LessEq, GreaterEq };

inline const char* to_string(Relation r) { return r == Relation::LessEq ? "<=" : ">="; }
inline Relation flipped(Relation r) { return r == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq; }

/// One named inequality (or identity, with relation LessEq on an error term).
struct SubCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::LessEq;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = true;

  static SubCheck make(std::string name, double lhs, Relation rel, double rhs, double tol) {
    SubCheck s;
    s.name = std::move(name);
    s.lhs = lhs;
    s.rhs = rhs;
    s.relation = rel;
    s.slack = rel == Relation::LessEq ? rhs - lhs : lhs - rhs;
    s.tolerance = tol;
    s.pass = s.slack >= -tol;
    return s;
  }

  /// An exact (zero-tolerance) yes/no assertion.
  static SubCheck exact(std::string name, bool holds) {
    return make(std::move(name), holds ? 0.0 : 1.0, Relation::LessEq, 0.0, 0.0);
  }
};

inline void to_json(json& j, const SubCheck& s) {
  j = json{{"name", s.name}, {"lhs", s.lhs},   {"relation", to_string(s.relation)}, {"rhs", s.rhs},
           {"slack", s.slack}, {"tolerance", s.tolerance}, {"pass", s.pass}};
}

/// Pass/fail record for one inequality check.
///
/// `pass` refers to the headline inequality only (pass ⇔ slack ≥ -tolerance);
/// auxiliary assertions live in `subchecks` and `ok()` folds everything.
struct LemmaReport {
  std::string lemma_id;
  json inputs = json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::LessEq;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  bool vacuous = false;
  json constants_used = json::object();
  std::optional<double> observed_min_constant;
  std::vector<MinCertificate> certificates;
  std::string provenance;
  std::vector<SubCheck> subchecks;
  json extra = json::object();

  void set_inequality(double l, Relation rel, double r, double tol) {
    lhs = l;
    rhs = r;
    relation = rel;
    tolerance = tol;
    slack = rel == Relation::LessEq ? r - l : l - r;
    pass = slack >= -tol;
  }

  void mark_vacuous(const std::string& reason) {
    vacuous = true;
    set_inequality(0.0, Relation::LessEq, 0.0, tolerance);
    extra["vacuous_reason"] = reason;
  }

  SubCheck& add(SubCheck s) {
    subchecks.push_back(std::move(s));
    return subchecks.back();
  }

  bool ok() const {
    if (!pass) return false;
    for (const auto& s : subchecks)
      if (!s.pass) return false;
    return true;
  }
};

inline void to_json(json& j, const LemmaReport& r) {
  j = json{{"lemma_id", r.lemma_id},
           {"inputs", r.inputs},
           {"lhs", r.lhs},
           {"relation", to_string(r.relation)},
           {"rhs", r.rhs},
           {"slack", r.slack},
           {"tolerance", r.tolerance},
           {"pass", r.pass},
           {"vacuous", r.vacuous},
           {"constants_used", r.constants_used},
           {"observed_min_constant", r.observed_min_constant ? json(*r.observed_min_constant) : json(nullptr)},
           {"certificates", r.certificates},
           {"provenance", r.provenance},
           {"subchecks", r.subchecks},
           {"all_pass", r.ok()}};
  if (!r.extra.empty()) j["extra"] = r.extra;
}

}  // namespace chowla
