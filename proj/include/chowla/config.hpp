#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "chowla/error.hpp"
#include "chowla/report.hpp"

namespace chowla {

/// Explicit stand-ins for the implied constants of the asymptotic statements.
struct Constants {
  double c1 = 4.0;     ///< |Q1| <= c1·(1̂_A + K)
  double c2 = 64.0;    ///< ‖Q2‖_∞ <= c2·K³
  double c3 = 128.0;   ///< cube inequality error term c3·K³
  double C_a = 256.0;  ///< X upper bracket
  double C_b = 256.0;  ///< X lower bracket
  double C_ap = 16.0;  ///< longest progression <= C_ap·K²
  double C_l1 = 8.0;   ///< ‖1̂_{B_t}‖₁ <= C_l1·‖1̂_A‖₁³
  double C_l1p = 8.0;  ///< antisymmetric parts <= C_l1p·K²

  /// Sets a constant by name; unknown names raise ParseError.
  void set(const std::string& name, double value) {
    auto& slot = lookup(name);
    slot = value;
  }
  double get(const std::string& name) const { return const_cast<Constants*>(this)->lookup(name); }

  json to_json() const {
    return json{{"c1", c1},     {"c2", c2},     {"c3", c3},     {"C_a", C_a},
                {"C_b", C_b},   {"C_ap", C_ap}, {"C_l1", C_l1}, {"C_l1p", C_l1p}};
  }

 private:
  double& lookup(const std::string& name) {
    static const std::map<std::string, double Constants::*> table{
        {"c1", &Constants::c1},   {"c2", &Constants::c2},     {"c3", &Constants::c3},
        {"C_a", &Constants::C_a}, {"C_b", &Constants::C_b},   {"C_ap", &Constants::C_ap},
        {"C", &Constants::C_ap},  {"C_l1", &Constants::C_l1}, {"C_l1p", &Constants::C_l1p},
        {"C'", &Constants::C_l1p}};
    auto it = table.find(name);
    if (it == table.end()) throw Error(ErrorCode::ParseError, "unknown constant '" + name + "'");
    return this->*(it->second);
  }
};

/// Numerical knobs shared by the checkers.
struct CheckOptions {
  double min_tol = 1e-9;      ///< radius target for minimum certificates
  double check_tol = 1e-6;    ///< slack tolerance for floating inequalities
  std::size_t grid_factor = 64;
  bool negate = false;        ///< flip every headline relation (harness self-test)
  Constants constants;

  json to_json() const {
    return json{{"min_tol", min_tol},
                {"check_tol", check_tol},
                {"grid_factor", grid_factor},
                {"negate", negate},
                {"constants", constants.to_json()}};
  }
};

}  // namespace chowla
