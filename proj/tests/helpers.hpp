#pragma once

#include <vector>

#include "chowla/chowla.hpp"
#include "oracles.hpp"

namespace testutil {

inline oracle::Set to_oracle(const chowla::IntSet& s) { return oracle::Set(s.begin(), s.end()); }

inline std::vector<long long> vec(const chowla::IntSet& s) { return {s.begin(), s.end()}; }

inline oracle::Coeffs to_oracle(const chowla::ComplexPoly& f) {
  oracle::Coeffs c;
  for (const auto& [m, v] : f.coeffs()) c[m] = v;
  return c;
}

inline oracle::Coeffs to_oracle(const chowla::ExactPoly& f) { return to_oracle(f.to_complex()); }

}  // namespace testutil
