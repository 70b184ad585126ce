#pragma once

// Seeded instance generators shared by the command line and the test suite.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "chowla/error.hpp"
#include "chowla/setcore.hpp"
#include "chowla/trigpoly.hpp"

namespace chowla {

using Rng = std::mt19937_64;

/// Symmetric set whose positive half is a uniform `half`-subset of [1..range].
inline SymSet random_symmetric(Rng& rng, std::size_t half, Int range) {
  if (range < static_cast<Int>(half)) range = static_cast<Int>(half);
  std::vector<Int> pool(static_cast<std::size_t>(range));
  for (Int i = 0; i < range; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  for (std::size_t i = 0; i < half; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(half);
  return SymSet::from_positive(IntSet(std::move(pool)));
}

/// Random symmetric set with 1..max_half positive elements in [1..3·half].
inline SymSet random_symmetric(Rng& rng, std::size_t max_half) {
  std::uniform_int_distribution<std::size_t> h(1, std::max<std::size_t>(1, max_half));
  const std::size_t half = h(rng);
  return random_symmetric(rng, half, static_cast<Int>(3 * half));
}

/// Real mean-zero polynomial of the given degree with Gaussian coefficients;
/// each frequency in [1, degree) is present with probability `density`.
inline ComplexPoly random_real_poly(Rng& rng, Int degree, double density = 0.5) {
  std::normal_distribution<double> g;
  std::bernoulli_distribution keep(density);
  ComplexPoly::map_type c;
  for (Int m = 1; m <= degree; ++m) {
    if (m < degree && !keep(rng)) continue;
    const cplx v(g(rng), g(rng));
    c.emplace(m, v);
    c.emplace(-m, std::conj(v));
  }
  return ComplexPoly(std::move(c));
}

/// Integer-valued variant: the indicator of a random symmetric set.
inline ExactPoly random_indicator(Rng& rng, std::size_t max_half) { return indicator(random_symmetric(rng, max_half).set()); }

/// Parses "[a, b, ...]" (JSON array), "sidon:m", "ap:k" (= ±{1..k}) or
/// "random:h" (h positive elements from [1..3h], drawn from rng).
inline SymSet parse_set_spec(const std::string& spec, Rng& rng) {
  auto number_after = [&](std::size_t pos) -> long long {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(spec.substr(pos), &used);
      if (pos + used != spec.size() || v < 1) throw Error(ErrorCode::ParseError, "bad generator size");
      return v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bad generator '" + spec + "'");
    }
  };
  if (spec.rfind("sidon:", 0) == 0) return sidon_difference_construction(static_cast<std::size_t>(number_after(6)));
  if (spec.rfind("ap:", 0) == 0) {
    std::vector<Int> v;
    for (Int i = 1; i <= number_after(3); ++i) v.push_back(i);
    return SymSet::from_positive(IntSet(std::move(v)));
  }
  if (spec.rfind("random:", 0) == 0) {
    const auto h = static_cast<std::size_t>(number_after(7));
    return random_symmetric(rng, h, static_cast<Int>(3 * h));
  }
  json j;
  try {
    j = json::parse(spec);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("set is neither a JSON array nor a generator: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "set must be a JSON array");
  std::vector<Int> raw;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, "set elements must be integers");
    raw.push_back(v.get<Int>());
  }
  return SymSet::make(std::move(raw));
}

}  // namespace chowla
