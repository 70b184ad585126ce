#pragma once

// Exact arithmetic on finite integer sets: symmetric Fourier supports,
// the shifted/derived sets built from them, AP structure and additive energy.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chowla/error.hpp"
#include "chowla/report.hpp"

namespace chowla {

using Int = std::int64_t;

/// Sorted, duplicate-free set of integers.
class IntSet {
 public:
  IntSet() = default;
  IntSet(std::initializer_list<Int> values) : IntSet(std::vector<Int>(values)) {}
  explicit IntSet(std::vector<Int> values) : elems_(std::move(values)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  std::span<const Int> elements() const noexcept { return elems_; }
  const std::vector<Int>& vec() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  Int min() const { return elems_.front(); }
  Int max() const { return elems_.back(); }

  bool contains(Int v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }

  /// Largest absolute value, 0 for the empty set.
  Int degree() const {
    if (elems_.empty()) return 0;
    return std::max(std::abs(elems_.front()), std::abs(elems_.back()));
  }

  IntSet shifted(Int t) const {
    std::vector<Int> out(elems_);
    for (auto& v : out) v += t;
    return from_sorted(std::move(out));
  }

  IntSet negated() const {
    std::vector<Int> out(elems_.rbegin(), elems_.rend());
    for (auto& v : out) v = -v;
    return from_sorted(std::move(out));
  }

  /// Dilation v -> c*v for c >= 1.
  IntSet dilated(Int c) const {
    std::vector<Int> out(elems_);
    for (auto& v : out) v *= c;
    return from_sorted(std::move(out));
  }

  bool is_subset_of(const IntSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
  }

  friend IntSet operator|(const IntSet& a, const IntSet& b) {
    std::vector<Int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }
  friend IntSet operator&(const IntSet& a, const IntSet& b) {
    std::vector<Int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }
  friend IntSet operator-(const IntSet& a, const IntSet& b) {
    std::vector<Int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }
  friend IntSet operator^(const IntSet& a, const IntSet& b) {
    std::vector<Int> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }
  friend bool operator==(const IntSet&, const IntSet&) = default;
  friend auto operator<=>(const IntSet& a, const IntSet& b) { return a.elems_ <=> b.elems_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(elems_[i]);
    }
    return s + "]";
  }

 private:
  static IntSet from_sorted(std::vector<Int> v) {
    IntSet s;
    s.elems_ = std::move(v);
    return s;
  }

  std::vector<Int> elems_;
};

/// Finite symmetric set A = -A of nonzero integers.
class SymSet {
 public:
  SymSet() = default;

  static SymSet make(std::vector<Int> raw) {
    IntSet s(std::move(raw));
    if (s.contains(0)) throw Error(ErrorCode::ContainsZero, "0 in " + s.to_string());
    for (Int a : s) {
      if (!s.contains(-a)) {
        throw Error(ErrorCode::NotSymmetric, std::to_string(a) + " present without its negative");
      }
    }
    return SymSet(std::move(s));
  }

  /// B ∪ (-B) for a set B of distinct positive integers.
  static SymSet from_positive(std::span<const Int> positives) {
    std::vector<Int> raw;
    raw.reserve(2 * positives.size());
    for (Int b : positives) {
      if (b <= 0) throw Error(ErrorCode::NonPositiveElement, std::to_string(b));
      raw.push_back(b);
      raw.push_back(-b);
    }
    return SymSet(IntSet(std::move(raw)));
  }
  static SymSet from_positive(const IntSet& positives) { return from_positive(positives.elements()); }

  const IntSet& set() const noexcept { return set_; }
  operator const IntSet&() const noexcept { return set_; }  // NOLINT(google-explicit-constructor)
  std::size_t size() const noexcept { return set_.size(); }
  bool empty() const noexcept { return set_.empty(); }
  bool contains(Int v) const { return set_.contains(v); }
  auto begin() const noexcept { return set_.begin(); }
  auto end() const noexcept { return set_.end(); }
  Int degree() const { return set_.degree(); }

  /// Positive half B with A = B ∪ -B.
  IntSet positive_half() const {
    std::vector<Int> out;
    for (Int a : set_) if (a > 0) out.push_back(a);
    return IntSet(std::move(out));
  }

  SymSet dilated(Int c) const { return SymSet(set_.dilated(c)); }

  friend bool operator==(const SymSet&, const SymSet&) = default;

 private:
  explicit SymSet(IntSet s) : set_(std::move(s)) {}
  IntSet set_;
};

inline SymSet make_symset(std::vector<Int> raw) { return SymSet::make(std::move(raw)); }
inline SymSet from_positive(const IntSet& positives) { return SymSet::from_positive(positives); }

/// Sets obtained from a symmetric A and a shift t.
struct DerivedSets {
  IntSet a_t;  ///< A ∩ (A+t)
  IntSet b_t;  ///< A_t \ (-A_t)
  IntSet c_t;  ///< (A+t) \ (A ∪ (A-t))
  IntSet d_t;  ///< A \ (A_t Δ -A_t)
  IntSet e_t;  ///< (A ∪ (A+t) ∪ (A-t)) minus the five sets above
};

namespace detail {
inline void require_shift(Int t) {
  if (t == 0) throw Error(ErrorCode::ZeroShift, "shift t must be nonzero");
}

inline bool pairwise_disjoint(std::initializer_list<const IntSet*> sets) {
  std::size_t total = 0;
  IntSet all;
  for (const IntSet* s : sets) {
    total += s->size();
    all = all | *s;
  }
  return all.size() == total;
}
}  // namespace detail

/// The residual-support construction uses `support` (the full spectrum) for E_t
/// while A_t..D_t come from `core`; for the plain case both are A.
inline DerivedSets derived_sets(const IntSet& core, const IntSet& support, Int t) {
  detail::require_shift(t);
  DerivedSets d;
  const IntSet plus = core.shifted(t);
  const IntSet minus = core.shifted(-t);
  d.a_t = core & plus;
  const IntSet neg_a_t = d.a_t.negated();
  d.b_t = d.a_t - neg_a_t;
  d.c_t = plus - (core | minus);
  d.d_t = core - (d.a_t ^ neg_a_t);
  const IntSet covered = d.b_t | d.b_t.negated() | d.c_t | d.c_t.negated() | d.d_t;
  d.e_t = (support | support.shifted(t) | support.shifted(-t)) - covered;

  const IntSet neg_b = d.b_t.negated();
  const IntSet neg_c = d.c_t.negated();
  if (!detail::pairwise_disjoint({&d.b_t, &neg_b, &d.d_t, &d.c_t, &neg_c})) {
    throw Error(ErrorCode::PreconditionViolated,
                "derived sets not pairwise disjoint; core set must be symmetric");
  }
  return d;
}

inline DerivedSets derived_sets(const SymSet& a, Int t) { return derived_sets(a.set(), a.set(), t); }

/// Partition of a set into maximal progressions with common difference |t|.
struct ApPartition {
  Int difference = 0;
  std::vector<IntSet> progressions;  ///< ordered by smallest element
  std::size_t r = 0;                 ///< number of progressions of size >= 2
};

inline ApPartition ap_partition(const IntSet& a, Int t) {
  detail::require_shift(t);
  const Int step = t < 0 ? -t : t;
  ApPartition part;
  part.difference = t;
  // Start a chain at every element whose predecessor is absent; walk upward.
  for (Int x : a) {
    if (a.contains(x - step)) continue;
    std::vector<Int> chain;
    for (Int y = x; a.contains(y); y += step) chain.push_back(y);
    if (chain.size() >= 2) ++part.r;
    part.progressions.emplace_back(std::move(chain));
  }
  std::sort(part.progressions.begin(), part.progressions.end(),
            [](const IntSet& p, const IntSet& q) { return p.min() < q.min(); });
  return part;
}

struct LongestAp {
  std::size_t length = 0;
  Int difference = 0;  ///< 0 when length == 1
  IntSet witness;
};

/// Longest arithmetic progression (any difference d >= 1) contained in `a`.
/// Dynamic programming over pairs: len(i, j) = len(k, i) + 1 where a_k = 2a_i - a_j.
inline LongestAp longest_ap(const IntSet& a) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "longest_ap of empty set");
  const auto& v = a.vec();
  const std::size_t n = v.size();
  LongestAp best;
  best.length = 1;
  best.witness = IntSet{v.front()};
  if (n == 1) return best;

  std::unordered_map<Int, std::size_t> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index.emplace(v[i], i);

  std::vector<std::uint32_t> len(n * n, 2);
  std::size_t best_i = 0, best_j = 1;
  std::size_t best_len = 2;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Int prev = 2 * v[i] - v[j];
      auto it = index.find(prev);
      if (it != index.end() && it->second < i) len[i * n + j] = len[it->second * n + i] + 1;
      const std::size_t l = len[i * n + j];
      // Ties resolved towards the smallest (last element, then difference) pair.
      if (l > best_len) {
        best_len = l;
        best_i = i;
        best_j = j;
      }
    }
  }
  const Int d = v[best_j] - v[best_i];
  std::vector<Int> w;
  for (std::size_t k = 0; k < best_len; ++k) w.push_back(v[best_j] - static_cast<Int>(k) * d);
  best.length = best_len;
  best.difference = d;
  best.witness = IntSet(std::move(w));
  return best;
}

/// #{(b1, b2) in B^2 : b1 - b2 in A}.
inline std::uint64_t additive_energy(const IntSet& b, const IntSet& a) {
  std::uint64_t count = 0;
  for (Int b1 : b)
    for (Int b2 : b)
      if (a.contains(b1 - b2)) ++count;
  return count;
}

/// |A ∩ (A + t)| for every t with a nonzero intersection.
inline std::map<Int, std::size_t> shift_overlaps(const IntSet& a) {
  std::map<Int, std::size_t> counts;
  for (Int x : a)
    for (Int y : a) ++counts[x - y];
  return counts;
}

/// Quadruple energy #{x1 - x2 = x3 - x4} = Σ_t |A ∩ (A+t)|².
inline std::uint64_t quadruple_energy(const IntSet& a) {
  std::uint64_t e = 0;
  for (const auto& [t, c] : shift_overlaps(a)) e += static_cast<std::uint64_t>(c) * c;
  return e;
}

/// Greedy (Mian–Chowla) Sidon set of size m starting at 1.
inline IntSet sidon_set(std::size_t m) {
  std::vector<Int> elems;
  std::vector<bool> used_diff(1, false);
  auto diff_used = [&](Int d) { return static_cast<std::size_t>(d) < used_diff.size() && used_diff[d]; };
  for (Int cand = 1; elems.size() < m; ++cand) {
    bool ok = true;
    std::vector<Int> diffs;
    for (Int e : elems) {
      const Int d = cand - e;
      if (diff_used(d) || std::find(diffs.begin(), diffs.end(), d) != diffs.end()) {
        ok = false;
        break;
      }
      diffs.push_back(d);
    }
    if (!ok) continue;
    for (Int d : diffs) {
      if (static_cast<std::size_t>(d) >= used_diff.size()) used_diff.resize(2 * d + 1, false);
      used_diff[d] = true;
    }
    elems.push_back(cand);
  }
  return IntSet(std::move(elems));
}

/// (B - B) \ {0} for a greedy Sidon set B of size m; has exactly m² - m elements.
inline SymSet sidon_difference_construction(std::size_t m) {
  if (m < 2) throw Error(ErrorCode::PreconditionViolated, "sidon difference construction needs m >= 2");
  const IntSet b = sidon_set(m);
  std::vector<Int> raw;
  for (Int x : b)
    for (Int y : b)
      if (x != y) raw.push_back(x - y);
  SymSet a = SymSet::make(std::move(raw));
  if (a.size() != m * m - m) throw Error(ErrorCode::PreconditionViolated, "generated set is not Sidon");
  return a;
}

/// |B_t| >= |A_t| / L whenever every progression inside A has at most L terms.
/// Integer-exact: checked as L·|B_t| >= |A_t|.
inline LemmaReport bt_lower_bound_check(const SymSet& a, Int t, std::size_t max_ap_length) {
  detail::require_shift(t);
  if (max_ap_length == 0) throw Error(ErrorCode::PreconditionViolated, "L must be positive");
  LemmaReport rep;
  rep.lemma_id = "bt_lower_bound";
  rep.inputs = json{{"A", a.set().vec()}, {"t", t}, {"L", max_ap_length}};
  rep.provenance = "exact integer set computation";
  if (!a.empty()) {
    const LongestAp lap = longest_ap(a.set());
    if (lap.length > max_ap_length) {
      throw Error(ErrorCode::PreconditionViolated, "A contains the progression " + lap.witness.to_string() +
                                                       " longer than L=" + std::to_string(max_ap_length));
    }
  }
  const DerivedSets d = derived_sets(a, t);
  const ApPartition part = ap_partition(a.set(), t);
  const double lt = static_cast<double>(max_ap_length);
  rep.set_inequality(lt * static_cast<double>(d.b_t.size()), Relation::GreaterEq,
                     static_cast<double>(d.a_t.size()), 0.0);
  rep.extra = json{{"A_t_size", d.a_t.size()}, {"B_t_size", d.b_t.size()}, {"r", part.r}};
  if (d.a_t.empty()) rep.extra["note"] = "A_t empty";

  std::size_t covered = 0;
  for (const auto& p : part.progressions)
    if (p.size() >= 2) covered += p.size();
  rep.add(SubCheck::make("B_t_at_least_r", static_cast<double>(d.b_t.size()), Relation::GreaterEq,
                         static_cast<double>(part.r), 0.0));
  rep.add(SubCheck::make("long_progressions_cover_A_t", static_cast<double>(covered), Relation::GreaterEq,
                         static_cast<double>(d.a_t.size()), 0.0));
  if (d.b_t.size() > 0) rep.observed_min_constant = static_cast<double>(d.a_t.size()) / d.b_t.size();
  return rep;
}

}  // namespace chowla
