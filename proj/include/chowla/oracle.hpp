#pragma once

// Exhaustive ground truth and experiments.
//
// Convention: frontier values use f_B(x) = Σ_{b∈B} cos(2πbx) over a set B of
// positive integers, so k_value = -min f_B = ‖1̂_A‖_min / 2 for A = B ∪ -B.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chowla/certify.hpp"
#include "chowla/config.hpp"
#include "chowla/setcore.hpp"
#include "chowla/trigpoly.hpp"
#include "chowla/verify_additive.hpp"

namespace chowla {

struct FrontierEntry {
  std::size_t n = 0;
  Int m = 0;
  double k_value = 0.0;  ///< cosine convention
  IntSet witness;        ///< positive half
  MinCertificate certificate;  ///< for 1̂_A, symmetric-exponential convention
  std::string convention = "cos";
  bool partial = false;
  std::uint64_t enumerated = 0;  ///< canonical subsets visited
  std::uint64_t certified = 0;   ///< subsets that reached full certification
};

inline json to_json(const FrontierEntry& e) {
  return json{{"n", e.n},
              {"M", e.m},
              {"k_value", e.k_value},
              {"convention", e.convention},
              {"witness", e.witness.vec()},
              {"certificate", e.certificate},
              {"certificate_convention", "symmetric"},
              {"partial", e.partial},
              {"enumerated", e.enumerated},
              {"certified", e.certified}};
}

inline std::string csv_header() { return "n,M,k_value,witness,radius,convention"; }

inline std::string format_fixed(double v, int digits = 12) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

inline std::string to_csv(const FrontierEntry& e) {
  std::string w;
  for (std::size_t i = 0; i < e.witness.size(); ++i) {
    if (i) w += ';';
    w += std::to_string(e.witness.vec()[i]);
  }
  return std::to_string(e.n) + "," + std::to_string(e.m) + "," + format_fixed(e.k_value) + "," + w + "," +
         format_fixed(e.certificate.radius / 2.0, 15) + "," + e.convention + (e.partial ? ",partial" : "");
}

struct BruteOptions {
  double tol = 1e-9;
  std::uint64_t cap = 100'000'000;
  unsigned jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
  bool resume = false;
};

namespace detail {

inline double binomial(Int n, Int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (Int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

inline int mobius(Int d) {
  int sign = 1;
  for (Int p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return 0;
      sign = -sign;
    }
  }
  if (d > 1) sign = -sign;
  return sign;
}

struct ChunkResult {
  bool found = false;
  IntSet witness;
  double k_value = 0.0;
  MinCertificate certificate;
  std::uint64_t enumerated = 0;
  std::uint64_t certified = 0;
  bool complete = true;
};

inline json chunk_to_json(const ChunkResult& c) {
  return json{{"found", c.found},         {"witness", c.witness.vec()}, {"k_value", c.k_value},
              {"certificate", c.certificate}, {"enumerated", c.enumerated}, {"certified", c.certified}};
}

inline ChunkResult chunk_from_json(const json& j) {
  ChunkResult c;
  c.found = j.at("found").get<bool>();
  c.witness = IntSet(j.at("witness").get<std::vector<Int>>());
  c.k_value = j.at("k_value").get<double>();
  c.certificate = j.at("certificate").get<MinCertificate>();
  c.enumerated = j.at("enumerated").get<std::uint64_t>();
  c.certified = j.at("certified").get<std::uint64_t>();
  return c;
}

/// k_value of a positive set from its certificate on 1̂_{B ∪ -B}.
inline std::pair<double, MinCertificate> certify_positive(const std::vector<Int>& b, double tol) {
  const SymSet a = SymSet::from_positive(std::span<const Int>(b));
  const MinCertificate cert = min_norm(indicator(a.set()), tol);
  return {cert.norm_lower() / 2.0, cert};
}

/// Exhaustive scan of the n-subsets of [1..M] whose least element is `first`.
/// Sets are screened on a coarse grid: the coarse maximum of -f_B never exceeds
/// the true one, so a set whose coarse value is already above the running best
/// cannot improve it.
class ChunkScanner {
 public:
  ChunkScanner(std::size_t n, Int m, double tol) : n_(n), m_(m), tol_(tol) {
    grid_ = fft::next_pow2(static_cast<std::size_t>(std::max<Int>(64, 2 * m)));
    table_.resize(static_cast<std::size_t>(m + 1) * grid_);
    for (Int b = 0; b <= m; ++b)
      for (std::size_t j = 0; j < grid_; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(grid_);
        table_[static_cast<std::size_t>(b) * grid_ + j] = unit_phase(b, x).real();
      }
    sums_.assign((n + 1) * grid_, 0.0);
  }

  ChunkResult scan(Int first, std::uint64_t budget) {
    ChunkResult res;
    res_ = &res;
    budget_ = budget;
    stack_.assign(1, first);
    add_level(1, first);
    recurse(1, first);
    return res;
  }

 private:
  void add_level(std::size_t depth, Int b) {
    const double* prev = &sums_[(depth - 1) * grid_];
    double* cur = &sums_[depth * grid_];
    const double* row = &table_[static_cast<std::size_t>(b) * grid_];
    for (std::size_t j = 0; j < grid_; ++j) cur[j] = prev[j] + row[j];
  }

  void leaf(std::size_t depth) {
    Int g = 0;
    for (Int b : stack_) g = std::gcd(g, b);
    if (g != 1) return;
    if (res_->enumerated >= budget_) {
      res_->complete = false;
      stop_ = true;
      return;
    }
    ++res_->enumerated;
    const double* cur = &sums_[depth * grid_];
    const double coarse = -*std::min_element(cur, cur + grid_);
    if (res_->found && coarse > res_->k_value + tol_ + 1e-12 * static_cast<double>(n_)) return;
    ++res_->certified;
    auto [k, cert] = certify_positive(stack_, tol_);
    if (!res_->found || k < res_->k_value - tol_) {
      res_->found = true;
      res_->k_value = k;
      res_->certificate = cert;
      res_->witness = IntSet(stack_);
    }
  }

  void recurse(std::size_t depth, Int last) {
    if (stop_) return;
    if (depth == n_) {
      leaf(depth);
      return;
    }
    const Int remaining = static_cast<Int>(n_ - depth);
    for (Int b = last + 1; b <= m_ - remaining + 1 && !stop_; ++b) {
      stack_.push_back(b);
      add_level(depth + 1, b);
      recurse(depth + 1, b);
      stack_.pop_back();
    }
  }

  std::size_t n_;
  Int m_;
  double tol_;
  std::size_t grid_ = 0;
  std::vector<double> table_;
  std::vector<double> sums_;
  std::vector<Int> stack_;
  ChunkResult* res_ = nullptr;
  std::uint64_t budget_ = 0;
  bool stop_ = false;
};

inline std::filesystem::path chunk_path(const std::filesystem::path& dir, std::size_t n, Int m, Int first) {
  return dir / ("brute_n" + std::to_string(n) + "_M" + std::to_string(m) + "_chunk" + std::to_string(first) + ".json");
}

}  // namespace detail

/// Number of n-subsets of [1..M] with gcd 1: Σ_d μ(d)·C(⌊M/d⌋, n).
inline double canonical_count(std::size_t n, Int m) {
  double total = 0.0;
  for (Int d = 1; d <= m; ++d) {
    const int mu = detail::mobius(d);
    if (mu != 0) total += mu * detail::binomial(m / d, static_cast<Int>(n));
  }
  return total;
}

/// min over n-subsets B of [1..M] with gcd(B) = 1 of -min_x Σ_{b∈B} cos(2πbx).
/// Ties within tol keep the lexicographically smallest witness. Exceeding the
/// cap scans the first `cap` canonical sets in lexicographic order and sets
/// the partial flag.
inline FrontierEntry brute_k(std::size_t n, Int m, const BruteOptions& opts = {}) {
  if (n == 0 || m < static_cast<Int>(n)) {
    throw Error(ErrorCode::PreconditionViolated, "need 1 <= n <= M");
  }
  FrontierEntry entry;
  entry.n = n;
  entry.m = m;
  const bool partial = canonical_count(n, m) > static_cast<double>(opts.cap);
  const Int chunks = m - static_cast<Int>(n) + 1;
  std::vector<detail::ChunkResult> results(static_cast<std::size_t>(chunks));
  std::vector<bool> done(static_cast<std::size_t>(chunks), false);

  if (opts.cache_dir) std::filesystem::create_directories(*opts.cache_dir);
  auto load = [&](Int first) -> bool {
    if (!opts.cache_dir || !opts.resume) return false;
    const auto p = detail::chunk_path(*opts.cache_dir, n, m, first);
    std::ifstream in(p);
    if (!in) return false;
    try {
      results[static_cast<std::size_t>(first - 1)] = detail::chunk_from_json(json::parse(in));
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };
  auto store = [&](Int first, const detail::ChunkResult& c) {
    if (!opts.cache_dir || !c.complete) return;
    std::ofstream out(detail::chunk_path(*opts.cache_dir, n, m, first));
    out << chunk_to_json(c).dump() << '\n';
  };

  if (partial) {
    std::uint64_t budget = opts.cap;
    for (Int first = 1; first <= chunks && budget > 0; ++first) {
      detail::ChunkScanner scanner(n, m, opts.tol);
      detail::ChunkResult c = load(first) ? results[static_cast<std::size_t>(first - 1)] : scanner.scan(first, budget);
      if (c.enumerated > budget) c = scanner.scan(first, budget);
      budget -= c.enumerated;
      store(first, c);
      results[static_cast<std::size_t>(first - 1)] = c;
      done[static_cast<std::size_t>(first - 1)] = true;
    }
  } else {
    std::atomic<Int> next{1};
    auto worker = [&]() {
      for (Int first = next++; first <= chunks; first = next++) {
        const auto idx = static_cast<std::size_t>(first - 1);
        if (!load(first)) {
          detail::ChunkScanner fresh(n, m, opts.tol);
          results[idx] = fresh.scan(first, UINT64_MAX);
          store(first, results[idx]);
        }
      }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(chunks)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    std::fill(done.begin(), done.end(), true);
  }

  // Deterministic reduction in chunk order, i.e. lexicographic order.
  bool found = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!done[i]) continue;
    const auto& c = results[i];
    entry.enumerated += c.enumerated;
    entry.certified += c.certified;
    if (!c.found) continue;
    if (!found || c.k_value < entry.k_value - opts.tol) {
      found = true;
      entry.k_value = c.k_value;
      entry.witness = c.witness;
      entry.certificate = c.certificate;
    }
  }
  entry.partial = partial;
  return entry;
}

struct SidonReport {
  std::size_t m = 0;
  IntSet sidon;
  SymSet a;
  std::size_t n = 0;
  double identity_error = 0.0;
  std::size_t grid = 0;
  MinCertificate certificate;
  LemmaReport report;
};

/// A = (B - B) \ {0} for a Sidon set B of size m satisfies 1̂_A = |1̂_B|² - m,
/// hence ‖1̂_A‖_min <= m with n = m² - m.
inline SidonReport sidon_upper_experiment(std::size_t m, double tol = 1e-9) {
  if (m < 2) throw Error(ErrorCode::PreconditionViolated, "m must be at least 2");
  SidonReport s;
  s.m = m;
  s.sidon = sidon_set(m);
  s.a = sidon_difference_construction(m);
  s.n = s.a.size();
  s.grid = fft::next_pow2(static_cast<std::size_t>(2 * s.a.degree() + 2));
  const fft::cvec fa = indicator(s.a.set()).samples(s.grid);
  const fft::cvec fb = indicator(s.sidon).samples(s.grid);
  for (std::size_t j = 0; j < s.grid; ++j)
    s.identity_error = std::max(s.identity_error, std::abs(fa[j] - (std::norm(fb[j]) - static_cast<double>(m))));
  s.certificate = min_norm(indicator(s.a.set()), tol);

  LemmaReport& r = s.report;
  r.lemma_id = "sidon_upper";
  r.inputs = json{{"m", m}, {"B", s.sidon.vec()}};
  r.provenance = "grid identity 1̂_A = |1̂_B|² - m; certified minimum";
  r.certificates.push_back(s.certificate);
  const double k = s.certificate.norm_upper();
  r.set_inequality(k, Relation::LessEq, static_cast<double>(m), 1e-9);
  r.add(SubCheck::make("identity", s.identity_error, Relation::LessEq, 0.0, 1e-10));
  r.add(SubCheck::exact("size", s.n == m * m - m));
  const double rn = std::sqrt(static_cast<double>(s.n));
  r.observed_min_constant = k / rn;
  r.extra = json{{"n", s.n},
                 {"norm_symmetric", k},
                 {"k_cos", k / 2.0},
                 {"ratio_symmetric", k / rn},
                 {"ratio_bound", static_cast<double>(m) / rn},
                 {"grid_size", s.grid}};
  return s;
}

struct BestShift {
  Int t = 0;
  std::size_t size = 0;
  LemmaReport report;
};

/// argmax_{t≠0} |A ∩ (A+t)| with Σ_{t∈A}|A ∩ (A+t)| >= n²/(2K) checked when n >= 2K².
inline BestShift best_t_energy(const SymSet& a, const CheckOptions& opts = {}) {
  if (a.size() < 2) throw Error(ErrorCode::PreconditionViolated, "|A| must be at least 2");
  BestShift out;
  std::tie(out.t, out.size) = max_overlap_shift(a.set());
  LemmaReport& r = out.report;
  r.lemma_id = "best_shift";
  r.inputs = json{{"A", a.set().vec()}};
  r.provenance = "exact shift enumeration; certified minimum";
  const MinCertificate cert = min_norm(indicator(a.set()), opts.min_tol);
  r.certificates.push_back(cert);
  const double k = cert.norm_upper();
  const double n = static_cast<double>(a.size());
  double sum = 0.0;
  for (Int t : a.set()) sum += static_cast<double>((a.set() & a.set().shifted(t)).size());
  r.tolerance = opts.check_tol * n * n;
  r.extra = json{{"t", out.t}, {"overlap", out.size}, {"sum_over_A", sum}, {"K", k}};
  if (n < 2.0 * k * k) {
    r.mark_vacuous("BTooSmall");
  } else {
    detail::headline(r, sum, Relation::GreaterEq, n * n / (2.0 * k), opts.check_tol * n * n, opts);
  }
  return out;
}

struct TraceStep {
  Int t = 0;
  Int j = 0;
  std::size_t overlap_t = 0;   ///< |A ∩ (A+t)|
  std::size_t overlap_jt = 0;  ///< |A ∩ (A+jt)|
  std::size_t r = 0;           ///< progressions of length >= 2 with difference t
  bool holds = false;          ///< overlap_jt >= overlap_t - M·r
  bool l_form_applies = false; ///< r <= L
  bool l_form_holds = false;   ///< overlap_jt >= overlap_t - M·L
};

inline json to_json(const TraceStep& s) {
  return json{{"t", s.t},   {"j", s.j},         {"overlap_t", s.overlap_t},         {"overlap_jt", s.overlap_jt},
              {"r", s.r},   {"holds", s.holds}, {"l_form_applies", s.l_form_applies}, {"l_form_holds", s.l_form_holds}};
}

struct PrimeSearch {
  Int t = 0;
  std::size_t b_size = 0;
  Int t0 = 0;
  std::size_t explored = 0;
  bool capped = false;
  std::vector<TraceStep> trace;
  bool all_hold() const {
    return std::all_of(trace.begin(), trace.end(), [](const TraceStep& s) {
      return s.holds && (!s.l_form_applies || s.l_form_holds);
    });
  }
};

inline std::vector<Int> primes_upto(Int m) {
  std::vector<Int> ps;
  for (Int p = 2; p <= m; ++p) {
    bool prime = true;
    for (Int q : ps) {
      if (q * q > p) break;
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ps.push_back(p);
  }
  return ps;
}

/// Explores t = (Π_{p<=M} p^α_p)·t0 breadth-first from t0 = argmax |A ∩ (A+t)|,
/// verifying |A ∩ (A+jt)| >= |A ∩ (A+t)| - M·r(t) for j in [1, M] at every t
/// (and the form with L in place of r(t) whenever r(t) <= L). Returns the t
/// with the largest |B_t| seen.
inline PrimeSearch prime_product_t_search(const SymSet& a, Int m_param, Int l, std::size_t orbit_cap = 10'000) {
  if (m_param < 1) throw Error(ErrorCode::PreconditionViolated, "M must be positive");
  PrimeSearch out;
  if (a.size() < 2) return out;
  const auto [t0, k0] = max_overlap_shift(a.set());
  out.t0 = t0;
  out.t = t0;
  if (k0 == 0 || t0 == 0) return out;

  const IntSet& s = a.set();
  const Int reach = 2 * a.degree();
  auto overlap = [&](Int t) { return (s & s.shifted(t)).size(); };
  const std::vector<Int> primes = primes_upto(m_param);

  std::vector<Int> queue{t0};
  std::vector<Int> seen{t0};
  out.b_size = derived_sets(a, t0).b_t.size();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Int t = queue[head];
    ++out.explored;
    const std::size_t kt = overlap(t);
    const std::size_t r = ap_partition(s, t).r;
    for (Int j = 1; j <= m_param; ++j) {
      TraceStep st;
      st.t = t;
      st.j = j;
      st.overlap_t = kt;
      st.overlap_jt = overlap(j * t);
      st.r = r;
      const auto lhs = static_cast<Int>(st.overlap_jt);
      st.holds = lhs >= static_cast<Int>(kt) - m_param * static_cast<Int>(r);
      st.l_form_applies = static_cast<Int>(r) <= l;
      st.l_form_holds = lhs >= static_cast<Int>(kt) - m_param * l;
      out.trace.push_back(st);
    }
    const std::size_t bt = derived_sets(a, t).b_t.size();
    if (bt > out.b_size) {
      out.b_size = bt;
      out.t = t;
    }
    for (Int p : primes) {
      const Int next = t * p;
      if (std::abs(next) > reach || std::find(seen.begin(), seen.end(), next) != seen.end()) continue;
      if (seen.size() >= orbit_cap) {
        out.capped = true;
        break;
      }
      seen.push_back(next);
      queue.push_back(next);
    }
  }
  return out;
}

}  // namespace chowla
