// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crescent/compact_candidate.hpp"
#include "crescent/countable_open.hpp"
#include "crescent/error.hpp"
#include "crescent/scalar.hpp"
#include "crescent/sorgenfrey.hpp"

namespace crescent {

// ---------------------------------------------------------------------------
// Compactness decision: the compact subsets of the Sorgenfrey line are exactly
// the well-founded subdcpos of (R, >=). On this representation that means:
// no ascending chain (an ascending sequence kills well-foundedness), and every
// infinite descending chain's infimum must belong to the denoted set.
// ---------------------------------------------------------------------------

struct CompactOk {};

struct MissingInfimum {
  ChainRl chain;  // the descending chain whose infimum is excluded
  Rat infimum;
};

/// Cover witnessing non-compactness against an ascending chain
/// r_0 < r_1 < ... < sup: pieces ]-inf, r_0[, [r_n, r_{n+1}[, [sup, +inf[.
/// Every piece contains at most one chain point, so no finite subfamily covers.
struct AscendingCover {
  ChainRl chain;
  Rat first;  // r_0
  Rat sup;    // the chain limit

  RlInterval piece(std::uint32_t n) const { return {chain.point(n), chain.point(n + 1)}; }
};

using CompactVerdict = std::variant<CompactOk, MissingInfimum, AscendingCover>;

inline CompactVerdict is_compact(const CompactCandidate& cand) {
  cand.validate();
  for (const auto& b : cand.blocks)
    if (const auto* ch = std::get_if<ChainRl>(&b))
      if (!ch->descending()) return AscendingCover{*ch, ch->point(0), ch->limit};
  for (const auto& b : cand.blocks)
    if (const auto* ch = std::get_if<ChainRl>(&b))
      if (!ch->include_limit && !cand.member(ch->limit)) return MissingInfimum{*ch, ch->limit};
  return CompactOk{};
}

/// Certified nonempty compact subset of Rl: an element of the Smyth powerdomain.
class SmythElem {
public:
  explicit SmythElem(CompactCandidate rep) : rep_(std::move(rep)) {
    require(std::holds_alternative<CompactOk>(is_compact(rep_)), "not-compact",
            "representation fails the compactness decision");
    require(rep_.denotes_nonempty(), "empty-compact", "Smyth elements are nonempty");
  }

  const CompactCandidate& rep() const { return rep_; }

  static SmythElem singleton(const Rat& x) { return SmythElem({{FiniteBlock{{x}}}}); }

private:
  CompactCandidate rep_;
};

// ---------------------------------------------------------------------------
// Exact subset decision between candidates. The heart is deciding which chain
// indices j satisfy c*q^j = c'*q'^i for some i >= 0: the solution set is empty,
// a single index, or one arithmetic progression, depending on whether q and q'
// are multiplicatively dependent. Dependence is decided by exact factorization.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::uint64_t kTrialDivisionBound = 1000000;

inline void factor_into(Int n, int sign, std::map<Int, long>& out) {
  require(n >= 1, "internal-invariant", "factoring a nonpositive integer");
  for (std::uint64_t d = 2; d <= kTrialDivisionBound && Int(d) * d <= n; d == 2 ? d = 3 : d += 2) {
    while (n % d == 0) {
      out[Int(d)] += sign;
      n /= d;
    }
  }
  if (n > 1) {
    require(boost::multiprecision::miller_rabin_test(n, 32), "factorization-limit",
            "cofactor " + n.str() + " is composite beyond the trial-division bound");
    out[n] += sign;
  }
}

/// Prime exponent vector of a positive rational (denominator counted negative).
inline std::map<Int, long> rat_exponents(const Rat& x) {
  require(x > 0, "internal-invariant", "exponent vector of a nonpositive rational");
  std::map<Int, long> out;
  factor_into(numerator(x), +1, out);
  factor_into(denominator(x), -1, out);
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : ++it;
  return out;
}

/// Minimal (a, b) with a, b > 0 and q^a = q'^b, if the ratios are
/// multiplicatively dependent.
inline std::optional<std::pair<long, long>> mult_relation(const Rat& q, const Rat& qp) {
  auto e = rat_exponents(q);
  require(!e.empty(), "internal-invariant", "ratio 1 is not a valid chain ratio");
  auto f = rat_exponents(qp);
  auto it = e.begin();  // any prime of q
  auto fit = f.find(it->first);
  if (fit == f.end()) return std::nullopt;
  long a = std::abs(fit->second), b = std::abs(it->second);
  long g = std::gcd(a, b);
  a /= g;
  b /= g;
  if (pow_rat(q, a) != pow_rat(qp, b)) return std::nullopt;
  return std::make_pair(a, b);
}

struct IndexProgression {
  long start = 0;
  long period = 1;
  bool covers(long j) const { return j >= start && (j - start) % period == 0; }
};

struct TailIndexSet {
  std::vector<long> sporadic;  // isolated solutions
  std::optional<IndexProgression> prog;

  bool covers(long j) const {
    if (prog && prog->covers(j)) return true;
    return std::find(sporadic.begin(), sporadic.end(), j) != sporadic.end();
  }
};

inline long ceil_div(long a, long b) { return a / b + (a % b != 0 && (a ^ b) >= 0 ? 1 : 0); }

/// Indices j with C.point(j) a generated point of D; same limit and direction
/// assumed. Solves rho * q^j = q'^i over j, i >= 0 with rho = C.coeff/D.coeff.
inline TailIndexSet tail_index_set(const ChainRl& c, const ChainRl& d) {
  const Rat& q = c.ratio;
  const Rat& qp = d.ratio;
  Rat rho = c.coeff / d.coeff;
  TailIndexSet out;
  if (auto rel = mult_relation(q, qp)) {
    auto [a0, b0] = *rel;
    // All solutions lie in one residue class mod a0 and step by (a0, b0).
    for (long j = 0; j < a0; ++j) {
      auto i = pow_index(qp, rho * pow_rat(q, j));
      if (!i) continue;
      long kmin = *i >= 0 ? 0 : ceil_div(-*i, b0);
      out.prog = IndexProgression{j + kmin * a0, a0};
      return out;
    }
    return out;
  }
  // Multiplicatively independent ratios: at most one solution (two solutions
  // would force a relation). Derive the unique candidate from the per-prime
  // linear equations g_p + j e_p = i f_p and verify it exactly.
  auto e = rat_exponents(q), f = rat_exponents(qp), g = rat_exponents(rho);
  auto exp_of = [](const std::map<Int, long>& m, const Int& p) {
    auto it = m.find(p);
    return it == m.end() ? 0L : it->second;
  };
  std::vector<Int> primes;
  for (const auto& [p, v] : e) primes.push_back(p);
  for (const auto& [p, v] : f)
    if (!e.count(p)) primes.push_back(p);
  for (const auto& [p, v] : g)
    if (!e.count(p) && !f.count(p)) return out;  // equation g_p = 0 fails
  auto verify = [&](long j, long i) {
    if (j < 0 || i < 0) return false;
    return rho * pow_rat(q, j) == pow_rat(qp, i);
  };
  // A prime private to one side pins j or i directly.
  for (const auto& p : primes) {
    long ep = exp_of(e, p), fp = exp_of(f, p), gp = exp_of(g, p);
    if (ep != 0 && fp == 0) {
      if (gp % ep != 0) return out;
      long j = -gp / ep;
      if (j < 0) return out;
      if (auto i = pow_index(qp, rho * pow_rat(q, j)); i && verify(j, *i)) out.sporadic = {j};
      return out;
    }
    if (fp != 0 && ep == 0) {
      if (gp % fp != 0) return out;
      long i = gp / fp;
      if (i < 0) return out;
      if (auto j = pow_index(q, pow_rat(qp, i) / rho); j && verify(*j, i)) out.sporadic = {*j};
      return out;
    }
  }
  // Shared support: two independent rows determine the candidate by Cramer.
  for (std::size_t x = 0; x < primes.size(); ++x) {
    for (std::size_t y = x + 1; y < primes.size(); ++y) {
      long e1 = exp_of(e, primes[x]), f1 = exp_of(f, primes[x]), g1 = exp_of(g, primes[x]);
      long e2 = exp_of(e, primes[y]), f2 = exp_of(f, primes[y]), g2 = exp_of(g, primes[y]);
      long det = e2 * f1 - e1 * f2;
      if (det == 0) continue;
      long jn = g1 * f2 - f1 * g2, in = e2 * g1 - e1 * g2;
      if (jn % det != 0 || in % det != 0) return out;
      long j = jn / det, i = in / det;
      if (verify(j, i)) out.sporadic = {j};
      return out;
    }
  }
  // All rows parallel would mean a multiplicative relation, handled above.
  return out;
}

/// Decides whether the whole generated tail of `c` is contained in candidate
/// `b`. Cofinitely many tail points must land in b's chains with the same limit
/// and direction; everything else is checked pointwise.
inline bool tail_covered(const ChainRl& c, const CompactCandidate& b) {
  std::vector<TailIndexSet> sets;
  std::vector<IndexProgression> progs;
  for (const auto& blk : b.blocks) {
    const auto* d = std::get_if<ChainRl>(&blk);
    if (!d || d->limit != c.limit || d->dir != c.dir) continue;
    sets.push_back(tail_index_set(c, *d));
    if (sets.back().prog) progs.push_back(*sets.back().prog);
  }
  if (progs.empty()) return false;  // only finitely many indices could be absorbed
  long lcm = 1;
  for (const auto& p : progs) {
    lcm = std::lcm(lcm, p.period);
    require(lcm <= 1000000, "magnitude-limit", "progression lcm exceeds the bound");
  }
  long max_start = 0;
  for (const auto& p : progs) max_start = std::max(max_start, p.start);
  for (long r = 0; r < lcm; ++r) {
    bool covered = false;
    for (const auto& p : progs)
      if (((r - p.start) % p.period + p.period) % p.period == 0) covered = true;
    if (!covered) return false;  // an uncovered residue leaves infinitely many points
  }
  for (long j = 0; j < max_start; ++j) {
    bool in_prog = false;
    for (const auto& p : progs)
      if (p.covers(j)) in_prog = true;
    if (!in_prog && !b.member(c.point(j))) return false;
  }
  return true;
}

} // namespace detail

/// Denotational subset test between compact candidates.
inline bool candidate_subset(const CompactCandidate& a, const CompactCandidate& b) {
  for (const auto& blk : a.blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      for (const auto& x : fb->points)
        if (!b.member(x)) return false;
      continue;
    }
    const auto& c = std::get<ChainRl>(blk);
    for (const auto& x : c.prefix)
      if (!b.member(x)) return false;
    if (c.include_limit && !b.member(c.limit)) return false;
    if (!detail::tail_covered(c, b)) return false;
  }
  return true;
}

inline bool candidate_equal(const CompactCandidate& a, const CompactCandidate& b) {
  return candidate_subset(a, b) && candidate_subset(b, a);
}

/// Smyth order: Q1 below Q2 iff Q2 is contained in Q1 (reverse inclusion).
inline bool smyth_leq(const SmythElem& q1, const SmythElem& q2) {
  return candidate_subset(q2.rep(), q1.rep());
}

/// Decides Q subset-of U. Finite parts pointwise; a descending tail fits iff
/// the limit's interval of U exists, taking the least index from which the
/// tail sits inside it, with earlier indices checked pointwise.
inline bool in_box(const SmythElem& q, const RlOpen& u) {
  for (const auto& blk : q.rep().blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      for (const auto& x : fb->points)
        if (!u.member(x)) return false;
      continue;
    }
    const auto& c = std::get<ChainRl>(blk);
    require(c.descending(), "internal-invariant", "certified element with ascending chain");
    for (const auto& x : c.prefix)
      if (!u.member(x)) return false;
    const RlInterval* host = u.interval_of(c.limit);
    if (!host) return false;  // the tail accumulates at the limit
    Rat width = host->b - c.limit;
    long tail_from = 0;
    for (Rat off = c.coeff; off >= width; off *= c.ratio) {
      ++tail_from;
      require(tail_from < kGeomIterLimit, "magnitude-limit", "in_box exceeded iteration cap");
    }
    for (long j = 0; j < tail_from; ++j)
      if (!u.member(c.point(j))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Box opens. A Smyth open is a finite union of boxes over exact Rl opens.
// ---------------------------------------------------------------------------

class SmythOpen {
public:
  SmythOpen() = default;

  static SmythOpen of_boxes(std::vector<RlOpen> boxes) {
    SmythOpen out;
    for (auto& b : boxes)
      if (!b.is_empty()) out.boxes_.push_back(std::move(b));
    // nonredundant: drop any box included in another
    std::vector<RlOpen> kept;
    for (std::size_t i = 0; i < out.boxes_.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < out.boxes_.size() && !dominated; ++j) {
        if (i == j) continue;
        if (rl_subset(out.boxes_[i], out.boxes_[j]) &&
            !(out.boxes_[i] == out.boxes_[j] && i < j))
          dominated = true;
      }
      if (!dominated) kept.push_back(out.boxes_[i]);
    }
    std::sort(kept.begin(), kept.end(),
              [](const RlOpen& a, const RlOpen& b) { return canonical_less(a, b); });
    out.boxes_ = std::move(kept);
    return out;
  }

  static SmythOpen box(RlOpen u) { return of_boxes({std::move(u)}); }

  const std::vector<RlOpen>& boxes() const { return boxes_; }
  bool is_empty() const { return boxes_.empty(); }

  bool member(const SmythElem& q) const {
    for (const auto& b : boxes_)
      if (in_box(q, b)) return true;
    return false;
  }

  friend SmythOpen smyth_union(const SmythOpen& a, const SmythOpen& b) {
    std::vector<RlOpen> all = a.boxes_;
    all.insert(all.end(), b.boxes_.begin(), b.boxes_.end());
    return of_boxes(std::move(all));
  }

  friend SmythOpen smyth_intersect(const SmythOpen& a, const SmythOpen& b) {
    std::vector<RlOpen> all;
    for (const auto& x : a.boxes_)
      for (const auto& y : b.boxes_) all.push_back(rl_intersect(x, y));
    return of_boxes(std::move(all));
  }

  /// Union of boxes inclusion: every box of a must fit in a single box of b
  /// (finite subsets of a box escape any union that does not absorb it whole).
  friend bool smyth_subset(const SmythOpen& a, const SmythOpen& b) {
    for (const auto& x : a.boxes_) {
      bool ok = false;
      for (const auto& y : b.boxes_)
        if (rl_subset(x, y)) ok = true;
      if (!ok) return false;
    }
    return true;
  }

  friend bool operator==(const SmythOpen& a, const SmythOpen& b) {
    return a.boxes_ == b.boxes_;
  }

  friend bool canonical_less(const SmythOpen& a, const SmythOpen& b) {
    return std::lexicographical_compare(a.boxes_.begin(), a.boxes_.end(), b.boxes_.begin(),
                                        b.boxes_.end(), [](const RlOpen& x, const RlOpen& y) {
                                          return canonical_less(x, y);
                                        });
  }

  std::string to_string() const {
    if (boxes_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
      if (i) s += " u ";
      s += "Box(" + boxes_[i].to_string() + ")";
    }
    return s;
  }

private:
  std::vector<RlOpen> boxes_;
};

/// The image valuation of lambda under x -> {x}: on a union of boxes it is the
/// Lebesgue measure of the union of the box arguments, since the trace of
/// Box(U) on the embedded line is exactly U.
inline Scalar lambda_bar(const SmythOpen& u) {
  RlOpen acc;
  for (const auto& b : u.boxes()) acc = rl_union(acc, b);
  return lambda_eval(acc);
}

// ---------------------------------------------------------------------------
// Refuters. Both walk a canonical enumeration of a compact candidate: the
// finite phase (finite blocks, prefixes, included limits; sorted, deduplicated)
// then the chain tails, with geometrically split budgets.
// ---------------------------------------------------------------------------

struct CandidateEnumeration {
  std::vector<Rat> finite_points;
  std::vector<ChainRl> chains;
};

inline CandidateEnumeration enumerate_candidate(const CompactCandidate& cand) {
  CandidateEnumeration en;
  for (const auto& blk : cand.blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      en.finite_points.insert(en.finite_points.end(), fb->points.begin(), fb->points.end());
      continue;
    }
    const auto& c = std::get<ChainRl>(blk);
    en.finite_points.insert(en.finite_points.end(), c.prefix.begin(), c.prefix.end());
    if (c.include_limit) en.finite_points.push_back(c.limit);
    en.chains.push_back(c);
  }
  std::sort(en.finite_points.begin(), en.finite_points.end());
  en.finite_points.erase(std::unique(en.finite_points.begin(), en.finite_points.end()),
                         en.finite_points.end());
  return en;
}

struct ElementContainment {
  std::vector<std::size_t> tail_refs;  // indices into the certificate's tail list
};

struct PCRefutationCertificate {
  RlOpen u;
  Scalar r;
  std::vector<SmythElem> elements;
  CountableRlOpen v;
  Scalar bound;
  std::vector<ElementContainment> containments;
};

/// For U open, 0 < r < lambda(U) and finitely many compact sets inside Box(U),
/// builds an open neighborhood V of all of them with certified measure bound
/// at most r. This is the finite-stage engine showing lambda-bar is not
/// point-continuous: no finite subset of Box(U) pins the value above r.
inline PCRefutationCertificate refute_point_continuity(const RlOpen& u, const Scalar& r,
                                                       const std::vector<SmythElem>& elements) {
  require(r.is_finite() && Scalar(0) < r && r < lambda_eval(u), "r-out-of-range",
          "need 0 < r < lambda(U)");
  for (const auto& q : elements)
    require(in_box(q, u), "element-not-in-box", "every element must lie in Box(U)");

  PCRefutationCertificate cert{u, r, elements, {}, Scalar(0), {}};
  if (elements.empty()) {
    cert.bound = measure_upper_bound(cert.v);
    return cert;
  }
  Rat s = r.finite_value() / Rat(elements.size());
  std::vector<RlInterval> finite_ivs;
  for (const auto& q : elements) {
    ElementContainment proof;
    auto en = enumerate_candidate(q.rep());
    std::size_t k = en.finite_points.size();
    for (std::size_t t = 0; t < k; ++t) {
      Rat budget = s * pow_rat(Rat(1, 2), static_cast<long>(t) + 1);
      Rat eps = shrink_interval(en.finite_points[t], budget, u);
      finite_ivs.push_back({en.finite_points[t], en.finite_points[t] + eps});
    }
    for (std::size_t c = 0; c < en.chains.size(); ++c) {
      const ChainRl& chain = en.chains[c];
      Rat chain_budget = s * pow_rat(Rat(1, 2), static_cast<long>(k + c) + 1);
      const RlInterval* host = u.interval_of(chain.limit);
      require(host != nullptr, "internal-invariant", "in_box passed but limit has no interval");
      long start = 0;
      for (;; ++start) {
        Rat x = chain.point(start);
        Rat len = chain_budget * pow_rat(Rat(1, 2), start + 1);
        if (x < host->b && len <= host->b - x) break;
        Rat eps = shrink_interval(x, len, u);
        finite_ivs.push_back({x, x + eps});
        require(start < kGeomIterLimit, "magnitude-limit", "tail start search exceeded cap");
      }
      proof.tail_refs.push_back(cert.v.tails.size());
      cert.v.tails.push_back(TailFamily{chain, static_cast<std::uint32_t>(start), chain_budget});
    }
    cert.containments.push_back(std::move(proof));
  }
  cert.v.finite_part = RlOpen::normalize(std::move(finite_ivs));
  cert.bound = measure_upper_bound(cert.v);
  require(cert.bound <= r, "internal-invariant", "budget arithmetic must cap the bound at r");
  return cert;
}

/// Re-checks every certified field from scratch; used by tests and the CLI.
inline std::vector<std::pair<std::string, bool>> verify_pc_certificate(
    const PCRefutationCertificate& cert) {
  std::vector<std::pair<std::string, bool>> checks;
  checks.emplace_back("bound-recomputed", measure_upper_bound(cert.v) == cert.bound);
  checks.emplace_back("bound-le-r", cert.bound <= cert.r);
  checks.emplace_back("r-lt-lambda-u", cert.r < lambda_eval(cert.u));
  checks.emplace_back("finite-part-in-u", rl_subset(cert.v.finite_part, cert.u));
  bool tails_in_u = true;
  for (const auto& t : cert.v.tails) {
    const RlInterval* host = cert.u.interval_of(t.chain.limit);
    if (!host) {
      tails_in_u = false;
      break;
    }
    Rat x0 = t.chain.point(t.start_index);
    if (!(x0 < host->b && x0 + t.interval_length(t.start_index) <= host->b)) tails_in_u = false;
  }
  checks.emplace_back("tails-in-u", tails_in_u);
  bool contained = cert.elements.size() == cert.containments.size();
  for (std::size_t i = 0; contained && i < cert.elements.size(); ++i) {
    const auto& q = cert.elements[i];
    if (!in_box(q, cert.u)) contained = false;
    auto en = enumerate_candidate(q.rep());
    for (const auto& x : en.finite_points)
      if (!cert.v.member(x)) contained = false;
    const auto& refs = cert.containments[i].tail_refs;
    if (refs.size() != en.chains.size()) contained = false;
    for (std::size_t c = 0; contained && c < en.chains.size(); ++c) {
      if (refs[c] >= cert.v.tails.size()) {
        contained = false;
        break;
      }
      const TailFamily& t = cert.v.tails[refs[c]];
      if (!(t.chain == en.chains[c])) contained = false;
      for (long j = 0; j < static_cast<long>(t.start_index); ++j)
        if (!cert.v.member(t.chain.point(j))) contained = false;
    }
  }
  checks.emplace_back("elements-in-v", contained);
  return checks;
}

struct ConsonanceCertificate {
  SmythElem q;
  Scalar r;
  CountableRlOpen v;
  Scalar bound;
};

/// The consonance refuter: an open neighborhood of Q with certified measure
/// bound at most r, for any r > 0. No Box-filter around a compact set fits
/// inside the Scott-open family {U : lambda(U) > r}.
inline ConsonanceCertificate consonance_refuter(const SmythElem& q, const Scalar& r) {
  require(r.is_finite() && Scalar(0) < r, "r-out-of-range", "need r > 0");
  auto en = enumerate_candidate(q.rep());
  std::size_t k = en.finite_points.size();
  CountableRlOpen v;
  std::vector<RlInterval> finite_ivs;
  for (std::size_t t = 0; t < k; ++t) {
    Rat len = r.finite_value() * pow_rat(Rat(1, 2), static_cast<long>(t) + 1);
    finite_ivs.push_back({en.finite_points[t], en.finite_points[t] + len});
  }
  for (std::size_t c = 0; c < en.chains.size(); ++c) {
    Rat budget = r.finite_value() * pow_rat(Rat(1, 2), static_cast<long>(k + c) + 1);
    v.tails.push_back(TailFamily{en.chains[c], 0, budget});
  }
  v.finite_part = RlOpen::normalize(std::move(finite_ivs));
  ConsonanceCertificate cert{q, r, std::move(v), Scalar(0)};
  cert.bound = measure_upper_bound(cert.v);
  require(cert.bound <= r, "internal-invariant", "budget arithmetic must cap the bound at r");
  return cert;
}

inline std::vector<std::pair<std::string, bool>> verify_consonance_certificate(
    const ConsonanceCertificate& cert) {
  std::vector<std::pair<std::string, bool>> checks;
  checks.emplace_back("bound-recomputed", measure_upper_bound(cert.v) == cert.bound);
  checks.emplace_back("bound-le-r", cert.bound <= cert.r);
  bool covered = true;
  auto en = enumerate_candidate(cert.q.rep());
  for (const auto& x : en.finite_points)
    if (!cert.v.member(x)) covered = false;
  for (const auto& chain : en.chains) {
    bool anchored = false;
    for (const auto& t : cert.v.tails)
      if (t.chain == chain && t.start_index == 0) anchored = true;
    if (!anchored) covered = false;
  }
  checks.emplace_back("q-in-v", covered);
  return checks;
}

// ---------------------------------------------------------------------------
// Embedding agreement: x in U iff {x} in Box(U), checked on samples through
// the real in_box machinery.
// ---------------------------------------------------------------------------

struct Agreement {};
struct Disagreement {
  Rat x;
  bool in_u;
  bool singleton_in_box;
};
using AgreementVerdict = std::variant<Agreement, Disagreement>;

inline AgreementVerdict dcpo_model_agreement(const RlOpen& u, const std::vector<Rat>& samples) {
  for (const auto& x : samples) {
    bool direct = u.member(x);
    bool boxed = in_box(SmythElem::singleton(x), u);
    if (direct != boxed) return Disagreement{x, direct, boxed};
  }
  return Agreement{};
}

} // namespace crescent
