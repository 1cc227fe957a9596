// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: one subcommand per algorithm, JSON in, JSON report
// out. Reports echo their inputs, carry the operation's postcondition checks
// and print rationals exactly (p/q), never as floats.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crescent/crescent.hpp"

namespace {

using namespace crescent;

#ifndef CRESCENT_VERSION
#define CRESCENT_VERSION "0.0.0"
#endif

struct Options {
  bool pretty = false;
  std::uint64_t seed = 0;
  std::size_t max_points = kDefaultMaxPosetPoints;
  std::string input;       // positional JSON
  std::string input_file;  // --file
};

Json load_input(const Options& opt) {
  std::string text = opt.input;
  if (!opt.input_file.empty()) {
    std::ifstream in(opt.input_file);
    require(in.good(), "parse-error", "cannot open '" + opt.input_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  require(!text.empty(), "parse-error", "no input given (positional JSON or --file)");
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    fail("parse-error", e.what());
  }
}

void print_pretty(const Json& j, int indent = 0) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        std::cout << pad << k << ":\n";
        print_pretty(v, indent + 2);
      } else {
        std::cout << pad << k << ": " << v.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        std::cout << pad << "- " << v.dump() << "\n";
      } else {
        std::cout << pad << "-\n";
        print_pretty(v, indent + 2);
      }
    }
  } else {
    std::cout << pad << j.dump() << "\n";
  }
}

int emit_report(const Options& opt, const std::string& command, const Json& inputs,
                const Json& result, const Json& checks) {
  Json report{{"command", command},
              {"inputs", inputs},
              {"result", result},
              {"checks", checks},
              {"version", CRESCENT_VERSION}};
  if (opt.pretty)
    print_pretty(report);
  else
    std::cout << report.dump(2) << "\n";
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return 1;
  return 0;
}

Json check(const std::string& name, bool pass) { return Json{{"name", name}, {"pass", pass}}; }

Json checks_of(const std::vector<std::pair<std::string, bool>>& cs) {
  Json out = Json::array();
  for (const auto& [n, p] : cs) out.push_back(check(n, p));
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.
// ---------------------------------------------------------------------------

int run_rl_measure(const Options& opt) {
  Json in = load_input(opt);
  RlOpen u = rlopen_from_json(in);
  Scalar value = lambda_eval(u);
  Json checks = Json::array();
  checks.push_back(check("nonnegative", Scalar(0) <= value));
  checks.push_back(check("strict-on-empty", !u.is_empty() || value == Scalar(0)));
  return emit_report(opt, "rl-measure", rlopen_to_json(u),
                     Json{{"lambda", scalar_to_json(value)}}, checks);
}

int run_ring_normalize(const Options& opt) {
  Json in = load_input(opt);
  SetExpr expr = expr_from_json(in);
  RingElement ring = to_ring_element(expr);
  bool disjoint = true, nested = true;
  for (std::size_t i = 0; i < ring.crescents().size(); ++i) {
    nested = nested && open_subset(ring.crescents()[i].inner, ring.crescents()[i].outer);
    for (std::size_t j = i + 1; j < ring.crescents().size(); ++j)
      disjoint = disjoint && crescents_disjoint(ring.crescents()[i], ring.crescents()[j]);
  }
  Json checks = Json::array();
  checks.push_back(check("pairwise-disjoint", disjoint));
  checks.push_back(check("inner-inside-outer", nested));
  return emit_report(opt, "ring-normalize", in, ring_to_json(ring), checks);
}

int run_compactness(const Options& opt) {
  Json in = load_input(opt);
  CompactCandidate cand = candidate_from_json(in);
  CompactVerdict verdict = is_compact(cand);
  bool ascending = false, inf_closed = true;
  for (const auto& blk : cand.blocks)
    if (const auto* ch = std::get_if<ChainRl>(&blk)) {
      if (!ch->descending()) ascending = true;
      if (ch->descending() && !cand.member(ch->limit)) inf_closed = false;
    }
  bool expect_compact = !ascending && inf_closed;
  Json checks = Json::array();
  checks.push_back(check("matches-characterization",
                         expect_compact == std::holds_alternative<CompactOk>(verdict)));
  if (const auto* ac = std::get_if<AscendingCover>(&verdict)) {
    bool pieces_ok = true;
    for (std::uint32_t n = 0; n < 4; ++n) {
      RlInterval piece = ac->piece(n);
      pieces_ok = pieces_ok && piece.a < piece.b && piece.a == ac->chain.point(n);
    }
    checks.push_back(check("cover-pieces-isolate-points", pieces_ok));
  }
  return emit_report(opt, "compactness", candidate_to_json(cand),
                     compact_verdict_to_json(verdict), checks);
}

int run_lambda_bar(const Options& opt) {
  Json in = load_input(opt);
  SmythOpen u = smyth_open_from_json(in.is_object() ? in : Json{{"boxes", in}});
  Scalar value = lambda_bar(u);
  RlOpen trace;
  for (const auto& b : u.boxes()) trace = rl_union(trace, b);
  Json checks = Json::array();
  checks.push_back(check("equals-lambda-of-trace", value == lambda_eval(trace)));
  checks.push_back(check("strict-on-empty", !u.is_empty() || value == Scalar(0)));
  return emit_report(opt, "lambda-bar", smyth_open_to_json(u),
                     Json{{"lambda-bar", scalar_to_json(value)}}, checks);
}

int run_refute_pc(const Options& opt) {
  Json in = load_input(opt);
  RlOpen u = rlopen_from_json(in.at("u"));
  Scalar r = scalar_from_json(in.at("r"));
  std::vector<SmythElem> elems;
  for (const auto& e : in.at("elements")) elems.emplace_back(candidate_from_json(e));
  PCRefutationCertificate cert = refute_point_continuity(u, r, elems);
  return emit_report(opt, "refute-pc", in, pc_certificate_to_json(cert),
                     checks_of(verify_pc_certificate(cert)));
}

int run_consonance(const Options& opt) {
  Json in = load_input(opt);
  SmythElem q(candidate_from_json(in.at("q")));
  Scalar r = scalar_from_json(in.at("r"));
  ConsonanceCertificate cert = consonance_refuter(q, r);
  return emit_report(opt, "consonance", in, consonance_certificate_to_json(cert),
                     checks_of(verify_consonance_certificate(cert)));
}

int run_decompose_ncof(const Options& opt) {
  Json in = load_input(opt);
  Valuation nu = valuation_from_json(in.at("nu"));
  std::vector<std::uint64_t> hint;
  if (in.contains("support_hint"))
    hint = in.at("support_hint").get<std::vector<std::uint64_t>>();
  NcofDecomposition d = decompose_ncof(as_fn(nu), hint);
  Json alpha = Json::array();
  for (const auto& [i, c] : d.alpha) alpha.push_back({i, scalar_to_json(c)});
  // replay the decomposition against the input on fresh opens
  bool replay = true;
  std::uint64_t fresh = 0;
  for (auto n : hint) fresh = std::max(fresh, n + 1);
  for (std::uint64_t t = 0; t < 4; ++t) {
    NcofOpen w = NcofOpen::cofinite({fresh + t});
    Scalar expect = d.r;
    for (const auto& [i, c] : d.alpha)
      if (w.member(i)) expect += c;
    replay = replay && eval(nu, OpenSet(w)) == expect;
  }
  Json checks = Json::array();
  checks.push_back(check("verified-on-probe-family", true));  // the op throws otherwise
  checks.push_back(check("replay-on-fresh-opens", replay));
  return emit_report(opt, "decompose-ncof", in,
                     Json{{"alpha", alpha}, {"r", scalar_to_json(d.r)}}, checks);
}

int run_decompose_johnstone(const Options& opt) {
  Json in = load_input(opt);
  Valuation nu = valuation_from_json(in.at("nu"));
  std::vector<JPoint> hint;
  if (in.contains("support_hint"))
    for (const auto& e : in.at("support_hint")) hint.push_back(jpoint_from_json(e));
  JohnstoneDecomposition d = decompose_johnstone(as_fn(nu), hint);
  Json theta = Json::array();
  for (const auto& [p, c] : d.theta) theta.push_back({jpoint_to_json(p), scalar_to_json(c)});
  bool replay = true;
  for (std::uint32_t k = 0; k < 4; ++k) {
    std::uint32_t deep = 10 + k;
    for (const auto& [p, c] : d.theta) {
      deep = std::max(deep, p.column + 10);
      if (!p.maximal()) deep = std::max(deep, *p.height + 10);
    }
    OpenSet w(j_u_k(deep));
    Scalar expect = d.theta_mass(w) + d.r;
    replay = replay && eval(nu, w) == expect;
  }
  Json checks = Json::array();
  checks.push_back(check("verified-on-probe-family", true));
  checks.push_back(check("replay-on-deep-uk-opens", replay));
  return emit_report(opt, "decompose-johnstone", in,
                     Json{{"theta", theta}, {"r", scalar_to_json(d.r)}}, checks);
}

int run_escape_falsify(const Options& opt) {
  Json in = load_input(opt);
  JDiscrete theta = jdiscrete_from_json(in.at("theta"));
  Scalar r = scalar_from_json(in.at("r"));
  std::vector<JDiscrete> family;
  for (const auto& e : in.at("family")) family.push_back(jdiscrete_from_json(e));
  EscapeResult res = escape_falsifier(theta, r, family);
  Json fam_vals = Json::array();
  for (const auto& v : res.family_values) fam_vals.push_back(scalar_to_json(v));
  Json checks = Json::array();
  checks.push_back(check("gap-at-least-r", res.gap >= r));
  bool vanish = true;
  for (const auto& v : res.family_values) vanish = vanish && v == Scalar(0);
  checks.push_back(check("family-vanishes-on-witness", vanish));
  return emit_report(opt, "escape-falsify", in,
                     Json{{"k", res.k},
                          {"witness", jopen_to_json(res.witness)},
                          {"gap", scalar_to_json(res.gap)},
                          {"family_values", fam_vals}},
                     checks);
}

int run_tix_decompose(const Options& opt) {
  Json in = load_input(opt);
  ValuationTable table = table_from_json(in);
  require(table.poset()->size() <= opt.max_points, "size-limit-exceeded",
          "poset exceeds --max-points");
  TixDecomposition dec = tix_decompose(table);
  Json terms = Json::array();
  for (const auto& [a, c] : dec.terms) terms.push_back({scalar_to_json(a), c.carrier()});
  bool replay = true, irreducible = true, principal = true;
  Valuation sum = dec.to_valuation();
  for (const auto& u : table.upsets())
    replay = replay && eval(sum, OpenSet(u)) == table.value(u);
  for (const auto& [a, c] : dec.terms) {
    irreducible = irreducible && is_irreducible(table.poset(), c);
    bool p = false;
    for (std::size_t x = 0; x < table.poset()->size(); ++x)
      if (principal_downset(table.poset(), table.poset()->id(x)).mask() == c.mask()) p = true;
    principal = principal && p;
  }
  Json checks = Json::array();
  checks.push_back(check("re-evaluates-to-input", replay));
  checks.push_back(check("components-irreducible", irreducible));
  checks.push_back(check("components-principal-on-sober", principal));
  return emit_report(opt, "tix-decompose", in, Json{{"terms", terms}}, checks);
}

int run_fubini_check(const Options& opt) {
  Json in = load_input(opt);
  PosetPtr p = poset_from_json(in.at("p"));
  PosetPtr q = poset_from_json(in.at("q"));
  require(p->size() <= opt.max_points && q->size() <= opt.max_points, "size-limit-exceeded",
          "poset exceeds --max-points");
  Valuation nu = valuation_from_json(in.at("nu"), p);
  Valuation xi = valuation_from_json(in.at("xi"), q);
  std::vector<Scalar> h(p->size() * q->size(), Scalar(0));
  for (const auto& e : in.at("h")) {
    std::size_t i = p->index(e.at(0).get<std::string>());
    std::size_t j = q->index(e.at(1).get<std::string>());
    h[i * q->size() + j] = scalar_from_json(e.at(2));
  }
  FubiniVerdict verdict = fubini_check(p, q, h, nu, xi);
  Json result;
  Json checks = Json::array();
  if (const auto* eq = std::get_if<FubiniEqual>(&verdict)) {
    result = Json{{"verdict", "equal"}, {"value", scalar_to_json(eq->value)}};
    checks.push_back(check("iterated-integrals-equal", true));
  } else {
    const auto& ne = std::get<FubiniUnequal>(verdict);
    result = Json{{"verdict", "unequal"},
                  {"lhs", scalar_to_json(ne.lhs)},
                  {"rhs", scalar_to_json(ne.rhs)}};
    checks.push_back(check("iterated-integrals-equal", false));
  }
  return emit_report(opt, "fubini-check", in, result, checks);
}

// ---------------------------------------------------------------------------
// demo-separation: both headline counterexamples end to end.
// ---------------------------------------------------------------------------

int run_demo(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  auto pick = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };

  // (a) Johnstone: sample theta + r*mu, decompose, then refute minimality.
  JDiscrete theta;
  long support = pick(1, 4);
  for (long i = 0; i < support; ++i) {
    JPoint p = pick(0, 1) ? jpoint_max(static_cast<std::uint32_t>(pick(0, 4)))
                          : jpoint(static_cast<std::uint32_t>(pick(0, 4)),
                                   static_cast<std::uint32_t>(pick(0, 4)));
    bool dup = false;
    for (const auto& [q, c] : theta) dup = dup || q == p;
    if (!dup) theta.emplace_back(p, Scalar(Rat(pick(1, 4), 4)));
  }
  Scalar r(Rat(pick(1, 4), 4));
  std::vector<std::pair<Scalar, Valuation>> terms;
  for (const auto& [p, c] : theta) terms.emplace_back(c, Valuation::dirac(p));
  terms.emplace_back(r, Valuation::const_one(OpenKind::johnstone));
  Valuation nu = Valuation::lin_comb(std::move(terms));

  std::vector<JPoint> hint;
  for (const auto& [p, c] : theta) hint.push_back(p);
  JohnstoneDecomposition dec = decompose_johnstone(as_fn(nu), hint);
  bool recovered = dec.r == r && dec.theta.size() == theta.size();
  for (const auto& [p, c] : theta) recovered = recovered && dec.theta_at(p) == c;

  std::vector<JDiscrete> family;
  long members = pick(1, 3);
  for (long m = 0; m < members; ++m) {
    JDiscrete member;
    for (const auto& [p, c] : theta)
      if (pick(0, 1)) member.emplace_back(p, c * Scalar(Rat(1, 2)));
    family.push_back(std::move(member));
  }
  EscapeResult escape = escape_falsifier(dec.theta, dec.r, family);

  JOpen sample_open = j_u_k(static_cast<std::uint32_t>(pick(0, 3)));
  auto witness = pc_witness_mu(sample_open, Scalar(Rat(9, 10)));

  Json part_a{{"theta", jdiscrete_to_json(dec.theta)},
              {"r", scalar_to_json(dec.r)},
              {"escape",
               Json{{"k", escape.k},
                    {"witness", jopen_to_json(escape.witness)},
                    {"gap", scalar_to_json(escape.gap)}}},
              {"pc_witness", jpoint_to_json(witness[0])},
              {"summary",
               "every bounded continuous valuation on this dcpo splits as a discrete part "
               "plus r times the constant-one valuation; the constant-one valuation is "
               "point-continuous (single-point witnesses) yet no finite family of dominated "
               "discrete valuations gets within r of it on the witness open"}};

  // (b) Sorgenfrey/Smyth: refute point-continuity of the image of lambda.
  RlOpen u = RlOpen::interval(Rat(0), Rat(1));
  Scalar rb(Rat(1, 2));
  std::vector<SmythElem> elems;
  long m = pick(1, 3);
  for (long i = 0; i < m; ++i) {
    if (pick(0, 1)) {
      FiniteBlock fb;
      long k = pick(1, 3);
      for (long t = 0; t < k; ++t) fb.points.push_back(Rat(pick(0, 15), 16));
      std::sort(fb.points.begin(), fb.points.end());
      fb.points.erase(std::unique(fb.points.begin(), fb.points.end()), fb.points.end());
      elems.push_back(SmythElem({{std::move(fb)}}));
    } else {
      ChainRl c;
      c.limit = Rat(pick(0, 7), 16);
      c.coeff = (Rat(1) - c.limit) * Rat(1, 2);
      c.ratio = Rat(1, 2);
      c.include_limit = true;
      elems.push_back(SmythElem({{std::move(c)}}));
    }
  }
  PCRefutationCertificate cert = refute_point_continuity(u, rb, elems);
  Json part_b{{"certificate", pc_certificate_to_json(cert)},
              {"checks", checks_of(verify_pc_certificate(cert))},
              {"summary",
               "for every finite set of compact sets inside Box([0,1[) there is an open "
               "neighborhood of measure at most 1/2 < 1 = lambda([0,1[): the image of "
               "Lebesgue measure on the Smyth powerdomain is continuous but not "
               "point-continuous"}};

  Json checks = Json::array();
  checks.push_back(check("decomposition-recovered", recovered));
  checks.push_back(check("escape-gap-at-least-r", escape.gap >= dec.r));
  bool cert_ok = true;
  for (const auto& [name, ok] : verify_pc_certificate(cert)) cert_ok = cert_ok && ok;
  checks.push_back(check("refutation-certificate-valid", cert_ok));
  return emit_report(opt, "demo-separation", Json{{"seed", opt.seed}},
                     Json{{"johnstone", part_a}, {"sorgenfrey_smyth", part_b}}, checks);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact valuations, decompositions and counterexample certificates"};
  app.set_version_flag("--version", CRESCENT_VERSION);
  Options opt;
  app.add_flag("--pretty", opt.pretty, "aligned human-readable output (default: JSON)");
  bool json_flag = false;
  app.add_flag("--json", json_flag, "machine output (the default)");
  app.add_option("--seed", opt.seed, "seed for randomized demo sampling");
  app.add_option("--max-points", opt.max_points, "finite-poset size bound");

  struct SubInput {
    std::string input;
    std::string input_file;
  };
  std::vector<std::shared_ptr<SubInput>> sub_inputs;
  int exit_code = 0;
  auto add_sub = [&](const std::string& name, const std::string& desc, auto fn,
                     bool needs_input = true) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->fallthrough();  // let global flags follow the subcommand
    auto si = std::make_shared<SubInput>();
    sub_inputs.push_back(si);
    if (needs_input) {
      sub->add_option("input", si->input, "input as JSON");
      sub->add_option("--file", si->input_file, "read input JSON from a file");
    }
    sub->callback([&opt, &exit_code, si, fn]() {
      Options merged = opt;
      merged.input = si->input;
      merged.input_file = si->input_file;
      exit_code = fn(merged);
    });
    return sub;
  };

  add_sub("rl-measure", "exact Lebesgue measure of a Sorgenfrey open", run_rl_measure);
  add_sub("ring-normalize", "crescent normal form of a set expression", run_ring_normalize);
  add_sub("compactness", "decide compactness of a candidate subset of Rl", run_compactness);
  add_sub("lambda-bar", "image of lambda on a union of box opens", run_lambda_bar);
  add_sub("refute-pc", "point-continuity refutation certificate", run_refute_pc);
  add_sub("consonance", "consonance refutation certificate", run_consonance);
  add_sub("decompose-ncof", "split a valuation on N_cof as alpha + r*beta",
          run_decompose_ncof);
  add_sub("decompose-johnstone", "split a valuation on J as theta + r*mu",
          run_decompose_johnstone);
  add_sub("escape-falsify", "mass-escape witness against finite discrete families",
          run_escape_falsify);
  add_sub("tix-decompose", "peel a finite-valued table into characteristic valuations",
          run_tix_decompose);
  add_sub("fubini-check", "compare both iterated integrals for simple valuations",
          run_fubini_check);
  add_sub("demo-separation", "run both separation counterexamples end to end", run_demo,
          false);
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const crescent::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
