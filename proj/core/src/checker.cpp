#include "termcert/checker.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <future>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <sstream>

namespace termcert {

namespace {

using EK = CheckError::Kind;

struct Ctx {
  std::vector<int> path;
  std::vector<std::string> trail;
  std::ostream* trace = nullptr;
  int jobs = 1;

  Ctx enter(std::string name) const {
    Ctx out = *this;
    out.trail.push_back(std::move(name));
    return out;
  }
  Ctx descend(int child) const {
    Ctx out = *this;
    out.path.push_back(child);
    return out;
  }
  void note(const std::string& line) const {
    if (!trace) return;
    for (std::size_t i = 0; i < trail.size(); ++i) {
      if (i) *trace << "/";
      *trace << trail[i];
    }
    *trace << ": " << line << "\n";
  }
};

CheckResult ko_at(const Ctx& ctx, EK kind, std::string message) {
  return CheckResult::ko(CheckError{kind, std::move(message), ctx.path, ctx.trail});
}

CheckResult unsupported_at(const Ctx& ctx, std::string construct) {
  return CheckResult::unsupported(CheckError{EK::Unsupported, std::move(construct), ctx.path, ctx.trail});
}

CheckResult from_interp_error(const Ctx& ctx, const InterpError& e) {
  EK k = EK::UnboundVariable;
  switch (e.kind) {
    case InterpError::Kind::UnassignedSymbol: k = EK::UnassignedSymbol; break;
    case InterpError::Kind::ArityMismatch: k = EK::ArityMismatch; break;
    case InterpError::Kind::IndexOutOfRange: k = EK::BadPolynomial; break;
    case InterpError::Kind::UnboundVariable: k = EK::UnboundVariable; break;
  }
  return ko_at(ctx, k, e.detail);
}

bool rules_have_label(std::span<const Rule> rules) {
  for (const Rule& r : rules)
    if (contains_label(r.lhs) || contains_label(r.rhs)) return true;
  return false;
}

int rules_sharp_depth(std::span<const Rule> rules) {
  int d = 0;
  for (const Rule& r : rules)
    d = std::max({d, max_sharp_depth(r.lhs), max_sharp_depth(r.rhs)});
  return d;
}

bool interp_has_label(const PolyInterpretation& interp) {
  for (const auto& [sym, e] : interp.assignments())
    if (sym.has_label()) return true;
  return false;
}

int interp_sharp_depth(const PolyInterpretation& interp) {
  int d = 0;
  for (const auto& [sym, e] : interp.assignments()) d = std::max(d, sym.sharp_depth());
  return d;
}

// Per-assignment validity shared by both interpretation-based steps.
std::optional<CheckResult> validate_assignments(const Ctx& ctx, const PolyInterpretation& interp,
                                                bool strict_monotone) {
  for (const auto& [sym, e] : interp.assignments()) {
    if (e.poly.max_var_index() > static_cast<int>(e.arity))
      return ko_at(ctx, EK::BadPolynomial,
                   "interpretation of " + sym.show() + " mentions X" +
                       std::to_string(e.poly.max_var_index()) + " beyond its arity " +
                       std::to_string(e.arity));
    if (strict_monotone ? !check_monotone_strict(e.poly, e.arity)
                        : !check_monotone_weak(e.poly))
      return ko_at(ctx, EK::MonotoneViolation,
                   "interpretation of " + sym.show() + " = " + e.poly.show() + " is not " +
                       (strict_monotone ? "strictly" : "weakly") + " monotone");
  }
  return std::nullopt;
}

std::optional<CheckResult> require_coverage(const Ctx& ctx, const PolyInterpretation& interp,
                                            const Arity& symbols) {
  for (const auto& [sym, n] : symbols) {
    const SymbolInterp* e = interp.find(sym);
    if (!e)
      return ko_at(ctx, EK::UnassignedSymbol, "no interpretation for symbol " + sym.show());
    if (e->arity != n)
      return ko_at(ctx, EK::ArityMismatch,
                   "symbol " + sym.show() + " interpreted at arity " + std::to_string(e->arity) +
                       " but used with arity " + std::to_string(n));
  }
  return std::nullopt;
}

struct Interpreted {
  Polynomial lhs, rhs;
};

Result<Interpreted, InterpError> interpret_rule(const PolyInterpretation& interp, const Rule& r) {
  VarIndexMap vm = rule_var_indices(r);
  auto l = interpret_term(interp, r.lhs, vm);
  if (!l) return l.error();
  auto rr = interpret_term(interp, r.rhs, vm);
  if (!rr) return rr.error();
  return Interpreted{std::move(l).value(), std::move(rr).value()};
}

std::vector<Rule> dedup_keep_order(const std::vector<Rule>& rules) {
  std::vector<Rule> out;
  for (const Rule& r : rules)
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  return out;
}

CheckResult check_proof_node(const Trs& R, const Proof& p, const Ctx& ctx);
CheckResult check_dp_proof_node(const DpProblem& p, const DpProof& proof, const Ctx& ctx);

CheckResult do_rule_removal(const Trs& R, const RuleRemoval& step, const Ctx& ctx) {
  if (interp_has_label(step.interp) || rules_have_label(step.remaining))
    return unsupported_at(ctx, "labeledSymbol");
  if (interp_sharp_depth(step.interp) > 1 || rules_sharp_depth(step.remaining) > 1)
    return ko_at(ctx, EK::BadSharpNesting, "sharp symbols must not be nested");

  if (auto bad = validate_assignments(ctx, step.interp, /*strict_monotone=*/true)) return *bad;
  if (auto bad = require_coverage(ctx, step.interp, R.arity())) return *bad;
  ctx.note("interpretation is strictly monotone and covers " +
           std::to_string(R.arity().size()) + " symbols");

  std::set<Rule> system(R.rules().begin(), R.rules().end());
  for (const Rule& r : step.remaining)
    if (!system.contains(r))
      return ko_at(ctx, EK::AlienRemaining,
                   "remaining rule " + show(r) + " is not a rule of the system");

  std::set<Rule> keep(step.remaining.begin(), step.remaining.end());
  std::vector<Interpreted> polys;
  polys.reserve(R.rules().size());
  for (const Rule& r : R.rules()) {
    auto ip = interpret_rule(step.interp, r);
    if (!ip) return from_interp_error(ctx, ip.error());
    polys.push_back(std::move(ip).value());
  }

  std::size_t removed = 0;
  for (std::size_t i = 0; i < R.rules().size(); ++i) {
    const Rule& r = R.rules()[i];
    if (keep.contains(r)) continue;
    ++removed;
    if (!check_gt(polys[i].lhs, polys[i].rhs))
      return ko_at(ctx, EK::NotStrict,
                   "rule " + std::to_string(i + 1) + " not strictly decreasing: " + show(r));
    ctx.note("rule " + std::to_string(i + 1) + " strictly decreasing, removed");
  }
  for (std::size_t i = 0; i < R.rules().size(); ++i) {
    const Rule& r = R.rules()[i];
    if (!keep.contains(r)) continue;
    if (!check_ge(polys[i].lhs, polys[i].rhs))
      return ko_at(ctx, EK::NotWeak,
                   "rule " + std::to_string(i + 1) + " not weakly decreasing: " + show(r));
    ctx.note("rule " + std::to_string(i + 1) + " weakly decreasing, kept");
  }
  if (removed == 0) return ko_at(ctx, EK::NoProgress, "no rule was removed");

  auto next = Trs::make(dedup_keep_order(step.remaining));
  assert(next);  // a subset of a valid system is valid
  return check_proof_node(next.value(), *step.sub, ctx.descend(0));
}

CheckResult do_dp_trans(const Trs& R, const DpTrans& step, const Ctx& ctx) {
  if (rules_have_label(step.dps)) return unsupported_at(ctx, "labeledSymbol");
  if (rules_sharp_depth(step.dps) > 1)
    return ko_at(ctx, EK::BadSharpNesting, "sharp symbols must not be nested");
  for (const Rule& r : R.rules())
    if (contains_sharp(r.lhs) || contains_sharp(r.rhs))
      return ko_at(ctx, EK::SharpInTrs, "rule " + show(r) + " already contains a sharp symbol");

  auto pairs = compute_dps(R);
  assert(pairs);  // no sharps in R was just established

  std::set<Rule> listed(step.dps.begin(), step.dps.end());
  for (const Rule& d : pairs.value().refined)
    if (!listed.contains(d))
      return ko_at(ctx, EK::MissingDp, "dependency pair " + show(d) + " is missing");
  std::set<Rule> full(pairs.value().full.begin(), pairs.value().full.end());
  for (const Rule& d : step.dps)
    if (!full.contains(d))
      return ko_at(ctx, EK::AlienDp,
                   "listed pair " + show(d) + " is not a dependency pair of the system");
  ctx.note(std::to_string(listed.size()) + " dependency pairs accepted");

  DpProblem prob{dedup_keep_order(step.dps), R};
  return check_dp_proof_node(prob, *step.sub, ctx.descend(0));
}

// Runs component subproofs left to right, up to `jobs` at a time. Traces are
// buffered per component so output is identical at any parallelism.
std::vector<CheckResult> run_component_jobs(
    const std::vector<std::pair<DpProblem, const DpProof*>>& jobs,
    const std::vector<Ctx>& ctxs, int parallelism) {
  std::vector<CheckResult> results;
  results.reserve(jobs.size());
  std::size_t next = 0;
  while (next < jobs.size()) {
    std::size_t batch = std::min<std::size_t>(std::max(parallelism, 1), jobs.size() - next);
    if (batch <= 1) {
      results.push_back(check_dp_proof_node(jobs[next].first, *jobs[next].second, ctxs[next]));
      ++next;
      continue;
    }
    std::vector<std::future<CheckResult>> futs;
    futs.reserve(batch);
    for (std::size_t k = 0; k < batch; ++k) {
      const auto& job = jobs[next + k];
      const Ctx& c = ctxs[next + k];
      futs.push_back(std::async(std::launch::async, [&job, &c] {
        return check_dp_proof_node(job.first, *job.second, c);
      }));
    }
    for (auto& f : futs) results.push_back(f.get());
    next += batch;
  }
  return results;
}

CheckResult do_dep_graph(const DpProblem& p, const DepGraphProc& proc, const Ctx& ctx) {
  DepGraph g = estimate_graph(p.dps, p.trs);
  std::vector<Scc> parts = sccs(g);
  if (parts.size() != proc.components.size())
    return ko_at(ctx, EK::ComponentMismatch,
                 "certificate lists " + std::to_string(proc.components.size()) +
                     " components but the estimated graph has " + std::to_string(parts.size()));

  const std::size_t n = proc.components.size();
  std::vector<std::optional<CheckResult>> structural(n);
  std::vector<bool> matched(parts.size(), false);

  auto sorted_rules = [](std::vector<Rule> rs) {
    std::sort(rs.begin(), rs.end());
    return rs;
  };
  std::vector<std::vector<Rule>> part_rules;
  part_rules.reserve(parts.size());
  for (const Scc& s : parts) {
    std::vector<Rule> rs;
    rs.reserve(s.nodes.size());
    for (int i : s.nodes) rs.push_back(p.dps[static_cast<std::size_t>(i)]);
    part_rules.push_back(sorted_rules(std::move(rs)));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const DpComponent& c = proc.components[i];
    std::string ordinal = "component " + std::to_string(i + 1);
    if (rules_have_label(c.dps)) {
      structural[i] = unsupported_at(ctx, "labeledSymbol");
      continue;
    }
    if (rules_sharp_depth(c.dps) > 1) {
      structural[i] = ko_at(ctx, EK::BadSharpNesting, ordinal + ": sharp symbols must not be nested");
      continue;
    }
    std::vector<Rule> want = sorted_rules(c.dps);
    std::size_t found = parts.size();
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (!matched[j] && part_rules[j] == want) {
        found = j;
        break;
      }
    if (found == parts.size()) {
      structural[i] = ko_at(ctx, EK::ComponentMismatch,
                            ordinal + " does not match any strongly connected component");
      continue;
    }
    matched[found] = true;
    bool trivial = parts[found].trivial;
    if (c.real_scc == trivial) {
      structural[i] = ko_at(ctx, EK::FlagMismatch,
                            ordinal + ": realScc=" + (c.real_scc ? "true" : "false") +
                                " but the recomputed component is " +
                                (trivial ? "trivial" : "a real SCC"));
      continue;
    }
    if (c.real_scc && !c.sub) {
      structural[i] = ko_at(ctx, EK::MissingSubproof, ordinal + " needs a subproof");
      continue;
    }
    if (!c.real_scc && c.sub) {
      structural[i] =
          ko_at(ctx, EK::UnexpectedSubproof, ordinal + " is trivial yet carries a subproof");
      continue;
    }
  }
  ctx.note(std::to_string(n) + " components compared against the recomputed partition");

  // Subproofs for matched real components, left to right.
  std::vector<std::pair<DpProblem, const DpProof*>> jobs;
  std::vector<Ctx> job_ctxs;
  std::vector<std::size_t> job_of(n, SIZE_MAX);
  std::vector<std::ostringstream> buffers;
  for (std::size_t i = 0; i < n; ++i) {
    const DpComponent& c = proc.components[i];
    if (structural[i] || !c.real_scc || !c.sub) continue;
    job_of[i] = jobs.size();
    jobs.emplace_back(DpProblem{c.dps, p.trs}, c.sub.get());
    Ctx sub = ctx.descend(static_cast<int>(i)).enter("component[" + std::to_string(i + 1) + "]");
    job_ctxs.push_back(std::move(sub));
  }
  buffers.resize(jobs.size());
  if (ctx.trace)
    for (std::size_t k = 0; k < jobs.size(); ++k) job_ctxs[k].trace = &buffers[k];

  std::vector<CheckResult> sub_results = run_component_jobs(jobs, job_ctxs, ctx.jobs);

  if (ctx.trace)
    for (const std::ostringstream& b : buffers) *ctx.trace << b.str();

  for (std::size_t i = 0; i < n; ++i) {
    if (structural[i]) return *structural[i];
    if (job_of[i] != SIZE_MAX && !sub_results[job_of[i]].is_ok()) return sub_results[job_of[i]];
  }
  return CheckResult::ok();
}

CheckResult do_red_pair(const DpProblem& p, const RedPairProc& proc, const Ctx& ctx) {
  if (interp_has_label(proc.interp) || rules_have_label(proc.remaining))
    return unsupported_at(ctx, "labeledSymbol");
  if (interp_sharp_depth(proc.interp) > 1 || rules_sharp_depth(proc.remaining) > 1)
    return ko_at(ctx, EK::BadSharpNesting, "sharp symbols must not be nested");

  if (auto bad = validate_assignments(ctx, proc.interp, /*strict_monotone=*/false)) return *bad;

  // Coverage over every symbol of the problem, pairs included.
  Arity symbols = p.trs.arity();
  auto dsig = infer_signature(p.dps);
  if (!dsig)
    return ko_at(ctx, EK::ArityMismatch,
                 "symbol " + dsig.error().symbol.show() + " used with arities " +
                     std::to_string(dsig.error().first) + " and " +
                     std::to_string(dsig.error().second));
  for (const auto& [sym, n] : dsig.value()) {
    auto [it, fresh] = symbols.emplace(sym, n);
    if (!fresh && it->second != n)
      return ko_at(ctx, EK::ArityMismatch,
                   "symbol " + sym.show() + " used with arities " + std::to_string(it->second) +
                       " and " + std::to_string(n));
  }
  if (auto bad = require_coverage(ctx, proc.interp, symbols)) return *bad;
  ctx.note("interpretation is weakly monotone and covers " + std::to_string(symbols.size()) +
           " symbols");

  for (std::size_t i = 0; i < p.trs.rules().size(); ++i) {
    const Rule& r = p.trs.rules()[i];
    auto ip = interpret_rule(proc.interp, r);
    if (!ip) return from_interp_error(ctx, ip.error());
    if (!check_ge(ip.value().lhs, ip.value().rhs))
      return ko_at(ctx, EK::NotWeak,
                   "rule " + std::to_string(i + 1) + " not weakly decreasing: " + show(r));
  }

  std::set<Rule> dpset(p.dps.begin(), p.dps.end());
  for (const Rule& d : proc.remaining)
    if (!dpset.contains(d))
      return ko_at(ctx, EK::AlienRemaining,
                   "remaining pair " + show(d) + " is not one of the dependency pairs");

  std::vector<Interpreted> polys;
  polys.reserve(p.dps.size());
  for (std::size_t i = 0; i < p.dps.size(); ++i) {
    auto ip = interpret_rule(proc.interp, p.dps[i]);
    if (!ip) return from_interp_error(ctx, ip.error());
    if (!check_ge(ip.value().lhs, ip.value().rhs))
      return ko_at(ctx, EK::NotWeak, "dependency pair " + std::to_string(i + 1) +
                                         " not weakly decreasing: " + show(p.dps[i]));
    polys.push_back(std::move(ip).value());
  }

  std::set<Rule> keep(proc.remaining.begin(), proc.remaining.end());
  std::size_t removed = 0;
  for (std::size_t i = 0; i < p.dps.size(); ++i) {
    if (keep.contains(p.dps[i])) continue;
    ++removed;
    if (!check_gt(polys[i].lhs, polys[i].rhs))
      return ko_at(ctx, EK::NotStrict, "dependency pair " + std::to_string(i + 1) +
                                           " not strictly decreasing: " + show(p.dps[i]));
    ctx.note("dependency pair " + std::to_string(i + 1) + " strictly decreasing, removed");
  }
  if (removed == 0) return ko_at(ctx, EK::NoProgress, "no dependency pair was removed");

  DpProblem next{dedup_keep_order(proc.remaining), p.trs};
  return check_dp_proof_node(next, *proc.sub, ctx.descend(0));
}

CheckResult check_proof_node(const Trs& R, const Proof& p, const Ctx& ctx) {
  if (std::holds_alternative<REmpty>(p.node)) {
    Ctx here = ctx.enter("rIsEmpty");
    if (!R.rules().empty())
      return ko_at(here, EK::NonEmpty, "rule " + show(R.rules().front()) + " remains");
    here.note("system is empty");
    return CheckResult::ok();
  }
  if (const auto* rr = std::get_if<RuleRemoval>(&p.node))
    return do_rule_removal(R, *rr, ctx.enter("ruleRemoval"));
  return do_dp_trans(R, std::get<DpTrans>(p.node), ctx.enter("dpTrans"));
}

CheckResult check_dp_proof_node(const DpProblem& p, const DpProof& proof, const Ctx& ctx) {
  if (std::holds_alternative<PEmpty>(proof.node)) {
    Ctx here = ctx.enter("pIsEmpty");
    if (!p.dps.empty())
      return ko_at(here, EK::NonEmptyDps,
                   "dependency pair " + show(p.dps.front()) + " remains");
    here.note("no dependency pairs remain");
    return CheckResult::ok();
  }
  if (const auto* g = std::get_if<DepGraphProc>(&proof.node))
    return do_dep_graph(p, *g, ctx.enter("depGraphProc"));
  return do_red_pair(p, std::get<RedPairProc>(proof.node), ctx.enter("redPairProc"));
}

Ctx root_ctx(const CheckOptions& opts, std::string first) {
  Ctx ctx;
  ctx.trail.push_back(std::move(first));
  ctx.trace = opts.trace;
  ctx.jobs = std::max(1, opts.jobs);
  return ctx;
}

}  // namespace

CheckResult check_certificate(const Certificate& c, const CheckOptions& opts) {
  // Labels anywhere in the input system are out of scope; nested sharps are
  // never well-formed.
  Ctx input = root_ctx(opts, "input");
  if (rules_have_label(c.input.rules())) return unsupported_at(input, "labeledSymbol");
  if (rules_sharp_depth(c.input.rules()) > 1)
    return ko_at(input, EK::BadSharpNesting, "sharp symbols must not be nested");
  return check_proof_node(c.input, c.proof, root_ctx(opts, "proof"));
}

CheckResult check_empty(const Trs& R) {
  Ctx ctx;
  ctx.trail.push_back("rIsEmpty");
  if (!R.rules().empty())
    return ko_at(ctx, EK::NonEmpty, "rule " + show(R.rules().front()) + " remains");
  return CheckResult::ok();
}

CheckResult check_rule_removal(const Trs& R, const RuleRemoval& step, const CheckOptions& opts) {
  return do_rule_removal(R, step, root_ctx(opts, "ruleRemoval"));
}

CheckResult check_dp_trans(const Trs& R, const DpTrans& step, const CheckOptions& opts) {
  return do_dp_trans(R, step, root_ctx(opts, "dpTrans"));
}

CheckResult check_dp_proof(const DpProblem& p, const DpProof& proof, const CheckOptions& opts) {
  Ctx ctx;
  ctx.trace = opts.trace;
  ctx.jobs = std::max(1, opts.jobs);
  return check_dp_proof_node(p, proof, ctx);
}

std::string render_path(const CheckError& e) {
  std::string out;
  for (std::size_t i = 0; i < e.trail.size(); ++i) {
    if (i) out += "/";
    out += e.trail[i];
  }
  return out;
}

std::string render_verdict(const CheckResult& r) {
  switch (r.status()) {
    case CheckResult::Status::Ok:
      return "CERTIFIED";
    case CheckResult::Status::Ko:
      return "REJECTED: " + render_path(r.error()) + ": " + r.error().message;
    case CheckResult::Status::Unsupported:
      return "UNSUPPORTED: " + render_path(r.error()) + ": " + r.error().message;
  }
  return {};
}

}  // namespace termcert
