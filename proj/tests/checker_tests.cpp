#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "termcert/checker.hpp"

using namespace termcert;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Certificate load(const std::string& name) {
  auto r = parse_cpf(read_fixture(name));
  REQUIRE(r.ok());
  return std::move(r).value();
}

Term V(const char* n) { return Term::var(n); }
Symbol S(const char* n) { return Symbol::name(n); }
Term F(const char* n, std::vector<Term> args = {}) { return Term::fun(S(n), std::move(args)); }
Term Fs(const char* n, std::vector<Term> args = {}) {
  return Term::fun(Symbol::sharp(S(n)), std::move(args));
}

Polynomial C(int c) { return Polynomial::constant(c); }
const Polynomial X1 = Polynomial::variable(1);
const Polynomial X2 = Polynomial::variable(2);

Polynomial add_poly() {  // 2*X1 + X2
  return poly_add(poly_mul(C(2), X1), X2);
}

Trs add_system() {
  Rule r1{F("add", {F("zero"), V("y")}), V("y")};
  Rule r2{F("add", {F("succ", {V("x")}), V("y")}),
          F("succ", {F("add", {V("x"), V("y")})})};
  return Trs::make({r1, r2}).value();
}

std::shared_ptr<const Proof> sub(Proof p) {
  return std::make_shared<const Proof>(std::move(p));
}
std::shared_ptr<const DpProof> dsub(DpProof p) {
  return std::make_shared<const DpProof>(std::move(p));
}

PolyInterpretation add_interp() {
  PolyInterpretation phi;
  phi.assign(S("add"), 2, add_poly());
  phi.assign(S("succ"), 1, poly_add(X1, C(1)));
  phi.assign(S("zero"), 0, C(1));
  return phi;
}

CheckError expect_ko(const CheckResult& r) {
  REQUIRE(r.is_ko());
  return r.error();
}

}  // namespace

TEST_CASE("fixture verdicts") {
  CHECK(check_certificate(load("add_polyint.cpf")).is_ok());
  CHECK(check_certificate(load("add_dp.cpf")).is_ok());
  CHECK(check_certificate(load("two_loops.cpf")).is_ok());

  auto bad = check_certificate(load("add_badpoly.cpf"));
  CheckError e = expect_ko(bad);
  CHECK(e.kind == CheckError::Kind::NotStrict);
  CHECK(render_path(e) == "proof/ruleRemoval");
  CHECK(render_verdict(bad) ==
        "REJECTED: proof/ruleRemoval: rule 2 not strictly decreasing: "
        "add(succ(x),y) -> succ(add(x,y))");

  auto weak = check_certificate(load("circular_weak.cpf"));
  CheckError w = expect_ko(weak);
  CHECK(w.kind == CheckError::Kind::NotWeak);
  CHECK(w.message == "rule 2 not weakly decreasing: b -> a");
  CHECK(w.path.empty());

  auto lab = check_certificate(load("labeled.cpf"));
  REQUIRE(lab.is_unsupported());
  CHECK(lab.error().trail == std::vector<std::string>{"input"});
  CHECK(render_verdict(lab) == "UNSUPPORTED: input: labeledSymbol");

  CHECK(render_verdict(CheckResult::ok()) == "CERTIFIED");
}

TEST_CASE("emptiness") {
  CHECK(check_empty(Trs::make({}).value()).is_ok());
  auto r = check_empty(Trs::make({Rule{F("a"), F("b")}}).value());
  CheckError e = expect_ko(r);
  CHECK(e.kind == CheckError::Kind::NonEmpty);
  CHECK(e.message == "rule a -> b remains");
}

TEST_CASE("rule removal validates before comparing") {
  Trs R = add_system();

  RuleRemoval good{add_interp(), {}, sub(Proof{REmpty{}})};
  CHECK(check_rule_removal(R, good).is_ok());

  // non-monotone: the second argument has no coefficient
  PolyInterpretation flat;
  flat.assign(S("add"), 2, poly_mul(C(2), X1));
  flat.assign(S("succ"), 1, poly_add(X1, C(1)));
  flat.assign(S("zero"), 0, C(1));
  auto mono = check_rule_removal(R, RuleRemoval{flat, {}, sub(Proof{REmpty{}})});
  CHECK(expect_ko(mono).kind == CheckError::Kind::MonotoneViolation);
  CHECK(expect_ko(mono).message ==
        "interpretation of add = 2*X1 is not strictly monotone");

  // an interpretation may not mention indices beyond its declared arity
  PolyInterpretation oob = add_interp();
  PolyInterpretation replaced;
  replaced.assign(S("add"), 2, add_poly());
  replaced.assign(S("succ"), 1, X2);
  replaced.assign(S("zero"), 0, C(1));
  auto badpoly = check_rule_removal(R, RuleRemoval{replaced, {}, sub(Proof{REmpty{}})});
  CHECK(expect_ko(badpoly).kind == CheckError::Kind::BadPolynomial);

  // every symbol of the system needs an interpretation
  PolyInterpretation partial;
  partial.assign(S("add"), 2, add_poly());
  partial.assign(S("succ"), 1, poly_add(X1, C(1)));
  auto missing = check_rule_removal(R, RuleRemoval{partial, {}, sub(Proof{REmpty{}})});
  CheckError me = expect_ko(missing);
  CHECK(me.kind == CheckError::Kind::UnassignedSymbol);
  CHECK(me.message == "no interpretation for symbol zero");

  // interpretation arity must match the signature; X1 keeps the assignment
  // strictly monotone at arity 1 so only the arity clash can fire
  PolyInterpretation skew;
  skew.assign(S("add"), 2, add_poly());
  skew.assign(S("succ"), 1, poly_add(X1, C(1)));
  skew.assign(S("zero"), 1, X1);
  auto arity = check_rule_removal(R, RuleRemoval{skew, {}, sub(Proof{REmpty{}})});
  CHECK(expect_ko(arity).kind == CheckError::Kind::ArityMismatch);
}

TEST_CASE("rule removal compares and tracks progress") {
  Trs R = add_system();

  // remaining rules must come from the system
  RuleRemoval alien{add_interp(), {Rule{F("zero"), F("zero")}}, sub(Proof{REmpty{}})};
  CheckError ae = expect_ko(check_rule_removal(R, alien));
  CHECK(ae.kind == CheckError::Kind::AlienRemaining);
  CHECK(ae.message == "remaining rule zero -> zero is not a rule of the system");

  // keeping everything removes nothing
  RuleRemoval lazy{add_interp(), R.rules(), sub(Proof{REmpty{}})};
  CheckError le = expect_ko(check_rule_removal(R, lazy));
  CHECK(le.kind == CheckError::Kind::NoProgress);
  CHECK(le.message == "no rule was removed");

  // kept rules only need the weak comparison, removed ones the strict
  PolyInterpretation low;  // phi_a = 1, phi_b = 0 for { a -> b, b -> a }
  low.assign(S("a"), 0, C(1));
  low.assign(S("b"), 0, C(0));
  Trs loop = Trs::make({Rule{F("a"), F("b")}, Rule{F("b"), F("a")}}).value();
  Rule back{F("b"), F("a")};
  CheckError ke = expect_ko(check_rule_removal(
      loop, RuleRemoval{low, {back}, sub(Proof{REmpty{}})}));
  CHECK(ke.kind == CheckError::Kind::NotWeak);
  CHECK(ke.message == "rule 2 not weakly decreasing: b -> a");

  // numbering in messages follows input position
  PolyInterpretation same = add_interp();
  PolyInterpretation weak_add;
  weak_add.assign(S("add"), 2, poly_add(X1, X2));
  weak_add.assign(S("succ"), 1, poly_add(X1, C(1)));
  weak_add.assign(S("zero"), 0, C(1));
  CheckError se = expect_ko(check_rule_removal(
      R, RuleRemoval{weak_add, {}, sub(Proof{REmpty{}})}));
  CHECK(se.kind == CheckError::Kind::NotStrict);
  CHECK(se.message ==
        "rule 2 not strictly decreasing: add(succ(x),y) -> succ(add(x,y))");
}

TEST_CASE("dependency pair transformation") {
  Trs R = add_system();
  Rule dp{Fs("add", {F("succ", {V("x")}), V("y")}), Fs("add", {V("x"), V("y")})};

  DpTrans good{{dp}, dsub(DpProof{PEmpty{}})};
  // pIsEmpty on a nonempty pair set fails below dpTrans, not at it
  CheckError tail = expect_ko(check_dp_trans(R, good));
  CHECK(tail.kind == CheckError::Kind::NonEmptyDps);
  CHECK(tail.path == std::vector<int>{0});

  DpTrans empty{{}, dsub(DpProof{PEmpty{}})};
  CheckError miss = expect_ko(check_dp_trans(R, empty));
  CHECK(miss.kind == CheckError::Kind::MissingDp);
  CHECK(miss.message ==
        "dependency pair add#(succ(x),y) -> add#(x,y) is missing");

  DpTrans alien{{dp, Rule{Fs("add", {V("x"), V("y")}), Fs("add", {V("y"), V("x")})}},
                dsub(DpProof{PEmpty{}})};
  CheckError al = expect_ko(check_dp_trans(R, alien));
  CHECK(al.kind == CheckError::Kind::AlienDp);

  Trs sharped = Trs::make({Rule{Fs("f", {V("x")}), V("x")}}).value();
  CheckError sh = expect_ko(check_dp_trans(sharped, DpTrans{{}, dsub(DpProof{PEmpty{}})}));
  CHECK(sh.kind == CheckError::Kind::SharpInTrs);

  Rule nested{Term::fun(Symbol::sharp(Symbol::sharp(S("add"))), {V("x"), V("y")}), dp.rhs};
  CheckError bn = expect_ko(check_dp_trans(R, DpTrans{{nested}, dsub(DpProof{PEmpty{}})}));
  CHECK(bn.kind == CheckError::Kind::BadSharpNesting);
}

TEST_CASE("listing anything between refined and full pairs is accepted") {
  // g(x) inside the left argument makes f# -> g# refinable away
  Trs R = Trs::make({Rule{F("f", {F("g", {V("x")})}), F("g", {V("x")})},
                     Rule{F("g", {V("x")}), F("c")}})
              .value();
  auto pairs = compute_dps(R);
  REQUIRE(pairs.ok());
  REQUIRE(pairs.value().refined.empty());
  REQUIRE(pairs.value().full.size() == 1);

  // both the refined (empty) and the full listing check out
  DpTrans with_full{pairs.value().full, dsub(DpProof{PEmpty{}})};
  CheckError full_tail = expect_ko(check_dp_trans(R, with_full));
  CHECK(full_tail.kind == CheckError::Kind::NonEmptyDps);  // reached the subproof

  DpTrans with_refined{pairs.value().refined, dsub(DpProof{PEmpty{}})};
  CHECK(check_dp_trans(R, with_refined).is_ok());
}

TEST_CASE("dependency graph decomposition") {
  Certificate c = load("two_loops.cpf");
  const auto& dt = std::get<DpTrans>(c.proof.node);
  const auto& dg = std::get<DepGraphProc>(dt.sub->node);
  REQUIRE(dg.components.size() == 3);
  DpProblem p{dt.dps, c.input};

  CHECK(check_dp_proof(p, *dt.sub).is_ok());

  SUBCASE("component count must match the recomputed partition") {
    DepGraphProc two{{dg.components[0], dg.components[1]}};
    CheckError e = expect_ko(check_dp_proof(p, DpProof{two}));
    CHECK(e.kind == CheckError::Kind::ComponentMismatch);
    CHECK(e.message == "certificate lists 2 components but the estimated graph has 3");
  }

  SUBCASE("components must match as rule multisets") {
    DepGraphProc swapped{dg.components};
    swapped.components[0].dps = {dt.dps[0], dt.dps[1]};
    CheckError e = expect_ko(check_dp_proof(p, DpProof{swapped}));
    CHECK(e.kind == CheckError::Kind::ComponentMismatch);
    CHECK(e.message == "component 1 does not match any strongly connected component");
  }

  SUBCASE("order of listed components is free") {
    DepGraphProc rotated{{dg.components[2], dg.components[0], dg.components[1]}};
    CHECK(check_dp_proof(p, DpProof{rotated}).is_ok());
  }

  SUBCASE("realScc flags are checked against the graph") {
    DepGraphProc flipped{dg.components};
    flipped.components[1].real_scc = true;
    flipped.components[1].sub = dg.components[0].sub;
    CheckError e = expect_ko(check_dp_proof(p, DpProof{flipped}));
    CHECK(e.kind == CheckError::Kind::FlagMismatch);
    CHECK(e.message ==
          "component 2: realScc=true but the recomputed component is trivial");
  }

  SUBCASE("real components need subproofs") {
    DepGraphProc bare{dg.components};
    bare.components[0].sub = nullptr;
    CheckError e = expect_ko(check_dp_proof(p, DpProof{bare}));
    CHECK(e.kind == CheckError::Kind::MissingSubproof);
    CHECK(e.message == "component 1 needs a subproof");
  }

  SUBCASE("trivial components must not carry subproofs") {
    DepGraphProc noisy{dg.components};
    noisy.components[1].sub = dsub(DpProof{PEmpty{}});
    CheckError e = expect_ko(check_dp_proof(p, DpProof{noisy}));
    CHECK(e.kind == CheckError::Kind::UnexpectedSubproof);
    CHECK(e.message == "component 2 is trivial yet carries a subproof");
  }

  SUBCASE("subproof failures carry the component's machine path") {
    DepGraphProc broken{dg.components};
    auto rp = std::get<RedPairProc>(broken.components[2].sub->node);
    rp.remaining = broken.components[2].dps;  // remove nothing
    broken.components[2].sub = dsub(DpProof{rp});
    CheckError e = expect_ko(check_dp_proof(p, DpProof{broken}));
    CHECK(e.kind == CheckError::Kind::NoProgress);
    CHECK(e.path == std::vector<int>{2});
    CHECK(e.trail ==
          std::vector<std::string>{"depGraphProc", "component[3]", "redPairProc"});
  }

  SUBCASE("the leftmost failing component is reported") {
    DepGraphProc doubly{dg.components};
    auto rp0 = std::get<RedPairProc>(doubly.components[0].sub->node);
    rp0.remaining = doubly.components[0].dps;
    doubly.components[0].sub = dsub(DpProof{rp0});
    auto rp2 = std::get<RedPairProc>(doubly.components[2].sub->node);
    rp2.remaining = doubly.components[2].dps;
    doubly.components[2].sub = dsub(DpProof{rp2});
    for (int jobs : {1, 4}) {
      CAPTURE(jobs);
      CheckError e = expect_ko(check_dp_proof(p, DpProof{doubly}, {nullptr, jobs}));
      CHECK(e.path == std::vector<int>{0});
    }
  }
}

TEST_CASE("reduction pair processor") {
  Certificate c = load("add_dp.cpf");
  const auto& dt = std::get<DpTrans>(c.proof.node);
  const auto& dg = std::get<DepGraphProc>(dt.sub->node);
  const RedPairProc& rp = std::get<RedPairProc>(dg.components[0].sub->node);
  DpProblem p{dt.dps, c.input};

  CHECK(check_dp_proof(p, *dg.components[0].sub).is_ok());

  SUBCASE("weak monotonicity is enough but still required") {
    RedPairProc neg = rp;
    PolyInterpretation phi;
    phi.assign(Symbol::sharp(S("add")), 2, poly_sub(X1, C(1)));
    phi.assign(S("add"), 2, add_poly());
    phi.assign(S("succ"), 1, poly_add(X1, C(1)));
    phi.assign(S("zero"), 0, C(1));
    neg.interp = phi;
    CheckError e = expect_ko(check_dp_proof(p, DpProof{neg}));
    CHECK(e.kind == CheckError::Kind::MonotoneViolation);
    CHECK(e.message == "interpretation of add# = -1 + X1 is not weakly monotone");
  }

  SUBCASE("every symbol including the marked ones needs an assignment") {
    RedPairProc gap = rp;
    PolyInterpretation phi;
    for (const auto& [f, si] : rp.interp.assignments())
      if (f != S("succ")) phi.assign(f, si.arity, si.poly);
    gap.interp = phi;
    CheckError e = expect_ko(check_dp_proof(p, DpProof{gap}));
    CHECK(e.kind == CheckError::Kind::UnassignedSymbol);
    CHECK(e.message == "no interpretation for symbol succ");
  }

  SUBCASE("system rules must be weakly decreasing") {
    RedPairProc low = rp;
    PolyInterpretation phi;
    phi.assign(Symbol::sharp(S("add")), 2, X1);
    phi.assign(S("add"), 2, X1);  // drops rule 1: 1 >= X2 fails
    phi.assign(S("succ"), 1, poly_add(X1, C(1)));
    phi.assign(S("zero"), 0, C(1));
    low.interp = phi;
    CheckError e = expect_ko(check_dp_proof(p, DpProof{low}));
    CHECK(e.kind == CheckError::Kind::NotWeak);
    CHECK(e.message == "rule 1 not weakly decreasing: add(zero,y) -> y");
  }

  SUBCASE("removed pairs must decrease strictly") {
    RedPairProc flat = rp;
    PolyInterpretation phi;
    phi.assign(Symbol::sharp(S("add")), 2, X2);
    phi.assign(S("add"), 2, add_poly());
    phi.assign(S("succ"), 1, poly_add(X1, C(1)));
    phi.assign(S("zero"), 0, C(1));
    flat.interp = phi;
    CheckError e = expect_ko(check_dp_proof(p, DpProof{flat}));
    CHECK(e.kind == CheckError::Kind::NotStrict);
    CHECK(e.message ==
          "dependency pair 1 not strictly decreasing: add#(succ(x),y) -> add#(x,y)");
  }

  SUBCASE("kept pairs must decrease weakly") {
    DpProblem two = p;
    two.dps.push_back(Rule{Fs("add", {V("x"), V("y")}), Fs("add", {V("x"), F("zero")})});
    RedPairProc keep = rp;
    keep.remaining = {two.dps[1]};
    // phi_add# = X2: kept pair maps to X2 >= 1, which fails
    PolyInterpretation phi;
    phi.assign(Symbol::sharp(S("add")), 2, X2);
    phi.assign(S("add"), 2, add_poly());
    phi.assign(S("succ"), 1, poly_add(X1, C(1)));
    phi.assign(S("zero"), 0, C(1));
    keep.interp = phi;
    CheckError e = expect_ko(check_dp_proof(two, DpProof{keep}));
    CHECK(e.kind == CheckError::Kind::NotWeak);
    CHECK(e.message ==
          "dependency pair 2 not weakly decreasing: add#(x,y) -> add#(x,zero)");
  }

  SUBCASE("remaining pairs come from the problem") {
    RedPairProc alien = rp;
    alien.remaining = {Rule{Fs("add", {V("x"), V("y")}), Fs("add", {V("y"), V("x")})}};
    CheckError e = expect_ko(check_dp_proof(p, DpProof{alien}));
    CHECK(e.kind == CheckError::Kind::AlienRemaining);
    CHECK(e.message ==
          "remaining pair add#(x,y) -> add#(y,x) is not one of the dependency pairs");
  }

  SUBCASE("a proper subset must remain") {
    RedPairProc idle = rp;
    idle.remaining = p.dps;
    CheckError e = expect_ko(check_dp_proof(p, DpProof{idle}));
    CHECK(e.kind == CheckError::Kind::NoProgress);
    CHECK(e.message == "no dependency pair was removed");
  }
}

TEST_CASE("a reduction pair step can feed a fresh graph decomposition") {
  Certificate c = load("two_loops.cpf");
  const auto& dt = std::get<DpTrans>(c.proof.node);
  const auto& dg = std::get<DepGraphProc>(dt.sub->node);
  Rule dp1 = dg.components[0].dps[0];  // f# loop
  Rule dp3 = dg.components[2].dps[0];  // g# loop
  DpProblem p{{dp1, dp3}, c.input};

  auto base = [](PolyInterpretation& phi) {
    phi.assign(S("f"), 1, X1);
    phi.assign(S("g"), 1, X1);
    phi.assign(S("s"), 1, poly_add(X1, C(1)));
  };

  // the outer step removes the f# pair and keeps the g# one
  PolyInterpretation outer_phi;
  outer_phi.assign(Symbol::sharp(S("f")), 1, X1);
  outer_phi.assign(Symbol::sharp(S("g")), 1, X1);
  base(outer_phi);

  // inside, the remainder is re-decomposed and discharged on its own
  PolyInterpretation inner_phi;
  inner_phi.assign(Symbol::sharp(S("g")), 1, X1);
  base(inner_phi);
  RedPairProc inner{inner_phi, {}, dsub(DpProof{PEmpty{}})};
  DpComponent comp{{dp3}, true, dsub(DpProof{inner})};
  DepGraphProc regraph{{comp}};

  RedPairProc outer{outer_phi, {dp3}, dsub(DpProof{regraph})};
  CHECK(check_dp_proof(p, DpProof{outer}).is_ok());
}

TEST_CASE("certificate-level guards") {
  // nested sharps are never well-formed, even in the input
  Symbol ff = Symbol::sharp(Symbol::sharp(S("f")));
  Trs sharped =
      Trs::make({Rule{Term::fun(ff, {V("x")}), Term::fun(ff, {V("x")})}}).value();
  Certificate c{sharped, Proof{REmpty{}}};
  CheckResult r = check_certificate(c);
  CheckError e = expect_ko(r);
  CHECK(e.kind == CheckError::Kind::BadSharpNesting);
  CHECK(e.trail == std::vector<std::string>{"input"});
  CHECK(render_path(e) == "input");

  // a singly marked input passes the guard and dies at dpTrans instead
  Trs single = Trs::make({Rule{Fs("f", {V("x")}), V("x")}}).value();
  DpTrans dt{{}, dsub(DpProof{PEmpty{}})};
  CheckResult sr = check_certificate(Certificate{single, Proof{dt}});
  CHECK(expect_ko(sr).kind == CheckError::Kind::SharpInTrs);

  // labels anywhere in the input are out of scope
  Trs labeled = Trs::make({Rule{Term::fun(Symbol::labeled(S("f"), "<l/>"), {V("x")}),
                                V("x")}})
                    .value();
  CheckResult lr = check_certificate(Certificate{labeled, Proof{REmpty{}}});
  REQUIRE(lr.is_unsupported());
  CHECK(lr.error().message == "labeledSymbol");
}

TEST_CASE("identical certificates give identical traces at any jobs setting") {
  Certificate c = load("two_loops.cpf");
  std::ostringstream seq, par;
  CHECK(check_certificate(c, {&seq, 1}).is_ok());
  CHECK(check_certificate(c, {&par, 8}).is_ok());
  CHECK(seq.str() == par.str());
  CHECK(seq.str().find("3 components compared against the recomputed partition") !=
        std::string::npos);
  CHECK(seq.str().find("dependency pairs accepted") != std::string::npos);
}

TEST_CASE("machine paths land on the node that reported the failure") {
  Certificate base = load("two_loops.cpf");

  std::vector<Certificate> broken;
  {
    Certificate c = base;
    auto dt = std::get<DpTrans>(c.proof.node);
    auto dg = std::get<DepGraphProc>(dt.sub->node);
    auto rp = std::get<RedPairProc>(dg.components[2].sub->node);
    rp.remaining = dg.components[2].dps;
    dg.components[2].sub = dsub(DpProof{rp});
    dt.sub = dsub(DpProof{dg});
    c.proof = Proof{dt};
    broken.push_back(c);
  }
  {
    Certificate c = base;
    auto dt = std::get<DpTrans>(c.proof.node);
    dt.dps.pop_back();
    c.proof = Proof{dt};
    broken.push_back(c);
  }
  {
    Certificate c = load("circular_weak.cpf");
    broken.push_back(c);
  }

  for (std::size_t i = 0; i < broken.size(); ++i) {
    CAPTURE(i);
    CheckResult r = check_certificate(broken[i]);
    CheckError e = expect_ko(r);
    REQUIRE_FALSE(e.trail.empty());
    CHECK(e.trail.front() == "proof");
    auto name = oracles::node_name_at(broken[i].proof, e.path);
    REQUIRE(name.has_value());
    CHECK(*name == e.trail.back());
  }
}

TEST_CASE("accepted removal certificates leave no cycle within reach") {
  Certificate c = load("add_polyint.cpf");
  REQUIRE(check_certificate(c).is_ok());

  gen::Rng rng(0xCE0C0001);
  gen::Sig sig;
  sig.symbols = {{S("zero"), 0}, {S("succ"), 1}, {S("add"), 2}};
  int budget = 10000;
  for (int i = 0; i < 200 && budget > 0; ++i) {
    Term t = gen::random_term(rng, sig, {}, 4);
    // depth-first walk; a term reappearing on the active path is a loop
    std::vector<Term> path;
    auto dfs = [&](auto&& self, const Term& u) -> bool {
      if (--budget <= 0) return false;
      if (std::count(path.begin(), path.end(), u)) return true;
      path.push_back(u);
      for (const Term& v : rewrite_step(c.input, u))
        if (self(self, v)) return true;
      path.pop_back();
      return false;
    };
    CHECK_FALSE(dfs(dfs, t));
  }
}
