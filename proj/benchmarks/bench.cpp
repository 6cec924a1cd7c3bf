#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "termcert/checker.hpp"
#include "termcert/dp.hpp"

using namespace termcert;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void BM_ParseCertificate(benchmark::State& state) {
  std::string text = read_fixture("two_loops.cpf");
  for (auto _ : state) {
    auto r = parse_cpf(text);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ParseCertificate);

void BM_CheckCertificate(benchmark::State& state) {
  auto cert = parse_cpf(read_fixture("two_loops.cpf")).value();
  for (auto _ : state) {
    CheckResult r = check_certificate(cert);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_CheckCertificate);

void BM_Unify(benchmark::State& state) {
  // f(x1, f(x2, ... c)) against f(g(c), f(g(c), ... c)): a long spine whose
  // solution binds every variable.
  Symbol f = Symbol::name("f"), g = Symbol::name("g"), c = Symbol::name("c");
  Term lhs = Term::fun(c), rhs = Term::fun(c);
  for (int i = 31; i >= 0; --i) {
    lhs = Term::fun(f, {Term::var("x" + std::to_string(i)), lhs});
    rhs = Term::fun(f, {Term::fun(g, {Term::fun(c)}), rhs});
  }
  for (auto _ : state) {
    auto mgu = unify(lhs, rhs);
    benchmark::DoNotOptimize(mgu);
  }
}
BENCHMARK(BM_Unify);

void BM_Sccs(benchmark::State& state) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> node(0, 63);
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < 256; ++i) edges.emplace(node(rng), node(rng));
  DepGraph g{64, std::move(edges)};
  for (auto _ : state) {
    auto comps = sccs(g);
    benchmark::DoNotOptimize(comps);
  }
}
BENCHMARK(BM_Sccs);

void BM_PolyMul(benchmark::State& state) {
  Polynomial p = Polynomial::constant(1);
  for (int i = 1; i <= 4; ++i)
    p = poly_add(p, Polynomial::variable(i));
  Polynomial q = poly_mul(p, p);
  for (auto _ : state) {
    Polynomial r = poly_mul(q, q);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PolyMul);

}  // namespace

BENCHMARK_MAIN();
