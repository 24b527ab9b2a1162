#include "doctest.h"

#include "doxa/kripke.hpp"
#include "support.hpp"

using namespace doxa;
using doxa::test::f;

TEST_CASE("agent names are lowercase identifiers") {
  CHECK_NOTHROW(Agent("a"));
  CHECK_NOTHROW(Agent("mary_2"));
  CHECK_THROWS_AS(Agent("A"), std::invalid_argument);
  CHECK_THROWS_AS(Agent("2a"), std::invalid_argument);
  CHECK_THROWS_AS(Agent(""), std::invalid_argument);
}

TEST_CASE("structural equality and ordering") {
  CHECK(f("p & q") == Formula::conj(Formula::atom("p"), Formula::atom("q")));
  CHECK(f("p & q") != f("q & p"));
  CHECK(f("B[a] p") != f("B[b] p"));
  CHECK(f("B[a] p") != f("C[a] p"));
  CHECK((f("p") < f("q")) != (f("q") < f("p")));
  std::set<Formula> s{f("p"), f("p"), f("~p")};
  CHECK(s.size() == 2);
}

TEST_CASE("desugar") {
  const Agent a("a");
  CHECK(desugar(f("p -> q")) == Formula::disj(Formula::neg(f("p")), f("q")));
  CHECK(desugar(f("C[a] p")) == Formula::neg(Formula::bel(a, Formula::neg(f("p")))));
  CHECK(desugar(f("p")) == f("p"));
  CHECK(desugar(f("p <-> q")) == f("(~p | q) & (~q | p)"));
  CHECK(desugar(f("C[a] (p -> q)")) == f("~B[a] ~(~p | q)"));
  CHECK(is_desugared(desugar(f("C[a] p <-> B[b] (q -> p)"))));
  CHECK_FALSE(is_desugared(f("C[a] p")));
}

TEST_CASE("agents") {
  CHECK(agents(f("p & q")).empty());
  CHECK(agents(f("B[a] p & C[b] q")) == std::set<Agent>{Agent("a"), Agent("b")});
  CHECK(agents(f("B[a] B[a] p")) == std::set<Agent>{Agent("a")});
}

TEST_CASE("subformula closure") {
  CHECK(subformula_closure(f("p")) == std::set<Formula>{f("p"), f("~p")});
  CHECK(subformula_closure(f("p & q")) ==
        std::set<Formula>{f("p & q"), f("~(p & q)"), f("p"), f("~p"), f("q"), f("~q")});
  CHECK(subformula_closure(f("B[a] p")) == std::set<Formula>{f("B[a] p"), f("~B[a] p"), f("p"), f("~p")});
  // A negated subformula still contributes its own negation.
  CHECK(subformula_closure(f("p & ~p")).contains(f("~~p")));
}

TEST_CASE("property: desugar is idempotent and bounded closure") {
  std::mt19937 rng(7);
  const std::vector<std::string> atoms{"p", "q"};
  const std::vector<Agent> ags{Agent("a"), Agent("b")};
  for (int i = 0; i < 500; ++i) {
    const Formula g = doxa::test::random_formula(rng, 6, atoms, ags);
    const Formula d = desugar(g);
    CHECK(desugar(d) == d);
    CHECK(is_desugared(d));
    CHECK(subformula_closure(d).size() <= 2 * d.node_count());
  }
}

TEST_CASE("property: desugar preserves truth in every model up to 3 worlds") {
  std::mt19937 rng(11);
  const std::vector<std::string> atoms{"p"};
  const std::vector<Agent> ags{Agent("a")};
  std::vector<Formula> suite;
  for (int i = 0; i < 40; ++i) suite.push_back(doxa::test::random_formula(rng, 4, atoms, ags));
  std::vector<Formula> sugared;
  for (const auto& g : suite) sugared.push_back(desugar(g));
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    doxa::test::for_each_model(n, atoms, ags, [&](const ModelSystem& m) {
      for (std::size_t i = 0; i < suite.size(); ++i) {
        for (WorldId w = 0; w < n; ++w) mismatches += evaluate(m, w, suite[i]) != evaluate(m, w, sugared[i]);
      }
    });
  }
  CHECK(mismatches == 0);
}
