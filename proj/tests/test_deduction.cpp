#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "generators.hpp"
#include "letk/deduction.hpp"

using namespace letk;

namespace {

Formula F(const char* s) { return parse(s); }

DedPtr exp_node(const Formula& a, const Formula& c, int base = 0) {
  return nd_infer(NDRule::Exp, c,
                  {nd_assume(Formula::circ(a), base + 1),
                   nd_assume(Formula::neg(a), base + 2), nd_assume(a, base + 3)});
}

}  // namespace

TEST_CASE("a single assumption is a deduction of itself") {
  auto res = check_deduction(NDSystem::NLETJ, nd_assume(F("p"), 1));
  REQUIRE(res.valid);
  CHECK(res.conclusion == F("p"));
  CHECK(res.open == FormulaSet{F("p")});
}

TEST_CASE("explosion from @p, ~p, p concludes anything") {
  auto d = exp_node(F("p"), F("q"));
  auto res = check_deduction(NDSystem::NLETJ, d);
  REQUIRE(res.valid);
  CHECK(res.conclusion == F("q"));
  CHECK(res.open == FormulaSet{F("@p"), F("~p"), F("p")});

  // premise order is canonical: @A, ~A, A
  auto scrambled = nd_infer(NDRule::Exp, F("q"),
                            {nd_assume(F("@p"), 1), nd_assume(F("p"), 2),
                             nd_assume(F("~p"), 3)});
  auto bad = check_deduction(NDSystem::NLETJ, scrambled);
  CHECK_FALSE(bad.valid);
  CHECK(bad.reason == "EXP instance does not match its schema");
}

TEST_CASE("modus ponens requires the antecedent as minor premise") {
  auto imp = nd_assume(F("p -> q"), 1);
  auto good = nd_infer(NDRule::ToE, F("q"), {imp, nd_assume(F("p"), 2)});
  CHECK(check_deduction(NDSystem::NLETJ, good).valid);

  // minor premise concluding B instead of A is a schema violation
  auto bad = nd_infer(NDRule::ToE, F("q"), {imp, nd_assume(F("q"), 2)});
  auto res = check_deduction(NDSystem::NLETJ, bad);
  CHECK_FALSE(res.valid);
  CHECK(res.reason == "ToE instance does not match its schema");
  CHECK(res.path == NDPath{});
}

TEST_CASE("implication introduction discharges one labeled class") {
  // p, p -> q |- q, then discharge p
  auto body = nd_infer(NDRule::ToE, F("q"),
                       {nd_assume(F("p -> q"), 1), nd_assume(F("p"), 2)});
  auto d = nd_infer(NDRule::ToI, F("p -> q"), {body}, {2});
  auto res = check_deduction(NDSystem::NLETJ, d);
  REQUIRE(res.valid);
  CHECK(res.open == FormulaSet{F("p -> q")});

  SECTION("vacuous discharge is permitted") {
    auto vac = nd_infer(NDRule::ToI, F("r -> q"),
                        {nd_infer(NDRule::ToE, F("q"),
                                  {nd_assume(F("p -> q"), 1), nd_assume(F("p"), 2)})},
                        {7});
    CHECK(check_deduction(NDSystem::NLETJ, vac).valid);
  }
  SECTION("discharging the wrong formula is rejected") {
    auto wrong = nd_infer(NDRule::ToI, F("r -> q"), {body}, {2});
    auto r = check_deduction(NDSystem::NLETJ, wrong);
    CHECK_FALSE(r.valid);
    CHECK(r.reason == "discharged assumption has the wrong formula");
  }
  SECTION("a label cannot be discharged twice") {
    auto twice = nd_infer(NDRule::ToI, F("p -> (p -> q)"),
                          {nd_infer(NDRule::ToI, F("p -> q"), {body}, {2})}, {2});
    auto r = check_deduction(NDSystem::NLETJ, twice);
    CHECK_FALSE(r.valid);
    CHECK(r.reason == "class label discharged twice");
  }
}

TEST_CASE("disjunction elimination tracks its minors") {
  // p|q with both minors concluding q: left via p -> q, right directly
  auto left = nd_infer(NDRule::ToE, F("q"),
                       {nd_assume(F("p -> q"), 1), nd_assume(F("p"), 2)});
  auto d = nd_infer(NDRule::OrE, F("q"),
                    {nd_assume(F("p | q"), 3), left, nd_assume(F("q"), 4)}, {2, 4});
  auto res = check_deduction(NDSystem::NLETJ, d);
  REQUIRE(res.valid);
  CHECK(res.open == FormulaSet{F("p | q"), F("p -> q")});

  SECTION("an assumption outside the designated minor cannot be discharged") {
    auto bad = nd_infer(NDRule::OrE, F("q"),
                        {nd_assume(F("p | q"), 3), left, nd_assume(F("q"), 4)}, {4, 2});
    auto r = check_deduction(NDSystem::NLETJ, bad);
    CHECK_FALSE(r.valid);
    CHECK(r.reason == "discharged assumption lies outside the designated subdeduction");
  }
}

TEST_CASE("PEM discharges A on the left and ~A on the right") {
  auto minor1 = nd_infer(NDRule::OrI1, F("p | ~p"), {nd_assume(F("p"), 2)});
  auto minor2 = nd_infer(NDRule::OrI2, F("p | ~p"), {nd_assume(F("~p"), 3)});
  auto d = nd_infer(NDRule::Pem, F("p | ~p"),
                    {nd_assume(F("@p"), 1), minor1, minor2}, {2, 3});
  auto res = check_deduction(NDSystem::NLETJ, d);
  REQUIRE(res.valid);
  CHECK(res.open == FormulaSet{F("@p")});

  auto swapped = nd_infer(NDRule::Pem, F("p | ~p"),
                          {nd_assume(F("@p"), 1), minor2, minor1}, {3, 2});
  auto r = check_deduction(NDSystem::NLETJ, swapped);
  CHECK_FALSE(r.valid);
  CHECK(r.reason == "discharged assumption has the wrong formula");
}

TEST_CASE("negative rules follow the De Morgan schemas") {
  auto nai = nd_infer(NDRule::NegAndI1, F("~(p & q)"), {nd_assume(F("~p"), 1)});
  CHECK(check_deduction(NDSystem::NLETJ, nai).valid);

  auto noi = nd_infer(NDRule::NegOrI, F("~(p | q)"),
                      {nd_assume(F("~p"), 1), nd_assume(F("~q"), 2)});
  REQUIRE(check_deduction(NDSystem::NLETJ, noi).valid);
  CHECK(check_deduction(NDSystem::NLETJ,
                        nd_infer(NDRule::NegOrE2, F("~q"), {noi}))
            .valid);

  auto nti = nd_infer(NDRule::NegToI, F("~(p -> q)"),
                      {nd_assume(F("p"), 1), nd_assume(F("~q"), 2)});
  REQUIRE(check_deduction(NDSystem::NLETJ, nti).valid);
  CHECK(check_deduction(NDSystem::NLETJ,
                        nd_infer(NDRule::NegToE1, F("p"), {nti}))
            .valid);

  auto nae = nd_infer(NDRule::NegAndE, F("r"),
                      {nd_assume(F("~(p & q)"), 1),
                       exp_node(F("p"), F("r"), 10),
                       exp_node(F("q"), F("r"), 20)},
                      {12, 22});
  auto res = check_deduction(NDSystem::NLETJ, nae);
  REQUIRE(res.valid);
  // ~p and ~q were discharged into the explosions
  CHECK_FALSE(res.open.count(F("~p")));
  CHECK_FALSE(res.open.count(F("~q")));
}

TEST_CASE("the implication-free system rejects arrow rules and formulas") {
  auto toe = nd_infer(NDRule::ToE, F("q"),
                      {nd_assume(F("p -> q"), 1), nd_assume(F("p"), 2)});
  auto r1 = check_deduction(NDSystem::NLETF, toe);
  CHECK_FALSE(r1.valid);
  CHECK(r1.reason == "ToE is not a rule of nletf");

  auto andi = nd_infer(NDRule::AndI, F("p & (q -> q)"),
                       {nd_assume(F("p"), 1), nd_assume(F("q -> q"), 2)});
  CHECK_FALSE(check_deduction(NDSystem::NLETF, andi).valid);

  auto cons = nd_infer(NDRule::Cons, F("r"),
                       {nd_assume(F("@p"), 1), nd_assume(F("~@p"), 2)});
  CHECK(check_deduction(NDSystem::NLETF, cons).valid);
  auto r2 = check_deduction(NDSystem::NLETJ, cons);
  CHECK_FALSE(r2.valid);
  CHECK(r2.reason == "CONS is not a rule of nletj");
}

TEST_CASE("completeness rule pairs @A with ~@A") {
  auto via = [](const Formula& open, int u, const Formula& c, int w) {
    // c from the class (open, u) through a conjunction detour
    auto both = nd_infer(NDRule::AndI, Formula::conj(open, c),
                         {nd_assume(open, u), nd_assume(c, w)});
    return nd_infer(NDRule::AndE2, c, {both});
  };
  auto good = nd_infer(NDRule::Comp, F("r"),
                       {via(F("@p"), 1, F("r"), 5), via(F("~@p"), 2, F("r"), 5)},
                       {1, 2});
  CHECK(check_deduction(NDSystem::NLETF, good).valid);

  SECTION("class formulas of the wrong shape are rejected") {
    auto bad = nd_infer(NDRule::Comp, F("r"),
                        {via(F("p"), 1, F("r"), 5), via(F("~@p"), 2, F("r"), 5)},
                        {1, 2});
    auto r = check_deduction(NDSystem::NLETF, bad);
    CHECK_FALSE(r.valid);
    CHECK(r.reason == "COMP must discharge a class of the form @A");
  }
  SECTION("the two classes must trace the same formula") {
    auto bad = nd_infer(NDRule::Comp, F("r"),
                        {via(F("@p"), 1, F("r"), 5), via(F("~@q"), 2, F("r"), 5)},
                        {1, 2});
    auto r = check_deduction(NDSystem::NLETF, bad);
    CHECK_FALSE(r.valid);
    CHECK(r.reason == "COMP classes disagree on the traced formula");
  }
  SECTION("both classes may be empty") {
    auto empty = nd_infer(NDRule::Comp, F("r"),
                          {nd_assume(F("r"), 5), nd_assume(F("r"), 5)}, {1, 2});
    CHECK(check_deduction(NDSystem::NLETF, empty).valid);
  }
}

TEST_CASE("relabeling and freshening preserve validity") {
  auto body = nd_infer(NDRule::ToE, F("q"),
                       {nd_assume(F("p -> q"), 1), nd_assume(F("p"), 2)});
  auto d = nd_infer(NDRule::ToI, F("p -> q"), {body}, {2});

  auto relabeled = nd_relabel(d, {{2, 9}, {1, 4}});
  auto res = check_deduction(NDSystem::NLETJ, relabeled);
  REQUIRE(res.valid);
  CHECK(nd_max_marker(relabeled) == 9);

  int counter = nd_max_marker(d);
  auto fresh = nd_freshen_bound(d, counter);
  REQUIRE(check_deduction(NDSystem::NLETJ, fresh).valid);
  // the discharged class 2 was renamed, the open class 1 was kept
  CHECK(nd_node_at(fresh, {0, 0})->marker == 1);
  CHECK(fresh->discharges[0] > 2);
}

TEST_CASE("substitution grafts a deduction onto an assumption class") {
  auto body = nd_infer(NDRule::AndI, F("p & q"),
                       {nd_assume(F("p"), 1), nd_assume(F("q"), 2)});
  auto repl = nd_infer(NDRule::AndE1, F("p"), {nd_assume(F("p & r"), 3)});
  int counter = 10;
  auto grafted = nd_substitute(body, 1, repl, counter);
  auto res = check_deduction(NDSystem::NLETJ, grafted);
  REQUIRE(res.valid);
  CHECK(res.conclusion == F("p & q"));
  CHECK(res.open == FormulaSet{F("p & r"), F("q")});

  // substitution for an absent class returns the tree unchanged
  CHECK(nd_substitute(body, 42, repl, counter) == body);
}

TEST_CASE("rule names round-trip") {
  for (int i = 0; i <= static_cast<int>(NDRule::Comp); ++i) {
    NDRule r = static_cast<NDRule>(i);
    auto back = nd_rule_from_name(nd_rule_name(r));
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
  CHECK_FALSE(nd_rule_from_name("FooE").has_value());
}

TEST_CASE("random deductions check out in both systems") {
  for (NDSystem sys : {NDSystem::NLETJ, NDSystem::NLETF}) {
    std::mt19937 rng(sys == NDSystem::NLETJ ? 11 : 22);
    for (int round = 0; round < 40; ++round) {
      testgen::DeductionGen gen(sys, rng, {});
      auto d = gen.generate(30);
      auto res = check_deduction(sys, d);
      CAPTURE(nd_system_name(sys), round, res.reason);
      REQUIRE(res.valid);
      // every open assumption admitted by the system's language
      Language lang = sys == NDSystem::NLETF ? Language::LF : Language::LJ;
      for (auto& f : res.open) CHECK(admits(lang, f));
    }
  }
}
