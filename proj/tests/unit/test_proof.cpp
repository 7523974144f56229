#include <doctest.h>

#include "helpers.hpp"

using namespace pls;
using namespace pls::testing;

namespace {

ProofTree id_proof(const DeductiveSystem& d, VariableMode mode = VariableMode::frozen) {
  return parse_proof(d, read_text(fixture_path("id.plp")), mode);
}

// Copy of `t` with the witness of the node at `path` (child indices) replaced.
ProofNode with_witness(const ProofNode& t, std::span<const std::size_t> path, const Substitution& w) {
  if (path.empty()) return make_step(t.expression, t.inference->assertion, w, t.inference->premises);
  auto premises = t.inference->premises;
  premises[path.front()] = with_witness(premises[path.front()], path.subspan(1), w);
  return make_step(t.expression, t.inference->assertion, t.inference->witness, premises);
}

}  // namespace

TEST_CASE("the five-step id proof checks") {
  DeductiveSystem d = hilbert();
  ProofTree t = id_proof(d);
  CHECK(check_proof(d, t).valid());
  CHECK(check_statement_proof(d, d.statement("id"), t).valid());
  CHECK(inference_count(t) == 5);
  CHECK(proof_height(t) == 3);
  CHECK(assertion_multiset(t) == std::map<std::string, std::size_t>{{"A1", 2}, {"A2", 1}, {"MP", 2}});
  CHECK(proof_leaves(t).empty());
}

TEST_CASE("an altered witness binding is reported at its transition") {
  DeductiveSystem d = hilbert();
  const Grammar& g = d.grammar();
  ProofTree t = id_proof(d);
  std::size_t path[] = {1, 0};
  Substitution w = t.inference->premises[1].inference->premises[0].inference->witness;
  w.bind(g, rv(g, "ph"), fx(g, "q"));
  ProofTree bad = with_witness(t, path, w);
  Verdict v = check_proof(d, bad);
  REQUIRE(v.violations.size() == 1);
  CHECK(v.violations[0].path == "root/1/0");
}

TEST_CASE("single e-node tree") {
  DeductiveSystem d = hilbert();
  ProofTree leaf = make_leaf(fx(d.grammar(), "( p -> q )"));
  CHECK(check_proof(d, leaf).valid());
  Verdict v = check_statement_proof(d, d.statement("id"), leaf);
  CHECK_FALSE(v.valid());
}

TEST_CASE("statement checks") {
  DeductiveSystem d = load_system_file(fixture_path("hilbert_more.pls"));
  const Grammar& g = d.grammar();
  ProofTree t = id_proof(d);
  CHECK(check_statement_proof(d, d.statement("id"), t).valid());
  Statement qq{.id = "qq", .premises = {}, .goal = fx(g, "( q -> q )")};
  Verdict v = check_statement_proof(d, qq, t);
  REQUIRE(v.violations.size() == 1);
  CHECK(v.violations[0].path == "root");

  // MP from p and (p -> q): leaves must be premises.
  Substitution w;
  w.bind(g, rv(g, "ph"), fx(g, "p"));
  w.bind(g, rv(g, "ps"), fx(g, "q"));
  ProofTree mp = make_step(fx(g, "q"), "MP", w, {make_leaf(fx(g, "p")), make_leaf(fx(g, "( p -> q )"))});
  CHECK(check_statement_proof(d, d.statement("mpq"), mp).valid());
  Statement missing{.id = "m", .premises = {fx(g, "p")}, .goal = fx(g, "q")};
  Verdict lv = check_statement_proof(d, missing, mp);
  REQUIRE(lv.violations.size() == 1);
  CHECK(lv.violations[0].path == "root/1");
  CHECK(error_of([&] { check_proof(d, make_step(fx(g, "q"), "ZZ", {}, {})); }) == ErrorCode::unknown_assertion);
}

TEST_CASE("witness kind conformity is checked") {
  DeductiveSystem d = load_system_file(fixture_path("classset.pls"));
  const Grammar& g = d.grammar();
  Substitution w;
  w.assign(rv(g, "A"), fx(g, "z"));
  CHECK(check_proof(d, make_step(fx(g, "z = z"), "eqid", w, {})).valid());
  Substitution bad;
  bad.assign(fv(g, "A"), fx(g, "z"));
  CHECK_FALSE(check_proof(d, make_step(fx(g, "z = z"), "eqid", bad, {})).valid());
}

TEST_CASE("substitute_proof") {
  DeductiveSystem d = hilbert();
  const Grammar& g = d.grammar();
  ProofTree frozen = id_proof(d);
  CHECK(substitute_proof(d, {}, frozen) == frozen);

  ProofTree general = id_proof(d, VariableMode::replaceable);
  CHECK(check_proof(d, general).valid());
  Substitution s;
  s.bind(g, rv(g, "p"), fx(g, "( q -> r )"));
  ProofTree inst = substitute_proof(d, s, general);
  CHECK(check_proof(d, inst).valid());
  CHECK(inst.expression == fx(g, "( ( q -> r ) -> ( q -> r ) )"));

  Substitution disjoint;
  disjoint.bind(g, rv(g, "r"), fx(g, "q"));
  CHECK(substitute_proof(d, disjoint, general) == general);
}

TEST_CASE("congruence") {
  DeductiveSystem d = hilbert();
  ProofTree t = id_proof(d);
  ProofTree u = id_proof(d, VariableMode::replaceable);
  CHECK(congruent(t, t));
  CHECK(congruent(t, u));
  ProofTree a1 = make_step(t.expression, "A1", {}, {});
  ProofTree a2 = make_step(t.expression, "A2", {}, {});
  CHECK_FALSE(congruent(a1, a2));
  CHECK_FALSE(congruent(t, make_leaf(t.expression)));
}

TEST_CASE("generality") {
  DeductiveSystem d = hilbert();
  const Grammar& g = d.grammar();
  ProofTree t = id_proof(d);
  auto self = generality(d, t, t);
  REQUIRE(self);
  CHECK(self->empty());

  ProofTree general = id_proof(d, VariableMode::replaceable);
  auto delta = generality(d, general, t);
  REQUIRE(delta);
  Substitution expected;
  expected.bind(g, rv(g, "p"), fx(g, "p"));
  CHECK(*delta == expected);
  CHECK(substitute_proof(d, *delta, general) == t);
  CHECK_FALSE(generality(d, t, general));

  ProofTree gen = make_step(rx(g, "( ph -> ph )"), "A1", {}, {});
  ProofTree clash = make_step(fx(g, "( p -> q )"), "A1", {}, {});
  CHECK_FALSE(generality(d, gen, clash));
}

TEST_CASE("proof text round trip") {
  DeductiveSystem d = hilbert();
  std::string text = read_text(fixture_path("id.plp"));
  ProofTree t = parse_proof(d, text);
  CHECK(serialize_proof(d.grammar(), t) == text);
  CHECK(parse_proof(d, serialize_proof(d.grammar(), t)) == t);

  ProofTree leaf = parse_proof(d, "(hyp \"( p -> q )\")");
  CHECK(leaf.is_leaf());
  CHECK(leaf.expression == fx(d.grammar(), "( p -> q )"));
  CHECK(serialize_proof(d.grammar(), leaf) == "(hyp \"( p -> q )\")\n");

  ProofTree fresh = parse_proof(d, "(step \"( p -> ( ps#4 -> p ) )\" by A1 with { ph := \"p\" ; ps := \"ps#4\" } from)");
  CHECK(check_proof(d, fresh).valid());
}

TEST_CASE("proof text errors") {
  DeductiveSystem d = hilbert();
  CHECK(error_of([&] { parse_proof(d, "(hyp \"( p -> q )\""); }) == ErrorCode::syntax_error);
  CHECK(error_of([&] { parse_proof(d, "(hyp \"( p -> q )\"))"); }) == ErrorCode::syntax_error);
  CHECK(error_of([&] { parse_proof(d, "(step \"p\" by A1 with { } from (hyp \"p\")"); }) == ErrorCode::syntax_error);
  CHECK(error_of([&] { parse_proof(d, "(step \"p\" by A7 with { } from)"); }) == ErrorCode::unknown_assertion);
  CHECK(error_of([&] { parse_proof(d, "(hyp \"( p -> \")"); }) == ErrorCode::no_parse);
  CHECK(error_of([&] { parse_proof(d, "(step \"p\" by A1 with { ph := \"p\" ; ph := \"q\" } from)"); }) ==
        ErrorCode::syntax_error);
  std::string text = read_text(fixture_path("id.plp"));
  CHECK(error_of([&] { parse_proof(d, text.substr(0, text.size() / 2)); }) == ErrorCode::syntax_error);
  try {
    parse_proof(d, "(hyp \"p\")\n(hyp \"p\")");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
}
