#include "pls/proof.hpp"

#include <functional>

#include "pls/error.hpp"

namespace pls {

bool operator==(const ProofNode& a, const ProofNode& b) {
  if (!(a.expression == b.expression)) return false;
  if (a.inference == b.inference) return true;
  if (!a.inference || !b.inference) return false;
  return *a.inference == *b.inference;
}

ProofNode make_leaf(Expression e) { return ProofNode{std::move(e), nullptr}; }

ProofNode make_step(Expression e, std::string assertion, Substitution witness, std::vector<ProofNode> premises) {
  auto inf = std::make_shared<Inference>(Inference{std::move(assertion), std::move(witness), std::move(premises)});
  return ProofNode{std::move(e), std::move(inf)};
}

// ---------------------------------------------------------------------------
// Checking

namespace {

void check_node(const DeductiveSystem& d, const ProofNode& n, const std::string& path, Verdict& out) {
  if (n.is_leaf()) return;
  const Inference& inf = *n.inference;
  const Assertion& a = d.assertion(inf.assertion);
  const Grammar& g = d.grammar();

  std::vector<std::string> problems;
  for (const auto& [v, e] : inf.witness) {
    if (!v.replaceable || !g.kind_coercible(v.kind, e.kind())) {
      problems.push_back("witness binding for '" + v.name + "' violates kind conformity");
    }
  }
  if (inf.premises.size() != a.premises.size()) {
    problems.push_back("assertion " + a.id + " has " + std::to_string(a.premises.size()) + " premises, node has " +
                       std::to_string(inf.premises.size()));
  } else {
    for (std::size_t i = 0; i < a.premises.size(); ++i) {
      Expression expected = apply(inf.witness, a.premises[i]);
      if (!(expected == inf.premises[i].expression)) {
        problems.push_back("premise " + std::to_string(i) + ": witness gives '" + g.render_text(expected) + "', node has '" +
                           g.render_text(inf.premises[i].expression) + "'");
      }
    }
  }
  Expression concl = apply(inf.witness, a.proposition);
  if (!(concl == n.expression)) {
    problems.push_back("conclusion: witness gives '" + g.render_text(concl) + "', node has '" + g.render_text(n.expression) +
                       "'");
  }
  if (!problems.empty()) {
    std::string msg = "transition by " + a.id + ": ";
    for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
    out.violations.push_back(Violation{path, std::move(msg)});
  }
  for (std::size_t i = 0; i < inf.premises.size(); ++i) {
    check_node(d, inf.premises[i], path + "/" + std::to_string(i), out);
  }
}

void check_leaves(const DeductiveSystem& d, const Statement& s, const ProofNode& n, const std::string& path, Verdict& out) {
  if (n.is_leaf()) {
    for (const auto& p : s.premises) {
      if (p == n.expression) return;
    }
    out.violations.push_back(
        Violation{path, "leaf '" + d.grammar().render_text(n.expression) + "' is not a premise of " + s.id});
    return;
  }
  const auto& premises = n.inference->premises;
  for (std::size_t i = 0; i < premises.size(); ++i) check_leaves(d, s, premises[i], path + "/" + std::to_string(i), out);
}

}  // namespace

Verdict check_proof(const DeductiveSystem& d, const ProofTree& t) {
  Verdict out;
  check_node(d, t, "root", out);
  return out;
}

Verdict check_statement_proof(const DeductiveSystem& d, const Statement& s, const ProofTree& t) {
  Verdict out = check_proof(d, t);
  if (!(t.expression == s.goal)) {
    out.violations.push_back(Violation{"root", "root '" + d.grammar().render_text(t.expression) + "' is not the goal '" +
                                                   d.grammar().render_text(s.goal) + "'"});
  }
  check_leaves(d, s, t, "root", out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution, congruence, generality

ProofTree substitute_proof(const DeductiveSystem& d, const Substitution& s, const ProofTree& t) {
  if (t.is_leaf()) return make_leaf(apply(s, t.expression));
  const Inference& inf = *t.inference;
  const Assertion& a = d.assertion(inf.assertion);
  std::vector<ProofNode> premises;
  premises.reserve(inf.premises.size());
  for (const auto& p : inf.premises) premises.push_back(substitute_proof(d, s, p));
  return make_step(apply(s, t.expression), inf.assertion, restrict_to(compose(s, inf.witness), a.variables()),
                   std::move(premises));
}

bool congruent(const ProofTree& a, const ProofTree& b) {
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf();
  const Inference& x = *a.inference;
  const Inference& y = *b.inference;
  if (x.assertion != y.assertion || x.premises.size() != y.premises.size()) return false;
  for (std::size_t i = 0; i < x.premises.size(); ++i) {
    if (!congruent(x.premises[i], y.premises[i])) return false;
  }
  return true;
}

namespace {

void collect_pairs(const ProofNode& a, const ProofNode& b, std::vector<std::pair<Expression, Expression>>& out) {
  out.emplace_back(a.expression, b.expression);
  if (a.is_leaf()) return;
  for (std::size_t i = 0; i < a.inference->premises.size(); ++i) {
    collect_pairs(a.inference->premises[i], b.inference->premises[i], out);
  }
}

}  // namespace

std::optional<Substitution> generality(const DeductiveSystem& d, const ProofTree& general, const ProofTree& specific) {
  if (!congruent(general, specific)) return std::nullopt;
  std::vector<std::pair<Expression, Expression>> pairs;
  collect_pairs(general, specific, pairs);
  auto delta = match_expressions(d.grammar(), pairs);
  if (!delta) return std::nullopt;
  if (!(substitute_proof(d, *delta, general) == specific)) return std::nullopt;
  return delta;
}

// ---------------------------------------------------------------------------
// Metrics

std::size_t inference_count(const ProofTree& t) {
  if (t.is_leaf()) return 0;
  std::size_t n = 1;
  for (const auto& p : t.inference->premises) n += inference_count(p);
  return n;
}

std::size_t proof_height(const ProofTree& t) {
  if (t.is_leaf()) return 0;
  std::size_t h = 0;
  for (const auto& p : t.inference->premises) h = std::max(h, proof_height(p));
  return h + 1;
}

std::map<std::string, std::size_t> assertion_multiset(const ProofTree& t) {
  std::map<std::string, std::size_t> out;
  std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
    if (n.is_leaf()) return;
    ++out[n.inference->assertion];
    for (const auto& p : n.inference->premises) walk(p);
  };
  walk(t);
  return out;
}

std::vector<Expression> proof_leaves(const ProofTree& t) {
  std::vector<Expression> out;
  std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
    if (n.is_leaf()) {
      out.push_back(n.expression);
      return;
    }
    for (const auto& p : n.inference->premises) walk(p);
  };
  walk(t);
  return out;
}

}  // namespace pls
