#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace pls::testing {

std::string fixture_path(const std::string& name) { return std::string(PLS_TEST_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

DeductiveSystem hilbert() { return load_system_file(fixture_path("hilbert.pls")); }

std::string propositional_header() {
  return "kind wff\n"
         "var ph ps ch p q r : wff\n"
         "rule imp : wff ::= \"(\" wff \"->\" wff \")\"\n"
         "rule neg : wff ::= \"-.\" wff\n";
}

std::string class_set_header() {
  return "kind wff\n"
         "kind class\n"
         "kind set\n"
         "coerce set into class\n"
         "var ph ps ch p q r : wff\n"
         "var A B C : class\n"
         "var x y z : set\n"
         "rule imp : wff ::= \"(\" wff \"->\" wff \")\"\n"
         "rule eq : wff ::= class \"=\" class\n"
         "rule el : wff ::= set \"e.\" class\n";
}

// ---------------------------------------------------------------------------

const std::vector<Expression>& Enumerator::exact(KindId k, std::size_t tokens) {
  auto key = std::make_pair(k.value, tokens);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  std::vector<Expression> out;
  if (tokens == 1) {
    for (const auto& v : vars_) {
      if (v.kind == k) out.push_back(Expression::make_variable(v));
    }
  }
  const auto prods = g_.productions();
  for (std::size_t pi = 0; pi < prods.size(); ++pi) {
    const Production& p = prods[pi];
    if (p.result != k || p.is_coercion()) continue;
    std::vector<KindId> slots = p.slots();
    std::size_t literals = p.rhs.size() - slots.size();
    if (literals > tokens) continue;
    std::vector<Expression> chosen;
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t left) {
      if (i == slots.size()) {
        if (left == 0) out.push_back(Expression::make_apply(ProductionId{static_cast<std::uint32_t>(pi)}, k, chosen));
        return;
      }
      std::size_t rest = slots.size() - i - 1;
      for (std::size_t size = 1; size + rest <= left; ++size) {
        for (std::size_t kk = 0; kk < g_.kind_count(); ++kk) {
          KindId from{static_cast<std::uint32_t>(kk)};
          if (!g_.kind_coercible(slots[i], from)) continue;
          for (const auto& e : exact(from, size)) {
            chosen.push_back(Expression::coerce_to(slots[i], e));
            fill(i + 1, left - size);
            chosen.pop_back();
          }
        }
      }
    };
    if (slots.empty()) {
      if (literals == tokens) out.push_back(Expression::make_apply(ProductionId{static_cast<std::uint32_t>(pi)}, k, {}));
    } else if (tokens > literals) {
      fill(0, tokens - literals);
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

std::vector<Expression> Enumerator::images(KindId k, std::size_t max_tokens) {
  std::vector<Expression> out;
  for (std::size_t t = 1; t <= max_tokens; ++t) {
    for (std::size_t kk = 0; kk < g_.kind_count(); ++kk) {
      KindId from{static_cast<std::uint32_t>(kk)};
      if (!g_.kind_coercible(k, from)) continue;
      const auto& xs = exact(from, t);
      out.insert(out.end(), xs.begin(), xs.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Expression grow(const Grammar& g, Rng& rng, KindId kind, const std::vector<Variable>& vars, std::size_t depth) {
  std::vector<const Variable*> leaf_vars;
  for (const auto& v : vars) {
    if (g.kind_coercible(kind, v.kind)) leaf_vars.push_back(&v);
  }
  std::vector<std::size_t> prods;
  const auto all = g.productions();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!all[i].is_coercion() && g.kind_coercible(kind, all[i].result)) prods.push_back(i);
  }
  bool take_leaf = !leaf_vars.empty() && (prods.empty() || depth == 0 || std::uniform_int_distribution<int>(0, 99)(rng) < 45);
  if (take_leaf) {
    const Variable& v = *leaf_vars[std::uniform_int_distribution<std::size_t>(0, leaf_vars.size() - 1)(rng)];
    return Expression::coerce_to(kind, Expression::make_variable(v));
  }
  if (prods.empty()) throw std::runtime_error("kind has no expressions");
  std::size_t pi = prods[std::uniform_int_distribution<std::size_t>(0, prods.size() - 1)(rng)];
  const Production& p = all[pi];
  std::vector<Expression> children;
  for (KindId s : p.slots()) children.push_back(grow(g, rng, s, vars, depth == 0 ? 0 : depth - 1));
  return Expression::coerce_to(kind, Expression::make_apply(ProductionId{static_cast<std::uint32_t>(pi)}, p.result, children));
}

}  // namespace

Expression random_expression(const Grammar& g, Rng& rng, KindId kind, const std::vector<Variable>& vars,
                             std::size_t max_tokens) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::size_t depth = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    Expression e = grow(g, rng, kind, vars, depth);
    if (g.token_count(e) <= max_tokens) return e;
  }
  for (const auto& v : vars) {
    if (v.kind == kind) return Expression::make_variable(v);
  }
  throw std::runtime_error("no expression within the token budget");
}

Substitution random_substitution(const Grammar& g, Rng& rng, const std::vector<Variable>& domain,
                                 const std::vector<Variable>& image_vars, std::size_t max_tokens) {
  Substitution s;
  for (const auto& v : domain) {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) continue;
    s.bind(g, v, random_expression(g, rng, v.kind, image_vars, max_tokens));
  }
  return s;
}

std::vector<Variable> declared(const Grammar& g, bool replaceable, const std::vector<std::string>& names) {
  std::vector<Variable> out;
  for (const auto& decl : g.variables()) {
    if (!names.empty() && std::find(names.begin(), names.end(), decl.name) == names.end()) continue;
    out.push_back(Variable{decl.name, decl.kind, replaceable});
  }
  return out;
}

// ---------------------------------------------------------------------------

DeductiveSystem random_system(Rng& rng, const SystemShape& shape) {
  std::string header = shape.class_set ? class_set_header() : propositional_header();
  Grammar g = load_system_text(header).grammar();
  std::vector<std::string> names = shape.class_set ? std::vector<std::string>{"ph", "ps", "A", "B", "x", "y"}
                                                   : std::vector<std::string>{"ph", "ps", "ch"};
  std::vector<Variable> vars = declared(g, true, names);
  KindId wff = g.kind("wff");
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, shape.max_assertions)(rng);
  std::vector<Assertion> assertions;
  for (std::size_t i = 0; i < n; ++i) {
    Assertion a{.id = "ax" + std::to_string(i + 1), .premises = {}, .proposition = random_expression(g, rng, wff, vars, shape.max_tokens)};
    std::size_t m = std::uniform_int_distribution<std::size_t>(0, shape.max_premises)(rng);
    for (std::size_t j = 0; j < m; ++j) a.premises.push_back(random_expression(g, rng, wff, vars, shape.max_tokens));
    assertions.push_back(std::move(a));
  }
  return DeductiveSystem(std::move(g), std::move(assertions), {});
}

DeductiveSystem with_statement(const DeductiveSystem& d, Statement s) {
  std::vector<Statement> statements = d.statements();
  statements.push_back(std::move(s));
  return DeductiveSystem(d.grammar(), d.assertions(), std::move(statements));
}

std::vector<Expression> random_premises(const DeductiveSystem& d, Rng& rng, std::size_t max_count, std::size_t max_tokens) {
  const Grammar& g = d.grammar();
  std::vector<std::string> names = g.find_kind("class") ? std::vector<std::string>{"p", "q", "C", "z"}
                                                        : std::vector<std::string>{"p", "q"};
  std::vector<Variable> vars = declared(g, false, names);
  std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_count)(rng);
  std::vector<Expression> out;
  for (std::size_t i = 0; i < n; ++i) {
    Expression e = random_expression(g, rng, g.kind("wff"), vars, max_tokens);
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return out;
}

ProofTree random_proof(const DeductiveSystem& d, Rng& rng, std::size_t max_height, const std::vector<Variable>& image_vars,
                       std::size_t max_tokens) {
  const Grammar& g = d.grammar();
  const auto& as = d.assertions();
  // Variables of `fixed` keep their image under theta, identity included.
  auto instantiate = [&](const Assertion& a, Substitution theta, const VariableSet& fixed) {
    for (const auto& v : a.variables()) {
      if (!theta.find(v) && !fixed.contains(v)) theta.bind(g, v, random_expression(g, rng, v.kind, image_vars, max_tokens));
    }
    return restrict_to(theta, a.variables());
  };
  std::function<ProofNode(const Assertion&, Substitution, std::size_t)> step = [&](const Assertion& a, Substitution theta,
                                                                                 std::size_t height) {
    std::vector<ProofNode> premises;
    for (const auto& q : a.premises) {
      Expression target = apply(theta, q);
      std::vector<std::pair<const Assertion*, Substitution>> options;
      if (height > 1 && std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
        for (const auto& b : as) {
          if (auto m = match_expression(g, b.proposition, target)) options.emplace_back(&b, *m);
        }
      }
      if (options.empty()) {
        premises.push_back(make_leaf(target));
      } else {
        auto& [b, m] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        premises.push_back(step(*b, instantiate(*b, m, variables(b->proposition)), height - 1));
      }
    }
    return make_step(apply(theta, a.proposition), a.id, theta, std::move(premises));
  };
  const Assertion& root = as[std::uniform_int_distribution<std::size_t>(0, as.size() - 1)(rng)];
  return step(root, instantiate(root, Substitution{}, {}), std::max<std::size_t>(max_height, 1));
}

}  // namespace pls::testing
