#include "pls/term.hpp"

#include <vector>

#include "pls/error.hpp"

namespace pls {

// ---------------------------------------------------------------------------
// Substitution

void Substitution::bind(const Grammar& g, const Variable& v, const Expression& e) {
  if (!v.replaceable) {
    throw Error(ErrorCode::kind_mismatch, "variable '" + v.name + "' is not replaceable");
  }
  if (!g.kind_coercible(v.kind, e.core().kind())) {
    throw Error(ErrorCode::kind_mismatch, "cannot substitute an expression of kind " + g.kind_name(e.core().kind()) +
                                              " for variable '" + v.name + "' of kind " + g.kind_name(v.kind));
  }
  assign(v, e);
}

void Substitution::assign(const Variable& v, const Expression& e) {
  const Expression& c = e.core();
  if (c.is_variable() && c.variable() == v) {
    bindings_.erase(v);
    return;
  }
  bindings_.insert_or_assign(v, c);
}

const Expression* Substitution::find(const Variable& v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

Expression Substitution::image(const Variable& v) const {
  if (const auto* e = find(v)) return Expression::coerce_to(v.kind, *e);
  return Expression::make_variable(v);
}

VariableSet Substitution::domain() const {
  VariableSet out;
  for (const auto& [v, e] : bindings_) out.insert(v);
  return out;
}

// ---------------------------------------------------------------------------
// Application and composition

Expression apply(const Substitution& s, const Expression& e) {
  if (s.empty() || !e.has_replaceable()) return e;
  switch (e.tag()) {
    case Expression::Tag::variable: {
      const auto* img = s.find(e.variable());
      return img ? Expression::coerce_to(e.kind(), *img) : e;
    }
    case Expression::Tag::coerce:
      return Expression::coerce_to(e.kind(), apply(s, e.core()));
    case Expression::Tag::apply: {
      std::vector<Expression> children;
      children.reserve(e.children().size());
      bool changed = false;
      for (const auto& c : e.children()) {
        children.push_back(apply(s, c));
        changed = changed || !children.back().same_node(c);
      }
      if (!changed) return e;
      return Expression::make_apply(e.production(), e.kind(), std::move(children));
    }
  }
  return e;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  Substitution out;
  for (const auto& [v, e] : inner) out.assign(v, apply(outer, Expression::coerce_to(v.kind, e)));
  for (const auto& [v, e] : outer) {
    if (inner.find(v) == nullptr) out.assign(v, e);
  }
  return out;
}

Substitution restrict_to(const Substitution& s, const VariableSet& vars) {
  Substitution out;
  for (const auto& [v, e] : s) {
    if (vars.count(v)) out.assign(v, e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

bool match_into(const Grammar& g, const Expression& pattern, const Expression& target, std::map<Variable, Expression>& out) {
  const Expression& p = pattern.core();
  const Expression& t = target.core();
  if (p.is_variable()) {
    const Variable& v = p.variable();
    if (!v.replaceable) return p == t;
    auto it = out.find(v);
    if (it != out.end()) return it->second == t;
    if (!g.kind_coercible(v.kind, t.kind())) return false;
    out.emplace(v, t);
    return true;
  }
  if (!t.is_apply() || p.production() != t.production()) return false;
  auto pc = p.children();
  auto tc = t.children();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (!match_into(g, pc[i], tc[i], out)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> match_expressions(const Grammar& g,
                                              std::span<const std::pair<Expression, Expression>> pairs) {
  std::map<Variable, Expression> work;
  for (const auto& [pattern, target] : pairs) {
    if (pattern.kind() != target.kind()) return std::nullopt;
    if (!match_into(g, pattern, target, work)) return std::nullopt;
  }
  Substitution out;
  for (const auto& [v, e] : work) out.assign(v, e);
  return out;
}

std::optional<Substitution> match_expression(const Grammar& g, const Expression& pattern, const Expression& target) {
  std::pair<Expression, Expression> one{pattern, target};
  return match_expressions(g, std::span(&one, 1));
}

// ---------------------------------------------------------------------------
// Unification

const Expression& Unifier::walk(const Expression& e) const {
  const Expression* cur = &e.core();
  while (cur->is_variable() && cur->variable().replaceable) {
    auto it = bindings_.find(cur->variable());
    if (it == bindings_.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool Unifier::occurs_resolved(const Variable& v, const Expression& e) const {
  const Expression& w = walk(e);
  if (w.is_variable()) return w.variable() == v;
  if (!w.has_replaceable()) return false;
  for (const auto& c : w.children()) {
    if (occurs_resolved(v, c)) return true;
  }
  return false;
}

bool Unifier::try_bind(const Expression& var, const Expression& term) {
  const Variable& v = var.variable();
  if (!g_->kind_coercible(v.kind, term.kind())) return false;
  if (occurs_resolved(v, term)) return false;
  bindings_.emplace(v, term);
  return true;
}

bool Unifier::unify(const Expression& a, const Expression& b) {
  if (a.kind() != b.kind()) return false;
  std::vector<std::pair<Expression, Expression>> work{{a, b}};
  while (!work.empty()) {
    auto [l, r] = std::move(work.back());
    work.pop_back();
    const Expression x = walk(l);
    const Expression y = walk(r);
    if (x == y) continue;
    const bool x_var = x.is_variable() && x.variable().replaceable;
    const bool y_var = y.is_variable() && y.variable().replaceable;
    if (x_var) {
      if (try_bind(x, y)) continue;
      if (y_var && try_bind(y, x)) continue;
      return false;
    }
    if (y_var) {
      if (try_bind(y, x)) continue;
      return false;
    }
    if (!x.is_apply() || !y.is_apply() || x.production() != y.production()) return false;
    auto xc = x.children();
    auto yc = y.children();
    for (std::size_t i = xc.size(); i-- > 0;) work.emplace_back(xc[i], yc[i]);
  }
  return true;
}

Expression Unifier::resolve(const Expression& e, std::map<Variable, Expression>& memo) const {
  if (!e.has_replaceable()) return e;
  switch (e.tag()) {
    case Expression::Tag::variable: {
      const Variable& v = e.variable();
      auto bound = bindings_.find(v);
      if (bound == bindings_.end()) return e;
      auto it = memo.find(v);
      if (it == memo.end()) it = memo.emplace(v, resolve(bound->second, memo)).first;
      return Expression::coerce_to(e.kind(), it->second);
    }
    case Expression::Tag::coerce:
      return Expression::coerce_to(e.kind(), resolve(e.core(), memo));
    case Expression::Tag::apply: {
      std::vector<Expression> children;
      children.reserve(e.children().size());
      bool changed = false;
      for (const auto& c : e.children()) {
        children.push_back(resolve(c, memo));
        changed = changed || !children.back().same_node(c);
      }
      if (!changed) return e;
      return Expression::make_apply(e.production(), e.kind(), std::move(children));
    }
  }
  return e;
}

Substitution Unifier::solution() const {
  std::map<Variable, Expression> memo;
  Substitution out;
  for (const auto& [v, e] : bindings_) out.assign(v, resolve(Expression::make_variable(v), memo));
  return out;
}

std::optional<Substitution> unify_expressions(const Grammar& g, const Expression& a, const Expression& b) {
  Unifier u(g);
  if (!u.unify(a, b)) return std::nullopt;
  return u.solution();
}

std::optional<SubstitutionUnifier> unify_substitutions(const Grammar& g, std::span<const Substitution> xi) {
  if (xi.empty()) return SubstitutionUnifier{};
  const Substitution& ref = xi.front();
  Unifier u(g);
  for (std::size_t j = 1; j < xi.size(); ++j) {
    VariableSet vars = ref.domain();
    for (const auto& [v, e] : xi[j]) vars.insert(v);
    for (const auto& v : vars) {
      if (!u.unify(ref.image(v), xi[j].image(v))) return std::nullopt;
    }
  }
  SubstitutionUnifier out;
  out.delta = u.solution();
  out.com = compose(out.delta, ref);
  return out;
}

std::string to_string(const Grammar& g, const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, e] : s) {
    out += first ? " " : " ; ";
    first = false;
    out += v.name + " := " + g.render_text(e);
  }
  out += " }";
  return out;
}

}  // namespace pls
