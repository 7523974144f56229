#include "pls/expression.hpp"

#include <utility>

namespace pls {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Expression Expression::make_variable(Variable v) {
  auto node = std::make_shared<Node>();
  node->tag = Tag::variable;
  node->kind = v.kind;
  node->hash = mix(mix(std::hash<std::string>{}(v.name), v.kind.value), v.replaceable ? 0x51 : 0x17);
  node->has_replaceable = v.replaceable;
  node->var = std::move(v);
  return Expression(std::move(node));
}

Expression Expression::make_apply(ProductionId production, KindId kind, std::vector<Expression> children) {
  auto node = std::make_shared<Node>();
  node->tag = Tag::apply;
  node->kind = kind;
  node->production = production;
  std::size_t h = mix(0xa11ce, production.value);
  for (const auto& c : children) {
    h = mix(h, c.hash());
    node->size += c.size();
    node->has_replaceable = node->has_replaceable || c.has_replaceable();
  }
  node->hash = h;
  node->children = std::move(children);
  return Expression(std::move(node));
}

Expression Expression::coerce_to(KindId target, const Expression& e) {
  const Expression& inner = e.core();
  if (inner.kind() == target) return inner;
  auto node = std::make_shared<Node>();
  node->tag = Tag::coerce;
  node->kind = target;
  node->hash = mix(mix(0xc0e, target.value), inner.hash());
  node->size = inner.size() + 1;
  node->has_replaceable = inner.has_replaceable();
  node->children.push_back(inner);
  return Expression(std::move(node));
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.tag() != b.tag() || a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.tag()) {
    case Expression::Tag::variable:
      return a.variable() == b.variable();
    case Expression::Tag::apply:
      if (a.production() != b.production()) return false;
      [[fallthrough]];
    case Expression::Tag::coerce: {
      auto ac = a.children();
      auto bc = b.children();
      if (ac.size() != bc.size()) return false;
      for (std::size_t i = 0; i < ac.size(); ++i) {
        if (!(ac[i] == bc[i])) return false;
      }
      return true;
    }
  }
  return false;
}

std::strong_ordering operator<=>(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.tag() <=> b.tag(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_variable()) return a.variable() <=> b.variable();
  if (auto c = a.production() <=> b.production(); c != 0) return c;
  auto ac = a.children();
  auto bc = b.children();
  if (auto c = ac.size() <=> bc.size(); c != 0) return c;
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (auto c = ac[i] <=> bc[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void collect_variables(const Expression& e, VariableSet& out) {
  if (e.is_variable()) {
    out.insert(e.variable());
    return;
  }
  for (const auto& c : e.children()) collect_variables(c, out);
}

VariableSet variables(const Expression& e) {
  VariableSet out;
  collect_variables(e, out);
  return out;
}

VariableSet replaceable_variables(const Expression& e) {
  VariableSet out;
  if (!e.has_replaceable()) return out;
  for (auto& v : variables(e)) {
    if (v.replaceable) out.insert(v);
  }
  return out;
}

bool occurs(const Variable& v, const Expression& e) {
  if (e.is_variable()) return e.variable() == v;
  if (v.replaceable && !e.has_replaceable()) return false;
  for (const auto& c : e.children()) {
    if (occurs(v, c)) return true;
  }
  return false;
}

}  // namespace pls
