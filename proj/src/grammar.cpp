#include "pls/grammar.hpp"

#include <algorithm>
#include <cctype>

#include "pls/error.hpp"

namespace pls {

std::vector<KindId> Production::slots() const {
  std::vector<KindId> out;
  for (const auto& item : rhs) {
    if (const auto* k = std::get_if<KindId>(&item)) out.push_back(*k);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grammar queries

std::optional<KindId> Grammar::find_kind(std::string_view name) const {
  auto it = kind_index_.find(name);
  if (it == kind_index_.end()) return std::nullopt;
  return KindId{static_cast<std::uint32_t>(it->second)};
}

KindId Grammar::kind(std::string_view name) const {
  if (auto k = find_kind(name)) return *k;
  throw Error(ErrorCode::unknown_kind, "unknown kind '" + std::string(name) + "'");
}

const VariableDecl* Grammar::find_variable(std::string_view name) const {
  auto it = variable_index_.find(name);
  return it == variable_index_.end() ? nullptr : &variables_[it->second];
}

bool Grammar::is_literal(std::string_view token) const { return literals_.find(token) != literals_.end(); }

bool Grammar::kind_coercible(KindId var_kind, KindId expr_kind) const {
  if (var_kind.value >= closure_.size() || expr_kind.value >= closure_.size()) {
    throw Error(ErrorCode::unknown_kind, "kind index out of range");
  }
  return closure_[var_kind.value][expr_kind.value];
}

std::optional<Variable> Grammar::resolve_variable(std::string_view token, VariableMode mode) const {
  if (const auto* decl = find_variable(token)) {
    return Variable{decl->name, decl->kind, mode == VariableMode::replaceable};
  }
  auto hash = token.rfind('#');
  if (hash == std::string_view::npos || hash == 0 || hash + 1 == token.size()) return std::nullopt;
  auto suffix = token.substr(hash + 1);
  if (!std::all_of(suffix.begin(), suffix.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  const auto* base = find_variable(token.substr(0, hash));
  if (base == nullptr) return std::nullopt;
  return Variable{std::string(token), base->kind, true};
}

Variable Grammar::declared_variable(std::string_view name, VariableMode mode) const {
  const auto* decl = find_variable(name);
  if (decl == nullptr) throw Error(ErrorCode::undeclared_variable, "undeclared variable '" + std::string(name) + "'");
  return Variable{decl->name, decl->kind, mode == VariableMode::replaceable};
}

// ---------------------------------------------------------------------------
// Parsing
//
// Memoized chart over (kind, span). Each cell keeps a saturating count of
// distinct derivations plus one representative tree, so ambiguity is
// detected exactly on the inputs where it occurs.

namespace {

class ChartParser {
 public:
  struct Cell {
    bool done = false;
    std::size_t count = 0;
    std::optional<Expression> tree;
  };

  ChartParser(const Grammar& g, std::span<const std::string> tokens, VariableMode mode, std::size_t cap,
              const std::vector<std::vector<ProductionId>>& direct, const std::vector<std::vector<ProductionId>>& coercions)
      : g_(g), tokens_(tokens), cap_(cap), direct_(direct), coercions_(coercions) {
    const std::size_t n = tokens.size();
    cells_.resize(g.kind_count() * (n + 1) * (n + 1));
    vars_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& tok = tokens[i];
      if (g.is_literal(tok)) {
        vars_.emplace_back(std::nullopt);
        continue;
      }
      auto v = g.resolve_variable(tok, mode);
      if (!v) {
        throw Error(ErrorCode::undeclared_variable, "token '" + tok + "' is neither a literal nor a declared variable", 0,
                    static_cast<int>(i + 1));
      }
      vars_.push_back(std::move(v));
    }
  }

  const Cell& parse(KindId k, std::size_t i, std::size_t j) {
    const std::size_t n = tokens_.size();
    Cell& cell = cells_[(k.value * (n + 1) + i) * (n + 1) + j];
    if (cell.done) return cell;
    cell.done = true;
    std::size_t count = 0;
    std::optional<Expression> tree;

    if (j == i + 1 && vars_[i] && vars_[i]->kind == k) {
      count = 1;
      tree = Expression::make_variable(*vars_[i]);
    }
    for (ProductionId pid : direct_[k.value]) {
      if (count >= cap_) break;
      const Production& p = g_.production(pid);
      std::vector<Expression> partial;
      std::optional<std::vector<Expression>> first;
      std::size_t c = match_items(p, 0, i, j, partial, first);
      if (c > 0) {
        count = saturate(count + c);
        if (!tree) tree = Expression::make_apply(pid, k, std::move(*first));
      }
    }
    for (ProductionId pid : coercions_[k.value]) {
      if (count >= cap_) break;
      KindId from = std::get<KindId>(g_.production(pid).rhs.front());
      const Cell& sub = parse(from, i, j);
      if (sub.count > 0) {
        count = saturate(count + sub.count);
        if (!tree) tree = Expression::coerce_to(k, *sub.tree);
      }
    }
    cell.count = count;
    cell.tree = std::move(tree);
    return cell;
  }

 private:
  std::size_t saturate(std::size_t c) const { return std::min(c, cap_); }

  std::size_t match_items(const Production& p, std::size_t item, std::size_t pos, std::size_t end,
                          std::vector<Expression>& partial, std::optional<std::vector<Expression>>& first) {
    const std::size_t remaining = p.rhs.size() - item;
    if (remaining == 0) {
      if (pos != end) return 0;
      if (!first) first = partial;
      return 1;
    }
    if (end - pos < remaining) return 0;
    const auto& it = p.rhs[item];
    if (const auto* lit = std::get_if<std::string>(&it)) {
      if (tokens_[pos] != *lit) return 0;
      return match_items(p, item + 1, pos + 1, end, partial, first);
    }
    const KindId slot = std::get<KindId>(it);
    std::size_t total = 0;
    for (std::size_t m = pos + 1; m + (remaining - 1) <= end; ++m) {
      const Cell& sub = parse(slot, pos, m);
      if (sub.count == 0) continue;
      partial.push_back(*sub.tree);
      std::size_t rest = match_items(p, item + 1, m, end, partial, first);
      partial.pop_back();
      total = saturate(total + saturate(sub.count * rest));
      if (total >= cap_) break;
    }
    return total;
  }

  const Grammar& g_;
  std::span<const std::string> tokens_;
  std::size_t cap_;
  const std::vector<std::vector<ProductionId>>& direct_;
  const std::vector<std::vector<ProductionId>>& coercions_;
  std::vector<std::optional<Variable>> vars_;
  std::vector<Cell> cells_;
};

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

std::size_t Grammar::count_parses(KindId kind, std::span<const std::string> tokens, std::size_t cap) const {
  if (kind.value >= kind_count()) throw Error(ErrorCode::unknown_kind, "kind index out of range");
  if (tokens.empty()) return 0;
  ChartParser parser(*this, tokens, VariableMode::frozen, cap, direct_by_kind_, coercions_by_kind_);
  return parser.parse(kind, 0, tokens.size()).count;
}

Expression Grammar::parse(KindId kind, std::span<const std::string> tokens, VariableMode mode) const {
  if (kind.value >= kind_count()) throw Error(ErrorCode::unknown_kind, "kind index out of range");
  if (tokens.empty()) throw Error(ErrorCode::no_parse, "empty expression");
  ChartParser parser(*this, tokens, mode, 2, direct_by_kind_, coercions_by_kind_);
  const auto& cell = parser.parse(kind, 0, tokens.size());
  if (cell.count == 0) {
    throw Error(ErrorCode::no_parse, "'" + join(tokens) + "' is not an expression of kind " + kind_name(kind));
  }
  if (cell.count > 1) {
    throw Error(ErrorCode::ambiguous_parse, "'" + join(tokens) + "' has several parse trees at kind " + kind_name(kind));
  }
  return *cell.tree;
}

Expression Grammar::parse(KindId kind, std::string_view text, VariableMode mode) const {
  auto tokens = tokenize(text);
  return parse(kind, std::span<const std::string>(tokens), mode);
}

Expression Grammar::parse_any(std::span<const std::string> tokens, VariableMode mode) const {
  if (tokens.empty()) throw Error(ErrorCode::no_parse, "empty expression");
  ChartParser parser(*this, tokens, mode, 2, direct_by_kind_, coercions_by_kind_);
  std::optional<Expression> found;
  std::size_t hits = 0;
  for (std::uint32_t k = 0; k < kind_count(); ++k) {
    const auto& cell = parser.parse(KindId{k}, 0, tokens.size());
    if (cell.count == 0) continue;
    if (cell.count > 1) {
      throw Error(ErrorCode::ambiguous_parse, "'" + join(tokens) + "' has several parse trees at kind " + kind_names_[k]);
    }
    if (cell.tree->is_coerce()) continue;
    ++hits;
    found = cell.tree;
  }
  if (hits == 0) throw Error(ErrorCode::no_parse, "'" + join(tokens) + "' is not an expression of any kind");
  if (hits > 1) throw Error(ErrorCode::ambiguous_parse, "'" + join(tokens) + "' parses at several kinds");
  return *found;
}

Expression Grammar::parse_any(std::string_view text, VariableMode mode) const {
  auto tokens = tokenize(text);
  return parse_any(std::span<const std::string>(tokens), mode);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_into(const Grammar& g, const Expression& e, std::vector<std::string>& out) {
  switch (e.tag()) {
    case Expression::Tag::variable:
      out.push_back(e.variable().name);
      return;
    case Expression::Tag::coerce:
      render_into(g, e.core(), out);
      return;
    case Expression::Tag::apply: {
      const Production& p = g.production(e.production());
      std::size_t child = 0;
      for (const auto& item : p.rhs) {
        if (const auto* lit = std::get_if<std::string>(&item)) {
          out.push_back(*lit);
        } else {
          render_into(g, e.children()[child++], out);
        }
      }
      return;
    }
  }
}

}  // namespace

std::vector<std::string> Grammar::render(const Expression& e) const {
  std::vector<std::string> out;
  render_into(*this, e, out);
  return out;
}

std::string Grammar::render_text(const Expression& e) const {
  auto tokens = render(e);
  return join(tokens);
}

std::size_t Grammar::token_count(const Expression& e) const {
  switch (e.tag()) {
    case Expression::Tag::variable: return 1;
    case Expression::Tag::coerce: return token_count(e.core());
    case Expression::Tag::apply: {
      const Production& p = production(e.production());
      std::size_t n = p.rhs.size() - e.children().size();
      for (const auto& c : e.children()) n += token_count(c);
      return n;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Builder

namespace {

bool reserved_free(std::string_view s) {
  return !s.empty() && s.find_first_of("#\" \t\r\n") == std::string_view::npos;
}

}  // namespace

std::optional<KindId> GrammarBuilder::find_kind(std::string_view name) const { return g_.find_kind(name); }

bool GrammarBuilder::has_production(std::string_view id) const {
  return std::any_of(g_.productions_.begin(), g_.productions_.end(), [&](const Production& p) { return p.id == id; });
}

KindId GrammarBuilder::add_kind(std::string name) {
  if (!reserved_free(name)) throw Error(ErrorCode::syntax_error, "invalid kind name '" + name + "'");
  if (g_.kind_index_.count(name)) throw Error(ErrorCode::duplicate_id, "kind '" + name + "' declared twice");
  KindId id{static_cast<std::uint32_t>(g_.kind_names_.size())};
  g_.kind_index_.emplace(name, g_.kind_names_.size());
  g_.kind_names_.push_back(std::move(name));
  return id;
}

ProductionId GrammarBuilder::add_production(std::string id, KindId result, std::vector<RhsItem> rhs, bool declared_coercion) {
  if (has_production(id)) throw Error(ErrorCode::duplicate_id, "rule '" + id + "' declared twice");
  if (rhs.empty()) throw Error(ErrorCode::syntax_error, "rule '" + id + "' has an empty right-hand side");
  auto check_kind = [&](KindId k) {
    if (k.value >= g_.kind_names_.size()) throw Error(ErrorCode::unknown_kind, "rule '" + id + "' uses an undeclared kind");
  };
  check_kind(result);
  for (const auto& item : rhs) {
    if (const auto* lit = std::get_if<std::string>(&item)) {
      if (!reserved_free(*lit)) throw Error(ErrorCode::syntax_error, "invalid literal token '" + *lit + "' in rule '" + id + "'");
    } else {
      check_kind(std::get<KindId>(item));
    }
  }
  ProductionId pid{static_cast<std::uint32_t>(g_.productions_.size())};
  g_.productions_.push_back(Production{std::move(id), result, std::move(rhs), declared_coercion});
  return pid;
}

ProductionId GrammarBuilder::add_coercion(KindId from, KindId into) {
  if (from.value >= g_.kind_names_.size() || into.value >= g_.kind_names_.size()) {
    throw Error(ErrorCode::unknown_kind, "coercion between undeclared kinds");
  }
  std::string id = "coerce:" + g_.kind_names_[from.value] + ":" + g_.kind_names_[into.value];
  return add_production(std::move(id), into, {from}, true);
}

void GrammarBuilder::add_variable(std::string name, KindId kind) {
  if (!reserved_free(name)) throw Error(ErrorCode::syntax_error, "invalid variable name '" + name + "'");
  if (kind.value >= g_.kind_names_.size()) throw Error(ErrorCode::unknown_kind, "variable '" + name + "' has an undeclared kind");
  if (g_.variable_index_.count(name)) throw Error(ErrorCode::duplicate_id, "variable '" + name + "' declared twice");
  g_.variable_index_.emplace(name, g_.variables_.size());
  g_.variables_.push_back(VariableDecl{std::move(name), kind});
}

Grammar GrammarBuilder::build() && {
  Grammar g = std::move(g_);
  const std::size_t n = g.kind_names_.size();
  g.literals_.clear();
  for (const auto& p : g.productions_) {
    for (const auto& item : p.rhs) {
      if (const auto* lit = std::get_if<std::string>(&item)) g.literals_.insert(*lit);
    }
  }
  for (const auto& v : g.variables_) {
    if (g.literals_.count(v.name)) {
      throw Error(ErrorCode::duplicate_id, "variable '" + v.name + "' collides with a literal token");
    }
  }

  g.direct_by_kind_.assign(n, {});
  g.coercions_by_kind_.assign(n, {});
  g.closure_.assign(n, std::vector<bool>(n, false));
  for (std::size_t k = 0; k < n; ++k) g.closure_[k][k] = true;
  for (std::uint32_t i = 0; i < g.productions_.size(); ++i) {
    const auto& p = g.productions_[i];
    if (p.is_coercion()) {
      g.coercions_by_kind_[p.result.value].push_back(ProductionId{i});
      g.closure_[p.result.value][std::get<KindId>(p.rhs.front()).value] = true;
    } else {
      g.direct_by_kind_[p.result.value].push_back(ProductionId{i});
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!g.closure_[a][m]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (g.closure_[m][b]) g.closure_[a][b] = true;
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && g.closure_[a][b] && g.closure_[b][a]) {
        throw Error(ErrorCode::ambiguous_parse,
                    "coercion cycle between kinds " + g.kind_names_[a] + " and " + g.kind_names_[b]);
      }
    }
    for (ProductionId pid : g.coercions_by_kind_[a]) {
      if (std::get<KindId>(g.productions_[pid.value].rhs.front()).value == a) {
        throw Error(ErrorCode::ambiguous_parse, "coercion of kind " + g.kind_names_[a] + " into itself");
      }
    }
  }
  return g;
}

}  // namespace pls
