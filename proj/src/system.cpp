#include "pls/system.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "pls/error.hpp"
#include "pls/term.hpp"

namespace pls {

VariableSet Assertion::variables() const {
  VariableSet out;
  for (const auto& p : premises) collect_variables(p, out);
  collect_variables(proposition, out);
  return out;
}

VariableSet Statement::variables() const {
  VariableSet out;
  for (const auto& p : premises) collect_variables(p, out);
  collect_variables(goal, out);
  return out;
}

DeductiveSystem::DeductiveSystem(Grammar grammar, std::vector<Assertion> assertions, std::vector<Statement> statements)
    : grammar_(std::move(grammar)), assertions_(std::move(assertions)), statements_(std::move(statements)) {
  std::set<std::string, std::less<>> ids;
  auto claim = [&](const std::string& id) {
    if (!ids.insert(id).second) throw Error(ErrorCode::duplicate_id, "id '" + id + "' declared twice");
  };
  for (const auto& a : assertions_) claim(a.id);
  for (const auto& s : statements_) claim(s.id);
}

const Assertion* DeductiveSystem::find_assertion(std::string_view id) const {
  auto it = std::find_if(assertions_.begin(), assertions_.end(), [&](const Assertion& a) { return a.id == id; });
  return it == assertions_.end() ? nullptr : &*it;
}

const Assertion& DeductiveSystem::assertion(std::string_view id) const {
  if (const auto* a = find_assertion(id)) return *a;
  throw Error(ErrorCode::unknown_assertion, "unknown assertion '" + std::string(id) + "'");
}

std::size_t DeductiveSystem::assertion_index(std::string_view id) const {
  return static_cast<std::size_t>(&assertion(id) - assertions_.data());
}

const Statement& DeductiveSystem::statement(std::string_view id) const {
  auto it = std::find_if(statements_.begin(), statements_.end(), [&](const Statement& s) { return s.id == id; });
  if (it == statements_.end()) throw Error(ErrorCode::unknown_statement, "unknown statement '" + std::string(id) + "'");
  return *it;
}

// ---------------------------------------------------------------------------
// Fresh renaming

std::string fresh_name(std::string_view base, std::uint64_t suffix) {
  return std::string(base) + "#" + std::to_string(suffix);
}

std::string erase_fresh_suffix(std::string_view name) {
  auto hash = name.rfind('#');
  if (hash == std::string_view::npos || hash + 1 == name.size()) return std::string(name);
  auto suffix = name.substr(hash + 1);
  if (!std::all_of(suffix.begin(), suffix.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::string(name);
  }
  return std::string(name.substr(0, hash));
}

Assertion rename_assertion(const Assertion& a, std::uint64_t suffix) {
  Substitution renaming;
  for (const auto& v : a.variables()) {
    renaming.assign(v, Expression::make_variable(Variable{fresh_name(v.name, suffix), v.kind, true}));
  }
  Assertion out{a.id, {}, apply(renaming, a.proposition)};
  out.premises.reserve(a.premises.size());
  for (const auto& p : a.premises) out.premises.push_back(apply(renaming, p));
  return out;
}

Assertion rename_assertion(const Assertion& a, FreshSupply& supply) { return rename_assertion(a, supply.take()); }

// ---------------------------------------------------------------------------
// Loading

namespace {

struct Token {
  std::string text;
  bool quoted = false;
  int column = 0;
};

std::vector<Token> scan_line(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    const int col = static_cast<int>(i + 1);
    if (c == '"') {
      auto close = line.find('"', i + 1);
      if (close == std::string::npos) throw Error(ErrorCode::syntax_error, "unterminated string", line_no, col);
      out.push_back(Token{line.substr(i + 1, close - i - 1), true, col});
      i = close + 1;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '"') ++i;
    out.push_back(Token{line.substr(start, i - start), false, col});
  }
  return out;
}

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

[[noreturn]] void syntax(const Line& l, const std::string& msg, int column = 0) {
  throw Error(ErrorCode::syntax_error, msg, l.number, column > 0 ? column : (l.tokens.empty() ? 0 : l.tokens[0].column));
}

const Token& bare(const Line& l, std::size_t i, std::string_view what) {
  if (i >= l.tokens.size()) syntax(l, "expected " + std::string(what) + " at end of line");
  if (l.tokens[i].quoted) syntax(l, "expected " + std::string(what) + ", found a string", l.tokens[i].column);
  return l.tokens[i];
}

void expect(const Line& l, std::size_t i, std::string_view word) {
  const Token& t = bare(l, i, "'" + std::string(word) + "'");
  if (t.text != word) syntax(l, "expected '" + std::string(word) + "', found '" + t.text + "'", t.column);
}

KindId lookup_kind(const GrammarBuilder& b, const Line& l, const Token& t) {
  if (auto k = b.find_kind(t.text)) return *k;
  throw Error(ErrorCode::unknown_kind, "unknown kind '" + t.text + "'", l.number, t.column);
}

template <typename F>
auto with_position(const Line& l, const Token& t, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.line() > 0) throw;
    throw Error(e.code(), e.detail(), l.number, t.column);
  }
}

Expression parse_system_expression(const Grammar& g, const Line& l, const Token& t, VariableMode mode) {
  return with_position(l, t, [&] {
    auto tokens = tokenize(t.text);
    for (const auto& tok : tokens) {
      if (!g.is_literal(tok) && g.find_variable(tok) == nullptr) {
        throw Error(ErrorCode::undeclared_variable, "'" + tok + "' is neither a literal nor a declared variable");
      }
    }
    return g.parse_any(std::span<const std::string>(tokens), mode);
  });
}

struct Figure {
  std::string id;
  std::vector<Expression> premises;
  Expression conclusion;
};

Figure parse_figure(const Grammar& g, const Line& l, VariableMode mode) {
  const Token& id = bare(l, 1, "an id");
  expect(l, 2, ":");
  std::vector<Expression> premises;
  std::size_t i = 3;
  while (i < l.tokens.size() && l.tokens[i].quoted) {
    premises.push_back(parse_system_expression(g, l, l.tokens[i], mode));
    ++i;
  }
  expect(l, i, "=>");
  ++i;
  if (i >= l.tokens.size() || !l.tokens[i].quoted) syntax(l, "expected a quoted conclusion after '=>'");
  Expression conclusion = parse_system_expression(g, l, l.tokens[i], mode);
  if (i + 1 != l.tokens.size()) syntax(l, "trailing tokens after conclusion", l.tokens[i + 1].column);
  return Figure{id.text, std::move(premises), std::move(conclusion)};
}

}  // namespace

DeductiveSystem load_system(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    auto tokens = scan_line(text, number);
    if (!tokens.empty()) lines.push_back(Line{number, std::move(tokens)});
  }

  GrammarBuilder builder;
  std::vector<const Line*> figures;
  for (const auto& l : lines) {
    const Token& head = l.tokens[0];
    if (head.quoted) syntax(l, "a line must start with a keyword");
    auto located = [&](auto&& f) { with_position(l, head, f); };
    if (head.text == "kind") {
      const Token& name = bare(l, 1, "a kind name");
      if (l.tokens.size() != 2) syntax(l, "trailing tokens after kind declaration", l.tokens[2].column);
      located([&] { builder.add_kind(name.text); });
    } else if (head.text == "coerce") {
      KindId from = lookup_kind(builder, l, bare(l, 1, "a kind name"));
      expect(l, 2, "into");
      KindId into = lookup_kind(builder, l, bare(l, 3, "a kind name"));
      if (l.tokens.size() != 4) syntax(l, "trailing tokens after coercion", l.tokens[4].column);
      located([&] { builder.add_coercion(from, into); });
    } else if (head.text == "rule") {
      const Token& id = bare(l, 1, "a rule id");
      expect(l, 2, ":");
      KindId result = lookup_kind(builder, l, bare(l, 3, "a kind name"));
      expect(l, 4, "::=");
      if (l.tokens.size() < 6) syntax(l, "rule has an empty right-hand side");
      std::vector<RhsItem> rhs;
      for (std::size_t i = 5; i < l.tokens.size(); ++i) {
        const Token& t = l.tokens[i];
        if (t.quoted) {
          rhs.emplace_back(t.text);
        } else {
          rhs.emplace_back(lookup_kind(builder, l, t));
        }
      }
      located([&] { builder.add_production(id.text, result, std::move(rhs)); });
    } else if (head.text == "var") {
      std::size_t colon = 1;
      while (colon < l.tokens.size() && !(l.tokens[colon].text == ":" && !l.tokens[colon].quoted)) ++colon;
      if (colon == 1 || colon + 2 != l.tokens.size()) syntax(l, "expected 'var <name>+ : <kind>'");
      KindId kind = lookup_kind(builder, l, bare(l, colon + 1, "a kind name"));
      for (std::size_t i = 1; i < colon; ++i) {
        const Token& name = bare(l, i, "a variable name");
        with_position(l, name, [&] { builder.add_variable(name.text, kind); });
      }
    } else if (head.text == "axiom" || head.text == "statement") {
      figures.push_back(&l);
    } else {
      syntax(l, "unknown keyword '" + head.text + "'");
    }
  }

  Grammar grammar = std::move(builder).build();
  std::vector<Assertion> assertions;
  std::vector<Statement> statements;
  std::set<std::string, std::less<>> ids;
  for (const Line* l : figures) {
    const bool is_axiom = l->tokens[0].text == "axiom";
    Figure f = parse_figure(grammar, *l, is_axiom ? VariableMode::replaceable : VariableMode::frozen);
    if (!ids.insert(f.id).second) {
      throw Error(ErrorCode::duplicate_id, "id '" + f.id + "' declared twice", l->number, l->tokens[1].column);
    }
    if (is_axiom) {
      assertions.push_back(Assertion{f.id, std::move(f.premises), std::move(f.conclusion)});
    } else {
      statements.push_back(Statement{f.id, std::move(f.premises), std::move(f.conclusion)});
    }
  }
  return DeductiveSystem(std::move(grammar), std::move(assertions), std::move(statements));
}

DeductiveSystem load_system_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_system(in);
}

DeductiveSystem load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path.string() + "'");
  return load_system(in);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string quoted_figure(const Grammar& g, const std::vector<Expression>& premises, const Expression& conclusion) {
  std::string out;
  for (const auto& p : premises) out += " \"" + g.render_text(p) + "\"";
  out += " => \"" + g.render_text(conclusion) + "\"";
  return out;
}

}  // namespace

std::string render_system(const DeductiveSystem& d) {
  const Grammar& g = d.grammar();
  std::ostringstream out;
  for (std::uint32_t k = 0; k < g.kind_count(); ++k) out << "kind " << g.kind_name(KindId{k}) << "\n";
  for (const auto& p : g.productions()) {
    if (p.declared_coercion) {
      out << "coerce " << g.kind_name(std::get<KindId>(p.rhs.front())) << " into " << g.kind_name(p.result) << "\n";
      continue;
    }
    out << "rule " << p.id << " : " << g.kind_name(p.result) << " ::=";
    for (const auto& item : p.rhs) {
      if (const auto* lit = std::get_if<std::string>(&item)) {
        out << " \"" << *lit << "\"";
      } else {
        out << " " << g.kind_name(std::get<KindId>(item));
      }
    }
    out << "\n";
  }
  auto vars = g.variables();
  for (std::size_t i = 0; i < vars.size();) {
    std::size_t j = i;
    out << "var";
    while (j < vars.size() && vars[j].kind == vars[i].kind) out << " " << vars[j++].name;
    out << " : " << g.kind_name(vars[i].kind) << "\n";
    i = j;
  }
  for (const auto& a : d.assertions()) out << "axiom " << a.id << " :" << quoted_figure(g, a.premises, a.proposition) << "\n";
  for (const auto& s : d.statements()) out << "statement " << s.id << " :" << quoted_figure(g, s.premises, s.goal) << "\n";
  return out.str();
}

}  // namespace pls
