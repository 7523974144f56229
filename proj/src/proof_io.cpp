#include <cctype>
#include <sstream>

#include "pls/error.hpp"
#include "pls/proof.hpp"

namespace pls {

namespace {

void write_node(std::ostream& out, const Grammar& g, const ProofNode& n, std::size_t indent) {
  if (n.is_leaf()) {
    out << "(hyp \"" << g.render_text(n.expression) << "\")";
    return;
  }
  const Inference& inf = *n.inference;
  out << "(step \"" << g.render_text(n.expression) << "\" by " << inf.assertion << " with {";
  bool first = true;
  for (const auto& [v, e] : inf.witness) {
    out << (first ? " " : " ; ") << v.name << " := \"" << g.render_text(e) << "\"";
    first = false;
  }
  out << " } from";
  for (const auto& p : inf.premises) {
    out << "\n" << std::string(indent + 2, ' ');
    write_node(out, g, p, indent + 2);
  }
  out << ")";
}

struct Lexeme {
  enum class Kind { punct, word, string, end } kind = Kind::end;
  std::string text;
  int line = 0;
  int column = 0;
};

class ProofReader {
 public:
  ProofReader(const DeductiveSystem& d, std::string_view text, VariableMode mode) : d_(d), text_(text), mode_(mode) {
    advance();
  }

  ProofTree read() {
    ProofTree t = node();
    if (cur_.kind != Lexeme::Kind::end) fail("trailing input after proof");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw Error(ErrorCode::syntax_error, msg, cur_.line, cur_.column); }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
    cur_ = Lexeme{};
    cur_.line = line_;
    cur_.column = static_cast<int>(pos_ - line_start_ + 1);
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == ';') {
      cur_.kind = Lexeme::Kind::punct;
      cur_.text = std::string(1, c);
      ++pos_;
      return;
    }
    if (c == '"') {
      auto close = text_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated string");
      cur_.kind = Lexeme::Kind::string;
      cur_.text = std::string(text_.substr(pos_ + 1, close - pos_ - 1));
      if (cur_.text.find('\n') != std::string::npos) fail("newline inside string");
      pos_ = close + 1;
      return;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           std::string_view("(){};\"").find(text_[pos_]) == std::string_view::npos) {
      ++pos_;
    }
    cur_.kind = Lexeme::Kind::word;
    cur_.text = std::string(text_.substr(start, pos_ - start));
  }

  void expect_punct(char c) {
    if (cur_.kind != Lexeme::Kind::punct || cur_.text[0] != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void expect_word(std::string_view w) {
    if (cur_.kind != Lexeme::Kind::word || cur_.text != w) fail("expected '" + std::string(w) + "'");
    advance();
  }

  std::string take_word(std::string_view what) {
    if (cur_.kind != Lexeme::Kind::word) fail("expected " + std::string(what));
    std::string w = cur_.text;
    advance();
    return w;
  }

  template <typename F>
  auto located(const Lexeme& at, F&& f) {
    try {
      return f();
    } catch (const Error& e) {
      if (e.line() > 0) throw;
      throw Error(e.code(), e.detail(), at.line, at.column);
    }
  }

  Expression take_expression() {
    if (cur_.kind != Lexeme::Kind::string) fail("expected a quoted expression");
    Lexeme at = cur_;
    advance();
    return located(at, [&] { return d_.grammar().parse_any(at.text, mode_); });
  }

  Substitution witness() {
    const Grammar& g = d_.grammar();
    Substitution out;
    expect_punct('{');
    if (cur_.kind == Lexeme::Kind::punct && cur_.text == "}") {
      advance();
      return out;
    }
    while (true) {
      Lexeme at = cur_;
      std::string name = take_word("a variable name");
      expect_word(":=");
      if (cur_.kind != Lexeme::Kind::string) fail("expected a quoted expression");
      Lexeme img = cur_;
      advance();
      located(at, [&] {
        auto v = g.resolve_variable(name, VariableMode::replaceable);
        if (!v) throw Error(ErrorCode::undeclared_variable, "undeclared witness variable '" + name + "'");
        if (out.find(*v)) throw Error(ErrorCode::syntax_error, "variable '" + name + "' bound twice");
        Expression e = located(img, [&] { return g.parse(v->kind, img.text, mode_); });
        out.bind(g, *v, e);
      });
      if (cur_.kind == Lexeme::Kind::punct && cur_.text == ";") {
        advance();
        continue;
      }
      expect_punct('}');
      return out;
    }
  }

  ProofNode node() {
    expect_punct('(');
    std::string head = take_word("'hyp' or 'step'");
    if (head == "hyp") {
      Expression e = take_expression();
      expect_punct(')');
      return make_leaf(std::move(e));
    }
    if (head != "step") fail("expected 'hyp' or 'step', found '" + head + "'");
    Expression e = take_expression();
    expect_word("by");
    Lexeme at = cur_;
    std::string id = take_word("an assertion id");
    located(at, [&] { (void)d_.assertion(id); });
    expect_word("with");
    Substitution w = witness();
    expect_word("from");
    std::vector<ProofNode> premises;
    while (!(cur_.kind == Lexeme::Kind::punct && cur_.text == ")")) {
      if (cur_.kind == Lexeme::Kind::end) fail("unexpected end of proof");
      premises.push_back(node());
    }
    advance();
    return make_step(std::move(e), std::move(id), std::move(w), std::move(premises));
  }

  const DeductiveSystem& d_;
  std::string_view text_;
  VariableMode mode_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
  Lexeme cur_;
};

}  // namespace

std::string serialize_proof(const Grammar& g, const ProofTree& t) {
  std::ostringstream out;
  write_node(out, g, t, 0);
  out << "\n";
  return out.str();
}

ProofTree parse_proof(const DeductiveSystem& d, std::string_view text, VariableMode mode) {
  return ProofReader(d, text, mode).read();
}

}  // namespace pls
