#pragma once

// Textual process models (.wfm):
//
//   model     := "process" IDENT "{" item* "}"
//   item      := stereo* ("task" IDENT ";" | "event" ("start"|"end") IDENT ";")
//              | "gateway" ("and"|"xor"|"or") ("split"|"merge") IDENT ";"
//              | IDENT ("->" IDENT)+ ";"
//   stereo    := "<<" IDENT "=" STRING ">>"
//
// Line (//) and block (/* */) comments are skipped.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

namespace wfconf {

struct SourceSpan {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseError {
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;

  std::string to_string() const {
    std::string s = std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
    if (!expected.empty()) {
      s += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
      s += ")";
    }
    return s;
  }

  friend bool operator==(const ParseError&, const ParseError&) = default;
};

struct ParseResult {
  std::optional<ProcessModel> model;
  std::vector<ParseError> errors;

  explicit operator bool() const { return model.has_value(); }
};

namespace text_detail {

enum class Tok { Ident, String, LBrace, RBrace, Semi, Arrow, LStereo, RStereo, Equals, Other, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline std::string describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Arrow: return "'->'";
    case Tok::LStereo: return "'<<'";
    case Tok::RStereo: return "'>>'";
    case Tok::Equals: return "'='";
    case Tok::Other: return "character";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<ParseError>& errors) {
    std::vector<Token> out;
    for (;;) {
      skip_trivia(errors);
      SourceSpan at{line_, col_, 1};
      if (pos_ >= src_.size()) {
        // anchor end-of-input diagnostics on the last character
        out.push_back({Tok::End, "", src_.empty() ? SourceSpan{1, 1, 0} : last_});
        return out;
      }
      char c = src_[pos_];
      if (ident_start(c)) {
        std::size_t b = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        at.length = pos_ - b;
        out.push_back({Tok::Ident, std::string(src_.substr(b, pos_ - b)), at});
      } else if (c == '"') {
        advance();
        std::size_t b = pos_;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          at.length = pos_ - b + 1;
          errors.push_back({at, "unterminated string literal", {"'\"'"}});
          continue;
        }
        std::string value(src_.substr(b, pos_ - b));
        advance();
        at.length = value.size() + 2;
        out.push_back({Tok::String, std::move(value), at});
      } else if (match("->")) {
        at.length = 2;
        out.push_back({Tok::Arrow, "->", at});
      } else if (match("<<")) {
        at.length = 2;
        out.push_back({Tok::LStereo, "<<", at});
      } else if (match(">>")) {
        at.length = 2;
        out.push_back({Tok::RStereo, ">>", at});
      } else {
        advance();
        Tok k = c == '{' ? Tok::LBrace : c == '}' ? Tok::RBrace : c == ';' ? Tok::Semi : c == '=' ? Tok::Equals : Tok::Other;
        out.push_back({k, std::string(1, c), at});
      }
    }
  }

 private:
  void advance() {
    last_ = {line_, col_, 1};
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool match(std::string_view s) {
    if (src_.substr(pos_, s.size()) != s) return false;
    for (std::size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }

  void skip_trivia(std::vector<ParseError>& errors) {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        SourceSpan at{line_, col_, 2};
        match("/*");
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) {
          errors.push_back({at, "unterminated block comment", {"'*/'"}});
          return;
        }
        match("*/");
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  SourceSpan last_{1, 1, 1};
};

// Constructs of the wider textual BPMN family that this tool does not model.
inline const std::set<std::string, std::less<>>& unsupported_keywords() {
  static const std::set<std::string, std::less<>> kw{
      "lane", "pool", "data", "message", "subprocess", "call", "timer", "condition", "loop", "import", "package"};
  return kw;
}

inline bool is_keyword(std::string_view s) {
  return s == "process" || s == "task" || s == "event" || s == "gateway";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParseResult run() {
    ParseResult res;
    parse_model();
    res.errors = std::move(errors_);
    if (res.errors.empty()) res.model = ProcessModel(name_, std::move(nodes_), std::move(flows_));
    return res;
  }

 private:
  struct FlowRef {
    std::string name;
    SourceSpan span;
  };

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }

  void error(const Token& t, std::string msg, std::vector<std::string> expected = {}) {
    errors_.push_back({t.span, std::move(msg), std::move(expected)});
  }

  void unexpected(const Token& t, std::vector<std::string> expected) {
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    error(t, "unexpected " + got, std::move(expected));
  }

  bool expect(Tok k, std::vector<std::string> expected = {}) {
    if (at(k)) {
      take();
      return true;
    }
    if (expected.empty()) expected.push_back(describe(k));
    unexpected(peek(), std::move(expected));
    return false;
  }

  std::optional<std::string> expect_ident(const std::string& what) {
    if (at(Tok::Ident) && !is_keyword(peek().text)) return take().text;
    unexpected(peek(), {what});
    return std::nullopt;
  }

  // Skips to just past the next ';' (or to a '}' / end of input).
  void recover() {
    while (!at(Tok::End) && !at(Tok::RBrace)) {
      if (take().kind == Tok::Semi) return;
    }
  }

  void parse_model() {
    if (!at_word("process")) {
      unexpected(peek(), {"'process'"});
      return;
    }
    take();
    auto name = expect_ident("model name");
    if (!name) return;
    name_ = *name;
    if (!expect(Tok::LBrace)) return;
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      std::size_t before = errors_.size();
      parse_item();
      if (errors_.size() != before) recover();
    }
    if (!expect(Tok::RBrace)) return;
    if (!at(Tok::End)) unexpected(peek(), {"end of input"});
    resolve_flows();
  }

  void parse_item() {
    std::vector<Stereotype> stereos;
    const Token* first_stereo = nullptr;
    while (at(Tok::LStereo)) {
      if (!first_stereo) first_stereo = &peek();
      auto st = parse_stereotype();
      if (!st) return;
      stereos.push_back(std::move(*st));
    }

    const Token& head = peek();
    if (head.kind != Tok::Ident) {
      unexpected(head, {"'task'", "'event'", "'gateway'", "flow"});
      return;
    }
    if (head.text == "task") {
      take();
      auto name = expect_ident("task name");
      if (!name) return;
      if (!expect(Tok::Semi)) return;
      declare(Node::task(*name, std::move(stereos)));
    } else if (head.text == "event") {
      take();
      const Token& pos = peek();
      bool is_start = at_word("start");
      if (!is_start && !at_word("end")) {
        if (pos.kind == Tok::Ident)
          error(pos, "unsupported construct: event position '" + pos.text + "'", {"'start'", "'end'"});
        else
          unexpected(pos, {"'start'", "'end'"});
        return;
      }
      take();
      auto name = expect_ident("event name");
      if (!name) return;
      if (!expect(Tok::Semi)) return;
      declare(is_start ? Node::start(*name, std::move(stereos)) : Node::end(*name, std::move(stereos)));
    } else if (head.text == "gateway") {
      if (first_stereo) {
        error(*first_stereo, "stereotypes are only allowed on tasks and events");
        return;
      }
      take();
      std::optional<GatewayLogic> logic;
      if (at_word("and")) logic = GatewayLogic::And;
      else if (at_word("xor")) logic = GatewayLogic::Xor;
      else if (at_word("or")) logic = GatewayLogic::Or;
      if (!logic) {
        unexpected(peek(), {"'and'", "'xor'", "'or'"});
        return;
      }
      take();
      std::optional<GatewayRole> role;
      if (at_word("split")) role = GatewayRole::Split;
      else if (at_word("merge")) role = GatewayRole::Merge;
      if (!role) {
        unexpected(peek(), {"'split'", "'merge'"});
        return;
      }
      take();
      auto name = expect_ident("gateway name");
      if (!name) return;
      if (!expect(Tok::Semi)) return;
      declare(Node::gateway(*name, *logic, *role));
    } else if (head.text == "process") {
      error(head, "nested process definitions are not supported");
    } else {
      if (first_stereo) {
        error(*first_stereo, "stereotypes are only allowed on tasks and events");
        return;
      }
      if (unsupported_keywords().count(head.text) && peek(1).kind == Tok::Ident) {
        error(head, "unsupported construct '" + head.text + "'");
        return;
      }
      parse_flowchain();
    }
  }

  std::optional<Stereotype> parse_stereotype() {
    take();  // <<
    auto mapping = expect_ident("mapping name");
    if (!mapping) return std::nullopt;
    if (!expect(Tok::Equals)) return std::nullopt;
    if (!at(Tok::String)) {
      unexpected(peek(), {"string"});
      return std::nullopt;
    }
    const Token& value = take();
    if (value.text.empty() || !ident_start(value.text[0]) ||
        !std::all_of(value.text.begin(), value.text.end(), ident_char)) {
      error(value, "stereotype value must be an identifier");
      return std::nullopt;
    }
    if (!expect(Tok::RStereo)) return std::nullopt;
    return Stereotype{*mapping, value.text};
  }

  void parse_flowchain() {
    std::vector<FlowRef> chain;
    chain.push_back({take().text, toks_[pos_ - 1].span});
    if (!at(Tok::Arrow)) {
      unexpected(peek(), {"'->'"});
      return;
    }
    while (at(Tok::Arrow)) {
      take();
      if (!at(Tok::Ident) || is_keyword(peek().text)) {
        unexpected(peek(), {"node name"});
        return;
      }
      const Token& t = take();
      chain.push_back({t.text, t.span});
    }
    if (at(Tok::Other) && peek().text == "[") {
      error(peek(), "unsupported construct: flow condition");
      return;
    }
    if (!expect(Tok::Semi, {"';'", "'->'"})) return;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) pending_.push_back({chain[i], chain[i + 1]});
  }

  void declare(Node n) {
    declared_.insert(n.name);
    nodes_.push_back(std::move(n));
  }

  // Flow endpoints may reference nodes declared later in the body.
  void resolve_flows() {
    for (auto& [src, dst] : pending_) {
      bool ok = true;
      for (const auto* r : {&src, &dst}) {
        if (!declared_.count(r->name)) {
          errors_.push_back({r->span, "undeclared node '" + r->name + "' in flow", {}});
          ok = false;
        }
      }
      if (ok) flows_.push_back({src.name, dst.name});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<ParseError> errors_;
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<SequenceFlow> flows_;
  std::set<std::string, std::less<>> declared_;
  std::vector<std::pair<FlowRef, FlowRef>> pending_;
};

}  // namespace text_detail

inline ParseResult parse(std::string_view text) {
  std::vector<ParseError> lex_errors;
  auto toks = text_detail::Lexer(text).run(lex_errors);
  if (!lex_errors.empty()) return {std::nullopt, std::move(lex_errors)};
  return text_detail::Parser(std::move(toks)).run();
}

inline ParseResult parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {std::nullopt, {{{1, 1, 0}, "cannot open file '" + path + "'", {}}}};
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

/// Renders a model in .wfm syntax. Consecutive flows that continue one another
/// are folded into a single chain, so `A -> B; B -> C;` prints as `A -> B -> C;`.
inline std::string print(const ProcessModel& model) {
  std::ostringstream os;
  os << "process " << model.name() << " {\n";
  for (const auto& n : model.nodes()) {
    os << "  ";
    for (const auto& st : n.stereotypes) os << "<<" << st.mapping << "=\"" << st.reference << "\">> ";
    switch (n.kind) {
      case NodeKind::Task: os << "task " << n.name; break;
      case NodeKind::StartEvent: os << "event start " << n.name; break;
      case NodeKind::EndEvent: os << "event end " << n.name; break;
      case NodeKind::Gateway: os << "gateway " << to_string(n.logic) << ' ' << to_string(n.role) << ' ' << n.name; break;
    }
    os << ";\n";
  }
  const auto& flows = model.flows();
  if (!flows.empty()) os << "\n";
  for (std::size_t i = 0; i < flows.size();) {
    os << "  " << flows[i].source << " -> " << flows[i].target;
    std::size_t j = i + 1;
    while (j < flows.size() && flows[j].source == flows[j - 1].target) {
      os << " -> " << flows[j].target;
      ++j;
    }
    os << ";\n";
    i = j;
  }
  os << "}\n";
  return os.str();
}

}  // namespace wfconf
