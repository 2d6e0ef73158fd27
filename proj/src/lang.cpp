#include "splcsp/lang.hpp"

#include <array>
#include <optional>
#include <utility>

#include "splcsp/errors.hpp"

namespace splcsp {

const char* to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::Epsilon:
      return "epsilon";
    case StmtKind::Break:
      return "break";
    case StmtKind::Continue:
      return "continue";
    case StmtKind::Seq:
      return "seq";
    case StmtKind::If:
      return "if";
    case StmtKind::While:
      return "while";
  }
  return "?";
}

ParseTree ParseTree::epsilon(std::string text, SourceSpan span) {
  return ParseTree{StmtKind::Epsilon, std::move(text), span, {}};
}

ParseTree ParseTree::brk(SourceSpan span) { return ParseTree{StmtKind::Break, {}, span, {}}; }

ParseTree ParseTree::cont(SourceSpan span) { return ParseTree{StmtKind::Continue, {}, span, {}}; }

ParseTree ParseTree::seq(ParseTree left, ParseTree right) {
  ParseTree t{StmtKind::Seq, {}, left.span, {}};
  t.children.reserve(2);
  t.children.push_back(std::move(left));
  t.children.push_back(std::move(right));
  return t;
}

ParseTree ParseTree::if_else(std::string guard, ParseTree then_branch, ParseTree else_branch,
                             SourceSpan span) {
  ParseTree t{StmtKind::If, std::move(guard), span, {}};
  t.children.reserve(2);
  t.children.push_back(std::move(then_branch));
  t.children.push_back(std::move(else_branch));
  return t;
}

ParseTree ParseTree::while_do(std::string guard, ParseTree body, SourceSpan span) {
  ParseTree t{StmtKind::While, std::move(guard), span, {}};
  t.children.push_back(std::move(body));
  return t;
}

std::size_t ParseTree::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

bool operator==(const ParseTree& a, const ParseTree& b) {
  return a.kind == b.kind && a.text == b.text && a.children == b.children;
}

namespace {

enum class Tok { Word, Semi, If, Then, Else, Fi, While, Do, Od, Break, Continue, End };

const char* describe(Tok t) {
  switch (t) {
    case Tok::Word:
      return "statement text";
    case Tok::Semi:
      return "';'";
    case Tok::If:
      return "'if'";
    case Tok::Then:
      return "'then'";
    case Tok::Else:
      return "'else'";
    case Tok::Fi:
      return "'fi'";
    case Tok::While:
      return "'while'";
    case Tok::Do:
      return "'do'";
    case Tok::Od:
      return "'od'";
    case Tok::Break:
      return "'break'";
    case Tok::Continue:
      return "'continue'";
    case Tok::End:
      return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
};

Tok classify(std::string_view word) {
  static constexpr std::array<std::pair<std::string_view, Tok>, 9> kKeywords{{
      {"if", Tok::If},
      {"then", Tok::Then},
      {"else", Tok::Else},
      {"fi", Tok::Fi},
      {"while", Tok::While},
      {"do", Tok::Do},
      {"od", Tok::Od},
      {"break", Tok::Break},
      {"continue", Tok::Continue},
  }};
  for (const auto& [kw, tok] : kKeywords) {
    if (kw == word) return tok;
  }
  return Tok::Word;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (is_space(c)) {
      ++col;
      ++i;
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == ';') {
      out.push_back({Tok::Semi, src.substr(i, 1), {line, col}});
      ++col;
      ++i;
    } else {
      std::size_t start = i;
      SourceSpan span{line, col};
      while (i < src.size() && !is_space(src[i]) && src[i] != ';' && src[i] != '#') {
        ++i;
        ++col;
      }
      std::string_view word = src.substr(start, i - start);
      out.push_back({classify(word), word, span});
    }
  }
  out.push_back({Tok::End, {}, {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ParseTree program() {
    if (peek().kind == Tok::End) throw EmptyInput();
    ParseTree t = sequence();
    if (peek().kind != Tok::End) fail("expected ';' or end of input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(t.span.line, t.span.column, msg + ", found " + describe(t.kind));
  }

  void expect(Tok kind) {
    if (peek().kind != kind) fail(std::string("expected ") + describe(kind));
    ++pos_;
  }

  ParseTree sequence() {
    ParseTree left = statement();
    while (peek().kind == Tok::Semi) {
      ++pos_;
      left = ParseTree::seq(std::move(left), statement());
    }
    return left;
  }

  // Joins a run of words with single spaces.
  std::optional<std::string> words() {
    if (peek().kind != Tok::Word) return std::nullopt;
    std::string text(next().text);
    while (peek().kind == Tok::Word) {
      text += ' ';
      text += next().text;
    }
    return text;
  }

  std::string guard() {
    auto g = words();
    if (!g) fail("expected a guard");
    return *g;
  }

  ParseTree statement() {
    const Token& t = peek();
    SourceSpan span = t.span;
    switch (t.kind) {
      case Tok::Break:
        ++pos_;
        return ParseTree::brk(span);
      case Tok::Continue:
        ++pos_;
        return ParseTree::cont(span);
      case Tok::If: {
        ++pos_;
        std::string g = guard();
        expect(Tok::Then);
        ParseTree then_branch = sequence();
        if (peek().kind == Tok::Fi) fail("'if' requires an 'else' branch");
        expect(Tok::Else);
        ParseTree else_branch = sequence();
        expect(Tok::Fi);
        return ParseTree::if_else(std::move(g), std::move(then_branch), std::move(else_branch), span);
      }
      case Tok::While: {
        ++pos_;
        std::string g = guard();
        expect(Tok::Do);
        ParseTree body = sequence();
        expect(Tok::Od);
        return ParseTree::while_do(std::move(g), std::move(body), span);
      }
      case Tok::Word:
        return ParseTree::epsilon(*words(), span);
      default:
        fail("expected a statement");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void collect_open(const ParseTree& t, int loop_depth, std::vector<SourceSpan>& out) {
  switch (t.kind) {
    case StmtKind::Break:
    case StmtKind::Continue:
      if (loop_depth == 0) out.push_back(t.span);
      return;
    case StmtKind::While:
      collect_open(t.children[0], loop_depth + 1, out);
      return;
    default:
      for (const auto& c : t.children) collect_open(c, loop_depth, out);
  }
}

void emit(const ParseTree& t, int depth, std::vector<std::string>& lines) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (t.kind) {
    case StmtKind::Epsilon:
      lines.push_back(pad + t.text);
      return;
    case StmtKind::Break:
      lines.push_back(pad + "break");
      return;
    case StmtKind::Continue:
      lines.push_back(pad + "continue");
      return;
    case StmtKind::Seq:
      emit(t.children[0], depth, lines);
      lines.back() += ';';
      emit(t.children[1], depth, lines);
      return;
    case StmtKind::If:
      lines.push_back(pad + "if " + t.text + " then");
      emit(t.children[0], depth + 1, lines);
      lines.push_back(pad + "else");
      emit(t.children[1], depth + 1, lines);
      lines.push_back(pad + "fi");
      return;
    case StmtKind::While:
      lines.push_back(pad + "while " + t.text + " do");
      emit(t.children[0], depth + 1, lines);
      lines.push_back(pad + "od");
      return;
  }
}

void flatten_seq(ParseTree&& t, std::vector<ParseTree>& items) {
  if (t.kind == StmtKind::Seq) {
    flatten_seq(std::move(t.children[0]), items);
    flatten_seq(std::move(t.children[1]), items);
  } else {
    items.push_back(left_associate(std::move(t)));
  }
}

}  // namespace

ParseTree parse_program(std::string_view source) { return Parser(lex(source)).program(); }

ClosednessReport check_closed(const ParseTree& tree) {
  ClosednessReport r;
  collect_open(tree, 0, r.violations);
  r.is_closed = r.violations.empty();
  return r;
}

std::string pretty_print(const ParseTree& tree) {
  std::vector<std::string> lines;
  emit(tree, 0, lines);
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

ParseTree left_associate(ParseTree tree) {
  if (tree.kind != StmtKind::Seq) {
    for (auto& c : tree.children) c = left_associate(std::move(c));
    return tree;
  }
  std::vector<ParseTree> items;
  flatten_seq(std::move(tree), items);
  ParseTree acc = std::move(items[0]);
  for (std::size_t i = 1; i < items.size(); ++i) acc = ParseTree::seq(std::move(acc), std::move(items[i]));
  return acc;
}

}  // namespace splcsp
