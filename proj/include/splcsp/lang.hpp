#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace splcsp {

struct SourceSpan {
  int line = 0;
  int column = 0;

  friend auto operator<=>(const SourceSpan&, const SourceSpan&) = default;
};

enum class StmtKind { Epsilon, Break, Continue, Seq, If, While };

const char* to_string(StmtKind kind);

// Abstract syntax of a structured goto-free program:
//
//   P := eps | break | continue | P ; P
//      | if guard then P else P fi | while guard do P od
//
// `text` holds the statement text of an Epsilon leaf and the guard of an
// If/While node; it is empty otherwise. Seq and If have two children, While
// has one, leaves have none.
struct ParseTree {
  StmtKind kind = StmtKind::Epsilon;
  std::string text;
  SourceSpan span;
  std::vector<ParseTree> children;

  static ParseTree epsilon(std::string text, SourceSpan span = {});
  static ParseTree brk(SourceSpan span = {});
  static ParseTree cont(SourceSpan span = {});
  static ParseTree seq(ParseTree left, ParseTree right);
  static ParseTree if_else(std::string guard, ParseTree then_branch, ParseTree else_branch,
                           SourceSpan span = {});
  static ParseTree while_do(std::string guard, ParseTree body, SourceSpan span = {});

  bool is_leaf() const { return children.empty(); }

  // Number of nodes in the tree.
  std::size_t size() const;

  // Spans are location metadata and do not take part in equality.
  friend bool operator==(const ParseTree& a, const ParseTree& b);
};

struct ClosednessReport {
  bool is_closed = true;
  std::vector<SourceSpan> violations;
};

// Parses the concrete syntax. Keywords are if/then/else/fi/while/do/od/
// break/continue; `;` sequences statements (left-associatively); `#` starts
// a line comment. Any other run of words is an atomic statement, or a guard
// when it follows `if`/`while`. Both branches of an `if` are required.
//
// Throws SyntaxError on malformed input and EmptyInput when there is no
// statement at all.
ParseTree parse_program(std::string_view source);

// A program is closed when every break/continue has a While ancestor.
ClosednessReport check_closed(const ParseTree& tree);

// Canonical emitter: one statement per line, two-space indentation, `;`
// appended to every statement that is followed by another.
// parse_program(pretty_print(t)) == t for left-associated trees.
std::string pretty_print(const ParseTree& tree);

// Re-associates every chain of Seq nodes to the left, which is the shape
// parse_program produces. The node count is unchanged.
ParseTree left_associate(ParseTree tree);

}  // namespace splcsp
