// Copyright 2026 The Newsbot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEWSBOT_TEMPLATE_DSL_H_
#define NEWSBOT_TEMPLATE_DSL_H_

// A small, total template language for sentence generation.
//
//   template   := (text | interp | if)*
//   text       := any characters; "{{" is a literal '{', "##" a literal '#'
//   interp     := '{' expr '}'
//   if         := "#if(" expr ')' template
//                 ("#elif(" expr ')' template)*
//                 ("#else" template)?
//                 "#end"
//   expr       := and ("||" and)*
//   and        := cmp ("&&" cmp)*
//   cmp        := primary (("=="|"!="|"<"|"<="|">"|">=") primary)?
//   primary    := integer | string | "true" | "false"
//               | path | function '(' (expr (',' expr)*)? ')' | '(' expr ')'
//   path       := ident ('.' ident)*
//
// Built-in functions are ordinal(n) ("1st", "2nd", "23rd", "11th") and
// minute(n) (decimal text). There are no loops: every template renders in
// time linear in its size.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "newsbot/random.h"

namespace newsbot {

struct SourcePos {
  int line = 1;
  int column = 1;  // code points, 1-based
};

using Value = std::variant<std::string, int64_t, bool>;

std::string ValueToText(const Value &value);

enum class BinaryOp { kEq, kNe, kLt, kLe, kGt, kGe, kAnd, kOr };

std::string_view BinaryOpSymbol(BinaryOp op);

struct Expr;

struct LiteralExpr {
  Value value;
};

struct PathExpr {
  std::string path;  // dotted, e.g. "h.score_a"
};

struct CallExpr {
  std::string function;
  std::vector<Expr> args;
};

struct BinaryExpr {
  BinaryOp op = BinaryOp::kEq;
  std::vector<Expr> operands;  // exactly two
};

struct Expr {
  std::variant<LiteralExpr, PathExpr, CallExpr, BinaryExpr> node;
  SourcePos pos;
};

struct Node;

struct TextNode {
  std::string text;
};

struct InterpNode {
  Expr expr;
};

struct IfBranch {
  Expr condition;
  std::vector<Node> body;
};

struct IfNode {
  std::vector<IfBranch> branches;  // at least one
  std::vector<Node> else_body;
};

struct Node {
  std::variant<TextNode, InterpNode, IfNode> value;
  SourcePos pos;
};

class TemplateProgram {
 public:
  TemplateProgram() = default;
  TemplateProgram(std::vector<Node> nodes, std::string source_name)
      : nodes_(std::move(nodes)), source_name_(std::move(source_name)) {}

  const std::vector<Node> &nodes() const { return nodes_; }
  const std::string &source_name() const { return source_name_; }

 private:
  std::vector<Node> nodes_;
  std::string source_name_;
};

// Throws Error(kSyntax) with "name:line:column" for unterminated '{',
// unknown directives or functions, and unbalanced #if/#elif/#else/#end.
// first_line offsets reported positions for templates embedded in a file.
TemplateProgram ParseTemplate(std::string_view source, std::string_view name,
                              int first_line = 1);

// Canonical source text. ParseTemplate(SerializeTemplate(p)) is structurally
// equal to p for every program without empty or adjacent text nodes (which
// the parser never produces).
std::string SerializeTemplate(const TemplateProgram &program);
std::string SerializeExpr(const Expr &expr);

// Compares node kinds, literals, paths and tree shape; positions and source
// names are ignored.
bool StructurallyEqual(const TemplateProgram &a, const TemplateProgram &b);
bool StructurallyEqual(const Expr &a, const Expr &b);

struct RenderContext {
  std::map<std::string, Value> bindings;
  uint64_t rng_seed = 0;

  void Bind(const std::string &path, Value value) {
    bindings[path] = std::move(value);
  }
};

// Pure. Unbound paths and type mismatches raise Error(kRender) naming the
// path or operator and the node position. Branches are tried top-down and
// only the taken branch is evaluated.
std::string Render(const TemplateProgram &program, const RenderContext &ctx);

// "1st", "2nd", "3rd", "4th", ..., "11th", "12th", "13th", "21st", ...
std::string Ordinal(int64_t n);

// Templates keyed by event category or generation strategy. Every key holds
// at least one template.
class TemplateBank {
 public:
  void Add(const std::string &key, TemplateProgram program);
  bool Has(std::string_view key) const;
  // Throws Error(kLookup) naming the key.
  const std::vector<TemplateProgram> &Lookup(std::string_view key) const;
  const std::map<std::string, std::vector<TemplateProgram>, std::less<>> &
  entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<TemplateProgram>, std::less<>> entries_;
};

// Bank file: sections headed by "[key]" lines, templates within a section
// separated by lines containing only "---". Each template's surrounding
// whitespace is trimmed. Outside template bodies, lines that are "#" or start
// with "# " are comments (directives never have a space after '#').
TemplateBank ParseTemplateBank(std::string_view text, std::string_view source_name);

// Uniform choice among the key's templates via RandomStream::UniformBelow.
const TemplateProgram &SelectTemplate(const TemplateBank &bank,
                                      std::string_view key, RandomStream &rng);

}  // namespace newsbot

#endif  // NEWSBOT_TEMPLATE_DSL_H_
