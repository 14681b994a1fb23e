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

#include "newsbot/template_dsl.h"

#include <limits>

#include "newsbot/error.h"
#include "newsbot/text_util.h"

namespace newsbot {

namespace {

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

struct FunctionSpec {
  std::string_view name;
  std::size_t arity;
};

constexpr FunctionSpec kFunctions[] = {{"ordinal", 1}, {"minute", 1}};

const FunctionSpec *FindFunction(std::string_view name) {
  for (const FunctionSpec &spec : kFunctions) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

std::string FormatPos(std::string_view name, SourcePos pos) {
  return std::string(name) + ":" + std::to_string(pos.line) + ":" +
         std::to_string(pos.column);
}

enum class Terminator { kEof, kElif, kElse, kEnd };

class Parser {
 public:
  Parser(std::string_view source, std::string_view name, int first_line)
      : src_(source), name_(name) {
    pos_.line = first_line;
  }

  std::vector<Node> ParseProgram() {
    auto [nodes, term, term_pos] = ParseSequence();
    switch (term) {
      case Terminator::kEof: return nodes;
      case Terminator::kElif: Fail(term_pos, "#elif without #if");
      case Terminator::kElse: Fail(term_pos, "#else without #if");
      case Terminator::kEnd: Fail(term_pos, "#end without #if");
    }
    return nodes;
  }

 private:
  struct Sequence {
    std::vector<Node> nodes;
    Terminator term;
    SourcePos term_pos;
  };

  [[noreturn]] void Fail(SourcePos at, const std::string &what) const {
    throw Error(ErrorKind::kSyntax, FormatPos(name_, at) + ": " + what);
  }

  bool AtEnd() const { return i_ >= src_.size(); }
  char Peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  bool LookingAt(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

  // Advances one code point, maintaining line/column.
  void Advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
      ++i_;
      return;
    }
    i_ += Utf8SequenceLength(src_, i_);
    ++pos_.column;
  }
  void Advance(std::size_t ascii_chars) {
    for (std::size_t k = 0; k < ascii_chars; ++k) Advance();
  }

  void SkipSpace() {
    while (!AtEnd() && (Peek() == ' ' || Peek() == '\t' || Peek() == '\n' ||
                        Peek() == '\r')) {
      Advance();
    }
  }

  Sequence ParseSequence() {
    Sequence seq;
    std::string text;
    SourcePos text_pos = pos_;
    auto flush = [&] {
      if (!text.empty()) {
        seq.nodes.push_back(Node{TextNode{std::move(text)}, text_pos});
        text.clear();
      }
    };
    for (;;) {
      if (AtEnd()) {
        flush();
        seq.term = Terminator::kEof;
        seq.term_pos = pos_;
        return seq;
      }
      if (text.empty()) text_pos = pos_;
      const char c = Peek();
      if (c == '{' && Peek(1) == '{') {
        text.push_back('{');
        Advance(2);
      } else if (c == '#' && Peek(1) == '#') {
        text.push_back('#');
        Advance(2);
      } else if (c == '{') {
        flush();
        seq.nodes.push_back(ParseInterpolation());
      } else if (c == '#') {
        flush();
        const SourcePos at = pos_;
        Advance();
        if (LookingAt("elif")) {
          Advance(4);
          seq.term = Terminator::kElif;
        } else if (LookingAt("else")) {
          Advance(4);
          seq.term = Terminator::kElse;
        } else if (LookingAt("end")) {
          Advance(3);
          seq.term = Terminator::kEnd;
        } else if (LookingAt("if")) {
          Advance(2);
          seq.nodes.push_back(ParseIf(at));
          continue;
        } else {
          Fail(at, "unknown directive");
        }
        seq.term_pos = at;
        return seq;
      } else {
        const std::size_t start = i_;
        Advance();
        text.append(src_.substr(start, i_ - start));
      }
    }
  }

  Node ParseInterpolation() {
    const SourcePos at = pos_;
    Advance();  // '{'
    SkipSpace();
    if (AtEnd()) Fail(at, "unterminated '{'");
    Expr expr = ParseExpr();
    SkipSpace();
    if (AtEnd()) Fail(at, "unterminated '{'");
    if (Peek() != '}') Fail(pos_, "expected '}' to close interpolation");
    Advance();
    return Node{InterpNode{std::move(expr)}, at};
  }

  Expr ParseCondition(SourcePos directive) {
    SkipSpace();
    if (Peek() != '(') Fail(directive, "expected '(' after directive");
    Advance();
    SkipSpace();
    if (AtEnd()) Fail(directive, "unterminated condition");
    Expr cond = ParseExpr();
    SkipSpace();
    if (Peek() != ')') Fail(pos_, "expected ')' to close condition");
    Advance();
    return cond;
  }

  Node ParseIf(SourcePos at) {
    IfNode node;
    Expr cond = ParseCondition(at);
    for (;;) {
      Sequence body = ParseSequence();
      node.branches.push_back(IfBranch{std::move(cond), std::move(body.nodes)});
      if (body.term == Terminator::kEnd) break;
      if (body.term == Terminator::kEof) Fail(at, "unbalanced #if: missing #end");
      if (body.term == Terminator::kElse) {
        Sequence rest = ParseSequence();
        if (rest.term == Terminator::kEof) Fail(at, "unbalanced #if: missing #end");
        if (rest.term != Terminator::kEnd) {
          Fail(rest.term_pos, "#elif or #else after #else");
        }
        node.else_body = std::move(rest.nodes);
        break;
      }
      cond = ParseCondition(body.term_pos);
    }
    return Node{std::move(node), at};
  }

  Expr ParseExpr() { return ParseOr(); }

  Expr ParseOr() {
    Expr lhs = ParseAnd();
    for (;;) {
      SkipSpace();
      if (!LookingAt("||")) return lhs;
      const SourcePos at = pos_;
      Advance(2);
      SkipSpace();
      Expr rhs = ParseAnd();
      lhs = MakeBinary(BinaryOp::kOr, std::move(lhs), std::move(rhs), at);
    }
  }

  Expr ParseAnd() {
    Expr lhs = ParseComparison();
    for (;;) {
      SkipSpace();
      if (!LookingAt("&&")) return lhs;
      const SourcePos at = pos_;
      Advance(2);
      SkipSpace();
      Expr rhs = ParseComparison();
      lhs = MakeBinary(BinaryOp::kAnd, std::move(lhs), std::move(rhs), at);
    }
  }

  Expr ParseComparison() {
    Expr lhs = ParsePrimary();
    SkipSpace();
    static constexpr std::pair<std::string_view, BinaryOp> kOps[] = {
        {"==", BinaryOp::kEq}, {"!=", BinaryOp::kNe}, {"<=", BinaryOp::kLe},
        {">=", BinaryOp::kGe}, {"<", BinaryOp::kLt},  {">", BinaryOp::kGt}};
    for (const auto &[symbol, op] : kOps) {
      if (!LookingAt(symbol)) continue;
      const SourcePos at = pos_;
      Advance(symbol.size());
      SkipSpace();
      Expr rhs = ParsePrimary();
      return MakeBinary(op, std::move(lhs), std::move(rhs), at);
    }
    return lhs;
  }

  static Expr MakeBinary(BinaryOp op, Expr lhs, Expr rhs, SourcePos at) {
    BinaryExpr bin{op, {}};
    bin.operands.push_back(std::move(lhs));
    bin.operands.push_back(std::move(rhs));
    return Expr{std::move(bin), at};
  }

  Expr ParsePrimary() {
    SkipSpace();
    const SourcePos at = pos_;
    if (AtEnd()) Fail(at, "unexpected end of expression");
    const char c = Peek();
    if (IsDigit(c) || (c == '-' && IsDigit(Peek(1)))) return ParseInteger();
    if (c == '"') return ParseString();
    if (c == '(') {
      Advance();
      Expr inner = ParseExpr();
      SkipSpace();
      if (Peek() != ')') Fail(pos_, "expected ')'");
      Advance();
      return inner;
    }
    if (!IsIdentStart(c)) Fail(at, "unexpected character in expression");
    std::string ident = ParseIdent();
    if (ident == "true" || ident == "false") {
      return Expr{LiteralExpr{Value(ident == "true")}, at};
    }
    if (Peek() == '(') {
      const FunctionSpec *spec = FindFunction(ident);
      if (spec == nullptr) Fail(at, "unknown function '" + ident + "'");
      Advance();
      CallExpr call{ident, {}};
      SkipSpace();
      if (Peek() != ')') {
        for (;;) {
          call.args.push_back(ParseExpr());
          SkipSpace();
          if (Peek() == ',') {
            Advance();
            continue;
          }
          break;
        }
      }
      if (Peek() != ')') Fail(pos_, "expected ')' to close call");
      Advance();
      if (call.args.size() != spec->arity) {
        Fail(at, "function '" + ident + "' takes " + std::to_string(spec->arity) +
                     " argument(s)");
      }
      return Expr{std::move(call), at};
    }
    std::string path = ident;
    while (Peek() == '.' && IsIdentStart(Peek(1))) {
      Advance();
      path += "." + ParseIdent();
    }
    return Expr{PathExpr{std::move(path)}, at};
  }

  std::string ParseIdent() {
    const std::size_t start = i_;
    while (!AtEnd() && IsIdentChar(Peek())) Advance();
    return std::string(src_.substr(start, i_ - start));
  }

  Expr ParseInteger() {
    const SourcePos at = pos_;
    const std::size_t start = i_;
    if (Peek() == '-') Advance();
    while (!AtEnd() && IsDigit(Peek())) Advance();
    auto value = ParseInt(src_.substr(start, i_ - start));
    if (!value) Fail(at, "integer literal out of range");
    return Expr{LiteralExpr{Value(*value)}, at};
  }

  Expr ParseString() {
    const SourcePos at = pos_;
    Advance();  // opening quote
    std::string value;
    for (;;) {
      if (AtEnd()) Fail(at, "unterminated string literal");
      const char c = Peek();
      if (c == '"') {
        Advance();
        break;
      }
      if (c == '\\') {
        Advance();
        if (AtEnd()) Fail(at, "unterminated string literal");
        const char e = Peek();
        switch (e) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          default: Fail(pos_, "unknown escape in string literal");
        }
        Advance();
        continue;
      }
      const std::size_t start = i_;
      Advance();
      value.append(src_.substr(start, i_ - start));
    }
    return Expr{LiteralExpr{Value(std::move(value))}, at};
  }

  std::string_view src_;
  std::string_view name_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

void SerializeNodes(const std::vector<Node> &nodes, std::string &out);

std::string QuoteString(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

void SerializeExprTo(const Expr &expr, std::string &out) {
  std::visit(
      [&](const auto &node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LiteralExpr>) {
          if (const auto *s = std::get_if<std::string>(&node.value)) {
            out += QuoteString(*s);
          } else {
            out += ValueToText(node.value);
          }
        } else if constexpr (std::is_same_v<T, PathExpr>) {
          out += node.path;
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          out += node.function + "(";
          for (std::size_t k = 0; k < node.args.size(); ++k) {
            if (k > 0) out += ", ";
            SerializeExprTo(node.args[k], out);
          }
          out += ")";
        } else {
          for (std::size_t k = 0; k < 2; ++k) {
            const Expr &operand = node.operands[k];
            const bool wrap = std::holds_alternative<BinaryExpr>(operand.node);
            if (k == 1) {
              out += " ";
              out += BinaryOpSymbol(node.op);
              out += " ";
            }
            if (wrap) out += "(";
            SerializeExprTo(operand, out);
            if (wrap) out += ")";
          }
        }
      },
      expr.node);
}

void SerializeNodes(const std::vector<Node> &nodes, std::string &out) {
  for (const Node &node : nodes) {
    if (const auto *text = std::get_if<TextNode>(&node.value)) {
      for (char c : text->text) {
        if (c == '{' || c == '#') out.push_back(c);
        out.push_back(c);
      }
    } else if (const auto *interp = std::get_if<InterpNode>(&node.value)) {
      out += "{";
      SerializeExprTo(interp->expr, out);
      out += "}";
    } else {
      const auto &if_node = std::get<IfNode>(node.value);
      for (std::size_t b = 0; b < if_node.branches.size(); ++b) {
        out += b == 0 ? "#if(" : "#elif(";
        SerializeExprTo(if_node.branches[b].condition, out);
        out += ")";
        SerializeNodes(if_node.branches[b].body, out);
      }
      if (!if_node.else_body.empty()) {
        out += "#else";
        SerializeNodes(if_node.else_body, out);
      }
      out += "#end";
    }
  }
}

bool NodesEqual(const std::vector<Node> &a, const std::vector<Node> &b);

bool NodeEqual(const Node &a, const Node &b) {
  if (a.value.index() != b.value.index()) return false;
  if (const auto *ta = std::get_if<TextNode>(&a.value)) {
    return ta->text == std::get<TextNode>(b.value).text;
  }
  if (const auto *ia = std::get_if<InterpNode>(&a.value)) {
    return StructurallyEqual(ia->expr, std::get<InterpNode>(b.value).expr);
  }
  const auto &fa = std::get<IfNode>(a.value);
  const auto &fb = std::get<IfNode>(b.value);
  if (fa.branches.size() != fb.branches.size()) return false;
  for (std::size_t k = 0; k < fa.branches.size(); ++k) {
    if (!StructurallyEqual(fa.branches[k].condition, fb.branches[k].condition) ||
        !NodesEqual(fa.branches[k].body, fb.branches[k].body)) {
      return false;
    }
  }
  return NodesEqual(fa.else_body, fb.else_body);
}

bool NodesEqual(const std::vector<Node> &a, const std::vector<Node> &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!NodeEqual(a[k], b[k])) return false;
  }
  return true;
}

class Renderer {
 public:
  Renderer(const RenderContext &ctx, std::string_view name) : ctx_(ctx), name_(name) {}

  void RenderNodes(const std::vector<Node> &nodes, std::string &out) const {
    for (const Node &node : nodes) {
      if (const auto *text = std::get_if<TextNode>(&node.value)) {
        out += text->text;
      } else if (const auto *interp = std::get_if<InterpNode>(&node.value)) {
        out += ValueToText(Eval(interp->expr));
      } else {
        const auto &if_node = std::get<IfNode>(node.value);
        const std::vector<Node> *taken = &if_node.else_body;
        for (const IfBranch &branch : if_node.branches) {
          if (EvalBool(branch.condition, "condition")) {
            taken = &branch.body;
            break;
          }
        }
        RenderNodes(*taken, out);
      }
    }
  }

 private:
  [[noreturn]] void Fail(SourcePos at, const std::string &what) const {
    throw Error(ErrorKind::kRender, FormatPos(name_, at) + ": " + what);
  }

  bool EvalBool(const Expr &expr, std::string_view role) const {
    Value v = Eval(expr);
    if (const bool *b = std::get_if<bool>(&v)) return *b;
    Fail(expr.pos, "type mismatch: " + std::string(role) + " is not boolean");
  }

  Value Eval(const Expr &expr) const {
    return std::visit(
        [&](const auto &node) -> Value {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, LiteralExpr>) {
            return node.value;
          } else if constexpr (std::is_same_v<T, PathExpr>) {
            auto it = ctx_.bindings.find(node.path);
            if (it == ctx_.bindings.end()) {
              Fail(expr.pos, "unbound path '" + node.path + "'");
            }
            return it->second;
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            Value arg = Eval(node.args[0]);
            const int64_t *n = std::get_if<int64_t>(&arg);
            if (n == nullptr) {
              Fail(expr.pos, "type mismatch: " + node.function + "() expects an integer");
            }
            if (node.function == "ordinal") return Ordinal(*n);
            return std::to_string(*n);
          } else {
            return EvalBinary(node, expr.pos);
          }
        },
        expr.node);
  }

  Value EvalBinary(const BinaryExpr &bin, SourcePos at) const {
    if (bin.op == BinaryOp::kAnd) {
      return EvalBool(bin.operands[0], "operand of &&") &&
             EvalBool(bin.operands[1], "operand of &&");
    }
    if (bin.op == BinaryOp::kOr) {
      return EvalBool(bin.operands[0], "operand of ||") ||
             EvalBool(bin.operands[1], "operand of ||");
    }
    Value lhs = Eval(bin.operands[0]);
    Value rhs = Eval(bin.operands[1]);
    const std::string symbol(BinaryOpSymbol(bin.op));
    if (lhs.index() != rhs.index()) {
      Fail(at, "type mismatch in comparison '" + symbol + "'");
    }
    if (bin.op == BinaryOp::kEq) return lhs == rhs;
    if (bin.op == BinaryOp::kNe) return lhs != rhs;
    if (std::holds_alternative<bool>(lhs)) {
      Fail(at, "type mismatch: booleans are not ordered ('" + symbol + "')");
    }
    switch (bin.op) {
      case BinaryOp::kLt: return lhs < rhs;
      case BinaryOp::kLe: return lhs <= rhs;
      case BinaryOp::kGt: return lhs > rhs;
      case BinaryOp::kGe: return lhs >= rhs;
      default: break;
    }
    Fail(at, "unsupported operator");
  }

  const RenderContext &ctx_;
  std::string_view name_;
};

}  // namespace

std::string ValueToText(const Value &value) {
  if (const auto *s = std::get_if<std::string>(&value)) return *s;
  if (const auto *n = std::get_if<int64_t>(&value)) return std::to_string(*n);
  return std::get<bool>(value) ? "true" : "false";
}

std::string_view BinaryOpSymbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

TemplateProgram ParseTemplate(std::string_view source, std::string_view name,
                              int first_line) {
  if (!IsValidUtf8(source)) {
    throw Error(ErrorKind::kSyntax, std::string(name) + ": source is not valid UTF-8");
  }
  Parser parser(source, name, first_line);
  return TemplateProgram(parser.ParseProgram(), std::string(name));
}

std::string SerializeTemplate(const TemplateProgram &program) {
  std::string out;
  SerializeNodes(program.nodes(), out);
  return out;
}

std::string SerializeExpr(const Expr &expr) {
  std::string out;
  SerializeExprTo(expr, out);
  return out;
}

bool StructurallyEqual(const TemplateProgram &a, const TemplateProgram &b) {
  return NodesEqual(a.nodes(), b.nodes());
}

bool StructurallyEqual(const Expr &a, const Expr &b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto &na) {
        using T = std::decay_t<decltype(na)>;
        const T &nb = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, LiteralExpr>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, PathExpr>) {
          return na.path == nb.path;
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          if (na.function != nb.function || na.args.size() != nb.args.size()) {
            return false;
          }
          for (std::size_t k = 0; k < na.args.size(); ++k) {
            if (!StructurallyEqual(na.args[k], nb.args[k])) return false;
          }
          return true;
        } else {
          return na.op == nb.op && StructurallyEqual(na.operands[0], nb.operands[0]) &&
                 StructurallyEqual(na.operands[1], nb.operands[1]);
        }
      },
      a.node);
}

std::string Render(const TemplateProgram &program, const RenderContext &ctx) {
  std::string out;
  Renderer(ctx, program.source_name()).RenderNodes(program.nodes(), out);
  return out;
}

std::string Ordinal(int64_t n) {
  const int64_t magnitude = n < 0 ? -(n % 100) : n % 100;
  std::string_view suffix = "th";
  if (magnitude < 11 || magnitude > 13) {
    switch (magnitude % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + std::string(suffix);
}

void TemplateBank::Add(const std::string &key, TemplateProgram program) {
  entries_[key].push_back(std::move(program));
}

bool TemplateBank::Has(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

const std::vector<TemplateProgram> &TemplateBank::Lookup(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end() || it->second.empty()) {
    throw Error(ErrorKind::kLookup, "no templates for key '" + std::string(key) + "'");
  }
  return it->second;
}

TemplateBank ParseTemplateBank(std::string_view text, std::string_view source_name) {
  TemplateBank bank;
  std::string key;
  std::string block;
  int block_line = 0;
  std::map<std::string, int> section_line;
  auto flush = [&] {
    std::string_view body = Trim(block);
    if (!body.empty()) {
      // Trimming may drop leading lines; count them so positions stay true.
      int skipped = 0;
      for (char c : std::string_view(block).substr(0, block.find(body))) {
        if (c == '\n') ++skipped;
      }
      const std::string name = std::string(source_name) + "[" + key + "]";
      bank.Add(key, ParseTemplate(body, name, block_line + skipped));
    }
    block.clear();
    block_line = 0;
  };
  const std::vector<std::string> lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    std::string_view trimmed = Trim(lines[n]);
    if (trimmed.size() >= 2 && trimmed.front() == '[' && trimmed.back() == ']' &&
        trimmed.find('[', 1) == std::string_view::npos) {
      flush();
      key = std::string(Trim(trimmed.substr(1, trimmed.size() - 2)));
      if (key.empty()) {
        throw Error(ErrorKind::kParse, std::string(source_name) + ":" +
                                           std::to_string(line_no) + ": empty section key");
      }
      section_line.emplace(key, line_no);
      continue;
    }
    if (trimmed == "---") {
      flush();
      continue;
    }
    const bool comment = trimmed == "#" || StartsWith(trimmed, "# ");
    if (comment && Trim(block).empty()) continue;
    if (key.empty()) {
      if (trimmed.empty()) continue;
      throw Error(ErrorKind::kParse, std::string(source_name) + ":" +
                                         std::to_string(line_no) +
                                         ": template text before the first [key]");
    }
    if (block_line == 0) block_line = line_no;
    block += lines[n];
    block.push_back('\n');
  }
  flush();
  for (const auto &[name, line] : section_line) {
    if (!bank.Has(name)) {
      throw Error(ErrorKind::kValidation, std::string(source_name) + ":" +
                                              std::to_string(line) + ": section [" +
                                              name + "] has no templates");
    }
  }
  return bank;
}

const TemplateProgram &SelectTemplate(const TemplateBank &bank,
                                      std::string_view key, RandomStream &rng) {
  const auto &choices = bank.Lookup(key);
  return choices[static_cast<std::size_t>(rng.UniformBelow(choices.size()))];
}

}  // namespace newsbot
