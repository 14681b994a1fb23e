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

#ifndef NEWSBOT_TESTS_AST_GENERATOR_H_
#define NEWSBOT_TESTS_AST_GENERATOR_H_

// Seeded generator of random template ASTs in the shape the parser
// produces: no empty text nodes and no two adjacent text nodes.

#include <string>
#include <utility>
#include <vector>

#include "newsbot/random.h"
#include "newsbot/template_dsl.h"

namespace newsbot::testing {

class AstGenerator {
 public:
  explicit AstGenerator(uint64_t seed) : rng_(seed) {}

  TemplateProgram Program() { return TemplateProgram(Nodes(0), "random"); }

  Expr Expression(int depth) {
    Expr e;
    const uint64_t pick = depth >= 3 ? rng_.UniformBelow(3) : rng_.UniformBelow(5);
    switch (pick) {
      case 0:
        e.node = LiteralExpr{Literal()};
        break;
      case 1:
      case 2:
        e.node = PathExpr{Path()};
        break;
      case 3: {
        CallExpr call;
        call.function = rng_.Bernoulli(0.5) ? "ordinal" : "minute";
        call.args.push_back(Expression(depth + 1));
        e.node = std::move(call);
        break;
      }
      default: {
        static constexpr BinaryOp kOps[] = {BinaryOp::kEq, BinaryOp::kNe, BinaryOp::kLt,
                                            BinaryOp::kLe, BinaryOp::kGt, BinaryOp::kGe,
                                            BinaryOp::kAnd, BinaryOp::kOr};
        BinaryExpr bin;
        bin.op = kOps[rng_.UniformBelow(8)];
        bin.operands.push_back(Expression(depth + 1));
        bin.operands.push_back(Expression(depth + 1));
        e.node = std::move(bin);
        break;
      }
    }
    return e;
  }

 private:
  std::vector<Node> Nodes(int depth) {
    std::vector<Node> nodes;
    const uint64_t count = rng_.UniformBelow(depth == 0 ? 6 : 4);
    bool last_text = false;
    for (uint64_t i = 0; i < count; ++i) {
      const uint64_t pick = depth >= 3 ? rng_.UniformBelow(2) : rng_.UniformBelow(3);
      Node node;
      if (pick == 0 && !last_text) {
        node.value = TextNode{Text()};
        last_text = true;
      } else if (pick == 2) {
        IfNode branch_node;
        const uint64_t branches = 1 + rng_.UniformBelow(3);
        for (uint64_t b = 0; b < branches; ++b) {
          branch_node.branches.push_back({Expression(1), Nodes(depth + 1)});
        }
        if (rng_.Bernoulli(0.5)) branch_node.else_body = Nodes(depth + 1);
        node.value = std::move(branch_node);
        last_text = false;
      } else {
        node.value = InterpNode{Expression(0)};
        last_text = false;
      }
      nodes.push_back(std::move(node));
    }
    return nodes;
  }

  std::string Text() {
    static const char *kPieces[] = {"a",  "Z",  " ",  "分钟", "{",  "}",  "#",  "(", ")",
                                    "\"", "\\", "\n", "é",    "。", "if", "end", "-", "1"};
    std::string text;
    const uint64_t n = 1 + rng_.UniformBelow(6);
    for (uint64_t i = 0; i < n; ++i) text += kPieces[rng_.UniformBelow(18)];
    return text;
  }

  Value Literal() {
    switch (rng_.UniformBelow(3)) {
      case 0: {
        static const char *kPieces[] = {"x", " ", "\"", "\\", "\n", "\t", "分", "{", "#", ")"};
        std::string s;
        const uint64_t n = rng_.UniformBelow(5);
        for (uint64_t i = 0; i < n; ++i) s += kPieces[rng_.UniformBelow(10)];
        return s;
      }
      case 1:
        return static_cast<int64_t>(rng_.UniformBelow(1000000));
      default:
        return rng_.Bernoulli(0.5);
    }
  }

  std::string Path() {
    static const char *kIdents[] = {"minute", "team", "player", "h", "score_a",
                                    "x1",     "_tmp", "attr",   "winner"};
    std::string path = kIdents[rng_.UniformBelow(9)];
    const uint64_t extra = rng_.UniformBelow(3);
    for (uint64_t i = 0; i < extra; ++i) path += std::string(".") + kIdents[rng_.UniformBelow(9)];
    return path;
  }

  RandomStream rng_;
};

}  // namespace newsbot::testing

#endif  // NEWSBOT_TESTS_AST_GENERATOR_H_
