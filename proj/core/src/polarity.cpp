// Copyright 2026 The Semfrag Authors
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

#include "semfrag/polarity.hpp"

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {
namespace {

void mark_node(ParseTree& tree, Mark ctx);

// Marks an NP and returns the context for the determiner's scope argument
// (the clause VP for subjects, the embedding verb for ORC bodies).
Mark mark_np(ParseTree& np, Mark ctx) {
  np.mark = ctx;
  ParseTree& det = np.children.at(0);
  ParseTree& restr = np.children.at(1);
  if (!det.signature.has_value()) {
    throw ConfigError("determiner '" + det.surface +
                      "' has no polarity signature");
  }
  const DetSignature sig = *det.signature;
  bool flat = sig.restrictor == Mark::kFlat && sig.scope == Mark::kFlat;
  det.mark = flat ? Mark::kFlat : ctx;
  mark_node(restr, compose(ctx, sig.restrictor));
  return compose(ctx, sig.scope);
}

void mark_node(ParseTree& tree, Mark ctx) {
  tree.mark = ctx;
  switch (tree.kind) {
    case NodeKind::kS: {
      Mark scope = mark_np(tree.children.at(0), ctx);
      mark_node(tree.children.at(1), scope);
      return;
    }
    case NodeKind::kNp:
      // NPs reached through mark_np never land here; a bare NP (object
      // position) is marked by its parent VPbar/OrcBody case.
      mark_np(tree, ctx);
      return;
    case NodeKind::kOrcBody: {
      Mark verb_ctx = mark_np(tree.children.at(0), ctx);
      mark_node(tree.children.at(1), verb_ctx);
      return;
    }
    case NodeKind::kVpbar: {
      mark_node(tree.children.at(0), ctx);  // the verb
      if (tree.children.size() > 1) {
        mark_np(tree.children.at(1), ctx);  // object NP
      }
      return;
    }
    case NodeKind::kVp: {
      if (tree.children.size() == 2 &&
          tree.children[0].category == LexCategory::kNeg &&
          tree.children[0].is_lex) {
        mark_node(tree.children[0], ctx);
        mark_node(tree.children[1], compose(ctx, Mark::kDown));
        return;
      }
      for (ParseTree& child : tree.children) mark_node(child, ctx);
      return;
    }
    case NodeKind::kPred: {
      if (tree.children.size() == 2) {  // [not AdjPred]
        mark_node(tree.children[0], ctx);
        mark_node(tree.children[1], compose(ctx, Mark::kDown));
        return;
      }
      mark_node(tree.children.at(0), ctx);
      return;
    }
    case NodeKind::kPp: {
      ParseTree& p = tree.children.at(0);
      ParseTree& body = tree.children.at(1);
      mark_node(p, ctx);
      Mark body_ctx =
          p.lemma == "without" ? compose(ctx, Mark::kDown) : ctx;
      mark_node(body, body_ctx);
      return;
    }
    default:
      for (ParseTree& child : tree.children) mark_node(child, ctx);
      return;
  }
}

}  // namespace

void polarize(ParseTree& tree) { mark_node(tree, Mark::kUp); }

ParseTree polarized_copy(const ParseTree& tree) {
  ParseTree copy = tree;
  polarize(copy);
  return copy;
}

namespace {

void collect_polarized(const ParseTree& tree, std::vector<PolarizedToken>* out) {
  if (tree.is_leaf()) {
    for (const std::string& word : split_on(tree.surface, ' ')) {
      if (!word.empty()) out->push_back({word, tree.mark});
    }
    return;
  }
  for (const ParseTree& child : tree.children) collect_polarized(child, out);
}

}  // namespace

std::vector<PolarizedToken> polarized_tokens(const ParseTree& tree) {
  std::vector<PolarizedToken> out;
  collect_polarized(tree, &out);
  return out;
}

std::string render_polarized(const ParseTree& tree, bool ascii) {
  std::string out;
  for (const PolarizedToken& token : polarized_tokens(tree)) {
    if (!out.empty()) out += ' ';
    out += token.surface;
    out += mark_symbol(token.mark, ascii);
  }
  return out;
}

}  // namespace semfrag
