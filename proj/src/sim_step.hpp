#pragma once

// One unfolding step of the simulation functional shared by type subtyping
// and the syntactic peer preorder: both languages have the same clauses.

#include <utility>
#include <vector>

#include "hosc/term.hpp"

namespace hosc::detail {

using NodePair = std::pair<const Node*, const Node*>;

struct Obligations {
  bool ok = true;
  std::vector<NodePair> conts;  // pairs that must be in the relation itself
  std::vector<NodePair> msgs;   // higher-order message pairs, already oriented
};

// Clauses for (a, b) where both arguments are already unfolded.
inline Obligations simulation_step(const Node* a, const Node* b, const BaseOrder& base) {
  Obligations out;
  auto fail = [&] {
    out.ok = false;
    return out;
  };
  if (a->kind != b->kind) return fail();
  switch (a->kind) {
    case Kind::End:
      break;
    case Kind::InBase:
      if (!base.leq(a->name, b->name)) return fail();
      out.conts.emplace_back(a->next, b->next);
      break;
    case Kind::OutBase:
      if (!base.leq(b->name, a->name)) return fail();
      out.conts.emplace_back(a->next, b->next);
      break;
    case Kind::InMsg:
      out.msgs.emplace_back(a->msg, b->msg);
      out.conts.emplace_back(a->next, b->next);
      break;
    case Kind::OutMsg:
      out.msgs.emplace_back(b->msg, a->msg);
      out.conts.emplace_back(a->next, b->next);
      break;
    case Kind::Branch:
    case Kind::Choice: {
      // Branch: every left label offered on the right. Choice: every right
      // label available on the left.
      bool branch = a->kind == Kind::Branch;
      const auto& small = branch ? a->entries : b->entries;
      const auto& large = branch ? b->entries : a->entries;
      std::size_t j = 0;
      for (const auto& [l, c] : small) {
        while (j < large.size() && large[j].first < l) ++j;
        if (j == large.size() || large[j].first != l) return fail();
        if (branch)
          out.conts.emplace_back(c, large[j].second);
        else
          out.conts.emplace_back(large[j].second, c);
      }
      break;
    }
    case Kind::Rec:
    case Kind::Var:
      return fail();
  }
  return out;
}

}  // namespace hosc::detail
