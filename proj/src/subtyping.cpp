#include "hosc/subtyping.hpp"

#include <set>

#include "sim_step.hpp"

namespace hosc {

using detail::NodePair;

namespace {

// Greatest-fixed-point search: a pair already under consideration is assumed
// related. Since the functional has no disjunction, the first local failure
// refutes the query and success leaves a simulation in `seen`.
bool explore(const TypeTerm& s, const TypeTerm& t, const BaseOrder& base, std::set<NodePair>& seen) {
  require_closed_guarded(s, "left type");
  require_closed_guarded(t, "right type");
  std::vector<NodePair> work{{s.node(), t.node()}};
  seen.insert(work.back());
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    auto obl = detail::simulation_step(detail::unfold(a), detail::unfold(b), base);
    if (!obl.ok) return false;
    for (const auto* group : {&obl.conts, &obl.msgs})
      for (const auto& p : *group)
        if (seen.insert(p).second) work.push_back(p);
  }
  return true;
}

}  // namespace

bool subtype(const TypeTerm& s, const TypeTerm& t, const BaseOrder& base) {
  std::set<NodePair> seen;
  return explore(s, t, base, seen);
}

std::optional<std::vector<TypePair>> subtype_witness(const TypeTerm& s, const TypeTerm& t,
                                                     const BaseOrder& base) {
  std::set<NodePair> seen;
  if (!explore(s, t, base, seen)) return std::nullopt;
  std::vector<TypePair> out;
  out.reserve(seen.size());
  for (const auto& [a, b] : seen) out.emplace_back(TypeTerm(a), TypeTerm(b));
  return out;
}

bool type_equiv(const TypeTerm& s, const TypeTerm& t, const BaseOrder& base) {
  return subtype(s, t, base) && subtype(t, s, base);
}

bool check_type_simulation(const std::vector<TypePair>& r, const BaseOrder& base) {
  std::set<NodePair> rel;
  for (const auto& [a, b] : r) {
    require_closed_guarded(a, "relation member");
    require_closed_guarded(b, "relation member");
    rel.emplace(a.node(), b.node());
  }
  for (const auto& [a, b] : rel) {
    auto obl = detail::simulation_step(detail::unfold(a), detail::unfold(b), base);
    if (!obl.ok) return false;
    for (const auto* group : {&obl.conts, &obl.msgs})
      for (const auto& p : *group)
        if (!rel.count(p)) return false;
  }
  return true;
}

}  // namespace hosc
