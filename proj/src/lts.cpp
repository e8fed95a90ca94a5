#include "hosc/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "hosc/syntax.hpp"

namespace hosc {

std::string to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::InLabel:
    case ActionKind::InBase:
      return "?" + a.name;
    case ActionKind::OutLabel:
    case ActionKind::OutBase:
      return "!" + a.name;
    case ActionKind::InCtr:
      return "?(" + print(a.msg) + ")";
    case ActionKind::OutCtr:
      return "!(" + print(a.msg) + ")";
    case ActionKind::Tau:
      return "tau";
    case ActionKind::Ok:
      return "ok";
  }
  return "?";
}

std::vector<Transition> step(const ContractTerm& c) {
  require_closed_guarded(c, "contract");
  std::vector<Transition> out;
  switch (c.kind()) {
    case Kind::End:
      out.push_back({Action::ok(), std::nullopt});
      break;
    case Kind::InBase:
      out.push_back({{ActionKind::InBase, c.name(), {}}, c.continuation()});
      break;
    case Kind::OutBase:
      out.push_back({{ActionKind::OutBase, c.name(), {}}, c.continuation()});
      break;
    case Kind::InMsg:
      out.push_back({{ActionKind::InCtr, {}, c.message()}, c.continuation()});
      break;
    case Kind::OutMsg:
      out.push_back({{ActionKind::OutCtr, {}, c.message()}, c.continuation()});
      break;
    case Kind::Branch:
      for (std::size_t i = 0; i < c.entry_count(); ++i)
        out.push_back({{ActionKind::InLabel, c.label(i), {}}, c.entry(i)});
      break;
    case Kind::Choice:
      if (c.entry_count() == 1) {
        out.push_back({{ActionKind::OutLabel, c.label(0), {}}, c.entry(0)});
      } else {
        for (std::size_t i = 0; i < c.entry_count(); ++i)
          out.push_back({Action::tau(), ContractTerm::int_sum({{c.label(i), c.entry(i)}})});
      }
      break;
    case Kind::Rec:
      out.push_back({Action::tau(), unfold_once(c)});
      break;
    case Kind::Var:
      break;
  }
  return out;
}

std::vector<ContractTerm> reachable(const ContractTerm& c, std::size_t cap) {
  require_closed_guarded(c, "contract");
  std::vector<ContractTerm> out{c};
  std::unordered_map<ContractTerm, bool> seen{{c, true}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& tr : step(out[i])) {
      if (!tr.target || !seen.emplace(*tr.target, true).second) continue;
      if (out.size() >= cap)
        throw StateLimitExceeded("more than " + std::to_string(cap) + " reachable states");
      out.push_back(*tr.target);
    }
  }
  return out;
}

bool can_ok(const ContractTerm& c) {
  require_closed_guarded(c, "contract");
  return c.kind() == Kind::End;
}

bool is_stable(const ContractTerm& c) {
  require_closed_guarded(c, "contract");
  return c.kind() != Kind::Rec && !(c.kind() == Kind::Choice && c.entry_count() > 1);
}

namespace {

using ActionKey = std::tuple<int, std::string, const detail::Node*>;

ActionKey key_of(const Action& a) {
  const detail::Node* m =
      (a.kind == ActionKind::InCtr || a.kind == ActionKind::OutCtr) ? a.msg.node() : nullptr;
  return {static_cast<int>(a.kind), a.name, m};
}

}  // namespace

bool bisimilar(const ContractTerm& a, const ContractTerm& b, std::size_t cap) {
  require_closed_guarded(a, "left contract");
  require_closed_guarded(b, "right contract");
  if (a == b) return true;

  // Combined state space; index 0 is the post-ok sink.
  std::vector<ContractTerm> states;
  std::unordered_map<ContractTerm, std::size_t> index;
  for (const auto& root : {a, b})
    for (const auto& s : reachable(root, cap))
      if (index.emplace(s, states.size() + 1).second) states.push_back(s);
  const std::size_t n = states.size() + 1;
  if (n > cap) throw StateLimitExceeded("bisimulation state space too large");

  std::vector<std::vector<std::pair<ActionKey, std::size_t>>> edges(n);
  for (std::size_t i = 1; i < n; ++i)
    for (const auto& tr : step(states[i - 1]))
      edges[i].emplace_back(key_of(tr.action), tr.target ? index.at(*tr.target) : 0);

  // Signature-based partition refinement.
  std::vector<std::size_t> block(n, 0);
  std::size_t blocks = 1;
  for (;;) {
    std::map<std::pair<std::size_t, std::vector<std::pair<ActionKey, std::size_t>>>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<ActionKey, std::size_t>> sig;
      sig.reserve(edges[i].size());
      for (const auto& [k, t] : edges[i]) sig.emplace_back(k, block[t]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      auto [it, fresh] = ids.emplace(std::make_pair(block[i], std::move(sig)), ids.size());
      next[i] = it->second;
    }
    block = std::move(next);
    if (ids.size() == blocks) break;
    blocks = ids.size();
  }
  return block[index.at(a)] == block[index.at(b)];
}

std::string export_lts(const ContractTerm& c, LtsFormat format) {
  auto states = reachable(c);
  std::vector<std::pair<std::string, ContractTerm>> named;
  named.reserve(states.size());
  for (const auto& s : states) named.emplace_back(print(s), s);
  std::sort(named.begin(), named.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::unordered_map<ContractTerm, std::size_t> id;
  for (std::size_t i = 0; i < named.size(); ++i) id.emplace(named[i].second, i);

  struct Edge {
    std::size_t from, to;
    std::string label;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < named.size(); ++i)
    for (const auto& tr : step(named[i].second))
      if (tr.target) edges.push_back({i, id.at(*tr.target), to_string(tr.action)});

  if (format == LtsFormat::Json) {
    nlohmann::json j;
    j["initial"] = id.at(c);
    j["states"] = nlohmann::json::array();
    for (std::size_t i = 0; i < named.size(); ++i)
      j["states"].push_back({{"id", i}, {"term", named[i].first}, {"ok", can_ok(named[i].second)}});
    j["transitions"] = nlohmann::json::array();
    for (const auto& e : edges)
      j["transitions"].push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    return j.dump(2);
  }

  auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
  std::string out = "digraph lts {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < named.size(); ++i) {
    out += "  s" + std::to_string(i) + " [label=" + quote(named[i].first);
    if (can_ok(named[i].second)) out += ", ok=true, shape=doublecircle";
    if (i == id.at(c)) out += ", initial=true, style=bold";
    out += "];\n";
  }
  for (const auto& e : edges)
    out += "  s" + std::to_string(e.from) + " -> s" + std::to_string(e.to) + " [label=" +
           quote(e.label) + "];\n";
  out += "}\n";
  return out;
}

}  // namespace hosc
