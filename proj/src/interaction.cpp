#include "hosc/interaction.hpp"

#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hosc/preorders.hpp"
#include "hosc/syntax.hpp"

namespace hosc {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const detail::Node*, const detail::Node*>& p) const {
    return std::hash<const void*>{}(p.first) * 31 + std::hash<const void*>{}(p.second);
  }
};

}  // namespace

struct BOracle::Cache {
  std::mutex mutex;
  std::unordered_map<std::pair<const detail::Node*, const detail::Node*>, bool, PairHash> memo;
};

BOracle::BOracle(std::string name, Decide decide, OracleProps props)
    : name_(std::move(name)),
      decide_(std::move(decide)),
      props_(props),
      cache_(std::make_shared<Cache>()) {}

bool BOracle::operator()(const ContractTerm& a, const ContractTerm& b) const {
  std::pair key{a.node(), b.node()};
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->memo.find(key); it != cache_->memo.end()) return it->second;
  }
  bool v = decide_(a, b);
  std::lock_guard lock(cache_->mutex);
  cache_->memo.emplace(key, v);
  return v;
}

BOracle empty_oracle() {
  return BOracle("empty", [](const ContractTerm&, const ContractTerm&) { return false; },
                 {.reflexive = false, .transitive = true, .symmetric = true});
}

BOracle identity_oracle() {
  return BOracle("identity", [](const ContractTerm& a, const ContractTerm& b) { return a == b; },
                 {.reflexive = true, .transitive = true, .symmetric = true});
}

BOracle table_oracle(std::vector<ContractPair> pairs) {
  auto rel = std::make_shared<std::set<std::pair<const detail::Node*, const detail::Node*>>>();
  for (const auto& [a, b] : pairs) rel->emplace(a.node(), b.node());
  OracleProps props;
  props.transitive = true;
  props.symmetric = true;
  for (const auto& [a, b] : *rel) {
    if (!rel->count({b, a})) props.symmetric = false;
    for (const auto& [c, d] : *rel)
      if (b == c && !rel->count({a, d})) props.transitive = false;
  }
  return BOracle(
      "table",
      [rel](const ContractTerm& a, const ContractTerm& b) {
        return rel->count({a.node(), b.node()}) != 0;
      },
      props);
}

BOracle parse_table_oracle(std::string_view text, const BaseOrder& base) {
  std::vector<ContractPair> pairs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto sep = line.find("<=");
    if (sep == std::string::npos)
      throw ParseError(0, "table line " + std::to_string(lineno) + ": expected `lhs <= rhs`");
    try {
      pairs.emplace_back(parse_contract(line.substr(0, sep), base),
                         parse_contract(line.substr(sep + 2), base));
    } catch (const ParseError& e) {
      throw ParseError(e.position(), "table line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return table_oracle(std::move(pairs));
}

BOracle load_table_oracle(const std::string& path, const BaseOrder& base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table_oracle(buf.str(), base);
}

BOracle peer_oracle(const BaseOrder& base) {
  return BOracle(
      "peer", [base](const ContractTerm& a, const ContractTerm& b) { return peer_leq(a, b, base); },
      {.reflexive = true, .transitive = true, .symmetric = false});
}

BOracle union_oracle(const std::vector<BOracle>& parts) {
  OracleProps props{.reflexive = false, .transitive = parts.size() <= 1, .symmetric = true};
  std::string name;
  for (const auto& p : parts) {
    props.reflexive = props.reflexive || p.props().reflexive;
    props.symmetric = props.symmetric && p.props().symmetric;
    if (parts.size() == 1) props.transitive = p.props().transitive;
    name += (name.empty() ? "" : "+") + p.name();
  }
  if (parts.empty()) props.transitive = true;
  return BOracle(
      name.empty() ? "union" : name,
      [parts](const ContractTerm& a, const ContractTerm& b) {
        for (const auto& p : parts)
          if (p(a, b)) return true;
        return false;
      },
      props);
}

BOracle oracle_from_spec(std::string_view spec, const BaseOrder& base) {
  if (spec == "empty") return empty_oracle();
  if (spec == "identity") return identity_oracle();
  if (spec == "peer") return peer_oracle(base);
  if (spec.substr(0, 6) == "table:") return load_table_oracle(std::string(spec.substr(6)), base);
  throw std::invalid_argument("unknown oracle '" + std::string(spec) +
                              "' (expected empty, identity, peer or table:<path>)");
}

std::vector<std::string> builtin_oracle_names() { return {"empty", "identity", "peer", "table"}; }

std::optional<std::string> refute_oracle_props(const BOracle& b,
                                               const std::vector<ContractTerm>& samples) {
  const auto& p = b.props();
  if (p.reflexive)
    for (const auto& s : samples)
      if (!b(s, s)) return "not reflexive: " + print(s);
  if (p.symmetric)
    for (const auto& x : samples)
      for (const auto& y : samples)
        if (b(x, y) && !b(y, x)) return "not symmetric: " + print(x) + " / " + print(y);
  if (p.transitive)
    for (const auto& x : samples)
      for (const auto& y : samples) {
        if (!b(x, y)) continue;
        for (const auto& z : samples)
          if (b(y, z) && !b(x, z))
            return "not transitive: " + print(x) + " / " + print(y) + " / " + print(z);
      }
  return std::nullopt;
}

bool interacts(const Action& a1, const Action& a2, const BOracle& b, const BaseOrder& base) {
  using K = ActionKind;
  switch (a1.kind) {
    case K::OutLabel:
      return a2.kind == K::InLabel && a1.name == a2.name;
    case K::InLabel:
      return a2.kind == K::OutLabel && a1.name == a2.name;
    case K::OutBase:
      return a2.kind == K::InBase && base.leq(a1.name, a2.name);
    case K::InBase:
      return a2.kind == K::OutBase && base.leq(a2.name, a1.name);
    case K::OutCtr:
      return a2.kind == K::InCtr && b(a1.msg, a2.msg);
    case K::InCtr:
      return a2.kind == K::OutCtr && b(a2.msg, a1.msg);
    default:
      return false;
  }
}

std::vector<Config> config_step(const Config& c, const BOracle& b, const BaseOrder& base) {
  auto left = step(c.left);
  auto right = step(c.right);
  std::vector<Config> out;
  for (const auto& t : left)
    if (t.action.kind == ActionKind::Tau) out.push_back({*t.target, c.right});
  for (const auto& t : right)
    if (t.action.kind == ActionKind::Tau) out.push_back({c.left, *t.target});
  for (const auto& l : left) {
    if (!l.action.visible()) continue;
    for (const auto& r : right)
      if (r.action.visible() && interacts(l.action, r.action, b, base))
        out.push_back({*l.target, *r.target});
  }
  return out;
}

bool compliant(const ContractTerm& rho, const ContractTerm& sigma, const BOracle& b,
               const BaseOrder& base, std::size_t cap) {
  require_closed_guarded(rho, "left contract");
  require_closed_guarded(sigma, "right contract");
  using Key = std::pair<const detail::Node*, const detail::Node*>;
  std::unordered_set<Key, PairHash> seen{{rho.node(), sigma.node()}};
  std::vector<Config> work{{rho, sigma}};
  while (!work.empty()) {
    Config c = work.back();
    work.pop_back();
    auto next = config_step(c, b, base);
    if (next.empty()) {
      if (c.left.kind() != Kind::End || c.right.kind() != Kind::End) return false;
      continue;
    }
    for (const auto& n : next) {
      if (!seen.emplace(n.left.node(), n.right.node()).second) continue;
      if (seen.size() > cap)
        throw StateLimitExceeded("more than " + std::to_string(cap) + " configurations");
      work.push_back(n);
    }
  }
  return true;
}

}  // namespace hosc
