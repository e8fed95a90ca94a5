#include "hosc/preorders.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hosc/duality.hpp"
#include "hosc/encoding.hpp"
#include "hosc/subtyping.hpp"
#include "sim_step.hpp"

namespace hosc {

using detail::NodePair;

namespace {

// Coinductive search shared by both preorders. `message_ok` returns false to
// refute a message pair outright, or true after optionally queueing it.
template <class MessageRule>
bool explore(const ContractTerm& a, const ContractTerm& b, const BaseOrder& base,
             MessageRule&& message_ok) {
  require_closed_guarded(a, "left contract");
  require_closed_guarded(b, "right contract");
  std::set<NodePair> seen{{a.node(), b.node()}};
  std::vector<NodePair> work{{a.node(), b.node()}};
  auto push = [&](const NodePair& p) {
    if (seen.insert(p).second) work.push_back(p);
  };
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    auto obl = detail::simulation_step(detail::unfold(x), detail::unfold(y), base);
    if (!obl.ok) return false;
    for (const auto& m : obl.msgs)
      if (!message_ok(m, push)) return false;
    for (const auto& p : obl.conts) push(p);
  }
  return true;
}

}  // namespace

bool syn_peer_leq(const ContractTerm& a, const ContractTerm& b, const BOracle& oracle,
                  const BaseOrder& base) {
  return explore(a, b, base, [&](const NodePair& m, auto&&) {
    return oracle(ContractTerm(m.first), ContractTerm(m.second));
  });
}

bool peer_leq(const ContractTerm& a, const ContractTerm& b, const BaseOrder& base) {
  return explore(a, b, base, [](const NodePair& m, auto&& push) {
    push(m);
    return true;
  });
}

bool peer_equiv(const ContractTerm& a, const ContractTerm& b, const BaseOrder& base) {
  return peer_leq(a, b, base) && peer_leq(b, a, base);
}

bool peer_leq_via_subtyping(const ContractTerm& a, const ContractTerm& b, const BaseOrder& base) {
  return subtype(decode(a), decode(b), base);
}

namespace {

constexpr std::size_t kCandidateCap = 4000;
constexpr std::size_t kMessageCap = 16;

struct Alphabet {
  std::vector<std::string> bases;
  std::vector<ContractTerm> messages;
};

Alphabet alphabet_of(const ContractTerm& a, const ContractTerm& b, const BaseOrder& base) {
  std::set<std::string> bases(base.types().begin(), base.types().end());
  std::set<ContractTerm, TermLess<ContractLang>> msgs;
  for (const auto& root : {a, b})
    for (const auto& state : reachable(root)) {
      for (const auto& sub : subterms(state)) {
        if (sub.kind() == Kind::InBase || sub.kind() == Kind::OutBase) bases.insert(sub.name());
        if (sub.kind() != Kind::InMsg && sub.kind() != Kind::OutMsg) continue;
        for (const auto& m : subterms(sub.message()))
          if (m.is_closed() && m.is_guarded()) {
            msgs.insert(m);
            msgs.insert(stdual(m));
          }
      }
    }
  Alphabet out;
  out.bases.assign(bases.begin(), bases.end());
  out.messages.assign(msgs.begin(), msgs.end());
  std::stable_sort(out.messages.begin(), out.messages.end(),
                   [](const ContractTerm& x, const ContractTerm& y) { return x.size() < y.size(); });
  if (out.messages.size() > kMessageCap) out.messages.resize(kMessageCap);
  return out;
}

// Peers that follow the behaviour of a state of the left contract for up to
// `depth` prefixes and then either stop or continue as its dual.
class PeerEnumerator {
 public:
  explicit PeerEnumerator(Alphabet alpha) : alpha_(std::move(alpha)) {}

  const std::vector<ContractTerm>& peers(const ContractTerm& s, int depth) {
    auto key = std::make_pair(s.node(), depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<ContractTerm, TermLess<ContractLang>> out;
    out.insert(ContractTerm::unit());
    out.insert(dual(s));
    if (depth > 0) expand(unfold(s), depth, out);
    std::vector<ContractTerm> v(out.begin(), out.end());
    std::stable_sort(v.begin(), v.end(),
                     [](const ContractTerm& x, const ContractTerm& y) { return x.size() < y.size(); });
    if (v.size() > kCandidateCap) v.resize(kCandidateCap);
    return memo_.emplace(key, std::move(v)).first->second;
  }

 private:
  using Set = std::set<ContractTerm, TermLess<ContractLang>>;

  void expand(const ContractTerm& h, int depth, Set& out) {
    auto add = [&](auto make, const ContractTerm& cont_state) {
      for (const auto& r : peers(cont_state, depth - 1)) {
        if (out.size() >= kCandidateCap) return;
        out.insert(make(r));
      }
    };
    switch (h.kind()) {
      case Kind::InBase:
      case Kind::OutBase: {
        bool in = h.kind() == Kind::InBase;
        for (const auto& t : alpha_.bases)
          add([&](const ContractTerm& r) {
                return in ? ContractTerm::out_base(t, r) : ContractTerm::in_base(t, r);
              },
              h.continuation());
        break;
      }
      case Kind::InMsg:
      case Kind::OutMsg: {
        bool in = h.kind() == Kind::InMsg;
        for (const auto& m : alpha_.messages)
          add([&](const ContractTerm& r) {
                return in ? ContractTerm::out_msg(m, r) : ContractTerm::in_msg(m, r);
              },
              h.continuation());
        break;
      }
      case Kind::Branch: {
        // Select one offered label, or several at once.
        for (std::size_t i = 0; i < h.entry_count(); ++i) {
          const std::string& l = h.label(i);
          add([&](const ContractTerm& r) { return ContractTerm::int_sum({{l, r}}); }, h.entry(i));
        }
        if (h.entry_count() > 1) vary_sum(h, depth, false, out);
        break;
      }
      case Kind::Choice:
        vary_sum(h, depth, true, out);
        break;
      default:
        break;
    }
  }

  // A full sum answering every branch of h; one branch at a time ranges over
  // the candidates while the others continue as duals.
  void vary_sum(const ContractTerm& h, int depth, bool external, Set& out) {
    ContractTerm::Entries base_entries;
    for (std::size_t i = 0; i < h.entry_count(); ++i)
      base_entries.emplace_back(h.label(i), dual(h.entry(i)));
    for (std::size_t i = 0; i < h.entry_count(); ++i)
      for (const auto& r : peers(h.entry(i), depth - 1)) {
        if (out.size() >= kCandidateCap) return;
        auto entries = base_entries;
        entries[i].second = r;
        out.insert(external ? ContractTerm::ext_sum(entries) : ContractTerm::int_sum(entries));
      }
  }

  Alphabet alpha_;
  std::map<std::pair<const detail::Node*, int>, std::vector<ContractTerm>> memo_;
};

}  // namespace

std::optional<ContractTerm> falsify_set_leq(const ContractTerm& a, const ContractTerm& b,
                                            const BOracle& oracle, const BaseOrder& base,
                                            int depth) {
  require_closed_guarded(a, "left contract");
  require_closed_guarded(b, "right contract");
  if (depth < 1) throw std::invalid_argument("falsifier depth must be at least 1");
  PeerEnumerator gen(alphabet_of(a, b, base));
  for (const auto& rho : gen.peers(a, depth))
    if (compliant(rho, a, oracle, base) && !compliant(rho, b, oracle, base)) return rho;
  return std::nullopt;
}

}  // namespace hosc
