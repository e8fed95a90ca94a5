#include "hosc/generator.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "hosc/encoding.hpp"
#include "hosc/preorders.hpp"
#include "hosc/subtyping.hpp"

namespace hosc {

namespace {

class Gen {
 public:
  explicit Gen(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.labels.empty()) throw std::invalid_argument("generator needs at least one label");
    if (cfg.base_types.empty()) throw std::invalid_argument("generator needs a base type");
  }

  TypeTerm type() {
    fresh_ = 0;
    return term(cfg_.max_depth, {});
  }

  TypeTerm mutate(const TypeTerm& t) {
    const std::size_t target = pick(t.size());
    std::size_t counter = 0;
    return mutate_at(t, target, counter);
  }

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  struct Var {
    std::string name;
    bool guarded;
  };
  using Scope = std::vector<Var>;

  static Scope guard_all(Scope s) {
    for (auto& v : s) v.guarded = true;
    return s;
  }

  static std::string var_name(int i) {
    static const char* names[] = {"X", "Y", "Z", "W", "V", "U"};
    return i < 6 ? names[i] : "X" + std::to_string(i);
  }

  std::vector<std::string> guarded(const Scope& s) const {
    std::vector<std::string> out;
    for (const auto& v : s)
      if (v.guarded) out.push_back(v.name);
    return out;
  }

  TypeTerm term(int depth, const Scope& scope) {
    auto vars = guarded(scope);
    if (depth <= 0) {
      if (!vars.empty() && unit() < 0.4) return TypeTerm::var(vars[pick(vars.size())]);
      return TypeTerm::end();
    }
    if (unit() < cfg_.p_rec) {
      std::string x = var_name(fresh_++);
      Scope inner = scope;
      inner.push_back({x, false});
      return TypeTerm::rec(x, term(depth - 1, inner));
    }
    double r = unit();
    if (r < 0.1) return TypeTerm::end();
    if (r < 0.25 && !vars.empty()) return TypeTerm::var(vars[pick(vars.size())]);
    Scope under = guard_all(scope);
    if (r < 0.7) {
      bool in = unit() < 0.5;
      if (unit() < cfg_.p_higher_order) {
        TypeTerm msg = term(depth - 1, cfg_.closed_messages ? Scope{} : under);
        TypeTerm cont = term(depth - 1, under);
        return in ? TypeTerm::in_msg(msg, cont) : TypeTerm::out_msg(msg, cont);
      }
      const std::string& t = cfg_.base_types[pick(cfg_.base_types.size())];
      TypeTerm cont = term(depth - 1, under);
      return in ? TypeTerm::in_base(t, cont) : TypeTerm::out_base(t, cont);
    }
    TypeTerm::Entries entries;
    for (const auto& l : cfg_.labels)
      if (unit() < 0.5) entries.emplace_back(l, term(depth - 1, under));
    if (entries.empty()) {
      const auto& l = cfg_.labels[pick(cfg_.labels.size())];
      entries.emplace_back(l, term(depth - 1, under));
    }
    return unit() < 0.5 ? TypeTerm::branch(entries) : TypeTerm::choice(entries);
  }

  // Applies one step that moves a term up the subtyping order at the
  // `target`-th node in pre-order, counting only positions reached through
  // continuations, input messages and rec bodies whose binder stays out of
  // messages.
  TypeTerm mutate_at(const TypeTerm& t, std::size_t target, std::size_t& counter) {
    if (counter++ == target) return widen(t);
    switch (t.kind()) {
      case Kind::InBase:
        return TypeTerm::in_base(t.name(), mutate_at(t.continuation(), target, counter));
      case Kind::OutBase:
        return TypeTerm::out_base(t.name(), mutate_at(t.continuation(), target, counter));
      case Kind::InMsg: {
        TypeTerm m = mutate_at(t.message(), target, counter);
        return TypeTerm::in_msg(m, mutate_at(t.continuation(), target, counter));
      }
      case Kind::OutMsg:
        return TypeTerm::out_msg(t.message(), mutate_at(t.continuation(), target, counter));
      case Kind::Branch:
      case Kind::Choice: {
        TypeTerm::Entries entries;
        for (std::size_t i = 0; i < t.entry_count(); ++i)
          entries.emplace_back(t.label(i), mutate_at(t.entry(i), target, counter));
        return t.kind() == Kind::Branch ? TypeTerm::branch(entries) : TypeTerm::choice(entries);
      }
      case Kind::Rec:
        // Widening under a binder that occurs in a message would also change
        // the message, possibly in a contravariant position.
        if (binder_in_message(t)) return t;
        return TypeTerm::rec(t.name(), mutate_at(t.body(), target, counter));
      default:
        return t;
    }
  }

  static bool binder_in_message(const TypeTerm& rec) {
    for (const auto& s : subterms(rec.body())) {
      bool msg = s.kind() == Kind::InMsg || s.kind() == Kind::OutMsg;
      if (msg && s.message().node()->has_free(rec.name())) return true;
    }
    return false;
  }

  TypeTerm widen(const TypeTerm& t) {
    switch (t.kind()) {
      case Kind::InBase:
        return TypeTerm::in_base(bigger(t.name()), t.continuation());
      case Kind::OutBase:
        return TypeTerm::out_base(smaller(t.name()), t.continuation());
      case Kind::Branch: {
        auto entries = t.entries();
        for (const auto& l : cfg_.labels)
          if (!t.find(l)) {
            entries.emplace_back(l, TypeTerm::end());
            break;
          }
        return TypeTerm::branch(entries);
      }
      case Kind::Choice: {
        if (t.entry_count() < 2) return t;
        auto entries = t.entries();
        entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(pick(entries.size())));
        return TypeTerm::choice(entries);
      }
      case Kind::Rec:
        return unfold_once(t);
      default:
        return t;
    }
  }

  std::string bigger(const std::string& t) const { return t == "int" ? "real" : t; }
  std::string smaller(const std::string& t) const { return t == "real" ? "int" : t; }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  int fresh_ = 0;
};

}  // namespace

std::vector<TypeTerm> generate_types(const GenConfig& cfg, std::size_t n) {
  Gen g(cfg);
  std::vector<TypeTerm> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(g.type());
  return out;
}

std::vector<ContractTerm> generate_contracts(const GenConfig& cfg, std::size_t n) {
  std::vector<ContractTerm> out;
  out.reserve(n);
  for (const auto& t : generate_types(cfg, n)) out.push_back(encode(t));
  return out;
}

std::vector<std::pair<TypeTerm, TypeTerm>> generate_type_pairs(const GenConfig& cfg,
                                                               std::size_t n) {
  Gen g(cfg);
  std::vector<std::pair<TypeTerm, TypeTerm>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TypeTerm s = g.type();
    switch (i % 3) {
      case 0:
        out.emplace_back(s, g.type());
        break;
      case 1:
        out.emplace_back(s, g.mutate(s));
        break;
      default:
        out.emplace_back(g.mutate(s), s);
        break;
    }
  }
  return out;
}

AgreementReport fullabs_check(const GenConfig& cfg, std::size_t n_pairs, unsigned jobs) {
  auto pairs = generate_type_pairs(cfg, n_pairs);
  struct Verdicts {
    bool sub, peer, decoded;
  };
  std::vector<Verdicts> verdicts(pairs.size());
  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t i = from; i < pairs.size(); i += step) {
      const auto& [s, t] = pairs[i];
      ContractTerm cs = encode(s), ct = encode(t);
      verdicts[i] = {subtype(s, t, BaseOrder::standard()), peer_leq(cs, ct),
                     peer_leq_via_subtyping(cs, ct)};
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    for (auto& th : pool) th.join();
  }
  AgreementReport rep;
  rep.n_pairs = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& v = verdicts[i];
    if (v.sub == v.peer && v.peer == v.decoded) {
      ++rep.n_agree;
      if (v.sub) ++rep.n_positive;
    } else {
      rep.disagreements.push_back({pairs[i].first, pairs[i].second, v.sub, v.peer, v.decoded});
    }
  }
  return rep;
}

}  // namespace hosc
