#include "hosc/term.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace hosc {
namespace detail {

bool Node::has_free(std::string_view x) const {
  return std::binary_search(free_vars.begin(), free_vars.end(), x,
                            [](const auto& a, const auto& b) { return std::string_view(a) < std::string_view(b); });
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t content_hash(const Node& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL;
  h = mix(h, std::hash<std::string>{}(n.name));
  h = mix(h, std::hash<const void*>{}(n.msg));
  h = mix(h, std::hash<const void*>{}(n.next));
  for (const auto& [l, c] : n.entries) {
    h = mix(h, std::hash<std::string>{}(l));
    h = mix(h, std::hash<const void*>{}(c));
  }
  return h;
}

bool same_content(const Node& a, const Node& b) {
  return a.kind == b.kind && a.name == b.name && a.msg == b.msg && a.next == b.next &&
         a.entries == b.entries;
}

struct NodeHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};
struct NodeEq {
  bool operator()(const Node* a, const Node* b) const { return same_content(*a, *b); }
};

class NodeTable {
 public:
  const Node* intern(std::unique_ptr<Node> candidate) {
    candidate->hash = content_hash(*candidate);
    std::lock_guard lock(mutex_);
    auto it = set_.find(candidate.get());
    if (it != set_.end()) return *it;
    finish(*candidate);
    const Node* out = candidate.release();
    set_.insert(out);
    return out;
  }

 private:
  static void merge_into(std::vector<std::string>& dst, const std::vector<std::string>& src) {
    std::vector<std::string> out;
    out.reserve(dst.size() + src.size());
    std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
    dst = std::move(out);
  }

  static void erase_name(std::vector<std::string>& v, const std::string& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
  }

  // Derived attributes, computed once per interned node.
  static void finish(Node& n) {
    switch (n.kind) {
      case Kind::End:
        break;
      case Kind::Var:
        n.free_vars = {n.name};
        n.unguarded = {n.name};
        break;
      case Kind::InBase:
      case Kind::OutBase:
        n.free_vars = n.next->free_vars;
        n.guarded = n.next->guarded;
        n.m_closed = n.next->m_closed;
        n.size = 1 + n.next->size;
        break;
      case Kind::InMsg:
      case Kind::OutMsg:
        n.free_vars = n.next->free_vars;
        merge_into(n.free_vars, n.msg->free_vars);
        n.guarded = n.next->guarded && n.msg->guarded;
        n.m_closed = n.next->m_closed && n.msg->free_vars.empty();
        n.size = 1 + n.next->size + n.msg->size;
        break;
      case Kind::Branch:
      case Kind::Choice:
        for (const auto& [l, c] : n.entries) {
          merge_into(n.free_vars, c->free_vars);
          n.guarded = n.guarded && c->guarded;
          n.m_closed = n.m_closed && c->m_closed;
          n.size += c->size;
        }
        break;
      case Kind::Rec: {
        const Node* b = n.next;
        n.free_vars = b->free_vars;
        erase_name(n.free_vars, n.name);
        n.unguarded = b->unguarded;
        bool binder_unguarded = std::binary_search(n.unguarded.begin(), n.unguarded.end(), n.name);
        erase_name(n.unguarded, n.name);
        n.guarded = b->guarded && !binder_unguarded;
        n.m_closed = b->m_closed;
        n.size = 1 + b->size;
        break;
      }
    }
  }

  std::mutex mutex_;
  std::unordered_set<const Node*, NodeHash, NodeEq> set_;
};

NodeTable& table() {
  static NodeTable* t = new NodeTable();
  return *t;
}

}  // namespace

const Node* make_end() {
  static const Node* end = [] {
    auto n = std::make_unique<Node>();
    n->kind = Kind::End;
    return table().intern(std::move(n));
  }();
  return end;
}

const Node* make_base(Kind k, std::string t, const Node* cont) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->name = std::move(t);
  n->next = cont;
  return table().intern(std::move(n));
}

const Node* make_msg(Kind k, const Node* msg, const Node* cont) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->msg = msg;
  n->next = cont;
  return table().intern(std::move(n));
}

const Node* make_sum(Kind k, std::vector<Entry> entries) {
  if (entries.empty()) throw std::invalid_argument("sum with no entries");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("duplicate label '" + entries[i].first + "'");
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->entries = std::move(entries);
  return table().intern(std::move(n));
}

const Node* make_rec(std::string x, const Node* body) {
  auto n = std::make_unique<Node>();
  n->kind = Kind::Rec;
  n->name = std::move(x);
  n->next = body;
  return table().intern(std::move(n));
}

const Node* make_var(std::string x) {
  auto n = std::make_unique<Node>();
  n->kind = Kind::Var;
  n->name = std::move(x);
  return table().intern(std::move(n));
}

namespace {

const Node* rebuild(const Node* n, const Node* msg, const Node* next, std::vector<Entry> entries) {
  switch (n->kind) {
    case Kind::InBase:
    case Kind::OutBase:
      return next == n->next ? n : make_base(n->kind, n->name, next);
    case Kind::InMsg:
    case Kind::OutMsg:
      return (msg == n->msg && next == n->next) ? n : make_msg(n->kind, msg, next);
    case Kind::Branch:
    case Kind::Choice:
      return entries == n->entries ? n : make_sum(n->kind, std::move(entries));
    case Kind::Rec:
      return next == n->next ? n : make_rec(n->name, next);
    default:
      return n;
  }
}

template <class F>
const Node* map_children(const Node* n, F&& f) {
  const Node* msg = n->msg ? f(n->msg) : nullptr;
  const Node* next = n->next ? f(n->next) : nullptr;
  std::vector<Entry> entries;
  entries.reserve(n->entries.size());
  for (const auto& [l, c] : n->entries) entries.emplace_back(l, f(c));
  return rebuild(n, msg, next, std::move(entries));
}

}  // namespace

const Node* substitute(const Node* n, std::string_view x, const Node* r) {
  if (!n->has_free(x)) return n;
  switch (n->kind) {
    case Kind::Var:
      return r;
    case Kind::Rec:
      // x is free in n, so the binder differs from x.
      return make_rec(n->name, substitute(n->next, x, r));
    default:
      return map_children(n, [&](const Node* c) { return substitute(c, x, r); });
  }
}

const Node* apply(const Node* n, const std::map<std::string, const Node*>& s) {
  bool touches = false;
  for (const auto& v : n->free_vars)
    if (s.count(v)) {
      touches = true;
      break;
    }
  if (!touches) return n;
  switch (n->kind) {
    case Kind::Var:
      return s.at(n->name);
    case Kind::Rec: {
      if (s.count(n->name) == 0) return make_rec(n->name, detail::apply(n->next, s));
      auto restricted = s;
      restricted.erase(n->name);
      return make_rec(n->name, detail::apply(n->next, restricted));
    }
    default:
      return map_children(n, [&](const Node* c) { return detail::apply(c, s); });
  }
}

const Node* unfold_once(const Node* n) {
  if (n->kind != Kind::Rec) return n;
  if (const Node* cached = n->unfolded_once.load(std::memory_order_acquire)) return cached;
  const Node* out = substitute(n->next, n->name, n);
  n->unfolded_once.store(out, std::memory_order_release);
  return out;
}

const Node* unfold(const Node* n) {
  if (n->kind != Kind::Rec) return n;
  if (const Node* cached = n->unfolded.load(std::memory_order_acquire)) return cached;
  const Node* cur = n;
  while (cur->kind == Kind::Rec) cur = unfold_once(cur);
  n->unfolded.store(cur, std::memory_order_release);
  return cur;
}

}  // namespace detail

int compare_nodes(const detail::Node* a, const detail::Node* b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (a->msg || b->msg) {
    if (int c = compare_nodes(a->msg, b->msg)) return c;
  }
  if (a->next || b->next) {
    if (int c = compare_nodes(a->next, b->next)) return c;
  }
  std::size_t n = std::min(a->entries.size(), b->entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = a->entries[i].first.compare(b->entries[i].first)) return c < 0 ? -1 : 1;
    if (int c = compare_nodes(a->entries[i].second, b->entries[i].second)) return c;
  }
  if (a->entries.size() != b->entries.size()) return a->entries.size() < b->entries.size() ? -1 : 1;
  return 0;
}

BaseOrder BaseOrder::standard() {
  BaseOrder b;
  b.add_type("int");
  b.add_type("real");
  b.add_type("bool");
  b.add_leq("int", "real");
  return b;
}

void BaseOrder::add_type(const std::string& t) {
  if (types_.insert(t).second) leq_.emplace(t, t);
}

void BaseOrder::add_leq(const std::string& lo, const std::string& hi) {
  add_type(lo);
  add_type(hi);
  leq_.emplace(lo, hi);
  close();
}

bool BaseOrder::leq(std::string_view lo, std::string_view hi) const {
  return leq_.count({std::string(lo), std::string(hi)}) != 0;
}

void BaseOrder::close() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : std::set(leq_))
      for (const auto& c : types_)
        if (leq_.count({b, c}) && leq_.emplace(a, c).second) changed = true;
  }
}

BaseOrder BaseOrder::parse(std::string_view text) {
  BaseOrder out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> toks;
    for (std::string w; words >> w;) toks.push_back(w);
    if (toks.empty()) continue;
    if (toks.size() == 1) {
      out.add_type(toks[0]);
    } else if (toks.size() == 3 && toks[1] == "<=") {
      out.add_leq(toks[0], toks[2]);
    } else {
      throw std::invalid_argument("base order line " + std::to_string(lineno) +
                                  ": expected `a <= b`");
    }
  }
  return out;
}

BaseOrder BaseOrder::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open base order file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace hosc
