#include "hosc/syntax.hpp"

#include <cctype>
#include <set>

namespace hosc {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
}
bool upper_start(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

template <class Lang>
class Parser {
 public:
  using T = Term<Lang>;
  static constexpr bool kType = std::is_same_v<Lang, TypeLang>;

  Parser(std::string_view text, const BaseOrder& base) : s_(text), base_(base) {}

  T parse_all() {
    T t = term();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!at(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  bool at_ident() {
    skip();
    return pos_ < s_.size() && ident_start(s_[pos_]);
  }

  std::string ident() {
    if (!at_ident()) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string variable() {
    std::size_t start = (skip(), pos_);
    std::string x = ident();
    if (x == "rec" || x == "end") {
      pos_ = start;
      fail("keyword '" + x + "' used as a variable");
    }
    if (kType != upper_start(x)) {
      pos_ = start;
      fail(kType ? "type variables start with an uppercase letter"
                 : "contract variables start with a lowercase letter");
    }
    return x;
  }

  T term() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept("?")) return prefix(true);
    if (accept("!")) return prefix(false);
    if constexpr (kType) {
      if (accept("&")) return T::branch(entries("{", "}", ""));
      if (accept("+")) return T::choice(entries("{", "}", ""));
    } else {
      if (accept("1")) return T::unit();
      if (accept("&")) return T::ext_sum(entries("[", "]", "?"));
      if (accept("(+)")) return T::int_sum(entries("[", "]", "!"));
    }
    if (accept("(")) {
      T t = term();
      expect(")");
      return t;
    }
    if (!at_ident()) fail("expected a term");
    std::size_t start = pos_;
    std::string w = ident();
    if constexpr (kType) {
      if (w == "end") return T::end();
    }
    if (w == "rec") {
      std::string x = variable();
      expect(".");
      return T::rec(std::move(x), term());
    }
    pos_ = start;
    return T::var(variable());
  }

  T prefix(bool input) {
    skip();
    std::size_t start = pos_;
    if (accept("(")) {
      T msg = term();
      expect(")");
      return finish_msg(input, msg);
    }
    std::string w = ident();
    if (base_.contains(w)) {
      expect(".");
      T cont = term();
      return input ? T::in_base(w, cont) : T::out_base(w, cont);
    }
    if constexpr (kType) {
      if (w == "end") return finish_msg(input, T::end());
      if (upper_start(w)) return finish_msg(input, T::var(w));
      pos_ = start;
      fail("unknown base type '" + w + "'");
    } else {
      if (upper_start(w)) {
        pos_ = start;
        fail("unknown base type '" + w + "'");
      }
      expect(".");
      T cont = term();
      typename T::Entries one{{w, cont}};
      return input ? T::ext_sum(one) : T::int_sum(one);
    }
  }

  T finish_msg(bool input, const T& msg) {
    expect(".");
    T cont = term();
    return input ? T::in_msg(msg, cont) : T::out_msg(msg, cont);
  }

  typename T::Entries entries(std::string_view open, std::string_view close,
                              std::string_view marker) {
    expect(open);
    typename T::Entries out;
    std::set<std::string> seen;
    do {
      if (!marker.empty()) expect(marker);
      std::size_t start = (skip(), pos_);
      std::string l = ident();
      if (!seen.insert(l).second) {
        pos_ = start;
        fail("duplicate label '" + l + "'");
      }
      expect(":");
      out.emplace_back(std::move(l), term());
    } while (accept(","));
    expect(close);
    return out;
  }

  std::string_view s_;
  const BaseOrder& base_;
  std::size_t pos_ = 0;
};

template <class Lang>
void print_into(std::string& out, const Term<Lang>& t) {
  constexpr bool kType = std::is_same_v<Lang, TypeLang>;
  switch (t.kind()) {
    case Kind::End:
      out += kType ? "end" : "1";
      return;
    case Kind::InBase:
    case Kind::OutBase:
      out += t.kind() == Kind::InBase ? '?' : '!';
      out += t.name();
      out += '.';
      print_into(out, t.continuation());
      return;
    case Kind::InMsg:
    case Kind::OutMsg: {
      out += t.kind() == Kind::InMsg ? '?' : '!';
      Term<Lang> m = t.message();
      if (kType && m.kind() == Kind::Var) {
        out += m.name();
      } else {
        out += '(';
        print_into(out, m);
        out += ')';
      }
      out += '.';
      print_into(out, t.continuation());
      return;
    }
    case Kind::Branch:
    case Kind::Choice: {
      bool ext = t.kind() == Kind::Branch;
      if (kType) {
        out += ext ? "&{" : "+{";
      } else {
        out += ext ? "&[" : "(+)[";
      }
      for (std::size_t i = 0; i < t.entry_count(); ++i) {
        if (i) out += ", ";
        if (!kType) out += ext ? '?' : '!';
        out += t.label(i);
        out += ':';
        print_into(out, t.entry(i));
      }
      out += kType ? '}' : ']';
      return;
    }
    case Kind::Rec:
      out += "rec ";
      out += t.name();
      out += '.';
      print_into(out, t.body());
      return;
    case Kind::Var:
      out += t.name();
      return;
  }
}

template <class Lang>
nlohmann::json json_of(const Term<Lang>& t) {
  using nlohmann::json;
  switch (t.kind()) {
    case Kind::End:
      return {{"k", "end"}};
    case Kind::InBase:
    case Kind::OutBase:
      return {{"k", t.kind() == Kind::InBase ? "in" : "out"},
              {"base", t.name()},
              {"cont", json_of(t.continuation())}};
    case Kind::InMsg:
    case Kind::OutMsg:
      return {{"k", t.kind() == Kind::InMsg ? "in" : "out"},
              {"msg", json_of(t.message())},
              {"cont", json_of(t.continuation())}};
    case Kind::Branch:
    case Kind::Choice: {
      json entries = json::object();
      for (std::size_t i = 0; i < t.entry_count(); ++i) entries[t.label(i)] = json_of(t.entry(i));
      return {{"k", t.kind() == Kind::Branch ? "branch" : "choice"}, {"entries", entries}};
    }
    case Kind::Rec:
      return {{"k", "rec"}, {"var", t.name()}, {"body", json_of(t.body())}};
    case Kind::Var:
      return {{"k", "var"}, {"var", t.name()}};
  }
  return {};
}

template <class Lang>
Term<Lang> from_json(const nlohmann::json& j) {
  using T = Term<Lang>;
  auto bad = [](const std::string& m) -> ParseError { return ParseError(0, "json: " + m); };
  if (!j.is_object() || !j.contains("k") || !j["k"].is_string()) throw bad("node without \"k\"");
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!j.contains(name)) throw bad(std::string("missing \"") + name + "\"");
    return j[name];
  };
  auto str = [&](const char* name) {
    const auto& v = field(name);
    if (!v.is_string()) throw bad(std::string("\"") + name + "\" must be a string");
    return v.template get<std::string>();
  };
  std::string k = j["k"].template get<std::string>();
  if (k == "end") return T::end();
  if (k == "in" || k == "out") {
    bool in = k == "in";
    T cont = from_json<Lang>(field("cont"));
    if (j.contains("base")) {
      std::string b = str("base");
      return in ? T::in_base(b, cont) : T::out_base(b, cont);
    }
    T msg = from_json<Lang>(field("msg"));
    return in ? T::in_msg(msg, cont) : T::out_msg(msg, cont);
  }
  if (k == "branch" || k == "choice") {
    const auto& e = field("entries");
    if (!e.is_object()) throw bad("\"entries\" must be an object");
    typename T::Entries entries;
    for (const auto& [l, v] : e.items()) entries.emplace_back(l, from_json<Lang>(v));
    try {
      return k == "branch" ? T::branch(entries) : T::choice(entries);
    } catch (const std::invalid_argument& ex) {
      throw bad(ex.what());
    }
  }
  if (k == "rec") return T::rec(str("var"), from_json<Lang>(field("body")));
  if (k == "var") return T::var(str("var"));
  throw bad("unknown node kind \"" + k + "\"");
}

}  // namespace

TypeTerm parse_type(std::string_view text, const BaseOrder& base) {
  return Parser<TypeLang>(text, base).parse_all();
}

ContractTerm parse_contract(std::string_view text, const BaseOrder& base) {
  return Parser<ContractLang>(text, base).parse_all();
}

std::string print(const TypeTerm& t) {
  std::string out;
  print_into(out, t);
  return out;
}

std::string print(const ContractTerm& c) {
  std::string out;
  print_into(out, c);
  return out;
}

nlohmann::json to_json(const TypeTerm& t) { return json_of(t); }
nlohmann::json to_json(const ContractTerm& c) { return json_of(c); }
TypeTerm type_from_json(const nlohmann::json& j) { return from_json<TypeLang>(j); }
ContractTerm contract_from_json(const nlohmann::json& j) { return from_json<ContractLang>(j); }

}  // namespace hosc
