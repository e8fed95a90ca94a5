#include <doctest.h>

#include "hosc/generator.hpp"
#include "hosc/encoding.hpp"
#include "hosc/syntax.hpp"

using namespace hosc;

TEST_CASE("type grammar") {
  auto t = parse_type("rec X.&{a:?int.X, b:+{c:!(end).end}}");
  CHECK(t.kind() == Kind::Rec);
  CHECK(t.name() == "X");
  CHECK(t.body().kind() == Kind::Branch);
  CHECK(t.body().find("b")->kind() == Kind::Choice);
  CHECK(parse_type("?X.end") == parse_type("?(X).end"));
  CHECK(parse_type("?end.end") == parse_type("?(end).end"));
  CHECK(parse_type("( ?int.end )") == parse_type("?int.end"));
}

TEST_CASE("contract grammar") {
  auto c = parse_contract("rec x.&[?a:!int.x, ?b:(+)[!c:!(1).1]]");
  CHECK(c.kind() == Kind::Rec);
  CHECK(c.body().kind() == Kind::Branch);
  // A non-base prefix is a singleton sum.
  CHECK(parse_contract("?l.1") == parse_contract("&[?l:1]"));
  CHECK(parse_contract("!l.1") == parse_contract("(+)[!l:1]"));
  CHECK(parse_contract("!int.1").kind() == Kind::OutBase);
}

TEST_CASE("printer") {
  CHECK(print(parse_type("rec X.?X.X")) == "rec X.?X.X");
  CHECK(print(parse_type("?(?int.end).end")) == "?(?int.end).end");
  CHECK(print(parse_type("+{b:end, a:end}")) == "+{a:end, b:end}");
  CHECK(print(parse_contract("?l.1")) == "&[?l:1]");
  CHECK(print(parse_contract("rec x.?(x).1")) == "rec x.?(x).1");
}

TEST_CASE("parse errors carry a position") {
  auto pos_of = [](auto f) -> std::size_t {
    try {
      f();
    } catch (const ParseError& e) {
      return e.position();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(pos_of([] { parse_type("?int."); }) == 5);
  CHECK(pos_of([] { parse_type("?foo.end"); }) == 1);
  CHECK(pos_of([] { parse_type("rec x.end"); }) == 4);
  CHECK(pos_of([] { parse_contract("rec X.1"); }) == 4);
  CHECK(pos_of([] { parse_type("&{a:end, a:end}"); }) == 9);
  CHECK(pos_of([] { parse_type("end end"); }) == 4);
  CHECK_THROWS_AS(parse_type(""), ParseError);
  CHECK_THROWS_AS(parse_contract("end"), ParseError);
  CHECK_THROWS_AS(parse_type("1"), ParseError);
}

TEST_CASE("custom base types") {
  auto b = BaseOrder::parse("nat <= int\n");
  CHECK(parse_type("?nat.end", b).kind() == Kind::InBase);
  CHECK_THROWS_AS(parse_type("?nat.end"), ParseError);
}

TEST_CASE("print then parse is the identity on generated terms") {
  GenConfig cfg;
  cfg.seed = 21;
  for (const auto& t : generate_types(cfg, 500)) {
    CHECK(parse_type(print(t)) == t);
    auto c = encode(t);
    CHECK(parse_contract(print(c)) == c);
  }
}

TEST_CASE("json round trip") {
  GenConfig cfg;
  cfg.seed = 22;
  for (const auto& t : generate_types(cfg, 200)) {
    CHECK(type_from_json(to_json(t)) == t);
    auto c = encode(t);
    CHECK(contract_from_json(to_json(c)) == c);
    CHECK(contract_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
  }
}

TEST_CASE("malformed json") {
  using nlohmann::json;
  CHECK_THROWS_AS(type_from_json(json::array()), ParseError);
  CHECK_THROWS_AS(type_from_json(json{{"k", "bogus"}}), ParseError);
  CHECK_THROWS_AS(type_from_json(json{{"k", "in"}, {"base", "int"}}), ParseError);
  CHECK_THROWS_AS(type_from_json(json{{"k", "branch"}, {"entries", json::object()}}), ParseError);
  CHECK_THROWS_AS(type_from_json(json{{"k", "var"}, {"var", 3}}), ParseError);
}
