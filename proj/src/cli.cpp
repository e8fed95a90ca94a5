#include "hosc/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "hosc/duality.hpp"
#include "hosc/encoding.hpp"
#include "hosc/generator.hpp"
#include "hosc/lts.hpp"
#include "hosc/preorders.hpp"
#include "hosc/repro.hpp"
#include "hosc/subtyping.hpp"
#include "hosc/syntax.hpp"

namespace hosc {

namespace {

using json = nlohmann::json;
using AnyTerm = std::variant<TypeTerm, ContractTerm>;

// Raised for malformed user input; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A term in either language: contract syntax is tried first, the two
// grammars never accept the same text.
AnyTerm parse_any(const std::string& text, const BaseOrder& base) {
  try {
    return parse_contract(text, base);
  } catch (const ParseError& ce) {
    try {
      return parse_type(text, base);
    } catch (const ParseError& te) {
      throw te.position() > ce.position() ? te : ce;
    }
  }
}

std::string print_any(const AnyTerm& t) {
  return std::visit([](const auto& x) { return print(x); }, t);
}

json json_any(const AnyTerm& t) {
  return std::visit([](const auto& x) { return to_json(x); }, t);
}

struct Globals {
  std::string base_path;
  bool json = false;
  BaseOrder base = BaseOrder::standard();
};

class Runner {
 public:
  Runner(std::ostream& out, Globals& g) : out_(out), g_(g) {}

  // Prints the verdict and returns the matching exit status.
  int verdict(bool v, json extra = json::object()) {
    if (g_.json) {
      extra["verdict"] = v;
      out_ << extra.dump() << "\n";
    } else {
      out_ << (v ? "true" : "false") << "\n";
    }
    return v ? 0 : 1;
  }

  int term(const AnyTerm& t) {
    if (g_.json)
      out_ << json{{"term", print_any(t)}, {"ast", json_any(t)}}.dump() << "\n";
    else
      out_ << print_any(t) << "\n";
    return 0;
  }

  TypeTerm type(const std::string& s) { return parse_type(s, g_.base); }
  ContractTerm contract(const std::string& s) { return parse_contract(s, g_.base); }
  AnyTerm any(const std::string& s) { return parse_any(s, g_.base); }
  BOracle oracle(const std::string& spec) { return oracle_from_spec(spec, g_.base); }

  std::ostream& out() { return out_; }
  Globals& globals() { return g_; }

 private:
  std::ostream& out_;
  Globals& g_;
};

std::string read_text_or_file(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw UsageError("cannot open " + arg.substr(1));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int cmd_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Session types, session contracts, and their preorders and dualities", "hosc"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--base", g.base_path, "Base-type order file (lines `a <= b`)");
  app.add_flag("--json", g.json, "Machine-readable output");

  Runner run(out, g);
  std::function<int()> action;
  std::string a1, a2, b_spec = "peer", partner, dual_name, lang = "contract";
  int depth = 3;
  std::size_t n_terms = 10, n_pairs = 500;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool dot = false, contracts = false, m_closed = false, witness = false, via_subtyping = false;
  double p_rec = 0.3, p_ho = 0.3;

  auto one = [&](const char* name, const char* help, const char* what) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option(what, a1)->required();
    return sc;
  };
  auto two = [&](const char* name, const char* help, const char* w1, const char* w2) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option(w1, a1)->required();
    sc->add_option(w2, a2)->required();
    return sc;
  };
  auto with_b = [&](CLI::App* sc) {
    sc->add_option("--b", b_spec, "Oracle: empty | identity | peer | table:<path>")
        ->capture_default_str();
  };

  one("parse", "Parse a type or contract and print its canonical form", "term")
      ->callback([&] {
        action = [&] {
          AnyTerm t = run.any(a1);
          if (!g.json) return run.term(t);
          json j{{"term", print_any(t)}, {"ast", json_any(t)}};
          std::visit(
              [&](const auto& x) {
                j["language"] = std::is_same_v<std::decay_t<decltype(x)>, TypeTerm> ? "type"
                                                                                    : "contract";
                j["closed"] = x.is_closed();
                j["guarded"] = x.is_guarded();
              },
              t);
          if (auto* c = std::get_if<ContractTerm>(&t)) j["m_closed"] = c->is_m_closed();
          out << j.dump() << "\n";
          return 0;
        };
      });

  auto* print_cmd = one("print", "Print a JSON AST (inline or @file) in concrete syntax", "ast");
  print_cmd->add_option("--lang", lang, "type | contract")
      ->check(CLI::IsMember({"type", "contract"}))
      ->capture_default_str();
  print_cmd->callback([&] {
    action = [&] {
      json j = json::parse(read_text_or_file(a1));
      if (lang == "type") return run.term(type_from_json(j));
      return run.term(contract_from_json(j));
    };
  });

  one("unfold", "Unfold top-level recursion", "term")->callback([&] {
    action = [&] {
      return run.term(std::visit([](const auto& x) -> AnyTerm { return unfold(x); }, run.any(a1)));
    };
  });

  auto* sub = two("subtype", "Decide S <= T on session types", "S", "T");
  sub->add_flag("--witness", witness, "Print the type simulation found");
  sub->callback([&] {
    action = [&] {
      TypeTerm s = run.type(a1), t = run.type(a2);
      if (!witness) return run.verdict(subtype(s, t, g.base));
      auto w = subtype_witness(s, t, g.base);
      json rel = json::array();
      if (w)
        for (const auto& [x, y] : *w) rel.push_back({print(x), print(y)});
      if (!g.json && w)
        for (const auto& p : rel) out << p[0].get<std::string>() << " <= " << p[1].get<std::string>() << "\n";
      return run.verdict(w.has_value(), {{"simulation", rel}});
    };
  });

  two("equiv", "Decide subtyping equivalence of session types", "S", "T")->callback([&] {
    action = [&] { return run.verdict(type_equiv(run.type(a1), run.type(a2), g.base)); };
  });

  one("encode", "Translate a session type into a contract", "type")->callback([&] {
    action = [&] { return run.term(encode(run.type(a1))); };
  });
  one("decode", "Translate a contract into a session type", "contract")->callback([&] {
    action = [&] { return run.term(decode(run.contract(a1))); };
  });

  auto* lts = one("lts", "Reachable transition graph of a contract", "contract");
  lts->add_flag("--dot", dot, "Graphviz output");
  lts->callback([&] {
    action = [&] {
      ContractTerm c = run.contract(a1);
      if (dot) {
        out << export_lts(c, LtsFormat::Dot);
      } else if (g.json) {
        out << export_lts(c, LtsFormat::Json) << "\n";
      } else {
        for (const auto& s : reachable(c)) {
          for (const auto& tr : step(s))
            out << print(s) << " --" << to_string(tr.action) << "--> "
                << (tr.target ? print(*tr.target) : std::string("(done)")) << "\n";
        }
      }
      return 0;
    };
  });

  two("bisim", "Decide strong bisimilarity of two contracts", "c1", "c2")->callback([&] {
    action = [&] { return run.verdict(bisimilar(run.contract(a1), run.contract(a2))); };
  });

  auto* comply = app.add_subcommand("comply", "Decide B-peer compliance of rho with sigma");
  comply->add_option("rho", a1)->required();
  comply->add_option("sigma", a2, "Partner contract (or use --partner)");
  comply->add_option("--partner", partner, "Use d(rho) as the partner: stdual | dual | cplmt");
  with_b(comply);
  comply->callback([&] {
    action = [&] {
      ContractTerm rho = run.contract(a1);
      if (a2.empty() == partner.empty())
        throw UsageError("comply needs exactly one of a partner term or --partner");
      ContractTerm sigma =
          partner.empty() ? run.contract(a2) : apply_dual(dual_op_from_string(partner), rho);
      return run.verdict(compliant(rho, sigma, run.oracle(b_spec), g.base),
                         {{"partner", print(sigma)}});
    };
  });

  auto* synleq = two("synleq", "Decide the B-syntactic peer preorder", "c1", "c2");
  with_b(synleq);
  synleq->callback([&] {
    action = [&] {
      return run.verdict(syn_peer_leq(run.contract(a1), run.contract(a2), run.oracle(b_spec), g.base));
    };
  });

  auto* peerleq = two("peerleq", "Decide the peer subcontract preorder", "c1", "c2");
  peerleq->add_flag("--via-subtyping", via_subtyping, "Decide through decode and subtyping");
  peerleq->callback([&] {
    action = [&] {
      ContractTerm c1 = run.contract(a1), c2 = run.contract(a2);
      return run.verdict(via_subtyping ? peer_leq_via_subtyping(c1, c2, g.base)
                                       : peer_leq(c1, c2, g.base));
    };
  });

  auto* falsify = two("falsify",
                      "Search a peer complying with c1 but not c2 (exit 0 when one is found)",
                      "c1", "c2");
  with_b(falsify);
  falsify->add_option("--depth", depth, "Prefix depth of candidate peers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  falsify->callback([&] {
    action = [&] {
      auto w = falsify_set_leq(run.contract(a1), run.contract(a2), run.oracle(b_spec), g.base, depth);
      if (g.json) {
        out << json{{"witness", w ? json(print(*w)) : json(nullptr)}, {"verdict", w.has_value()}}.dump()
            << "\n";
      } else {
        out << (w ? print(*w) : std::string("no witness")) << "\n";
      }
      return w ? 0 : 1;
    };
  });

  one("stdual", "Standard dual of a type or contract", "term")->callback([&] {
    action = [&] {
      return run.term(std::visit([](const auto& x) -> AnyTerm { return stdual(x); }, run.any(a1)));
    };
  });
  one("mcl", "M-closure of a contract", "contract")->callback([&] {
    action = [&] { return run.term(mcl(run.contract(a1))); };
  });
  one("dual", "stdual after m-closure", "contract")->callback([&] {
    action = [&] { return run.term(dual(run.contract(a1))); };
  });
  one("cplmt", "Complement of a contract", "contract")->callback([&] {
    action = [&] { return run.term(cplmt(run.contract(a1))); };
  });

  auto* endpoints = two("endpoints", "Check the endpoint duality side condition", "T+", "T-");
  dual_name = "dual";
  endpoints->add_option("--d", dual_name, "stdual | dual | cplmt")
      ->check(CLI::IsMember({"stdual", "dual", "cplmt"}))
      ->capture_default_str();
  endpoints->callback([&] {
    action = [&] {
      return run.verdict(
          endpoints_dual(run.type(a1), run.type(a2), dual_op_from_string(dual_name), g.base));
    };
  });

  GenConfig cfg;
  auto gen_opts = [&](CLI::App* sc) {
    sc->add_option("--depth", cfg.max_depth, "Maximum nesting depth")->capture_default_str();
    sc->add_option("--seed", seed, "Random seed")->capture_default_str();
    sc->add_option("--p-rec", p_rec, "Probability of a rec binder")->capture_default_str();
    sc->add_option("--p-ho", p_ho, "Probability of a higher-order message")->capture_default_str();
  };
  auto* gen = app.add_subcommand("gen", "Generate closed guarded terms");
  gen_opts(gen);
  gen->add_option("--n", n_terms, "Number of terms")->capture_default_str();
  gen->add_flag("--contracts", contracts, "Emit contracts instead of types");
  gen->add_flag("--m-closed", m_closed, "Only closed messages");
  gen->callback([&] {
    action = [&] {
      cfg.seed = seed;
      cfg.p_rec = p_rec;
      cfg.p_higher_order = p_ho;
      cfg.closed_messages = m_closed;
      json arr = json::array();
      auto emit = [&](const std::string& s) {
        if (g.json)
          arr.push_back(s);
        else
          out << s << "\n";
      };
      if (contracts)
        for (const auto& c : generate_contracts(cfg, n_terms)) emit(print(c));
      else
        for (const auto& t : generate_types(cfg, n_terms)) emit(print(t));
      if (g.json) out << arr.dump() << "\n";
      return 0;
    };
  });

  auto* fullabs = app.add_subcommand("fullabs-check",
                                     "Compare subtyping with the peer preorder on random pairs");
  gen_opts(fullabs);
  fullabs->add_option("--n", n_pairs, "Number of pairs")->capture_default_str();
  fullabs->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  fullabs->callback([&] {
    action = [&] {
      cfg.seed = seed;
      cfg.p_rec = p_rec;
      cfg.p_higher_order = p_ho;
      auto rep = fullabs_check(cfg, n_pairs, jobs);
      if (g.json) {
        json d = json::array();
        for (const auto& x : rep.disagreements)
          d.push_back({{"S", print(x.left)},
                       {"T", print(x.right)},
                       {"subtype", x.subtype_verdict},
                       {"peer", x.peer_verdict},
                       {"decoded", x.decoded_verdict}});
        out << json{{"n_pairs", rep.n_pairs},
                    {"n_agree", rep.n_agree},
                    {"n_positive", rep.n_positive},
                    {"disagreements", d}}
                   .dump()
            << "\n";
      } else {
        out << rep.n_agree << "/" << rep.n_pairs << " pairs agree (" << rep.n_positive
            << " related)\n";
        for (const auto& x : rep.disagreements)
          out << "  " << print(x.left) << " vs " << print(x.right) << ": subtype=" << x.subtype_verdict
              << " peer=" << x.peer_verdict << " decoded=" << x.decoded_verdict << "\n";
      }
      return rep.n_agree == rep.n_pairs ? 0 : 1;
    };
  });

  app.add_subcommand("repro", "Re-run the worked examples")->callback([&] {
    action = [&] {
      auto cases = run_repro();
      bool all = true;
      json arr = json::array();
      for (const auto& c : cases) {
        all = all && c.passed;
        if (g.json)
          arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        else
          out << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
      }
      if (g.json) out << arr.dump() << "\n";
      return all ? 0 : 1;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hosc: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!g.base_path.empty()) g.base = BaseOrder::load(g.base_path);
    return action();
  } catch (const std::exception& e) {
    err << "hosc: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hosc
