#pragma once

// Command line front end. Subcommands:
//   classify h2xh2   curve classes on a quaternionic H^2 x H^2 surface
//   classify ball    curve classes on a ball quotient of simple type
//   oracle hilbert   brute-force local Hilbert symbol, checked against the
//                    closed form
//   explain          background on the verdicts the classifier can reach
//
// Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
// 2 invalid input, 1 internal error. Output is deterministic byte for byte.

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shimura/errors.hpp"
#include "shimura/hermitian.hpp"
#include "shimura/hilbert_surface.hpp"
#include "shimura/picard_surface.hpp"

namespace shimura::cli {

using json = nlohmann::ordered_json;

inline constexpr std::size_t kDefaultLimit = 10;
inline constexpr std::size_t kMaxLimit = 10000;

// --ram tokens: "p" names the unique place over a non-split prime,
// "p:0" / "p:1" name the two places over a split prime, "p:both" is
// shorthand for the pair.
inline std::vector<KPlace> parse_ram_tokens(const QuadField& K,
                                            const std::vector<std::string>& tokens) {
  std::vector<KPlace> out;
  for (const std::string& tok : tokens) {
    if (tok.empty()) continue;  // --ram "" names the empty set
    std::string head = tok;
    std::string tail;
    if (auto pos = tok.find(':'); pos != std::string::npos) {
      head = tok.substr(0, pos);
      tail = tok.substr(pos + 1);
    }
    Int p = 0;
    try {
      std::size_t used = 0;
      p = std::stoll(head, &used);
      if (used != head.size()) throw std::invalid_argument(head);
    } catch (const std::exception&) {
      throw invalid_input(errc::not_prime, "bad place token '" + tok + "': '" + head +
                                               "' is not an integer");
    }
    if (!is_prime(p))
      throw invalid_input(errc::not_prime,
                          "bad place token '" + tok + "': " + head + " is not prime");
    SplitType split = splitting(K, p);
    if (tail.empty()) {
      if (split == SplitType::Split)
        throw invalid_input(errc::place_inconsistent_with_splitting,
                            std::to_string(p) + " is split in " + K.name() +
                                ": name the place as " + head + ":0, " + head +
                                ":1, or " + head + ":both");
      out.push_back(KPlace{p, 0, split});
    } else if (tail == "both") {
      if (split != SplitType::Split)
        throw invalid_input(errc::place_inconsistent_with_splitting,
                            std::to_string(p) + " is " + to_string(split) + " in " +
                                K.name() + ": only one place lies over it");
      out.push_back(KPlace{p, 0, SplitType::Split});
      out.push_back(KPlace{p, 1, SplitType::Split});
    } else if (tail == "0" || tail == "1") {
      if (split != SplitType::Split)
        throw invalid_input(errc::place_inconsistent_with_splitting,
                            "place token '" + tok + "' asserts " + std::to_string(p) +
                                " splits in " + K.name() + ", but it is " +
                                to_string(split));
      out.push_back(KPlace{p, tail == "1" ? 1 : 0, SplitType::Split});
    } else {
      throw invalid_input(errc::place_inconsistent_with_splitting,
                          "bad place token '" + tok + "': suffix must be 0, 1, or both");
    }
  }
  return out;
}

inline std::string ram_brace_list(const QuatAlg& B) { return B.str(); }

inline json ram_json(const QuatAlg& B) {
  json arr = json::array();
  for (const PlaceQ& v : B.ram()) arr.push_back(v.str());
  return arr;
}

inline std::string symbol_str(const HilbertSymbolRep& s) {
  return "(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
}

// ---------------------------------------------------------------------------
// explain

struct Topic {
  const char* name;
  const char* text;
};

inline const std::vector<Topic>& topics() {
  static const std::vector<Topic> t = {
      {"admissibility",
       "A quaternionic surface built from a real quadratic field K carries geodesic "
       "curves exactly when its ramification is a union of complete pairs of places "
       "over primes that split in K. Base change from Q ramifies both places over a "
       "split prime or neither, and never touches a place over an inert or ramified "
       "prime, so any other ramification pattern leaves nothing over Q to produce a "
       "curve."},
      {"classes",
       "Curves are grouped by commensurability, and on a fixed surface the classes "
       "correspond to isomorphism classes of quaternion algebras over Q whose base "
       "change matches the surface ramification: the split base primes together with "
       "any finite set of non-split primes of the right parity. Classes are listed by "
       "ascending product of the non-split part, so the list starts with the smallest "
       "algebras and is stable from run to run."},
      {"normal-form",
       "Over an imaginary quadratic field of discriminant D, every curve class on a "
       "ball quotient of simple type is represented by an algebra (n, D) with n the "
       "least positive squarefree integer whose ramification matches the class. The "
       "pair (n, D) is the normal form reported for each class."},
      {"simple-type",
       "The curve classification applies to ball quotients of simple type. The other "
       "arithmetic ball quotients contain no geodesic curves at all, so asking for "
       "their curve classes returns an empty verdict rather than a list."},
      {"degree",
       "Geodesic curves on these surfaces force a quadratic subfield of the field of "
       "definition. A totally real field of odd degree over Q has no quadratic "
       "subfield, so odd degree rules out curves outright. This tool computes with "
       "quadratic fields; higher even degrees are out of scope."},
      {"oracle",
       "oracle hilbert <a> <b> <place> evaluates the local Hilbert symbol two ways: "
       "a brute-force search for a nontrivial zero of ax^2 + by^2 = z^2 over the "
       "completion, and the classical closed form. The two must agree; the command "
       "fails if they ever disagree. The place is a prime or 'inf'."},
  };
  return t;
}

inline int run_explain(const std::string& topic, std::ostream& out, std::ostream& err) {
  for (const Topic& t : topics()) {
    if (topic == t.name) {
      out << t.text << "\n";
      return 0;
    }
  }
  err << "unknown topic '" << topic << "'; topics:";
  for (const Topic& t : topics()) err << " " << t.name;
  err << "\n";
  return 2;
}

// ---------------------------------------------------------------------------
// classify h2xh2

struct H2Options {
  Int d = 0;
  std::vector<std::string> ram_tokens;
  int degree = 2;
  int k0_degree = 1;
  std::size_t limit = kDefaultLimit;
  std::string format = "json";
};

inline void check_limit(std::size_t limit) {
  if (limit > kMaxLimit)
    throw invalid_input(errc::bound_exceeded,
                        "limit " + std::to_string(limit) + " exceeds the maximum " +
                            std::to_string(kMaxLimit));
}

inline void check_desk_scale(int degree, int k0_degree) {
  if (degree < 1 || k0_degree < 1)
    throw invalid_input(errc::zero_argument, "field degrees must be positive");
  if (k0_degree != 1)
    throw invalid_input(errc::unsupported_desk_scale,
                        "curves defined over a base field larger than Q are out of scope");
  if (degree % 2 == 0 && degree != 2)
    throw invalid_input(errc::unsupported_desk_scale,
                        "even degrees beyond quadratic are out of scope");
}

inline int run_h2xh2(const H2Options& opt, std::ostream& out) {
  check_limit(opt.limit);
  check_desk_scale(opt.degree, opt.k0_degree);

  if (opt.degree % 2 != 0) {
    SubfieldCheck chk = no_quadratic_subfield(opt.degree);
    if (opt.format == "json") {
      json j;
      j["surface"] = {{"d", opt.d}, {"degree", opt.degree}};
      j["admissible"] = false;
      j["reason"] = chk.reason;
      j["classes"] = json::array();
      out << j.dump(2) << "\n";
    } else {
      out << "surface: degree " << opt.degree << " field\n";
      out << "admissible: no\n";
      out << "reason: " << chk.reason << "\n";
    }
    return 0;
  }

  QuadField K = make_field(opt.d);
  std::vector<KPlace> ram = parse_ram_tokens(K, opt.ram_tokens);
  std::sort(ram.begin(), ram.end());
  ram.erase(std::unique(ram.begin(), ram.end()), ram.end());
  QuaternionSurface S{K, ram};
  validate_surface(S);

  Admissibility adm = admits_fuchsian(S);
  std::vector<CurveClass> classes;
  if (adm.admissible) classes = enumerate_classes(S, opt.limit);

  if (opt.format == "json") {
    json j;
    json rj = json::array();
    for (const KPlace& w : S.ram) rj.push_back(w.str());
    j["surface"] = {{"field", K.name()}, {"d", opt.d}, {"ram", rj}};
    j["admissible"] = adm.admissible;
    j["reason"] = adm.admissible ? json(nullptr) : json(adm.reason);
    json cj = json::array();
    for (const CurveClass& c : classes) {
      json e;
      e["ram"] = ram_json(c.B);
      e["symbol"] = {c.symbol.a, c.symbol.b};
      e["division"] = c.cocompact;
      cj.push_back(std::move(e));
    }
    j["classes"] = std::move(cj);
    out << j.dump(2) << "\n";
  } else {
    out << "surface: " << K.name() << ", ramified at {";
    for (std::size_t i = 0; i < S.ram.size(); ++i)
      out << (i ? "," : "") << S.ram[i].str();
    out << "}\n";
    if (!adm.admissible) {
      out << "admissible: no\n";
      out << "reason: " << adm.reason << "\n";
      return 0;
    }
    out << "admissible: yes\n";
    out << std::left << std::setw(7) << "class" << std::setw(18) << "ram"
        << std::setw(12) << "symbol" << "division\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const CurveClass& c = classes[i];
      out << std::left << std::setw(7) << (i + 1) << std::setw(18)
          << ram_brace_list(c.B) << std::setw(12) << symbol_str(c.symbol)
          << (c.cocompact ? "yes" : "no") << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// classify ball

struct BallOptions {
  Int d = 0;
  std::size_t limit = kDefaultLimit;
  bool verify = false;
  bool simple_type = true;
  std::string format = "json";
};

inline int run_ball(const BallOptions& opt, std::ostream& out) {
  check_limit(opt.limit);
  BallSurface S = make_ball_surface(opt.d);

  SimpleTypeCheck gate = simple_type_gate(opt.simple_type);
  std::vector<BallCurveClass> classes;
  std::vector<bool> verified;
  if (gate.proceed) {
    classes = enumerate_classes(S, opt.limit);
    if (opt.verify) {
      HermForm ambient = default_ambient(S.K);
      for (const BallCurveClass& c : classes)
        verified.push_back(verify_curve(S, c.B, ambient));
    }
  }

  if (opt.format == "json") {
    json j;
    j["surface"] = {{"field", S.K.name()}, {"d", opt.d}, {"cocompact", S.cocompact}};
    j["admissible"] = gate.proceed;
    j["reason"] = gate.proceed ? json(nullptr) : json(gate.reason);
    json cj = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const BallCurveClass& c = classes[i];
      json e;
      e["ram"] = ram_json(c.B);
      e["symbol"] = {c.symbol.a, c.symbol.b};
      e["n"] = c.n;
      e["division"] = !c.cuspidal;
      if (opt.verify) e["verified"] = static_cast<bool>(verified[i]);
      cj.push_back(std::move(e));
    }
    j["classes"] = std::move(cj);
    out << j.dump(2) << "\n";
  } else {
    out << "surface: ball quotient for " << S.K.name() << "\n";
    if (!gate.proceed) {
      out << "admissible: no\n";
      out << "reason: " << gate.reason << "\n";
      return 0;
    }
    out << "admissible: yes\n";
    out << std::left << std::setw(7) << "class" << std::setw(16) << "ram"
        << std::setw(8) << "n" << std::setw(14) << "symbol";
    if (opt.verify)
      out << std::setw(10) << "division" << "verified";
    else
      out << "division";
    out << "\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const BallCurveClass& c = classes[i];
      out << std::left << std::setw(7) << (i + 1) << std::setw(16)
          << ram_brace_list(c.B) << std::setw(8) << c.n << std::setw(14)
          << symbol_str(c.symbol);
      if (opt.verify)
        out << std::setw(10) << (c.cuspidal ? "no" : "yes") << (verified[i] ? "yes" : "no");
      else
        out << (c.cuspidal ? "no" : "yes");
      out << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// oracle hilbert

inline int run_oracle(const std::string& a_s, const std::string& b_s,
                      const std::string& place_s, std::ostream& out) {
  auto parse_int = [](const std::string& s, const char* what) {
    try {
      std::size_t used = 0;
      Int v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw invalid_input(errc::zero_argument,
                          std::string("bad ") + what + " '" + s + "'");
    }
  };
  Int a = parse_int(a_s, "coefficient");
  Int b = parse_int(b_s, "coefficient");
  PlaceQ v = place_s == "inf" ? PlaceQ::infinite()
                              : PlaceQ::finite(parse_int(place_s, "place"));
  int brute = hilbert_oracle(a, b, v);
  int closed = hilbert_local(a, b, v);
  if (brute != closed)
    throw internal_error(errc::internal_inconsistency,
                         "oracle disagrees with the closed form at " + v.str());
  out << brute << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  // The oracle subcommand takes bare signed integers as positionals, which
  // option parsers read as flags; handle it before CLI11 sees the args.
  if (!args.empty() && args[0] == "oracle") {
    try {
      if (args.size() != 5 || args[1] != "hilbert")
        throw invalid_input(errc::zero_argument,
                            "usage: oracle hilbert <a> <b> <prime|inf>");
      return run_oracle(args[2], args[3], args[4], out);
    } catch (const invalid_input& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (const internal_error& e) {
      err << "internal error: " << e.what() << "\n";
      return 1;
    }
  }

  // Merge "--opt value" into "--opt=value" so negative values like --d -1
  // are never mistaken for option names.
  static const std::vector<std::string> value_opts = {
      "--d", "--ram", "--limit", "--format", "--degree", "--k0-degree",
      "--simple-type"};
  std::vector<std::string> merged;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (std::find(value_opts.begin(), value_opts.end(), args[i]) != value_opts.end() &&
        i + 1 < args.size()) {
      // "--ram" with an empty value means the empty set, same as omitting the
      // option; an empty inline value would make the list option consume the
      // next option token as content instead.
      if (args[i] == "--ram" && args[i + 1].empty()) {
        ++i;
        continue;
      }
      merged.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else if (args[i] == "--ram=") {
      continue;
    } else {
      merged.push_back(args[i]);
    }
  }
  args = std::move(merged);

  CLI::App app{"geodesic curve classifier for quaternionic and ball quotient surfaces"};
  app.require_subcommand(1);

  auto* classify = app.add_subcommand("classify", "classify curve classes on a surface");
  classify->require_subcommand(1);

  H2Options h2;
  auto* h2cmd = classify->add_subcommand(
      "h2xh2", "curves on a quaternionic surface over a real quadratic field");
  h2cmd->add_option("--d", h2.d, "radicand of the real quadratic field")->required();
  h2cmd->add_option("--ram", h2.ram_tokens,
                    "ramified places: p, p:0, p:1, or p:both (repeat or comma separate)")
      ->delimiter(',');
  h2cmd->add_option("--degree", h2.degree, "degree of the field of definition");
  h2cmd->add_option("--k0-degree", h2.k0_degree, "degree of the base field of the curves");
  h2cmd->add_option("--limit", h2.limit, "maximum number of classes to list");
  h2cmd->add_option("--format", h2.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));

  BallOptions ball;
  auto* ballcmd = classify->add_subcommand(
      "ball", "curves on a ball quotient of simple type");
  ballcmd->add_option("--d", ball.d, "radicand of the imaginary quadratic field")
      ->required();
  ballcmd->add_option("--limit", ball.limit, "maximum number of classes to list");
  ballcmd->add_flag("--verify", ball.verify, "check each class against the ambient form");
  ballcmd->add_option("--simple-type", ball.simple_type,
                      "whether the quotient is of simple type");
  ballcmd->add_option("--format", ball.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));

  auto* oracle = app.add_subcommand("oracle", "independent checks");
  oracle->require_subcommand(1);
  std::string oa, ob, oplace;
  auto* hcmd = oracle->add_subcommand("hilbert", "local Hilbert symbol by brute force");
  hcmd->add_option("a", oa, "first coefficient")->required();
  hcmd->add_option("b", ob, "second coefficient")->required();
  hcmd->add_option("place", oplace, "a prime, or inf")->required();

  std::string topic;
  auto* excmd = app.add_subcommand("explain", "background on a verdict");
  excmd->add_option("topic", topic, "one of the listed topics")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (h2cmd->parsed()) return run_h2xh2(h2, out);
    if (ballcmd->parsed()) return run_ball(ball, out);
    if (hcmd->parsed()) return run_oracle(oa, ob, oplace, out);
    if (excmd->parsed()) return run_explain(topic, out, err);
    return 2;
  } catch (const invalid_input& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace shimura::cli
