// butterfly: command-line front end over the butterfly library.
// Exit codes: 0 ok, 1 domain failure, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "butterfly/extension.hpp"
#include "butterfly/laws.hpp"
#include "butterfly/weakmap.hpp"
#include "store.hpp"

using namespace bfly;
namespace fs = std::filesystem;

namespace {

  struct Flags {
    std::string workspace;
    bool        json_out = false;
    bool        witness  = false;
    bool        check    = false;
  };

  // Domain failure that is not an exception of the library (exit 1).
  struct Failed : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  struct Ctx {
    Flags&     flags;
    cli::Store store;
    Resolver   resolver;

    explicit Ctx(Flags& f) : flags(f), store(cli::Store::default_root(f.workspace)) {
      resolver = [this](std::string const& ref) { return store.get(ref); };
    }

    // A file path, "-" for stdin, or a store reference.
    json read(std::string const& arg) const {
      if (arg == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return parse_json(ss.str());
      }
      if (fs::is_regular_file(arg)) {
        std::ifstream     in(arg, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_json(ss.str());
      }
      return store.get(arg);
    }

    std::string emit(json const& j) {
      auto ref = store.put(j);
      if (flags.json_out) {
        std::cout << json{{"ref", ref}, {"object", j}}.dump(2) << "\n";
      } else {
        std::cout << ref << "\n";
      }
      return ref;
    }
  };

  void require_ok(Report const& r, std::string const& what) {
    if (!r.ok()) {
      throw Failed(what + " failed re-validation:\n" + r.str());
    }
  }

  std::vector<int> parse_list(std::string const& s) {
    std::string t = s;
    if (!t.empty() && t.front() == '[') {
      return parse_json(t).get<std::vector<int>>();
    }
    std::vector<int>  out;
    std::stringstream ss(t);
    std::string       item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stoi(item));
      } catch (std::exception const&) {
        throw ParseError("bad list entry '" + item + "'");
      }
    }
    return out;
  }

  XModTwoCell load_two_cell(json const& j, Resolver const& r) {
    XModTwoCell C{load_morphism(j.at("P"), r), load_morphism(j.at("Q"), r), {}};
    C.alpha = j.at("alpha").get<std::vector<int>>();
    return C;
  }

  Report validate_document(json const& j, std::string const& kind, Resolver const& r) {
    if (kind == "group") {
      load_group(j, r);
      return {};
    }
    if (kind == "xmod") {
      return validate_crossed_module(load_xmod(j, r));
    }
    if (kind == "2group") {
      return validate_strict2group(load_2group(j, r));
    }
    if (kind == "morphism") {
      return validate_morphism(load_morphism(j, r));
    }
    if (kind == "two_cell") {
      return validate_two_cell(load_two_cell(j, r));
    }
    if (kind == "butterfly") {
      return validate_butterfly(load_butterfly(j, r));
    }
    if (kind == "butterfly_morphism") {
      ButterflyMorphism M{load_butterfly(j.at("src"), r), load_butterfly(j.at("dst"), r), {}};
      M.f = GroupHom{M.src.E, M.dst.E, j.at("f").get<std::vector<int>>()};
      return validate_butterfly_morphism(M);
    }
    if (kind == "monoidal") {
      return check_monoidal(load_monoidal(j, r));
    }
    auto G = load_group(j.at("G"), r).group;
    FactorSet F{load_group(j.at("H"), r).group, G, j.at("phi").get<std::vector<int>>(), {}};
    for (auto const& row : j.at("f")) {
      for (auto const& v : row) {
        F.f.push_back(v.get<int>());
      }
    }
    return validate_factor_set(F, automorphism_group(G));
  }

  int cmd_validate(Ctx& c, std::string const& input) {
    json   j    = c.read(input);
    auto   kind = kind_of(j);
    Report r;
    try {
      r = validate_document(j, kind, c.resolver);
    } catch (ParseError const&) {
      throw;
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(e.what());
    } catch (Error const& e) {
      r.add(e.kind(), e.what());
    }
    if (c.flags.json_out) {
      json issues = to_json(r)["issues"];
      std::cout << json{{"kind", kind}, {"valid", r.ok()}, {"issues", issues}}.dump(2) << "\n";
    } else if (r.ok()) {
      std::cout << "valid " << kind << "\n";
    } else {
      std::cout << "invalid " << kind << "\n";
      for (auto const& i : r.issues) {
        std::cout << "  (" << i.condition << ") " << i.witness << "\n";
      }
    }
    return r.ok() ? 0 : 1;
  }

  int cmd_identity(Ctx& c, std::string const& input) {
    auto B = identity_butterfly(load_xmod(c.read(input), c.resolver));
    if (c.flags.check) {
      require_ok(validate_butterfly(B), "identity");
    }
    c.emit(to_json(B));
    return 0;
  }

  int cmd_compose(Ctx& c, std::string const& a, std::string const& b) {
    auto A  = load_butterfly(c.read(a), c.resolver);
    auto B  = load_butterfly(c.read(b), c.resolver);
    auto CD = compose_detailed(A, B);
    if (c.flags.check) {
      require_ok(validate_butterfly(CD.result), "compose");
    }
    auto ref = c.emit(to_json(CD.result));
    if (c.flags.witness) {
      json w{{"ref", ref}};
      json reps = json::array();
      for (int q : CD.quot.reps) {
        auto [e, e2] = CD.pairs.pairs[q];
        reps.push_back({e, e2});
      }
      w["classes"] = reps;  // element q of the composite is the class of [e, e']
      for (auto const& [name, X] : {std::pair{"first", &A}, std::pair{"second", &B}}) {
        if (same_xmod(X->dom, CD.result.dom) && same_xmod(X->cod, CD.result.cod)) {
          if (auto iso = isomorphic_butterflies(CD.result, *X)) {
            w["isomorphic_to_" + std::string(name)] = iso->f.map;
          }
        }
      }
      std::cout << w.dump() << "\n";
    }
    return 0;
  }

  int cmd_flip(Ctx& c, std::string const& input) {
    auto B = load_butterfly(c.read(input), c.resolver);
    auto F = flip(B);
    if (c.flags.check) {
      require_ok(validate_butterfly(F), "flip");
    }
    c.emit(to_json(F));
    return 0;
  }

  int cmd_split(Ctx& c, std::string const& input, std::string const& section) {
    json j = c.read(input);
    if (kind_of(j) == "morphism") {
      auto S = split_from_morphism(load_morphism(j, c.resolver));
      if (c.flags.check) {
        require_ok(validate_butterfly(S.butterfly), "split");
      }
      c.emit(to_json(S.butterfly));
      if (c.flags.witness) {
        std::cout << json{{"section", S.section.map}}.dump() << "\n";
      }
      return 0;
    }
    auto     B = load_butterfly(j, c.resolver);
    GroupHom s;
    if (section.empty()) {
      auto all = all_sections(B);
      if (all.empty()) {
        throw NotASection("sigma has no homomorphic section");
      }
      s = all.front();
    } else {
      s = GroupHom{B.dom.G0, B.E, parse_list(section)};
    }
    auto P = morphism_from_split(B, s);
    if (c.flags.check) {
      require_ok(validate_morphism(P), "split");
    }
    c.emit(to_json(P));
    return 0;
  }

  int cmd_span(Ctx& c, std::string const& input) {
    auto B = load_butterfly(c.read(input), c.resolver);
    auto S = span_of_butterfly(B);
    if (c.flags.check) {
      require_ok(validate_crossed_module(S.xmod), "span");
      require_ok(span_coincidence(B), "span");
    }
    json out{{"xmod", c.store.put(to_json(S.xmod))},
             {"left", c.store.put(to_json(S.left))},
             {"right", c.store.put(to_json(S.right))}};
    std::cout << out.dump(c.flags.json_out ? 2 : -1) << "\n";
    return 0;
  }

  int cmd_weakmap_extract(Ctx& c, std::string const& input, std::string const& section) {
    auto B = load_butterfly(c.read(input), c.resolver);
    std::vector<int> s;
    if (section.empty()) {
      auto all = all_set_sections(B, 1);
      s        = all.front();
    } else {
      s = parse_list(section);
    }
    auto M = extract_monoidal(B, s);
    if (c.flags.check) {
      require_ok(check_monoidal(M), "extract");
    }
    auto j   = to_json(M);
    auto ref = c.store.put(j);
    std::cout << j.dump(2) << "\n";
    std::cerr << "ref " << ref << "\n";
    return 0;
  }

  int cmd_weakmap_build(Ctx& c, std::string const& input) {
    auto M = load_monoidal(c.read(input), c.resolver);
    auto R = butterfly_from_monoidal(M);
    if (c.flags.check) {
      require_ok(validate_butterfly(R.butterfly), "build");
    }
    c.emit(to_json(R.butterfly));
    if (c.flags.witness) {
      std::cout << json{{"section", R.section}, {"variant", R.variant}}.dump() << "\n";
    }
    return 0;
  }

  Group read_group(Ctx& c, std::string const& arg) {
    if (fs::is_regular_file(arg) || c.store.has(arg)) {
      return load_group(c.read(arg), c.resolver).group;
    }
    return named_group(arg);
  }

  int cmd_classify(Ctx& c, std::string const& h, std::string const& g, bool oracle, int bound) {
    auto H  = read_group(c, h);
    auto G  = read_group(c, g);
    auto hH = cli::sha256_hex(canonical_dump(to_json(H)));
    auto hG = cli::sha256_hex(canonical_dump(to_json(G)));
    auto key =
        "classify:" + hH + ":" + hG + ":" + std::to_string(bound) + (oracle ? ":oracle" : "");

    json report;
    if (auto hit = c.store.memo(key)) {
      report = c.store.get(*hit);
    } else {
      auto cls     = classify_extensions(H, G, oracle, bound);
      json classes = json::array();
      for (auto const& k : cls.classes) {
        classes.push_back({{"E", to_json(k.rep.E)},
                           {"E_type", k.e_type},
                           {"split", k.split},
                           {"factor_set", to_json(k.factor_set)},
                           {"butterfly", c.store.put(to_json(k.butterfly))}});
      }
      report = json{{"H", H->name()}, {"G", G->name()}, {"classes", classes}};
      if (cls.oracle_run) {
        report["oracle_classes"] = cls.oracle_classes;
      }
      c.store.set_memo(key, c.store.put(report));
      auto aut_key = "aut:" + hG;
      if (!c.store.memo(aut_key)) {
        c.store.set_memo(aut_key, c.store.put(to_json(aut_xmod(G, bound))));
      }
    }

    auto const& classes = report["classes"];
    int         split   = 0;
    for (auto const& k : classes) {
      split += k["split"].get<bool>();
    }
    if (c.flags.json_out) {
      std::cout << classes.dump(2) << "\n";
    } else {
      std::cout << "H,G,classes,split\n"
                << report["H"].get<std::string>() << "," << report["G"].get<std::string>() << ","
                << classes.size() << "," << split << "\n";
    }
    if (oracle && report.contains("oracle_classes")) {
      auto n = report["oracle_classes"].get<std::size_t>();
      if (n != classes.size()) {
        std::cerr << "mismatch: butterfly side " << classes.size() << ", factor sets " << n
                  << "\n";
        return 1;
      }
      if (!c.flags.json_out) {
        std::cerr << "oracle agrees: " << n << " classes\n";
      }
    }
    return 0;
  }

  int cmd_suite(Ctx& c, std::string const& name, std::uint64_t seed, int bound, bool fault,
                unsigned threads) {
    std::vector<std::string> names = name.empty() ? suite_names() : std::vector{name};
    if (!name.empty()) {
      bool known = false;
      for (auto const& n : suite_names()) {
        known = known || n == name;
      }
      if (!known) {
        throw UnknownSuite("'" + name + "'");
      }
    }
    auto fx    = generate_fixtures(seed, bound);
    json all   = json::array();
    bool clean = true;
    for (auto const& n : names) {
      auto r = run_suite(n, fx, SuiteOptions{fault, threads});
      clean  = clean && r.ok();
      if (c.flags.json_out) {
        all.push_back(to_json(r));
        continue;
      }
      std::cout << r.name << ": " << r.cases << " cases, " << r.failures.size() << " failures, "
                << r.wall_ms << " ms\n";
      for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) {
        auto w = r.failures[i].witness.dump();
        std::cout << "  " << r.failures[i].property << ": "
                  << (w.size() > 300 ? w.substr(0, 300) + "..." : w) << "\n";
      }
    }
    if (c.flags.json_out) {
      std::cout << all.dump(2) << "\n";
    }
    return clean ? 0 : 1;
  }

  int cmd_store_ls(Ctx& c) {
    for (auto const& e : c.store.list()) {
      std::cout << e.hash << " " << e.kind << "\n";
    }
    return 0;
  }

  int cmd_store_get(Ctx& c, std::string const& ref) {
    std::cout << canonical_dump(c.store.get(ref)) << "\n";
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Butterflies between crossed modules of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--workspace", f.workspace, "store root (overrides BUTTERFLY_WORKSPACE)");
  app.add_flag("--json", f.json_out, "machine-readable output");
  app.add_flag("--witness", f.witness, "print witnesses");
  app.add_flag("--check", f.check, "re-validate results");

  std::string in1, in2, section, suite_name;
  std::uint64_t seed      = 0;
  int           bound     = 0;
  bool          oracle    = false;
  bool          fault     = false;
  unsigned      threads   = 0;

  auto* validate = app.add_subcommand("validate", "validate any document by its kind");
  validate->add_option("input", in1, "file, '-' or store ref")->required();

  auto* identity = app.add_subcommand("identity", "identity butterfly of a crossed module");
  identity->add_option("xmod", in1)->required();

  auto* compose = app.add_subcommand("compose", "compose two butterflies");
  compose->add_option("first", in1)->required();
  compose->add_option("second", in2)->required();

  auto* flip = app.add_subcommand("flip", "flip a flippable butterfly");
  flip->add_option("butterfly", in1)->required();

  auto* split = app.add_subcommand("split", "morphism -> split butterfly, or butterfly + section -> morphism");
  split->add_option("input", in1)->required();
  split->add_option("--section", section, "homomorphic section H0 -> E, e.g. 0,3");

  auto* span = app.add_subcommand("span", "span of weak equivalences of a butterfly");
  span->add_option("butterfly", in1)->required();

  auto* weakmap = app.add_subcommand("weakmap", "monoidal functors and butterflies");
  weakmap->require_subcommand(1);
  auto* extract = weakmap->add_subcommand("extract", "monoidal functor from a butterfly and a set section");
  extract->add_option("butterfly", in1)->required();
  extract->add_option("--section", section, "normalized set section H0 -> E");
  auto* build = weakmap->add_subcommand("build", "butterfly from a monoidal functor");
  build->add_option("monoidal", in1)->required();

  auto* classify = app.add_subcommand("classify", "classify extensions of H by G");
  classify->add_option("H", in1, "group file, ref or name")->required();
  classify->add_option("G", in2, "group file, ref or name")->required();
  classify->add_flag("--oracle", oracle, "also run the factor-set oracle");
  classify->add_option("--bound", bound, "bound on |H||G| (default 16)");

  auto* suite = app.add_subcommand("suite", "run property suites");
  suite->add_option("--suite", suite_name, "one suite; default all");
  suite->add_option("--seed", seed);
  suite->add_option("--bound", bound, "fixture size bound (default 8)");
  suite->add_flag("--inject-fault", fault, "corrupt the operation under test");
  suite->add_option("--threads", threads, "0: hardware concurrency");

  auto* store = app.add_subcommand("store", "inspect the object store");
  store->require_subcommand(1);
  auto* ls  = store->add_subcommand("ls", "list objects");
  auto* get = store->add_subcommand("get", "print an object");
  get->add_option("ref", in1)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Ctx c(f);
    if (*validate) return cmd_validate(c, in1);
    if (*identity) return cmd_identity(c, in1);
    if (*compose) return cmd_compose(c, in1, in2);
    if (*flip) return cmd_flip(c, in1);
    if (*split) return cmd_split(c, in1, section);
    if (*span) return cmd_span(c, in1);
    if (*extract) return cmd_weakmap_extract(c, in1, section);
    if (*build) return cmd_weakmap_build(c, in1);
    if (*classify) return cmd_classify(c, in1, in2, oracle, bound > 0 ? bound : 16);
    if (*suite) return cmd_suite(c, suite_name, seed, bound > 0 ? bound : 8, fault, threads);
    if (*ls) return cmd_store_ls(c);
    if (*get) return cmd_store_get(c, in1);
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (UnknownKind const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (UnknownSuite const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (nlohmann::json::exception const& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return 2;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
