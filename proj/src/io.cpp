#include "butterfly/io.hpp"

namespace bfly {

  namespace {
    json const& field(json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
      }
      return j.at(key);
    }

    json deref(json const& j, Resolver const& r) {
      if (j.is_string()) {
        if (!r) {
          throw ParseError("reference '" + j.get<std::string>() + "' cannot be resolved here");
        }
        return r(j.get<std::string>());
      }
      return j;
    }

    std::vector<int> ints(json const& j, std::size_t n, int range, char const* what) {
      if (!j.is_array() || j.size() != n) {
        throw ParseError(std::string(what) + ": expected an array of length "
                         + std::to_string(n));
      }
      std::vector<int> out;
      out.reserve(n);
      for (auto const& v : j) {
        if (!v.is_number_integer()) {
          throw ParseError(std::string(what) + ": non-integer entry");
        }
        int a = v.get<int>();
        if (a < 0 || a >= range) {
          throw ParseError(std::string(what) + ": entry " + std::to_string(a)
                           + " out of range");
        }
        out.push_back(a);
      }
      return out;
    }

    std::vector<int> remap(std::vector<int> const& m,
                           std::vector<int> const& pdom,
                           std::vector<int> const& pcod) {
      std::vector<int> out(m.size());
      for (std::size_t a = 0; a < m.size(); ++a) {
        out[pdom[a]] = pcod[m[a]];
      }
      return out;
    }

    json matrix(std::vector<int> const& flat, std::size_t n) {
      json rows = json::array();
      for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(std::vector<int>(flat.begin() + i * n, flat.begin() + (i + 1) * n));
      }
      return rows;
    }

    struct LoadedX {
      CrossedModule    X;
      std::vector<int> pG, pG0;
    };

    LoadedX load_x(json const& jin, Resolver const& r) {
      json j  = deref(jin, r);
      auto G  = load_group(field(j, "G"), r);
      auto G0 = load_group(field(j, "G0"), r);
      int  n  = G.group->order();
      int  n0 = G0.group->order();
      auto del = remap(ints(field(j, "boundary"), n, n0, "boundary"), G.relabel, G0.relabel);
      auto const& ja = field(j, "action");
      if (!ja.is_array() || int(ja.size()) != n0) {
        throw ParseError("action: expected one row per element of G0");
      }
      std::vector<std::vector<int>> act(n0, std::vector<int>(n));
      for (int x = 0; x < n0; ++x) {
        auto row = ints(ja[x], n, n, "action row");
        for (int g = 0; g < n; ++g) {
          act[G0.relabel[x]][G.relabel[g]] = G.relabel[row[g]];
        }
      }
      std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                                     : "";
      return LoadedX{make_xmod(GroupHom{G.group, G0.group, del},
                               GroupAction{G0.group, G.group, act}, name),
                     G.relabel, G0.relabel};
    }

    struct Loaded2 {
      Strict2Group     T;
      std::vector<int> p1, p0;
    };

    Loaded2 load_t(json const& jin, Resolver const& r) {
      json j = deref(jin, r);
      if (j.is_object() && j.contains("xmod")) {
        j = deref(j["xmod"], r);
      }
      if (kind_of(j) == "xmod") {
        auto L = load_x(j, r);
        // a crossed module stands for its denormalization
        std::vector<int> p1(L.X.G->order() * L.X.G0->order());
        for (int a = 0; a < L.X.G->order(); ++a) {
          for (int x = 0; x < L.X.G0->order(); ++x) {
            p1[arrow(L.X, a, x)] = arrow(L.X, L.pG[a], L.pG0[x]);
          }
        }
        return Loaded2{denormalize(L.X), p1, L.pG0};
      }
      auto G1 = load_group(field(j, "G1"), r);
      auto G0 = load_group(field(j, "G0"), r);
      int  n1 = G1.group->order(), n0 = G0.group->order();
      auto d  = remap(ints(field(j, "d"), n1, n0, "d"), G1.relabel, G0.relabel);
      auto c  = remap(ints(field(j, "c"), n1, n0, "c"), G1.relabel, G0.relabel);
      auto e  = remap(ints(field(j, "e"), n0, n1, "e"), G0.relabel, G1.relabel);
      for (auto const* m : {&d, &c}) {
        if (!is_hom(*G1.group, *G0.group, *m)) {
          throw ParseError("2-group structure map is not a homomorphism");
        }
      }
      if (!is_hom(*G0.group, *G1.group, e)) {
        throw ParseError("2-group unit is not a homomorphism");
      }
      return Loaded2{make_strict2group(GroupHom{G1.group, G0.group, d},
                                       GroupHom{G1.group, G0.group, c},
                                       GroupHom{G0.group, G1.group, e}),
                     G1.relabel, G0.relabel};
    }
  }  // namespace

  json to_json(Group const& G) {
    json j{{"kind", "group"},
           {"name", G->name()},
           {"order", G->order()},
           {"table", matrix(G->flat_table(), G->order())}};
    if (!G->labels().empty()) {
      j["labels"] = G->labels();
    }
    return j;
  }

  json to_json(CrossedModule const& X) {
    json j{{"kind", "xmod"},
           {"G", to_json(X.G)},
           {"G0", to_json(X.G0)},
           {"boundary", X.boundary.map},
           {"action", X.action.act}};
    if (!X.name.empty()) {
      j["name"] = X.name;
    }
    return j;
  }

  json to_json(Strict2Group const& T) {
    return json{{"kind", "2group"}, {"G1", to_json(T.G1)}, {"G0", to_json(T.G0)},
                {"d", T.d.map},     {"c", T.c.map},        {"e", T.e.map}};
  }

  json to_json(XModMorphism const& P) {
    return json{{"kind", "morphism"}, {"dom", to_json(P.dom)}, {"cod", to_json(P.cod)},
                {"p", P.p.map},       {"p0", P.p0.map}};
  }

  json to_json(XModTwoCell const& C) {
    return json{{"kind", "two_cell"}, {"P", to_json(C.P)}, {"Q", to_json(C.Q)},
                {"alpha", C.alpha}};
  }

  json to_json(Butterfly const& B) {
    return json{{"kind", "butterfly"},  {"dom", to_json(B.dom)},   {"cod", to_json(B.cod)},
                {"E", to_json(B.E)},    {"kappa", B.kappa.map},    {"iota", B.iota.map},
                {"sigma", B.sigma.map}, {"rho", B.rho.map}};
  }

  json to_json(ButterflyMorphism const& M) {
    return json{{"kind", "butterfly_morphism"}, {"src", to_json(M.src)},
                {"dst", to_json(M.dst)},        {"f", M.f.map}};
  }

  json to_json(MonoidalFunctor const& M) {
    return json{{"kind", "monoidal"}, {"dom", to_json(M.dom)}, {"cod", to_json(M.cod)},
                {"F0", M.F0},         {"F1", M.F1},
                {"F2", matrix(M.F2, M.F0.size())}};
  }

  json to_json(FactorSet const& F) {
    return json{{"kind", "factor_set"}, {"H", to_json(F.H)}, {"G", to_json(F.G)},
                {"phi", F.phi},         {"f", matrix(F.f, F.H->order())}};
  }

  json to_json(Report const& R) {
    json issues = json::array();
    for (auto const& i : R.issues) {
      issues.push_back({{"condition", i.condition}, {"witness", i.witness}});
    }
    return json{{"ok", R.ok()}, {"issues", issues}};
  }

  std::string kind_of(json const& j) {
    if (!j.is_object()) {
      throw UnknownKind("document is not an object");
    }
    if (j.contains("kind")) {
      if (!j["kind"].is_string()) {
        throw UnknownKind("'kind' is not a string");
      }
      auto k = j["kind"].get<std::string>();
      for (char const* known : {"group", "xmod", "2group", "morphism", "two_cell", "butterfly",
                                "butterfly_morphism", "monoidal", "factor_set"}) {
        if (k == known) {
          return k;
        }
      }
      throw UnknownKind("'" + k + "'");
    }
    if (j.contains("table")) {
      return "group";
    }
    if (j.contains("kappa")) {
      return "butterfly";
    }
    if (j.contains("F0")) {
      return "monoidal";
    }
    if (j.contains("boundary")) {
      return "xmod";
    }
    if (j.contains("G1") || j.contains("xmod")) {
      return "2group";
    }
    if (j.contains("p0")) {
      return "morphism";
    }
    if (j.contains("phi")) {
      return "factor_set";
    }
    throw UnknownKind("cannot infer the kind from the keys");
  }

  LoadedGroup load_group(json const& jin, Resolver const& r) {
    json        j = deref(jin, r);
    auto const& t = field(j, "table");
    if (!t.is_array() || t.empty()) {
      throw ParseError("table: expected a non-empty array of rows");
    }
    int n = int(t.size());
    if (j.contains("order") && (!j["order"].is_number_integer() || j["order"].get<int>() != n)) {
      throw ParseError("order disagrees with the table");
    }
    std::vector<std::vector<int>> table;
    for (auto const& row : t) {
      table.push_back(ints(row, n, n, "table row"));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      if (!j["labels"].is_array()) {
        throw ParseError("labels: expected an array");
      }
      for (auto const& l : j["labels"]) {
        if (!l.is_string()) {
          throw ParseError("labels: expected strings");
        }
        labels.push_back(l.get<std::string>());
      }
    }
    std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                                   : "G";
    LoadedGroup out;
    out.group = construct_group(table, name, labels, &out.relabel);
    return out;
  }

  CrossedModule load_xmod(json const& j, Resolver const& r) {
    return load_x(j, r).X;
  }

  Strict2Group load_2group(json const& j, Resolver const& r) {
    return load_t(j, r).T;
  }

  XModMorphism load_morphism(json const& jin, Resolver const& r) {
    json j   = deref(jin, r);
    auto dom = load_x(field(j, "dom"), r);
    auto cod = load_x(field(j, "cod"), r);
    auto p   = remap(ints(field(j, "p"), dom.X.G->order(), cod.X.G->order(), "p"), dom.pG,
                     cod.pG);
    auto p0  = remap(ints(field(j, "p0"), dom.X.G0->order(), cod.X.G0->order(), "p0"),
                     dom.pG0, cod.pG0);
    if (!is_hom(*dom.X.G, *cod.X.G, p) || !is_hom(*dom.X.G0, *cod.X.G0, p0)) {
      throw ParseError("morphism components are not homomorphisms");
    }
    return XModMorphism{dom.X, cod.X, GroupHom{dom.X.G, cod.X.G, p},
                        GroupHom{dom.X.G0, cod.X.G0, p0}};
  }

  Butterfly load_butterfly(json const& jin, Resolver const& r) {
    json      j   = deref(jin, r);
    auto      dom = load_x(field(j, "dom"), r);
    auto      cod = load_x(field(j, "cod"), r);
    auto      E   = load_group(field(j, "E"), r);
    int       ne  = E.group->order();
    Butterfly B;
    B.dom   = dom.X;
    B.cod   = cod.X;
    B.E     = E.group;
    B.kappa = GroupHom{dom.X.G, E.group,
                       remap(ints(field(j, "kappa"), dom.X.G->order(), ne, "kappa"), dom.pG,
                             E.relabel)};
    B.iota  = GroupHom{cod.X.G, E.group,
                      remap(ints(field(j, "iota"), cod.X.G->order(), ne, "iota"), cod.pG,
                            E.relabel)};
    B.sigma = GroupHom{E.group, dom.X.G0,
                       remap(ints(field(j, "sigma"), ne, dom.X.G0->order(), "sigma"),
                             E.relabel, dom.pG0)};
    B.rho   = GroupHom{E.group, cod.X.G0,
                     remap(ints(field(j, "rho"), ne, cod.X.G0->order(), "rho"), E.relabel,
                           cod.pG0)};
    return B;
  }

  MonoidalFunctor load_monoidal(json const& jin, Resolver const& r) {
    json            j   = deref(jin, r);
    auto            dom = load_t(field(j, "dom"), r);
    auto            cod = load_t(field(j, "cod"), r);
    int             n0  = dom.T.G0->order();
    MonoidalFunctor M;
    M.dom = dom.T;
    M.cod = cod.T;
    M.F0  = remap(ints(field(j, "F0"), n0, cod.T.G0->order(), "F0"), dom.p0, cod.p0);
    M.F1  = remap(ints(field(j, "F1"), dom.T.G1->order(), cod.T.G1->order(), "F1"), dom.p1,
                  cod.p1);
    auto const& jf = field(j, "F2");
    if (!jf.is_array() || int(jf.size()) != n0) {
      throw ParseError("F2: expected one row per object");
    }
    M.F2.assign(std::size_t(n0) * n0, 0);
    for (int x = 0; x < n0; ++x) {
      auto row = ints(jf[x], n0, cod.T.G1->order(), "F2 row");
      for (int y = 0; y < n0; ++y) {
        M.F2[std::size_t(dom.p0[x]) * n0 + dom.p0[y]] = cod.p1[row[y]];
      }
    }
    return M;
  }

  std::string canonical_dump(json const& j) {
    return j.dump();
  }

  json parse_json(std::string const& text) {
    try {
      return json::parse(text);
    } catch (json::parse_error const& e) {
      throw ParseError(e.what());
    }
  }

}  // namespace bfly
