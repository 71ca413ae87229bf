#include "butterfly/extension.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bfly {

  namespace {
    std::vector<int> preimage(GroupHom const& f) {
      std::vector<int> pre(f.cod->order(), -1);
      for (int a = 0; a < f.dom->order(); ++a) {
        pre[f(a)] = a;
      }
      return pre;
    }

    // Index of the automorphism g -> a g a^-1 for each a.
    std::vector<int> inner_indices(Group const& G, AutGroup const& A) {
      std::vector<int> inn(G->order());
      std::vector<int> perm(G->order());
      for (int a = 0; a < G->order(); ++a) {
        for (int g = 0; g < G->order(); ++g) {
          perm[g] = G->conj(a, g);
        }
        inn[a] = A.index_of(perm);
      }
      return inn;
    }

    void check_bound(Group const& H, Group const& G, int bound) {
      if (H->order() * G->order() > bound) {
        throw BoundExceeded("|H||G| = " + std::to_string(H->order() * G->order())
                            + " exceeds bound " + std::to_string(bound));
      }
    }
  }  // namespace

  CrossedModule discrete_xmod(Group const& H) {
    return make_xmod(zero_hom(trivial_group(), H), trivial_action(H, trivial_group()),
                     "D(" + H->name() + ")");
  }

  CrossedModule aut_xmod(Group const& G, int bound) {
    AutGroup A = automorphism_group(G, bound);
    return make_xmod(GroupHom{G, A.group, inner_indices(G, A)}, A.ev,
                     "A(" + G->name() + ")");
  }

  Report validate_extension(ExtensionDatum const& X) {
    Report r;
    if (!same_group(X.iota.dom, X.G) || !same_group(X.iota.cod, X.E)
        || !same_group(X.sigma.dom, X.E) || !same_group(X.sigma.cod, X.H)) {
      r.add("shape", "maps do not match the groups");
      return r;
    }
    if (!is_hom(*X.G, *X.E, X.iota.map)) {
      r.add("hom", "iota");
    }
    if (!is_hom(*X.E, *X.H, X.sigma.map)) {
      r.add("hom", "sigma");
    }
    if (!r.ok()) {
      return r;
    }
    if (!X.iota.is_injective()) {
      r.add("injective", "iota");
    }
    if (!X.sigma.is_surjective()) {
      r.add("surjective", "sigma");
    }
    if (image(X.iota).elements != kernel(X.sigma).elements) {
      r.add("exact", "image(iota) != kernel(sigma)");
    }
    return r;
  }

  bool same_extension(ExtensionDatum const& X, ExtensionDatum const& Y) {
    return same_group(X.H, Y.H) && same_group(X.G, Y.G) && same_group(X.E, Y.E)
        && X.iota.map == Y.iota.map && X.sigma.map == Y.sigma.map;
  }

  Butterfly butterfly_from_extension(ExtensionDatum const& X, int bound) {
    Report r = validate_extension(X);
    if (!r.ok()) {
      throw InvalidConstruction("extension: " + r.issues.front().condition + " "
                                + r.issues.front().witness);
    }
    Butterfly B;
    B.dom = discrete_xmod(X.H);
    B.cod = aut_xmod(X.G, bound);
    B.E   = X.E;
    AutGroup const A   = automorphism_group(X.G, bound);
    auto           pre = preimage(X.iota);
    auto const&    E   = *X.E;
    std::vector<int> rho(E.order());
    std::vector<int> perm(X.G->order());
    for (int e = 0; e < E.order(); ++e) {
      for (int g = 0; g < X.G->order(); ++g) {
        perm[g] = pre[E.conj(e, X.iota(g))];
      }
      rho[e] = A.index_of(perm);
    }
    B.kappa = zero_hom(B.dom.G, X.E);
    B.iota  = X.iota;
    B.sigma = X.sigma;
    B.rho   = GroupHom{X.E, B.cod.G0, std::move(rho)};
    return B;
  }

  ExtensionDatum extension_from_butterfly(Butterfly const& B) {
    if (B.dom.G->order() != 1) {
      throw ShapeMismatch("domain is not discrete");
    }
    CrossedModule AG;
    try {
      AG = aut_xmod(B.cod.G, std::max(kDefaultBound, B.cod.G->order()));
    } catch (BoundExceeded const&) {
      throw ShapeMismatch("codomain kernel too large for Aut");
    }
    if (!same_xmod(AG, B.cod)) {
      throw ShapeMismatch("codomain is not A(G)");
    }
    return ExtensionDatum{B.dom.G0, B.cod.G, B.E, B.iota, B.sigma};
  }

  std::vector<GroupHom> extension_morphisms(ExtensionDatum const& X,
                                            ExtensionDatum const& Y) {
    std::vector<GroupHom> out;
    if (!same_group(X.H, Y.H) || !same_group(X.G, Y.G) || X.E->order() != Y.E->order()) {
      return out;
    }
    std::vector<int> forced(X.E->order(), -1);
    for (int g = 0; g < X.G->order(); ++g) {
      forced[X.iota(g)] = Y.iota(g);
    }
    HomSearch opts;
    opts.allow = [&](int x, int y) {
      return (forced[x] < 0 || forced[x] == y) && Y.sigma(y) == X.sigma(x);
    };
    opts.priority = X.iota.map;
    for_each_hom(X.E, Y.E, opts, [&](std::vector<int> const& f) {
      bool ok = true;
      for (int g = 0; g < X.G->order() && ok; ++g) {
        ok = f[X.iota(g)] == Y.iota(g);
      }
      for (int e = 0; e < X.E->order() && ok; ++e) {
        ok = Y.sigma(f[e]) == X.sigma(e);
      }
      if (ok) {
        out.push_back(GroupHom{X.E, Y.E, f});
      }
      return true;
    });
    return out;
  }

  bool FactorSet::trivial_cocycle() const {
    return std::all_of(f.begin(), f.end(), [](int v) { return v == 0; });
  }

  Report validate_factor_set(FactorSet const& F, AutGroup const& A) {
    Report      r;
    int         n = F.H->order();
    auto const& G = *F.G;
    if (int(F.phi.size()) != n || F.f.size() != std::size_t(n) * n) {
      r.add("shape", "sizes");
      return r;
    }
    if (F.phi[0] != 0) {
      r.add("normalized", "phi(1)");
    }
    for (int x = 0; x < n; ++x) {
      if (F.at(0, x) != 0 || F.at(x, 0) != 0) {
        r.add("normalized", "f at x=" + std::to_string(x));
      }
    }
    auto const& K = *F.H;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        auto const& px  = A.perms[F.phi[x]];
        auto const& py  = A.perms[F.phi[y]];
        auto const& pxy = A.perms[F.phi[K.mul(x, y)]];
        int         fxy = F.at(x, y);
        for (int g = 0; g < G.order(); ++g) {
          if (px[py[g]] != G.conj(fxy, pxy[g])) {
            r.add("schreier-action", "x=" + std::to_string(x) + " y=" + std::to_string(y));
            break;
          }
        }
        for (int z = 0; z < n; ++z) {
          int lhs = G.mul(px[F.at(y, z)], F.at(x, K.mul(y, z)));
          int rhs = G.mul(fxy, F.at(K.mul(x, y), z));
          if (lhs != rhs) {
            r.add("schreier-cocycle", "x=" + std::to_string(x) + " y=" + std::to_string(y)
                                          + " z=" + std::to_string(z));
          }
        }
      }
    }
    return r;
  }

  ExtensionDatum extension_from_factor_set(FactorSet const& F, AutGroup const& A) {
    int         n = F.H->order();
    int         m = F.G->order();
    auto const& G = *F.G;
    auto const& K = *F.H;
    std::vector<std::vector<int>> table(n * m, std::vector<int>(n * m));
    for (int g = 0; g < m; ++g) {
      for (int x = 0; x < n; ++x) {
        for (int g2 = 0; g2 < m; ++g2) {
          for (int y = 0; y < n; ++y) {
            int top = G.mul(G.mul(g, A.perms[F.phi[x]][g2]), F.at(x, y));
            table[g * n + x][g2 * n + y] = top * n + K.mul(x, y);
          }
        }
      }
    }
    Group            E = construct_group(table, "E");
    std::vector<int> io(m), sg(n * m);
    for (int g = 0; g < m; ++g) {
      io[g] = g * n;
      for (int x = 0; x < n; ++x) {
        sg[g * n + x] = x;
      }
    }
    return ExtensionDatum{F.H, F.G, E, GroupHom{F.G, E, io}, GroupHom{E, F.H, sg}};
  }

  FactorSet factor_set_of(ExtensionDatum const& X,
                          std::vector<int> const& s,
                          AutGroup const& A) {
    auto const& E   = *X.E;
    auto        pre = preimage(X.iota);
    int         n   = X.H->order();
    FactorSet   F{X.H, X.G, std::vector<int>(n), std::vector<int>(std::size_t(n) * n)};
    std::vector<int> perm(X.G->order());
    for (int x = 0; x < n; ++x) {
      for (int g = 0; g < X.G->order(); ++g) {
        perm[g] = pre[E.conj(s[x], X.iota(g))];
      }
      F.phi[x] = A.index_of(perm);
      for (int y = 0; y < n; ++y) {
        int v = E.mul(E.mul(s[x], s[y]), E.inv(s[X.H->mul(x, y)]));
        F.f[std::size_t(x) * n + y] = pre[v];
      }
    }
    return F;
  }

  std::vector<FactorSetClass> factor_set_oracle(Group const& H, Group const& G, int bound) {
    check_bound(H, G, bound);
    AutGroup    A   = automorphism_group(G, std::max(kDefaultBound, G->order()));
    auto        inn = inner_indices(G, A);
    auto const& K   = *H;
    auto const& Gg  = *G;
    auto const& Au  = *A.group;
    int         n   = K.order();
    int         m   = Gg.order();

    // g with inner automorphism equal to a given automorphism
    std::vector<std::vector<int>> inner_fiber(Au.order());
    for (int g = 0; g < m; ++g) {
      inner_fiber[inn[g]].push_back(g);
    }

    std::vector<FactorSet> all;
    std::vector<int>       phi(n, 0);
    std::vector<int>       f(std::size_t(n) * n, -1);
    for (int x = 0; x < n; ++x) {
      f[x] = 0;
      f[std::size_t(x) * n] = 0;
    }
    auto fat = [&](int x, int y) { return f[std::size_t(x) * n + y]; };
    auto cocycle_ok = [&]() {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          int fxy = fat(x, y);
          if (fxy < 0) {
            continue;
          }
          for (int z = 0; z < n; ++z) {
            int a = fat(y, z), b = fat(x, K.mul(y, z)), c = fat(K.mul(x, y), z);
            if (a < 0 || b < 0 || c < 0) {
              continue;
            }
            if (Gg.mul(A.perms[phi[x]][a], b) != Gg.mul(fxy, c)) {
              return false;
            }
          }
        }
      }
      return true;
    };
    std::vector<std::pair<int, int>> pairs;
    for (int x = 1; x < n; ++x) {
      for (int y = 1; y < n; ++y) {
        pairs.push_back({x, y});
      }
    }
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
      if (k == pairs.size()) {
        all.push_back(FactorSet{H, G, phi, f});
        return;
      }
      auto [x, y] = pairs[k];
      int  want   = Au.mul(Au.mul(phi[x], phi[y]), Au.inv(phi[K.mul(x, y)]));
      for (int g : inner_fiber[want]) {
        f[std::size_t(x) * n + y] = g;
        if (cocycle_ok()) {
          fill(k + 1);
        }
      }
      f[std::size_t(x) * n + y] = -1;
    };
    // phi(x) phi(y) phi(xy)^-1 must be inner whenever all three are assigned
    std::function<void(int)> pick = [&](int x) {
      if (x == n) {
        fill(0);
        return;
      }
      for (int a = 0; a < Au.order(); ++a) {
        phi[x] = a;
        bool ok = true;
        for (int u = 0; u <= x && ok; ++u) {
          for (int v = 0; v <= x && ok; ++v) {
            int uv = K.mul(u, v);
            if (uv <= x) {
              ok = !inner_fiber[Au.mul(Au.mul(phi[u], phi[v]), Au.inv(phi[uv]))].empty();
            }
          }
        }
        if (ok) {
          pick(x + 1);
        }
      }
    };
    pick(1);

    // orbits under normalized h: H -> G
    std::vector<int> h(n, 0);
    auto transform = [&](FactorSet const& F) {
      FactorSet T = F;
      for (int x = 0; x < n; ++x) {
        T.phi[x] = Au.mul(inn[h[x]], F.phi[x]);
        for (int y = 0; y < n; ++y) {
          int v = Gg.mul(Gg.mul(h[x], A.perms[F.phi[x]][h[y]]), F.at(x, y));
          T.f[std::size_t(x) * n + y] = Gg.mul(v, Gg.inv(h[K.mul(x, y)]));
        }
      }
      return T;
    };
    using Key = std::pair<std::vector<int>, std::vector<int>>;
    std::map<Key, int> classes;
    for (auto const& F : all) {
      Key best{F.phi, F.f};
      std::fill(h.begin(), h.end(), 0);
      while (true) {
        FactorSet T = transform(F);
        best        = std::min(best, Key{T.phi, T.f});
        int x       = n - 1;
        while (x >= 1 && ++h[x] == m) {
          h[x] = 0;
          --x;
        }
        if (x < 1) {
          break;
        }
      }
      ++classes[best];
    }
    std::vector<FactorSetClass> out;
    for (auto const& [key, count] : classes) {
      out.push_back(FactorSetClass{FactorSet{H, G, key.first, key.second}, count});
    }
    return out;
  }

  namespace {
    struct CatalogEntry {
      std::string name;
      Group       group;
    };

    Group metacyclic(int n, int m, int k, std::string name) {
      auto             Zn = cyclic(n);
      auto             Zm = cyclic(m);
      std::vector<std::vector<int>> act(m, std::vector<int>(n));
      // cyclic(n) labels residues by index
      for (int j = 0; j < m; ++j) {
        int kj = 1;
        for (int t = 0; t < j; ++t) {
          kj = kj * k % n;
        }
        for (int a = 0; a < n; ++a) {
          act[j][a] = a * kj % n;
        }
      }
      auto S = semidirect_product(GroupAction{Zm, Zn, act});
      return make_group_unchecked(S.group->order(), S.group->flat_table(), std::move(name));
    }

    Group generalized_quaternion(int n) {  // order 4n, n even
      int                           N = 2 * n;
      std::vector<std::vector<int>> t(2 * N, std::vector<int>(2 * N));
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < 2; ++j) {
          for (int k = 0; k < N; ++k) {
            for (int l = 0; l < 2; ++l) {
              int a = j == 0 ? (i + k) % N : ((i - k) % N + N) % N;
              int b = j + l;
              if (b == 2) {
                a = (a + n) % N;
                b = 0;
              }
              t[i + N * j][k + N * l] = a + N * b;
            }
          }
        }
      }
      return construct_group(t, "Q" + std::to_string(2 * N));
    }

    std::vector<CatalogEntry> const& catalog() {
      static std::vector<CatalogEntry> const entries = [] {
        std::vector<CatalogEntry> v;
        auto add = [&](std::string name, Group g) { v.push_back({std::move(name), g}); };
        for (int k : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}) {
          add(k == 1 ? "1" : "Z" + std::to_string(k), cyclic(k));
        }
        add("Z2xZ2", klein());
        add("S3", symmetric3());
        for (std::string s : {"Z2xZ4", "Z2xZ2xZ2", "Z3xZ3", "Z2xZ6", "Z2xZ8", "Z4xZ4",
                              "Z2xZ2xZ4", "Z2xZ2xZ2xZ2"}) {
          add(s, named_group(s));
        }
        add("D4", dihedral(4));
        add("Q8", quaternion());
        add("D5", dihedral(5));
        add("D6", dihedral(6));
        add("D7", dihedral(7));
        add("D8", dihedral(8));
        add("A4", permutation_group({{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4"));
        add("Dic3", metacyclic(3, 4, 2, "Dic3"));
        add("SD16", metacyclic(8, 2, 3, "SD16"));
        add("M16", metacyclic(8, 2, 5, "M16"));
        add("Z4:Z4", metacyclic(4, 4, 3, "Z4:Z4"));
        add("Q16", generalized_quaternion(4));
        add("D4xZ2", product_group(dihedral(4), cyclic(2)));
        add("Q8xZ2", product_group(quaternion(), cyclic(2)));
        {
          // Z4 acting on Z2xZ2 by swapping the factors
          auto V = product_group(cyclic(2), cyclic(2));
          std::vector<std::vector<int>> act(4, std::vector<int>(4));
          for (int j = 0; j < 4; ++j) {
            for (int a = 0; a < 4; ++a) {
              act[j][a] = j % 2 == 0 ? a : (a % 2) * 2 + a / 2;
            }
          }
          auto S = semidirect_product(GroupAction{cyclic(4), V, act});
          add("(Z2xZ2):Z4", S.group);
        }
        {
          // Z4 o D4 = (Z4 x D4) / <(2, z)> with z central of order 2
          auto P = product_group(cyclic(4), dihedral(4));
          auto D = dihedral(4);
          int  z = -1;
          for (int a = 1; a < 8 && z < 0; ++a) {
            bool central = true;
            for (int b = 0; b < 8; ++b) {
              central = central && D->mul(a, b) == D->mul(b, a);
            }
            if (central) {
              z = a;
            }
          }
          auto Q = quotient(P, generated_subgroup(P, {2 * 8 + z}));
          add("Z4oD4", Q.group);
        }
        return v;
      }();
      return entries;
    }
  }  // namespace

  std::string identify_group(Group const& E) {
    auto profile = E->order_profile();
    for (auto const& c : catalog()) {
      if (c.group->order() != E->order() || c.group->order_profile() != profile) {
        continue;
      }
      if (isomorphism_search(E, c.group, std::max(kDefaultBound, E->order()))) {
        return c.name;
      }
    }
    return "order-" + std::to_string(E->order()) + (E->is_abelian() ? " abelian" : " group");
  }

  Classification classify_extensions(Group const& H, Group const& G, bool oracle, int bound) {
    check_bound(H, G, bound);
    int           abound = std::max(kDefaultBound, G->order());
    CrossedModule D      = discrete_xmod(H);
    CrossedModule AG     = aut_xmod(G, abound);
    AutGroup      A      = automorphism_group(G, abound);
    auto          Dn     = denormalize(D);
    auto          An     = denormalize(AG);

    // Iso-invariant of a butterfly into A(G): per sigma-fiber, the sorted
    // (rho, order) multiset.
    auto invariant = [](Butterfly const& B) {
      std::vector<std::vector<std::pair<int, int>>> inv(B.dom.G0->order());
      for (int e = 0; e < B.E->order(); ++e) {
        inv[B.sigma(e)].push_back({B.rho(e), B.E->elem_order(e)});
      }
      for (auto& v : inv) {
        std::sort(v.begin(), v.end());
      }
      return inv;
    };

    Classification out;
    std::map<std::vector<std::vector<std::pair<int, int>>>, std::vector<std::size_t>> buckets;
    for (auto const& M : monoidal_functors_from_discrete(Dn, An)) {
      Butterfly B   = butterfly_from_monoidal(M).butterfly;
      auto      key = invariant(B);
      auto&     bucket = buckets[key];
      bool      placed = false;
      for (std::size_t k : bucket) {
        if (isomorphic_butterflies(out.classes[k].butterfly, B)) {
          ++out.classes[k].members;
          placed = true;
          break;
        }
      }
      if (placed) {
        continue;
      }
      ExtensionClass C;
      C.butterfly = B;
      C.rep       = extension_from_butterfly(B);
      C.members   = 1;
      bucket.push_back(out.classes.size());
      out.classes.push_back(std::move(C));
    }
    for (auto& C : out.classes) {
      // canonical section of the reconstruction is y -> (y, e F0 y); any
      // normalized set section gives a factor set in the same class
      std::vector<int> s(H->order());
      for (int e = 0; e < C.rep.E->order(); ++e) {
        int x = C.rep.sigma(e);
        if (x != 0 && (s[x] == 0)) {
          s[x] = e;
        }
      }
      C.factor_set = factor_set_of(C.rep, s, A);
      C.split      = !all_sections(C.butterfly).empty();
      C.e_type     = identify_group(C.rep.E);
    }
    if (oracle) {
      out.oracle_classes = factor_set_oracle(H, G, bound).size();
      out.oracle_run     = true;
    }
    return out;
  }

}  // namespace bfly
