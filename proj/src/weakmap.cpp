#include "butterfly/weakmap.hpp"

#include <algorithm>
#include <set>

namespace bfly {

  namespace {
    std::string pair_w(int x, int y) {
      return "x=" + std::to_string(x) + " y=" + std::to_string(y);
    }
    std::string triple_w(int x, int y, int z) {
      return pair_w(x, y) + " z=" + std::to_string(z);
    }

    std::vector<int> preimage(GroupHom const& f) {
      std::vector<int> pre(f.cod->order(), -1);
      for (int a = 0; a < f.dom->order(); ++a) {
        pre[f(a)] = a;
      }
      return pre;
    }

    bool same_2group(Strict2Group const& a, Strict2Group const& b) {
      return same_group(a.G1, b.G1) && same_group(a.G0, b.G0) && a.d.map == b.d.map
          && a.c.map == b.c.map && a.e.map == b.e.map;
    }
  }  // namespace

  bool MonoidalFunctor::is_strict() const {
    for (std::size_t x = 0; x < F0.size(); ++x) {
      for (std::size_t y = 0; y < F0.size(); ++y) {
        if (f2(int(x), int(y)) != cod.e(F0[dom.G0->mul(int(x), int(y))])) {
          return false;
        }
      }
    }
    return true;
  }

  Report check_monoidal(MonoidalFunctor const& M) {
    Report      r;
    auto const& T  = M.dom;
    auto const& U  = M.cod;
    int         n0 = T.G0->order();
    int         n1 = T.G1->order();
    if (int(M.F0.size()) != n0 || int(M.F1.size()) != n1
        || M.F2.size() != std::size_t(n0) * n0) {
      r.add("shape", "component sizes do not match the domain");
      return r;
    }
    auto in_range = [](std::vector<int> const& v, int n) {
      return std::all_of(v.begin(), v.end(), [n](int a) { return a >= 0 && a < n; });
    };
    if (!in_range(M.F0, U.G0->order()) || !in_range(M.F1, U.G1->order())
        || !in_range(M.F2, U.G1->order())) {
      r.add("shape", "component value out of range");
      return r;
    }
    auto const& H1 = *T.G1;
    auto const& G1 = *U.G1;

    if (M.F0[0] != 0) {
      r.add("normalization", "F0(1)=" + std::to_string(M.F0[0]));
    }
    for (int x = 0; x < n0; ++x) {
      if (M.f2(0, x) != U.e(M.F0[x])) {
        r.add("normalization", pair_w(0, x));
      }
      if (M.f2(x, 0) != U.e(M.F0[x])) {
        r.add("normalization", pair_w(x, 0));
      }
    }

    for (int f = 0; f < n1; ++f) {
      int F = M.F1[f];
      if (U.d(F) != M.F0[T.d(f)] || U.c(F) != M.F0[T.c(f)]) {
        r.add("functor", "endpoints f=" + std::to_string(f));
      }
    }
    for (int x = 0; x < n0; ++x) {
      if (M.F1[T.e(x)] != U.e(M.F0[x])) {
        r.add("functor", "unit x=" + std::to_string(x));
      }
    }
    if (r.has("functor") || r.has("normalization")) {
      return r;
    }
    for (int f = 0; f < n1; ++f) {
      for (int g = 0; g < n1; ++g) {
        if (T.composable(f, g) && M.F1[T.comp(f, g)] != U.comp(M.F1[f], M.F1[g])) {
          r.add("functor", "composition f=" + std::to_string(f) + " g=" + std::to_string(g));
        }
      }
    }

    for (int x = 0; x < n0; ++x) {
      for (int y = 0; y < n0; ++y) {
        int a = M.f2(x, y);
        if (U.d(a) != U.G0->mul(M.F0[x], M.F0[y]) || U.c(a) != M.F0[T.G0->mul(x, y)]) {
          r.add("F2-endpoints", pair_w(x, y));
        }
      }
    }
    if (r.has("F2-endpoints")) {
      return r;
    }

    // m(F1 f . F1 g, F2(c f, c g)) = m(F2(d f, d g), F1(f g))
    for (int f = 0; f < n1; ++f) {
      for (int g = 0; g < n1; ++g) {
        int lhs = U.comp(G1.mul(M.F1[f], M.F1[g]), M.f2(T.c(f), T.c(g)));
        int rhs = U.comp(M.f2(T.d(f), T.d(g)), M.F1[H1.mul(f, g)]);
        if (lhs != rhs) {
          r.add("naturality", "f=" + std::to_string(f) + " g=" + std::to_string(g));
        }
      }
    }

    // m(F2(x,y) . e F0 z, F2(xy, z)) = m(e F0 x . F2(y,z), F2(x, yz))
    auto const& K0 = *T.G0;
    for (int x = 0; x < n0; ++x) {
      for (int y = 0; y < n0; ++y) {
        for (int z = 0; z < n0; ++z) {
          int lhs = U.comp(G1.mul(M.f2(x, y), U.e(M.F0[z])), M.f2(K0.mul(x, y), z));
          int rhs = U.comp(G1.mul(U.e(M.F0[x]), M.f2(y, z)), M.f2(x, K0.mul(y, z)));
          if (lhs != rhs) {
            r.add("cocycle", triple_w(x, y, z));
          }
        }
      }
    }
    return r;
  }

  Report validate_set_section(Butterfly const& B, std::vector<int> const& s) {
    Report r;
    if (int(s.size()) != B.dom.G0->order()) {
      r.add("shape", "section length " + std::to_string(s.size()));
      return r;
    }
    for (int x = 0; x < int(s.size()); ++x) {
      if (s[x] < 0 || s[x] >= B.E->order() || B.sigma(s[x]) != x) {
        r.add("fiber", "x=" + std::to_string(x));
      }
    }
    if (!s.empty() && s[0] != 0) {
      r.add("normalized", "s(1)=" + std::to_string(s[0]));
    }
    return r;
  }

  std::vector<std::vector<int>> all_set_sections(Butterfly const& B, std::size_t limit) {
    int                           n0 = B.dom.G0->order();
    std::vector<std::vector<int>> fibers(n0);
    for (int e = 0; e < B.E->order(); ++e) {
      fibers[B.sigma(e)].push_back(e);
    }
    fibers[0] = {0};
    std::vector<std::vector<int>> out;
    std::vector<std::size_t>      pos(n0, 0);
    while (out.size() < limit) {
      std::vector<int> s(n0);
      for (int x = 0; x < n0; ++x) {
        s[x] = fibers[x][pos[x]];
      }
      out.push_back(std::move(s));
      int x = n0 - 1;
      while (x >= 0 && ++pos[x] == fibers[x].size()) {
        pos[x] = 0;
        --x;
      }
      if (x < 0) {
        break;
      }
    }
    return out;
  }

  MonoidalFunctor extract_monoidal(Butterfly const& B, std::vector<int> const& s) {
    Report sr = validate_set_section(B, s);
    if (!sr.ok()) {
      throw SectionInvalid(sr.issues.front().condition + " " + sr.issues.front().witness);
    }
    auto const&     H   = B.dom;
    auto const&     G   = B.cod;
    auto const&     E   = *B.E;
    auto            pre = preimage(B.iota);
    MonoidalFunctor M;
    M.dom  = denormalize(H);
    M.cod  = denormalize(G);
    int n0 = H.G0->order();
    M.F0.resize(n0);
    for (int x = 0; x < n0; ++x) {
      M.F0[x] = B.rho(s[x]);
    }
    M.F1.resize(M.dom.G1->order());
    for (int h = 0; h < H.G->order(); ++h) {
      for (int x = 0; x < n0; ++x) {
        int v = E.mul(E.mul(E.inv(B.kappa(h)), s[H.G0->mul(H.del(h), x)]), E.inv(s[x]));
        M.F1[arrow(H, h, x)] = arrow(G, pre[v], M.F0[x]);
      }
    }
    M.F2.resize(std::size_t(n0) * n0);
    for (int x = 0; x < n0; ++x) {
      for (int y = 0; y < n0; ++y) {
        int xy = H.G0->mul(x, y);
        int v  = E.mul(E.mul(s[x], s[y]), E.inv(s[xy]));
        M.F2[std::size_t(x) * n0 + y] = arrow(G, pre[v], M.F0[xy]);
      }
    }
    return M;
  }

  MonoidalFunctor strict_functor(XModMorphism const& P) {
    MonoidalFunctor M;
    M.dom  = denormalize(P.dom);
    M.cod  = denormalize(P.cod);
    M.F0   = P.p0.map;
    int n0 = P.dom.G0->order();
    M.F1.resize(M.dom.G1->order());
    for (int h = 0; h < P.dom.G->order(); ++h) {
      for (int x = 0; x < n0; ++x) {
        M.F1[arrow(P.dom, h, x)] = arrow(P.cod, P.p(h), P.p0(x));
      }
    }
    M.F2.resize(std::size_t(n0) * n0);
    for (int x = 0; x < n0; ++x) {
      for (int y = 0; y < n0; ++y) {
        M.F2[std::size_t(x) * n0 + y] = arrow(P.cod, 0, P.p0(P.dom.G0->mul(x, y)));
      }
    }
    return M;
  }

  bool same_monoidal(MonoidalFunctor const& M, MonoidalFunctor const& N) {
    return same_2group(M.dom, N.dom) && same_2group(M.cod, N.cod) && M.F0 == N.F0
        && M.F1 == N.F1 && M.F2 == N.F2;
  }

  std::optional<std::vector<int>> monoidal_isomorphism(MonoidalFunctor const& M,
                                                       MonoidalFunctor const& N) {
    if (!same_2group(M.dom, N.dom) || !same_2group(M.cod, N.cod)) {
      return std::nullopt;
    }
    auto const& T  = M.dom;
    auto const& U  = M.cod;
    int         n0 = T.G0->order();
    int         n1 = T.G1->order();
    std::vector<std::vector<int>> cand(n0);
    for (int x = 0; x < n0; ++x) {
      for (int a = 0; a < U.G1->order(); ++a) {
        if (U.d(a) == M.F0[x] && U.c(a) == N.F0[x]) {
          cand[x].push_back(a);
        }
      }
    }
    // Arrows sorted by the later of their endpoints, so each is checked once
    // both theta values are known.
    std::vector<std::vector<int>> arrows_at(n0);
    for (int f = 0; f < n1; ++f) {
      arrows_at[std::max(T.d(f), T.c(f))].push_back(f);
    }
    std::vector<int> theta(n0, -1);
    auto             consistent = [&](int x) {
      for (int f : arrows_at[x]) {
        if (U.comp(M.F1[f], theta[T.c(f)]) != U.comp(theta[T.d(f)], N.F1[f])) {
          return false;
        }
      }
      for (int a = 0; a <= x; ++a) {
        for (int b = 0; b <= x; ++b) {
          int ab = T.G0->mul(a, b);
          if (ab > x || (a != x && b != x && ab != x)) {
            continue;
          }
          int lhs = U.comp(M.f2(a, b), theta[ab]);
          int rhs = U.comp(U.G1->mul(theta[a], theta[b]), N.f2(a, b));
          if (lhs != rhs) {
            return false;
          }
        }
      }
      return true;
    };
    std::function<bool(int)> go = [&](int x) {
      if (x == n0) {
        return true;
      }
      for (int a : cand[x]) {
        theta[x] = a;
        if (consistent(x) && go(x + 1)) {
          return true;
        }
      }
      theta[x] = -1;
      return false;
    };
    if (go(0)) {
      return theta;
    }
    return std::nullopt;
  }

  Reconstruction butterfly_from_monoidal(MonoidalFunctor const& M) {
    Report chk = check_monoidal(M);
    if (!chk.ok()) {
      throw InvalidConstruction("monoidal functor: " + chk.issues.front().condition + " "
                                + chk.issues.front().witness);
    }
    auto const& T  = M.dom;
    auto const& U  = M.cod;
    auto const& K0 = *T.G0;
    auto const& G1 = *U.G1;
    int         n0 = K0.order();
    int         m1 = G1.order();

    std::vector<std::pair<int, int>> elems;  // (y, g)
    std::vector<int>                 pos(std::size_t(n0) * m1, -1);
    for (int y = 0; y < n0; ++y) {
      for (int g = 0; g < m1; ++g) {
        if (U.c(g) == M.F0[y]) {
          pos[std::size_t(y) * m1 + g] = int(elems.size());
          elems.push_back({y, g});
        }
      }
    }
    int n = int(elems.size());

    CrossedModule H = normalize(T);
    CrossedModule G = normalize(U);
    auto          Hk = as_group(kernel(T.c));
    auto          Gk = as_group(kernel(U.c));

    std::vector<std::vector<int>> tables;
    std::vector<Reconstruction>   found;
    for (int variant = 0; variant < 4; ++variant) {
      auto corr = [&](int y1, int y2) {
        int a = (variant < 2) ? M.f2(y1, y2) : M.f2(y2, y1);
        return (variant % 2 == 0) ? a : U.i(a);
      };
      std::vector<std::vector<int>> table(n, std::vector<int>(n));
      bool                          applicable = true;
      for (int p = 0; p < n && applicable; ++p) {
        for (int q = 0; q < n && applicable; ++q) {
          auto [y1, g1] = elems[p];
          auto [y2, g2] = elems[q];
          int gg        = G1.mul(g1, g2);
          int k         = corr(y1, y2);
          int y         = K0.mul(y1, y2);
          if (!U.composable(gg, k) || U.c(k) != M.F0[y]) {
            applicable = false;
            break;
          }
          table[p][q] = pos[std::size_t(y) * m1 + U.comp(gg, k)];
        }
      }
      if (!applicable) {
        continue;
      }
      Group P0;
      try {
        std::vector<int> relabel;
        P0 = construct_group(table, "P0", {}, &relabel);
        if (relabel[0] != 0) {
          continue;
        }
      } catch (NotAGroup const&) {
        continue;
      }
      Reconstruction R;
      Butterfly&     B = R.butterfly;
      B.dom = H;
      B.cod = G;
      B.E   = P0;
      std::vector<int> kap(H.G->order()), io(G.G->order()), sg(n), rh(n);
      for (int h = 0; h < H.G->order(); ++h) {
        int f  = Hk.incl(h);  // arrow from del h to 1
        kap[h] = pos[std::size_t(T.d(f)) * m1 + U.i(M.F1[f])];
      }
      for (int a = 0; a < G.G->order(); ++a) {
        io[a] = pos[Gk.incl(a)];
      }
      for (int p = 0; p < n; ++p) {
        sg[p] = elems[p].first;
        rh[p] = U.d(elems[p].second);
      }
      B.kappa = GroupHom{H.G, P0, std::move(kap)};
      B.iota  = GroupHom{G.G, P0, std::move(io)};
      B.sigma = GroupHom{P0, H.G0, std::move(sg)};
      B.rho   = GroupHom{P0, G.G0, std::move(rh)};
      if (!validate_butterfly(B).ok()) {
        continue;
      }
      R.variant = variant;
      R.section.resize(n0);
      for (int y = 0; y < n0; ++y) {
        R.section[y] = pos[std::size_t(y) * m1 + U.e(M.F0[y])];
      }
      for (auto [y, g] : elems) {
        R.elements.push_back({y, g, U.d(g)});
      }
      // The extracted functor lives on denormalize(normalize(.)); carry it back.
      auto back = extract_monoidal(B, R.section);
      auto phid = renormalize_map(T);
      auto phic = renormalize_map(U);
      MonoidalFunctor carried{T, U, back.F0, std::vector<int>(T.G1->order()), {}};
      for (std::size_t f = 0; f < phid.size(); ++f) {
        carried.F1[phid[f]] = phic[back.F1[f]];
      }
      for (int v : back.F2) {
        carried.F2.push_back(phic[v]);
      }
      if (carried.F0 != M.F0 || carried.F1 != M.F1 || carried.F2 != M.F2) {
        continue;
      }
      if (std::find(tables.begin(), tables.end(), P0->flat_table()) != tables.end()) {
        continue;
      }
      tables.push_back(P0->flat_table());
      found.push_back(std::move(R));
    }
    if (found.size() != 1) {
      throw GroupLawSearchFailed(std::to_string(found.size())
                                 + " distinct group laws on P0 pass validation");
    }
    return std::move(found.front());
  }

  std::vector<MonoidalFunctor> monoidal_functors_from_discrete(Strict2Group const& dom,
                                                               Strict2Group const& cod) {
    int n1 = dom.G1->order();
    for (int f = 0; f < n1; ++f) {
      if (dom.d(f) != dom.c(f) || dom.e(dom.d(f)) != f) {
        throw ShapeMismatch("domain 2-group is not discrete");
      }
    }
    auto const&       K0 = *dom.G0;
    auto const&       G1 = *cod.G1;
    int               n0 = K0.order();
    int               m0 = cod.G0->order();
    std::vector<MonoidalFunctor> out;
    std::vector<int>  F0(n0, 0);
    std::vector<int>  F2(std::size_t(n0) * n0, -1);

    // pairs (x, y) with x, y != 1 in row-major order
    std::vector<std::pair<int, int>> todo;
    for (int x = 1; x < n0; ++x) {
      for (int y = 1; y < n0; ++y) {
        todo.push_back({x, y});
      }
    }
    auto f2 = [&](int x, int y) { return F2[std::size_t(x) * n0 + y]; };
    auto coherent_at = [&](int x, int y, int z) {
      int a = f2(x, y), b = f2(K0.mul(x, y), z), c = f2(y, z), d = f2(x, K0.mul(y, z));
      if (a < 0 || b < 0 || c < 0 || d < 0) {
        return true;
      }
      return cod.comp(G1.mul(a, cod.e(F0[z])), b) == cod.comp(G1.mul(cod.e(F0[x]), c), d);
    };
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
      if (k == todo.size()) {
        MonoidalFunctor M{dom, cod, F0, std::vector<int>(n1), F2};
        for (int f = 0; f < n1; ++f) {
          M.F1[f] = cod.e(F0[dom.d(f)]);
        }
        out.push_back(std::move(M));
        return;
      }
      auto [x, y] = todo[k];
      int from    = cod.G0->mul(F0[x], F0[y]);
      int to      = F0[K0.mul(x, y)];
      for (int a = 0; a < G1.order(); ++a) {
        if (cod.d(a) != from || cod.c(a) != to) {
          continue;
        }
        F2[std::size_t(x) * n0 + y] = a;
        bool ok                     = true;
        for (int u = 0; u < n0 && ok; ++u) {
          for (int v = 0; v < n0 && ok; ++v) {
            for (int w = 0; w < n0 && ok; ++w) {
              ok = coherent_at(u, v, w);
            }
          }
        }
        if (ok) {
          fill(k + 1);
        }
      }
      F2[std::size_t(x) * n0 + y] = -1;
    };
    std::function<void(int)> pick = [&](int x) {
      if (x == n0) {
        for (int y = 0; y < n0; ++y) {
          F2[y] = cod.e(F0[y]);
          F2[std::size_t(y) * n0] = cod.e(F0[y]);
        }
        fill(0);
        return;
      }
      for (int a = 0; a < m0; ++a) {
        F0[x] = a;
        pick(x + 1);
      }
    };
    pick(1);
    return out;
  }

}  // namespace bfly
