#include "butterfly/xmod.hpp"

#include <algorithm>

namespace bfly {

  namespace {
    std::string pair_str(char const* a, int x, char const* b, int y) {
      return std::string(a) + "=" + std::to_string(x) + " " + b + "=" + std::to_string(y);
    }
  }  // namespace

  CrossedModule make_xmod(GroupHom boundary, GroupAction action, std::string name) {
    CrossedModule X;
    X.G        = boundary.dom;
    X.G0       = boundary.cod;
    X.boundary = std::move(boundary);
    X.action   = std::move(action);
    X.name     = name.empty() ? "(" + X.G->name() + "->" + X.G0->name() + ")" : name;
    return X;
  }

  bool same_xmod(CrossedModule const& a, CrossedModule const& b) {
    return same_group(a.G, b.G) && same_group(a.G0, b.G0)
           && a.boundary.map == b.boundary.map && a.action.act == b.action.act;
  }

  CrossedModule identity_xmod(Group const& G) {
    return make_xmod(identity_hom(G), conjugation_action(G), "id(" + G->name() + ")");
  }

  Report validate_crossed_module(CrossedModule const& X) {
    Report r;
    if (!same_group(X.action.actor, X.G0) || !same_group(X.action.target, X.G)) {
      r.add("shape", "action does not match the groups");
      return r;
    }
    if (!is_hom(*X.G, *X.G0, X.boundary.map)) {
      r.add("boundary", "not a homomorphism");
      return r;
    }
    Report ra = validate_action(X.action);
    if (!ra.ok()) {
      r.merge(ra, "action:");
      return r;
    }
    auto const& G  = *X.G;
    auto const& G0 = *X.G0;
    for (int x = 0; x < G0.order(); ++x) {
      for (int g = 0; g < G.order(); ++g) {
        if (X.del(X.act(x, g)) != G0.conj(x, X.del(g))) {
          r.add("precrossed", pair_str("x", x, "g", g));
        }
      }
    }
    for (int g = 0; g < G.order(); ++g) {
      for (int h = 0; h < G.order(); ++h) {
        if (X.act(X.del(g), h) != G.conj(g, h)) {
          r.add("peiffer", pair_str("g", g, "g'", h));
        }
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms
  ////////////////////////////////////////////////////////////////////////

  Report validate_morphism(XModMorphism const& P) {
    Report r;
    if (!same_group(P.p.dom, P.dom.G) || !same_group(P.p.cod, P.cod.G)
        || !same_group(P.p0.dom, P.dom.G0) || !same_group(P.p0.cod, P.cod.G0)) {
      r.add("shape", "component groups do not match");
      return r;
    }
    if (!is_hom(*P.dom.G, *P.cod.G, P.p.map)) {
      r.add("top", "not a homomorphism");
    }
    if (!is_hom(*P.dom.G0, *P.cod.G0, P.p0.map)) {
      r.add("bottom", "not a homomorphism");
    }
    for (int h = 0; h < P.dom.G->order(); ++h) {
      if (P.cod.del(P.p(h)) != P.p0(P.dom.del(h))) {
        r.add("square", "h=" + std::to_string(h));
      }
    }
    for (int x = 0; x < P.dom.G0->order(); ++x) {
      for (int h = 0; h < P.dom.G->order(); ++h) {
        if (P.p(P.dom.act(x, h)) != P.cod.act(P.p0(x), P.p(h))) {
          r.add("equivariance", pair_str("x", x, "h", h));
        }
      }
    }
    return r;
  }

  XModMorphism identity_morphism(CrossedModule const& X) {
    return XModMorphism{X, X, identity_hom(X.G), identity_hom(X.G0)};
  }

  XModMorphism zero_morphism(CrossedModule const& dom, CrossedModule const& cod) {
    return XModMorphism{dom, cod, zero_hom(dom.G, cod.G), zero_hom(dom.G0, cod.G0)};
  }

  XModMorphism compose_morphisms(XModMorphism const& P, XModMorphism const& Q) {
    if (!same_xmod(P.cod, Q.dom)) {
      throw NotComposable("morphism codomain differs from next domain");
    }
    return XModMorphism{P.dom, Q.cod, then(P.p, Q.p), then(P.p0, Q.p0)};
  }

  bool same_morphism(XModMorphism const& P, XModMorphism const& Q) {
    return same_xmod(P.dom, Q.dom) && same_xmod(P.cod, Q.cod) && P.p.map == Q.p.map
           && P.p0.map == Q.p0.map;
  }

  std::vector<XModMorphism> all_morphisms(CrossedModule const& dom,
                                          CrossedModule const& cod) {
    std::vector<XModMorphism> out;
    auto                      tops = all_homs(dom.G, cod.G);
    for (auto const& p0 : all_homs(dom.G0, cod.G0)) {
      for (auto const& p : tops) {
        XModMorphism P{dom, cod, p, p0};
        if (validate_morphism(P).ok()) {
          out.push_back(std::move(P));
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Strict 2-groups
  ////////////////////////////////////////////////////////////////////////

  Strict2Group make_strict2group(GroupHom d, GroupHom c, GroupHom e) {
    Strict2Group T;
    T.G1        = d.dom;
    T.G0        = d.cod;
    auto const& G1 = *T.G1;
    int         n  = G1.order();
    T.m.assign(static_cast<std::size_t>(n) * n, -1);
    for (int f = 0; f < n; ++f) {
      int u = G1.mul(f, G1.inv(e(c(f))));
      for (int g = 0; g < n; ++g) {
        if (c(f) == d(g)) {
          T.m[static_cast<std::size_t>(f) * n + g] = G1.mul(u, g);
        }
      }
    }
    std::vector<int> inv(n);
    for (int f = 0; f < n; ++f) {
      inv[f] = G1.mul(G1.mul(e(d(f)), G1.inv(f)), e(c(f)));
    }
    T.i = GroupHom{T.G1, T.G1, std::move(inv)};
    T.d = std::move(d);
    T.c = std::move(c);
    T.e = std::move(e);
    return T;
  }

  Report validate_strict2group(Strict2Group const& T) {
    Report      r;
    auto const& G1 = *T.G1;
    auto const& G0 = *T.G0;
    int         n  = G1.order();
    if (!is_hom(G1, G0, T.d.map) || !is_hom(G1, G0, T.c.map)
        || !is_hom(G0, G1, T.e.map)) {
      r.add("structure", "d, c or e is not a homomorphism");
      return r;
    }
    if (!is_hom(G1, G1, T.i.map)) {
      r.add("inverse", "i is not a homomorphism");
    }
    for (int x = 0; x < G0.order(); ++x) {
      if (T.d(T.e(x)) != x || T.c(T.e(x)) != x) {
        r.add("reflexive", "x=" + std::to_string(x));
      }
    }
    if (!r.ok()) {
      return r;
    }
    std::vector<std::pair<int, int>> pairs;
    for (int f = 0; f < n; ++f) {
      for (int g = 0; g < n; ++g) {
        bool defined = T.comp(f, g) >= 0;
        if (defined != T.composable(f, g)) {
          r.add("domain-of-m", pair_str("f", f, "g", g));
        } else if (defined) {
          pairs.emplace_back(f, g);
          int h = T.comp(f, g);
          if (T.d(h) != T.d(f) || T.c(h) != T.c(g)) {
            r.add("endpoints", pair_str("f", f, "g", g));
          }
        }
      }
    }
    if (!r.ok()) {
      return r;
    }
    for (int f = 0; f < n; ++f) {
      if (T.comp(T.e(T.d(f)), f) != f || T.comp(f, T.e(T.c(f))) != f) {
        r.add("unit", "f=" + std::to_string(f));
      }
      int fi = T.i(f);
      if (T.d(fi) != T.c(f) || T.c(fi) != T.d(f) || T.comp(f, fi) != T.e(T.d(f))
          || T.comp(fi, f) != T.e(T.c(f))) {
        r.add("inverse", "f=" + std::to_string(f));
      }
    }
    for (auto [f, g] : pairs) {
      int fg = T.comp(f, g);
      for (int h = 0; h < n; ++h) {
        if (T.composable(g, h) && T.comp(fg, h) != T.comp(f, T.comp(g, h))) {
          r.add("associativity", pair_str("f", f, "g", g) + " h=" + std::to_string(h));
        }
      }
    }
    // internality: m is a homomorphism on the pullback of c and d
    for (auto [f1, g1] : pairs) {
      for (auto [f2, g2] : pairs) {
        if (T.comp(G1.mul(f1, f2), G1.mul(g1, g2))
            != G1.mul(T.comp(f1, g1), T.comp(f2, g2))) {
          r.add("internal", "(" + std::to_string(f1) + "," + std::to_string(g1) + ") (" +
                                std::to_string(f2) + "," + std::to_string(g2) + ")");
        }
      }
    }
    return r;
  }

  CrossedModule normalize(Strict2Group const& T) {
    auto  K  = as_group(kernel(T.c), "ker c");
    auto const& G1 = *T.G1;
    std::vector<int> pos(G1.order(), -1);
    for (int k = 0; k < K.group->order(); ++k) {
      pos[K.incl(k)] = k;
    }
    std::vector<int> del(K.group->order());
    for (int k = 0; k < K.group->order(); ++k) {
      del[k] = T.d(K.incl(k));
    }
    std::vector<std::vector<int>> act(T.G0->order(), std::vector<int>(K.group->order()));
    for (int x = 0; x < T.G0->order(); ++x) {
      for (int k = 0; k < K.group->order(); ++k) {
        act[x][k] = pos[G1.conj(T.e(x), K.incl(k))];
      }
    }
    return make_xmod(GroupHom{K.group, T.G0, std::move(del)},
                     GroupAction{T.G0, K.group, std::move(act)});
  }

  Strict2Group denormalize(CrossedModule const& X) {
    auto S = semidirect_product(X.action);
    Strict2Group T;
    T.G1 = S.group;
    T.G0 = X.G0;
    T.c  = S.c;
    T.e  = S.e;
    int              n = S.group->order();
    auto const&      G = *X.G;
    auto const&      G0 = *X.G0;
    std::vector<int> d(n), inv(n);
    for (int f = 0; f < n; ++f) {
      int a = S.top(f), x = S.bottom(f);
      d[f]   = G0.mul(X.del(a), x);
      inv[f] = S.idx(G.inv(a), d[f]);
    }
    T.d = GroupHom{S.group, X.G0, std::move(d)};
    T.i = GroupHom{S.group, S.group, std::move(inv)};
    // m((a,x),(b,y)) = (ab, y) when x = del(b) y
    T.m.assign(static_cast<std::size_t>(n) * n, -1);
    for (int f = 0; f < n; ++f) {
      for (int g = 0; g < n; ++g) {
        if (T.c(f) == T.d(g)) {
          T.m[static_cast<std::size_t>(f) * n + g]
              = S.idx(G.mul(S.top(f), S.top(g)), S.bottom(g));
        }
      }
    }
    return T;
  }

  Report compare_strict2groups(Strict2Group const&     T,
                               Strict2Group const&     U,
                               std::vector<int> const& phi,
                               std::vector<int> const& phi0) {
    Report r;
    GroupHom f{T.G1, U.G1, phi}, f0{T.G0, U.G0, phi0};
    if (!is_hom(*T.G1, *U.G1, phi) || !f.is_iso()) {
      r.add("arrows", "not an isomorphism of arrow groups");
    }
    if (!is_hom(*T.G0, *U.G0, phi0) || !f0.is_iso()) {
      r.add("objects", "not an isomorphism of object groups");
    }
    if (!r.ok()) {
      return r;
    }
    for (int a = 0; a < T.G1->order(); ++a) {
      if (U.d(phi[a]) != phi0[T.d(a)] || U.c(phi[a]) != phi0[T.c(a)]) {
        r.add("endpoints", "f=" + std::to_string(a));
      }
      if (U.i(phi[a]) != phi[T.i(a)]) {
        r.add("inverse", "f=" + std::to_string(a));
      }
    }
    for (int x = 0; x < T.G0->order(); ++x) {
      if (U.e(phi0[x]) != phi[T.e(x)]) {
        r.add("units", "x=" + std::to_string(x));
      }
    }
    int n = T.G1->order();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (T.comp(a, b) >= 0 && U.comp(phi[a], phi[b]) != phi[T.comp(a, b)]) {
          r.add("composition", pair_str("f", a, "g", b));
        }
      }
    }
    return r;
  }

  std::vector<int> renormalize_map(Strict2Group const& T) {
    auto             K  = as_group(kernel(T.c));
    int              n0 = T.G0->order();
    std::vector<int> phi(static_cast<std::size_t>(K.group->order()) * n0);
    for (int a = 0; a < K.group->order(); ++a) {
      for (int x = 0; x < n0; ++x) {
        phi[static_cast<std::size_t>(a) * n0 + x] = T.G1->mul(K.incl(a), T.e(x));
      }
    }
    return phi;
  }

  ////////////////////////////////////////////////////////////////////////
  // Weak equivalences
  ////////////////////////////////////////////////////////////////////////

  WeakEquivalence is_weak_equivalence(XModMorphism const& P) {
    WeakEquivalence w;
    auto Kd = as_group(kernel(P.dom.boundary), "ker");
    auto Kc = as_group(kernel(P.cod.boundary), "ker");
    std::vector<int> posc(P.cod.G->order(), -1);
    for (int k = 0; k < Kc.group->order(); ++k) {
      posc[Kc.incl(k)] = k;
    }
    std::vector<int> onk(Kd.group->order());
    for (int k = 0; k < Kd.group->order(); ++k) {
      onk[k] = posc[P.p(Kd.incl(k))];
    }
    w.on_kernels = GroupHom{Kd.group, Kc.group, std::move(onk)};

    // coker del = G0 / im del; the image is normal by the precrossed condition
    auto Qd = quotient(P.dom.G0, image(P.dom.boundary));
    auto Qc = quotient(P.cod.G0, image(P.cod.boundary));
    std::vector<int> onc(Qd.group->order());
    for (int q = 0; q < Qd.group->order(); ++q) {
      onc[q] = Qc.proj(P.p0(Qd.reps[q]));
    }
    w.on_cokernels = GroupHom{Qd.group, Qc.group, std::move(onc)};
    w.holds        = w.on_kernels.is_iso() && w.on_cokernels.is_iso();
    return w;
  }

  bool is_discrete_fibration(XModMorphism const& P) {
    return P.p.is_iso();
  }

  ////////////////////////////////////////////////////////////////////////
  // Two-cells
  ////////////////////////////////////////////////////////////////////////

  int m0(CrossedModule const& X, int a, int b) {
    return arrow(X, X.G->mul(a, X.G->inv(b)), X.del(b));
  }

  namespace {
    void endpoint_checks(XModTwoCell const& cell, Strict2Group const& T, Report& r) {
      auto const& H0 = *cell.P.dom.G0;
      if (static_cast<int>(cell.alpha.size()) != H0.order()) {
        r.add("shape", "alpha has wrong length");
        return;
      }
      for (int x = 0; x < H0.order(); ++x) {
        if (cell.alpha[x] < 0 || cell.alpha[x] >= T.G1->order()) {
          r.add("shape", "alpha(" + std::to_string(x) + ") out of range");
          return;
        }
      }
      for (int x = 0; x < H0.order(); ++x) {
        if (T.d(cell.alpha[x]) != cell.P.p0(x)) {
          r.add("d", "x=" + std::to_string(x));
        }
        if (T.c(cell.alpha[x]) != cell.Q.p0(x)) {
          r.add("c", "x=" + std::to_string(x));
        }
      }
      if (r.ok() && !is_hom(H0, *T.G1, cell.alpha)) {
        r.add("hom", "alpha is not a morphism of groups");
      }
    }

    Report peiffer_graph(XModTwoCell const& cell, Strict2Group const& T) {
      Report r;
      endpoint_checks(cell, T, r);
      if (!r.ok()) {
        return r;
      }
      auto const& H = cell.P.dom;
      for (int h = 0; h < H.G->order(); ++h) {
        if (cell.alpha[H.del(h)] != m0(cell.P.cod, cell.P.p(h), cell.Q.p(h))) {
          r.add("peiffer-graph", "h=" + std::to_string(h));
        }
      }
      return r;
    }

    Report naturality(XModTwoCell const& cell, Strict2Group const& T) {
      Report r;
      endpoint_checks(cell, T, r);
      if (!r.ok()) {
        return r;
      }
      auto const& H  = cell.P.dom;
      auto const& G  = cell.P.cod;
      int         n0 = H.G0->order();
      for (int h = 0; h < H.G->order(); ++h) {
        for (int x = 0; x < n0; ++x) {
          // arrow f = (h, x): d f = del(h) x, c f = x
          int df = H.G0->mul(H.del(h), x);
          int p1 = arrow(G, cell.P.p(h), cell.P.p0(x));
          int q1 = arrow(G, cell.Q.p(h), cell.Q.p0(x));
          int l  = T.comp(p1, cell.alpha[x]);
          int rr = T.comp(cell.alpha[df], q1);
          if (l < 0 || rr < 0 || l != rr) {
            r.add("naturality", pair_str("h", h, "x", x));
          }
        }
      }
      return r;
    }
  }  // namespace

  Report validate_two_cell(XModTwoCell const& cell) {
    Strict2Group T = denormalize(cell.P.cod);
    Report       r = peiffer_graph(cell, T);
    if (r.ok() != naturality(cell, T).ok()) {
      r.add("naturality-mismatch", "groupoid-level check disagrees");
    }
    return r;
  }

  Report check_naturality(XModTwoCell const& cell) {
    return naturality(cell, denormalize(cell.P.cod));
  }

  std::vector<std::vector<int>> enumerate_alphas(
      XModMorphism const&                                  P,
      XModMorphism const&                                  Q,
      std::function<bool(std::vector<int> const&)> const& keep) {
    auto const& G  = P.cod;
    int         n0 = P.dom.G0->order();
    std::vector<std::vector<int>> fibre(n0);
    for (int x = 0; x < n0; ++x) {
      int tgt = Q.p0(x), src = P.p0(x);
      for (int a = 0; a < G.G->order(); ++a) {
        if (G.G0->mul(G.del(a), tgt) == src) {
          fibre[x].push_back(arrow(G, a, tgt));
        }
      }
    }
    std::vector<std::vector<int>> out;
    std::vector<int>              alpha(n0, 0);
    std::vector<std::size_t>      pick(n0, 0);
    for (int x = 0; x < n0; ++x) {
      if (fibre[x].empty()) {
        return out;
      }
    }
    while (true) {
      for (int x = 0; x < n0; ++x) {
        alpha[x] = fibre[x][pick[x]];
      }
      if (keep(alpha)) {
        out.push_back(alpha);
      }
      int x = 0;
      while (x < n0 && ++pick[x] == fibre[x].size()) {
        pick[x++] = 0;
      }
      if (x == n0) {
        break;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::vector<int>> all_two_cells(XModMorphism const& P,
                                              XModMorphism const& Q) {
    Strict2Group T = denormalize(P.cod);
    return enumerate_alphas(P, Q, [&](std::vector<int> const& a) {
      return peiffer_graph(XModTwoCell{P, Q, a}, T).ok();
    });
  }

  std::vector<std::vector<int>> all_natural_transformations(XModMorphism const& P,
                                                            XModMorphism const& Q) {
    Strict2Group T = denormalize(P.cod);
    return enumerate_alphas(P, Q, [&](std::vector<int> const& a) {
      return naturality(XModTwoCell{P, Q, a}, T).ok();
    });
  }

  XModTwoCell identity_two_cell(XModMorphism const& P) {
    std::vector<int> alpha(P.dom.G0->order());
    for (int x = 0; x < P.dom.G0->order(); ++x) {
      alpha[x] = arrow(P.cod, 0, P.p0(x));
    }
    return XModTwoCell{P, P, std::move(alpha)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Pullback along the bottom
  ////////////////////////////////////////////////////////////////////////

  PulledBackXMod pullback_crossed_module(CrossedModule const& X, GroupHom const& sigma) {
    Pullback    pb = pullback(sigma, X.boundary);
    auto const& E  = *sigma.dom;
    int         n  = pb.group->order();
    std::vector<std::vector<int>> act(E.order(), std::vector<int>(n));
    for (int eb = 0; eb < E.order(); ++eb) {
      for (int k = 0; k < n; ++k) {
        auto [e, h] = pb.pairs[k];
        act[eb][k]  = pb.index_of(E.conj(eb, e), X.act(sigma(eb), h));
      }
    }
    CrossedModule Xb = make_xmod(pb.p1, GroupAction{sigma.dom, pb.group, std::move(act)},
                                 "pullback" + X.name);
    XModMorphism  to{Xb, X, pb.p2, sigma};
    return PulledBackXMod{Xb, to, pb};
  }

}  // namespace bfly
