#include "butterfly/butterfly.hpp"

#include <algorithm>

namespace bfly {

  namespace {
    std::string two(char const* a, int x, char const* b, int y) {
      return std::string(a) + "=" + std::to_string(x) + " " + b + "=" + std::to_string(y);
    }

    // Inverse of an injective map, -1 off the image.
    std::vector<int> preimage_table(GroupHom const& f) {
      std::vector<int> pre(f.cod->order(), -1);
      for (int a = 0; a < f.dom->order(); ++a) {
        pre[f(a)] = a;
      }
      return pre;
    }

    // Pair lookup that refuses pairs outside the pullback, which only
    // happens on malformed input.
    int pair_at(Pullback const& P, int a, int c) {
      int i = P.index_of(a, c);
      if (i < 0) {
        throw InvalidConstruction("pair " + two("a", a, "c", c) + " is not in the pullback");
      }
      return i;
    }

    void require_valid(Butterfly const& B, char const* what) {
      Report r = validate_butterfly(B);
      if (!r.ok()) {
        throw InvalidConstruction(std::string(what) + " produced an invalid butterfly: "
                                  + r.issues.front().condition + " "
                                  + r.issues.front().witness);
      }
    }

    struct Reduced {
      Butterfly butterfly;
      Pullback  pairs;
    };

    Reduced reduced_detailed(XModMorphism const& Q, Butterfly const& B) {
      if (!same_xmod(Q.cod, B.dom)) {
        throw NotComposable("morphism codomain differs from butterfly domain");
      }
      Pullback  pb = pullback(Q.p0, B.sigma);
      Butterfly R;
      R.dom = Q.dom;
      R.cod = B.cod;
      R.E   = pb.group;
      std::vector<int> kap(Q.dom.G->order()), io(B.cod.G->order());
      for (int k = 0; k < Q.dom.G->order(); ++k) {
        kap[k] = pair_at(pb, Q.dom.del(k), B.kappa(Q.p(k)));
      }
      for (int g = 0; g < B.cod.G->order(); ++g) {
        io[g] = pair_at(pb, 0, B.iota(g));
      }
      R.kappa = GroupHom{Q.dom.G, R.E, std::move(kap)};
      R.iota  = GroupHom{B.cod.G, R.E, std::move(io)};
      R.sigma = pb.p1;
      R.rho   = then(pb.p2, B.rho);
      return Reduced{std::move(R), std::move(pb)};
    }
  }  // namespace

  Report validate_butterfly(Butterfly const& B) {
    Report      r;
    auto const& H  = B.dom;
    auto const& G  = B.cod;
    auto const& E  = *B.E;
    if (!same_group(B.kappa.dom, H.G) || !same_group(B.kappa.cod, B.E)
        || !same_group(B.iota.dom, G.G) || !same_group(B.iota.cod, B.E)
        || !same_group(B.sigma.dom, B.E) || !same_group(B.sigma.cod, H.G0)
        || !same_group(B.rho.dom, B.E) || !same_group(B.rho.cod, G.G0)) {
      r.add("shape", "structure maps do not match the groups");
      return r;
    }
    for (auto const* f : {&B.kappa, &B.iota, &B.sigma, &B.rho}) {
      if (!is_hom(*f->dom, *f->cod, f->map)) {
        r.add("hom", f->dom->name() + " -> " + f->cod->name());
      }
    }
    if (!r.ok()) {
      return r;
    }
    for (int h = 0; h < H.G->order(); ++h) {
      if (B.sigma(B.kappa(h)) != H.del(h)) {
        r.add("wings", "kappa;sigma differs at h=" + std::to_string(h));
      }
    }
    for (int g = 0; g < G.G->order(); ++g) {
      if (B.rho(B.iota(g)) != G.del(g)) {
        r.add("wings", "iota;rho differs at g=" + std::to_string(g));
      }
    }
    for (int h = 0; h < H.G->order(); ++h) {
      if (B.rho(B.kappa(h)) != 0) {
        r.add("i", "kappa;rho nonzero at h=" + std::to_string(h));
      }
    }
    if (!B.iota.is_injective()) {
      r.add("ii", "iota is not injective");
    }
    if (!B.sigma.is_surjective()) {
      r.add("ii", "sigma is not surjective");
    }
    if (image(B.iota).elements != kernel(B.sigma).elements) {
      r.add("ii", "image of iota differs from kernel of sigma");
    }
    for (int e = 0; e < E.order(); ++e) {
      for (int h = 0; h < H.G->order(); ++h) {
        if (B.kappa(H.act(B.sigma(e), h)) != E.conj(e, B.kappa(h))) {
          r.add("iii", two("e", e, "h", h));
        }
      }
      for (int g = 0; g < G.G->order(); ++g) {
        if (B.iota(G.act(B.rho(e), g)) != E.conj(e, B.iota(g))) {
          r.add("iv", two("e", e, "g", g));
        }
      }
    }
    for (int h = 0; h < H.G->order(); ++h) {
      for (int g = 0; g < G.G->order(); ++g) {
        if (E.mul(B.kappa(h), B.iota(g)) != E.mul(B.iota(g), B.kappa(h))) {
          r.add("commute", two("h", h, "g", g));
        }
      }
    }
    return r;
  }

  bool same_butterfly(Butterfly const& A, Butterfly const& B) {
    return same_xmod(A.dom, B.dom) && same_xmod(A.cod, B.cod) && same_group(A.E, B.E)
           && A.kappa.map == B.kappa.map && A.iota.map == B.iota.map
           && A.sigma.map == B.sigma.map && A.rho.map == B.rho.map;
  }

  Butterfly identity_butterfly(CrossedModule const& X) {
    Strict2Group T = denormalize(X);
    Butterfly    B;
    B.dom = X;
    B.cod = X;
    B.E   = T.G1;
    std::vector<int> kap(X.G->order()), io(X.G->order());
    for (int h = 0; h < X.G->order(); ++h) {
      kap[h] = arrow(X, X.G->inv(h), X.del(h));
      io[h]  = arrow(X, h, 0);
    }
    B.kappa = GroupHom{X.G, B.E, std::move(kap)};
    B.iota  = GroupHom{X.G, B.E, std::move(io)};
    B.sigma = T.c;
    B.rho   = T.d;
    return B;
  }

  Composite compose_detailed(Butterfly const& B, Butterfly const& C) {
    if (!same_xmod(B.cod, C.dom)) {
      throw NotComposable("codomain of the first butterfly differs from domain of the second");
    }
    Composite out;
    out.pairs = pullback(B.rho, C.sigma);
    auto const&      G = B.cod;
    std::vector<int> n;
    for (int g = 0; g < G.G->order(); ++g) {
      n.push_back(pair_at(out.pairs, B.iota(g), C.kappa(g)));
    }
    std::sort(n.begin(), n.end());
    out.antidiag = Subgroup{out.pairs.group, n};
    if (!is_subgroup(out.pairs.group, n) || !is_normal(out.antidiag)) {
      throw InvalidConstruction("antidiagonal is not a normal subgroup of the pullback");
    }
    out.quot = quotient(out.pairs.group, out.antidiag);
    Butterfly& R = out.result;
    R.dom        = B.dom;
    R.cod        = C.cod;
    R.E          = out.quot.group;
    std::vector<int> kap(B.dom.G->order()), io(C.cod.G->order());
    for (int h = 0; h < B.dom.G->order(); ++h) {
      kap[h] = out.quot.proj(pair_at(out.pairs, B.kappa(h), 0));
    }
    for (int k = 0; k < C.cod.G->order(); ++k) {
      io[k] = out.quot.proj(pair_at(out.pairs, 0, C.iota(k)));
    }
    int              m = R.E->order();
    std::vector<int> sig(m), rh(m);
    for (int q = 0; q < m; ++q) {
      auto [e, e2] = out.pairs.pairs[out.quot.reps[q]];
      sig[q]       = B.sigma(e);
      rh[q]        = C.rho(e2);
    }
    R.kappa = GroupHom{B.dom.G, R.E, std::move(kap)};
    R.iota  = GroupHom{C.cod.G, R.E, std::move(io)};
    R.sigma = GroupHom{R.E, B.dom.G0, std::move(sig)};
    R.rho   = GroupHom{R.E, C.cod.G0, std::move(rh)};
    require_valid(R, "compose");
    return out;
  }

  Butterfly compose(Butterfly const& B, Butterfly const& C) {
    return compose_detailed(B, C).result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms of butterflies
  ////////////////////////////////////////////////////////////////////////

  Report validate_butterfly_morphism(ButterflyMorphism const& M) {
    Report r;
    auto const& A = M.src;
    auto const& B = M.dst;
    if (!same_xmod(A.dom, B.dom) || !same_xmod(A.cod, B.cod)) {
      r.add("parallel", "butterflies are not parallel");
      return r;
    }
    if (!is_hom(*A.E, *B.E, M.f.map)) {
      r.add("hom", "f is not a homomorphism");
      return r;
    }
    for (int h = 0; h < A.dom.G->order(); ++h) {
      if (M.f(A.kappa(h)) != B.kappa(h)) {
        r.add("kappa", "h=" + std::to_string(h));
      }
    }
    for (int g = 0; g < A.cod.G->order(); ++g) {
      if (M.f(A.iota(g)) != B.iota(g)) {
        r.add("iota", "g=" + std::to_string(g));
      }
    }
    for (int e = 0; e < A.E->order(); ++e) {
      if (B.sigma(M.f(e)) != A.sigma(e)) {
        r.add("sigma", "e=" + std::to_string(e));
      }
      if (B.rho(M.f(e)) != A.rho(e)) {
        r.add("rho", "e=" + std::to_string(e));
      }
    }
    return r;
  }

  namespace {
    void search_morphisms(Butterfly const& A,
                          Butterfly const& B,
                          bool             injective,
                          int              bound,
                          std::function<bool(std::vector<int> const&)> const& visit) {
      if (A.E->order() > bound || B.E->order() > bound) {
        throw BoundExceeded("butterfly morphism search: |E| exceeds bound "
                            + std::to_string(bound));
      }
      if (!same_xmod(A.dom, B.dom) || !same_xmod(A.cod, B.cod)) {
        throw ShapeMismatch("butterflies are not parallel");
      }
      if (injective && A.E->order() != B.E->order()) {
        return;
      }
      std::vector<int> forced(A.E->order(), -1);
      auto             force = [&](int x, int y) {
        if (forced[x] >= 0 && forced[x] != y) {
          return false;
        }
        forced[x] = y;
        return true;
      };
      for (int h = 0; h < A.dom.G->order(); ++h) {
        if (!force(A.kappa(h), B.kappa(h))) {
          return;
        }
      }
      for (int g = 0; g < A.cod.G->order(); ++g) {
        if (!force(A.iota(g), B.iota(g))) {
          return;
        }
      }
      HomSearch opts;
      opts.injective = injective;
      for (int x = 0; x < A.E->order(); ++x) {
        if (forced[x] >= 0) {
          opts.priority.push_back(x);
        }
      }
      opts.allow = [&](int x, int y) {
        return B.sigma(y) == A.sigma(x) && B.rho(y) == A.rho(x)
               && (forced[x] < 0 || forced[x] == y);
      };
      for_each_hom(A.E, B.E, opts, [&](std::vector<int> const& f) {
        for (int x = 0; x < A.E->order(); ++x) {
          if (B.sigma(f[x]) != A.sigma(x) || B.rho(f[x]) != A.rho(x)
              || (forced[x] >= 0 && forced[x] != f[x])) {
            return true;
          }
        }
        return visit(f);
      });
    }
  }  // namespace

  std::optional<ButterflyMorphism> isomorphic_butterflies(Butterfly const& A,
                                                          Butterfly const& B,
                                                          int              bound) {
    std::optional<ButterflyMorphism> out;
    search_morphisms(A, B, true, bound, [&](std::vector<int> const& f) {
      out = ButterflyMorphism{A, B, GroupHom{A.E, B.E, f}};
      return false;
    });
    return out;
  }

  std::vector<ButterflyMorphism> all_butterfly_morphisms(Butterfly const& A,
                                                         Butterfly const& B,
                                                         int              bound) {
    std::vector<ButterflyMorphism> out;
    search_morphisms(A, B, false, bound, [&](std::vector<int> const& f) {
      out.push_back(ButterflyMorphism{A, B, GroupHom{A.E, B.E, f}});
      return true;
    });
    return out;
  }

  ButterflyMorphism identity_butterfly_morphism(Butterfly const& B) {
    return ButterflyMorphism{B, B, identity_hom(B.E)};
  }

  ButterflyMorphism horizontal_compose(ButterflyMorphism const& M,
                                       ButterflyMorphism const& N) {
    Composite src = compose_detailed(M.src, N.src);
    Composite dst = compose_detailed(M.dst, N.dst);
    int       n   = src.result.E->order();
    std::vector<int> f(n);
    for (int q = 0; q < n; ++q) {
      auto [e, e2] = src.pairs.pairs[src.quot.reps[q]];
      f[q]         = dst.quot.proj(pair_at(dst.pairs, M.f(e), N.f(e2)));
    }
    return ButterflyMorphism{src.result, dst.result,
                             GroupHom{src.result.E, dst.result.E, std::move(f)}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Flips
  ////////////////////////////////////////////////////////////////////////

  bool is_flippable(Butterfly const& B) {
    return B.kappa.is_injective() && B.rho.is_surjective()
           && image(B.kappa).elements == kernel(B.rho).elements;
  }

  Butterfly flip(Butterfly const& B) {
    if (!is_flippable(B)) {
      throw NotFlippable("(kappa, rho) is not an extension");
    }
    return Butterfly{B.cod, B.dom, B.E, B.iota, B.kappa, B.rho, B.sigma};
  }

  ////////////////////////////////////////////////////////////////////////
  // Split butterflies
  ////////////////////////////////////////////////////////////////////////

  SplitButterfly split_from_morphism(XModMorphism const& P) {
    auto const&  G  = P.cod;
    Strict2Group T  = denormalize(G);
    Pullback     pb = pullback(P.p0, T.c);
    Butterfly    B;
    B.dom = P.dom;
    B.cod = G;
    B.E   = pb.group;
    std::vector<int> kap(P.dom.G->order()), io(G.G->order()), sec(P.dom.G0->order());
    for (int h = 0; h < P.dom.G->order(); ++h) {
      int b  = P.p(h);
      kap[h] = pair_at(pb, P.dom.del(h), arrow(G, G.G->inv(b), G.del(b)));
    }
    for (int a = 0; a < G.G->order(); ++a) {
      io[a] = pair_at(pb, 0, arrow(G, a, 0));
    }
    for (int x = 0; x < P.dom.G0->order(); ++x) {
      sec[x] = pair_at(pb, x, T.e(P.p0(x)));
    }
    B.kappa = GroupHom{P.dom.G, B.E, std::move(kap)};
    B.iota  = GroupHom{G.G, B.E, std::move(io)};
    B.sigma = pb.p1;
    B.rho   = then(pb.p2, T.d);
    GroupHom s{P.dom.G0, B.E, std::move(sec)};
    return SplitButterfly{std::move(B), std::move(s)};
  }

  XModMorphism morphism_from_split(Butterfly const& B, GroupHom const& s) {
    if (!same_group(s.dom, B.dom.G0) || !same_group(s.cod, B.E)
        || !is_hom(*s.dom, *s.cod, s.map)) {
      throw NotASection("s is not a homomorphism H0 -> E");
    }
    for (int x = 0; x < s.dom->order(); ++x) {
      if (B.sigma(s(x)) != x) {
        throw NotASection("sigma(s(" + std::to_string(x) + ")) differs");
      }
    }
    auto const&      E   = *B.E;
    auto             pre = preimage_table(B.iota);
    std::vector<int> p(B.dom.G->order());
    for (int h = 0; h < B.dom.G->order(); ++h) {
      int u = E.mul(E.inv(B.kappa(h)), s(B.dom.del(h)));
      if (pre[u] < 0) {
        throw InvalidConstruction("kappa(h)^-1 s(del h) outside the image of iota");
      }
      p[h] = pre[u];
    }
    return XModMorphism{B.dom, B.cod, GroupHom{B.dom.G, B.cod.G, std::move(p)},
                        then(s, B.rho)};
  }

  std::vector<GroupHom> all_sections(Butterfly const& B) {
    std::vector<GroupHom> out;
    HomSearch             opts;
    opts.allow = [&](int x, int y) { return B.sigma(y) == x; };
    for_each_hom(B.dom.G0, B.E, opts, [&](std::vector<int> const& s) {
      for (int x = 0; x < B.dom.G0->order(); ++x) {
        if (B.sigma(s[x]) != x) {
          return true;
        }
      }
      out.push_back(GroupHom{B.dom.G0, B.E, s});
      return true;
    });
    return out;
  }

  Butterfly reduced_compose(XModMorphism const& Q, Butterfly const& B) {
    return reduced_detailed(Q, B).butterfly;
  }

  ////////////////////////////////////////////////////////////////////////
  // Spans
  ////////////////////////////////////////////////////////////////////////

  Span span_of_butterfly(Butterfly const& B) {
    auto const& H = B.dom;
    auto const& G = B.cod;
    auto const& E = *B.E;
    for (int h = 0; h < H.G->order(); ++h) {
      for (int g = 0; g < G.G->order(); ++g) {
        if (E.mul(B.kappa(h), B.iota(g)) != E.mul(B.iota(g), B.kappa(h))) {
          throw CooperatorFails("kappa(" + std::to_string(h) + ") and iota("
                                + std::to_string(g) + ") do not commute");
        }
      }
    }
    Span s;
    s.top = direct_product(H.G, G.G);
    int              n = s.top.group->order();
    auto             pre = preimage_table(B.iota);
    std::vector<int> phi(n);
    for (int k = 0; k < n; ++k) {
      auto [h, g] = s.top.pairs[k];
      phi[k]      = E.mul(B.kappa(h), B.iota(g));
    }
    std::vector<std::vector<int>> act(E.order(), std::vector<int>(n));
    for (int e = 0; e < E.order(); ++e) {
      for (int k = 0; k < n; ++k) {
        auto [h, g] = s.top.pairs[k];
        int h2      = H.act(B.sigma(e), h);
        int u       = E.mul(E.inv(B.kappa(h2)), E.conj(e, phi[k]));
        if (pre[u] < 0) {
          throw CooperatorFails("action leaves the image of iota");
        }
        act[e][k] = pair_at(s.top, h2, pre[u]);
      }
    }
    s.xmod  = make_xmod(GroupHom{s.top.group, B.E, std::move(phi)},
                       GroupAction{B.E, s.top.group, std::move(act)}, "[E]");
    s.left  = XModMorphism{s.xmod, H, s.top.p1, B.sigma};
    s.right = XModMorphism{s.xmod, G, s.top.p2, B.rho};
    return s;
  }

  Report span_coincidence(Butterfly const& B) {
    Report  r;
    Span    s  = span_of_butterfly(B);
    Reduced L  = reduced_detailed(s.left, B);
    Reduced R  = reduced_detailed(s.right, identity_butterfly(B.cod));
    auto const& E = *B.E;
    auto        pre = preimage_table(B.iota);
    auto const& X   = B.cod;
    int         n   = L.butterfly.E->order();
    if (n != R.butterfly.E->order()) {
      r.add("order", std::to_string(n) + " vs " + std::to_string(R.butterfly.E->order()));
      return r;
    }
    std::vector<int> phi(n);
    for (int k = 0; k < n; ++k) {
      auto [e0, e] = L.pairs.pairs[k];
      int a        = pre[E.mul(e, E.inv(e0))];
      int idx      = a < 0 ? -1 : R.pairs.index_of(e0, arrow(X, a, B.rho(e0)));
      if (idx < 0) {
        r.add("relabel", "no counterpart for element " + std::to_string(k));
        return r;
      }
      phi[k] = idx;
    }
    GroupHom f{L.butterfly.E, R.butterfly.E, phi};
    if (!f.is_iso()) {
      r.add("relabel", "canonical relabeling is not a bijection");
      return r;
    }
    auto const& LE = *L.butterfly.E;
    auto const& RE = *R.butterfly.E;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (RE.mul(phi[a], phi[b]) != phi[LE.mul(a, b)]) {
          r.add("table", two("a", a, "b", b));
        }
      }
      if (R.butterfly.sigma(phi[a]) != L.butterfly.sigma(a)) {
        r.add("sigma", "e=" + std::to_string(a));
      }
      if (R.butterfly.rho(phi[a]) != L.butterfly.rho(a)) {
        r.add("rho", "e=" + std::to_string(a));
      }
    }
    for (int k = 0; k < s.xmod.G->order(); ++k) {
      if (phi[L.butterfly.kappa(k)] != R.butterfly.kappa(k)) {
        r.add("kappa", "k=" + std::to_string(k));
      }
    }
    for (int g = 0; g < X.G->order(); ++g) {
      if (phi[L.butterfly.iota(g)] != R.butterfly.iota(g)) {
        r.add("iota", "g=" + std::to_string(g));
      }
    }
    if (!same_xmod(L.butterfly.dom, R.butterfly.dom)
        || !same_xmod(L.butterfly.cod, R.butterfly.cod)) {
      r.add("ends", "domains or codomains differ");
    }
    return r;
  }

  ButterflyMorphism two_cell_image(XModTwoCell const& cell) {
    auto         EP = split_from_morphism(cell.P).butterfly;
    auto         EQ = split_from_morphism(cell.Q).butterfly;
    Strict2Group T  = denormalize(cell.P.cod);
    Pullback     pp = pullback(cell.P.p0, T.c);
    Pullback     pq = pullback(cell.Q.p0, T.c);
    std::vector<int> f(EP.E->order());
    for (int k = 0; k < EP.E->order(); ++k) {
      auto [x, a] = pp.pairs[k];
      f[k]        = pair_at(pq, x, T.comp(a, cell.alpha[x]));
    }
    return ButterflyMorphism{EP, EQ, GroupHom{EP.E, EQ.E, std::move(f)}};
  }

}  // namespace bfly
