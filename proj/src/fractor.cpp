#include "butterfly/fractor.hpp"

#include <set>

namespace bfly {

  namespace {
    // Leg (F1, f0): A -> B of internal groupoids. Discrete fibration: arrows
    // r of A correspond to pairs (F1 r, c r) with c(F1 r) = f0(c r).
    void check_leg(Strict2Group const& A,
                   Strict2Group const& B,
                   GroupHom const&     F1,
                   GroupHom const&     f0,
                   std::string const&  leg,
                   Report&             r) {
      if (!is_hom(*A.G1, *B.G1, F1.map) || !is_hom(*A.G0, *B.G0, f0.map)) {
        r.add("1", leg + ": not a homomorphism");
        return;
      }
      for (int a = 0; a < A.G1->order(); ++a) {
        if (B.d(F1(a)) != f0(A.d(a)) || B.c(F1(a)) != f0(A.c(a))) {
          r.add("1", leg + ": endpoints at arrow " + std::to_string(a));
          return;
        }
      }
      std::set<std::pair<int, int>> seen;
      for (int a = 0; a < A.G1->order(); ++a) {
        seen.insert({F1(a), A.c(a)});
      }
      int expected = 0;
      for (int b = 0; b < B.G1->order(); ++b) {
        for (int x = 0; x < A.G0->order(); ++x) {
          expected += B.c(b) == f0(x);
        }
      }
      if (int(seen.size()) != A.G1->order() || expected != A.G1->order()) {
        r.add("1", leg + ": codomain square is not a pullback");
      }
    }

    Butterfly fail(std::string const& cond, std::string const& w) {
      throw FractorConditionFailed("condition " + cond + ": " + w);
    }
  }  // namespace

  Fractor to_fractor(Butterfly const& B) {
    Fractor F;
    F.H1    = denormalize(B.dom);
    F.G1    = denormalize(B.cod);
    F.E     = B.E;
    F.sigma = B.sigma;
    F.rho   = B.rho;
    auto const& E  = *B.E;
    auto const& H  = B.dom;
    int         ne = E.order();

    // E acts on H through sigma
    std::vector<std::vector<int>> act(ne, std::vector<int>(H.G->order()));
    for (int e = 0; e < ne; ++e) {
      for (int h = 0; h < H.G->order(); ++h) {
        act[e][h] = H.act(B.sigma(e), h);
      }
    }
    Semidirect       S = semidirect_product(GroupAction{B.E, H.G, act});
    std::vector<int> d(S.group->order()), sb(S.group->order());
    for (int h = 0; h < H.G->order(); ++h) {
      for (int e = 0; e < ne; ++e) {
        d[S.idx(h, e)]  = E.mul(B.kappa(h), e);
        sb[S.idx(h, e)] = arrow(H, h, B.sigma(e));
      }
    }
    F.R         = make_strict2group(GroupHom{S.group, B.E, d}, S.c, S.e);
    F.sigma_bar = GroupHom{S.group, F.H1.G1, sb};

    Pullback         K = pullback(B.sigma, B.sigma);
    std::vector<int> diag(ne), rb(K.group->order());
    for (int e = 0; e < ne; ++e) {
      diag[e] = K.index_of(e, e);
    }
    std::vector<int> pre(B.E->order(), -1);
    for (int g = 0; g < B.cod.G->order(); ++g) {
      pre[B.iota(g)] = g;
    }
    for (int k = 0; k < K.group->order(); ++k) {
      auto [e, e2] = K.pairs[k];
      rb[k]        = arrow(B.cod, pre[E.mul(e, E.inv(e2))], B.rho(e2));
    }
    F.Rsigma  = make_strict2group(K.p1, K.p2, GroupHom{B.E, K.group, diag});
    F.rho_bar = GroupHom{K.group, F.G1.G1, rb};
    return F;
  }

  Report validate_fractor(Fractor const& F) {
    Report r;
    Report rs = validate_strict2group(F.R);
    if (!rs.ok()) {
      r.add("1", "R is not an internal groupoid: " + rs.issues.front().condition);
      return r;
    }
    check_leg(F.R, F.H1, F.sigma_bar, F.sigma, "sigma", r);
    check_leg(F.Rsigma, F.G1, F.rho_bar, F.rho, "rho", r);

    auto const& E = *F.E;
    if (!F.sigma.is_surjective()) {
      r.add("2", "sigma is not onto");
    }
    std::set<std::pair<int, int>> pairs;
    for (int a = 0; a < F.Rsigma.G1->order(); ++a) {
      int x = F.Rsigma.d(a), y = F.Rsigma.c(a);
      if (F.sigma(x) != F.sigma(y)) {
        r.add("2", "arrow " + std::to_string(a) + " joins different sigma-fibers");
      }
      pairs.insert({x, y});
    }
    int kp = 0;
    for (int x = 0; x < E.order(); ++x) {
      for (int y = 0; y < E.order(); ++y) {
        kp += F.sigma(x) == F.sigma(y);
      }
    }
    if (int(pairs.size()) != F.Rsigma.G1->order() || kp != F.Rsigma.G1->order()) {
      r.add("2", "R[sigma] is not the kernel pair");
    }
    for (int a = 0; a < F.R.G1->order(); ++a) {
      if (F.rho(F.R.d(a)) != F.rho(F.R.c(a))) {
        r.add("3", "rho d != rho c at arrow " + std::to_string(a));
      }
    }
    return r;
  }

  Butterfly from_fractor(Fractor const& F) {
    Report r = validate_fractor(F);
    if (!r.ok()) {
      return fail(r.issues.front().condition, r.issues.front().witness);
    }
    Butterfly B;
    B.dom   = normalize(F.H1);
    B.cod   = normalize(F.G1);
    B.E     = F.E;
    B.sigma = F.sigma;
    B.rho   = F.rho;
    auto Hk = as_group(kernel(F.H1.c));
    auto Gk = as_group(kernel(F.G1.c));

    std::vector<int> kap(B.dom.G->order(), -1), io(B.cod.G->order(), -1);
    std::vector<int> over_h(F.H1.G1->order(), -1), over_g(F.G1.G1->order(), -1);
    for (int a = 0; a < F.R.G1->order(); ++a) {
      if (F.R.c(a) == 0) {
        over_h[F.sigma_bar(a)] = a;
      }
    }
    for (int a = 0; a < F.Rsigma.G1->order(); ++a) {
      if (F.Rsigma.c(a) == 0) {
        over_g[F.rho_bar(a)] = a;
      }
    }
    for (int h = 0; h < B.dom.G->order(); ++h) {
      int a = over_h[Hk.incl(h)];
      if (a < 0) {
        return fail("1", "no arrow of R over h=" + std::to_string(h));
      }
      kap[h] = F.R.d(a);
    }
    for (int g = 0; g < B.cod.G->order(); ++g) {
      int a = over_g[Gk.incl(g)];
      if (a < 0) {
        return fail("1", "no arrow of R[sigma] over g=" + std::to_string(g));
      }
      io[g] = F.Rsigma.d(a);
    }
    B.kappa = GroupHom{B.dom.G, B.E, std::move(kap)};
    B.iota  = GroupHom{B.cod.G, B.E, std::move(io)};
    return B;
  }

}  // namespace bfly
