#pragma once

#include <string>
#include <vector>

#include "butterfly/fingroup.hpp"

namespace bfly {

  // Boundary G -> G0 with G0 acting on G.
  struct CrossedModule {
    Group       G;
    Group       G0;
    GroupHom    boundary;
    GroupAction action;
    std::string name;

    int del(int g) const {
      return boundary(g);
    }
    int act(int x, int g) const {
      return action(x, g);
    }
  };

  CrossedModule make_xmod(GroupHom boundary, GroupAction action, std::string name = "");
  bool          same_xmod(CrossedModule const& a, CrossedModule const& b);
  // Conditions "precrossed" and "peiffer"; each violating pair is listed.
  Report validate_crossed_module(CrossedModule const& X);

  // (id: G -> G, conjugation)
  CrossedModule identity_xmod(Group const& G);

  struct XModMorphism {
    CrossedModule dom;
    CrossedModule cod;
    GroupHom      p;   // top
    GroupHom      p0;  // bottom
  };

  Report       validate_morphism(XModMorphism const& P);
  XModMorphism identity_morphism(CrossedModule const& X);
  XModMorphism zero_morphism(CrossedModule const& dom, CrossedModule const& cod);
  // First P, then Q.
  XModMorphism compose_morphisms(XModMorphism const& P, XModMorphism const& Q);
  bool         same_morphism(XModMorphism const& P, XModMorphism const& Q);
  // Every morphism dom -> cod, by search over bottom homs and equivariant tops.
  std::vector<XModMorphism> all_morphisms(CrossedModule const& dom,
                                          CrossedModule const& cod);

  // Internal groupoid in groups: arrows G1 over objects G0. An arrow f goes
  // from d(f) to c(f); m(f, g) is defined when c(f) = d(g).
  struct Strict2Group {
    Group            G1;
    Group            G0;
    GroupHom         d;
    GroupHom         c;
    GroupHom         e;
    GroupHom         i;
    std::vector<int> m;  // |G1|^2, -1 off the composable pairs

    int comp(int f, int g) const {
      return m[static_cast<std::size_t>(f) * G1->order() + g];
    }
    bool composable(int f, int g) const {
      return c(f) == d(g);
    }
  };

  // Composition and inverse from the group structure:
  // m(f, g) = f e(c f)^-1 g and i(f) = e(d f) f^-1 e(c f).
  Strict2Group make_strict2group(GroupHom d, GroupHom c, GroupHom e);
  Report       validate_strict2group(Strict2Group const& T);

  CrossedModule normalize(Strict2Group const& T);

  // Arrows (a, x) of G x| G0 at index a * |G0| + x; source d = del(a) x,
  // target c = x.
  Strict2Group denormalize(CrossedModule const& X);

  inline int arrow(CrossedModule const& X, int a, int x) {
    return a * X.G0->order() + x;
  }
  inline int arrow_top(CrossedModule const& X, int f) {
    return f / X.G0->order();
  }
  inline int arrow_bottom(CrossedModule const& X, int f) {
    return f % X.G0->order();
  }

  // Checks that (phi, phi0) is an isomorphism of strict 2-groups T -> U.
  Report compare_strict2groups(Strict2Group const&     T,
                               Strict2Group const&     U,
                               std::vector<int> const& phi,
                               std::vector<int> const& phi0);

  // The canonical comparison denormalize(normalize(T)) -> T, (a, x) -> a e(x).
  std::vector<int> renormalize_map(Strict2Group const& T);

  struct WeakEquivalence {
    bool     holds = false;
    GroupHom on_kernels;    // ker del_dom -> ker del_cod
    GroupHom on_cokernels;  // coker del_dom -> coker del_cod
  };

  WeakEquivalence is_weak_equivalence(XModMorphism const& P);
  bool            is_discrete_fibration(XModMorphism const& P);

  struct XModTwoCell {
    XModMorphism     P;
    XModMorphism     Q;
    std::vector<int> alpha;  // H0 -> arrows of denormalize(P.cod)
  };

  // m0(a, b) = (a b^-1, del b) as an arrow of denormalize(X).
  int m0(CrossedModule const& X, int a, int b);

  // Conditions "d", "c", "hom", "peiffer-graph"; additionally
  // "naturality-mismatch" if the groupoid-level check disagrees.
  Report validate_two_cell(XModTwoCell const& cell);
  // Naturality on the denormalized functors: for every arrow f of the source
  // groupoid, m(P1 f, alpha(c f)) = m(alpha(d f), Q1 f); plus "d", "c", "hom".
  Report check_naturality(XModTwoCell const& cell);

  // Candidates alpha with alpha;d = p0 and alpha;c = q0, in lexicographic
  // order; `keep` decides membership.
  std::vector<std::vector<int>> enumerate_alphas(
      XModMorphism const&                                  P,
      XModMorphism const&                                  Q,
      std::function<bool(std::vector<int> const&)> const& keep);
  std::vector<std::vector<int>> all_two_cells(XModMorphism const& P,
                                              XModMorphism const& Q);
  std::vector<std::vector<int>> all_natural_transformations(XModMorphism const& P,
                                                            XModMorphism const& Q);

  XModTwoCell identity_two_cell(XModMorphism const& P);

  struct PulledBackXMod {
    CrossedModule xmod;      // E x_{sigma, del} H -> E
    XModMorphism  to_base;   // (second projection, sigma)
    Pullback      pairs;     // the top group as pairs (e, h)
  };

  PulledBackXMod pullback_crossed_module(CrossedModule const& X, GroupHom const& sigma);

}  // namespace bfly
