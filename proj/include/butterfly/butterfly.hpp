#pragma once

#include <optional>
#include <string>
#include <vector>

#include "butterfly/xmod.hpp"

namespace bfly {

  // A butterfly H -> G:
  //
  //   H          G
  //    \kappa   /iota
  //       E
  //    /sigma   \rho
  //   H0         G0
  struct Butterfly {
    CrossedModule dom;
    CrossedModule cod;
    Group         E;
    GroupHom      kappa;
    GroupHom      iota;
    GroupHom      sigma;
    GroupHom      rho;
  };

  // Search bound on |E| for butterfly morphism searches.
  constexpr int kButterflyBound = 1024;

  // Conditions: "shape", "hom", "wings", "i", "ii", "iii", "iv", "commute".
  Report validate_butterfly(Butterfly const& B);
  bool   same_butterfly(Butterfly const& A, Butterfly const& B);

  // E = G x| G0 with kappa(h) = (h^-1, del h), iota(a) = (a, 1), sigma = c, rho = d.
  Butterfly identity_butterfly(CrossedModule const& X);

  struct Composite {
    Butterfly        result;
    Pullback         pairs;     // {(e, e') : rho(e) = sigma'(e')}
    Subgroup         antidiag;  // {(iota g, kappa' g)}
    Quotient         quot;
  };

  Composite compose_detailed(Butterfly const& B, Butterfly const& C);
  Butterfly compose(Butterfly const& B, Butterfly const& C);

  struct ButterflyMorphism {
    Butterfly src;
    Butterfly dst;
    GroupHom  f;
  };

  Report validate_butterfly_morphism(ButterflyMorphism const& M);
  std::optional<ButterflyMorphism> isomorphic_butterflies(Butterfly const& A,
                                                          Butterfly const& B,
                                                          int bound = kButterflyBound);
  std::vector<ButterflyMorphism>   all_butterfly_morphisms(Butterfly const& A,
                                                           Butterfly const& B,
                                                           int bound = kButterflyBound);
  ButterflyMorphism identity_butterfly_morphism(Butterfly const& B);
  // Induced map on composites: [e, e'] -> [f e, g e'].
  ButterflyMorphism horizontal_compose(ButterflyMorphism const& M,
                                       ButterflyMorphism const& N);

  bool      is_flippable(Butterfly const& B);
  Butterfly flip(Butterfly const& B);

  struct SplitButterfly {
    Butterfly butterfly;
    GroupHom  section;  // x -> (x, e(p0 x))
  };

  // E_P = {(x, f) : p0(x) = c(f)} over arrows f of denormalize(P.cod).
  SplitButterfly split_from_morphism(XModMorphism const& P);
  // p0 = s;rho, p(h) = iota^-1(kappa(h)^-1 s(del h)).
  XModMorphism morphism_from_split(Butterfly const& B, GroupHom const& s);
  // Every homomorphic section of sigma.
  std::vector<GroupHom> all_sections(Butterfly const& B);

  // E' = {(k0, e) : q0(k0) = sigma(e)}.
  Butterfly reduced_compose(XModMorphism const& Q, Butterfly const& B);

  struct Span {
    CrossedModule xmod;   // phi: H x G -> E
    XModMorphism  left;   // (pi_H, sigma)
    XModMorphism  right;  // (pi_G, rho)
    Pullback      top;    // H x G as pairs
  };

  Span span_of_butterfly(Butterfly const& B);

  // reduced_compose(left, B) against reduced_compose(right, I) through the
  // canonical relabeling (e0, e) -> (e0, (iota^-1(e e0^-1), rho e0)); every
  // table entry and structure map must agree exactly.
  Report span_coincidence(Butterfly const& B);

  // F(alpha)(x, (a, y)) = (x, m((a, y), alpha x)) : E_P -> E_Q.
  ButterflyMorphism two_cell_image(XModTwoCell const& cell);

}  // namespace bfly
