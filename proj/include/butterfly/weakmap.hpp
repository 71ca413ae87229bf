#pragma once

#include <optional>
#include <vector>

#include "butterfly/butterfly.hpp"

namespace bfly {

  // Normalized monoidal functor between strict 2-groups. F2(x, y) is stored as
  // the arrow from F0(x) F0(y) to F0(xy).
  struct MonoidalFunctor {
    Strict2Group     dom;
    Strict2Group     cod;
    std::vector<int> F0;  // dom objects -> cod objects
    std::vector<int> F1;  // dom arrows -> cod arrows
    std::vector<int> F2;  // |dom objects|^2, row-major

    int f2(int x, int y) const {
      return F2[static_cast<std::size_t>(x) * F0.size() + y];
    }
    bool is_strict() const;
  };

  // Conditions: "shape", "normalization", "functor", "F2-endpoints",
  // "naturality", "cocycle".
  Report check_monoidal(MonoidalFunctor const& M);

  // s(1) = 1 and sigma(s(x)) = x.
  Report validate_set_section(Butterfly const& B, std::vector<int> const& s);
  // All normalized set sections of sigma, in lexicographic order, at most `limit`.
  std::vector<std::vector<int>> all_set_sections(Butterfly const& B,
                                                 std::size_t      limit = 1u << 16);

  // F0 = s;rho, F1(h, x) = (iota^-1(kappa(h)^-1 s(del(h) x) s(x)^-1), F0 x),
  // F2(x, y) = (iota^-1(s(x) s(y) s(xy)^-1), F0(xy)).
  MonoidalFunctor extract_monoidal(Butterfly const& B, std::vector<int> const& s);

  // A strict morphism seen as a monoidal functor with identity F2.
  MonoidalFunctor strict_functor(XModMorphism const& P);
  bool            same_monoidal(MonoidalFunctor const& M, MonoidalFunctor const& N);

  // theta(x): F0(x) -> F0'(x), natural and monoidal. Returns theta if found.
  std::optional<std::vector<int>> monoidal_isomorphism(MonoidalFunctor const& M,
                                                       MonoidalFunctor const& N);

  struct Reconstruction {
    Butterfly                     butterfly;
    std::vector<std::vector<int>> elements;  // (y, g, x) triples of P0
    std::vector<int>              section;   // y -> (y, e F0 y, F0 y)
    int                           variant = 0;
  };

  // P0 = {(y, g, x) : F0(y) = c(g), d(g) = x}; the product appends one of four
  // candidate F2 arrows after g1 g2. A variant is kept when it gives a valid
  // butterfly whose extracted functor under the canonical section is M
  // itself; distinct surviving tables raise GroupLawSearchFailed.
  Reconstruction butterfly_from_monoidal(MonoidalFunctor const& M);

  // All normalized monoidal functors out of a discrete strict 2-group; the
  // coherence checks run on partial assignments.
  std::vector<MonoidalFunctor> monoidal_functors_from_discrete(Strict2Group const& dom,
                                                               Strict2Group const& cod);

}  // namespace bfly
