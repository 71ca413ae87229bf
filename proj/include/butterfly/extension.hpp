#pragma once

#include <string>
#include <vector>

#include "butterfly/weakmap.hpp"

namespace bfly {

  // (1 -> H)
  CrossedModule discrete_xmod(Group const& H);
  // (inner map G -> Aut G, evaluation). Automorphisms are indexed as in
  // automorphism_group(G, bound).
  CrossedModule aut_xmod(Group const& G, int bound = kDefaultBound);

  // H <-sigma- E <-iota- G
  struct ExtensionDatum {
    Group    H;
    Group    G;
    Group    E;
    GroupHom iota;
    GroupHom sigma;
  };

  Report validate_extension(ExtensionDatum const& X);
  bool   same_extension(ExtensionDatum const& X, ExtensionDatum const& Y);

  // kappa = 0, rho(e) = (g -> iota^-1(e iota(g) e^-1)).
  Butterfly      butterfly_from_extension(ExtensionDatum const& X, int bound = kDefaultBound);
  // Throws ShapeMismatch unless dom is discrete and cod is an aut_xmod.
  ExtensionDatum extension_from_butterfly(Butterfly const& B);

  // Maps E -> E' with iota;f = iota' and f;sigma' = sigma (necessarily bijective).
  std::vector<GroupHom> extension_morphisms(ExtensionDatum const& X,
                                            ExtensionDatum const& Y);

  struct FactorSet {
    Group            H;
    Group            G;
    std::vector<int> phi;  // H -> automorphism index
    std::vector<int> f;    // |H|^2, row-major, values in G

    int at(int x, int y) const {
      return f[static_cast<std::size_t>(x) * H->order() + y];
    }
    bool operator==(FactorSet const& o) const {
      return phi == o.phi && f == o.f;
    }
    bool trivial_cocycle() const;
  };

  // Conditions "normalized", "schreier-action", "schreier-cocycle".
  Report validate_factor_set(FactorSet const& F, AutGroup const& A);
  // E = G x H with (g, x)(g', y) = (g phi(x)(g') f(x, y), xy), index g |H| + x.
  ExtensionDatum extension_from_factor_set(FactorSet const& F, AutGroup const& A);
  // phi(x) = conj by s(x), f(x, y) = iota^-1(s(x) s(y) s(xy)^-1).
  FactorSet factor_set_of(ExtensionDatum const& X,
                          std::vector<int> const& s,
                          AutGroup const& A);

  struct FactorSetClass {
    FactorSet rep;      // least member in (phi, f) lexicographic order
    int       members = 0;
  };

  // Exhaustive enumeration of normalized factor sets, grouped by the
  // equivalence induced by normalized h: H -> G. Throws BoundExceeded if
  // |H| |G| > bound.
  std::vector<FactorSetClass> factor_set_oracle(Group const& H,
                                                Group const& G,
                                                int          bound = 16);

  struct ExtensionClass {
    ExtensionDatum rep;
    FactorSet      factor_set;
    Butterfly      butterfly;
    bool           split = false;
    std::string    e_type;
    int            members = 0;  // butterflies in the orbit
  };

  struct Classification {
    std::vector<ExtensionClass> classes;  // butterfly side
    std::size_t                 oracle_classes = 0;
    bool                        oracle_run     = false;
  };

  // Butterfly side: every butterfly D(H) -> A(G) arising from a monoidal
  // functor, grouped into isomorphism orbits. With `oracle` the factor-set
  // count is recorded as well.
  Classification classify_extensions(Group const& H,
                                     Group const& G,
                                     bool         oracle = true,
                                     int          bound  = 16);

  // Isomorphism type of a small group from a fixed catalog, or a descriptive
  // fallback ("order 16 ...").
  std::string identify_group(Group const& E);

}  // namespace bfly
