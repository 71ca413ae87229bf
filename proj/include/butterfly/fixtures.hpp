#pragma once

#include <cstdint>
#include <vector>

#include "butterfly/butterfly.hpp"

namespace bfly {

  // Deterministic in (seed, size_bound). Every group appearing in a fixture
  // (G, G0, E, G1) has order at most size_bound.
  struct FixtureSet {
    std::uint64_t              seed       = 0;
    int                        size_bound = 0;
    std::vector<CrossedModule> crossed_modules;
    std::vector<XModMorphism>  morphisms;
    std::vector<Butterfly>     butterflies;
    std::vector<XModTwoCell>   two_cells;
    std::vector<Strict2Group>  two_groups;
  };

  constexpr int kFixtureMaxBound = 16;

  // Throws BoundExceeded above kFixtureMaxBound.
  FixtureSet generate_fixtures(std::uint64_t seed, int size_bound);

  // Every crossed module structure (boundary, action) on the pair (G, G0).
  std::vector<CrossedModule> crossed_modules_on(Group const& G, Group const& G0);

  // The equivalence relation {(a, b) : f a = f b} on dom f as a strict 2-group.
  Strict2Group kernel_pair(GroupHom const& f);

}  // namespace bfly
