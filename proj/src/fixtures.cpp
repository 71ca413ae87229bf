#include "butterfly/fixtures.hpp"

#include <algorithm>
#include <random>

#include "butterfly/extension.hpp"

namespace bfly {

  namespace {
    // Raw engine output reduced mod n: the standard distributions are not
    // pinned across library implementations, this is.
    struct Sampler {
      std::mt19937_64 gen;

      explicit Sampler(std::uint64_t seed) : gen(seed) {}

      std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(gen() % n);
      }

      // k distinct indices out of n, in sampled order.
      std::vector<std::size_t> choose(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) {
          idx[i] = i;
        }
        k = std::min(k, n);
        for (std::size_t i = 0; i < k; ++i) {
          std::swap(idx[i], idx[i + below(n - i)]);
        }
        idx.resize(k);
        return idx;
      }
    };

    int total(CrossedModule const& X) {
      return X.G->order() * X.G0->order();
    }

    void add_xmod(std::vector<CrossedModule>& xs, CrossedModule const& X) {
      for (auto const& Y : xs) {
        if (same_xmod(X, Y)) {
          return;
        }
      }
      xs.push_back(X);
    }

    CrossedModule one_object(Group const& A) {
      return make_xmod(zero_hom(A, trivial_group()), trivial_action(trivial_group(), A),
                       A->name() + "->1");
    }

    std::vector<Group> pool(int bound) {
      std::vector<Group> out;
      for (auto const& G : {trivial_group(), cyclic(2), cyclic(3), cyclic(4), klein(),
                            symmetric3(), cyclic(6), dihedral(4), quaternion(),
                            named_group("Z2xZ4")}) {
        if (G->order() <= bound) {
          out.push_back(G);
        }
      }
      return out;
    }
  }  // namespace

  std::vector<CrossedModule> crossed_modules_on(Group const& G, Group const& G0) {
    std::vector<CrossedModule> out;
    auto                       A    = automorphism_group(G, 64);
    auto                       dels = all_homs(G, G0);
    for (auto const& phi : all_homs(G0, A.group)) {
      auto xi = pull_action(phi, A.ev);
      for (auto const& del : dels) {
        auto X = make_xmod(del, xi);
        if (validate_crossed_module(X).ok()) {
          out.push_back(X);
        }
      }
    }
    return out;
  }

  Strict2Group kernel_pair(GroupHom const& f) {
    auto             P = pullback(f, f);
    std::vector<int> diag(f.dom->order());
    for (int a = 0; a < f.dom->order(); ++a) {
      diag[a] = P.index_of(a, a);
    }
    return make_strict2group(P.p1, P.p2, GroupHom{f.dom, P.group, diag});
  }

  FixtureSet generate_fixtures(std::uint64_t seed, int size_bound) {
    if (size_bound > kFixtureMaxBound || size_bound < 1) {
      throw BoundExceeded("fixture size bound must lie in [1, "
                          + std::to_string(kFixtureMaxBound) + "], got "
                          + std::to_string(size_bound));
    }
    FixtureSet fx;
    fx.seed       = seed;
    fx.size_bound = size_bound;
    Sampler rng(seed);
    int     b = size_bound;

    auto fits = [&](CrossedModule const& X) {
      return X.G->order() <= b && X.G0->order() <= b && total(X) <= 2 * b;
    };

    std::vector<Group> basic;
    for (auto const& G : {cyclic(2), cyclic(3), cyclic(4), klein()}) {
      if (G->order() <= b) {
        basic.push_back(G);
      }
    }

    auto& xs = fx.crossed_modules;
    for (auto const& H : basic) {
      add_xmod(xs, discrete_xmod(H));
    }
    for (auto const& G : basic) {
      auto A = aut_xmod(G);
      if (fits(A)) {
        add_xmod(xs, A);
      }
    }
    for (auto const& G : pool(b)) {
      if (fits(identity_xmod(G))) {
        add_xmod(xs, identity_xmod(G));
      }
    }
    for (auto const& A : {cyclic(2), cyclic(3)}) {
      if (A->order() <= b) {
        add_xmod(xs, one_object(A));
      }
    }
    std::size_t const mandated = xs.size();
    std::vector<Group> small;
    for (auto const& G : pool(std::min(b, 6))) {
      if (G->order() > 1) {
        small.push_back(G);
      }
    }
    for (auto const& G : small) {
      for (auto const& G0 : small) {
        if (G->order() * G0->order() > 2 * b) {
          continue;
        }
        auto all = crossed_modules_on(G, G0);
        for (auto i : rng.choose(all.size(), 2)) {
          add_xmod(xs, all[i]);
        }
      }
    }

    // Morphisms and butterflies live over a smaller core: the mandated
    // crossed modules of total order <= b and a few sampled ones.
    std::vector<CrossedModule> core, extra;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (total(xs[i]) <= b) {
        (i < mandated ? core : extra).push_back(xs[i]);
      }
    }
    for (auto i : rng.choose(extra.size(), 4)) {
      core.push_back(extra[i]);
    }
    std::vector<XModMorphism> candidates;
    for (auto const& X : core) {
      fx.morphisms.push_back(identity_morphism(X));
      for (auto const& Y : core) {
        for (auto const& P : all_morphisms(X, Y)) {
          if (!same_xmod(X, Y) || !same_morphism(P, identity_morphism(X))) {
            candidates.push_back(P);
          }
        }
      }
    }
    auto picked = rng.choose(candidates.size(), 96);
    std::sort(picked.begin(), picked.end());
    for (auto i : picked) {
      fx.morphisms.push_back(candidates[i]);
    }

    auto& bs = fx.butterflies;
    for (auto const& X : core) {
      bs.push_back(identity_butterfly(X));
    }
    for (auto const& P : fx.morphisms) {
      if (P.dom.G0->order() * P.cod.G->order() <= b) {
        bs.push_back(split_from_morphism(P).butterfly);
      }
    }
    for (auto const& H : basic) {
      for (auto const& G : basic) {
        if (H->order() * G->order() > b) {
          continue;
        }
        auto A = automorphism_group(G);
        for (auto const& c : factor_set_oracle(H, G)) {
          bs.push_back(butterfly_from_extension(extension_from_factor_set(c.rep, A)));
        }
      }
    }
    // inverses of flippable non-identity butterflies
    std::size_t flips = 0;
    for (std::size_t i = 0, n = bs.size(); i < n && flips < 8; ++i) {
      if (is_flippable(bs[i]) && !same_butterfly(bs[i], identity_butterfly(bs[i].dom))) {
        bs.push_back(flip(bs[i]));
        ++flips;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> composable;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      for (std::size_t j = 0; j < bs.size(); ++j) {
        if (same_xmod(bs[i].cod, bs[j].dom)) {
          composable.push_back({i, j});
        }
      }
    }
    std::size_t added = 0;
    for (auto k : rng.choose(composable.size(), composable.size())) {
      if (added == 24) {
        break;
      }
      auto [i, j] = composable[k];
      auto C      = compose(bs[i], bs[j]);
      if (C.E->order() <= b) {
        bs.push_back(C);
        ++added;
      }
    }

    for (std::size_t i = 0; i < fx.morphisms.size() && fx.two_cells.size() < 40; ++i) {
      auto const& P = fx.morphisms[i];
      if (P.dom.G0->order() > 8 || total(P.cod) > 8) {
        continue;
      }
      for (std::size_t j = 0; j < fx.morphisms.size(); ++j) {
        auto const& Q = fx.morphisms[j];
        if (!same_xmod(P.dom, Q.dom) || !same_xmod(P.cod, Q.cod)) {
          continue;
        }
        auto cells = all_two_cells(P, Q);
        if (!cells.empty()) {
          fx.two_cells.push_back(XModTwoCell{P, Q, cells[rng.below(cells.size())]});
        }
      }
    }

    for (auto const& X : core) {
      fx.two_groups.push_back(denormalize(X));
    }
    for (auto const& G : pool(b)) {
      std::vector<Strict2Group> here;
      for (auto const& Q : pool(4)) {
        for (auto const& f : all_homs(G, Q)) {
          auto K = kernel(f).size();
          if (int(K) * G->order() <= b) {
            here.push_back(kernel_pair(f));
          }
        }
      }
      for (auto i : rng.choose(here.size(), 2)) {
        fx.two_groups.push_back(here[i]);
      }
    }
    return fx;
  }

}  // namespace bfly
