#include "doctest.h"
#include "helpers.hpp"

#include "butterfly/extension.hpp"
#include "butterfly/weakmap.hpp"

using namespace bfly;
using testing_util::xmods_on;

namespace {
  Butterfly z4_extension() {
    auto Z2 = cyclic(2);
    auto Z4 = cyclic(4);
    return butterfly_from_extension(ExtensionDatum{Z2, Z2, Z4, make_hom(Z2, Z4, {0, 2}),
                                                   make_hom(Z4, Z2, {0, 1, 0, 1})});
  }

  std::vector<CrossedModule> small_xmods() {
    std::vector<CrossedModule> xs{discrete_xmod(cyclic(2)), discrete_xmod(cyclic(4)),
                                  aut_xmod(cyclic(2)), aut_xmod(cyclic(3)),
                                  identity_xmod(cyclic(2))};
    for (auto const& X : xmods_on(cyclic(3), cyclic(2))) {
      xs.push_back(X);
    }
    return xs;
  }

  // Butterflies with |H0|, |G1| <= 8.
  std::vector<Butterfly> fixtures() {
    auto                   xs = small_xmods();
    std::vector<Butterfly> out;
    for (auto const& X : xs) {
      if (X.G->order() * X.G0->order() <= 8) {
        out.push_back(identity_butterfly(X));
      }
    }
    for (auto const& X : xs) {
      for (auto const& Y : xs) {
        if (X.G0->order() > 8 || Y.G->order() * Y.G0->order() > 8) {
          continue;
        }
        for (auto const& P : all_morphisms(X, Y)) {
          out.push_back(split_from_morphism(P).butterfly);
        }
      }
    }
    out.push_back(z4_extension());
    auto Z2 = cyclic(2);
    auto Z4 = cyclic(4);
    auto D4 = dihedral(4);
    // Z4 = rotations of D4 (indices i + 4j with j = 0)
    out.push_back(butterfly_from_extension(ExtensionDatum{
        Z2, Z4, D4, make_hom(Z4, D4, {0, 1, 2, 3}),
        make_hom(D4, Z2, {0, 0, 0, 0, 1, 1, 1, 1})}));
    return out;
  }

  // Oracle: all normalized (F0, F2) data for D(H) -> T filtered by check_monoidal.
  std::size_t brute_monoidal_count(Strict2Group const& D, Strict2Group const& T) {
    int         n0 = D.G0->order();
    int         m0 = T.G0->order();
    int         m1 = T.G1->order();
    std::size_t count = 0;
    std::vector<int> F0(n0, 0);
    std::vector<int> free_pairs;
    for (int x = 1; x < n0; ++x) {
      for (int y = 1; y < n0; ++y) {
        free_pairs.push_back(x * n0 + y);
      }
    }
    std::vector<int> F2(std::size_t(n0) * n0);
    std::function<void(std::size_t)> f2 = [&](std::size_t k) {
      if (k == free_pairs.size()) {
        MonoidalFunctor M{D, T, F0, std::vector<int>(D.G1->order()), F2};
        for (int f = 0; f < D.G1->order(); ++f) {
          M.F1[f] = T.e(F0[D.d(f)]);
        }
        count += check_monoidal(M).ok();
        return;
      }
      for (int a = 0; a < m1; ++a) {
        F2[free_pairs[k]] = a;
        f2(k + 1);
      }
    };
    std::function<void(int)> f0 = [&](int x) {
      if (x == n0) {
        for (int y = 0; y < n0; ++y) {
          F2[y] = F2[std::size_t(y) * n0] = T.e(F0[y]);
        }
        f2(0);
        return;
      }
      for (int a = 0; a < m0; ++a) {
        F0[x] = a;
        f0(x + 1);
      }
    };
    f0(1);
    return count;
  }
}  // namespace

TEST_CASE("identity functors are monoidal") {
  for (auto const& X : small_xmods()) {
    auto M = strict_functor(identity_morphism(X));
    CHECK(check_monoidal(M).ok());
    CHECK(M.is_strict());
  }
}

TEST_CASE("extracting from the Z4 extension") {
  auto B = z4_extension();
  auto M = extract_monoidal(B, {0, 1});
  CHECK(check_monoidal(M).ok());
  CHECK(!M.is_strict());
  // f(1,1) = iota^-1(1 + 1 - 0) = iota^-1(2) = generator of Z2
  CHECK(arrow_top(B.cod, M.f2(1, 1)) == 1);
  CHECK(arrow_top(B.cod, M.f2(0, 1)) == 0);

  CHECK_THROWS_AS(extract_monoidal(B, {0, 2}), SectionInvalid);
  CHECK_THROWS_AS(extract_monoidal(B, {2, 1}), SectionInvalid);
}

TEST_CASE("homomorphic sections give the strict functor of the split morphism") {
  int n = 0;
  for (auto const& B : fixtures()) {
    for (auto const& s : all_sections(B)) {
      auto M = extract_monoidal(B, s.map);
      CHECK(check_monoidal(M).ok());
      CHECK(M.is_strict());
      CHECK(same_monoidal(M, strict_functor(morphism_from_split(B, s))));
      ++n;
    }
  }
  CHECK(n > 20);
}

TEST_CASE("every section of every fixture gives a valid functor, all isomorphic") {
  int n = 0;
  for (auto const& B : fixtures()) {
    auto ss = all_set_sections(B);
    REQUIRE(!ss.empty());
    auto M0 = extract_monoidal(B, ss.front());
    for (auto const& s : ss) {
      auto M = extract_monoidal(B, s);
      auto r = check_monoidal(M);
      CHECK_MESSAGE(r.ok(), r.str());
      auto theta = monoidal_isomorphism(M0, M);
      CHECK(theta.has_value());
      ++n;
    }
  }
  CHECK(n > 50);
}

TEST_CASE("perturbing F2 is caught") {
  // D(Z3) -> A(Z3), strict and trivial; a lone nonzero f(1,1) is no cocycle
  auto A3 = aut_xmod(cyclic(3));
  auto M  = strict_functor(zero_morphism(discrete_xmod(cyclic(3)), A3));
  REQUIRE(check_monoidal(M).ok());
  M.F2[1 * 3 + 1] = arrow(A3, 1, 0);
  auto r          = check_monoidal(M);
  CHECK(r.has("cocycle"));
  CHECK(r.issues.front().witness.find("x=") != std::string::npos);

  auto X  = identity_xmod(cyclic(3));
  auto S  = strict_functor(identity_morphism(X));
  S.F2[4] = arrow(X, 1, 1);  // wrong endpoints
  CHECK(check_monoidal(S).has("F2-endpoints"));
}

TEST_CASE("butterfly from a monoidal functor: both round trips") {
  int n = 0;
  for (auto const& B : fixtures()) {
    if (B.dom.G0->order() > 8) {
      continue;
    }
    for (auto const& s : all_set_sections(B, 64)) {
      auto M = extract_monoidal(B, s);
      auto R = butterfly_from_monoidal(M);
      CHECK(validate_butterfly(R.butterfly).ok());
      auto w = isomorphic_butterflies(R.butterfly, B);
      REQUIRE(w.has_value());
      CHECK(validate_butterfly_morphism(*w).ok());
      auto back = extract_monoidal(R.butterfly, R.section);
      CHECK(same_monoidal(back, M));
      CHECK(monoidal_isomorphism(back, M).has_value());
      ++n;
    }
  }
  CHECK(n > 50);

  auto R4 = butterfly_from_monoidal(extract_monoidal(z4_extension(), {0, 1}));
  CHECK(R4.butterfly.E->order() == 4);
  CHECK(R4.butterfly.E->elem_order(R4.section[1]) == 4);

  auto X  = identity_xmod(symmetric3());
  auto RI = butterfly_from_monoidal(strict_functor(identity_morphism(X)));
  CHECK(isomorphic_butterflies(RI.butterfly, identity_butterfly(X)).has_value());
}

TEST_CASE("strict functors reconstruct the split butterfly") {
  auto xs = small_xmods();
  for (auto const& X : xs) {
    for (auto const& Y : xs) {
      for (auto const& P : all_morphisms(X, Y)) {
        auto R = butterfly_from_monoidal(strict_functor(P));
        CHECK(isomorphic_butterflies(R.butterfly, split_from_morphism(P).butterfly)
                  .has_value());
      }
    }
  }
}

TEST_CASE("monoidal functors out of discrete 2-groups match brute force") {
  for (auto const& H : {cyclic(2), cyclic(3), klein()}) {
    for (auto const& G : {cyclic(2), cyclic(3), cyclic(4)}) {
      if (H->order() == 4 && G->order() > 2) {
        continue;
      }
      auto D  = denormalize(discrete_xmod(H));
      auto A  = denormalize(aut_xmod(G));
      auto ms = monoidal_functors_from_discrete(D, A);
      CHECK(ms.size() == brute_monoidal_count(D, A));
      for (auto const& M : ms) {
        CHECK(check_monoidal(M).ok());
      }
    }
  }
  auto ms = monoidal_functors_from_discrete(denormalize(discrete_xmod(cyclic(2))),
                                            denormalize(aut_xmod(cyclic(2))));
  CHECK(ms.size() == 2);
  CHECK_THROWS_AS(monoidal_functors_from_discrete(denormalize(identity_xmod(cyclic(2))),
                                                  denormalize(aut_xmod(cyclic(2)))),
                  ShapeMismatch);
}
