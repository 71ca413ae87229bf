#include <map>

#include "doctest.h"
#include "oracles.hpp"

#include "butterfly/fingroup.hpp"

using namespace bfly;

namespace {
  std::vector<Group> small_groups() {
    return {trivial_group(), cyclic(2), cyclic(3),   cyclic(4),     klein(),
            cyclic(5),       cyclic(6), symmetric3(), cyclic(8),    dihedral(4),
            quaternion(),    named_group("Z2xZ4"),    named_group("Z2xZ2xZ2")};
  }

  std::vector<std::vector<int>> z4_table() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        t[a][b] = (a + b) % 4;
      }
    }
    return t;
  }
}  // namespace

TEST_CASE("construct_group accepts tables and rejects non-groups") {
  CHECK(construct_group({{0}}, "1")->order() == 1);
  auto Z4 = construct_group(z4_table(), "Z4");
  CHECK(Z4->order() == 4);
  CHECK(Z4->mul(1, 1) == 2);
  CHECK_THROWS_AS(construct_group({{0, 1}, {1, 1}}, "bad"), NotAGroup);

  // Latin square with an identity but no associativity (order-5 loop).
  std::vector<std::vector<int>> loop = {{0, 1, 2, 3, 4},
                                        {1, 0, 3, 4, 2},
                                        {2, 4, 0, 1, 3},
                                        {3, 2, 4, 0, 1},
                                        {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(construct_group(loop, "loop"), NotAGroup);

  // Latin square without identity.
  CHECK_THROWS_AS(construct_group({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}, "noid"), NotAGroup);
}

TEST_CASE("construct_group moves the identity to index 0") {
  // Z3 written with identity at position 2: element k stands for k+1 mod 3.
  std::vector<std::vector<int>> t(3, std::vector<int>(3));
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      t[a][b] = ((a + 1) + (b + 1)) % 3 == 0 ? 2 : ((a + 1) + (b + 1)) % 3 - 1;
    }
  }
  std::vector<int> relabel;
  auto             G = construct_group(t, "Z3", {"a", "b", "e"}, &relabel);
  CHECK(relabel[2] == 0);
  CHECK(G->labels()[0] == "e");
  CHECK(G->mul(0, 1) == 1);
  CHECK(isomorphism_search(G, cyclic(3)).has_value());
}

TEST_CASE("kernel") {
  auto Z4 = cyclic(4);
  auto Z2 = cyclic(2);
  CHECK(kernel(make_hom(Z4, Z2, {0, 1, 0, 1})).elements == std::vector<int>{0, 2});
  CHECK(kernel(identity_hom(Z2)).elements == std::vector<int>{0});
  CHECK(kernel(zero_hom(Z2, Z2)).elements == std::vector<int>{0, 1});
  CHECK_THROWS_AS(make_hom(Z4, Z2, {0, 1, 1, 0}), NotAHom);
}

TEST_CASE("quotient examples") {
  auto Z4 = cyclic(4);
  auto q  = quotient(Z4, Subgroup{Z4, {0, 2}});
  CHECK(q.group->order() == 2);
  CHECK(q.proj.map == std::vector<int>{0, 1, 0, 1});

  auto S3 = symmetric3();
  auto q1 = quotient(S3, Subgroup{S3, {0}});
  CHECK(q1.group->same_table(*S3));
  CHECK(q1.proj.map == identity_hom(S3).map);
  CHECK(quotient(S3, Subgroup{S3, {0, 1, 2, 3, 4, 5}}).group->order() == 1);

  // a transposition subgroup of S3 is not normal
  int t = -1;
  for (int a = 1; a < 6; ++a) {
    if (S3->elem_order(a) == 2) {
      t = a;
      break;
    }
  }
  CHECK_THROWS_AS(quotient(S3, generated_subgroup(S3, {t})), NotNormal);
}

TEST_CASE("quotient projection is surjective with kernel N, for every normal subgroup") {
  for (auto const& G : small_groups()) {
    // all subgroups via subsets generated by at most two elements
    std::map<std::vector<int>, int> seen;
    for (int a = 0; a < G->order(); ++a) {
      for (int b = a; b < G->order(); ++b) {
        auto N = generated_subgroup(G, {a, b});
        if (!seen.emplace(N.elements, 0).second || !is_normal(N)) {
          continue;
        }
        auto q = quotient(G, N);
        CHECK(is_hom(*G, *q.group, q.proj.map));
        CHECK(q.proj.is_surjective());
        CHECK(kernel(q.proj).elements == N.elements);
        CHECK(construct_group(q.group->table(), "q")->same_table(*q.group));
        for (std::size_t i = 1; i < q.reps.size(); ++i) {
          CHECK(q.reps[i - 1] < q.reps[i]);
        }
      }
    }
  }
}

TEST_CASE("image and normal closure") {
  auto Z4 = cyclic(4);
  auto Z2 = cyclic(2);
  auto [im, cl] = image_and_normal_closure(make_hom(Z2, Z4, {0, 2}));
  CHECK(im.elements == std::vector<int>{0, 2});
  CHECK(cl.elements == std::vector<int>{0, 2});

  auto S3 = symmetric3();
  for (int t = 1; t < 6; ++t) {
    if (S3->elem_order(t) != 2) {
      continue;
    }
    auto [im2, cl2] = image_and_normal_closure(make_hom(Z2, S3, {0, t}));
    CHECK(im2.size() == 2);
    CHECK(cl2.elements == oracle::conj_closure(*S3, {t}));
    CHECK(cl2.size() == 6);
  }
  auto [im3, cl3] = image_and_normal_closure(zero_hom(S3, Z4));
  CHECK(im3.elements == std::vector<int>{0});
  CHECK(cl3.elements == std::vector<int>{0});
}

TEST_CASE("pullback and product") {
  auto Z2 = cyclic(2);
  auto Z4 = cyclic(4);
  auto d  = pullback(identity_hom(Z2), identity_hom(Z2));
  CHECK(d.group->order() == 2);
  CHECK(d.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(direct_product(Z2, Z4).group->order() == 8);
  CHECK_THROWS_AS(pullback(identity_hom(Z2), identity_hom(Z4)), CodomainMismatch);

  auto par = make_hom(Z4, Z2, {0, 1, 0, 1});
  auto p   = pullback(par, par);
  // oracle: pairs with equal parity
  int count = 0;
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 4; ++c) {
      count += (a % 2) == (c % 2);
    }
  }
  CHECK(p.group->order() == count);
  CHECK(count == 8);
  CHECK(construct_group(p.group->table(), "p")->same_table(*p.group));
}

TEST_CASE("pullback universal property on all cones from small groups") {
  auto Z4  = cyclic(4);
  auto Z2  = cyclic(2);
  auto V4  = klein();
  auto f   = make_hom(Z4, Z2, {0, 1, 0, 1});
  auto g   = make_hom(V4, Z2, {0, 1, 0, 1});
  auto P   = pullback(f, g);
  for (auto const& K : {cyclic(2), cyclic(4), klein(), symmetric3()}) {
    for (auto const& u : oracle::all_homs(*K, *Z4)) {
      for (auto const& v : oracle::all_homs(*K, *V4)) {
        bool cone = true;
        for (int k = 0; k < K->order(); ++k) {
          cone = cone && f(u[k]) == g(v[k]);
        }
        if (!cone) {
          continue;
        }
        std::vector<int> w(K->order());
        int              factorings = 0;
        for (int k = 0; k < K->order(); ++k) {
          w[k] = P.index_of(u[k], v[k]);
          REQUIRE(w[k] >= 0);
        }
        CHECK(is_hom(*K, *P.group, w));
        // uniqueness: count homs K -> P whose projections are u and v
        for (auto const& w2 : oracle::all_homs(*K, *P.group)) {
          bool ok = true;
          for (int k = 0; k < K->order(); ++k) {
            ok = ok && P.p1(w2[k]) == u[k] && P.p2(w2[k]) == v[k];
          }
          factorings += ok;
        }
        CHECK(factorings == 1);
      }
    }
  }
}

TEST_CASE("semidirect products") {
  auto Z2 = cyclic(2);
  auto Z3 = cyclic(3);
  auto s  = semidirect_product(trivial_action(Z2, Z2));
  CHECK(s.group->order() == 4);
  CHECK(isomorphism_search(s.group, klein()).has_value());

  GroupAction inv{Z2, Z3, {{0, 1, 2}, {0, 2, 1}}};
  REQUIRE(validate_action(inv).ok());
  auto s3 = semidirect_product(inv);
  CHECK(!s3.group->is_abelian());
  // oracle: explicit bijections to S3 as permutations
  CHECK(!oracle::all_isos(*s3.group, *symmetric3()).empty());
}

TEST_CASE("semidirect sequence is split exact for all actions up to order 8") {
  std::vector<Group> gs = {cyclic(2), cyclic(3), cyclic(4), klein(), symmetric3(),
                           dihedral(4), quaternion()};
  int actions = 0;
  for (auto const& G : gs) {
    auto A = automorphism_group(G);
    for (auto const& G0 : gs) {
      for (auto const& phi : all_homs(G0, A.group)) {
        auto xi = pull_action(phi, A.ev);
        REQUIRE(validate_action(xi).ok());
        auto s = semidirect_product(xi);
        ++actions;
        CHECK(then(s.e, s.c).map == identity_hom(G0).map);
        CHECK(s.g.is_injective());
        CHECK(s.c.is_surjective());
        CHECK(kernel(s.c).elements == image(s.g).elements);
        CHECK(is_hom(*s.group, *G0, s.c.map));
        CHECK(is_hom(*G, *s.group, s.g.map));
      }
    }
  }
  CHECK(actions > 100);
}

TEST_CASE("automorphism groups") {
  CHECK(automorphism_group(cyclic(2)).group->order() == 1);
  CHECK(automorphism_group(cyclic(4)).group->order() == 2);
  auto AV = automorphism_group(klein());
  CHECK(AV.group->order() == 6);
  CHECK(isomorphism_search(AV.group, symmetric3()).has_value());
  CHECK_THROWS_AS(automorphism_group(cyclic(25)), BoundExceeded);
  CHECK(automorphism_group(cyclic(25), 30).group->order() == 20);

  for (auto const& G : small_groups()) {
    if (G->order() > 8) {
      continue;
    }
    auto A = automorphism_group(G);
    // oracle: every product-preserving bijection
    auto brute = oracle::all_isos(*G, *G);
    std::sort(brute.begin(), brute.end());
    CHECK(A.perms == brute);
    CHECK(A.perms[0] == identity_hom(G).map);
    for (int i = 0; i < A.group->order(); ++i) {
      for (int j = 0; j < A.group->order(); ++j) {
        int k = A.group->mul(i, j);
        for (int a = 0; a < G->order(); ++a) {
          CHECK(A.perms[k][a] == A.perms[i][A.perms[j][a]]);
        }
      }
    }
    CHECK(validate_action(A.ev).ok());
  }
}

TEST_CASE("isomorphism search agrees with exhaustive bijection search") {
  CHECK(!isomorphism_search(cyclic(4), klein()).has_value());
  auto S3 = symmetric3();
  auto id = isomorphism_search(S3, S3);
  REQUIRE(id.has_value());
  CHECK(id->is_iso());
  auto gs = small_groups();
  for (auto const& G : gs) {
    for (auto const& H : gs) {
      if (G->order() != H->order() || G->order() > 8) {
        continue;
      }
      auto w     = isomorphism_search(G, H);
      bool brute = !oracle::all_isos(*G, *H).empty();
      CHECK(w.has_value() == brute);
      if (w) {
        CHECK(is_hom(*G, *H, w->map));
        CHECK(w->is_iso());
      }
    }
  }
  CHECK_THROWS_AS(isomorphism_search(cyclic(30), cyclic(30)), BoundExceeded);
}

TEST_CASE("hom enumeration agrees with brute force") {
  std::vector<Group> gs = {cyclic(2), cyclic(3), cyclic(4), klein(), symmetric3()};
  for (auto const& G : gs) {
    for (auto const& H : gs) {
      auto fast = all_homs(G, H);
      auto slow = oracle::all_homs(*G, *H);
      std::vector<std::vector<int>> maps;
      for (auto const& f : fast) {
        maps.push_back(f.map);
      }
      std::sort(maps.begin(), maps.end());
      std::sort(slow.begin(), slow.end());
      CHECK(maps == slow);
    }
  }
}

TEST_CASE("conjugation action") {
  auto V4 = klein();
  auto cv = conjugation_action(V4);
  for (int x = 0; x < 4; ++x) {
    CHECK(cv.act[x] == identity_hom(V4).map);
  }
  auto S3 = symmetric3();
  auto cs = conjugation_action(S3);
  CHECK(validate_action(cs).ok());
  CHECK(cs.act[0] == identity_hom(S3).map);
  std::vector<int> rot;
  for (int a = 1; a < 6; ++a) {
    if (S3->elem_order(a) == 3) {
      rot.push_back(a);
    }
  }
  REQUIRE(rot.size() == 2);
  for (int t = 1; t < 6; ++t) {
    if (S3->elem_order(t) == 2) {
      CHECK(cs(t, rot[0]) == rot[1]);
      CHECK(cs(t, rot[1]) == rot[0]);
    }
  }
}

TEST_CASE("named groups") {
  CHECK(named_group("Z2xZ2")->order() == 4);
  CHECK(isomorphism_search(named_group("Z2xZ2"), klein()).has_value());
  CHECK(named_group("D4")->order() == 8);
  CHECK(!named_group("D4")->is_abelian());
  CHECK(!isomorphism_search(named_group("D4"), quaternion()).has_value());
  CHECK(construct_group(quaternion()->table(), "Q8")->order() == 8);
  CHECK(construct_group(dihedral(5)->table(), "D5")->order() == 10);
  CHECK_THROWS_AS(named_group("nope"), ParseError);
}
