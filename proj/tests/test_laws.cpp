#include <algorithm>
#include <map>

#include "doctest.h"

#include "butterfly/extension.hpp"
#include "butterfly/laws.hpp"

using namespace bfly;

namespace {
  std::string fingerprint(FixtureSet const& fx) {
    json j = json::array();
    for (auto const& X : fx.crossed_modules) {
      j.push_back(to_json(X));
    }
    for (auto const& P : fx.morphisms) {
      j.push_back(to_json(P));
    }
    for (auto const& B : fx.butterflies) {
      j.push_back(to_json(B));
    }
    for (auto const& C : fx.two_cells) {
      j.push_back(to_json(C));
    }
    for (auto const& T : fx.two_groups) {
      j.push_back(to_json(T));
    }
    return canonical_dump(j);
  }

  bool contains_xmod(FixtureSet const& fx, CrossedModule const& X) {
    for (auto const& Y : fx.crossed_modules) {
      if (same_xmod(X, Y)) {
        return true;
      }
    }
    return false;
  }
}  // namespace

TEST_CASE("fixture contents") {
  auto fx = generate_fixtures(0, 4);
  CHECK(contains_xmod(fx, discrete_xmod(cyclic(2))));
  CHECK(contains_xmod(fx, discrete_xmod(klein())));
  CHECK(contains_xmod(fx, aut_xmod(cyclic(3))));
  CHECK(contains_xmod(fx, identity_xmod(cyclic(2))));
  int identities = 0;
  for (auto const& B : fx.butterflies) {
    identities += same_butterfly(B, identity_butterfly(B.dom));
  }
  CHECK(identities >= 5);

  auto big = generate_fixtures(0, 16);
  CHECK(contains_xmod(big, aut_xmod(klein())));
  bool nonabelian = false;
  for (auto const& B : big.butterflies) {
    nonabelian = nonabelian || !B.E->is_abelian();
  }
  CHECK(nonabelian);

  CHECK_THROWS_AS(generate_fixtures(0, 17), BoundExceeded);
}

TEST_CASE("every fixture validates and respects the bound") {
  for (int b : {4, 8, 16}) {
    auto fx = generate_fixtures(7, b);
    for (auto const& X : fx.crossed_modules) {
      CHECK(validate_crossed_module(X).ok());
      CHECK(X.G->order() * X.G0->order() <= 2 * b);
    }
    for (auto const& P : fx.morphisms) {
      CHECK(validate_morphism(P).ok());
    }
    for (auto const& B : fx.butterflies) {
      CHECK(validate_butterfly(B).ok());
      CHECK(B.E->order() <= b);
    }
    for (auto const& C : fx.two_cells) {
      CHECK(validate_two_cell(C).ok());
    }
    for (auto const& T : fx.two_groups) {
      CHECK(validate_strict2group(T).ok());
      CHECK(T.G1->order() <= b);
    }
  }
}

TEST_CASE("fixtures are deterministic in the seed") {
  CHECK(fingerprint(generate_fixtures(3, 8)) == fingerprint(generate_fixtures(3, 8)));
  CHECK(fingerprint(generate_fixtures(3, 8)) != fingerprint(generate_fixtures(4, 8)));
}

TEST_CASE("kernel pairs") {
  // |G1| = sum over fibers of |fiber|^2 = |ker f| |G|
  for (auto const& f : all_homs(dihedral(4), klein())) {
    auto T = kernel_pair(f);
    CHECK(validate_strict2group(T).ok());
    std::map<int, int> fiber;
    for (int a = 0; a < 8; ++a) {
      ++fiber[f(a)];
    }
    int sq = 0;
    for (auto [y, k] : fiber) {
      sq += k * k;
    }
    CHECK(T.G1->order() == sq);
  }
}

TEST_CASE("suites are clean and fail under their faults") {
  auto fx = generate_fixtures(0, 4);
  for (auto const& name : suite_names()) {
    auto r = run_suite(name, fx);
    CHECK_MESSAGE(r.ok(), name, " ", to_json(r).dump().substr(0, 400));
    CHECK(r.cases > 0);
    auto f = run_suite(name, fx, SuiteOptions{true, 1});
    CHECK_MESSAGE(!f.ok(), name);
    CHECK(std::all_of(f.failures.begin(), f.failures.end(),
                      [](Failure const& x) { return x.witness.is_object(); }));
  }
}

TEST_CASE("suite plumbing") {
  CHECK_THROWS_AS(run_suite("nosuch", generate_fixtures(0, 4)), UnknownSuite);

  FixtureSet empty;
  auto       r = run_bicategory_suite(empty);
  CHECK(r.cases == 0);
  CHECK(r.ok());

  auto fx = generate_fixtures(0, 4);
  auto a  = run_suite("fractions", fx, SuiteOptions{false, 1});
  auto b  = run_suite("fractions", fx, SuiteOptions{false, 4});
  CHECK(a.cases == b.cases);
  auto fa = run_suite("fractions", fx, SuiteOptions{true, 1});
  auto fb = run_suite("fractions", fx, SuiteOptions{true, 4});
  REQUIRE(fa.failures.size() == fb.failures.size());
  for (std::size_t i = 0; i < fa.failures.size(); ++i) {
    CHECK(fa.failures[i].property == fb.failures[i].property);
  }

  auto j = to_json(a);
  CHECK(j["suite"] == "fractions");
  CHECK(j["ok"] == true);
  CHECK(j["failures"].empty());
}

TEST_CASE("witnesses replay") {
  auto fx = generate_fixtures(0, 4);
  auto f  = run_suite("janelidze", fx, SuiteOptions{true, 1});
  REQUIRE(!f.ok());
  auto X = load_xmod(f.failures.front().witness["xmod"]);
  CHECK(validate_crossed_module(X).ok());
  CHECK(same_xmod(normalize(denormalize(X)), X));
}
