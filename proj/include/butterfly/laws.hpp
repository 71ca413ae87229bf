#pragma once

#include <string>
#include <vector>

#include "butterfly/fixtures.hpp"
#include "butterfly/io.hpp"

namespace bfly {

  struct Failure {
    std::string property;
    json        witness;  // the serialized inputs of the failing case
  };

  struct SuiteReport {
    std::string          name;
    std::size_t          cases = 0;
    std::vector<Failure> failures;
    double               wall_ms = 0;

    bool ok() const noexcept {
      return failures.empty();
    }
  };

  struct SuiteOptions {
    // Corrupts the operation the suite is about, to show the suite can fail.
    bool     inject_fault = false;
    unsigned threads      = 0;  // 0: hardware concurrency
  };

  // "janelidze", "twocells", "bicategory", "flip", "action", "fractions",
  // "weakmap", "classify".
  std::vector<std::string> const& suite_names();

  // Throws UnknownSuite.
  SuiteReport run_suite(std::string const& name, FixtureSet const& fx,
                        SuiteOptions const& opts = {});

  SuiteReport run_janelidze_suite(FixtureSet const& fx, SuiteOptions const& opts = {});
  SuiteReport run_twocell_suite(FixtureSet const& fx, SuiteOptions const& opts = {});
  SuiteReport run_bicategory_suite(FixtureSet const& fx, SuiteOptions const& opts = {});
  SuiteReport run_flip_suite(FixtureSet const& fx, SuiteOptions const& opts = {});
  SuiteReport run_action_suite(FixtureSet const& fx, SuiteOptions const& opts = {});
  SuiteReport run_fractions_suite(FixtureSet const& fx, SuiteOptions const& opts = {});
  SuiteReport run_weakmap_suite(FixtureSet const& fx, SuiteOptions const& opts = {});
  // Pairs (H, G) from {Z2, Z3, Z4, Z2xZ2} with |H||G| <= fx.size_bound.
  SuiteReport run_classify_suite(FixtureSet const& fx, SuiteOptions const& opts = {});

  json to_json(SuiteReport const& R);

}  // namespace bfly
