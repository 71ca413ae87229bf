// One PASS/FAIL line per acceptance criterion. Limits are wall-clock seconds
// and include fixture generation.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "butterfly/extension.hpp"
#include "butterfly/laws.hpp"

using namespace bfly;

namespace {
  constexpr std::uint64_t kSeed = 0;

  struct Criterion {
    int                      id;
    std::string              title;
    int                      bound;
    std::vector<std::string> suites;
    double                   limit_s;
  };

  bool report(int id, std::string const& title, bool ok, std::string const& detail) {
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    return ok;
  }

  bool run(Criterion const& c) {
    auto        t0       = std::chrono::steady_clock::now();
    auto        fx       = generate_fixtures(kSeed, c.bound);
    std::size_t cases    = 0;
    std::size_t failures = 0;
    std::string first;
    for (auto const& s : c.suites) {
      auto r = run_suite(s, fx);
      cases += r.cases;
      failures += r.failures.size();
      if (first.empty() && !r.ok()) {
        first = " first: " + r.failures.front().property;
      }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu cases, %zu failures, %.2f s (limit %.0f s)", cases,
                  failures, secs, c.limit_s);
    bool ok = cases > 0 && failures == 0 && secs < c.limit_s;
    return report(c.id, c.title, ok, buf + first);
  }

  bool classification_examples() {
    auto t0 = std::chrono::steady_clock::now();
    auto fx = generate_fixtures(kSeed, 16);
    auto r  = run_suite("classify", fx);

    auto                       z2 = classify_extensions(cyclic(2), cyclic(2), true);
    std::multiset<std::string> types;
    for (auto const& k : z2.classes) {
      types.insert(k.e_type);
    }
    auto z3      = classify_extensions(cyclic(3), cyclic(3), true);
    int  trivial = 0;
    for (auto const& k : z3.classes) {
      trivial += std::all_of(k.factor_set.phi.begin(), k.factor_set.phi.end(),
                             [](int p) { return p == 0; });
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = r.ok() && r.cases == 16 && z2.classes.size() == 2 && z2.oracle_classes == 2
              && types == std::multiset<std::string>{"Z2xZ2", "Z4"} && trivial == 3
              && secs < 120;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%zu pairs, %zu mismatches; Ext(Z2,Z2) = %zu classes {%s}; "
                  "Ext(Z3,Z3) trivial action = %d; %.2f s (limit 120 s)",
                  r.cases, r.failures.size(), z2.classes.size(),
                  (types.size() == 2 ? *types.begin() + "," + *types.rbegin() : std::string("?"))
                      .c_str(),
                  trivial, secs);
    return report(8, "classification", ok, buf);
  }

  bool fault_injection() {
    auto        small = generate_fixtures(kSeed, 8);
    std::string detail;
    bool        ok = true;
    for (auto const& s : suite_names()) {
      auto const& fx = s == "classify" ? generate_fixtures(kSeed, 16) : small;
      auto        r  = run_suite(s, fx, SuiteOptions{true, 0});
      ok             = ok && !r.ok();
      detail += s + "=" + std::to_string(r.failures.size()) + " ";
    }
    return report(9, "fault injection", ok, "failures under fault: " + detail);
  }
}  // namespace

int main() {
  std::vector<Criterion> cs{
      {1, "Janelidze round trips", 16, {"janelidze"}, 10},
      {2, "two-cells = natural transformations", 8, {"twocells"}, 30},
      {3, "bicategory laws", 8, {"bicategory"}, 60},
      {4, "flippable equivalences", 8, {"flip"}, 60},
      {5, "action laws and Q.I = E_Q", 8, {"action"}, 60},
      {6, "EF0/EF2/EF3 instances", 8, {"fractions"}, 60},
      {7, "weak-morphism dictionary", 8, {"weakmap"}, 60},
  };
  bool all = true;
  for (auto const& c : cs) {
    all = run(c) && all;
  }
  all = classification_examples() && all;
  all = fault_injection() && all;
  return all ? 0 : 1;
}
