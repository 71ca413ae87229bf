#include "butterfly/laws.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <thread>

#include "butterfly/extension.hpp"
#include "butterfly/fractor.hpp"
#include "butterfly/weakmap.hpp"

namespace bfly {

  namespace {
    struct Sink {
      std::function<json()> const& inputs;
      std::vector<Failure>         out;

      void fail(std::string property, json detail = nullptr) {
        json w = inputs();
        if (!detail.is_null()) {
          w["detail"] = std::move(detail);
        }
        out.push_back({std::move(property), std::move(w)});
      }
      void check(bool ok, std::string property, json detail = nullptr) {
        if (!ok) {
          fail(std::move(property), std::move(detail));
        }
      }
      void check(Report const& r, std::string property) {
        if (!r.ok()) {
          fail(std::move(property), r.str());
        }
      }
    };

    // inputs() is only evaluated when the case fails.
    struct Case {
      std::function<json()>      inputs;
      std::function<void(Sink&)> run;
    };

    SuiteReport run_cases(std::string name, std::vector<Case> const& cases, unsigned threads) {
      auto        t0 = std::chrono::steady_clock::now();
      SuiteReport rep;
      rep.name  = std::move(name);
      rep.cases = cases.size();
      std::vector<std::vector<Failure>> results(cases.size());
      std::atomic<std::size_t>          next{0};
      auto                              worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
          Sink s{cases[i].inputs, {}};
          try {
            cases[i].run(s);
          } catch (Error const& e) {
            s.fail("threw " + e.kind(), e.what());
          } catch (std::exception const& e) {
            s.fail("threw", e.what());
          }
          results[i] = std::move(s.out);
        }
      };
      if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
      }
      threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(1, cases.size())));
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
      }
      worker();
      for (auto& t : pool) {
        t.join();
      }
      for (auto& r : results) {
        for (auto& f : r) {
          rep.failures.push_back(std::move(f));
        }
      }
      rep.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return rep;
    }

    int total(CrossedModule const& X) {
      return X.G->order() * X.G0->order();
    }

    void expect_iso(Sink& s, std::string const& property, Butterfly const& A,
                    Butterfly const& B) {
      auto w = isomorphic_butterflies(A, B);
      if (!w) {
        s.fail(property, "no isomorphism found");
        return;
      }
      auto r = validate_butterfly_morphism(*w);
      if (!r.ok() || !w->f.is_iso()) {
        s.fail(property + " (witness rejected)", r.str());
      }
    }

    bool parallel(XModMorphism const& P, XModMorphism const& Q) {
      return same_xmod(P.dom, Q.dom) && same_xmod(P.cod, Q.cod);
    }

    // The bound used for exhaustive two-cell enumeration: |H0|, |G1| <= 8.
    bool small_pair(XModMorphism const& P) {
      return P.dom.G0->order() <= 8 && total(P.cod) <= 8;
    }

    std::vector<std::pair<std::size_t, std::size_t>> parallel_pairs(FixtureSet const& fx) {
      std::vector<std::pair<std::size_t, std::size_t>> out;
      auto const&                                      ms = fx.morphisms;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!small_pair(ms[i])) {
          continue;
        }
        for (std::size_t j = 0; j < ms.size(); ++j) {
          if (parallel(ms[i], ms[j])) {
            out.push_back({i, j});
          }
        }
      }
      return out;
    }

    // Corrupted stand-ins used under fault injection.
    Butterfly drop_sigma(Butterfly B) {
      B.sigma = zero_hom(B.E, B.dom.G0);
      return B;
    }
  }  // namespace

  std::vector<std::string> const& suite_names() {
    static std::vector<std::string> const names{"janelidze", "twocells", "bicategory",
                                                "flip",      "action",   "fractions",
                                                "weakmap",   "classify"};
    return names;
  }

  SuiteReport run_janelidze_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case> cases;
    bool              fault = opts.inject_fault;
    for (auto const& X : fx.crossed_modules) {
      if (total(X) > 32) {
        continue;
      }
      cases.push_back({[X] { return json{{"xmod", to_json(X)}}; },
                       [X, fault](Sink& s) {
                         auto D = denormalize(X);
                         s.check(validate_strict2group(D), "denormalize is a strict 2-group");
                         auto N = normalize(D);
                         if (fault) {
                           N.boundary = zero_hom(N.G, N.G0);
                         }
                         s.check(same_xmod(N, X), "normalize(denormalize(X)) = X");
                       }});
    }
    for (auto const& T : fx.two_groups) {
      if (T.G1->order() > 16) {
        continue;
      }
      cases.push_back({[T] { return json{{"two_group", to_json(T)}}; },
                       [T](Sink& s) {
                         auto X = normalize(T);
                         s.check(validate_crossed_module(X), "normalize is a crossed module");
                         auto D = denormalize(X);
                         s.check(compare_strict2groups(D, T, renormalize_map(T),
                                                       identity_hom(T.G0).map),
                                 "denormalize(normalize(T)) = T via (a, x) -> a e(x)");
                       }});
    }
    return run_cases("janelidze", cases, opts.threads);
  }

  SuiteReport run_twocell_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case> cases;
    bool              fault = opts.inject_fault;
    for (auto [i, j] : parallel_pairs(fx)) {
      auto const& P = fx.morphisms[i];
      auto const& Q = fx.morphisms[j];
      cases.push_back(
          {[P, Q] { return json{{"P", to_json(P)}, {"Q", to_json(Q)}}; },
           [P, Q, fault](Sink& s) {
             auto cells = all_two_cells(P, Q);
             auto nats  = all_natural_transformations(P, Q);
             if (fault && !cells.empty()) {
               cells.pop_back();
             }
             std::sort(cells.begin(), cells.end());
             std::sort(nats.begin(), nats.end());
             s.check(cells == nats, "two-cells = natural transformations",
                     json{{"two_cells", cells}, {"natural", nats}});
             for (auto const& a : cells) {
               s.check(validate_two_cell(XModTwoCell{P, Q, a}), "two-cell validates");
             }
           }});
    }
    for (auto const& C : fx.two_cells) {
      cases.push_back({[C] { return to_json(C); },
                       [C](Sink& s) {
                         s.check(validate_two_cell(C), "stored two-cell validates");
                         s.check(check_naturality(C), "stored two-cell is natural");
                       }});
    }
    return run_cases("twocells", cases, opts.threads);
  }

  SuiteReport run_bicategory_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case> cases;
    bool              fault = opts.inject_fault;
    auto              comp  = [fault](Butterfly const& A, Butterfly const& B) {
      return fault ? drop_sigma(compose(A, B)) : compose(A, B);
    };
    auto const& bs = fx.butterflies;
    for (auto const& B : bs) {
      cases.push_back({[B] { return json{{"B", to_json(B)}}; },
                       [B, comp](Sink& s) {
                         s.check(validate_butterfly(B), "fixture validates");
                         expect_iso(s, "I . B = B", comp(identity_butterfly(B.dom), B), B);
                         expect_iso(s, "B . I = B", comp(B, identity_butterfly(B.cod)), B);
                       }});
    }
    for (std::size_t i = 0; i < bs.size(); ++i) {
      for (std::size_t j = 0; j < bs.size(); ++j) {
        if (!same_xmod(bs[i].cod, bs[j].dom)) {
          continue;
        }
        for (std::size_t k = 0; k < bs.size(); ++k) {
          if (!same_xmod(bs[j].cod, bs[k].dom)) {
            continue;
          }
          auto const& A = bs[i];
          auto const& B = bs[j];
          auto const& C = bs[k];
          cases.push_back(
              {[A, B, C] {
                 return json{{"A", to_json(A)}, {"B", to_json(B)}, {"C", to_json(C)}};
               },
               [A, B, C, comp](Sink& s) {
                 auto left  = comp(comp(A, B), C);
                 auto right = comp(A, comp(B, C));
                 s.check(validate_butterfly(left), "composite validates");
                 expect_iso(s, "(A . B) . C = A . (B . C)", left, right);
               }});
        }
      }
    }
    return run_cases("bicategory", cases, opts.threads);
  }

  SuiteReport run_flip_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case> cases;
    bool              fault = opts.inject_fault;
    for (auto const& B : fx.butterflies) {
      cases.push_back({[B] { return json{{"B", to_json(B)}}; },
                       [B, fault](Sink& s) {
                         if (!is_flippable(B)) {
                           bool threw = false;
                           try {
                             flip(B);
                           } catch (NotFlippable const&) {
                             threw = true;
                           }
                           s.check(threw, "flip refuses a non-flippable butterfly");
                           return;
                         }
                         auto F = fault ? B : flip(B);
                         s.check(validate_butterfly(F), "flip validates");
                         expect_iso(s, "B . B* = I", compose(B, F), identity_butterfly(B.dom));
                         expect_iso(s, "B* . B = I", compose(F, B), identity_butterfly(B.cod));
                       }});
    }
    return run_cases("flip", cases, opts.threads);
  }

  SuiteReport run_action_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case> cases;
    bool              fault = opts.inject_fault;
    auto              act   = [fault](XModMorphism const& Q, Butterfly const& B) {
      return fault ? drop_sigma(reduced_compose(Q, B)) : reduced_compose(Q, B);
    };
    auto const& bs = fx.butterflies;
    auto const& ms = fx.morphisms;
    for (auto const& B : bs) {
      cases.push_back({[B] { return json{{"B", to_json(B)}}; },
                       [B, act](Sink& s) {
                         expect_iso(s, "A1: id . B = B", act(identity_morphism(B.dom), B), B);
                       }});
      for (auto const& Q : ms) {
        if (!same_xmod(Q.cod, B.dom)) {
          continue;
        }
        cases.push_back({[Q, B] { return json{{"Q", to_json(Q)}, {"B", to_json(B)}}; },
                         [Q, B, act](Sink& s) {
                           auto QB = act(Q, B);
                           s.check(validate_butterfly(QB), "Q . B validates");
                           expect_iso(s, "Q . B = E_Q B", QB,
                                      compose(split_from_morphism(Q).butterfly, B));
                         }});
        for (auto const& Q2 : ms) {
          if (!same_xmod(Q2.cod, Q.dom)) {
            continue;
          }
          cases.push_back({[Q2, Q, B] {
                             return json{{"Q2", to_json(Q2)}, {"Q", to_json(Q)}, {"B", to_json(B)}};
                           },
                           [Q2, Q, B, act](Sink& s) {
                             expect_iso(s, "A2: (Q2 Q) . B = Q2 . (Q . B)",
                                        act(compose_morphisms(Q2, Q), B), act(Q2, act(Q, B)));
                           }});
        }
        for (auto const& C : bs) {
          if (!same_xmod(B.cod, C.dom)) {
            continue;
          }
          cases.push_back({[Q, B, C] {
                             return json{{"Q", to_json(Q)}, {"B", to_json(B)}, {"C", to_json(C)}};
                           },
                           [Q, B, C, act](Sink& s) {
                             expect_iso(s, "A3: Q . (B C) = (Q . B) C", act(Q, compose(B, C)),
                                        compose(act(Q, B), C));
                           }});
        }
      }
    }
    for (auto const& Q : ms) {
      cases.push_back({[Q] { return json{{"Q", to_json(Q)}}; },
                       [Q, act](Sink& s) {
                         s.check(same_butterfly(act(Q, identity_butterfly(Q.cod)),
                                                split_from_morphism(Q).butterfly),
                                 "Q . I = E_Q literally");
                       }});
    }
    return run_cases("action", cases, opts.threads);
  }

  SuiteReport run_fractions_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case> cases;
    bool              fault = opts.inject_fault;
    for (auto const& P : fx.morphisms) {
      cases.push_back({[P] { return json{{"P", to_json(P)}}; },
                       [P](Sink& s) {
                         bool we = is_weak_equivalence(P).holds;
                         bool fl = is_flippable(split_from_morphism(P).butterfly);
                         // the converse doubles as the negative control
                         s.check(we == fl, "EF0: P weak equivalence iff E_P flippable",
                                 json{{"weak_equivalence", we}, {"flippable", fl}});
                       }});
    }
    for (auto [i, j] : parallel_pairs(fx)) {
      auto const& P = fx.morphisms[i];
      auto const& Q = fx.morphisms[j];
      cases.push_back(
          {[P, Q] { return json{{"P", to_json(P)}, {"Q", to_json(Q)}}; },
           [P, Q, fault](Sink& s) {
             auto cells = all_two_cells(P, Q);
             auto bms   = all_butterfly_morphisms(split_from_morphism(P).butterfly,
                                                  split_from_morphism(Q).butterfly);
             s.check(cells.size() == bms.size(), "EF2: #two-cells = #butterfly morphisms",
                     json{{"two_cells", cells.size()}, {"morphisms", bms.size()}});
             std::set<std::vector<int>> targets, images;
             for (auto const& m : bms) {
               targets.insert(m.f.map);
             }
             for (auto const& a : cells) {
               auto F = two_cell_image(XModTwoCell{P, Q, fault ? cells.front() : a});
               s.check(validate_butterfly_morphism(F), "EF2: F(alpha) validates");
               s.check(targets.count(F.f.map) == 1, "EF2: F(alpha) is a butterfly morphism");
               images.insert(F.f.map);
             }
             s.check(images.size() == cells.size(), "EF2: alpha -> F(alpha) injective");
           }});
    }
    for (auto const& B : fx.butterflies) {
      cases.push_back({[B] { return json{{"B", to_json(B)}}; },
                       [B](Sink& s) {
                         auto S = span_of_butterfly(B);
                         s.check(validate_crossed_module(S.xmod), "span crossed module");
                         s.check(validate_morphism(S.left), "span left leg");
                         s.check(validate_morphism(S.right), "span right leg");
                         s.check(is_weak_equivalence(S.left).holds,
                                 "left leg is a weak equivalence");
                         s.check(span_coincidence(B), "EF3: literal coincidence");

                         auto pb = pullback_crossed_module(B.dom, B.sigma);
                         s.check(validate_crossed_module(pb.xmod), "pullback crossed module");
                         s.check(is_weak_equivalence(pb.to_base).holds,
                                 "pullback along onto sigma is a weak equivalence");

                         auto F = to_fractor(B);
                         s.check(validate_fractor(F), "fractor conditions");
                         s.check(same_butterfly(from_fractor(F), B), "fractor round trip");
                       }});
    }
    for (auto const& C : fx.two_cells) {
      cases.push_back({[C] { return to_json(C); },
                       [C](Sink& s) {
                         s.check(validate_two_cell(C), "two-cell validates");
                         s.check(check_naturality(C), "two-cell natural on arrows");
                       }});
    }
    return run_cases("fractions", cases, opts.threads);
  }

  SuiteReport run_weakmap_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case> cases;
    bool              fault = opts.inject_fault;
    for (auto const& B : fx.butterflies) {
      if (B.dom.G0->order() > 8 || B.E->order() > 8) {
        continue;
      }
      cases.push_back(
          {[B] { return json{{"B", to_json(B)}}; },
           [B, fault](Sink& s) {
             for (auto const& sec : all_set_sections(B)) {
               auto M = extract_monoidal(B, sec);
               if (fault) {
                 for (auto& y : M.F0) {
                   y = 0;
                 }
                 M.F0.back() = M.cod.G0->order() - 1;
               }
               auto r = check_monoidal(M);
               if (!r.ok()) {
                 s.fail("extracted functor is monoidal", json{{"section", sec}, {"report", r.str()}});
                 continue;
               }
               auto R = butterfly_from_monoidal(M);
               s.check(validate_butterfly(R.butterfly), "reconstruction validates");
               expect_iso(s, "reconstruction = B", R.butterfly, B);
               s.check(same_monoidal(extract_monoidal(R.butterfly, R.section), M),
                       "re-extraction reproduces the functor", json{{"section", sec}});
             }
             for (auto const& h : all_sections(B)) {
               auto M = extract_monoidal(B, h.map);
               s.check(M.is_strict(), "homomorphic section gives a strict functor",
                       json{{"section", h.map}});
               s.check(same_monoidal(M, strict_functor(morphism_from_split(B, h))),
                       "strict functor of the split morphism");
             }
           }});
    }
    return run_cases("weakmap", cases, opts.threads);
  }

  SuiteReport run_classify_suite(FixtureSet const& fx, SuiteOptions const& opts) {
    std::vector<Case>  cases;
    bool               fault = opts.inject_fault;
    std::vector<Group> basic{cyclic(2), cyclic(3), cyclic(4), klein()};
    for (auto const& H : basic) {
      for (auto const& G : basic) {
        if (H->order() * G->order() > fx.size_bound) {
          continue;
        }
        cases.push_back(
            {[H, G] { return json{{"H", to_json(H)}, {"G", to_json(G)}}; },
             [H, G, fault](Sink& s) {
               auto c = classify_extensions(H, G, true);
               if (fault && !c.classes.empty()) {
                 c.classes.pop_back();
               }
               s.check(c.classes.size() == c.oracle_classes,
                       "butterfly classes = factor-set classes",
                       json{{"butterfly_side", c.classes.size()}, {"oracle", c.oracle_classes}});
               if (H->order() == 2 && G->order() == 2) {
                 std::multiset<std::string> types;
                 for (auto const& k : c.classes) {
                   types.insert(k.e_type);
                 }
                 s.check(types == std::multiset<std::string>{"Z2xZ2", "Z4"},
                         "Ext(Z2, Z2) = {Z4, Z2xZ2}");
               }
               if (H->order() == 3 && G->order() == 3) {
                 int trivial = 0;
                 for (auto const& k : c.classes) {
                   trivial += std::all_of(k.factor_set.phi.begin(), k.factor_set.phi.end(),
                                          [](int p) { return p == 0; });
                 }
                 s.check(trivial == 3, "Ext(Z3, Z3) with trivial action has 3 classes",
                         json{{"trivial_action_classes", trivial}});
               }
             }});
      }
    }
    return run_cases("classify", cases, opts.threads);
  }

  SuiteReport run_suite(std::string const& name, FixtureSet const& fx, SuiteOptions const& opts) {
    using Runner = SuiteReport (*)(FixtureSet const&, SuiteOptions const&);
    static std::vector<std::pair<char const*, Runner>> const runners{
        {"janelidze", run_janelidze_suite}, {"twocells", run_twocell_suite},
        {"bicategory", run_bicategory_suite}, {"flip", run_flip_suite},
        {"action", run_action_suite},       {"fractions", run_fractions_suite},
        {"weakmap", run_weakmap_suite},     {"classify", run_classify_suite}};
    for (auto const& [n, f] : runners) {
      if (name == n) {
        return f(fx, opts);
      }
    }
    throw UnknownSuite("'" + name + "'");
  }

  json to_json(SuiteReport const& R) {
    json fs = json::array();
    for (auto const& f : R.failures) {
      fs.push_back({{"property", f.property}, {"witness", f.witness}});
    }
    return json{{"suite", R.name},
                {"cases", R.cases},
                {"failures", fs},
                {"wall_ms", R.wall_ms},
                {"ok", R.ok()}};
  }

}  // namespace bfly
