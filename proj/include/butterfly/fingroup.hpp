#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "butterfly/errors.hpp"

namespace bfly {

  // Elements are indices 0..order-1 and index 0 is always the identity.
  class FinGroup {
   public:
    int order() const noexcept {
      return n_;
    }
    int mul(int a, int b) const noexcept {
      return table_[static_cast<std::size_t>(a) * n_ + b];
    }
    int inv(int a) const noexcept {
      return inv_[a];
    }
    int conj(int x, int a) const noexcept {  // x a x^-1
      return mul(mul(x, a), inv_[x]);
    }
    int elem_order(int a) const noexcept {
      return ord_[a];
    }
    std::string const& name() const noexcept {
      return name_;
    }
    std::vector<std::string> const& labels() const noexcept {
      return labels_;
    }
    std::vector<int> const& flat_table() const noexcept {
      return table_;
    }
    std::vector<std::vector<int>> table() const;
    bool is_abelian() const;
    // Sorted multiset of element orders.
    std::vector<int> order_profile() const;
    // Greedy generating sequence; each entry is the first element (in the
    // given priority, default index order) outside the span of the previous.
    std::vector<int> generators(std::vector<int> const& priority = {}) const;

    bool same_table(FinGroup const& other) const noexcept {
      return n_ == other.n_ && table_ == other.table_;
    }

    // Fills inverses and element orders; assumes `flat` is a group table.
    static std::shared_ptr<FinGroup const> from_flat(int                      n,
                                                     std::vector<int>         flat,
                                                     std::string              name,
                                                     std::vector<std::string> labels = {});

   private:
    int                      n_ = 0;
    std::vector<int>         table_;
    std::vector<int>         inv_;
    std::vector<int>         ord_;
    std::string              name_;
    std::vector<std::string> labels_;
  };

  using Group = std::shared_ptr<FinGroup const>;

  inline bool same_group(Group const& a, Group const& b) {
    return a == b || (a && b && a->same_table(*b));
  }

  // Validates Latin square, identity and associativity. If the identity is
  // not at index 0 the elements are relabeled; `relabel` receives the map
  // old index -> new index.
  Group construct_group(std::vector<std::vector<int>> const& table,
                        std::string                          name,
                        std::vector<std::string>             labels  = {},
                        std::vector<int>*                    relabel = nullptr);

  // For tables produced by constructions that are groups by proof; only the
  // cheap Latin-square checks run.
  Group make_group_unchecked(int n, std::vector<int> flat, std::string name);

  struct GroupHom {
    Group            dom;
    Group            cod;
    std::vector<int> map;

    int operator()(int a) const {
      return map[a];
    }
    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const {
      return is_injective() && is_surjective();
    }
    bool operator==(GroupHom const& o) const {
      return same_group(dom, o.dom) && same_group(cod, o.cod) && map == o.map;
    }
  };

  // Throws NotAHom on failure.
  GroupHom make_hom(Group dom, Group cod, std::vector<int> map);
  bool     is_hom(FinGroup const& dom, FinGroup const& cod, std::vector<int> const& map);
  GroupHom identity_hom(Group const& G);
  GroupHom zero_hom(Group const& dom, Group const& cod);
  // Diagrammatic order: first f, then g.
  GroupHom then(GroupHom const& f, GroupHom const& g);
  // Inverse of an isomorphism.
  GroupHom inverse_hom(GroupHom const& f);

  struct GroupAction {
    Group                         actor;
    Group                         target;
    std::vector<std::vector<int>> act;  // act[x] is a permutation of target

    int operator()(int x, int g) const {
      return act[x][g];
    }
  };

  Report      validate_action(GroupAction const& xi);
  GroupAction trivial_action(Group const& actor, Group const& target);
  GroupAction conjugation_action(Group const& G);
  // Restrict an action along a hom into the actor.
  GroupAction pull_action(GroupHom const& f, GroupAction const& xi);

  struct Subgroup {
    Group            ambient;
    std::vector<int> elements;  // sorted, contains 0

    bool contains(int a) const;
    int  size() const {
      return static_cast<int>(elements.size());
    }
  };

  bool     is_subgroup(Group const& G, std::vector<int> const& elems);
  bool     is_normal(Subgroup const& N);
  Subgroup generated_subgroup(Group const& G, std::vector<int> const& gens);
  Subgroup normal_closure(Subgroup const& S);
  Subgroup kernel(GroupHom const& f);
  Subgroup image(GroupHom const& f);
  std::pair<Subgroup, Subgroup> image_and_normal_closure(GroupHom const& f);

  // A subgroup as a group in its own right, elements in ascending order of
  // ambient index, together with its inclusion.
  struct SubgroupGroup {
    Group    group;
    GroupHom incl;
  };
  SubgroupGroup as_group(Subgroup const& S, std::string name = "");

  struct Quotient {
    Group            group;
    GroupHom         proj;
    std::vector<int> reps;  // reps[q] is the minimal element of coset q
  };
  // Cosets labelled by minimal representative, in ascending order.
  Quotient quotient(Group const& G, Subgroup const& N);

  struct Pullback {
    Group                            group;
    GroupHom                         p1;
    GroupHom                         p2;
    std::vector<std::pair<int, int>> pairs;  // lexicographic

    std::vector<int>                 lookup;  // a * |cod g dom| + c -> index or -1
    int                              width = 0;

    int index_of(int a, int c) const {
      return lookup[static_cast<std::size_t>(a) * width + c];
    }
  };
  Pullback pullback(GroupHom const& f, GroupHom const& g);
  Pullback direct_product(Group const& A, Group const& B);

  // Elements (a, x) ordered as a * |G0| + x.
  struct Semidirect {
    Group    group;
    GroupHom c;  // (a,x) -> x
    GroupHom e;  // x -> (1,x)
    GroupHom g;  // a -> (a,1)
    int      n0 = 0;

    int idx(int a, int x) const {
      return a * n0 + x;
    }
    int top(int ax) const {
      return ax / n0;
    }
    int bottom(int ax) const {
      return ax % n0;
    }
  };
  Semidirect semidirect_product(GroupAction const& xi);

  constexpr int kDefaultBound = 24;

  struct AutGroup {
    Group                         group;
    GroupAction                   ev;
    std::vector<std::vector<int>> perms;  // perms[k] is automorphism k

    int index_of(std::vector<int> const& perm) const;
  };
  AutGroup automorphism_group(Group const& G, int bound = kDefaultBound);

  // Backtracking over generator images. `allow(x, y)` filters candidate
  // images per generator; `visit` returns false to stop. Generators are
  // chosen greedily along `priority`.
  struct HomSearch {
    std::function<bool(int, int)> allow;
    bool                          injective = false;
    std::vector<int>              priority;
  };
  void for_each_hom(Group const&                                   G,
                    Group const&                                   H,
                    HomSearch const&                               opts,
                    std::function<bool(std::vector<int> const&)> const& visit);
  std::vector<GroupHom> all_homs(Group const& G, Group const& H);

  std::optional<GroupHom> isomorphism_search(Group const& G,
                                             Group const& H,
                                             int          bound = kDefaultBound);

  // Small named groups.
  Group trivial_group();
  Group cyclic(int n);
  Group klein();
  Group symmetric3();
  Group dihedral(int n);  // order 2n
  Group quaternion();
  Group product_group(Group const& A, Group const& B);
  // Group of permutations closed under composition; perms must form a group.
  Group permutation_group(std::vector<std::vector<int>> perms, std::string name);
  // Lookup by name ("Z2", "V4", "S3", "D4", "Q8", "Z2xZ4", ...).
  Group named_group(std::string const& name);

}  // namespace bfly
