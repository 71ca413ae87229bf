#include "butterfly/fingroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace bfly {

  std::string Report::str() const {
    std::ostringstream os;
    for (auto const& i : issues) {
      os << i.condition << ": " << i.witness << "\n";
    }
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // FinGroup
  ////////////////////////////////////////////////////////////////////////

  std::shared_ptr<FinGroup const> FinGroup::from_flat(int                      n,
                                                      std::vector<int>         flat,
                                                      std::string              name,
                                                      std::vector<std::string> labels) {
    auto G    = std::make_shared<FinGroup>();
    G->n_     = n;
    G->table_ = std::move(flat);
    G->name_  = std::move(name);
    G->labels_ = std::move(labels);
    G->inv_.assign(n, 0);
    G->ord_.assign(n, 1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (G->mul(a, b) == 0) {
          G->inv_[a] = b;
          break;
        }
      }
      int k = 1;
      for (int p = a; p != 0 && k <= n; p = G->mul(p, a)) {
        ++k;
      }
      G->ord_[a] = k;
    }
    return G;
  }

  std::vector<std::vector<int>> FinGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        t[a][b] = mul(a, b);
      }
    }
    return t;
  }

  bool FinGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        if (mul(a, b) != mul(b, a)) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<int> FinGroup::order_profile() const {
    std::vector<int> p(ord_);
    std::sort(p.begin(), p.end());
    return p;
  }

  namespace {
    // Closure of `inside` under right multiplication by gens.
    void close_under(FinGroup const&          G,
                     std::vector<int> const& gens,
                     std::vector<char>&      inside,
                     std::vector<int>&       members) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (int g : gens) {
          int b = G.mul(members[i], g);
          if (!inside[b]) {
            inside[b] = 1;
            members.push_back(b);
          }
        }
      }
    }
  }  // namespace

  std::vector<int> FinGroup::generators(std::vector<int> const& priority) const {
    std::vector<int>  order = priority;
    std::vector<char> seen(n_, 0);
    for (int x : priority) {
      seen[x] = 1;
    }
    for (int x = 0; x < n_; ++x) {
      if (!seen[x]) {
        order.push_back(x);
      }
    }
    std::vector<int>  gens;
    std::vector<char> inside(n_, 0);
    std::vector<int>  members{0};
    inside[0] = 1;
    for (int x : order) {
      if (!inside[x]) {
        gens.push_back(x);
        // a finite subsemigroup is a subgroup, so right-closure suffices
        close_under(*this, gens, inside, members);
      }
    }
    return gens;
  }

  Group construct_group(std::vector<std::vector<int>> const& table,
                        std::string                          name,
                        std::vector<std::string>             labels,
                        std::vector<int>*                    relabel) {
    int n = static_cast<int>(table.size());
    if (n == 0) {
      throw NotAGroup("empty table");
    }
    for (auto const& row : table) {
      if (static_cast<int>(row.size()) != n) {
        throw NotAGroup("table is not square");
      }
      for (int v : row) {
        if (v < 0 || v >= n) {
          throw NotAGroup("entry out of range");
        }
      }
    }
    for (int a = 0; a < n; ++a) {
      std::vector<char> r(n, 0), c(n, 0);
      for (int b = 0; b < n; ++b) {
        if (r[table[a][b]]++ || c[table[b][a]]++) {
          throw NotAGroup("row or column " + std::to_string(a)
                          + " is not a permutation");
        }
      }
    }
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
      bool ok = true;
      for (int b = 0; b < n && ok; ++b) {
        ok = table[a][b] == b && table[b][a] == b;
      }
      if (ok) {
        e = a;
      }
    }
    if (e < 0) {
      throw NotAGroup("no identity element");
    }
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[0], p[e]);  // p is an involution
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        flat[static_cast<std::size_t>(p[a]) * n + p[b]] = p[table[a][b]];
      }
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        int ab = flat[static_cast<std::size_t>(a) * n + b];
        for (int c = 0; c < n; ++c) {
          int l = flat[static_cast<std::size_t>(ab) * n + c];
          int r = flat[static_cast<std::size_t>(a) * n
                       + flat[static_cast<std::size_t>(b) * n + c]];
          if (l != r) {
            throw NotAGroup("associativity fails at (" + std::to_string(a) + ","
                            + std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    if (!labels.empty()) {
      if (static_cast<int>(labels.size()) != n) {
        throw NotAGroup("label count differs from order");
      }
      std::swap(labels[0], labels[e]);
    }
    if (relabel != nullptr) {
      *relabel = p;
    }
    return FinGroup::from_flat(n, std::move(flat), std::move(name), std::move(labels));
  }

  Group make_group_unchecked(int n, std::vector<int> flat, std::string name) {
    return FinGroup::from_flat(n, std::move(flat), std::move(name));
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  bool is_hom(FinGroup const& dom, FinGroup const& cod, std::vector<int> const& map) {
    if (static_cast<int>(map.size()) != dom.order()) {
      return false;
    }
    for (int v : map) {
      if (v < 0 || v >= cod.order()) {
        return false;
      }
    }
    if (map[0] != 0) {
      return false;
    }
    for (int a = 0; a < dom.order(); ++a) {
      for (int b = 0; b < dom.order(); ++b) {
        if (map[dom.mul(a, b)] != cod.mul(map[a], map[b])) {
          return false;
        }
      }
    }
    return true;
  }

  GroupHom make_hom(Group dom, Group cod, std::vector<int> map) {
    if (!is_hom(*dom, *cod, map)) {
      throw NotAHom("map " + dom->name() + " -> " + cod->name()
                    + " is not a homomorphism");
    }
    return GroupHom{std::move(dom), std::move(cod), std::move(map)};
  }

  bool GroupHom::is_injective() const {
    std::vector<char> hit(cod->order(), 0);
    for (int v : map) {
      if (hit[v]++) {
        return false;
      }
    }
    return true;
  }

  bool GroupHom::is_surjective() const {
    std::vector<char> hit(cod->order(), 0);
    int               count = 0;
    for (int v : map) {
      if (!hit[v]) {
        hit[v] = 1;
        ++count;
      }
    }
    return count == cod->order();
  }

  GroupHom identity_hom(Group const& G) {
    std::vector<int> m(G->order());
    std::iota(m.begin(), m.end(), 0);
    return GroupHom{G, G, std::move(m)};
  }

  GroupHom zero_hom(Group const& dom, Group const& cod) {
    return GroupHom{dom, cod, std::vector<int>(dom->order(), 0)};
  }

  GroupHom then(GroupHom const& f, GroupHom const& g) {
    if (!same_group(f.cod, g.dom)) {
      throw CodomainMismatch("cannot compose " + f.dom->name() + " -> "
                             + f.cod->name() + " with " + g.dom->name() + " -> "
                             + g.cod->name());
    }
    std::vector<int> m(f.map.size());
    for (std::size_t a = 0; a < m.size(); ++a) {
      m[a] = g.map[f.map[a]];
    }
    return GroupHom{f.dom, g.cod, std::move(m)};
  }

  GroupHom inverse_hom(GroupHom const& f) {
    if (!f.is_iso()) {
      throw NotAHom("not an isomorphism");
    }
    std::vector<int> m(f.map.size());
    for (std::size_t a = 0; a < m.size(); ++a) {
      m[f.map[a]] = static_cast<int>(a);
    }
    return GroupHom{f.cod, f.dom, std::move(m)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Actions
  ////////////////////////////////////////////////////////////////////////

  Report validate_action(GroupAction const& xi) {
    Report     r;
    auto const& A = *xi.actor;
    auto const& T = *xi.target;
    if (static_cast<int>(xi.act.size()) != A.order()) {
      r.add("shape", "act has wrong length");
      return r;
    }
    for (int x = 0; x < A.order(); ++x) {
      if (static_cast<int>(xi.act[x].size()) != T.order()) {
        r.add("shape", "act[" + std::to_string(x) + "] has wrong length");
        return r;
      }
      std::vector<char> hit(T.order(), 0);
      for (int g : xi.act[x]) {
        if (g < 0 || g >= T.order() || hit[g]++) {
          r.add("permutation", "act[" + std::to_string(x) + "]");
          return r;
        }
      }
    }
    for (int g = 0; g < T.order(); ++g) {
      if (xi.act[0][g] != g) {
        r.add("unit", "act[1] moves " + std::to_string(g));
      }
    }
    for (int x = 0; x < A.order(); ++x) {
      for (int y = 0; y < A.order(); ++y) {
        for (int g = 0; g < T.order(); ++g) {
          if (xi.act[A.mul(x, y)][g] != xi.act[x][xi.act[y][g]]) {
            r.add("composition", "x=" + std::to_string(x) + " y=" + std::to_string(y)
                                     + " g=" + std::to_string(g));
            break;
          }
        }
      }
      for (int g = 0; g < T.order(); ++g) {
        for (int h = 0; h < T.order(); ++h) {
          if (xi.act[x][T.mul(g, h)] != T.mul(xi.act[x][g], xi.act[x][h])) {
            r.add("automorphism", "x=" + std::to_string(x) + " g=" + std::to_string(g)
                                      + " h=" + std::to_string(h));
            g = T.order();
            break;
          }
        }
      }
    }
    return r;
  }

  GroupAction trivial_action(Group const& actor, Group const& target) {
    std::vector<int> id(target->order());
    std::iota(id.begin(), id.end(), 0);
    return GroupAction{actor, target, std::vector<std::vector<int>>(actor->order(), id)};
  }

  GroupAction conjugation_action(Group const& G) {
    std::vector<std::vector<int>> act(G->order(), std::vector<int>(G->order()));
    for (int x = 0; x < G->order(); ++x) {
      for (int a = 0; a < G->order(); ++a) {
        act[x][a] = G->conj(x, a);
      }
    }
    return GroupAction{G, G, std::move(act)};
  }

  GroupAction pull_action(GroupHom const& f, GroupAction const& xi) {
    std::vector<std::vector<int>> act(f.dom->order());
    for (int x = 0; x < f.dom->order(); ++x) {
      act[x] = xi.act[f(x)];
    }
    return GroupAction{f.dom, xi.target, std::move(act)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroups
  ////////////////////////////////////////////////////////////////////////

  bool Subgroup::contains(int a) const {
    return std::binary_search(elements.begin(), elements.end(), a);
  }

  bool is_subgroup(Group const& G, std::vector<int> const& elems) {
    std::vector<char> in(G->order(), 0);
    for (int a : elems) {
      in[a] = 1;
    }
    if (!in[0]) {
      return false;
    }
    for (int a : elems) {
      for (int b : elems) {
        if (!in[G->mul(a, G->inv(b))]) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_normal(Subgroup const& N) {
    auto const& G = *N.ambient;
    std::vector<char> in(G.order(), 0);
    for (int a : N.elements) {
      in[a] = 1;
    }
    for (int g = 0; g < G.order(); ++g) {
      for (int a : N.elements) {
        if (!in[G.conj(g, a)]) {
          return false;
        }
      }
    }
    return true;
  }

  Subgroup generated_subgroup(Group const& G, std::vector<int> const& gens) {
    std::vector<char> inside(G->order(), 0);
    std::vector<int>  members{0};
    inside[0] = 1;
    close_under(*G, gens, inside, members);
    std::sort(members.begin(), members.end());
    return Subgroup{G, std::move(members)};
  }

  Subgroup normal_closure(Subgroup const& S) {
    std::vector<int> conjugates;
    for (int g = 0; g < S.ambient->order(); ++g) {
      for (int a : S.elements) {
        conjugates.push_back(S.ambient->conj(g, a));
      }
    }
    std::sort(conjugates.begin(), conjugates.end());
    conjugates.erase(std::unique(conjugates.begin(), conjugates.end()), conjugates.end());
    return generated_subgroup(S.ambient, conjugates);
  }

  Subgroup kernel(GroupHom const& f) {
    std::vector<int> k;
    for (int a = 0; a < f.dom->order(); ++a) {
      if (f(a) == 0) {
        k.push_back(a);
      }
    }
    return Subgroup{f.dom, std::move(k)};
  }

  Subgroup image(GroupHom const& f) {
    std::vector<int> im(f.map);
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return Subgroup{f.cod, std::move(im)};
  }

  std::pair<Subgroup, Subgroup> image_and_normal_closure(GroupHom const& f) {
    Subgroup im = image(f);
    return {im, normal_closure(im)};
  }

  SubgroupGroup as_group(Subgroup const& S, std::string name) {
    auto const&      G = *S.ambient;
    int              n = S.size();
    std::vector<int> pos(G.order(), -1);
    for (int i = 0; i < n; ++i) {
      pos[S.elements[i]] = i;
    }
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        flat[static_cast<std::size_t>(i) * n + j]
            = pos[G.mul(S.elements[i], S.elements[j])];
      }
    }
    if (name.empty()) {
      name = "sub(" + G.name() + ")";
    }
    Group H = make_group_unchecked(n, std::move(flat), std::move(name));
    return SubgroupGroup{H, GroupHom{H, S.ambient, S.elements}};
  }

  Quotient quotient(Group const& G, Subgroup const& N) {
    if (!is_normal(N)) {
      throw NotNormal("subgroup of order " + std::to_string(N.size()) + " in "
                      + G->name());
    }
    int              n = G->order();
    std::vector<int> rep(n, -1);
    for (int a = 0; a < n; ++a) {
      if (rep[a] >= 0) {
        continue;
      }
      for (int k : N.elements) {
        rep[G->mul(a, k)] = a;  // a is the first element reached in its coset
      }
    }
    std::vector<int> reps;
    std::vector<int> qidx(n, -1);
    for (int a = 0; a < n; ++a) {
      if (rep[a] == a) {
        qidx[a] = static_cast<int>(reps.size());
        reps.push_back(a);
      }
    }
    int              m = static_cast<int>(reps.size());
    std::vector<int> flat(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        flat[static_cast<std::size_t>(i) * m + j] = qidx[rep[G->mul(reps[i], reps[j])]];
      }
    }
    Group            Q = make_group_unchecked(m, std::move(flat), G->name() + "/N");
    std::vector<int> proj(n);
    for (int a = 0; a < n; ++a) {
      proj[a] = qidx[rep[a]];
    }
    return Quotient{Q, GroupHom{G, Q, std::move(proj)}, std::move(reps)};
  }

  Pullback pullback(GroupHom const& f, GroupHom const& g) {
    if (!same_group(f.cod, g.cod)) {
      throw CodomainMismatch(f.cod->name() + " vs " + g.cod->name());
    }
    Pullback P;
    P.width = g.dom->order();
    P.lookup.assign(static_cast<std::size_t>(f.dom->order()) * P.width, -1);
    for (int a = 0; a < f.dom->order(); ++a) {
      for (int c = 0; c < g.dom->order(); ++c) {
        if (f(a) == g(c)) {
          P.lookup[static_cast<std::size_t>(a) * P.width + c]
              = static_cast<int>(P.pairs.size());
          P.pairs.emplace_back(a, c);
        }
      }
    }
    int              n = static_cast<int>(P.pairs.size());
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    std::vector<int> m1(n), m2(n);
    for (int i = 0; i < n; ++i) {
      auto [a, c] = P.pairs[i];
      m1[i]       = a;
      m2[i]       = c;
      for (int j = 0; j < n; ++j) {
        auto [b, d] = P.pairs[j];
        flat[static_cast<std::size_t>(i) * n + j]
            = P.index_of(f.dom->mul(a, b), g.dom->mul(c, d));
      }
    }
    P.group = make_group_unchecked(
        n, std::move(flat), f.dom->name() + "x_" + f.cod->name() + g.dom->name());
    P.p1 = GroupHom{P.group, f.dom, std::move(m1)};
    P.p2 = GroupHom{P.group, g.dom, std::move(m2)};
    return P;
  }

  Pullback direct_product(Group const& A, Group const& B) {
    Group    one = trivial_group();
    Pullback P   = pullback(zero_hom(A, one), zero_hom(B, one));
    // rebuild with a product-style name
    P.group = make_group_unchecked(P.group->order(), P.group->flat_table(),
                                   A->name() + "x" + B->name());
    P.p1.dom = P.group;
    P.p2.dom = P.group;
    return P;
  }

  Semidirect semidirect_product(GroupAction const& xi) {
    auto const&      G  = *xi.target;
    auto const&      G0 = *xi.actor;
    int              n  = G.order() * G0.order();
    Semidirect       S;
    S.n0 = G0.order();
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int p = 0; p < n; ++p) {
      int a = p / S.n0, x = p % S.n0;
      for (int q = 0; q < n; ++q) {
        int b = q / S.n0, y = q % S.n0;
        flat[static_cast<std::size_t>(p) * n + q]
            = S.idx(G.mul(a, xi(x, b)), G0.mul(x, y));
      }
    }
    S.group = make_group_unchecked(n, std::move(flat), G.name() + "|x" + G0.name());
    std::vector<int> c(n), e(G0.order()), g(G.order());
    for (int p = 0; p < n; ++p) {
      c[p] = p % S.n0;
    }
    for (int x = 0; x < G0.order(); ++x) {
      e[x] = S.idx(0, x);
    }
    for (int a = 0; a < G.order(); ++a) {
      g[a] = S.idx(a, 0);
    }
    S.c = GroupHom{S.group, xi.actor, std::move(c)};
    S.e = GroupHom{xi.actor, S.group, std::move(e)};
    S.g = GroupHom{xi.target, S.group, std::move(g)};
    return S;
  }

  ////////////////////////////////////////////////////////////////////////
  // Searches
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct Searcher {
      FinGroup const&                               G;
      FinGroup const&                               H;
      HomSearch const&                              opts;
      std::function<bool(std::vector<int> const&)> const& visit;
      std::vector<int>                              gens;
      std::vector<int>                              img;
      bool                                          stop = false;

      // Extend the map over the span of gens[0..k]; -1 entries unknown.
      bool extend(std::size_t k, std::vector<int>& map) const {
        std::fill(map.begin(), map.end(), -1);
        map[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t i = 0; i < queue.size(); ++i) {
          int a = queue[i];
          for (std::size_t j = 0; j <= k; ++j) {
            int b = G.mul(a, gens[j]);
            int v = H.mul(map[a], img[j]);
            if (map[b] < 0) {
              map[b] = v;
              queue.push_back(b);
            } else if (map[b] != v) {
              return false;
            }
          }
        }
        if (opts.injective) {
          std::vector<char> hit(H.order(), 0);
          for (int a : queue) {
            if (hit[map[a]]++) {
              return false;
            }
          }
        }
        return true;
      }

      void run(std::size_t k) {
        std::vector<int> map(G.order(), -1);
        if (k == gens.size()) {
          if (gens.empty()) {
            map.assign(G.order(), 0);
            if (opts.injective && G.order() > 1) {
              return;
            }
          } else {
            extend(k - 1, map);
          }
          if (!visit(map)) {
            stop = true;
          }
          return;
        }
        int x  = gens[k];
        int ox = G.elem_order(x);
        for (int y = 0; y < H.order() && !stop; ++y) {
          int oy = H.elem_order(y);
          if (opts.injective ? oy != ox : ox % oy != 0) {
            continue;
          }
          if (opts.allow && !opts.allow(x, y)) {
            continue;
          }
          img[k] = y;
          if (extend(k, map)) {
            run(k + 1);
          }
        }
      }
    };
  }  // namespace

  void for_each_hom(Group const&                                        G,
                    Group const&                                        H,
                    HomSearch const&                                    opts,
                    std::function<bool(std::vector<int> const&)> const& visit) {
    Searcher s{*G, *H, opts, visit, G->generators(opts.priority), {}};
    s.img.assign(s.gens.size(), 0);
    s.run(0);
  }

  std::vector<GroupHom> all_homs(Group const& G, Group const& H) {
    std::vector<GroupHom> out;
    for_each_hom(G, H, HomSearch{}, [&](std::vector<int> const& m) {
      out.push_back(GroupHom{G, H, m});
      return true;
    });
    return out;
  }

  int AutGroup::index_of(std::vector<int> const& perm) const {
    auto it = std::lower_bound(perms.begin(), perms.end(), perm);
    return it != perms.end() && *it == perm ? static_cast<int>(it - perms.begin()) : -1;
  }

  AutGroup automorphism_group(Group const& G, int bound) {
    if (G->order() > bound) {
      throw BoundExceeded("automorphism_group: order " + std::to_string(G->order())
                          + " exceeds bound " + std::to_string(bound));
    }
    AutGroup A;
    HomSearch opts;
    opts.injective = true;
    for_each_hom(G, G, opts, [&](std::vector<int> const& m) {
      A.perms.push_back(m);
      return true;
    });
    std::sort(A.perms.begin(), A.perms.end());
    int              n = static_cast<int>(A.perms.size());
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    std::vector<int> comp(G->order());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int a = 0; a < G->order(); ++a) {
          comp[a] = A.perms[i][A.perms[j][a]];
        }
        flat[static_cast<std::size_t>(i) * n + j] = A.index_of(comp);
      }
    }
    A.group = make_group_unchecked(n, std::move(flat), "Aut(" + G->name() + ")");
    A.ev    = GroupAction{A.group, G, A.perms};
    return A;
  }

  std::optional<GroupHom> isomorphism_search(Group const& G, Group const& H, int bound) {
    if (G->order() > bound || H->order() > bound) {
      throw BoundExceeded("isomorphism_search: order exceeds bound "
                          + std::to_string(bound));
    }
    if (G->order() != H->order() || G->order_profile() != H->order_profile()) {
      return std::nullopt;
    }
    std::optional<GroupHom> found;
    HomSearch               opts;
    opts.injective = true;
    for_each_hom(G, H, opts, [&](std::vector<int> const& m) {
      found = GroupHom{G, H, m};
      return false;
    });
    return found;
  }

  ////////////////////////////////////////////////////////////////////////
  // Named groups
  ////////////////////////////////////////////////////////////////////////

  Group trivial_group() {
    return make_group_unchecked(1, {0}, "1");
  }

  Group cyclic(int n) {
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        flat[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
      }
    }
    return make_group_unchecked(n, std::move(flat), "Z" + std::to_string(n));
  }

  Group product_group(Group const& A, Group const& B) {
    return direct_product(A, B).group;
  }

  Group klein() {
    auto V = product_group(cyclic(2), cyclic(2));
    return make_group_unchecked(4, V->flat_table(), "V4");
  }

  Group dihedral(int n) {
    // r^i s^j at index i + n j; s r = r^-1 s
    int              N = 2 * n;
    std::vector<int> flat(static_cast<std::size_t>(N) * N);
    for (int p = 0; p < N; ++p) {
      int i = p % n, j = p / n;
      for (int q = 0; q < N; ++q) {
        int k = q % n, l = q / n;
        int r = j == 0 ? (i + k) % n : ((i - k) % n + n) % n;
        flat[static_cast<std::size_t>(p) * N + q] = r + n * ((j + l) % 2);
      }
    }
    return make_group_unchecked(N, std::move(flat), "D" + std::to_string(n));
  }

  Group symmetric3() {
    return permutation_group({{1, 2, 0}, {1, 0, 2}}, "S3");
  }

  Group quaternion() {
    // index 2*b + s for basis b in {1,i,j,k} and sign s
    static int const basis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static int const sign[4][4]  = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<int> flat(64);
    for (int p = 0; p < 8; ++p) {
      for (int q = 0; q < 8; ++q) {
        int b = p / 2, s = p % 2, c = q / 2, t = q % 2;
        flat[p * 8 + q] = 2 * basis[b][c] + ((s + t + sign[b][c]) % 2);
      }
    }
    return make_group_unchecked(8, std::move(flat), "Q8");
  }

  Group permutation_group(std::vector<std::vector<int>> gens, std::string name) {
    std::size_t                   deg = gens.empty() ? 0 : gens[0].size();
    std::vector<int>              id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> seen{{id, 0}};
    std::vector<std::vector<int>> elems{id};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (auto const& g : gens) {
        std::vector<int> h(deg);
        for (std::size_t k = 0; k < deg; ++k) {
          h[k] = g[elems[i][k]];
        }
        if (seen.emplace(h, 0).second) {
          elems.push_back(h);
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    int n = static_cast<int>(elems.size());
    for (int i = 0; i < n; ++i) {
      seen[elems[i]] = i;
    }
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    std::vector<int> h(deg);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < deg; ++k) {
          h[k] = elems[i][elems[j][k]];
        }
        flat[static_cast<std::size_t>(i) * n + j] = seen[h];
      }
    }
    return make_group_unchecked(n, std::move(flat), std::move(name));
  }

  Group named_group(std::string const& name) {
    auto x = name.find('x');
    if (x != std::string::npos) {
      auto A = named_group(name.substr(0, x));
      auto B = named_group(name.substr(x + 1));
      return make_group_unchecked(A->order() * B->order(),
                                  product_group(A, B)->flat_table(), name);
    }
    if (name == "1" || name == "trivial") {
      return trivial_group();
    }
    if (name == "V4") {
      return klein();
    }
    if (name == "S3") {
      return symmetric3();
    }
    if (name == "Q8") {
      return quaternion();
    }
    if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'D')) {
      int n = 0;
      try {
        n = std::stoi(name.substr(1));
      } catch (std::exception const&) {
        n = 0;
      }
      if (n >= 1 && n <= 64) {
        return name[0] == 'Z' ? cyclic(n) : dihedral(n);
      }
    }
    throw ParseError("unknown group name '" + name + "'");
  }

}  // namespace bfly
