#include "avsp/canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace avsp {

namespace {

using Partition = std::vector<std::vector<int>>;  // ordered list of cells

// split cells by neighbor counts against each cell used as splitter until
// equitable; deterministic
void refine(const ColoredGraph& g, Partition& part) {
  bool changed = true;
  Bitset splitter(g.n);
  while (changed) {
    changed = false;
    for (std::size_t si = 0; si < part.size(); ++si) {
      splitter.clear();
      for (int v : part[si]) splitter.set(v);
      for (std::size_t ci = 0; ci < part.size(); ++ci) {
        if (part[ci].size() <= 1) continue;
        std::map<std::size_t, std::vector<int>> by_count;
        for (int v : part[ci]) by_count[g.adj[v].count_and(splitter)].push_back(v);
        if (by_count.size() <= 1) continue;
        // replace cell ci by subcells in ascending count order
        Partition::iterator it = part.begin() + ci;
        it = part.erase(it);
        std::vector<std::vector<int>> subs;
        for (auto& [cnt, vs] : by_count) subs.push_back(std::move(vs));
        part.insert(it, subs.begin(), subs.end());
        changed = true;
        if (ci <= si && si + by_count.size() - 1 < part.size())
          si += by_count.size() - 1;  // keep pointing at the same splitter
      }
    }
  }
}

std::vector<std::uint8_t> leaf_certificate(const ColoredGraph& g,
                                           const std::vector<int>& pos_of_vertex,
                                           const Partition& part) {
  // colors by canonical position, then upper-triangular adjacency bits
  int n = g.n;
  std::vector<int> vert_at(n);
  for (int v = 0; v < n; ++v) vert_at[pos_of_vertex[v]] = v;
  std::vector<std::uint8_t> cert;
  cert.reserve(n + n * (n - 1) / 16 + 8);
  for (int i = 0; i < n; ++i) cert.push_back(static_cast<std::uint8_t>(g.color[vert_at[i]]));
  std::uint8_t acc = 0;
  int nb = 0;
  for (int i = 0; i < n; ++i) {
    const Bitset& row = g.adj[vert_at[i]];
    for (int j = i + 1; j < n; ++j) {
      acc = static_cast<std::uint8_t>((acc << 1) | (row.test(vert_at[j]) ? 1 : 0));
      if (++nb == 8) {
        cert.push_back(acc);
        acc = 0;
        nb = 0;
      }
    }
  }
  if (nb) cert.push_back(static_cast<std::uint8_t>(acc << (8 - nb)));
  (void)part;
  return cert;
}

struct CanonSearch {
  const ColoredGraph& g;
  CanonResult result;
  bool have_best = false;
  // distinct leaf certificates seen, with the labeling of their first leaf
  std::unordered_map<std::string, std::vector<int>> leaf_map;

  explicit CanonSearch(const ColoredGraph& gr) : g(gr) {}

  // orbit partition of the generators fixing every vertex in `fixed`
  std::vector<int> orbits_fixing(const std::vector<int>& fixed) const {
    std::vector<int> rep(g.n);
    std::iota(rep.begin(), rep.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (rep[x] != x) { rep[x] = rep[rep[x]]; x = rep[x]; }
      return x;
    };
    for (const auto& gen : result.generators) {
      bool ok = true;
      for (int f : fixed)
        if (gen[f] != f) { ok = false; break; }
      if (!ok) continue;
      for (int v = 0; v < g.n; ++v) {
        int a = find(v), b = find(gen[v]);
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < g.n; ++v) rep[v] = find(v);
    return rep;
  }

  void dfs(Partition part, std::vector<int>& fixed) {
    refine(g, part);
    int target = -1;
    std::size_t target_size = SIZE_MAX;
    for (std::size_t ci = 0; ci < part.size(); ++ci) {
      if (part[ci].size() > 1 && part[ci].size() < target_size) {
        target = static_cast<int>(ci);
        target_size = part[ci].size();
      }
    }
    if (target < 0) {
      // discrete partition: a candidate labeling
      ++result.leaves;
      std::vector<int> pos(g.n);
      for (int i = 0; i < g.n; ++i) pos[part[i][0]] = i;
      auto cert = leaf_certificate(g, pos, part);
      std::string key(cert.begin(), cert.end());
      auto it = leaf_map.find(key);
      if (it == leaf_map.end()) {
        leaf_map.emplace(std::move(key), pos);
      } else {
        // pos and it->second induce the same canonical graph: their
        // composition is an automorphism
        const std::vector<int>& prev = it->second;
        std::vector<int> vert_at(g.n);
        for (int v = 0; v < g.n; ++v) vert_at[prev[v]] = v;
        std::vector<int> aut(g.n);
        for (int v = 0; v < g.n; ++v) aut[v] = vert_at[pos[v]];
        bool identity = true;
        for (int v = 0; v < g.n; ++v)
          if (aut[v] != v) { identity = false; break; }
        if (!identity) result.generators.push_back(std::move(aut));
      }
      if (!have_best || cert < result.certificate) {
        result.certificate = std::move(cert);
        result.labeling = pos;
        have_best = true;
      }
      return;
    }
    // branch over the target cell modulo the stabilizer of the fixed prefix
    std::vector<int> cell = part[target];
    std::vector<int> tried;
    for (int v : cell) {
      auto orb = orbits_fixing(fixed);
      bool skip = false;
      for (int u : tried)
        if (orb[u] == orb[v]) { skip = true; break; }
      if (skip) continue;
      tried.push_back(v);
      Partition child;
      child.reserve(part.size() + 1);
      for (std::size_t ci = 0; ci < part.size(); ++ci) {
        if (static_cast<int>(ci) == target) {
          child.push_back({v});
          std::vector<int> rest;
          for (int u : part[ci])
            if (u != v) rest.push_back(u);
          child.push_back(std::move(rest));
        } else {
          child.push_back(part[ci]);
        }
      }
      fixed.push_back(v);
      dfs(std::move(child), fixed);
      fixed.pop_back();
    }
  }
};

}  // namespace

CanonResult canonize_graph(const ColoredGraph& g) {
  // normalize colors to 0..k-1 so certificate bytes are well-defined
  std::map<int, std::vector<int>> by_color;
  for (int v = 0; v < g.n; ++v) by_color[g.color[v]].push_back(v);
  ColoredGraph gn = g;
  int next = 0;
  Partition part;
  for (auto& [c, vs] : by_color) {
    for (int v : vs) gn.color[v] = next;
    part.push_back(std::move(vs));
    ++next;
  }
  CanonSearch search(gn);
  std::vector<int> fixed;
  search.dfs(std::move(part), fixed);
  // prepend the vertex count so certificates of different sizes never collide
  std::vector<std::uint8_t> full;
  full.push_back(static_cast<std::uint8_t>(g.n & 0xff));
  full.push_back(static_cast<std::uint8_t>((g.n >> 8) & 0xff));
  full.insert(full.end(), search.result.certificate.begin(),
              search.result.certificate.end());
  search.result.certificate = std::move(full);
  return std::move(search.result);
}

unsigned long long permutation_group_order(
    const std::vector<std::vector<int>>& gens, int degree) {
  if (degree == 0) return 1;
  // Schreier-Sims with explicit transversals
  struct Level {
    int base = -1;
    std::vector<int> orbit;               // orbit of base
    std::vector<std::vector<int>> trans;  // transversal element per point (by index)
    std::vector<int> where;               // point -> index in orbit, -1 outside
    std::vector<std::vector<int>> gens;   // generators of this stabilizer level
  };
  std::vector<Level> levels;
  levels.reserve(degree);  // bases are distinct points, so no reallocation

  auto apply = [&](const std::vector<int>& p, int x) { return p[x]; };
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    // (a then b)
    std::vector<int> c(degree);
    for (int i = 0; i < degree; ++i) c[i] = b[a[i]];
    return c;
  };
  auto inverse = [&](const std::vector<int>& a) {
    std::vector<int> inv(degree);
    for (int i = 0; i < degree; ++i) inv[a[i]] = i;
    return inv;
  };
  std::vector<int> identity(degree);
  std::iota(identity.begin(), identity.end(), 0);

  std::function<void(int, const std::vector<int>&)> add_gen = [&](int lvl,
                                                                  const std::vector<int>& gen) {
    if (gen == identity) return;
    if (lvl == static_cast<int>(levels.size())) {
      Level L;
      for (int x = 0; x < degree; ++x)
        if (gen[x] != x) { L.base = x; break; }
      L.where.assign(degree, -1);
      L.orbit = {L.base};
      L.where[L.base] = 0;
      L.trans = {identity};
      levels.push_back(std::move(L));
    }
    Level& L = levels[lvl];
    L.gens.push_back(gen);
    // rebuild orbit/transversal with the new generator set
    L.orbit = {L.base};
    L.where.assign(degree, -1);
    L.where[L.base] = 0;
    L.trans = {identity};
    for (std::size_t i = 0; i < L.orbit.size(); ++i) {
      for (const auto& h : L.gens) {
        int img = apply(h, L.orbit[i]);
        if (L.where[img] < 0) {
          L.where[img] = static_cast<int>(L.orbit.size());
          L.orbit.push_back(img);
          L.trans.push_back(compose(L.trans[i], h));
        }
      }
    }
    // Schreier generators sift into the next level
    for (std::size_t i = 0; i < L.orbit.size(); ++i) {
      for (const auto& h : L.gens) {
        int img = apply(h, L.orbit[i]);
        std::vector<int> schreier =
            compose(compose(L.trans[i], h), inverse(L.trans[L.where[img]]));
        // sift through deeper levels
        std::vector<int> cur = std::move(schreier);
        int dl = lvl + 1;
        while (true) {
          if (cur == identity) break;
          if (dl == static_cast<int>(levels.size())) {
            add_gen(dl, cur);
            break;
          }
          Level& D = levels[dl];
          int img2 = apply(cur, D.base);
          if (D.where[img2] < 0) {
            add_gen(dl, cur);
            break;
          }
          cur = compose(cur, inverse(D.trans[D.where[img2]]));
          ++dl;
        }
      }
    }
  };

  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != degree)
      throw std::invalid_argument("generator degree mismatch");
    // sift then add at the first level it does not pass
    std::vector<int> cur = g;
    int lvl = 0;
    while (true) {
      if (cur == identity) break;
      if (lvl == static_cast<int>(levels.size())) {
        add_gen(lvl, cur);
        break;
      }
      Level& L = levels[lvl];
      int img = apply(cur, L.base);
      if (L.where[img] < 0) {
        add_gen(lvl, cur);
        break;
      }
      cur = compose(cur, inverse(L.trans[L.where[img]]));
      ++lvl;
    }
  }
  unsigned long long order = 1;
  for (const auto& L : levels) order *= static_cast<unsigned long long>(L.orbit.size());
  return order;
}

namespace {

// graph encoding shared by avsp and infinity-part instances; the point and
// hyperplane layers pin the automorphisms to collineations
struct GeometryGraph {
  ColoredGraph graph;
  int num_points = 0;  // point vertices occupy ids [0, num_points)
};

GeometryGraph build_graph(int N, int q, const std::vector<Bitset>& element_points,
                          const std::vector<int>& element_colors,
                          const std::vector<int>& point_colors) {
  const Space& sp = Space::get(N, q);
  int P = sp.num_points();
  GeometryGraph gg;
  gg.num_points = P;
  gg.graph.init(P + P + static_cast<int>(element_points.size()));
  for (int p = 0; p < P; ++p) gg.graph.color[p] = point_colors[p];
  for (int h = 0; h < P; ++h) {
    gg.graph.color[P + h] = 1000;
    const Bitset& hp = sp.hyperplane(h);
    hp.for_each([&](std::size_t p) { gg.graph.add_edge(static_cast<int>(p), P + h); });
  }
  for (std::size_t e = 0; e < element_points.size(); ++e) {
    int ev = P + P + static_cast<int>(e);
    gg.graph.color[ev] = 2000 + element_colors[e];
    element_points[e].for_each(
        [&](std::size_t p) { gg.graph.add_edge(static_cast<int>(p), ev); });
  }
  return gg;
}

GeometryGraph avsp_graph(const Avsp& a) {
  const Space& sp = Space::get(a.n, a.q);
  std::vector<Bitset> elems;
  std::vector<int> ecol;
  for (const auto& e : a.elements) {
    elems.push_back(sp.point_set(e));
    ecol.push_back(e.dim());
  }
  std::vector<int> pcol(sp.num_points(), 0);
  sp.infinity_points().for_each([&](std::size_t p) { pcol[p] = 1; });
  // affine points that are not normalized to x1=1 (q > 2 scalings) are still
  // affine; color by membership in {x1=0}
  return build_graph(a.n, a.q, elems, ecol, pcol);
}

// infinity parts are encoded inside PG(n-2,q) local coordinates (drop x1)
GeometryGraph infinity_graph(const InfinityPart& up) {
  int m = up.n - 1;
  const Space& sp = Space::get(m, up.q);
  std::vector<Bitset> elems;
  std::vector<int> ecol;
  for (const auto& e : up.elements) {
    std::vector<Vec> rows;
    for (const auto& r : e.basis()) {
      if (r[0] != 0) throw std::invalid_argument("infinity element not in {x1=0}");
      rows.push_back(Vec(r.begin() + 1, r.end()));
    }
    Subspace local = Subspace::rref(rows, m, up.q);
    elems.push_back(sp.point_set(local));
    ecol.push_back(local.dim());
  }
  std::vector<int> pcol(sp.num_points(), 0);
  return build_graph(m, up.q, elems, ecol, pcol);
}

std::string cert_to_string(const CanonResult& r) {
  return std::string(r.certificate.begin(), r.certificate.end());
}

unsigned long long point_group_order(const GeometryGraph& gg, const CanonResult& r) {
  std::vector<std::vector<int>> restricted;
  for (const auto& gen : r.generators)
    restricted.emplace_back(gen.begin(), gen.begin() + gg.num_points);
  return permutation_group_order(restricted, gg.num_points);
}

}  // namespace

std::string canonical_form(const Avsp& a) {
  auto gg = avsp_graph(a);
  return cert_to_string(canonize_graph(gg.graph));
}

std::string canonical_form(const InfinityPart& up) {
  auto gg = infinity_graph(up);
  return cert_to_string(canonize_graph(gg.graph));
}

unsigned long long automorphism_group_order(const Avsp& a) {
  auto gg = avsp_graph(a);
  return point_group_order(gg, canonize_graph(gg.graph));
}

unsigned long long automorphism_group_order(const InfinityPart& up) {
  auto gg = infinity_graph(up);
  return point_group_order(gg, canonize_graph(gg.graph));
}

std::vector<std::vector<int>> hinf_stabilizer_point_generators(int n, int q) {
  const Space& sp = Space::get(n, q);
  const Gf& F = Gf::get(q);
  // matrices fixing {x1=0}: first column (a,0,..,0)^T; generators: GL(n-1)
  // on coordinates 2..n, the translation row, a scalar on x1 (trivial
  // projectively), and Frobenius for non-prime q
  std::vector<std::vector<std::vector<std::uint8_t>>> mats;
  auto identity = [&]() {
    std::vector<std::vector<std::uint8_t>> M(n, std::vector<std::uint8_t>(n, 0));
    for (int i = 0; i < n; ++i) M[i][i] = 1;
    return M;
  };
  int m = n - 1;
  if (m >= 2) {
    auto M = identity();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) M[1 + i][1 + j] = (j == (i + 1) % m) ? 1 : 0;
    mats.push_back(M);
    M = identity();
    M[1][2] = 1;
    mats.push_back(M);
  }
  std::uint8_t prim = 1;
  for (int a = 2; a < q; ++a)
    if (F.is_primitive(static_cast<std::uint8_t>(a))) { prim = static_cast<std::uint8_t>(a); break; }
  if (q > 2 && m >= 1) {
    auto M = identity();
    M[1][1] = prim;
    mats.push_back(M);
  }
  {
    auto M = identity();
    M[0][1] = 1;  // translation
    mats.push_back(M);
  }

  std::vector<std::vector<int>> perms;
  for (const auto& M : mats) {
    std::vector<int> perm(sp.num_points());
    for (int p = 0; p < sp.num_points(); ++p) {
      const Vec& v = sp.point(p);
      Vec img(n, 0);
      for (int i = 0; i < n; ++i) {
        if (!v[i]) continue;
        for (int j = 0; j < n; ++j) img[j] = F.add(img[j], F.mul(v[i], M[i][j]));
      }
      perm[p] = sp.point_index(img);
    }
    perms.push_back(std::move(perm));
  }
  if (F.e() > 1) {
    std::vector<int> perm(sp.num_points());
    for (int p = 0; p < sp.num_points(); ++p) {
      Vec img = sp.point(p);
      for (auto& x : img) x = F.frobenius(x);
      perm[p] = sp.point_index(img);
    }
    perms.push_back(std::move(perm));
  }
  return perms;
}

Avsp apply_point_map(const Avsp& a, const std::vector<int>& point_perm) {
  const Space& sp = Space::get(a.n, a.q);
  Avsp out;
  out.n = a.n;
  out.q = a.q;
  out.provenance = a.provenance;
  for (const auto& e : a.elements) {
    std::vector<Vec> rows;
    for (const auto& p : e.points()) rows.push_back(sp.point(point_perm[sp.point_index(p)]));
    out.elements.push_back(Subspace::rref(rows, a.n, a.q));
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

InfinityPart apply_point_map(const InfinityPart& up,
                             const std::vector<int>& point_perm) {
  const Space& sp = Space::get(up.n, up.q);
  InfinityPart out;
  out.n = up.n;
  out.q = up.q;
  for (const auto& e : up.elements) {
    std::vector<Vec> rows;
    for (const auto& p : e.points()) rows.push_back(sp.point(point_perm[sp.point_index(p)]));
    out.elements.push_back(Subspace::rref(rows, up.n, up.q));
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

}  // namespace avsp
