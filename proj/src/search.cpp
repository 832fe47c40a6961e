#include "avsp/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace avsp {

std::vector<Subspace> affine_flats(int n, int q, int dim) {
  return enumerate_subspaces(n, q, dim, [](const Subspace& s) {
    return !s.in_hyperplane_at_infinity();
  });
}

namespace {

struct CandidateTable {
  std::vector<Subspace> subs;
  std::vector<Bitset> affine;      // over affine indices
  std::vector<Bitset> full;        // over all projective points
  std::vector<int> group;
  std::vector<int> cls;            // direction-space class (q=2), else -1
  std::unordered_map<Bitset, int, BitsetHash> affine_to_id;
};

// direction-space id: index of the infinity part among all subspaces of Hinf
int direction_class(const Subspace& s, const Subspace& hinf,
                    std::map<Subspace, int>& ids) {
  Subspace d = s.intersect(hinf);
  auto it = ids.find(d);
  if (it == ids.end()) it = ids.emplace(d, static_cast<int>(ids.size())).first;
  return it->second;
}

Avsp make_avsp(int n, int q, const CandidateTable& tab, const std::vector<int>& chosen,
               Provenance prov) {
  Avsp a;
  a.n = n;
  a.q = q;
  a.provenance = prov;
  for (int c : chosen) a.elements.push_back(tab.subs[c]);
  std::sort(a.elements.begin(), a.elements.end());
  return a;
}

// generators of the affine stabilizer of the flat spanned by the first d unit
// vectors, as permutations of affine point indices
std::vector<std::vector<int>> flat_stabilizer_point_maps(int n, int q, int d) {
  const Space& sp = Space::get(n, q);
  const Gf& F = Gf::get(q);
  int m = n - 1;
  // affine points are (1, y), y in GF(q)^m; the flat is y in span(e_1..e_{d-1})
  // stabilizer: y -> y C + b, b in the direction span, C block lower
  // triangular w.r.t. the split (first d-1 coords | rest)
  std::vector<std::vector<std::vector<std::uint8_t>>> mats;  // linear parts
  std::vector<Vec> shifts;
  auto identity = [&]() {
    std::vector<std::vector<std::uint8_t>> M(m, std::vector<std::uint8_t>(m, 0));
    for (int i = 0; i < m; ++i) M[i][i] = 1;
    return M;
  };
  int k = d - 1;  // direction dimension
  // translations along the flat
  for (int i = 0; i < k; ++i) {
    Vec b(m, 0);
    b[i] = 1;
    mats.push_back(identity());
    shifts.push_back(b);
  }
  // GL generators on the direction block
  if (k >= 2) {
    auto M = identity();
    // cycle of the first k coordinates
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) M[i][j] = (j == (i + 1) % k) ? 1 : 0;
    mats.push_back(M);
    shifts.push_back(Vec(m, 0));
    M = identity();
    M[0][1] = 1;  // transvection inside the block
    mats.push_back(M);
    shifts.push_back(Vec(m, 0));
  }
  std::uint8_t prim = 1;
  for (int a = 2; a < q; ++a)
    if (F.is_primitive(static_cast<std::uint8_t>(a))) { prim = static_cast<std::uint8_t>(a); break; }
  if (k >= 1 && q > 2) {
    auto M = identity();
    M[0][0] = prim;
    mats.push_back(M);
    shifts.push_back(Vec(m, 0));
  }
  // GL generators on the complement block
  int r = m - k;
  if (r >= 2) {
    auto M = identity();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) M[k + i][k + j] = (j == (i + 1) % r) ? 1 : 0;
    mats.push_back(M);
    shifts.push_back(Vec(m, 0));
    M = identity();
    M[k][k + 1] = 1;
    mats.push_back(M);
    shifts.push_back(Vec(m, 0));
  }
  if (r >= 1 && q > 2) {
    auto M = identity();
    M[k][k] = prim;
    mats.push_back(M);
    shifts.push_back(Vec(m, 0));
  }
  // mixing: complement coordinate feeding the direction block
  if (k >= 1 && r >= 1) {
    auto M = identity();
    M[k][0] = 1;
    mats.push_back(M);
    shifts.push_back(Vec(m, 0));
  }

  std::vector<std::vector<int>> perms;
  for (std::size_t g = 0; g < mats.size(); ++g) {
    std::vector<int> perm(sp.num_affine());
    for (int ai = 0; ai < sp.num_affine(); ++ai) {
      const Vec& pt = sp.affine_point(ai);  // pt[0] == 1
      Vec y(m);
      for (int i = 0; i < m; ++i) y[i] = pt[i + 1];
      Vec img(m, 0);
      for (int i = 0; i < m; ++i) {
        if (!y[i]) continue;
        for (int j = 0; j < m; ++j)
          img[j] = F.add(img[j], F.mul(y[i], mats[g][i][j]));
      }
      for (int j = 0; j < m; ++j) img[j] = F.add(img[j], shifts[g][j]);
      Vec full(n);
      full[0] = 1;
      for (int j = 0; j < m; ++j) full[j + 1] = img[j];
      perm[ai] = sp.affine_index(full);
    }
    perms.push_back(std::move(perm));
  }
  return perms;
}

// orbit partition of candidates under the given affine point permutations
std::vector<int> candidate_orbits(const CandidateTable& tab,
                                  const std::vector<std::vector<int>>& perms) {
  int nc = static_cast<int>(tab.subs.size());
  std::vector<int> rep(nc);
  for (int i = 0; i < nc; ++i) rep[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (rep[x] != x) { rep[x] = rep[rep[x]]; x = rep[x]; }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a); b = find(b);
    if (a != b) rep[std::max(a, b)] = std::min(a, b);
  };
  std::size_t nbits = tab.affine.empty() ? 0 : tab.affine[0].size();
  for (const auto& perm : perms) {
    for (int c = 0; c < nc; ++c) {
      Bitset img(nbits);
      tab.affine[c].for_each([&](std::size_t p) { img.set(perm[p]); });
      auto it = tab.affine_to_id.find(img);
      if (it != tab.affine_to_id.end()) unite(c, it->second);
    }
  }
  // iterate to closure
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& perm : perms) {
      for (int c = 0; c < nc; ++c) {
        Bitset img(nbits);
        tab.affine[c].for_each([&](std::size_t p) { img.set(perm[p]); });
        auto it = tab.affine_to_id.find(img);
        if (it != tab.affine_to_id.end()) {
          int a = find(c), b = find(it->second);
          if (a != b) { unite(a, b); changed = true; }
        }
      }
    }
  }
  for (int i = 0; i < nc; ++i) rep[i] = find(i);
  return rep;
}

}  // namespace

SearchResult find_avsps(const SearchProblem& problem) {
  int n = problem.n, q = problem.q;
  const Space& sp = Space::get(n, q);
  Subspace hinf = sp.hyperplane_at_infinity();

  if (problem.extension) {
    return extend_infinity_part(*problem.extension, ExtendMode::kExact,
                                problem.goal, problem.limits);
  }

  if (!problem.type && problem.size) {
    // run one search per packing-feasible type of the requested size
    SearchResult agg;
    for (const auto& t : feasible_types(n, q)) {
      if (t.type.size() != *problem.size) continue;
      if (problem.tight && problem.irreducible &&
          t.status == TypeStatus::kExcludedRule)
        continue;
      SearchProblem sub = problem;
      sub.type = t.type;
      sub.size.reset();
      SearchResult r = find_avsps(sub);
      agg.count += r.count;
      agg.nodes += r.nodes;
      agg.inconclusive = agg.inconclusive || r.inconclusive;
      for (auto& w : r.witnesses) agg.witnesses.push_back(std::move(w));
      if (problem.goal == SearchGoal::kExists && agg.count > 0) break;
    }
    std::sort(agg.witnesses.begin(), agg.witnesses.end(),
              [](const Avsp& a, const Avsp& b) { return a.elements < b.elements; });
    return agg;
  }

  // dims to use
  std::vector<int> dims;
  if (problem.type) {
    for (auto& [d, m] : problem.type->mults()) dims.push_back(d);
    if (!problem.type->satisfies_packing(n, q)) {
      SearchResult r;  // violates the point count, provably empty
      return r;
    }
  } else {
    for (int d = 1; d <= n - 1; ++d) dims.push_back(d);
  }

  CandidateTable tab;
  std::map<Subspace, int> dir_ids;
  std::map<int, int> dim_group;
  std::vector<long long> budgets;
  for (int d : dims) {
    dim_group[d] = static_cast<int>(budgets.size());
    budgets.push_back(problem.type ? problem.type->multiplicity(d) : -1);
    for (auto& s : affine_flats(n, q, d)) {
      tab.affine.push_back(sp.affine_set(s));
      tab.full.push_back(sp.point_set(s));
      tab.group.push_back(dim_group[d]);
      int cls = -1;
      if (problem.irreducible && q == 2 && d <= n - 2)
        cls = direction_class(s, hinf, dir_ids);
      tab.cls.push_back(cls);
      tab.affine_to_id[tab.affine.back()] = static_cast<int>(tab.subs.size());
      tab.subs.push_back(std::move(s));
    }
  }

  ExactCover cover(sp.num_affine(), tab.affine);
  cover.set_groups(tab.group, budgets);
  if (problem.irreducible && q == 2) cover.set_classes(tab.cls);
  if (problem.tight) {
    cover.set_intersection_sets(tab.full);
    cover.require_empty_final_intersection(true);
  }
  if (problem.limits.node_budget >= 0) cover.set_node_budget(problem.limits.node_budget);

  SearchResult result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(
                          problem.limits.seconds < 0 ? 1e9 : problem.limits.seconds));

  auto handle_solution = [&](const std::vector<int>& chosen) -> bool {
    Avsp a = make_avsp(n, q, tab, chosen, Provenance::kSearched);
    if (problem.irreducible && !is_irreducible(a)) return true;
    if (problem.tight && !is_tight(a)) return true;  // engine already filters
    ++result.count;
    if (problem.goal != SearchGoal::kCount) result.witnesses.push_back(std::move(a));
    if (problem.goal == SearchGoal::kExists) return false;
    return std::chrono::steady_clock::now() < deadline;
  };

  std::vector<int> prefix;
  for (const auto& s : problem.prefix) {
    auto it = tab.affine_to_id.find(sp.affine_set(s));
    if (it == tab.affine_to_id.end())
      throw std::invalid_argument("prefix element is not a valid candidate");
    prefix.push_back(it->second);
  }

  SearchStatus st = SearchStatus::kComplete;
  if (!problem.symmetry_breaking || !problem.prefix.empty()) {
    st = cover.solve(prefix, handle_solution);
    result.nodes = cover.nodes_visited();
  } else {
    // break the affine group: the element covering the first affine point can
    // be fixed to the unit-coordinate flat of its dimension; the element
    // covering the next uncovered point then runs over orbit representatives
    // of the stabilizer of that flat
    long long total_nodes = 0;
    for (int d : dims) {
      if (problem.type && problem.type->multiplicity(d) == 0) continue;
      std::vector<Vec> rows;
      for (int i = 0; i < d; ++i) {
        Vec v(n, 0);
        v[i] = 1;
        rows.push_back(std::move(v));
      }
      Subspace first = Subspace::rref(rows, n, q);
      int first_id = tab.affine_to_id.at(sp.affine_set(first));

      auto perms = flat_stabilizer_point_maps(n, q, d);
      auto orbit_rep = candidate_orbits(tab, perms);

      // second branch point: smallest affine point not covered by `first`
      Bitset cov = tab.affine[first_id];
      std::size_t p1 = Bitset::npos;
      for (std::size_t p = 0; p < static_cast<std::size_t>(sp.num_affine()); ++p)
        if (!cov.test(p)) { p1 = p; break; }

      if (p1 == Bitset::npos) {
        st = cover.solve({first_id}, handle_solution);
        total_nodes += cover.nodes_visited();
        if (st == SearchStatus::kBudgetExceeded) break;
        continue;
      }

      // representatives among candidates covering p1, compatible with first
      std::map<int, int> orbit_choice;  // orbit -> candidate id
      for (std::size_t c = 0; c < tab.subs.size(); ++c) {
        if (!tab.affine[c].test(p1)) continue;
        if (tab.affine[c].intersects(cov)) continue;
        int o = orbit_rep[c];
        auto it = orbit_choice.find(o);
        if (it == orbit_choice.end() || static_cast<int>(c) < it->second)
          orbit_choice[o] = static_cast<int>(c);
      }
      bool stop = false;
      for (auto& [o, c2] : orbit_choice) {
        st = cover.solve({first_id, c2}, handle_solution);
        total_nodes += cover.nodes_visited();
        if (st == SearchStatus::kBudgetExceeded ||
            std::chrono::steady_clock::now() > deadline) {
          stop = true;
          break;
        }
        if (problem.goal == SearchGoal::kExists && result.count > 0) {
          stop = true;
          break;
        }
      }
      if (stop) break;
      if (problem.goal == SearchGoal::kExists && result.count > 0) break;
    }
    result.nodes = total_nodes;
  }

  if (st == SearchStatus::kBudgetExceeded ||
      (problem.limits.seconds >= 0 && std::chrono::steady_clock::now() > deadline &&
       result.count == 0))
    result.inconclusive = true;
  if (st == SearchStatus::kBudgetExceeded) result.inconclusive = true;

  std::sort(result.witnesses.begin(), result.witnesses.end(),
            [](const Avsp& a, const Avsp& b) { return a.elements < b.elements; });
  return result;
}

SearchResult extend_infinity_part(const InfinityPart& up, ExtendMode mode,
                                  SearchGoal goal, SearchLimits limits) {
  int n = up.n, q = up.q;
  const Space& sp = Space::get(n, q);
  Subspace hinf = sp.hyperplane_at_infinity();

  // distinct infinity elements with multiplicities
  std::vector<Subspace> distinct;
  std::vector<long long> mult;
  for (const auto& e : up.elements) {
    if (!hinf.contains(e))
      throw std::invalid_argument("infinity part element not inside {x1=0}");
    auto it = std::find(distinct.begin(), distinct.end(), e);
    if (it == distinct.end()) { distinct.push_back(e); mult.push_back(1); }
    else ++mult[it - distinct.begin()];
  }

  CandidateTable tab;
  std::vector<long long> budgets = mult;
  const Gf& F = Gf::get(q);
  for (std::size_t v = 0; v < distinct.size(); ++v) {
    // candidates over distinct[v]: spans <V, a> for affine points a, one per
    // coset of the direction space
    std::vector<Bitset> seen_cosets;
    for (int ai = 0; ai < sp.num_affine(); ++ai) {
      Vec a = sp.affine_point(ai);
      std::vector<Vec> rows = distinct[v].basis();
      rows.push_back(a);
      Subspace c = Subspace::rref(rows, n, q);
      Bitset aset = sp.affine_set(c);
      if (tab.affine_to_id.count(aset)) continue;
      tab.affine_to_id[aset] = static_cast<int>(tab.subs.size());
      tab.affine.push_back(aset);
      tab.full.push_back(sp.point_set(c));
      tab.group.push_back(static_cast<int>(v));
      tab.cls.push_back(-1);
      tab.subs.push_back(std::move(c));
    }
  }
  (void)F;

  ExactCover cover(sp.num_affine(), tab.affine);
  cover.set_groups(tab.group, budgets);
  if (limits.node_budget >= 0) cover.set_node_budget(limits.node_budget);

  // translation symmetry: some chosen element over a multiplicity-one
  // infinity element can be assumed to contain the affine origin
  int designated = -1;
  for (std::size_t v = 0; v < distinct.size(); ++v)
    if (mult[v] == 1) { designated = static_cast<int>(v); break; }
  if (designated >= 0) {
    Vec origin(n, 0);
    origin[0] = 1;
    int oi = sp.affine_index(origin);
    Bitset allowed(tab.subs.size());
    for (std::size_t c = 0; c < tab.subs.size(); ++c)
      if (tab.group[c] != designated || tab.affine[c].test(oi)) allowed.set(c);
    cover.restrict_candidates(allowed);
  }

  SearchResult result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(limits.seconds < 0 ? 1e9
                                                                       : limits.seconds));
  auto handle = [&](const std::vector<int>& chosen) -> bool {
    Avsp a = make_avsp(n, q, tab, chosen, Provenance::kSearched);
    if (mode == ExtendMode::kCoverEq || mode == ExtendMode::kCoverGe) {
      // containment counts per given element
      for (const auto& e : up.elements) {
        int cnt = 0;
        for (const auto& el : a.elements)
          if (el.contains(e)) ++cnt;
        if (mode == ExtendMode::kCoverGe ? cnt < 1 : cnt != 1) return true;
      }
    }
    ++result.count;
    if (goal != SearchGoal::kCount) result.witnesses.push_back(std::move(a));
    if (goal == SearchGoal::kExists) return false;
    return std::chrono::steady_clock::now() < deadline;
  };

  SearchStatus st = cover.solve({}, handle);
  result.nodes = cover.nodes_visited();
  result.inconclusive = (st == SearchStatus::kBudgetExceeded);
  std::sort(result.witnesses.begin(), result.witnesses.end(),
            [](const Avsp& a, const Avsp& b) { return a.elements < b.elements; });
  return result;
}

MinimumSizeResult minimum_size(int n, int q, bool trust_exclusions,
                               SearchLimits limits) {
  MinimumSizeResult res;
  if (n == 2) {
    // the unique avsp of a projective line: q affine points
    res.sigma = q;
    Avsp a;
    a.n = 2;
    a.q = q;
    const Space& sp = Space::get(2, q);
    for (int ai = 0; ai < sp.num_affine(); ++ai)
      a.elements.push_back(Subspace::rref({sp.affine_point(ai)}, 2, q));
    res.witness = a;
    return res;
  }
  if (n == 3) {
    res.infinite = true;
    return res;
  }
  auto types = feasible_types(n, q);
  std::sort(types.begin(), types.end(), [](const TypeInfo& a, const TypeInfo& b) {
    return a.type.size() < b.type.size();
  });
  for (const auto& t : types) {
    if (t.status == TypeStatus::kExcludedRule) continue;
    if (trust_exclusions && t.status == TypeStatus::kExcludedComputational) continue;
    SearchProblem p;
    p.n = n;
    p.q = q;
    p.type = t.type;
    p.tight = true;
    p.irreducible = true;
    p.goal = SearchGoal::kExists;
    p.limits = limits;
    SearchResult r = find_avsps(p);
    if (r.count > 0) {
      res.sigma = t.type.size();
      res.witness = r.witnesses.empty() ? std::nullopt
                                        : std::optional<Avsp>(r.witnesses[0]);
      return res;
    }
    if (r.inconclusive) {
      res.inconclusive = true;
      res.lower = t.type.size();
      // upper bound from the recursive construction when available
      res.upper = (q == 2 && n >= 4) ? (3 * n - 3) / 2 : -1;
      return res;
    }
  }
  res.infinite = true;
  return res;
}

}  // namespace avsp
