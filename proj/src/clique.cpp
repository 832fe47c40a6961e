#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "avsp/search.hpp"

namespace avsp {

namespace {

// packed per-hyperplane counters: 63 hyperplanes of PG(5,2), one nibble each
struct Packed {
  std::array<std::uint64_t, 4> w{};
  void add(const Packed& o) {
    for (int i = 0; i < 4; ++i) w[i] += o.w[i];
  }
  void sub(const Packed& o) {
    for (int i = 0; i < 4; ++i) w[i] -= o.w[i];
  }
  // every count even and below eight: containment counts of a spanning
  // 2-divisible octet
  bool valid_octet() const {
    constexpr std::uint64_t kOdd = 0x1111111111111111ull;
    constexpr std::uint64_t kHigh = 0x8888888888888888ull;
    for (int i = 0; i < 4; ++i)
      if ((w[i] & kOdd) || (w[i] & kHigh)) return false;
    return true;
  }
};

struct CliqueGraph {
  std::vector<int> plane_ids;     // vertex -> index into master plane list
  std::vector<Bitset> adj;        // over vertices
  std::vector<Packed> packed;     // per-vertex hyperplane containment nibbles
  Packed seed_counts;
};

bool planes_compatible(std::uint64_t a, std::uint64_t b) {
  int c = std::popcount(a & b);
  return c == 1 || c == 3;  // intersection dimension one or two
}

}  // namespace

CliqueCaseResult clique_search_48(char seed_case, int threads,
                                  long long clique_budget,
                                  const std::string& checkpoint_path) {
  const Space& sp = Space::get(6, 2);
  auto planes = enumerate_subspaces(6, 2, 3);
  std::vector<std::uint64_t> pmask(planes.size());
  for (std::size_t i = 0; i < planes.size(); ++i)
    pmask[i] = sp.point_set(planes[i]).data()[0];

  auto unit = [&](std::initializer_list<int> idx) {
    std::vector<Vec> rows;
    for (int i : idx) {
      Vec v(6, 0);
      v[i] = 1;
      rows.push_back(std::move(v));
    }
    return Subspace::rref(rows, 6, 2);
  };
  Subspace s1 = unit({0, 1, 2});
  Subspace s2 = unit({2, 3, 4});
  Subspace s3(6, 2);
  switch (seed_case) {
    case 'a':
      s3 = unit({0, 1, 3});
      break;
    case 'b': {
      Vec v1(6, 0), v2(6, 0), v3(6, 0);
      v1[0] = 1;
      v2[3] = 1;
      v3[1] = 1;
      v3[4] = 1;
      s3 = Subspace::rref({v1, v2, v3}, 6, 2);
      break;
    }
    case 'c':
      s3 = unit({0, 3, 5});
      break;
    default:
      throw std::invalid_argument("seed case must be a, b, or c");
  }
  std::array<std::uint64_t, 3> seed_masks = {sp.point_set(s1).data()[0],
                                             sp.point_set(s2).data()[0],
                                             sp.point_set(s3).data()[0]};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!planes_compatible(seed_masks[i], seed_masks[j]))
        throw std::logic_error("seed planes violate the intersection condition");

  // hyperplane containment nibble vector per plane
  auto pack_of = [&](std::uint64_t mask) {
    Packed p;
    for (int h = 0; h < sp.num_hyperplanes(); ++h) {
      std::uint64_t hp = sp.hyperplane(h).data()[0];
      if ((mask & ~hp) == 0) p.w[h >> 4] += (std::uint64_t{1} << ((h & 15) * 4));
    }
    return p;
  };

  CliqueGraph g;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    bool ok = true;
    for (auto sm : seed_masks)
      if (!planes_compatible(pmask[i], sm)) { ok = false; break; }
    if (ok) g.plane_ids.push_back(static_cast<int>(i));
  }
  int V = static_cast<int>(g.plane_ids.size());
  g.adj.assign(V, Bitset(V));
  g.packed.resize(V);
  for (int v = 0; v < V; ++v) g.packed[v] = pack_of(pmask[g.plane_ids[v]]);
  for (int a = 0; a < V; ++a)
    for (int b = a + 1; b < V; ++b)
      if (planes_compatible(pmask[g.plane_ids[a]], pmask[g.plane_ids[b]])) {
        g.adj[a].set(b);
        g.adj[b].set(a);
      }
  for (auto sm : seed_masks) g.seed_counts.add(pack_of(sm));

  // resume support: checkpoint lines record finished top-level vertices
  std::vector<bool> done_top(V, false);
  CliqueCaseResult result;
  std::vector<std::vector<std::vector<int>>> octets_by_top(V);
  std::vector<long long> cliques_by_top(V, 0);
  if (!checkpoint_path.empty()) {
    std::ifstream in(checkpoint_path);
    std::string kind;
    while (in >> kind) {
      if (kind == "done") {
        int v;
        long long c;
        in >> v >> c;
        if (v >= 0 && v < V) {
          done_top[v] = true;
          cliques_by_top[v] = c;
        }
      } else if (kind == "octet") {
        int v;
        std::vector<int> ids(5);
        in >> v;
        for (auto& x : ids) in >> x;
        if (v >= 0 && v < V) octets_by_top[v].push_back(ids);
      }
    }
  }

  std::atomic<long long> cliques_total{0};
  std::atomic<bool> out_of_budget{false};
  std::atomic<int> next_top{0};
  std::mutex ckpt_mu;
  std::ofstream ckpt;
  if (!checkpoint_path.empty())
    ckpt.open(checkpoint_path, std::ios::app);

  auto worker = [&]() {
    std::vector<int> chosen(5);
    while (true) {
      int v0 = next_top.fetch_add(1);
      if (v0 >= V || out_of_budget.load()) return;
      if (done_top[v0]) {
        cliques_total += cliques_by_top[v0];
        continue;
      }
      long long local_cliques = 0;
      std::vector<std::vector<int>> local_octets;
      Packed counts = g.seed_counts;
      counts.add(g.packed[v0]);
      chosen[0] = v0;
      // candidates: neighbors of v0 above v0
      Bitset p1 = g.adj[v0];
      p1.clear_below(static_cast<std::size_t>(v0) + 1);

      // depth-2..4 via explicit recursion
      std::function<void(int, const Bitset&, Packed&)> rec = [&](int depth,
                                                                 const Bitset& P,
                                                                 Packed& cnt) {
        if (depth == 4) {
          P.for_each([&](std::size_t v) {
            ++local_cliques;
            Packed fin = cnt;
            fin.add(g.packed[v]);
            if (fin.valid_octet()) {
              chosen[4] = static_cast<int>(v);
              local_octets.push_back(chosen);
            }
          });
          return;
        }
        P.for_each([&](std::size_t v) {
          chosen[depth] = static_cast<int>(v);
          Bitset P2 = P & g.adj[v];
          P2.clear_below(v + 1);
          if (P2.none()) return;
          cnt.add(g.packed[v]);
          rec(depth + 1, P2, cnt);
          cnt.sub(g.packed[v]);
        });
      };
      rec(1, p1, counts);

      cliques_total += local_cliques;
      if (clique_budget >= 0 && cliques_total.load() > clique_budget)
        out_of_budget.store(true);
      {
        std::lock_guard<std::mutex> lk(ckpt_mu);
        cliques_by_top[v0] = local_cliques;
        octets_by_top[v0] = local_octets;
        done_top[v0] = true;
        if (ckpt.is_open()) {
          for (const auto& o : local_octets) {
            ckpt << "octet " << v0;
            for (int x : o) ckpt << " " << x;
            ckpt << "\n";
          }
          ckpt << "done " << v0 << " " << local_cliques << std::endl;
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.cliques_enumerated = 0;
  for (int v = 0; v < V; ++v) {
    if (!done_top[v]) continue;
    result.cliques_enumerated += cliques_by_top[v];
    for (const auto& ids : octets_by_top[v]) {
      std::vector<Subspace> octet = {s1, s2, s3};
      for (int x : ids) octet.push_back(planes[g.plane_ids[x]]);
      result.octets.push_back(std::move(octet));
    }
  }
  result.inconclusive = out_of_budget.load() ||
                        !std::all_of(done_top.begin(), done_top.end(),
                                     [](bool b) { return b; });
  return result;
}

}  // namespace avsp
