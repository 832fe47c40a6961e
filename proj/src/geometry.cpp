#include "avsp/geometry.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace avsp {

long long gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  // prod_{i=0}^{k-1} (q^{n-i} - 1) / (q^{i+1} - 1); each prefix product is an
  // integer, the intermediate fits in 128 bits for our parameter range
  long long result = 1;
  for (int i = 0; i < k; ++i) {
    long long qa = 1, qb = 1;
    for (int t = 0; t < n - i; ++t) qa *= q;
    for (int t = 0; t < i + 1; ++t) qb *= q;
    __int128 r = static_cast<__int128>(result) * (qa - 1);
    result = static_cast<long long>(r / (qb - 1));
  }
  return result;
}

Space::Space(int n, int q) : n_(n), q_(q) {
  // all normalized points
  const Gf& F = Gf::get(q);
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  for (long long code = 1; code < total; ++code) {
    long long t = code;
    Vec v(n);
    for (int i = n - 1; i >= 0; --i) { v[i] = static_cast<std::uint8_t>(t % q); t /= q; }
    // keep only normalized representatives
    Vec w = normalize_point(v, q);
    if (w == v) points_.push_back(std::move(v));
  }
  std::sort(points_.begin(), points_.end());
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) index_[points_[i]] = i;

  point_to_affine_.assign(points_.size(), -1);
  infinity_ = Bitset(points_.size());
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    if (points_[i][0] == 1) {
      point_to_affine_[i] = static_cast<int>(affine_.size());
      affine_.push_back(i);
    } else if (points_[i][0] == 0) {
      infinity_.set(i);
    }
  }

  // hyperplane i = { p : <p, point(i)> = 0 }
  hyperplanes_.assign(points_.size(), Bitset(points_.size()));
  for (int h = 0; h < static_cast<int>(points_.size()); ++h) {
    const Vec& d = points_[h];
    for (int p = 0; p < static_cast<int>(points_.size()); ++p) {
      std::uint8_t s = 0;
      for (int c = 0; c < n; ++c) s = F.add(s, F.mul(d[c], points_[p][c]));
      if (s == 0) hyperplanes_[h].set(p);
    }
  }
}

int Space::point_index(const Vec& v) const {
  auto it = index_.find(normalize_point(v, q_));
  if (it == index_.end()) throw std::invalid_argument("not a projective point");
  return it->second;
}

int Space::affine_index(const Vec& v) const {
  int pi = point_index(v);
  int ai = point_to_affine_[pi];
  if (ai < 0) throw std::domain_error("point lies in the hyperplane at infinity");
  return ai;
}

Bitset Space::point_set(const Subspace& s) const {
  Bitset b(points_.size());
  for (const auto& p : s.points()) b.set(index_.at(p));
  return b;
}

Bitset Space::affine_set(const Subspace& s) const {
  Bitset b(affine_.size());
  for (const auto& p : s.points()) {
    int ai = point_to_affine_[index_.at(p)];
    if (ai >= 0) b.set(ai);
  }
  return b;
}

Subspace Space::span_of_points(const Bitset& pts) const {
  std::vector<Vec> rows;
  pts.for_each([&](std::size_t i) { rows.push_back(points_[i]); });
  return Subspace::rref(rows, n_, q_);
}

Subspace Space::hyperplane_at_infinity() const {
  std::vector<Vec> rows;
  for (int i = 1; i < n_; ++i) {
    Vec v(n_, 0);
    v[i] = 1;
    rows.push_back(std::move(v));
  }
  return Subspace::rref(rows, n_, q_);
}

Subspace Space::full_space() const {
  std::vector<Vec> rows;
  for (int i = 0; i < n_; ++i) {
    Vec v(n_, 0);
    v[i] = 1;
    rows.push_back(std::move(v));
  }
  return Subspace::rref(rows, n_, q_);
}

const Space& Space::get(int n, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Space*> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(n, q);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, new Space(n, q)).first;
  return *it->second;
}

SubspaceEnumerator::SubspaceEnumerator(int n, int q, int dim)
    : n_(n), q_(q), dim_(dim) {
  if (dim < 0 || dim > n) throw std::invalid_argument("bad subspace dimension");
  // enumerate pivot column sets in lex order
  std::vector<int> piv(dim);
  for (int i = 0; i < dim; ++i) piv[i] = i;
  auto free_count = [&](const std::vector<int>& pv) {
    // free entries: for row r (pivot pv[r]) the columns > pv[r] that are not
    // pivots of later rows
    long long cnt = 1;
    for (int r = 0; r < dim; ++r)
      for (int c = pv[r] + 1; c < n; ++c)
        if (std::find(pv.begin(), pv.end(), c) == pv.end()) cnt *= q;
    return cnt;
  };
  if (dim == 0) {
    total_ = 1;
    pivot_sets_.push_back({});
    block_sizes_.push_back(1);
    block_start_.push_back(0);
    return;
  }
  total_ = 0;
  while (true) {
    pivot_sets_.push_back(piv);
    long long b = free_count(piv);
    block_start_.push_back(total_);
    block_sizes_.push_back(b);
    total_ += b;
    // next combination
    int i = dim - 1;
    while (i >= 0 && piv[i] == n - dim + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < dim; ++j) piv[j] = piv[j - 1] + 1;
  }
}

Subspace SubspaceEnumerator::at(long long index) const {
  if (index < 0 || index >= total_) throw std::out_of_range("subspace index");
  // binary search for block
  std::size_t lo = 0, hi = block_start_.size();
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (block_start_[mid] <= index) lo = mid; else hi = mid;
  }
  const auto& piv = pivot_sets_[lo];
  long long off = index - block_start_[lo];
  std::vector<Vec> rows(dim_, Vec(n_, 0));
  for (int r = 0; r < dim_; ++r) rows[r][piv[r]] = 1;
  // fill free entries, base-q digits of off, in deterministic column order
  for (int r = 0; r < dim_; ++r) {
    for (int c = piv[r] + 1; c < n_; ++c) {
      if (std::find(piv.begin(), piv.end(), c) != piv.end()) continue;
      rows[r][c] = static_cast<std::uint8_t>(off % q_);
      off /= q_;
    }
  }
  return Subspace::from_rref_rows(std::move(rows), n_, q_);
}

std::vector<Subspace> SubspaceEnumerator::all(
    const std::function<bool(const Subspace&)>& pred) const {
  std::vector<Subspace> out;
  for (long long i = 0; i < total_; ++i) {
    Subspace s = at(i);
    if (!pred || pred(s)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subspace> enumerate_subspaces(
    int n, int q, int dim, const std::function<bool(const Subspace&)>& pred) {
  return SubspaceEnumerator(n, q, dim).all(pred);
}

std::vector<Subspace> enumerate_subspaces_within(
    const Subspace& ambient, int dim,
    const std::function<bool(const Subspace&)>& pred) {
  int k = ambient.dim();
  if (dim > k) return {};
  const Gf& F = Gf::get(ambient.q());
  std::vector<Subspace> out;
  SubspaceEnumerator en(k, ambient.q(), dim);
  for (long long i = 0; i < en.count(); ++i) {
    Subspace local = en.at(i);
    std::vector<Vec> rows;
    for (const auto& lr : local.basis()) {
      Vec v(ambient.n(), 0);
      for (int j = 0; j < k; ++j) {
        if (!lr[j]) continue;
        for (int c = 0; c < ambient.n(); ++c)
          v[c] = F.add(v[c], F.mul(lr[j], ambient.basis()[j][c]));
      }
      rows.push_back(std::move(v));
    }
    Subspace s = Subspace::rref(rows, ambient.n(), ambient.q());
    if (!pred || pred(s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace avsp
