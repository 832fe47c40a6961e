#include "avsp/subspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace avsp {

int row_reduce(std::vector<Vec>& rows, int n, int q) {
  const Gf& F = Gf::get(q);
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    std::uint8_t s = F.inv(rows[rank][col]);
    for (int c = 0; c < n; ++c) rows[rank][c] = F.mul(rows[rank][c], s);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      std::uint8_t f = rows[r][col];
      for (int c = 0; c < n; ++c)
        rows[r][c] = F.sub(rows[r][c], F.mul(f, rows[rank][c]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

Subspace Subspace::rref(const std::vector<Vec>& rows, int n, int q) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n)
      throw std::invalid_argument("row length does not match ambient dimension");
    for (auto e : r)
      if (e >= q) throw std::invalid_argument("entry not in GF(q)");
  }
  Subspace s(n, q);
  s.rows_ = rows;
  row_reduce(s.rows_, n, q);
  return s;
}

Subspace Subspace::from_rref_rows(std::vector<Vec> rows, int n, int q) {
  Subspace s(n, q);
  s.rows_ = std::move(rows);
  return s;
}

long long Subspace::num_points() const {
  long long p = 0, qk = 1;
  for (int i = 0; i < dim(); ++i) { p += qk; qk *= q_; }
  return p;
}

bool Subspace::contains(const Vec& v) const {
  const Gf& F = Gf::get(q_);
  Vec w = v;
  for (const auto& r : rows_) {
    int piv = 0;
    while (piv < n_ && r[piv] == 0) ++piv;
    if (piv == n_) continue;
    std::uint8_t f = w[piv];
    if (f) {
      for (int c = 0; c < n_; ++c) w[c] = F.sub(w[c], F.mul(f, r[c]));
    }
  }
  return std::all_of(w.begin(), w.end(), [](std::uint8_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& r : other.rows_)
    if (!contains(r)) return false;
  return true;
}

Subspace Subspace::join(const Subspace& other) const {
  if (n_ != other.n_ || q_ != other.q_)
    throw std::invalid_argument("ambient mismatch in join");
  std::vector<Vec> rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  Subspace s(n_, q_);
  s.rows_ = std::move(rows);
  row_reduce(s.rows_, n_, q_);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (n_ != other.n_ || q_ != other.q_)
    throw std::invalid_argument("ambient mismatch in intersect");
  // Zassenhaus: rows [A|A], [B|0]; after reduction the rows with zero left
  // half carry the intersection in the right half.
  std::vector<Vec> big;
  for (const auto& r : rows_) {
    Vec row(2 * n_, 0);
    std::copy(r.begin(), r.end(), row.begin());
    std::copy(r.begin(), r.end(), row.begin() + n_);
    big.push_back(std::move(row));
  }
  for (const auto& r : other.rows_) {
    Vec row(2 * n_, 0);
    std::copy(r.begin(), r.end(), row.begin());
    big.push_back(std::move(row));
  }
  row_reduce(big, 2 * n_, q_);
  std::vector<Vec> inter;
  for (const auto& r : big) {
    bool left_zero = std::all_of(r.begin(), r.begin() + n_,
                                 [](std::uint8_t x) { return x == 0; });
    if (left_zero) {
      Vec v(r.begin() + n_, r.end());
      if (std::any_of(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; }))
        inter.push_back(std::move(v));
    }
  }
  Subspace s(n_, q_);
  s.rows_ = std::move(inter);
  row_reduce(s.rows_, n_, q_);
  return s;
}

std::vector<Vec> Subspace::points() const {
  const Gf& F = Gf::get(q_);
  std::vector<Vec> pts;
  if (dim() == 0) return pts;
  // iterate coefficient vectors whose first nonzero coefficient is 1
  std::vector<std::uint8_t> coeff(dim(), 0);
  for (int lead = dim() - 1; lead >= 0; --lead) {
    std::fill(coeff.begin(), coeff.end(), 0);
    coeff[lead] = 1;
    // free positions lead+1 .. dim-1 run over all of GF(q)
    int free = dim() - 1 - lead;
    long long total = 1;
    for (int i = 0; i < free; ++i) total *= q_;
    for (long long idx = 0; idx < total; ++idx) {
      long long t = idx;
      for (int i = lead + 1; i < dim(); ++i) {
        coeff[i] = static_cast<std::uint8_t>(t % q_);
        t /= q_;
      }
      Vec v(n_, 0);
      for (int r = 0; r < dim(); ++r) {
        if (!coeff[r]) continue;
        for (int c = 0; c < n_; ++c)
          v[c] = F.add(v[c], F.mul(coeff[r], rows_[r][c]));
      }
      pts.push_back(normalize_point(std::move(v), q_));
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

bool Subspace::in_hyperplane_at_infinity() const {
  for (const auto& r : rows_)
    if (r[0] != 0) return false;
  return true;
}

std::vector<Vec> Subspace::affine_points() const {
  if (in_hyperplane_at_infinity())
    throw std::domain_error("subspace is contained in the hyperplane at infinity");
  std::vector<Vec> out;
  for (auto& p : points())
    if (p[0] != 0) out.push_back(std::move(p));
  return out;
}

Vec normalize_point(Vec v, int q) {
  const Gf& F = Gf::get(q);
  for (auto e : v) {
    if (e == 0) continue;
    if (e != 1) {
      std::uint8_t s = F.inv(e);
      for (auto& x : v) x = F.mul(x, s);
    }
    break;
  }
  return v;
}

std::string vec_to_string(const Vec& v) {
  std::string s;
  s.reserve(v.size());
  for (auto e : v) s.push_back(static_cast<char>('0' + e));
  return s;
}

Vec vec_parse(const std::string& s, int n, int q) {
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument("vector literal has wrong length: " + s);
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    if (s[i] < '0' || s[i] >= '0' + q)
      throw std::invalid_argument("digit out of range for GF(q): " + s);
    v[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return v;
}

std::string Subspace::to_string() const {
  std::string s = "<";
  for (int i = 0; i < dim(); ++i) {
    if (i) s += ",";
    s += vec_to_string(rows_[i]);
  }
  s += ">";
  return s;
}

Subspace Subspace::parse(const std::string& text, int n, int q) {
  std::string t = text;
  // strip whitespace and angle brackets
  std::erase_if(t, [](char c) { return c == ' ' || c == '\t'; });
  if (t.size() < 2 || t.front() != '<' || t.back() != '>')
    throw std::invalid_argument("subspace literal must be <gen1,gen2,...>: " + text);
  t = t.substr(1, t.size() - 2);
  std::vector<Vec> rows;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t comma = t.find(',', pos);
    std::string tok = t.substr(pos, comma == std::string::npos ? std::string::npos
                                                              : comma - pos);
    if (!tok.empty()) rows.push_back(vec_parse(tok, n, q));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return rref(rows, n, q);
}

}  // namespace avsp
