#include "avsp/avsp.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace avsp {

TypeVector::TypeVector(std::map<int, int> m) : m_(std::move(m)) {
  for (auto it = m_.begin(); it != m_.end();) {
    if (it->second == 0) it = m_.erase(it);
    else if (it->second < 0 || it->first < 1) throw std::invalid_argument("bad type vector");
    else ++it;
  }
}

int TypeVector::multiplicity(int dim) const {
  auto it = m_.find(dim);
  return it == m_.end() ? 0 : it->second;
}

void TypeVector::set(int dim, int mult) {
  if (mult == 0) m_.erase(dim);
  else m_[dim] = mult;
}

int TypeVector::size() const {
  int s = 0;
  for (auto& [d, m] : m_) s += m;
  return s;
}

int TypeVector::min_dim() const { return m_.empty() ? 0 : m_.begin()->first; }
int TypeVector::max_dim() const { return m_.empty() ? 0 : m_.rbegin()->first; }

long long TypeVector::affine_weight(int q) const {
  long long s = 0;
  for (auto& [d, m] : m_) {
    long long w = 1;
    for (int i = 1; i < d; ++i) w *= q;
    s += m * w;
  }
  return s;
}

bool TypeVector::satisfies_packing(int n, int q) const {
  long long target = 1;
  for (int i = 1; i < n; ++i) target *= q;
  if (max_dim() > n - 1) return false;
  return affine_weight(q) == target;
}

std::string TypeVector::to_string() const {
  if (m_.empty()) return "-";
  std::ostringstream os;
  bool first = true;
  for (auto it = m_.rbegin(); it != m_.rend(); ++it) {
    if (!first) os << " ";
    os << it->first << "^" << it->second;
    first = false;
  }
  return os.str();
}

TypeVector TypeVector::parse(const std::string& text) {
  std::map<int, int> m;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto caret = tok.find('^');
    if (caret == std::string::npos)
      throw std::invalid_argument("type token must be dim^mult: " + tok);
    int d = std::stoi(tok.substr(0, caret));
    int mult = std::stoi(tok.substr(caret + 1));
    if (d < 1 || mult < 0) throw std::invalid_argument("bad type token: " + tok);
    m[d] += mult;
  }
  return TypeVector(std::move(m));
}

TypeVector Avsp::type() const {
  std::map<int, int> m;
  for (const auto& e : elements) ++m[e.dim()];
  return TypeVector(std::move(m));
}

TypeVector InfinityPart::type() const {
  std::map<int, int> m;
  for (const auto& e : elements) ++m[e.dim()];
  return TypeVector(std::move(m));
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  os << (valid ? "valid" : "invalid") << ", type " << type.to_string();
  if (!uncovered.empty()) os << ", " << uncovered.size() << " uncovered";
  if (!multiply_covered.empty())
    os << ", " << multiply_covered.size() << " multiply covered";
  for (const auto& p : element_problems) os << ", " << p;
  return os.str();
}

VerifyReport verify(const Avsp& a) {
  const Space& sp = Space::get(a.n, a.q);
  VerifyReport rep;
  rep.type = a.type();
  for (const auto& e : a.elements) {
    if (e.n() != a.n || e.q() != a.q)
      rep.element_problems.push_back("element ambient mismatch");
    else if (e.dim() < 1 || e.dim() > a.n - 1)
      rep.element_problems.push_back("element dimension out of range: " +
                                     e.to_string());
    else if (e.in_hyperplane_at_infinity())
      rep.element_problems.push_back("element inside hyperplane at infinity: " +
                                     e.to_string());
  }
  if (!rep.element_problems.empty()) return rep;

  std::vector<int> cover(sp.num_affine(), 0);
  for (const auto& e : a.elements) {
    Bitset s = sp.affine_set(e);
    s.for_each([&](std::size_t i) { ++cover[i]; });
  }
  for (int i = 0; i < sp.num_affine(); ++i) {
    if (cover[i] == 0) rep.uncovered.push_back(sp.affine_point(i));
    else if (cover[i] > 1) rep.multiply_covered.push_back(sp.affine_point(i));
  }
  rep.valid = rep.uncovered.empty() && rep.multiply_covered.empty();
  return rep;
}

VerifyReport verify_within(const Subspace& V,
                           const std::vector<Subspace>& elements) {
  VerifyReport rep;
  std::map<int, int> tm;
  for (const auto& e : elements) ++tm[e.dim()];
  rep.type = TypeVector(std::move(tm));

  std::vector<Vec> vpts = V.points();
  std::map<Vec, int> cover;
  for (const auto& p : vpts)
    if (p[0] != 0) cover[p] = 0;
  for (const auto& e : elements) {
    if (!V.contains(e)) {
      rep.element_problems.push_back("element not inside ambient: " + e.to_string());
      return rep;
    }
    if (e.in_hyperplane_at_infinity()) {
      rep.element_problems.push_back("element inside hyperplane at infinity: " +
                                     e.to_string());
      return rep;
    }
    for (const auto& p : e.affine_points()) ++cover[p];
  }
  for (auto& [p, c] : cover) {
    if (c == 0) rep.uncovered.push_back(p);
    else if (c > 1) rep.multiply_covered.push_back(p);
  }
  rep.valid = rep.uncovered.empty() && rep.multiply_covered.empty();
  return rep;
}

bool is_tight(const Avsp& a) {
  if (a.elements.empty()) return false;
  Subspace inter = a.elements[0];
  for (std::size_t i = 1; i < a.elements.size() && inter.dim() > 0; ++i)
    inter = inter.intersect(a.elements[i]);
  return inter.dim() == 0;
}

namespace {

// affine closure growth from a seed pair; returns the reached subspace
Subspace closure_of_pair(const Avsp& a, const Space& sp,
                         const std::vector<Bitset>& aff, std::size_t i,
                         std::size_t j) {
  Subspace V = a.elements[i].join(a.elements[j]);
  Bitset vset = sp.affine_set(V);
  bool grew = true;
  while (grew && V.dim() < a.n) {
    grew = false;
    for (std::size_t k = 0; k < a.elements.size(); ++k) {
      if (aff[k].intersects(vset) && !aff[k].is_subset_of(vset)) {
        V = V.join(a.elements[k]);
        vset = sp.affine_set(V);
        grew = true;
      }
    }
  }
  return V;
}

}  // namespace

bool is_irreducible(const Avsp& a, IrreducibilityMode mode) {
  const Space& sp = Space::get(a.n, a.q);
  std::vector<Bitset> aff;
  aff.reserve(a.elements.size());
  for (const auto& e : a.elements) aff.push_back(sp.affine_set(e));

  if (mode == IrreducibilityMode::kFast) {
    // A joinable subset S with union = affine part of V contains some pair
    // whose closure is a proper exactly-covered subspace, so pairs suffice.
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
      for (std::size_t j = i + 1; j < a.elements.size(); ++j) {
        Subspace V = closure_of_pair(a, sp, aff, i, j);
        if (V.dim() >= a.n) continue;
        // at fixpoint the affine part of V is a union of whole elements and
        // contains at least the pair, so the avsp is reducible
        return false;
      }
    }
    return true;
  }

  // oracle: all proper subspaces not inside the hyperplane at infinity
  long long candidates = 0;
  for (int d = 2; d < a.n; ++d) candidates += gaussian_binomial(a.n, d, a.q);
  if (candidates > (1 << 20))
    throw std::runtime_error("irreducibility oracle refused: too many subspaces");
  for (int d = 2; d < a.n; ++d) {
    SubspaceEnumerator en(a.n, a.q, d);
    for (long long idx = 0; idx < en.count(); ++idx) {
      Subspace V = en.at(idx);
      if (V.in_hyperplane_at_infinity()) continue;
      Bitset vset = sp.affine_set(V);
      std::size_t covered = 0;
      int members = 0;
      for (std::size_t k = 0; k < a.elements.size(); ++k) {
        if (aff[k].is_subset_of(vset)) {
          covered += aff[k].count();
          ++members;
        }
      }
      if (members >= 2 && covered == vset.count()) return false;
    }
  }
  return true;
}

std::vector<Subspace> tail(const Avsp& a) {
  int kl = a.type().min_dim();
  std::vector<Subspace> t;
  for (const auto& e : a.elements)
    if (e.dim() == kl) t.push_back(e);
  return t;
}

InfinityPart infinity_part(const Avsp& a) {
  const Space& sp = Space::get(a.n, a.q);
  Subspace hinf = sp.hyperplane_at_infinity();
  InfinityPart ip;
  ip.n = a.n;
  ip.q = a.q;
  for (const auto& e : a.elements) ip.elements.push_back(e.intersect(hinf));
  return ip;
}

KDecomposition k_decomposition(const Avsp& a, const Subspace& K) {
  const Space& sp = Space::get(a.n, a.q);
  Subspace hinf = sp.hyperplane_at_infinity();
  if (K.dim() != a.n - 2 || !hinf.contains(K))
    throw std::invalid_argument("K must be a hyperplane of the hyperplane at infinity");
  KDecomposition kd;
  // the q+1 hyperplanes containing K are spanned by K and one further point;
  // skip the one equal to Hinf
  std::set<Subspace> seen;
  for (int p = 0; p < sp.num_points(); ++p) {
    Subspace H = K.join(Subspace::rref({sp.point(p)}, a.n, a.q));
    if (H.dim() != a.n - 1 || H.in_hyperplane_at_infinity()) continue;
    if (H == hinf) continue;
    if (seen.insert(H).second) kd.hyperplanes.push_back(H);
    if (static_cast<int>(kd.hyperplanes.size()) == a.q) break;
  }
  for (const auto& H : kd.hyperplanes) {
    std::vector<Subspace> coll;
    for (const auto& U : a.elements) {
      Subspace c = U.intersect(H);
      if (c.dim() >= 1 && !c.in_hyperplane_at_infinity()) coll.push_back(c);
    }
    kd.collections.push_back(std::move(coll));
  }
  return kd;
}

bool is_delta_divisible(const std::vector<Subspace>& S, const Subspace& ambient,
                        int delta) {
  if (S.empty()) return true;
  int q = ambient.q();
  int k = ambient.dim();
  auto hyps = enumerate_subspaces_within(ambient, k - 1);
  long long total = static_cast<long long>(S.size());
  for (const auto& H : hyps) {
    long long inside = 0;
    for (const auto& T : S)
      if (H.contains(T)) ++inside;
    if ((total - inside) % delta != 0) return false;
  }
  (void)q;
  return true;
}

Spectrum spectrum(const std::vector<Subspace>& S, const Subspace& ambient) {
  int q = ambient.q();
  int n = ambient.dim();
  int k = S.empty() ? 0 : S[0].dim();
  for (const auto& T : S)
    if (T.dim() != k) throw std::invalid_argument("spectrum needs equal dimensions");
  Spectrum sp;
  sp.a.assign(S.size() + 1, 0);
  auto hyps = enumerate_subspaces_within(ambient, n - 1);
  for (const auto& H : hyps) {
    int inside = 0;
    for (const auto& T : S)
      if (H.contains(T)) ++inside;
    ++sp.a[inside];
  }
  long long sum = 0, isum = 0;
  for (std::size_t i = 0; i < sp.a.size(); ++i) {
    sum += sp.a[i];
    isum += static_cast<long long>(i) * sp.a[i];
  }
  assert(sum == gaussian_binomial(n, n - 1, q));
  assert(S.empty() || isum == static_cast<long long>(S.size()) *
                                  gaussian_binomial(n - k, n - k - 1, q));
  (void)isum;
  return sp;
}

}  // namespace avsp
