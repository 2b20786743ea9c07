#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sraniso/error.hpp"

namespace sraniso {

/// A face is a sorted list of 1-based vertex labels.
using Face = std::vector<int>;

inline std::string face_to_string(const Face& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f[i]);
  }
  return s + "}";
}

inline std::uint64_t face_mask(const Face& f) {
  std::uint64_t mask = 0;
  for (int v : f) mask |= std::uint64_t{1} << (v - 1);
  return mask;
}

inline Face mask_face(std::uint64_t mask) {
  Face f;
  for (int v = 1; mask; ++v, mask >>= 1)
    if (mask & 1) f.push_back(v);
  return f;
}

inline bool is_subset(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Face face_union(const Face& a, const Face& b) {
  Face out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Face face_intersection(const Face& a, const Face& b) {
  Face out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Face face_difference(const Face& a, const Face& b) {
  Face out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// All k-element subsets of `s`, in lexicographic order.
inline std::vector<Face> subsets_of_size(const Face& s, int k) {
  std::vector<Face> out;
  if (k < 0 || k > static_cast<int>(s.size())) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int n = static_cast<int>(s.size());
  while (true) {
    Face f(k);
    for (int i = 0; i < k; ++i) f[i] = s[idx[i]];
    out.push_back(std::move(f));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/**
 * \brief Pure simplicial complex on the vertex set {1..m}.
 *
 * Facets are kept sorted, both internally and as a list, so every iteration
 * over them is reproducible. Vertex labels are limited to 1..63.
 */
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  static SimplicialComplex from_facets(int m, std::vector<Face> facets) {
    if (facets.empty()) fail(ErrorKind::BadShape, "complex needs at least one facet");
    if (m < 0 || m > 63) fail(ErrorKind::BadVertex, "vertex count must lie in 0..63");
    for (auto& f : facets) {
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end())
        fail(ErrorKind::BadVertex, "repeated vertex in facet " + face_to_string(f));
      for (int v : f)
        if (v < 1 || v > m) fail(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(m));
    }
    for (std::size_t i = 0; i < facets.size(); ++i)
      for (std::size_t j = 0; j < facets.size(); ++j)
        if (i != j && facets[i].size() < facets[j].size() && is_subset(facets[i], facets[j]))
          fail(ErrorKind::NotPure, face_to_string(facets[i]) + " lies inside " + face_to_string(facets[j]));
    const std::size_t size = facets.front().size();
    for (const auto& f : facets)
      if (f.size() != size) fail(ErrorKind::MixedDimension, "facet sizes differ");
    std::sort(facets.begin(), facets.end());
    if (std::adjacent_find(facets.begin(), facets.end()) != facets.end())
      fail(ErrorKind::NotPure, "duplicate facet");
    SimplicialComplex d;
    d.m_ = m;
    d.n_ = static_cast<int>(size) - 1;
    d.facets_ = std::move(facets);
    std::uint64_t used = 0;
    for (const auto& f : d.facets_) {
      std::uint64_t mask = face_mask(f);
      used |= mask;
      d.facet_masks_.push_back(mask);
      // Enumerate every subface once.
      for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
        d.faces_.insert(sub);
        if (sub == 0) break;
      }
    }
    const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    if (used != all) fail(ErrorKind::BadVertex, "some vertex in 1..m lies in no facet");
    return d;
  }

  int m() const { return m_; }
  int dim() const { return n_; }
  const std::vector<Face>& facets() const { return facets_; }

  bool is_face(const Face& s) const { return faces_.count(face_mask(s)) != 0; }
  bool is_face_mask(std::uint64_t mask) const { return faces_.count(mask) != 0; }
  bool is_facet(const Face& s) const { return std::binary_search(facets_.begin(), facets_.end(), s); }

  /// Faces with exactly k vertices, sorted lexicographically.
  std::vector<Face> faces_of_size(int k) const {
    std::vector<Face> out;
    for (std::uint64_t mask : faces_)
      if (__builtin_popcountll(mask) == k) out.push_back(mask_face(mask));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Face> facets_containing(const Face& s) const {
    std::vector<Face> out;
    const std::uint64_t mask = face_mask(s);
    for (std::size_t i = 0; i < facets_.size(); ++i)
      if ((facet_masks_[i] & mask) == mask) out.push_back(facets_[i]);
    return out;
  }

  bool operator==(const SimplicialComplex& o) const { return m_ == o.m_ && facets_ == o.facets_; }

 private:
  int m_ = 0;
  int n_ = -1;
  std::vector<Face> facets_;
  std::vector<std::uint64_t> facet_masks_;
  std::unordered_set<std::uint64_t> faces_;
};

inline SimplicialComplex boundary_simplex(int n) {
  if (n < 1) fail(ErrorKind::TooSmall, "boundary_simplex needs n >= 1");
  Face all;
  for (int v = 1; v <= n + 2; ++v) all.push_back(v);
  return SimplicialComplex::from_facets(n + 2, subsets_of_size(all, n + 1));
}

inline SimplicialComplex polygon(int m) {
  if (m < 3) fail(ErrorKind::TooSmall, "polygon needs m >= 3");
  std::vector<Face> facets;
  for (int i = 1; i < m; ++i) facets.push_back({i, i + 1});
  facets.push_back({1, m});
  return SimplicialComplex::from_facets(m, facets);
}

/// Join with the two new vertices m+1 and m+2.
inline SimplicialComplex suspension(const SimplicialComplex& d) {
  std::vector<Face> facets;
  for (const auto& f : d.facets()) {
    Face a = f, b = f;
    a.push_back(d.m() + 1);
    b.push_back(d.m() + 2);
    facets.push_back(a);
    facets.push_back(b);
  }
  return SimplicialComplex::from_facets(d.m() + 2, facets);
}

/// Join with the single new vertex m+1.
inline SimplicialComplex cone(const SimplicialComplex& d) {
  std::vector<Face> facets;
  for (auto f : d.facets()) {
    f.push_back(d.m() + 1);
    facets.push_back(f);
  }
  return SimplicialComplex::from_facets(d.m() + 1, facets);
}

struct PseudomanifoldReport {
  bool ok = false;
  bool connected = false;
  /// Ridges that do not lie in exactly two facets, with their facet count.
  std::vector<std::pair<Face, int>> bad_ridges;
};

namespace detail {

inline std::vector<std::vector<int>> facet_adjacency(const SimplicialComplex& d) {
  const auto& fs = d.facets();
  std::vector<std::vector<int>> adj(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      if (static_cast<int>(face_intersection(fs[i], fs[j]).size()) == d.dim()) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  return adj;
}

inline std::vector<int> bfs_parents(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<int> parent(adj.size(), -2);
  std::deque<int> queue{start};
  parent[start] = -1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u])
      if (parent[v] == -2) {
        parent[v] = u;
        queue.push_back(v);
      }
  }
  return parent;
}

}  // namespace detail

inline PseudomanifoldReport is_closed_pseudomanifold(const SimplicialComplex& d) {
  PseudomanifoldReport rep;
  std::map<Face, int> ridge_count;
  for (const auto& f : d.facets())
    for (auto& r : subsets_of_size(f, d.dim())) ++ridge_count[r];
  for (const auto& [r, c] : ridge_count)
    if (c != 2) rep.bad_ridges.emplace_back(r, c);
  auto parent = detail::bfs_parents(detail::facet_adjacency(d), 0);
  rep.connected = std::none_of(parent.begin(), parent.end(), [](int p) { return p == -2; });
  rep.ok = rep.connected && rep.bad_ridges.empty();
  return rep;
}

/// A link, relabelled onto 1..k; `labels[i-1]` is the original name of vertex i.
struct Link {
  SimplicialComplex complex;
  std::vector<int> labels;
};

inline Link link(const SimplicialComplex& d, const Face& tau) {
  if (!d.is_face(tau)) fail(ErrorKind::NotAFace, face_to_string(tau) + " is not a face");
  std::vector<Face> rest;
  std::set<int> verts;
  for (const auto& f : d.facets_containing(tau)) {
    Face r = face_difference(f, tau);
    verts.insert(r.begin(), r.end());
    rest.push_back(std::move(r));
  }
  Link out;
  out.labels.assign(verts.begin(), verts.end());
  std::map<int, int> relabel;
  for (std::size_t i = 0; i < out.labels.size(); ++i) relabel[out.labels[i]] = static_cast<int>(i) + 1;
  for (auto& r : rest)
    for (int& v : r) v = relabel[v];
  out.complex = SimplicialComplex::from_facets(static_cast<int>(out.labels.size()), rest);
  return out;
}

/// Inclusion-minimal non-faces, by size and then lexicographically; these index the generators of the Stanley-Reisner ideal.
inline std::vector<Face> minimal_nonfaces(const SimplicialComplex& d) {
  std::vector<Face> out;
  Face all;
  for (int v = 1; v <= d.m(); ++v) all.push_back(v);
  for (int k = 1; k <= std::min(d.m(), d.dim() + 2); ++k)
    for (const auto& s : subsets_of_size(all, k)) {
      if (d.is_face(s)) continue;
      bool minimal = true;
      for (std::size_t i = 0; i < s.size() && minimal; ++i) {
        Face t = s;
        t.erase(t.begin() + static_cast<long>(i));
        minimal = d.is_face(t);
      }
      if (minimal) out.push_back(s);
    }
  return out;
}

/// Shortest sequence of facets from s1 to s2 in which neighbours share a ridge.
inline std::vector<Face> facet_path(const SimplicialComplex& d, const Face& s1, const Face& s2) {
  const auto& fs = d.facets();
  auto index = [&](const Face& f) {
    auto it = std::lower_bound(fs.begin(), fs.end(), f);
    if (it == fs.end() || *it != f) fail(ErrorKind::NotAFace, face_to_string(f) + " is not a facet");
    return static_cast<int>(it - fs.begin());
  };
  const int a = index(s1), b = index(s2);
  auto parent = detail::bfs_parents(detail::facet_adjacency(d), b);
  if (parent[a] == -2) fail(ErrorKind::NoPath, "facets lie in different components");
  std::vector<Face> path;
  for (int u = a; u != -1; u = parent[u]) path.push_back(fs[u]);
  return path;
}

/// (f_0, ..., f_n): number of faces with 1, ..., n+1 vertices.
inline std::vector<long long> f_vector(const SimplicialComplex& d) {
  std::vector<long long> f(d.dim() + 1, 0);
  for (int k = 1; k <= d.dim() + 1; ++k) f[k - 1] = static_cast<long long>(d.faces_of_size(k).size());
  return f;
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<long long> h_vector(const SimplicialComplex& d) {
  const int dd = d.dim() + 1;
  auto f = f_vector(d);
  auto fm = [&](int i) { return i == 0 ? 1LL : f[i - 1]; };  // f_{i-1}
  std::vector<long long> h(dd + 1, 0);
  for (int k = 0; k <= dd; ++k)
    for (int i = 0; i <= k; ++i) h[k] += ((k - i) % 2 ? -1 : 1) * binomial(dd - i, k - i) * fm(i);
  return h;
}

inline std::vector<long long> g_vector(const SimplicialComplex& d) {
  auto h = h_vector(d);
  std::vector<long long> g;
  for (int i = 0; 2 * i <= d.dim() + 1; ++i) g.push_back(i == 0 ? h[0] : h[i] - h[i - 1]);
  return g;
}

}  // namespace sraniso
