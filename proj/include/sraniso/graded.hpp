#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sraniso/complex.hpp"
#include "sraniso/error.hpp"
#include "sraniso/finite_field.hpp"
#include "sraniso/linalg.hpp"

namespace sraniso {

/// A monomial in x_1..x_m written as a non-decreasing list of vertices, e.g. {1,1,3} = x_1^2 x_3.
using VertexMultiset = std::vector<int>;

inline Face support_of(const VertexMultiset& mu) {
  Face s = mu;
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

/**
 * \brief Graded pieces of k[D]/(l_1,...,l_s) for linear forms with coefficients in a finite field.
 *
 * Degree d is modelled on the monomials of degree d whose support is a face
 * of D; the relations in degree d are l_i * mu for every such monomial mu of
 * degree d-1. Pieces are built lazily and cached.
 */
class GradedQuotient {
 public:
  GradedQuotient(const FiniteField& f, SimplicialComplex d, std::vector<FieldVector> forms)
      : f_(&f), d_(std::move(d)), forms_(std::move(forms)) {
    for (const auto& l : forms_)
      if (static_cast<int>(l.size()) != d_.m()) fail(ErrorKind::BadShape, "linear form has the wrong length");
  }

  const FiniteField& field() const { return *f_; }
  const SimplicialComplex& complex() const { return d_; }

  const std::vector<VertexMultiset>& monomials(int deg) const { return piece(deg).monos; }

  std::size_t index_of(int deg, const VertexMultiset& mu) const {
    const auto& p = piece(deg);
    auto it = p.index.find(mu);
    if (it == p.index.end()) fail(ErrorKind::NotAFace, "monomial support is not a face");
    return it->second;
  }

  /// Coordinate vector of a monomial, or the zero vector if it lies in the Stanley-Reisner ideal.
  FieldVector monomial_vector(int deg, const VertexMultiset& mu) const {
    FieldVector v(monomials(deg).size(), 0);
    VertexMultiset s = mu;
    std::sort(s.begin(), s.end());
    if (d_.is_face(support_of(s))) v[index_of(deg, s)] = f_->one();
    return v;
  }

  const EchelonBasis& relations(int deg) const { return *piece(deg).relations; }

  std::size_t dim(int deg) const { return monomials(deg).size() - relations(deg).rank(); }

  /// Monomials whose images form a basis of the quotient in this degree.
  std::vector<std::size_t> basis(int deg) const {
    std::vector<std::size_t> out;
    const auto& rel = relations(deg);
    for (std::size_t i = 0; i < monomials(deg).size(); ++i)
      if (!rel.is_pivot(i)) out.push_back(i);
    return out;
  }

  FieldVector normal_form(int deg, const FieldVector& v) const { return relations(deg).reduce(v); }

  bool is_zero(int deg, const FieldVector& v) const { return relations(deg).contains(v); }

  /// Multiplies a degree-deg vector by a linear form (coefficients indexed by vertex-1).
  FieldVector multiply_by_form(int deg, const FieldVector& v, const FieldVector& form) const {
    const auto& src = monomials(deg);
    FieldVector out(monomials(deg + 1).size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (v[i] == 0) continue;
      for (int j = 1; j <= d_.m(); ++j) {
        if (form[j - 1] == 0) continue;
        VertexMultiset mu = src[i];
        mu.insert(std::upper_bound(mu.begin(), mu.end(), j), j);
        if (!d_.is_face(support_of(mu))) continue;
        const std::size_t k = index_of(deg + 1, mu);
        out[k] = f_->add(out[k], f_->mul(v[i], form[j - 1]));
      }
    }
    return out;
  }

  /// Rank of multiplication by form^power from degree deg to deg+power.
  std::size_t map_rank(int deg, const FieldVector& form, int power) const {
    EchelonBasis img(*f_, monomials(deg + power).size());
    for (std::size_t b : basis(deg)) {
      FieldVector v(monomials(deg).size(), 0);
      v[b] = f_->one();
      for (int k = 0; k < power; ++k) v = multiply_by_form(deg + k, v, form);
      img.insert(normal_form(deg + power, v));
    }
    return img.rank();
  }

 private:
  struct Piece {
    std::vector<VertexMultiset> monos;
    std::map<VertexMultiset, std::size_t> index;
    std::optional<EchelonBasis> relations;
  };

  const Piece& piece(int deg) const {
    if (deg < 0) fail(ErrorKind::BadShape, "negative degree");
    while (static_cast<int>(pieces_.size()) <= deg) build(static_cast<int>(pieces_.size()));
    return pieces_[deg];
  }

  void build(int deg) const {
    Piece p;
    VertexMultiset cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == deg) {
        if (d_.is_face(support_of(cur))) {
          p.index[cur] = p.monos.size();
          p.monos.push_back(cur);
        }
        return;
      }
      for (int v = start; v <= d_.m(); ++v) {
        cur.push_back(v);
        if (d_.is_face(support_of(cur))) rec(v);
        cur.pop_back();
      }
    };
    rec(1);
    p.relations.emplace(*f_, p.monos.size());
    pieces_.push_back(std::move(p));
    if (deg > 0) {
      const auto& lower = pieces_[deg - 1].monos;
      for (const auto& form : forms_)
        for (std::size_t i = 0; i < lower.size(); ++i) {
          FieldVector e(lower.size(), 0);
          e[i] = f_->one();
          pieces_[deg].relations->insert(multiply_by_form(deg - 1, e, form));
        }
    }
  }

  const FiniteField* f_;
  SimplicialComplex d_;
  std::vector<FieldVector> forms_;
  mutable std::deque<Piece> pieces_;
};

/**
 * \brief Runs `fn` over successive seeds until two runs agree.
 *
 * The seeds listed are tried first, then further seeds derived from the last
 * one, up to `max_runs` runs in total.
 */
template <class T>
T agree_over_seeds(const std::vector<std::uint64_t>& seeds, const std::function<T(std::uint64_t)>& fn, int max_runs = 6,
                   std::vector<std::uint64_t>* used = nullptr) {
  std::vector<std::pair<std::uint64_t, T>> runs;
  std::uint64_t next = seeds.empty() ? 1 : seeds.back();
  for (int k = 0; k < max_runs; ++k) {
    std::uint64_t s;
    if (k < static_cast<int>(seeds.size())) {
      s = seeds[k];
    } else {
      next = splitmix64(next);
      s = next;
    }
    T value = fn(s);
    for (const auto& [prev_seed, prev] : runs)
      if (prev == value) {
        if (used) *used = {prev_seed, s};
        return value;
      }
    runs.emplace_back(s, std::move(value));
  }
  fail(ErrorKind::UnstableRank, "no two of " + std::to_string(max_runs) + " seeded runs agreed");
}

}  // namespace sraniso
