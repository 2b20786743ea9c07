#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "sraniso/error.hpp"
#include "sraniso/polynomial.hpp"

namespace sraniso {

/// Shape of the generic matrix whose (i,j) entry is a_{i,j}.
struct GenericMatrixSpec {
  int rows = 2;
  int cols = 2;
};

/**
 * \brief A maximal minor of the generic matrix.
 *
 * Rows row_lo .. row_lo+nrows-1, columns `cols` sorted ascending. The usual
 * bracket [b_1,...,b_{n+1}] has row_lo = 1 and nrows = n+1.
 */
struct BracketKey {
  int row_lo = 1;
  int nrows = 0;
  std::vector<int> cols;

  auto operator<=>(const BracketKey&) const = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(cols[i]);
    }
    s += "]";
    if (row_lo != 1) s += "_r" + std::to_string(row_lo);
    return s;
  }
};

/// Sign of the permutation sorting `seq`, or 0 if it has a repeated entry.
inline int permutation_sign(std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) sign = -sign;
    }
  return sign;
}

namespace detail {

inline Polynomial expand_minor(std::uint32_t p, const BracketKey& key) {
  const int k = static_cast<int>(key.cols.size());
  if (k != key.nrows) fail(ErrorKind::WrongLength, "minor needs as many columns as rows");
  if (k == 0) return Polynomial::constant(p, 1);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> terms;
  do {
    const int sign = permutation_sign(perm);
    std::vector<std::uint32_t> words;
    for (int r = 0; r < k; ++r) words.push_back(Monomial::pack(var_id({key.row_lo + r, key.cols[perm[r]]}), 1));
    std::sort(words.begin(), words.end());
    terms.push_back({Monomial::from_words(std::move(words)), PrimeField{p}.from_int(sign)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Polynomial::from_terms(p, std::move(terms));
}

}  // namespace detail

/// Expanded polynomial of a minor, memoised per characteristic.
inline const Polynomial& minor_poly(std::uint32_t p, const BracketKey& key) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, BracketKey>, Polynomial> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, key});
  if (it == cache.end()) it = cache.emplace(std::make_pair(p, key), detail::expand_minor(p, key)).first;
  return it->second;
}

/// Normalises an ordered column list: returns the sign relating it to the sorted key (0 if degenerate).
inline std::pair<int, BracketKey> normalize_bracket(int row_lo, int nrows, const std::vector<int>& cols) {
  if (static_cast<int>(cols.size()) != nrows)
    fail(ErrorKind::WrongLength, "bracket needs " + std::to_string(nrows) + " columns, got " + std::to_string(cols.size()));
  BracketKey key{row_lo, nrows, cols};
  std::sort(key.cols.begin(), key.cols.end());
  return {permutation_sign(cols), key};
}

/// The bracket [cols] of the generic matrix, as an expanded polynomial over GF(p).
inline Polynomial bracket(std::uint32_t p, const GenericMatrixSpec& spec, const std::vector<int>& cols) {
  auto [sign, key] = normalize_bracket(1, spec.rows, cols);
  for (int c : cols)
    if (c < 1 || c > spec.cols) fail(ErrorKind::BadShape, "bracket column out of range");
  if (sign == 0) return Polynomial(p);
  const Polynomial& f = minor_poly(p, key);
  return sign > 0 ? f : -f;
}

/**
 * \brief Exact determinant of a square polynomial matrix.
 *
 * Cofactor expansion up to `cofactor_cutoff`, fraction-free Bareiss
 * elimination above it.
 */
inline Polynomial det_poly_matrix(const std::vector<std::vector<Polynomial>>& a, std::uint32_t p, int cofactor_cutoff = 4) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::BadShape, "determinant of a non-square matrix");
  if (n == 0) return Polynomial::constant(p, 1);
  if (n <= cofactor_cutoff) {
    if (n == 1) return a[0][0];
    Polynomial sum(p);
    for (int j = 0; j < n; ++j) {
      if (a[0][j].is_zero()) continue;
      std::vector<std::vector<Polynomial>> sub;
      for (int i = 1; i < n; ++i) {
        std::vector<Polynomial> row;
        for (int k = 0; k < n; ++k)
          if (k != j) row.push_back(a[i][k]);
        sub.push_back(std::move(row));
      }
      Polynomial term = a[0][j] * det_poly_matrix(sub, p, cofactor_cutoff);
      sum = (j % 2) ? sum - term : sum + term;
    }
    return sum;
  }
  auto m = a;
  Polynomial prev = Polynomial::constant(p, 1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial(p);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = exact_divide(num, prev);
        if (!q) fail(ErrorKind::DivByZero, "Bareiss step was not exact");
        m[i][j] = std::move(*q);
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace sraniso
