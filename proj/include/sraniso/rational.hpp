#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sraniso/bracket.hpp"
#include "sraniso/error.hpp"
#include "sraniso/linalg.hpp"
#include "sraniso/polynomial.hpp"

namespace sraniso {

/// A Laurent monomial in brackets: bracket -> nonzero exponent.
using BracketMonomial = std::map<BracketKey, int>;

namespace detail {

inline void bump(BracketMonomial& m, const BracketKey& k, int e) {
  if (e == 0) return;
  int& x = m[k];
  x += e;
  if (x == 0) m.erase(k);
}

inline BracketMonomial bracket_product(const BracketMonomial& a, const BracketMonomial& b) {
  BracketMonomial r = a;
  for (const auto& [k, e] : b) bump(r, k, e);
  return r;
}

inline int exponent_of(const BracketMonomial& m, const BracketKey& k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

/// Leibniz expansion of the minor on arbitrary rows and columns.
inline Polynomial general_minor(std::uint32_t p, const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t k = rows.size();
  if (k == 0) return Polynomial::constant(p, 1);
  std::vector<int> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
  std::vector<Term> terms;
  do {
    std::vector<std::uint32_t> words;
    for (std::size_t i = 0; i < k; ++i)
      words.push_back(Monomial::pack(var_id({rows[i], cols[static_cast<std::size_t>(perm[i])]}), 1));
    std::sort(words.begin(), words.end());
    terms.push_back({Monomial::from_words(std::move(words)), PrimeField{p}.from_int(permutation_sign(perm))});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Polynomial::from_terms(p, std::move(terms));
}

}  // namespace detail

/**
 * \brief Element of the fraction field of GF(p)[a_{i,j}], kept as a lazy sum.
 *
 * The value is (sum_k c_k B_k) / den, where each B_k is a Laurent monomial in
 * brackets and each c_k a polynomial (almost always a constant). Sums are
 * never put over a common denominator unless an operation needs it, so
 * identities between bracket ratios stay cheap to state. `is_zero` decides
 * vanishing exactly.
 */
class RationalFunction {
 public:
  using Terms = std::map<BracketMonomial, Polynomial>;

  explicit RationalFunction(std::uint32_t p = 2) : p_(p), den_(Polynomial::constant(p, 1)) {}

  static RationalFunction zero(std::uint32_t p) { return RationalFunction(p); }
  static RationalFunction one(std::uint32_t p) { return constant(p, 1); }
  static RationalFunction constant(std::uint32_t p, long long c) { return from_poly(Polynomial::constant(p, c)); }

  static RationalFunction from_poly(Polynomial f) {
    RationalFunction r(f.characteristic());
    if (!f.is_zero()) r.terms_.emplace(BracketMonomial{}, std::move(f));
    return r;
  }

  static RationalFunction from_bracket_key(std::uint32_t p, const BracketKey& key, int exponent = 1) {
    RationalFunction r(p);
    BracketMonomial b;
    if (exponent) b[key] = exponent;
    r.terms_.emplace(std::move(b), Polynomial::constant(p, 1));
    return r;
  }

  /// The bracket with columns in the given order (rows 1..nrows), including its sign.
  static RationalFunction bracket(std::uint32_t p, int nrows, const std::vector<int>& cols) {
    auto [sign, key] = normalize_bracket(1, nrows, cols);
    if (sign == 0) return zero(p);
    RationalFunction r = from_bracket_key(p, key);
    if (sign < 0) r = -r;
    return r;
  }

  std::uint32_t characteristic() const { return p_; }
  const Terms& terms() const { return terms_; }
  const Polynomial& residual_denominator() const { return den_; }

  /// True when no terms survive syntactic cancellation; `is_zero` is the exact test.
  bool is_trivially_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  bool has_constant_coefficients() const {
    for (const auto& [b, c] : terms_)
      if (!c.is_constant()) return false;
    return den_.is_one();
  }

  /// Exact decision of whether the value is zero.
  bool is_zero() const {
    if (terms_.empty()) return true;
    if (terms_.size() == 1) return false;
    if (gauge_applicable()) return gauge_zero_test();
    return collapse().second.is_zero();
  }

  /// Common bracket factor g and the expanded polynomial S with value g * S / residual_denominator().
  std::pair<BracketMonomial, Polynomial> factored() const { return collapse(); }

  /// Expanded numerator and denominator of one fraction representing the value.
  Polynomial numerator() const {
    auto [g, n] = collapse();
    std::vector<Polynomial> factors{n};
    for (const auto& [k, e] : g)
      for (int i = 0; i < e; ++i) factors.push_back(minor_poly(p_, k));
    return Polynomial::product(p_, std::move(factors));
  }
  Polynomial denominator() const {
    auto [g, n] = collapse();
    std::vector<Polynomial> factors{den_};
    for (const auto& [k, e] : g)
      for (int i = 0; i < -e; ++i) factors.push_back(minor_poly(p_, k));
    return Polynomial::product(p_, std::move(factors));
  }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    for (auto& [b, c] : r.terms_) c = -c;
    return r;
  }

  RationalFunction operator+(const RationalFunction& o) const {
    check(o);
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return o;
    RationalFunction r(p_);
    if (den_ == o.den_) {
      r.terms_ = terms_;
      r.den_ = den_;
      for (const auto& [b, c] : o.terms_) r.add_term(b, c);
    } else {
      for (const auto& [b, c] : terms_) r.add_term(b, c * o.den_);
      for (const auto& [b, c] : o.terms_) r.add_term(b, c * den_);
      r.den_ = den_ * o.den_;
    }
    r.normalize();
    return r;
  }

  RationalFunction operator*(const RationalFunction& o) const {
    check(o);
    RationalFunction r(p_);
    if (terms_.empty() || o.terms_.empty()) return r;
    for (const auto& [b1, c1] : terms_)
      for (const auto& [b2, c2] : o.terms_) r.add_term(detail::bracket_product(b1, b2), c1 * c2);
    r.den_ = den_.is_one() ? o.den_ : (o.den_.is_one() ? den_ : den_ * o.den_);
    r.normalize();
    return r;
  }

  RationalFunction inverse() const {
    if (terms_.empty()) fail(ErrorKind::DivByZero, "inverse of zero");
    RationalFunction r(p_);
    if (terms_.size() == 1) {
      const auto& [b, c] = *terms_.begin();
      r.terms_.emplace(negated(b), den_);
      r.den_ = c;
    } else {
      if (is_zero()) fail(ErrorKind::DivByZero, "inverse of zero");
      auto [g, n] = collapse();
      r.terms_.emplace(negated(g), den_);
      r.den_ = std::move(n);
    }
    r.normalize();
    return r;
  }

  RationalFunction operator/(const RationalFunction& o) const {
    check(o);
    if (o.terms_.empty()) fail(ErrorKind::DivByZero, "division by the zero rational function");
    return *this * o.inverse();
  }

  RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  RationalFunction pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction r = one(p_), base = *this;
    while (e) {
      if (e & 1) r *= base;
      e >>= 1;
      if (e) base = base.square();
    }
    return r;
  }

  RationalFunction square() const {
    if (p_ != 2) return *this * *this;
    // Frobenius: in characteristic 2 the square of a sum is the sum of squares.
    RationalFunction r(p_);
    for (const auto& [b, c] : terms_) {
      BracketMonomial b2;
      for (const auto& [k, e] : b) b2[k] = 2 * e;
      r.add_term(b2, c.square());
    }
    r.den_ = den_.square();
    r.normalize();
    return r;
  }

  /// Human-readable form, e.g. "[1,2]^-1 * [1,3] * [2,3]^-1"; sums are joined by " + ".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [b, c] : terms_) {
      std::string s;
      auto add = [&](const std::string& piece) { s += (s.empty() ? "" : " * ") + piece; };
      if (!c.is_one()) add(c.is_constant() ? c.to_string() : "(" + c.to_string() + ")");
      for (const auto& [k, e] : b) add(k.to_string() + (e == 1 ? "" : "^" + std::to_string(e)));
      out += (out.empty() ? "" : " + ") + (s.empty() ? std::string("1") : s);
    }
    if (!den_.is_one()) out = "(" + out + ") / (" + den_.to_string() + ")";
    return out;
  }

  /// Evaluation at a point; DenominatorVanished if a denominator is zero there.
  FiniteField::Elem evaluate(const FiniteField& f, const std::function<FiniteField::Elem(VarIndex)>& point) const {
    if (f.characteristic() != p_) fail(ErrorKind::ConfigError, "evaluation field has the wrong characteristic");
    std::map<BracketKey, FiniteField::Elem> dets;
    auto det_of = [&](const BracketKey& k) {
      auto it = dets.find(k);
      if (it != dets.end()) return it->second;
      FieldMatrix m(static_cast<std::size_t>(k.nrows), FieldVector(static_cast<std::size_t>(k.nrows)));
      for (int i = 0; i < k.nrows; ++i)
        for (int j = 0; j < k.nrows; ++j) m[i][j] = point({k.row_lo + i, k.cols[static_cast<std::size_t>(j)]});
      return dets[k] = field_det(f, m);
    };
    FiniteField::Elem sum = f.zero();
    for (const auto& [b, c] : terms_) {
      FiniteField::Elem num = sraniso::evaluate(c, f, point), den = f.one();
      for (const auto& [k, e] : b) {
        const auto v = f.pow(det_of(k), static_cast<std::uint64_t>(e > 0 ? e : -e));
        if (e > 0) num = f.mul(num, v);
        else den = f.mul(den, v);
      }
      if (den == 0) fail(ErrorKind::DenominatorVanished, "denominator vanishes at the sample point");
      sum = f.add(sum, f.mul(num, f.inv(den)));
    }
    const auto d = sraniso::evaluate(den_, f, point);
    if (d == 0) fail(ErrorKind::DenominatorVanished, "denominator vanishes at the sample point");
    return f.mul(sum, f.inv(d));
  }

  /// Applies `fn` to every bracket key and `poly_fn` to every polynomial part.
  /// Used for substitutions that map brackets to (signed) brackets; a key with nrows = 0 stands for 1.
  RationalFunction map_brackets(const std::function<std::pair<int, BracketKey>(const BracketKey&)>& fn,
                                const std::function<Polynomial(const Polynomial&)>& poly_fn) const {
    RationalFunction r(p_);
    r.den_ = poly_fn(den_);
    if (r.den_.is_zero()) fail(ErrorKind::DivByZero, "substitution kills the denominator");
    for (const auto& [b, c] : terms_) {
      Polynomial coeff = poly_fn(c);
      BracketMonomial nb;
      bool vanished = false;
      for (const auto& [k, e] : b) {
        auto [sign, nk] = fn(k);
        if (sign == 0) {
          if (e < 0) fail(ErrorKind::DivByZero, "substitution kills a denominator bracket");
          vanished = true;
          break;
        }
        if (sign < 0 && (e % 2)) coeff = -coeff;
        if (nk.nrows > 0) detail::bump(nb, nk, e);
      }
      if (!vanished) r.add_term(nb, coeff);
    }
    r.normalize();
    return r;
  }

 private:
  static BracketMonomial negated(const BracketMonomial& b) {
    BracketMonomial r;
    for (const auto& [k, e] : b) r[k] = -e;
    return r;
  }

  void check(const RationalFunction& o) const {
    if (p_ != o.p_) fail(ErrorKind::ConfigError, "mixing rational functions over different fields");
  }

  void add_term(const BracketMonomial& b, const Polynomial& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(b);
    if (it == terms_.end()) {
      terms_.emplace(b, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void normalize() {
    if (terms_.empty()) {
      den_ = Polynomial::constant(p_, 1);
      return;
    }
    if (den_.is_constant() && !den_.is_one()) {
      const auto inv = PrimeField{p_}.inv(den_.constant_value());
      for (auto& [b, c] : terms_) c = c.scaled(inv);
      den_ = Polynomial::constant(p_, 1);
    } else if (terms_.size() == 1 && terms_.begin()->second == den_) {
      terms_.begin()->second = den_ = Polynomial::constant(p_, 1);
    }
  }

  /// The common bracket factor g (elementwise minimum exponent) and the expanded sum of c_k B_k / g.
  std::pair<BracketMonomial, Polynomial> collapse() const {
    BracketMonomial g;
    bool first = true;
    for (const auto& [b, c] : terms_) {
      if (first) {
        g = b;
        first = false;
        continue;
      }
      BracketMonomial next;
      for (const auto& [k, e] : g) {
        const int m = std::min(e, detail::exponent_of(b, k));
        if (m) next[k] = m;
      }
      for (const auto& [k, e] : b)
        if (!g.count(k) && e < 0) next[k] = e;
      g = std::move(next);
    }
    Polynomial sum(p_);
    for (const auto& [b, c] : terms_) {
      std::vector<Polynomial> factors{c};
      BracketMonomial rest = b;
      for (const auto& [k, e] : g) detail::bump(rest, k, -e);
      for (const auto& [k, e] : rest)
        for (int i = 0; i < e; ++i) factors.push_back(minor_poly(p_, k));
      sum += Polynomial::product(p_, std::move(factors));
    }
    return {std::move(g), std::move(sum)};
  }

  bool gauge_applicable() const {
    if (!has_constant_coefficients()) return false;
    int rows = -1;
    for (const auto& [b, c] : terms_)
      for (const auto& [k, e] : b) {
        if (k.row_lo != 1) return false;
        if (rows < 0) rows = k.nrows;
        if (k.nrows != rows) return false;
      }
    return rows > 0;
  }

  /**
   * Zero test for sums of bracket monomials with constant coefficients.
   *
   * Every term is multihomogeneous in the columns and transforms by a power of
   * det(g) under M -> gM, so the sum vanishes iff each column-multidegree
   * component vanishes, and a component vanishes iff it does after
   * replacing some n+1 columns by the unit vectors.
   */
  bool gauge_zero_test() const {
    const int rows = terms_.begin()->first.begin()->first.nrows;
    std::map<std::map<int, int>, std::vector<const Terms::value_type*>> groups;
    for (const auto& t : terms_) {
      std::map<int, int> deg;
      for (const auto& [k, e] : t.first)
        for (int c : k.cols) deg[c] += e;
      std::erase_if(deg, [](const auto& kv) { return kv.second == 0; });
      groups[deg].push_back(&t);
    }
    for (const auto& [deg, group] : groups) {
      if (group.size() == 1) return false;
      std::map<int, long> freq;
      for (const auto* t : group)
        for (const auto& [k, e] : t->first)
          for (int c : k.cols) freq[c] += std::abs(e);
      std::vector<std::pair<long, int>> order;
      for (const auto& [c, f] : freq) order.emplace_back(-f, c);
      std::sort(order.begin(), order.end());
      std::vector<int> gauge;
      for (std::size_t i = 0; i < order.size() && static_cast<int>(gauge.size()) < rows; ++i) gauge.push_back(order[i].second);
      for (int c = 255; static_cast<int>(gauge.size()) < rows; --c)
        if (!freq.count(c)) gauge.push_back(c);
      std::sort(gauge.begin(), gauge.end());

      std::map<BracketKey, Polynomial> fixed;
      auto gauged = [&](const BracketKey& k) -> const Polynomial& {
        auto it = fixed.find(k);
        if (it != fixed.end()) return it->second;
        std::vector<int> pos_unit, pos_free, unit_rows, free_cols;
        for (std::size_t j = 0; j < k.cols.size(); ++j) {
          auto g = std::lower_bound(gauge.begin(), gauge.end(), k.cols[j]);
          if (g != gauge.end() && *g == k.cols[j]) {
            pos_unit.push_back(static_cast<int>(j));
            unit_rows.push_back(static_cast<int>(g - gauge.begin()) + 1);
          } else {
            pos_free.push_back(static_cast<int>(j));
            free_cols.push_back(k.cols[j]);
          }
        }
        std::vector<int> col_perm = pos_unit, row_perm = unit_rows, free_rows;
        col_perm.insert(col_perm.end(), pos_free.begin(), pos_free.end());
        for (int i = 1; i <= rows; ++i)
          if (std::find(unit_rows.begin(), unit_rows.end(), i) == unit_rows.end()) free_rows.push_back(i);
        row_perm.insert(row_perm.end(), free_rows.begin(), free_rows.end());
        Polynomial v = detail::general_minor(p_, free_rows, free_cols);
        if (permutation_sign(col_perm) * permutation_sign(row_perm) < 0) v = -v;
        return fixed.emplace(k, std::move(v)).first->second;
      };

      BracketMonomial g;
      for (const auto* t : group)
        for (const auto& [k, e] : t->first) g[k] = std::min(detail::exponent_of(g, k), e);
      Polynomial sum(p_);
      for (const auto* t : group) {
        std::vector<Polynomial> factors{t->second};
        BracketMonomial rest = t->first;
        for (const auto& [k, e] : g) detail::bump(rest, k, -e);
        for (const auto& [k, e] : rest)
          for (int i = 0; i < e; ++i) factors.push_back(gauged(k));
        sum += Polynomial::product(p_, std::move(factors));
      }
      if (!sum.is_zero()) return false;
    }
    return true;
  }

  std::uint32_t p_;
  Terms terms_;
  Polynomial den_;
};

/// Mathematical equality.
inline bool rf_equals(const RationalFunction& x, const RationalFunction& y) {
  if (x.terms() == y.terms() && x.residual_denominator() == y.residual_denominator()) return true;
  return (x - y).is_zero();
}

/// Shorthand for the bracket [cols] of an nrows-row generic matrix.
inline RationalFunction br(std::uint32_t p, int nrows, const std::vector<int>& cols) {
  return RationalFunction::bracket(p, nrows, cols);
}

}  // namespace sraniso
