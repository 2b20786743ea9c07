#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sraniso/error.hpp"
#include "sraniso/finite_field.hpp"

namespace sraniso {

/// The variable a_{row,col}. Row 0 is reserved for the ring variables x_col.
struct VarIndex {
  int row = 1;
  int col = 1;

  auto operator<=>(const VarIndex&) const = default;
};

inline std::uint16_t var_id(VarIndex v) {
  if (v.row < 0 || v.row > 255 || v.col < 0 || v.col > 255) fail(ErrorKind::BadShape, "variable index out of range");
  return static_cast<std::uint16_t>((v.row << 8) | v.col);
}
inline VarIndex var_from_id(std::uint16_t id) { return {id >> 8, id & 0xFF}; }

inline std::string var_name(VarIndex v) {
  if (v.row == 0) return "x[" + std::to_string(v.col) + "]";
  return "a[" + std::to_string(v.row) + "," + std::to_string(v.col) + "]";
}

/**
 * \brief Sparse monomial in the a-variables.
 *
 * Stored as words (var_id << 16 | exponent), ascending by variable id, which
 * is also descending variable priority under the default order.
 */
class Monomial {
 public:
  Monomial() = default;

  static Monomial var(VarIndex v, int exp = 1) {
    Monomial m;
    if (exp > 0) m.e_.push_back(pack(var_id(v), exp));
    return m;
  }

  static Monomial from_words(std::vector<std::uint32_t> words) {
    Monomial m;
    m.e_ = std::move(words);
    return m;
  }

  static std::uint32_t pack(std::uint16_t id, int exp) {
    if (exp <= 0 || exp > 0xFFFF) fail(ErrorKind::BadShape, "monomial exponent out of range");
    return (std::uint32_t{id} << 16) | static_cast<std::uint32_t>(exp);
  }
  static std::uint16_t id_of(std::uint32_t w) { return static_cast<std::uint16_t>(w >> 16); }
  static int exp_of(std::uint32_t w) { return static_cast<int>(w & 0xFFFF); }

  const std::vector<std::uint32_t>& words() const { return e_; }
  bool is_one() const { return e_.empty(); }

  int degree() const {
    int d = 0;
    for (auto w : e_) d += exp_of(w);
    return d;
  }

  int exponent(VarIndex v) const {
    const std::uint16_t id = var_id(v);
    for (auto w : e_)
      if (id_of(w) == id) return exp_of(w);
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
      if (j == o.e_.size() || (i < e_.size() && id_of(e_[i]) < id_of(o.e_[j]))) {
        r.e_.push_back(e_[i++]);
      } else if (i == e_.size() || id_of(o.e_[j]) < id_of(e_[i])) {
        r.e_.push_back(o.e_[j++]);
      } else {
        r.e_.push_back(pack(id_of(e_[i]), exp_of(e_[i]) + exp_of(o.e_[j])));
        ++i;
        ++j;
      }
    }
    return r;
  }

  bool divides(const Monomial& o) const {
    std::size_t j = 0;
    for (auto w : e_) {
      while (j < o.e_.size() && id_of(o.e_[j]) < id_of(w)) ++j;
      if (j == o.e_.size() || id_of(o.e_[j]) != id_of(w) || exp_of(o.e_[j]) < exp_of(w)) return false;
    }
    return true;
  }

  /// o / *this, assuming divides(o).
  Monomial quotient_of(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0;
    for (auto w : o.e_) {
      if (i < e_.size() && id_of(e_[i]) == id_of(w)) {
        const int e = exp_of(w) - exp_of(e_[i++]);
        if (e > 0) r.e_.push_back(pack(id_of(w), e));
      } else {
        r.e_.push_back(w);
      }
    }
    return r;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  std::size_t hash() const {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (auto w : e_) h = splitmix64(h ^ w);
    return static_cast<std::size_t>(h);
  }

  std::string to_string() const {
    std::string s;
    for (auto w : e_) {
      if (!s.empty()) s += "*";
      s += var_name(var_from_id(id_of(w)));
      if (exp_of(w) > 1) s += "^" + std::to_string(exp_of(w));
    }
    return s;
  }

 private:
  std::vector<std::uint32_t> e_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Default lexicographic comparison: a_{1,1} > a_{1,2} > ... > a_{2,1} > ...
/// Returns -1, 0 or 1.
inline int lex_compare(const Monomial& a, const Monomial& b) {
  const auto& x = a.words();
  const auto& y = b.words();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == y[i]) continue;
    const auto ix = Monomial::id_of(x[i]), iy = Monomial::id_of(y[i]);
    if (ix != iy) return ix < iy ? 1 : -1;
    return Monomial::exp_of(x[i]) > Monomial::exp_of(y[i]) ? 1 : -1;
  }
  if (x.size() == y.size()) return 0;
  return x.size() > y.size() ? 1 : -1;
}

/**
 * \brief Lexicographic order with an explicit variable priority.
 *
 * An empty priority list means the default row-major order.
 */
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<VarIndex> priority) {
    for (std::size_t i = 0; i < priority.size(); ++i) rank_[var_id(priority[i])] = static_cast<int>(i);
  }

  bool is_default() const { return rank_.empty(); }

  int compare(const Monomial& a, const Monomial& b) const {
    if (rank_.empty()) return lex_compare(a, b);
    auto ranked = [&](const Monomial& m) {
      std::vector<std::pair<int, int>> v;
      for (auto w : m.words()) {
        auto it = rank_.find(Monomial::id_of(w));
        if (it == rank_.end()) fail(ErrorKind::BadShape, "variable missing from monomial order");
        v.emplace_back(it->second, Monomial::exp_of(w));
      }
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto x = ranked(a), y = ranked(b);
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == y[i]) continue;
      if (x[i].first != y[i].first) return x[i].first < y[i].first ? 1 : -1;
      return x[i].second > y[i].second ? 1 : -1;
    }
    if (x.size() == y.size()) return 0;
    return x.size() > y.size() ? 1 : -1;
  }

 private:
  std::map<std::uint16_t, int> rank_;
};

struct Term {
  Monomial mono;
  std::uint32_t coeff = 0;
};

class Polynomial;

namespace detail {

// Open-addressing accumulator for packed 128-bit monomial keys.
class PackedAccumulator {
 public:
  using Key = unsigned __int128;

  PackedAccumulator(std::uint32_t p, std::size_t expected) : p_(p) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    keys_.resize(cap);
    vals_.assign(cap, 0);
    used_.assign(cap, 0);
  }

  void add(Key k, std::uint32_t c) {
    if ((count_ + 1) * 2 > keys_.size()) grow();
    std::size_t i = slot(k);
    if (!used_[i]) {
      used_[i] = 1;
      keys_[i] = k;
      vals_[i] = c;
      ++count_;
    } else {
      vals_[i] = static_cast<std::uint32_t>((std::uint64_t{vals_[i]} + c) % p_);
    }
  }

  std::vector<std::pair<Key, std::uint32_t>> drain_sorted_desc() {
    std::vector<std::pair<Key, std::uint32_t>> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (used_[i] && vals_[i] != 0) out.emplace_back(keys_[i], vals_[i]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
  }

 private:
  static std::uint64_t mix(Key k) {
    return splitmix64(static_cast<std::uint64_t>(k) ^ splitmix64(static_cast<std::uint64_t>(k >> 64)));
  }
  std::size_t slot(Key k) const {
    const std::size_t mask = keys_.size() - 1;
    std::size_t i = mix(k) & mask;
    while (used_[i] && keys_[i] != k) i = (i + 1) & mask;
    return i;
  }
  void grow() {
    std::vector<Key> ok = std::move(keys_);
    std::vector<std::uint32_t> ov = std::move(vals_);
    std::vector<std::uint8_t> ou = std::move(used_);
    keys_.assign(ok.size() * 2, 0);
    vals_.assign(ok.size() * 2, 0);
    used_.assign(ok.size() * 2, 0);
    for (std::size_t i = 0; i < ok.size(); ++i)
      if (ou[i]) {
        std::size_t j = slot(ok[i]);
        used_[j] = 1;
        keys_[j] = ok[i];
        vals_[j] = ov[i];
      }
  }

  std::uint32_t p_;
  std::size_t count_ = 0;
  std::vector<Key> keys_;
  std::vector<std::uint32_t> vals_;
  std::vector<std::uint8_t> used_;
};

// Bit layout packing a monomial into 128 bits, highest-priority variable in the top bits.
struct PackLayout {
  std::vector<std::uint16_t> ids;
  std::vector<int> shift;
  std::vector<int> bits;
  std::unordered_map<std::uint16_t, int> index;

  // `bound` maps each variable to the largest exponent that must be representable.
  static std::optional<PackLayout> make(const std::map<std::uint16_t, int>& bound) {
    PackLayout l;
    int total = 0;
    for (const auto& [id, b] : bound) total += std::bit_width(static_cast<unsigned>(b));
    if (total > 128) return std::nullopt;
    int pos = 128;
    for (const auto& [id, b] : bound) {
      const int w = std::bit_width(static_cast<unsigned>(b));
      pos -= w;
      l.index[id] = static_cast<int>(l.ids.size());
      l.ids.push_back(id);
      l.shift.push_back(pos);
      l.bits.push_back(w);
    }
    return l;
  }

  unsigned __int128 pack(const Monomial& m) const {
    unsigned __int128 k = 0;
    for (auto w : m.words()) {
      const int i = index.at(Monomial::id_of(w));
      k |= static_cast<unsigned __int128>(Monomial::exp_of(w)) << shift[i];
    }
    return k;
  }

  Monomial unpack(unsigned __int128 k) const {
    std::vector<std::uint32_t> words;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto mask = (static_cast<unsigned __int128>(1) << bits[i]) - 1;
      const int e = static_cast<int>((k >> shift[i]) & mask);
      if (e) words.push_back(Monomial::pack(ids[i], e));
    }
    return Monomial::from_words(std::move(words));
  }

  int exponent(unsigned __int128 k, int i) const {
    const auto mask = (static_cast<unsigned __int128>(1) << bits[i]) - 1;
    return static_cast<int>((k >> shift[i]) & mask);
  }
};

}  // namespace detail

/**
 * \brief Sparse multivariate polynomial over GF(p).
 *
 * Terms are kept sorted by descending default lex order with nonzero
 * coefficients in 0..p-1, so equal polynomials have equal representations.
 */
class Polynomial {
 public:
  explicit Polynomial(std::uint32_t p = 2) : p_(p) {}

  static Polynomial constant(std::uint32_t p, long long c) {
    Polynomial f(p);
    const auto v = PrimeField{p}.from_int(c);
    if (v) f.terms_.push_back({Monomial{}, v});
    return f;
  }
  static Polynomial variable(std::uint32_t p, VarIndex v) {
    Polynomial f(p);
    f.terms_.push_back({Monomial::var(v), 1});
    return f;
  }
  static Polynomial monomial(std::uint32_t p, Monomial m, long long c = 1) {
    Polynomial f(p);
    const auto v = PrimeField{p}.from_int(c);
    if (v) f.terms_.push_back({std::move(m), v});
    return f;
  }
  /// Builds a polynomial from arbitrary terms, combining duplicates.
  static Polynomial from_terms(std::uint32_t p, std::vector<Term> terms) {
    Polynomial f(p);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return lex_compare(a.mono, b.mono) > 0; });
    PrimeField fp{p};
    for (auto& t : terms) {
      const std::uint32_t c = t.coeff % p;
      if (!f.terms_.empty() && f.terms_.back().mono == t.mono) {
        f.terms_.back().coeff = fp.add(f.terms_.back().coeff, c);
        if (f.terms_.back().coeff == 0) f.terms_.pop_back();
      } else if (c) {
        f.terms_.push_back({std::move(t.mono), c});
      }
    }
    return f;
  }
  /// Terms must already be sorted descending and combined.
  static Polynomial from_sorted_terms(std::uint32_t p, std::vector<Term> terms) {
    Polynomial f(p);
    f.terms_ = std::move(terms);
    return f;
  }

  std::uint32_t characteristic() const { return p_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
  std::uint32_t constant_value() const { return is_constant() && !terms_.empty() ? terms_[0].coeff : 0; }

  int total_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return terms_.empty() ? -1 : d;
  }

  std::set<VarIndex> variables() const {
    std::set<VarIndex> vs;
    for (const auto& t : terms_)
      for (auto w : t.mono.words()) vs.insert(var_from_id(Monomial::id_of(w)));
    return vs;
  }

  bool operator==(const Polynomial& o) const {
    if (p_ != o.p_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    Polynomial r = *this;
    PrimeField fp{p_};
    for (auto& t : r.terms_) t.coeff = fp.neg(t.coeff);
    return r;
  }

  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  Polynomial scaled(long long c) const {
    PrimeField fp{p_};
    const auto v = fp.from_int(c);
    if (v == 0) return Polynomial(p_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = fp.mul(t.coeff, v);
    return r;
  }

  Polynomial times_monomial(const Monomial& m, std::uint32_t c) const {
    Polynomial r(p_);
    if (c % p_ == 0) return r;
    PrimeField fp{p_};
    r.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves the order of terms.
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, fp.mul(t.coeff, c)});
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_same_field(o);
    if (is_zero() || o.is_zero()) return Polynomial(p_);
    if (is_constant()) return o.scaled(terms_[0].coeff);
    if (o.is_constant()) return scaled(o.terms_[0].coeff);
    const Polynomial& big = size() >= o.size() ? *this : o;
    const Polynomial& small = size() >= o.size() ? o : *this;
    if (small.size() == 1) return big.times_monomial(small.terms_[0].mono, small.terms_[0].coeff);
    std::map<std::uint16_t, int> bound = max_exponents();
    for (const auto& [id, e] : o.max_exponents()) bound[id] += e;
    if (auto layout = detail::PackLayout::make(bound)) return packed_product(*layout, {this, &o});
    return generic_product(o);
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Square; in characteristic 2 this is the termwise Frobenius map.
  Polynomial square() const {
    if (p_ != 2) return *this * *this;
    Polynomial r(p_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * t.mono, 1});
    return r;
  }

  Polynomial pow(int e) const {
    if (e < 0) fail(ErrorKind::BadShape, "negative power of a polynomial");
    Polynomial r = constant(p_, 1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b = b.square();
    }
    return r;
  }

  /// Largest exponent of every variable that occurs.
  std::map<std::uint16_t, int> max_exponents() const {
    std::map<std::uint16_t, int> m;
    for (const auto& t : terms_)
      for (auto w : t.mono.words()) {
        int& e = m[Monomial::id_of(w)];
        e = std::max(e, Monomial::exp_of(w));
      }
    return m;
  }

  std::string to_string(const MonomialOrder& ord = MonomialOrder{}) const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    if (!ord.is_default())
      std::stable_sort(ts.begin(), ts.end(), [&](const Term* a, const Term* b) { return ord.compare(a->mono, b->mono) > 0; });
    std::string s;
    for (const Term* t : ts) {
      if (!s.empty()) s += " + ";
      s += std::to_string(t->coeff);
      if (!t->mono.is_one()) s += "*" + t->mono.to_string();
    }
    return s;
  }

  /// Product of many factors, packing the whole chain when the exponents fit.
  static Polynomial product(std::uint32_t p, std::vector<Polynomial> factors) {
    Polynomial acc = constant(p, 1);
    if (factors.empty()) return acc;
    for (const auto& f : factors)
      if (f.is_zero()) return Polynomial(p);
    std::sort(factors.begin(), factors.end(), [](const Polynomial& a, const Polynomial& b) { return a.size() < b.size(); });
    std::map<std::uint16_t, int> bound;
    for (const auto& f : factors)
      for (const auto& [id, e] : f.max_exponents()) bound[id] += e;
    if (auto layout = detail::PackLayout::make(bound)) {
      std::vector<const Polynomial*> ptrs;
      for (const auto& f : factors) ptrs.push_back(&f);
      return packed_product(*layout, ptrs);
    }
    for (const auto& f : factors) acc *= f;
    return acc;
  }

  /// Product of the factors followed by differentiation in each of `vars` once.
  /// Monomials that cannot survive the differentiation are dropped early.
  static Polynomial differentiated_product(std::uint32_t p, std::vector<Polynomial> factors, const std::vector<VarIndex>& vars);

 private:
  friend Polynomial differentiate(const Polynomial&, const std::vector<VarIndex>&);

  void check_same_field(const Polynomial& o) const {
    if (p_ != o.p_) fail(ErrorKind::ConfigError, "mixing polynomials over different fields");
  }

  Polynomial combine(const Polynomial& o, bool subtract) const {
    check_same_field(o);
    PrimeField fp{p_};
    Polynomial r(p_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i == terms_.size()) c = -1;
      else if (j == o.terms_.size()) c = 1;
      else c = lex_compare(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        Term t = o.terms_[j++];
        if (subtract) t.coeff = fp.neg(t.coeff);
        r.terms_.push_back(std::move(t));
      } else {
        const std::uint32_t v = subtract ? fp.sub(terms_[i].coeff, o.terms_[j].coeff) : fp.add(terms_[i].coeff, o.terms_[j].coeff);
        if (v) r.terms_.push_back({terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  static Polynomial packed_product(const detail::PackLayout& layout, const std::vector<const Polynomial*>& factors,
                                   const std::vector<VarIndex>* diff_vars = nullptr) {
    const std::uint32_t p = factors.front()->p_;
    using Key = unsigned __int128;
    std::vector<std::pair<Key, std::uint32_t>> acc;
    for (const auto& t : factors.front()->terms_) acc.emplace_back(layout.pack(t.mono), t.coeff);
    for (std::size_t f = 1; f < factors.size(); ++f) {
      std::vector<std::pair<Key, std::uint32_t>> fac;
      for (const auto& t : factors[f]->terms_) fac.emplace_back(layout.pack(t.mono), t.coeff);
      detail::PackedAccumulator hash(p, std::max(acc.size(), fac.size()) * 4);
      for (const auto& [ka, ca] : acc)
        for (const auto& [kb, cb] : fac) hash.add(ka + kb, static_cast<std::uint32_t>(std::uint64_t{ca} * cb % p));
      acc = hash.drain_sorted_desc();
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    if (!diff_vars) {
      for (const auto& [k, c] : acc) out.push_back({layout.unpack(k), c});
      return from_sorted_terms(p, std::move(out));
    }
    std::vector<int> slots;
    for (const auto& v : *diff_vars) {
      auto it = layout.index.find(var_id(v));
      if (it == layout.index.end()) return Polynomial(p);
      slots.push_back(it->second);
    }
    std::vector<Term> terms;
    for (const auto& [k, c] : acc) {
      std::uint64_t coeff = c;
      Key key = k;
      for (int s : slots) {
        const int e = layout.exponent(key, s);
        coeff = coeff * static_cast<std::uint64_t>(e % p) % p;
        if (coeff == 0) break;
        key -= static_cast<Key>(1) << layout.shift[s];
      }
      if (coeff) terms.push_back({layout.unpack(key), static_cast<std::uint32_t>(coeff)});
    }
    return from_terms(p, std::move(terms));
  }

  Polynomial generic_product(const Polynomial& o) const {
    PrimeField fp{p_};
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> acc;
    acc.reserve(size() * o.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        auto& c = acc[a.mono * b.mono];
        c = fp.add(c, fp.mul(a.coeff, b.coeff));
      }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c) ts.push_back({m, c});
    return from_terms(p_, std::move(ts));
  }

  std::uint32_t p_;
  std::vector<Term> terms_;
};

/// Iterated partial derivative with respect to distinct variables, in one pass.
inline Polynomial differentiate(const Polynomial& f, const std::vector<VarIndex>& vars) {
  const std::uint32_t p = f.characteristic();
  std::vector<std::uint16_t> ids;
  for (const auto& v : vars) ids.push_back(var_id(v));
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) fail(ErrorKind::BadShape, "repeated differentiation variable");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    std::uint64_t c = t.coeff;
    std::vector<std::uint32_t> words;
    std::size_t k = 0;
    for (auto w : t.mono.words()) {
      const auto id = Monomial::id_of(w);
      while (k < ids.size() && ids[k] < id) {
        c = 0;  // a differentiation variable is absent from the monomial
        ++k;
      }
      if (c == 0) break;
      int e = Monomial::exp_of(w);
      if (k < ids.size() && ids[k] == id) {
        c = c * static_cast<std::uint64_t>(e % p) % p;
        --e;
        ++k;
      }
      if (e) words.push_back(Monomial::pack(id, e));
    }
    if (k < ids.size()) c = 0;
    if (c) out.push_back({Monomial::from_words(std::move(words)), static_cast<std::uint32_t>(c)});
  }
  return Polynomial::from_terms(p, std::move(out));
}

inline Polynomial partial_derivative(const Polynomial& f, VarIndex v) { return differentiate(f, {v}); }

inline Polynomial Polynomial::differentiated_product(std::uint32_t p, std::vector<Polynomial> factors,
                                                     const std::vector<VarIndex>& vars) {
  for (const auto& f : factors)
    if (f.is_zero()) return Polynomial(p);
  if (factors.empty()) return differentiate(constant(p, 1), vars);
  std::sort(factors.begin(), factors.end(), [](const Polynomial& a, const Polynomial& b) { return a.size() < b.size(); });
  std::map<std::uint16_t, int> bound;
  for (const auto& f : factors)
    for (const auto& [id, e] : f.max_exponents()) bound[id] += e;
  if (auto layout = detail::PackLayout::make(bound)) {
    std::vector<const Polynomial*> ptrs;
    for (const auto& f : factors) ptrs.push_back(&f);
    return packed_product(*layout, ptrs, &vars);
  }
  return differentiate(product(p, std::move(factors)), vars);
}

inline Monomial initial_monomial(const Polynomial& f, const MonomialOrder& ord = MonomialOrder{}) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "initial monomial of zero");
  if (ord.is_default()) return f.terms().front().mono;
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms())
    if (ord.compare(t.mono, best->mono) > 0) best = &t;
  return best->mono;
}

/// Exact quotient f / g, or nothing when g does not divide f.
inline std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) fail(ErrorKind::DivByZero, "division by the zero polynomial");
  const std::uint32_t p = f.characteristic();
  PrimeField fp{p};
  if (g.is_constant()) return f.scaled(fp.inv(g.constant_value()));
  const Term& lead = g.terms().front();
  const std::uint32_t lead_inv = fp.inv(lead.coeff);
  Polynomial r = f;
  std::vector<Term> q;
  while (!r.is_zero()) {
    const Term& t = r.terms().front();
    if (!lead.mono.divides(t.mono)) return std::nullopt;
    Term qt{lead.mono.quotient_of(t.mono), fp.mul(t.coeff, lead_inv)};
    r -= g.times_monomial(qt.mono, qt.coeff);
    q.push_back(std::move(qt));
  }
  return Polynomial::from_sorted_terms(p, std::move(q));
}

/// Replace the listed variables by constants.
inline Polynomial specialize(const Polynomial& f, const std::map<VarIndex, long long>& values) {
  const std::uint32_t p = f.characteristic();
  PrimeField fp{p};
  std::map<std::uint16_t, std::uint32_t> vals;
  for (const auto& [v, c] : values) vals[var_id(v)] = fp.from_int(c);
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    std::uint32_t c = t.coeff;
    std::vector<std::uint32_t> words;
    for (auto w : t.mono.words()) {
      auto it = vals.find(Monomial::id_of(w));
      if (it == vals.end()) {
        words.push_back(w);
        continue;
      }
      for (int e = 0; e < Monomial::exp_of(w); ++e) c = fp.mul(c, it->second);
    }
    if (c) out.push_back({Monomial::from_words(std::move(words)), c});
  }
  return Polynomial::from_terms(p, std::move(out));
}

/// Evaluation at a point given by a callback VarIndex -> field element.
inline FiniteField::Elem evaluate(const Polynomial& f, const FiniteField& field,
                                  const std::function<FiniteField::Elem(VarIndex)>& point) {
  std::unordered_map<std::uint16_t, FiniteField::Elem> cache;
  FiniteField::Elem sum = field.zero();
  for (const auto& t : f.terms()) {
    FiniteField::Elem v = field.scalar(t.coeff);
    for (auto w : t.mono.words()) {
      const auto id = Monomial::id_of(w);
      auto it = cache.find(id);
      if (it == cache.end()) it = cache.emplace(id, point(var_from_id(id))).first;
      v = field.mul(v, field.pow(it->second, static_cast<std::uint64_t>(Monomial::exp_of(w))));
    }
    sum = field.add(sum, v);
  }
  return sum;
}

}  // namespace sraniso
