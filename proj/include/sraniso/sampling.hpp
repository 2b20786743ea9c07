#pragma once

#include <cstdint>

#include "sraniso/finite_field.hpp"
#include "sraniso/polynomial.hpp"
#include "sraniso/rational.hpp"

namespace sraniso {

/// Deterministic pseudo-random assignment a_{i,j} -> GF(p^w) derived from a seed.
class RandomPoint {
 public:
  RandomPoint(const FiniteField& f, std::uint64_t seed) : f_(&f), seed_(seed) {}

  FiniteField::Elem operator()(VarIndex v) const {
    return f_->from_bits(splitmix64(splitmix64(seed_) ^ (std::uint64_t{var_id(v)} * 0x9E3779B97F4A7C15ULL)));
  }

  const FiniteField& field() const { return *f_; }
  std::uint64_t seed() const { return seed_; }

 private:
  const FiniteField* f_;
  std::uint64_t seed_;
};

inline FiniteField::Elem random_evaluate(const Polynomial& f, const FiniteField& field, std::uint64_t seed) {
  if (field.characteristic() != f.characteristic()) fail(ErrorKind::ConfigError, "field characteristic mismatch");
  RandomPoint pt(field, seed);
  return evaluate(f, field, pt);
}

inline FiniteField::Elem random_evaluate(const RationalFunction& f, const FiniteField& field, std::uint64_t seed) {
  RandomPoint pt(field, seed);
  return f.evaluate(field, pt);
}

}  // namespace sraniso
