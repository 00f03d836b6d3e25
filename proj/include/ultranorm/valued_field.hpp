#pragma once

#include <span>
#include <string>

#include "ultranorm/magnitude.hpp"
#include "ultranorm/ratfunc.hpp"

namespace ultranorm {

enum class FieldKind { padic, trivial, laurent };

/// One of the supported valued fields:
///   padic(p)     Q inside Q_p, |x| = p^(-ord_p x)
///   trivial()    Q with |x| = 1 for x != 0
///   laurent(P)   Q(T) inside Q((T)), |f| = P^(-ord_T f)
class ValuedField {
 public:
  static ValuedField padic(unsigned long p);
  static ValuedField trivial() { return ValuedField(FieldKind::trivial, 0); }
  static ValuedField laurent(unsigned long base_prime);

  FieldKind kind() const { return kind_; }
  /// p for padic, P for laurent, 0 for trivial.
  unsigned long prime() const { return prime_; }
  bool is_discrete() const { return kind_ != FieldKind::trivial; }
  /// 1/p or 1/P; throws for the trivial valuation.
  Magnitude uniformizer_magnitude() const;

  Magnitude abs(const Rational& x) const;
  Magnitude abs(const RatFunc& x) const;
  /// Wraps a positive rational (a norm weight, say) into this field's magnitude profile.
  Magnitude magnitude(const Rational& value) const { return Magnitude::from_value(value, prime_); }

  std::string describe() const;

  friend bool operator==(const ValuedField&, const ValuedField&) = default;

 private:
  ValuedField(FieldKind kind, unsigned long prime) : kind_(kind), prime_(prime) {}

  FieldKind kind_;
  unsigned long prime_;
};

/// Smallest prime P such that no ratio r != 1 of two of the given positive
/// values is a pure power of P (so |T| = 1/P never equals a ratio of norms).
unsigned long choose_laurent_base(std::span<const Magnitude> values);

/// True when no ratio r != 1 of two nonzero values is +-a power of P.
bool laurent_base_admissible(std::span<const Magnitude> values, unsigned long base_prime);

}  // namespace ultranorm
