#include "ultranorm/valued_field.hpp"

#include <algorithm>
#include <map>

#include "ultranorm/errors.hpp"

namespace ultranorm {

ValuedField ValuedField::padic(unsigned long p) {
  if (!is_prime(p)) fail("invalid_field", "p-adic field needs a prime, got " + std::to_string(p));
  return ValuedField(FieldKind::padic, p);
}

ValuedField ValuedField::laurent(unsigned long base_prime) {
  if (!is_prime(base_prime))
    fail("invalid_field", "Laurent base must be prime, got " + std::to_string(base_prime));
  return ValuedField(FieldKind::laurent, base_prime);
}

Magnitude ValuedField::uniformizer_magnitude() const {
  if (kind_ == FieldKind::trivial) fail("unsupported_field", "trivial valuation has no uniformizer");
  return Magnitude::from_parts(Rational(1), 1, prime_);
}

Magnitude ValuedField::abs(const Rational& x) const {
  if (is_zero(x)) return Magnitude::zero(prime_);
  switch (kind_) {
    case FieldKind::padic:
      return Magnitude::from_parts(Rational(1), valuation(x, prime_), prime_);
    case FieldKind::trivial:
    case FieldKind::laurent:
      return Magnitude::one(prime_);
  }
  return Magnitude::one(prime_);
}

Magnitude ValuedField::abs(const RatFunc& x) const {
  if (x.is_zero()) return Magnitude::zero(prime_);
  if (kind_ == FieldKind::laurent) return Magnitude::from_parts(Rational(1), x.order(), prime_);
  if (!x.is_constant())
    fail("unsupported_field", "non-constant rational function over " + describe());
  return abs(x.constant_value());
}

std::string ValuedField::describe() const {
  switch (kind_) {
    case FieldKind::padic:
      return "Q_" + std::to_string(prime_);
    case FieldKind::trivial:
      return "Q (trivial)";
    case FieldKind::laurent:
      return "Q((T)), |T|=1/" + std::to_string(prime_);
  }
  return "?";
}

namespace {

Rational strip_prime(const Rational& v, unsigned long p) {
  Integer num = v.get_num(), den = v.get_den(), prime(p);
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t());
  return Rational(num, den);
}

}  // namespace

bool laurent_base_admissible(std::span<const Magnitude> values, unsigned long base_prime) {
  // v_i / v_j is a pure power of P iff both share the same P-free part.
  std::map<Rational, Rational> seen;  // P-free part -> a representative value
  for (const auto& m : values) {
    if (m.is_zero()) continue;
    Rational unit = strip_prime(m.value(), base_prime);
    auto [it, inserted] = seen.emplace(unit, m.value());
    if (!inserted && it->second != m.value()) return false;
  }
  return true;
}

unsigned long choose_laurent_base(std::span<const Magnitude> values) {
  unsigned long p = 2;
  while (!laurent_base_admissible(values, p)) p = next_prime(p);
  return p;
}

}  // namespace ultranorm
