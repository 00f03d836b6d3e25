#include "ultranorm/normed_space.hpp"

namespace ultranorm {

LaurentNormedSpace scalar_extension(const NormedSpace& space, unsigned long base_prime) {
  if (space.field().kind() != FieldKind::trivial)
    fail("unsupported_field", "scalar extension expects a trivially valued space");
  auto values = norm_value_set(space);
  if (!laurent_base_admissible(values, base_prime))
    fail("laurent_base_violation",
         "a ratio of norm values is a power of " + std::to_string(base_prime));
  std::vector<Magnitude> weights;
  for (const auto& w : space.weights()) weights.push_back(w.with_base(base_prime));
  return LaurentNormedSpace::with_inverse(ValuedField::laurent(base_prime), to_ratfunc(space.basis()),
                                          to_ratfunc(space.inverse_basis()), std::move(weights));
}

}  // namespace ultranorm
