#include <doctest.h>

#include "testkit.hpp"
#include "ultranorm/sections.hpp"

using namespace ultranorm;
using testkit::Rng;

namespace {

Vector<Rational> vec(std::initializer_list<long> xs) {
  Vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Section random_section(Rng& rng, std::size_t nv, unsigned deg) {
  Section s(nv, deg);
  for (const auto& e : monomial_basis(nv - 1, deg))
    if (rng.uniform(0, 2) > 0) s.set(e, rng.rational(6));
  return s;
}

std::size_t span_rank(const std::vector<Vector<Rational>>& vs, std::size_t dim) {
  return vs.empty() ? 0 : rank(Matrix<Rational>::from_rows(vs, dim));
}

}  // namespace

TEST_CASE("monomial_basis order") {
  using E = Exponent;
  CHECK(monomial_basis(1, 2) == std::vector<E>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(monomial_basis(2, 1) == std::vector<E>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(monomial_basis(1, 0) == std::vector<E>{{0, 0}});
  CHECK(section_dimension(2, 3) == 10);
}

TEST_CASE("restriction kernels") {
  auto f = ValuedField::padic(2);
  auto k1 = restriction_kernel(f, Subvariety::points({vec({0, 1})}), 1, 2);
  std::vector<Vector<Rational>> expect1{vec({1, 0, 0}), vec({0, 1, 0})};
  CHECK(k1.size() == 2);
  auto joined = k1;
  joined.insert(joined.end(), expect1.begin(), expect1.end());
  CHECK(span_rank(joined, 3) == 2);

  CHECK(restriction_kernel(f, Subvariety::points({vec({1, 1}), vec({1, -1})}), 1, 1).empty());

  auto k3 = restriction_kernel(f, Subvariety::linear({vec({0, 0, 1})}), 2, 2);
  // monomials of degree 2 in (x, y, z): x2 xy xz y2 yz z2
  std::vector<Vector<Rational>> expect3{vec({0, 0, 1, 0, 0, 0}), vec({0, 0, 0, 0, 1, 0}), vec({0, 0, 0, 0, 0, 1})};
  CHECK(k3.size() == 3);
  joined = k3;
  joined.insert(joined.end(), expect3.begin(), expect3.end());
  CHECK(span_rank(joined, 6) == 3);
}

TEST_CASE("restriction kernel dimension count and vanishing") {
  Rng rng(8);
  auto f = ValuedField::padic(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
    unsigned n = static_cast<unsigned>(rng.uniform(1, 4));
    std::vector<Vector<Rational>> pts;
    while (pts.size() < static_cast<std::size_t>(rng.uniform(1, 4))) {
      auto p = rng.vector(f, m + 1);
      if (is_zero_vector<Rational>(p)) continue;
      bool dup = false;
      for (const auto& q : pts) dup = dup || normalize_point(f, q) == normalize_point(f, p);
      if (!dup) pts.push_back(p);
    }
    auto y = Subvariety::points(pts);
    auto ker = restriction_kernel(f, y, m, n);
    std::vector<Vector<Rational>> normalized;
    for (const auto& p : pts) normalized.push_back(normalize_point(f, p));
    auto ev = evaluation_matrix(normalized, m, n);
    REQUIRE(ker.size() + rank(ev) == section_dimension(m, n));
    auto mons = monomial_basis(m, n);
    for (const auto& k : ker) {
      auto s = Section::from_vector(m + 1, n, mons, k);
      for (const auto& p : pts) REQUIRE(s.evaluate(normalize_point(f, p)) == 0);
    }
  }
}

TEST_CASE("evaluation and products") {
  auto x = Section::variable(2, 0), y = Section::variable(2, 1);
  auto f2 = ValuedField::padic(2);
  CHECK(evaluate_normalized(f2, x * y, vec({1, 2})) == 2);
  auto sq = x * x + y * y;
  CHECK(evaluate_normalized(ValuedField::trivial(), sq, vec({1, 1})) == 2);
  auto binom = power(x + y, 2);
  Section expect(2, 2);
  expect.set({2, 0}, 1);
  expect.set({1, 1}, 2);
  expect.set({0, 2}, 1);
  CHECK(binom == expect);
  CHECK((x * Section(2, 1)).is_zero());

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto a = random_section(rng, 3, 1), b = random_section(rng, 3, 2), c = random_section(rng, 3, 1);
    REQUIRE(a * b == b * a);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE((a * b).degree() == 3);
  }
}

TEST_CASE("subvariety validation") {
  CHECK_THROWS_AS(Subvariety::points({vec({0, 0})}), PreconditionError);
  CHECK_THROWS_AS(Subvariety::linear({vec({1, 0}), vec({2, 0})}), PreconditionError);
  auto dup = Subvariety::points({vec({1, 2}), vec({2, 4})});
  CHECK_THROWS_AS(dup.validate(ValuedField::padic(2)), PreconditionError);
}
