#include <doctest.h>

#include "testkit.hpp"
#include "ultranorm/normed_space.hpp"

using namespace ultranorm;
using testkit::Rng;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Vector<Rational> vec(std::initializer_list<long> xs) {
  Vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
std::vector<Magnitude> weights(const ValuedField& f, std::initializer_list<const char*> xs) {
  std::vector<Magnitude> out;
  for (auto x : xs) out.push_back(f.magnitude(parse_rational(x)));
  return out;
}
NormedSpace skew_space(const ValuedField& f) {
  return NormedSpace(f, Matrix<Rational>::from_columns({vec({1, 0}), vec({1, 2})}, 2), weights(f, {"1", "1"}));
}

}  // namespace

TEST_CASE("norm examples") {
  auto f = ValuedField::padic(2);
  auto std_space = NormedSpace::standard(f, weights(f, {"1", "1"}));
  CHECK(std_space.norm(vec({6, 1})).value() == 1);
  CHECK(std_space.norm(vec({0, 0})).is_zero());
  CHECK(skew_space(f).norm(vec({0, 1})).value() == 2);
  CHECK_THROWS_AS(std_space.norm(vec({1, 2, 3})), PreconditionError);
}

TEST_CASE("orthogonalize_flag examples") {
  auto f = ValuedField::padic(2);
  auto space = skew_space(f);
  std::vector<Vector<Rational>> flag{vec({1, 0}), vec({0, 1})};
  auto out = orthogonalize_flag(space, std::span<const Vector<Rational>>(flag));
  REQUIRE(out.vectors.size() == 2);
  CHECK(out.vectors[0] == vec({1, 0}));
  CHECK(out.weights[0].value() == 1);
  CHECK(out.vectors[1] == vec({0, 1}));
  CHECK(out.weights[1].value() == 2);

  auto t = ValuedField::trivial();
  auto tspace = NormedSpace::standard(t, weights(t, {"1", "3"}));
  std::vector<Vector<Rational>> tflag{vec({1, 1}), vec({1, 0})};
  auto tout = orthogonalize_flag(tspace, std::span<const Vector<Rational>>(tflag));
  CHECK(tout.vectors[0] == vec({1, 1}));
  CHECK(tout.weights[0].value() == 3);
  CHECK(tout.weights[1].value() == 1);
  CHECK(tout.vectors[1][1] == 0);  // residual pivots in coordinate 0; coordinate 1 is cleared

  std::vector<Vector<Rational>> dependent{vec({1, 1}), vec({2, 2})};
  CHECK_THROWS_AS(orthogonalize_flag(tspace, std::span<const Vector<Rational>>(dependent)), PreconditionError);
}

TEST_CASE("distance_to_subspace examples") {
  auto f = ValuedField::padic(2);
  std::vector<Vector<Rational>> w{vec({1, 0})};
  auto x = vec({0, 1});
  auto d = distance_to_subspace(skew_space(f), std::span<const Rational>(x), std::span<const Vector<Rational>>(w));
  CHECK(d.distance.value() == 2);
  CHECK(is_zero_vector<Rational>(d.minimizer));

  auto in = vec({3, 0});
  auto d0 = distance_to_subspace(skew_space(f), std::span<const Rational>(in), std::span<const Vector<Rational>>(w));
  CHECK(d0.distance.is_zero());
  CHECK(d0.minimizer == in);

  auto t = ValuedField::trivial();
  auto tspace = NormedSpace::standard(t, weights(t, {"1", "3"}));
  std::vector<Vector<Rational>> tw{vec({1, 1})};
  auto tx = vec({1, 0});
  auto td = distance_to_subspace(tspace, std::span<const Rational>(tx), std::span<const Vector<Rational>>(tw));
  CHECK(td.distance.value() == 1);
}

TEST_CASE("quotient_norm examples") {
  auto f = ValuedField::padic(2);
  Matrix<Rational> sum = Matrix<Rational>::from_rows({vec({1, 1})}, 2);
  auto q1 = quotient_norm(NormedSpace::standard(f, weights(f, {"1", "1/4"})), sum);
  Vector<Rational> one{Rational(1)};
  CHECK(q1.target.norm(one).value() == q("1/4"));
  CHECK(q1.lift(one) == vec({0, 1}));

  auto q2 = quotient_norm(NormedSpace::standard(f, weights(f, {"1", "1"})), sum);
  CHECK(q2.target.norm(one).value() == 1);
  CHECK(q2.lift(one) == vec({1, 0}));

  auto id = quotient_norm(skew_space(f), Matrix<Rational>::identity(2));
  CHECK(id.target.norm(vec({0, 1})).value() == 2);

  Matrix<Rational> zero(1, 2);
  CHECK_THROWS_AS(quotient_norm(skew_space(f), zero), PreconditionError);
}

TEST_CASE("dual_norm examples") {
  auto f = ValuedField::padic(3);
  auto space = NormedSpace::standard(f, weights(f, {"1", "2"}));
  auto d = dual_norm(space);
  CHECK(d.weights()[0].value() == 1);
  CHECK(d.weights()[1].value() == q("1/2"));
  auto dd = dual_norm(d);
  CHECK(dd.weights() == space.weights());
}

TEST_CASE("scalar_extension examples") {
  auto t = ValuedField::trivial();
  auto space = NormedSpace::standard(t, weights(t, {"1", "2"}));
  auto ext = scalar_extension(space, 3);
  Vector<RatFunc> v{RatFunc::T(), RatFunc(1)};
  CHECK(ext.norm(v).value() == 2);
  Vector<RatFunc> z{RatFunc(), RatFunc()};
  CHECK(ext.norm(z).is_zero());
  CHECK_THROWS_AS(scalar_extension(space, 2), PreconditionError);
  CHECK_THROWS_AS(scalar_extension(NormedSpace::standard(ValuedField::padic(2), weights(ValuedField::padic(2), {"1"})), 3),
                  PreconditionError);
}

TEST_CASE("norm_value_set examples") {
  auto t = ValuedField::trivial();
  auto vals = norm_value_set(NormedSpace::standard(t, weights(t, {"1", "2", "2"})));
  REQUIRE(vals.size() == 3);
  CHECK(vals[0].is_zero());
  CHECK(vals[1].value() == 1);
  CHECK(vals[2].value() == 2);

  auto f = ValuedField::padic(2);
  auto cosets = norm_value_set(NormedSpace::standard(f, weights(f, {"1", "3"})));
  REQUIRE(cosets.size() == 3);
  CHECK(cosets[1].value() == 1);
  CHECK(cosets[2].value() == 3);

  auto empty = norm_value_set(NormedSpace::standard(f, {}));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].is_zero());
}

TEST_CASE("dimension zero spaces") {
  auto f = ValuedField::padic(5);
  auto space = NormedSpace(f, Matrix<Rational>(0, 0), {});
  CHECK(space.dim() == 0);
  CHECK(space.norm(Vector<Rational>{}).is_zero());
  auto out = orthogonalize_flag(space, std::span<const Vector<Rational>>());
  CHECK(out.vectors.empty());
  CHECK(dual_norm(space).dim() == 0);
}

TEST_CASE("orthogonality, attainment and duality on random spaces") {
  Rng rng(2024);
  for (auto f : {ValuedField::padic(2), ValuedField::padic(3), ValuedField::trivial()}) {
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t dim = static_cast<std::size_t>(rng.uniform(1, 4));
      auto space = testkit::random_space(rng, f, dim);

      std::vector<Vector<Rational>> flag;
      while (flag.size() < dim) {
        auto v = rng.vector(f, dim);
        flag.push_back(v);
        if (rank(Matrix<Rational>::from_columns(flag, dim)) < flag.size()) flag.pop_back();
      }
      auto fam = orthogonalize_flag(space, std::span<const Vector<Rational>>(flag));
      for (std::size_t i = 1; i <= dim; ++i) {
        std::vector<Vector<Rational>> both(flag.begin(), flag.begin() + static_cast<long>(i));
        both.insert(both.end(), fam.vectors.begin(), fam.vectors.begin() + static_cast<long>(i));
        REQUIRE(rank(Matrix<Rational>::from_columns(both, dim)) == i);
      }
      for (int s = 0; s < 100; ++s) {
        Vector<Rational> a = rng.vector(f, dim), v(dim, Rational(0));
        Rational expect = 0;
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t k = 0; k < dim; ++k) v[k] += a[i] * fam.vectors[i][k];
          Rational term = testkit::oracle_abs(f, a[i]) * fam.weights[i].value();
          if (term > expect) expect = term;
        }
        REQUIRE(testkit::oracle_norm(space, v) == expect);
        REQUIRE(space.norm(v).value() == expect);
      }

      // Double dual reproduces norms through the canonical pairing.
      auto dd = dual_norm(dual_norm(space));
      for (int s = 0; s < 20; ++s) {
        auto v = rng.vector(f, dim);
        REQUIRE(dd.norm(v) == space.norm(v));
      }

      // Quotient onto a random surjection: lift attains, coset samples never beat it.
      std::size_t t = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(dim)));
      Matrix<Rational> map(t, dim);
      do {
        for (std::size_t i = 0; i < t; ++i)
          for (std::size_t j = 0; j < dim; ++j) map(i, j) = rng.field_rational(f);
      } while (rank(map) != t);
      auto qn = quotient_norm(space, map);
      auto kernel = kernel_basis(map);
      for (int s = 0; s < 10; ++s) {
        auto y = rng.vector(f, t);
        auto x = qn.lift(y);
        REQUIRE(map * x == y);
        Magnitude qy = qn.target.norm(y);
        REQUIRE(space.norm(x) == qy);
        for (int c = 0; c < 30; ++c) {
          Vector<Rational> z = x;
          for (const auto& k : kernel) {
            Rational coef = rng.field_rational(f);
            for (std::size_t j = 0; j < dim; ++j) z[j] += coef * k[j];
          }
          REQUIRE(testkit::oracle_norm(space, z) >= qy.value());
        }
      }
    }
  }
}
