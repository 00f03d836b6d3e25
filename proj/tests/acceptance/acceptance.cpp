// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [FIXTURE_DIR CLI_BINARY]

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "testkit.hpp"
#include "ultranorm/adelic.hpp"
#include "ultranorm/cli.hpp"
#include "ultranorm/extension.hpp"
#include "ultranorm/lattice.hpp"
#include "ultranorm/metric.hpp"

using namespace ultranorm;
using testkit::OracleNorm;
using testkit::Rng;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string g_fixtures = ULTRANORM_FIXTURES;
std::string g_cli = ULTRANORM_CLI_PATH;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few failures; the criterion fails on any.
class Tally {
 public:
  void check(bool cond, const std::string& what) {
    ++checks_;
    if (cond) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  long checks() const { return checks_; }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + ", " + std::to_string(checks_) + " checks"};
    return {false, std::to_string(failures_) + " violations: " + notes_};
  }

 private:
  long checks_ = 0, failures_ = 0;
  std::string notes_;
};

std::vector<ValuedField> fields() {
  return {ValuedField::padic(2), ValuedField::padic(3), ValuedField::padic(5), ValuedField::trivial()};
}

Vector<Rational> random_nonzero(Rng& rng, const ValuedField& f, std::size_t n) {
  for (;;) {
    auto v = rng.vector(f, n);
    if (!is_zero_vector<Rational>(v)) return v;
  }
}

Vector<Rational> combine(const std::vector<Vector<Rational>>& vs, const Vector<Rational>& a) {
  Vector<Rational> out(vs.front().size(), Rational(0));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += a[i] * vs[i][j];
  return out;
}

// --------------------------------------------------------------------- 1

Outcome orthogonality() {
  Rng rng(1001);
  Tally t;
  auto fs_ = fields();
  for (int inst = 0; inst < 200; ++inst) {
    const auto& f = fs_[inst % fs_.size()];
    const auto dim = static_cast<std::size_t>(rng.uniform(1, 6));
    auto space = testkit::random_space(rng, f, dim);
    OracleNorm norm(space);
    const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(dim)));
    std::vector<Vector<Rational>> flag;
    while (flag.size() < k) {
      flag.push_back(random_nonzero(rng, f, dim));
      if (rank(Matrix<Rational>::from_columns(std::span<const Vector<Rational>>(flag), dim)) < flag.size())
        flag.pop_back();
    }
    auto fam = orthogonalize_flag(space, std::span<const Vector<Rational>>(flag));
    for (std::size_t i = 0; i < k; ++i) t.check(norm(fam.vectors[i]) == fam.weights[i].value(), "weight mismatch");
    // span condition: g_1..g_i spans f_1..f_i
    for (std::size_t i = 1; i <= k; ++i) {
      std::vector<Vector<Rational>> both(flag.begin(), flag.begin() + static_cast<long>(i));
      both.insert(both.end(), fam.vectors.begin(), fam.vectors.begin() + static_cast<long>(i));
      t.check(rank(Matrix<Rational>::from_columns(std::span<const Vector<Rational>>(both), dim)) == i, "flag span");
    }
    for (int s = 0; s < 1000; ++s) {
      Vector<Rational> a = rng.vector(f, k);
      Rational expect = 0;
      for (std::size_t i = 0; i < k; ++i) {
        Rational c = testkit::oracle_abs(f, a[i]) * fam.weights[i].value();
        if (c > expect) expect = c;
      }
      t.check(norm(combine(fam.vectors, a)) == expect, "||sum a_i g_i|| != max |a_i| w_i");
    }
  }
  return t.outcome("200 spaces x 1000 tuples");
}

// --------------------------------------------------------------------- 2

Outcome quotient_attainment() {
  Rng rng(2002);
  Tally t;
  auto fs_ = fields();
  for (int inst = 0; inst < 200; ++inst) {
    const auto& f = fs_[inst % fs_.size()];
    const auto r = static_cast<std::size_t>(rng.uniform(2, 6));
    const auto tdim = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(r) - 1));
    auto space = testkit::random_space(rng, f, r);
    OracleNorm norm(space);
    Matrix<Rational> map(tdim, r);
    do {
      for (std::size_t i = 0; i < tdim; ++i)
        for (std::size_t j = 0; j < r; ++j) map(i, j) = rng.field_rational(f);
    } while (rank(map) != tdim);
    auto qn = quotient_norm(space, map);
    auto kernel = kernel_basis(map);
    for (int target = 0; target < 5; ++target) {
      auto y = random_nonzero(rng, f, tdim);
      auto x = qn.lift(y);
      t.check(map * x == y, "lift does not map to the target");
      const Rational best = norm(x);
      t.check(best == qn.target.norm(y).value(), "lift norm != quotient norm");
      for (int s = 0; s < 200; ++s) {
        auto z = x;
        auto k = combine(kernel, rng.vector(f, kernel.size()));
        for (std::size_t j = 0; j < r; ++j) z[j] += k[j];
        t.check(norm(z) >= best, "coset sample beats the lift");
      }
    }
  }
  return t.outcome("200 surjections, 1000 coset samples each");
}

// --------------------------------------------------------------------- 3

Outcome duality_and_sandwich() {
  Rng rng(3003);
  Tally t;
  auto fs_ = fields();
  for (int inst = 0; inst < 200; ++inst) {
    const auto& f = fs_[inst % fs_.size()];
    const auto dim = static_cast<std::size_t>(rng.uniform(1, 5));
    auto space = testkit::random_space(rng, f, dim);
    auto dual = dual_norm(space);
    auto ddual = dual_norm(dual);
    OracleNorm norm(space), dnorm(dual), ddnorm(ddual);
    for (int s = 0; s < 20; ++s) {
      auto v = random_nonzero(rng, f, dim);
      t.check(ddnorm(v) == norm(v), "double dual is not isometric");
      // |phi(v)| <= ||phi||* ||v||, with equality somewhere on the orthogonal basis
      auto phi = random_nonzero(rng, f, dim);
      Rational pv = 0;
      for (std::size_t i = 0; i < dim; ++i) pv += phi[i] * v[i];
      t.check(testkit::oracle_abs(f, pv) <= dnorm(phi) * norm(v), "dual norm bound");
      Rational attained = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        auto e = space.basis_vector(i);
        Rational pe = 0;
        for (std::size_t j = 0; j < dim; ++j) pe += phi[j] * e[j];
        Rational q = testkit::oracle_abs(f, pe) / norm(e);
        if (q > attained) attained = q;
      }
      t.check(attained == dnorm(phi), "dual norm not attained on the basis");
    }
  }
  for (int inst = 0; inst < 200; ++inst) {
    const unsigned long primes[] = {2, 3, 5};
    auto f = ValuedField::padic(primes[inst % 3]);
    const auto dim = static_cast<std::size_t>(rng.uniform(1, 5));
    auto space = testkit::random_space(rng, f, dim);
    OracleNorm norm(space);
    auto lat = lattice_from_norm(space);
    OracleNorm lnorm(norm_from_lattice(lat));
    const Rational p(static_cast<long>(f.prime()));
    for (int s = 0; s < 20; ++s) {
      auto v = random_nonzero(rng, f, dim);
      Rational a = norm(v), b = lnorm(v);
      t.check(a <= b && b < p * a, "sandwich ||v|| <= ||v||_L < p ||v|| fails");
      t.check(lat.contains(v) == (a <= 1), "lattice is not the unit ball");
    }
  }
  return t.outcome("200 dual instances, 200 sandwich instances");
}

// --------------------------------------------------------------------- 4

Outcome sigma_vanishing() {
  Rng rng(4004);
  Tally t;
  int instances = 0;
  for (const auto& f : fields()) {
    for (std::size_t nv : {2, 3}) {
      for (int rep = 0; rep < 2; ++rep) {
        std::vector<Magnitude> w;
        for (std::size_t i = 0; i < nv; ++i) w.push_back(rng.weight(f));
        auto h = QuotientMetric::diagonal(f, w);
        ++instances;
        for (int k = 0; k < 100; ++k) {
          auto x = random_nonzero(rng, f, nv);
          for (unsigned n = 1; n <= 8; ++n) t.check(sigma(h, n, x).value() == 1, "sigma ratio != 1");
        }
      }
    }
  }
  return t.outcome(std::to_string(instances) + " metrics, degrees 1..8, 100 points each");
}

// --------------------------------------------------------------------- 5

std::optional<Rational> ratio_of(const json& r, unsigned long p) {
  if (r.is_null()) return std::nullopt;
  Rational q = parse_rational(r.at("q").get<std::string>());
  long e = r.at("n").get<long>();
  return p == 0 ? q : q * ultranorm::pow(Rational(static_cast<long>(p)), -e);
}

std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, code == 0 ? out.str() : err.str()};
}

Outcome fekete() {
  Tally t;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(g_fixtures + "/extension"))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  t.check(files.size() == 20, "expected 20 extension fixtures");
  int semipositive = 0;
  for (const auto& file : files) {
    auto [code, text] = run_cli({"extension-table", "--config", file.string(), "--max-degree", "12", "--format", "json"});
    t.check(code == 0, file.filename().string() + ": " + text);
    if (code != 0) continue;
    json cfg = json::parse(std::ifstream(file));
    unsigned long p = cfg["field"].value("p", 0UL);
    json out = json::parse(text);
    std::vector<std::optional<Rational>> r;
    for (const auto& row : out["rows"]) r.push_back(ratio_of(row["ratio"], p));
    for (std::size_t m = 1; m <= 12; ++m)
      for (std::size_t n = 1; m + n <= 12; ++n) {
        if (!r[m - 1] || !r[n - 1]) continue;
        t.check(r[m + n - 1] && *r[m + n - 1] <= *r[m - 1] * *r[n - 1],
                file.filename().string() + ": a_" + std::to_string(m + n) + " > a_m + a_n");
      }
    for (const auto& x : r) t.check(!x || *x >= 1, "ratio below 1");
    t.check(out["subadditivity_violations"].empty(), "CLI reports violations");
    if (file.filename().string().rfind("semipositive", 0) == 0) {
      ++semipositive;
      for (std::size_t n = 0; n < r.size(); ++n)
        t.check(r[n] && *r[n] == 1, file.filename().string() + ": a_" + std::to_string(n + 1) + " != 0");
    }
  }
  return t.outcome(std::to_string(files.size()) + " fixtures (" + std::to_string(semipositive) +
                   " semipositive), m + n <= 12");
}

// --------------------------------------------------------------------- 6

Outcome laurent_equivalence() {
  Rng rng(6006);
  Tally t;
  auto f = ValuedField::trivial();
  int instances = 0;
  while (instances < 24) {
    const std::size_t nv = instances % 2 == 0 ? 2 : 3;
    std::vector<Magnitude> w;
    for (std::size_t i = 0; i < nv; ++i) w.push_back(rng.weight(f));
    std::optional<QuotientMetric> h;
    if (rng.coin())
      h.emplace(QuotientMetric::diagonal(f, w));
    else
      h.emplace(testkit::random_space(rng, f, nv));
    std::vector<Vector<Rational>> pts;
    const auto npts = static_cast<std::size_t>(rng.uniform(1, 3));
    while (pts.size() < npts) {
      auto x = random_nonzero(rng, f, nv);
      pts.push_back(x);
      bool distinct = true;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Matrix<Rational> two = Matrix<Rational>::from_columns({pts[i], x}, nv);
        distinct = distinct && rank(two) == 2;
      }
      if (!distinct) pts.pop_back();
    }
    Section l(nv, 1);
    for (std::size_t i = 0; i < nv; ++i) l = l + Section::variable(nv, i).scaled(rng.rational(5));
    std::optional<ExtensionProblem> prob;
    try {
      prob.emplace(*h, Subvariety::points(pts), l);
    } catch (const PreconditionError&) {
      continue;  // l vanishes on Y
    }
    ++instances;
    for (unsigned n = 1; n <= 6; ++n) {
      auto direct = min_norm_lift(*prob, n);
      try {
        auto lau = extend_trivial_via_laurent(*prob, n);
        t.check(lau.ratio == direct.ratio, "Laurent ratio differs from the direct lift");
        Section ln = power(l, n);
        for (const auto& x : pts)
          t.check(lau.section.evaluate(x) == ln.evaluate(x), "Laurent lift does not restrict to l^n");
        t.check(sup_norm(*h, lau.section) == lau.ratio * prob->restricted_norm().pow(n), "Laurent sup norm");
      } catch (const PreconditionError& e) {
        t.check(false, std::string("Laurent path failed: ") + e.code());
      }
    }
  }
  return t.outcome("24 instances, n <= 6");
}

// --------------------------------------------------------------------- 7

Section random_section(Rng& rng, const ValuedField& f, std::size_t nv, unsigned deg) {
  for (;;) {
    Section s(nv, deg);
    for (const auto& e : monomial_basis(nv - 1, deg)) s.set(e, rng.field_rational(f));
    if (!s.is_zero()) return s;
  }
}

Outcome sup_norm_soundness() {
  Rng rng(7007);
  Tally t;
  // p > n: Gauss norm attained at a lifted residue point.
  int attained = 0;
  for (unsigned long p : {7UL, 11UL}) {
    auto f = ValuedField::padic(p);
    for (int inst = 0; inst < 20; ++inst) {
      const std::size_t nv = inst % 2 == 0 ? 2 : 3;
      std::vector<Magnitude> w;
      for (std::size_t i = 0; i < nv; ++i)
        w.push_back(f.magnitude(ultranorm::pow(Rational(static_cast<long>(p)), rng.uniform(-2, 2))));
      auto h = QuotientMetric::diagonal(f, w);
      auto s = random_section(rng, f, nv, static_cast<unsigned>(rng.uniform(1, 5)));
      auto pt = sup_attaining_point(h, s);
      t.check(pt.has_value(), "no residue point found");
      if (pt) {
        t.check(point_metric(h, s, *pt) == sup_norm(h, s), "Gauss norm not attained at the lift");
        ++attained;
      }
    }
  }
  // pointwise <= Gauss, multiplicativity
  int fixtures = 0, pairs = 0;
  for (const auto& f : {ValuedField::padic(2), ValuedField::padic(3), ValuedField::padic(7), ValuedField::trivial()}) {
    for (int inst = 0; inst < 5; ++inst) {
      const std::size_t nv = inst % 2 == 0 ? 2 : 3;
      QuotientMetric h(testkit::random_space(rng, f, nv));
      auto s = random_section(rng, f, nv, static_cast<unsigned>(rng.uniform(1, 4)));
      Magnitude sup = sup_norm(h, s);
      ++fixtures;
      for (int k = 0; k < 1000; ++k)
        t.check(point_metric(h, s, random_nonzero(rng, f, nv)) <= sup, "pointwise value exceeds the Gauss norm");
      for (int k = 0; k < 25; ++k, ++pairs) {
        auto a = random_section(rng, f, nv, static_cast<unsigned>(rng.uniform(1, 3)));
        auto b = random_section(rng, f, nv, static_cast<unsigned>(rng.uniform(1, 3)));
        t.check(sup_norm(h, a * b) == sup_norm(h, a) * sup_norm(h, b), "||st|| != ||s|| ||t||");
      }
    }
  }
  return t.outcome(std::to_string(attained) + " attained, " + std::to_string(fixtures) + " fixtures x 1000 points, " +
                   std::to_string(pairs) + " pairs");
}

// --------------------------------------------------------------------- 8

Rational frac(long a, long b) {
  Rational x(a, b);
  x.canonicalize();
  return x;
}

PolyhedralNorm random_polyhedral(Rng& rng, std::size_t dim) {
  switch (rng.uniform(0, 3)) {
    case 0:
      return PolyhedralNorm::scaled_sup(dim, frac(rng.uniform(1, 4), rng.uniform(1, 4)));
    case 1:
      return PolyhedralNorm::scaled_l1(dim, frac(rng.uniform(1, 4), rng.uniform(1, 4)));
    case 2: {
      for (;;) {
        const auto k = static_cast<std::size_t>(rng.uniform(static_cast<long>(dim), static_cast<long>(dim) + 2));
        Matrix<Rational> phi(k, dim);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < dim; ++j) phi(i, j) = frac(rng.uniform(-3, 3), rng.uniform(1, 2));
        if (rank(phi) == dim) return PolyhedralNorm::max_abs(phi);
      }
    }
    default: {
      const std::size_t src = dim + 1;
      for (;;) {
        Matrix<Rational> a(dim, src);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < src; ++j) a(i, j) = rng.uniform(-2, 2);
        if (rank(a) == dim) return PolyhedralNorm::scaled_sup(src, 1).quotient(a);
      }
    }
  }
}

Integer to_integer(const Rational& x) { return x.get_num(); }

Outcome adelic_suite() {
  Rng rng(8008);
  Tally t;
  const unsigned long primes[] = {2, 3, 5, 7};
  const unsigned long extra[] = {2, 3, 5, 7, 11, 13};
  for (int inst = 0; inst < 100; ++inst) {
    const auto dim = static_cast<std::size_t>(rng.uniform(2, 4));
    std::map<unsigned long, NormedSpace> finite;
    const auto listed = rng.uniform(0, 2);
    for (long k = 0; k < listed; ++k) {
      unsigned long p = primes[rng.uniform(0, 3)];
      finite.insert_or_assign(p, testkit::random_space(rng, ValuedField::padic(p), dim));
    }
    AdelicSpace space(dim, finite, PolyhedralNorm::scaled_sup(dim, 1));
    auto unit = finite_unit_lattice(space);
    t.check(check_localization(space, unit, extra), "unit lattice does not localize to the unit balls");
    // Oracle: membership equals all local norms <= 1.
    for (int s = 0; s < 10; ++s) {
      Vector<Rational> v(dim);
      for (auto& x : v) x = rng.rational(6);
      bool local = true;
      for (const auto& [p, n] : finite) local = local && testkit::oracle_norm(n, v) <= 1;
      for (const auto& x : v) {
        Integer den = x.get_den();
        for (auto [q, e] : testkit::factor(den))
          if (!finite.count(q)) local = false;
      }
      t.check(unit.lattice.contains(v) == local, "unit lattice membership");
    }
    const auto tdim = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(dim) - 1));
    Matrix<Rational> f(tdim, dim);
    do {
      for (std::size_t i = 0; i < tdim; ++i)
        for (std::size_t j = 0; j < dim; ++j) f(i, j) = rng.uniform(-3, 3);
    } while (rank(f) != tdim);
    try {
      auto quot = quotient_adelic(space, f);
      t.check(image(f, unit.lattice) == finite_unit_lattice(quot).lattice, "f(unit lattice) != quotient unit lattice");
    } catch (const PreconditionError& e) {
      t.check(false, std::string("quotient failed: ") + e.code());
    }
  }

  int lattices = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 4));
    std::vector<Vector<Rational>> gens;
    for (std::size_t k = 0; k < r + 1; ++k) {
      Vector<Rational> v(r);
      for (auto& x : v) x = frac(rng.uniform(-4, 4), rng.uniform(1, 3));
      gens.push_back(v);
    }
    auto lat = ZLattice::from_generators(std::span<const Vector<Rational>>(gens), r);
    if (lat.rank() != r) continue;
    ++lattices;
    NormedLattice nl{lat, random_polyhedral(rng, r)};
    auto res = compute_lambda(nl);
    t.check(res.lambda_q <= res.lambda_z && res.lambda_z <= Rational(static_cast<long>(r)) * res.lambda_q,
            "lambda sandwich");
    // Returned bases: inside the lattice, norms bounded, attained.
    Rational qmax = 0, zmax = 0;
    for (const auto& v : res.q_basis) {
      t.check(lat.contains(v), "Q-basis vector outside the lattice");
      qmax = std::max(qmax, nl.norm.norm(v));
    }
    for (const auto& v : res.z_basis) zmax = std::max(zmax, nl.norm.norm(v));
    t.check(qmax == res.lambda_q && zmax == res.lambda_z, "lambda not attained by the returned basis");
    t.check(ZLattice::from_generators(std::span<const Vector<Rational>>(res.z_basis), r) == lat, "not a Z-basis");
    t.check(res.q_basis.size() == r &&
                rank(Matrix<Rational>::from_columns(std::span<const Vector<Rational>>(res.q_basis), r)) == r,
            "Q-basis rank");
    // Enumeration oracle over a coefficient box in the Hermite basis:
    // strictly shorter vectors neither span (lambda_Q) nor generate (lambda_Z).
    std::vector<Vector<Rational>> shorter_q, shorter_z;
    const long box = r <= 2 ? 6 : (r == 3 ? 4 : 3);
    std::vector<long> c(r, -box);
    const auto cols = lat.basis().columns();
    for (;;) {
      Vector<Rational> v(r, Rational(0));
      bool zero = true;
      for (std::size_t i = 0; i < r; ++i) {
        zero = zero && c[i] == 0;
        for (std::size_t j = 0; j < r; ++j) v[j] += c[i] * cols[i][j];
      }
      if (!zero) {
        Rational n = nl.norm.norm(v);
        if (n < res.lambda_q) shorter_q.push_back(v);
        if (n < res.lambda_z) shorter_z.push_back(v);
      }
      std::size_t i = 0;
      while (i < r && c[i] == box) c[i++] = -box;
      if (i == r) break;
      ++c[i];
    }
    if (!shorter_q.empty())
      t.check(rank(Matrix<Rational>::from_columns(std::span<const Vector<Rational>>(shorter_q), r)) < r,
              "shorter vectors span: lambda_Q too large");
    if (!shorter_z.empty())
      t.check(!(ZLattice::from_generators(std::span<const Vector<Rational>>(shorter_z), r) == lat),
              "shorter vectors generate: lambda_Z too large");
  }
  return t.outcome("100 adelic configurations, " + std::to_string(lattices) + " lattices");
}

// --------------------------------------------------------------------- 9

Outcome nakai_demo() {
  Tally t;
  auto run_one = [&](const std::string& name, unsigned expect_first) {
    auto [code, text] =
        run_cli({"nakai", "--config", g_fixtures + "/cli/" + name, "--max-degree", "6", "--format", "json"});
    t.check(code == 0, name + ": " + text);
    if (code != 0) return;
    json out = json::parse(text);
    t.check(out["first_success"] == expect_first, name + ": first success at " + out["first_success"].dump());
    for (const auto& row : out["rows"]) {
      if (!row["found"].get<bool>()) continue;
      const std::size_t dim = row["basis"].size();
      std::set<std::size_t> units;
      for (const auto& v : row["basis"]) {
        std::size_t ones = 0, idx = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
          Rational x = parse_rational(v[j].get<std::string>());
          if (x == 1) {
            ++ones;
            idx = j;
          } else {
            t.check(x == 0, name + ": basis vector is not a monomial");
          }
        }
        if (ones == 1) units.insert(idx);
      }
      if (row["n"] == expect_first) t.check(units.size() == dim, name + ": not the monomial basis at n0");
      for (const auto& x : row["archimedean_norms"]) t.check(parse_rational(x.get<std::string>()) < 1, "arch norm >= 1");
      for (const auto& x : row["max_finite_norms"]) t.check(parse_rational(x.get<std::string>()) <= 1, "finite norm > 1");
    }
  };
  run_one("nakai_half.json", 1);
  run_one("nakai_three_half.json", 2);
  return t.outcome("(1/2)^n: n0 = 1, 3 (1/2)^n: n0 = 2");
}

// --------------------------------------------------------------------- 10

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Tally t;
  const std::string fx = g_fixtures + "/cli/";
  const std::vector<std::vector<std::string>> commands = {
      {"orthogonalize", "--config", fx + "orthogonalize.json"},
      {"quotient", "--config", fx + "quotient.json"},
      {"dual", "--config", fx + "dual.json"},
      {"lattice", "--config", fx + "lattice.json"},
      {"sigma-sample", "--config", fx + "metric_p1.json", "--degrees", "8", "--points", fx + "points_p1.json"},
      {"sigma-sample", "--config", fx + "metric_p2.json", "--degrees", "6", "--seed", "42"},
      {"extension-table", "--config", fx + "two_point_p2.json", "--max-degree", "12", "--epsilon", "1/10",
       "--sections"},
      {"extension-table", "--config", g_fixtures + "/extension/general_01.json", "--max-degree", "12", "--format",
       "json"},
      {"extend-trivial", "--config", fx + "trivial_p1.json", "--max-degree", "6"},
      {"lambda", "--lattice", fx + "lattice_z2.json", "--norm", fx + "norm_sup.json"},
      {"lambda", "--lattice", fx + "lattice_skew.json", "--norm", fx + "norm_l1_quotient.json"},
      {"nakai", "--config", fx + "nakai_three_half.json", "--max-degree", "6"},
  };
  const auto dir = fs::temp_directory_path() / ("ultranorm_det_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  int runs = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::optional<std::string> reference;
    for (const char* jobs : {"1", "1", "1", "4", "8"}) {
      const auto out = (dir / ("out_" + std::to_string(runs++))).string();
      std::string cmd = "\"" + g_cli + "\"";
      for (const auto& a : commands[c]) cmd += " \"" + a + "\"";
      cmd += std::string(" --jobs ") + jobs + " --out \"" + out + "\"";
      int code = std::system(cmd.c_str());
      t.check(code == 0, commands[c][0] + " exited with " + std::to_string(code));
      std::string text = read_file(out);
      t.check(!text.empty(), commands[c][0] + " wrote nothing");
      if (!reference)
        reference = text;
      else
        t.check(text == *reference, commands[c][0] + " output differs (jobs " + jobs + ")");
    }
  }
  fs::remove_all(dir);
  return t.outcome(std::to_string(commands.size()) + " invocations x (3 runs + jobs 4, 8)");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc >= 3) {
    g_fixtures = argv[1];
    g_cli = argv[2];
  }
  struct Criterion {
    const char* name;
    double limit;  // seconds, 0 = none given
    std::function<Outcome()> fn;
  };
  const Criterion criteria[] = {
      {"orthogonality suite", 60, orthogonality},
      {"quotient attainment", 30, quotient_attainment},
      {"double dual and lattice sandwich", 0, duality_and_sandwich},
      {"sigma vanishing", 300, sigma_vanishing},
      {"sub-additivity of extension ratios", 300, fekete},
      {"Laurent path equivalence", 120, laurent_equivalence},
      {"sup norm soundness", 0, sup_norm_soundness},
      {"adelic suite", 300, adelic_suite},
      {"Nakai basis search", 30, nakai_demo},
      {"CLI determinism", 0, determinism},
  };
  int failed = 0, k = 0;
  for (const auto& c : criteria) {
    ++k;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit == 0 || secs < c.limit;
    bool ok = o.ok && in_time;
    failed += ok ? 0 : 1;
    char timing[96];
    if (c.limit > 0)
      std::snprintf(timing, sizeof timing, "%.2fs / limit %.0fs", secs, c.limit);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " [" << k << "] " << c.name << " (" << timing << ") "
              << (in_time ? "" : "over time limit; ") << o.detail << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
