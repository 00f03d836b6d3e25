#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ultranorm/lattice.hpp"
#include "ultranorm/normed_space.hpp"
#include "ultranorm/polyhedral.hpp"

namespace ultranorm {

/// Q^dim with a p-adic norm at finitely many listed primes (the standard
/// orthonormal norm everywhere else) and a polyhedral archimedean norm.
class AdelicSpace {
 public:
  AdelicSpace(std::size_t dim, std::map<unsigned long, NormedSpace> finite, PolyhedralNorm archimedean);
  /// Standard norms at every prime, sup norm at infinity.
  static AdelicSpace standard(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::map<unsigned long, NormedSpace>& finite() const { return finite_; }
  const PolyhedralNorm& archimedean() const { return arch_; }
  /// The norm at p (standard when p is not listed).
  NormedSpace finite_norm(unsigned long p) const;

 private:
  std::size_t dim_;
  std::map<unsigned long, NormedSpace> finite_;
  PolyhedralNorm arch_;
};

/// Z-lattice with an archimedean norm on its ambient space.
struct NormedLattice {
  ZLattice lattice;
  PolyhedralNorm norm;
};

/// {x : ||x||_p <= 1 for all primes p}.
NormedLattice finite_unit_lattice(const AdelicSpace& space);

/// Localization identity: lattice ⊗ Z_(p) equals the p-adic unit ball for every
/// listed prime and for the extra primes given.
bool check_localization(const AdelicSpace& space, const NormedLattice& lattice,
                        std::span<const unsigned long> extra_primes = {});

/// Quotient along a surjection f (rows = target dimension). Verifies
/// f(unit lattice) = unit lattice of the quotient before returning.
AdelicSpace quotient_adelic(const AdelicSpace& space, const Matrix<Rational>& f);

/// prod of the given primes.
Rational support_unit(std::span<const unsigned long> primes);

struct LambdaOptions {
  std::size_t max_rank = 8;
  unsigned jobs = 1;
  std::size_t max_candidates = 4'000'000;  // lattice points scanned
  std::size_t max_search_nodes = 2'000'000;
};

struct LambdaResult {
  std::size_t rank = 0;
  Rational lambda_q, lambda_z;
  std::vector<Vector<Rational>> q_basis;  // Q-basis inside the lattice, norms <= lambda_q
  std::vector<Vector<Rational>> z_basis;  // Z-basis, norms <= lambda_z
};

/// Exact lambda_Q and lambda_Z by enumeration; refuses ranks above max_rank.
LambdaResult compute_lambda(const NormedLattice& lattice, const LambdaOptions& options = {});

/// Upper bound for lambda_Z from a pairwise-reduced basis. Not exact.
struct LambdaUpperBound {
  Rational upper_bound;
  std::vector<Vector<Rational>> basis;
};
LambdaUpperBound lambda_z_upper_bound(const NormedLattice& lattice);

enum class ArchimedeanKind { sup, l1 };

/// Degree-n piece on P^m: monomial coordinates, diagonal Gauss norms at the
/// listed primes (variable weights multiply), archimedean
/// scale * decay^n * (sup or l1 of the coefficients).
struct GradedRecipe {
  std::size_t m = 1;
  std::map<unsigned long, std::vector<Rational>> finite_weights;
  Rational scale = 1;
  Rational decay = 1;
  ArchimedeanKind kind = ArchimedeanKind::sup;
};

class GradedAdelic {
 public:
  explicit GradedAdelic(std::map<unsigned, AdelicSpace> pieces) : pieces_(std::move(pieces)) {}
  static GradedAdelic from_recipe(const GradedRecipe& recipe, unsigned max_degree);

  const AdelicSpace& at(unsigned n) const;
  bool has(unsigned n) const { return pieces_.count(n) > 0; }
  const std::map<unsigned, AdelicSpace>& pieces() const { return pieces_; }

 private:
  std::map<unsigned, AdelicSpace> pieces_;
};

AdelicSpace graded_piece(const GradedRecipe& recipe, unsigned n);

struct GradedRow {
  unsigned n;
  std::size_t rank;
  Rational lambda_q, lambda_z;
};

/// Least squares fit of log lambda_Q against n. Diagnostic only: this is the one
/// floating-point output of the library.
struct DecayFit {
  double slope, intercept, rate;  // rate = exp(slope)
  std::size_t points;
};

struct GradedTable {
  std::vector<GradedRow> rows;
  std::optional<DecayFit> fit;
};

std::optional<DecayFit> fit_lambda_decay(std::span<const GradedRow> rows);
GradedTable graded_lambda_table(const GradedAdelic& graded, unsigned max_degree, const LambdaOptions& options = {});

struct NakaiResult {
  unsigned n;
  bool found;
  std::size_t rank;
  Rational lambda_q, lambda_z;
  std::vector<Vector<Rational>> basis;  // empty unless found
  std::vector<Rational> archimedean_norms;
  std::vector<Rational> max_finite_norms;  // per basis vector, max over listed primes (1 if none)
};

/// A Z-basis of the degree-n unit lattice with archimedean norms < 1, if any.
NakaiResult nakai_basis_search(const GradedAdelic& graded, unsigned n, const LambdaOptions& options = {});

}  // namespace ultranorm
