#pragma once

#include <json.hpp>

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ultranorm/adelic.hpp"
#include "ultranorm/metric.hpp"
#include "ultranorm/normed_space.hpp"
#include "ultranorm/polyhedral.hpp"
#include "ultranorm/sections.hpp"

namespace ultranorm::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

/// Input does not match the documented schema. `pointer` is a JSON pointer
/// into the offending document ("" = the document itself).
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : std::runtime_error(message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

/// Read-only view of a JSON value that remembers where it sits.
class Node {
 public:
  Node(const json& j, std::string pointer) : j_(&j), ptr_(std::move(pointer)) {}

  const json& raw() const { return *j_; }
  const std::string& pointer() const { return ptr_; }
  [[noreturn]] void error(const std::string& message) const { throw SchemaError(ptr_, message); }

  /// Must be an object whose keys all appear in `allowed`.
  void expect_object(std::initializer_list<std::string_view> allowed) const;
  bool has(std::string_view key) const;
  Node at(std::string_view key) const;
  std::optional<Node> find(std::string_view key) const;
  std::vector<Node> items() const;  // array elements
  std::vector<std::pair<std::string, Node>> entries() const;  // object members, key order

  Rational rational() const;
  long integer() const;
  unsigned long natural(unsigned long min = 0) const;
  std::string string() const;
  bool boolean() const;

 private:
  const json* j_;
  std::string ptr_;
};

json load_json_file(const std::string& path);
std::string escape_pointer_token(std::string_view token);

// Domain parsing. `dim` of 0 means "infer from the data".
ValuedField parse_field(const Node& n);
Magnitude parse_magnitude(const Node& n, const ValuedField& field);
Vector<Rational> parse_vector(const Node& n, std::size_t dim = 0);
std::vector<Vector<Rational>> parse_vectors(const Node& n, std::size_t dim = 0, bool allow_empty = false);
Matrix<Rational> parse_rows(const Node& n, std::size_t cols = 0);
NormedSpace parse_norm(const Node& n, const ValuedField& field, std::size_t dim = 0);
Section parse_section(const Node& n, std::size_t num_vars);
Subvariety parse_subvariety(const Node& n, std::size_t num_vars);
PolyhedralNorm parse_polyhedral(const Node& n, std::size_t dim = 0);
AdelicSpace parse_adelic(const Node& n);
GradedRecipe parse_recipe(const Node& n);

// Output.
std::string rational_text(const Rational& x);
ojson to_json(const Rational& x);
ojson to_json(const Magnitude& m);
ojson to_json(const Vector<Rational>& v);
ojson to_json(const std::vector<Vector<Rational>>& vs);
ojson to_json(const NormedSpace& space);
ojson to_json(const Section& s);
/// "[a:b:c]" with exact rationals.
std::string point_text(const Vector<Rational>& v);
/// Approximate natural log of a positive rational.
double approx_log(const Rational& x);

}  // namespace ultranorm::cli
