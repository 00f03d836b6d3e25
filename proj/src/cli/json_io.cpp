#include "json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ultranorm::cli {

std::string escape_pointer_token(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

void Node::expect_object(std::initializer_list<std::string_view> allowed) const {
  if (!j_->is_object()) error("expected an object");
  for (const auto& [key, value] : j_->items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) throw SchemaError(ptr_ + "/" + escape_pointer_token(key), "unknown key '" + key + "'");
  }
}

bool Node::has(std::string_view key) const { return j_->is_object() && j_->contains(std::string(key)); }

Node Node::at(std::string_view key) const {
  if (!j_->is_object()) error("expected an object");
  auto it = j_->find(std::string(key));
  if (it == j_->end()) throw SchemaError(ptr_ + "/" + escape_pointer_token(key), "missing required key");
  return Node(*it, ptr_ + "/" + escape_pointer_token(key));
}

std::optional<Node> Node::find(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

std::vector<Node> Node::items() const {
  if (!j_->is_array()) error("expected an array");
  std::vector<Node> out;
  for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], ptr_ + "/" + std::to_string(i));
  return out;
}

std::vector<std::pair<std::string, Node>> Node::entries() const {
  if (!j_->is_object()) error("expected an object");
  std::vector<std::pair<std::string, Node>> out;
  for (const auto& [key, value] : j_->items()) out.emplace_back(key, Node(value, ptr_ + "/" + escape_pointer_token(key)));
  return out;
}

Rational Node::rational() const {
  if (j_->is_number_integer()) {
    // via string: json integers may exceed long on some platforms
    return Rational(Integer(j_->dump()));
  }
  if (!j_->is_string()) error("expected a rational string \"num/den\" or an integer");
  try {
    return parse_rational(j_->get<std::string>());
  } catch (const std::exception&) {
    error("malformed rational '" + j_->get<std::string>() + "'");
  }
}

long Node::integer() const {
  if (!j_->is_number_integer()) error("expected an integer");
  return j_->get<long>();
}

unsigned long Node::natural(unsigned long min) const {
  long v = integer();
  if (v < 0 || static_cast<unsigned long>(v) < min) error("expected an integer >= " + std::to_string(min));
  return static_cast<unsigned long>(v);
}

std::string Node::string() const {
  if (!j_->is_string()) error("expected a string");
  return j_->get<std::string>();
}

bool Node::boolean() const {
  if (!j_->is_boolean()) error("expected true or false");
  return j_->get<bool>();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SchemaError("", "malformed JSON in '" + path + "' at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

ValuedField parse_field(const Node& n) {
  n.expect_object({"type", "p"});
  const std::string type = n.at("type").string();
  if (type == "padic") {
    auto p = n.at("p").natural(2);
    if (!is_prime(p)) n.at("p").error("p must be prime");
    return ValuedField::padic(p);
  }
  if (type == "trivial") {
    if (n.has("p")) n.at("p").error("the trivial valuation takes no prime");
    return ValuedField::trivial();
  }
  n.at("type").error("field type must be 'padic' or 'trivial'");
}

Magnitude parse_magnitude(const Node& n, const ValuedField& field) {
  if (!n.raw().is_object()) {
    Rational v = n.rational();
    if (sgn(v) < 0) n.error("magnitudes are non-negative");
    return Magnitude::from_value(v, field.prime());
  }
  n.expect_object({"q", "n"});
  Rational q = n.at("q").rational();
  if (sgn(q) <= 0) n.at("q").error("q must be positive");
  long e = n.has("n") ? n.at("n").integer() : 0;
  if (field.prime() == 0) {
    if (e != 0) n.at("n").error("the trivial valuation has no uniformizer; n must be 0");
    return Magnitude::from_value(q);
  }
  return Magnitude::from_parts(q, e, field.prime());
}

Vector<Rational> parse_vector(const Node& n, std::size_t dim) {
  auto items = n.items();
  if (items.empty()) n.error("empty vector");
  if (dim != 0 && items.size() != dim) n.error("expected " + std::to_string(dim) + " entries");
  Vector<Rational> v;
  for (const auto& x : items) v.push_back(x.rational());
  return v;
}

std::vector<Vector<Rational>> parse_vectors(const Node& n, std::size_t dim, bool allow_empty) {
  auto items = n.items();
  if (items.empty() && !allow_empty) n.error("expected at least one vector");
  std::vector<Vector<Rational>> out;
  for (const auto& x : items) {
    out.push_back(parse_vector(x, dim));
    if (dim == 0) dim = out.back().size();
  }
  return out;
}

Matrix<Rational> parse_rows(const Node& n, std::size_t cols) {
  auto rows = parse_vectors(n, cols);
  return Matrix<Rational>::from_rows(std::span<const Vector<Rational>>(rows), rows.front().size());
}

NormedSpace parse_norm(const Node& n, const ValuedField& field, std::size_t dim) {
  n.expect_object({"basis", "weights"});
  auto wnodes = n.at("weights").items();
  if (wnodes.empty()) n.at("weights").error("expected at least one weight");
  if (dim != 0 && wnodes.size() != dim) n.at("weights").error("expected " + std::to_string(dim) + " weights");
  std::vector<Magnitude> weights;
  for (const auto& w : wnodes) {
    weights.push_back(parse_magnitude(w, field));
    if (weights.back().is_zero()) w.error("weights must be positive");
  }
  if (!n.has("basis")) return NormedSpace::standard(field, std::move(weights));
  auto cols = parse_vectors(n.at("basis"), weights.size());
  if (cols.size() != weights.size()) n.at("basis").error("expected one basis vector per weight");
  auto basis = Matrix<Rational>::from_columns(std::span<const Vector<Rational>>(cols), weights.size());
  return NormedSpace(field, std::move(basis), std::move(weights));
}

namespace {

Exponent parse_exponent(const Node& where, const std::string& key, std::size_t num_vars, unsigned degree) {
  Exponent e;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 6)
      where.error("monomial key must look like \"2,0,1\"");
    e.push_back(static_cast<unsigned>(std::stoul(part)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (e.size() != num_vars) where.error("monomial key needs " + std::to_string(num_vars) + " exponents");
  unsigned total = 0;
  for (auto x : e) total += x;
  if (total != degree) where.error("monomial degree differs from the section degree");
  return e;
}

}  // namespace

Section parse_section(const Node& n, std::size_t num_vars) {
  n.expect_object({"degree", "coeffs"});
  auto degree = n.at("degree").natural();
  if (degree > 64) n.at("degree").error("degree too large");
  Section s(num_vars, static_cast<unsigned>(degree));
  for (const auto& [key, value] : n.at("coeffs").entries())
    s.set(parse_exponent(value, key, num_vars, static_cast<unsigned>(degree)), value.rational());
  return s;
}

Subvariety parse_subvariety(const Node& n, std::size_t num_vars) {
  n.expect_object({"points", "linear"});
  if (n.has("points") == n.has("linear")) n.error("give exactly one of 'points' and 'linear'");
  if (n.has("points")) return Subvariety::points(parse_vectors(n.at("points"), num_vars));
  return Subvariety::linear(parse_vectors(n.at("linear"), num_vars));
}

PolyhedralNorm parse_polyhedral(const Node& n, std::size_t dim) {
  n.expect_object({"type", "dim", "scale", "functionals", "quotient"});
  const std::string type = n.at("type").string();
  std::optional<Matrix<Rational>> q;
  if (auto qn = n.find("quotient")) q = parse_rows(*qn);
  std::size_t src = q ? q->cols() : dim;
  if (auto d = n.find("dim")) {
    auto v = d->natural(1);
    if (src != 0 && v != src) d->error("dim disagrees with the surrounding data");
    src = v;
  }
  if (q && dim != 0 && q->rows() != dim) n.at("quotient").error("quotient has the wrong number of rows");
  PolyhedralNorm base = [&] {
    if (type == "max_abs") {
      if (n.has("scale")) n.at("scale").error("max_abs takes no scale");
      return PolyhedralNorm::max_abs(parse_rows(n.at("functionals"), src));
    }
    if (n.has("functionals")) n.at("functionals").error("only max_abs takes functionals");
    if (src == 0) n.error("dimension unknown; add 'dim'");
    Rational c = n.has("scale") ? n.at("scale").rational() : Rational(1);
    if (sgn(c) <= 0) n.at("scale").error("scale must be positive");
    if (type == "sup") return PolyhedralNorm::scaled_sup(src, c);
    if (type == "l1") {
      if (src > 16) n.error("l1 norms are limited to dimension 16");
      return PolyhedralNorm::scaled_l1(src, c);
    }
    n.at("type").error("norm type must be 'sup', 'l1' or 'max_abs'");
  }();
  return q ? base.quotient(*q) : base;
}

AdelicSpace parse_adelic(const Node& n) {
  n.expect_object({"dim", "finite", "archimedean"});
  std::size_t dim = n.at("dim").natural(1);
  std::map<unsigned long, NormedSpace> finite;
  if (auto f = n.find("finite")) {
    for (const auto& [key, value] : f->entries()) {
      unsigned long p = 0;
      if (key.empty() || key.size() > 9 || key.find_first_not_of("0123456789") != std::string::npos ||
          !is_prime(p = std::stoul(key)))
        value.error("keys of 'finite' must be primes");
      finite.emplace(p, parse_norm(value, ValuedField::padic(p), dim));
    }
  }
  PolyhedralNorm arch =
      n.has("archimedean") ? parse_polyhedral(n.at("archimedean"), dim) : PolyhedralNorm::scaled_sup(dim, 1);
  if (arch.dim() != dim) n.at("archimedean").error("archimedean norm has the wrong dimension");
  return AdelicSpace(dim, std::move(finite), std::move(arch));
}

GradedRecipe parse_recipe(const Node& n) {
  n.expect_object({"m", "finite", "archimedean"});
  GradedRecipe r;
  r.m = n.has("m") ? n.at("m").natural(1) : 1;
  if (r.m > 8) n.at("m").error("m must be at most 8");
  if (auto f = n.find("finite")) {
    for (const auto& [key, value] : f->entries()) {
      unsigned long p = 0;
      if (key.empty() || key.size() > 9 || key.find_first_not_of("0123456789") != std::string::npos ||
          !is_prime(p = std::stoul(key)))
        value.error("keys of 'finite' must be primes");
      std::vector<Rational> w;
      for (const auto& x : value.items()) {
        w.push_back(x.rational());
        if (sgn(w.back()) <= 0) x.error("weights must be positive");
      }
      if (w.size() != r.m + 1) value.error("expected m + 1 variable weights");
      r.finite_weights.emplace(p, std::move(w));
    }
  }
  if (auto a = n.find("archimedean")) {
    a->expect_object({"type", "scale", "decay"});
    const std::string type = a->at("type").string();
    if (type == "sup")
      r.kind = ArchimedeanKind::sup;
    else if (type == "l1")
      r.kind = ArchimedeanKind::l1;
    else
      a->at("type").error("archimedean type must be 'sup' or 'l1'");
    if (auto s = a->find("scale")) r.scale = s->rational();
    if (auto d = a->find("decay")) r.decay = d->rational();
    if (sgn(r.scale) <= 0) a->at("scale").error("scale must be positive");
    if (sgn(r.decay) <= 0) a->at("decay").error("decay must be positive");
  }
  return r;
}

std::string rational_text(const Rational& x) { return to_string(x); }

ojson to_json(const Rational& x) { return rational_text(x); }

ojson to_json(const Magnitude& m) {
  if (m.is_zero()) return ojson{{"q", "0/1"}, {"n", 0}};
  return ojson{{"q", rational_text(m.coefficient())}, {"n", m.exponent()}};
}

ojson to_json(const Vector<Rational>& v) {
  ojson out = ojson::array();
  for (const auto& x : v) out.push_back(rational_text(x));
  return out;
}

ojson to_json(const std::vector<Vector<Rational>>& vs) {
  ojson out = ojson::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

ojson to_json(const NormedSpace& space) {
  ojson w = ojson::array();
  for (const auto& x : space.weights()) w.push_back(to_json(x));
  return ojson{{"basis", to_json(space.basis().columns())}, {"weights", std::move(w)}};
}

ojson to_json(const Section& s) {
  ojson coeffs = ojson::object();
  for (const auto& [e, c] : s.coefficients()) coeffs[to_string(e)] = rational_text(c);
  return ojson{{"degree", s.degree()}, {"coeffs", std::move(coeffs)}};
}

std::string point_text(const Vector<Rational>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ":";
    out += rational_text(v[i]);
  }
  return out + "]";
}

double approx_log(const Rational& x) {
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(mn / md) + static_cast<double>(en - ed) * std::log(2.0);
}

}  // namespace ultranorm::cli
