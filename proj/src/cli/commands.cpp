#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "json_io.hpp"
#include "ultranorm/cli.hpp"
#include "ultranorm/extension.hpp"
#include "ultranorm/lattice.hpp"
#include "ultranorm/parallel.hpp"

namespace ultranorm::cli {

namespace {

struct Flags {
  std::string command;
  std::string config, out, lattice, norm, points, epsilon, format;
  std::optional<unsigned> max_degree, degrees;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool sections = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::get("ultranorm");
    if (!l) l = spdlog::stderr_logger_mt("ultranorm");
    const char* env = std::getenv("ULTRANORM_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return log;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ",";
    out += csv_field(fields[i]);
  }
  return out + "\n";
}

std::string approx_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

bool want_csv(const Flags& f, bool csv_default, bool csv_supported) {
  if (f.format.empty()) return csv_default;
  if (f.format == "csv") {
    if (!csv_supported) throw UsageError("command '" + f.command + "' has no csv output");
    return true;
  }
  return false;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

struct Document {
  json data;
  std::string name;
};

Document load_config(const Flags& f) {
  if (f.config.empty()) throw UsageError("--config is required");
  return {load_json_file(f.config), f.config};
}

Rational flag_rational(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects NUM/DEN, got '" + text + "'");
  }
}

// ---------------------------------------------------------------- commands

std::string cmd_orthogonalize(const Flags& f) {
  want_csv(f, false, false);
  auto doc = load_config(f);
  Node root(doc.data, "");
  root.expect_object({"field", "norm", "flag"});
  auto field = parse_field(root.at("field"));
  auto space = parse_norm(root.at("norm"), field);
  auto flag = parse_vectors(root.at("flag"), space.dim());
  auto fam = orthogonalize_flag(space, std::span<const Vector<Rational>>(flag));
  ojson w = ojson::array();
  for (const auto& x : fam.weights) w.push_back(to_json(x));
  return dump(ojson{{"vectors", to_json(fam.vectors)}, {"weights", std::move(w)}});
}

std::string cmd_quotient(const Flags& f) {
  want_csv(f, false, false);
  auto doc = load_config(f);
  Node root(doc.data, "");
  root.expect_object({"field", "norm", "map", "targets"});
  auto field = parse_field(root.at("field"));
  auto space = parse_norm(root.at("norm"), field);
  auto map = parse_rows(root.at("map"), space.dim());
  auto qn = quotient_norm(space, map);
  ojson out{{"norm", to_json(qn.target)}, {"lifts", to_json(qn.lifts.columns())}};
  if (auto t = root.find("targets")) {
    ojson rows = ojson::array();
    for (const auto& y : parse_vectors(*t, map.rows(), true)) {
      auto x = qn.lift(y);
      rows.push_back(ojson{{"target", to_json(y)}, {"norm", to_json(qn.target.norm(y))}, {"lift", to_json(x)}});
    }
    out["targets"] = std::move(rows);
  }
  return dump(out);
}

std::string cmd_dual(const Flags& f) {
  want_csv(f, false, false);
  auto doc = load_config(f);
  Node root(doc.data, "");
  root.expect_object({"field", "norm"});
  auto field = parse_field(root.at("field"));
  auto space = parse_norm(root.at("norm"), field);
  return dump(ojson{{"norm", to_json(dual_norm(space))}});
}

std::string cmd_lattice(const Flags& f) {
  want_csv(f, false, false);
  auto doc = load_config(f);
  Node root(doc.data, "");
  root.expect_object({"field", "generators", "norm"});
  if (root.has("generators") == root.has("norm")) root.error("give exactly one of 'generators' and 'norm'");
  auto field = parse_field(root.at("field"));
  if (field.kind() != FieldKind::padic) root.at("field").error("lattices need a p-adic field");
  if (auto g = root.find("generators")) {
    auto gens = parse_vectors(*g);
    auto lat = Lattice::from_generators(field, std::span<const Vector<Rational>>(gens), gens.front().size());
    ojson out{{"rank", lat.rank()}, {"basis", to_json(lat.basis().columns())}};
    if (lat.is_full()) out["norm"] = to_json(norm_from_lattice(lat));
    return dump(out);
  }
  auto space = parse_norm(root.at("norm"), field);
  auto lat = lattice_from_norm(space);
  return dump(ojson{{"rank", lat.rank()}, {"basis", to_json(lat.basis().columns())}});
}

std::vector<Vector<Rational>> random_points(const ValuedField& field, std::size_t num_vars, std::size_t count,
                                            std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); };
  std::vector<Vector<Rational>> out;
  while (out.size() < count) {
    Vector<Rational> v;
    bool nonzero = false;
    for (std::size_t i = 0; i < num_vars; ++i) {
      Rational x(pick(-12, 12), pick(1, 8));
      x.canonicalize();
      if (field.prime() != 0) x *= pow(Rational(static_cast<long>(field.prime())), pick(-2, 2));
      nonzero = nonzero || !is_zero(x);
      v.push_back(x);
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

std::string cmd_sigma_sample(const Flags& f) {
  const bool csv = want_csv(f, true, true);
  auto doc = load_config(f);
  Node root(doc.data, "");
  root.expect_object({"field", "metric", "points", "samples", "degrees"});
  auto field = parse_field(root.at("field"));
  QuotientMetric h(parse_norm(root.at("metric"), field));
  if (h.num_vars() < 2) root.at("metric").error("the metric needs at least two variables");
  unsigned degrees = 8;
  if (auto d = root.find("degrees")) degrees = static_cast<unsigned>(d->natural(1));
  if (f.degrees) degrees = *f.degrees;
  if (degrees == 0 || degrees > 64) throw UsageError("--degrees must lie in 1..64");

  std::vector<Vector<Rational>> points;
  json points_doc;
  if (!f.points.empty()) {
    if (root.has("points")) root.at("points").error("points given both in the config and via --points");
    points_doc = load_json_file(f.points);
    Node pn(points_doc, "");
    if (points_doc.is_object()) {
      pn.expect_object({"points"});
      points = parse_vectors(pn.at("points"), h.num_vars());
    } else {
      points = parse_vectors(pn, h.num_vars());
    }
  } else if (auto p = root.find("points")) {
    points = parse_vectors(*p, h.num_vars());
  } else {
    std::size_t count = 20;
    if (auto s = root.find("samples")) count = s->natural(1);
    points = random_points(field, h.num_vars(), count, f.seed);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool nonzero = false;
    for (const auto& x : points[i]) nonzero = nonzero || !is_zero(x);
    if (!nonzero) fail("zero_point", "point " + std::to_string(i) + " has all coordinates zero");
  }
  logger()->info("sigma-sample: {} points, degrees 1..{}, {} jobs", points.size(), degrees, f.jobs);

  const std::size_t np = points.size();
  auto ratios = parallel_map<Magnitude>(np * degrees, f.jobs, [&](std::size_t i) {
    return sigma(h, static_cast<unsigned>(i / np + 1), points[i % np]);
  });
  if (csv) {
    std::string out = csv_line({"degree", "point", "ratio_num", "ratio_den", "exponent"});
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      const Rational q = ratios[i].coefficient();
      out += csv_line({std::to_string(i / np + 1), point_text(points[i % np]), Integer(q.get_num()).get_str(),
                       Integer(q.get_den()).get_str(), std::to_string(ratios[i].exponent())});
    }
    return out;
  }
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < ratios.size(); ++i)
    rows.push_back(ojson{{"degree", i / np + 1}, {"point", to_json(points[i % np])}, {"ratio", to_json(ratios[i])}});
  return dump(ojson{{"rows", std::move(rows)}});
}

struct ProblemConfig {
  std::optional<ExtensionProblem> problem;
  unsigned max_degree = 8;
  std::optional<Rational> epsilon;
  bool sections = false;
};

ProblemConfig load_problem(const Flags& f, const Node& root, bool trivial_default) {
  root.expect_object({"field", "metric", "subvariety", "section", "values", "max_degree", "epsilon", "emit_sections"});
  ProblemConfig out;
  ValuedField field = ValuedField::trivial();
  if (root.has("field") || !trivial_default) field = parse_field(root.at("field"));
  QuotientMetric h(parse_norm(root.at("metric"), field));
  if (h.num_vars() < 2) root.at("metric").error("the metric needs at least two variables");
  auto y = parse_subvariety(root.at("subvariety"), h.num_vars());
  std::optional<Section> rep;
  if (auto s = root.find("section")) rep = parse_section(*s, h.num_vars());
  std::optional<std::vector<Rational>> values;
  if (auto v = root.find("values")) values = parse_vector(*v);
  if (auto d = root.find("max_degree")) out.max_degree = static_cast<unsigned>(d->natural(1));
  if (auto e = root.find("epsilon")) {
    out.epsilon = e->rational();
    if (sgn(*out.epsilon) < 0) e->error("epsilon must be non-negative");
  }
  if (auto s = root.find("emit_sections")) out.sections = s->boolean();
  if (f.max_degree) out.max_degree = *f.max_degree;
  if (!f.epsilon.empty()) {
    out.epsilon = flag_rational(f.epsilon, "--epsilon");
    if (sgn(*out.epsilon) < 0) throw UsageError("--epsilon must be non-negative");
  }
  out.sections = out.sections || f.sections;
  if (out.max_degree == 0 || out.max_degree > 64) throw UsageError("max degree must lie in 1..64");
  out.problem.emplace(std::move(h), std::move(y), std::move(rep), std::move(values));
  return out;
}

std::string section_cell(const Section& s) { return to_json(s).dump(); }

std::string cmd_extension_table(const Flags& f) {
  const bool csv = want_csv(f, true, true);
  auto doc = load_config(f);
  auto cfg = load_problem(f, Node(doc.data, ""), false);
  const auto& problem = *cfg.problem;
  logger()->info("extension-table: degrees 1..{}, {} jobs", cfg.max_degree, f.jobs);

  auto lifts = parallel_map<std::optional<Lift>>(cfg.max_degree, f.jobs, [&](std::size_t i) -> std::optional<Lift> {
    try {
      return min_norm_lift(problem, static_cast<unsigned>(i + 1));
    } catch (const PreconditionError& e) {
      if (e.code() != "degree_too_small") throw;
      return std::nullopt;
    }
  });
  DegreeRatios table;
  for (const auto& l : lifts) table.ratios.push_back(l ? std::optional<Magnitude>(l->ratio) : std::nullopt);
  auto est = lambda_estimate(table);
  auto violations = subadditivity_check(table);
  std::optional<ExtensionTheoremReport> report;
  if (cfg.epsilon) report = check_extension_theorem(table, *cfg.epsilon);
  for (const auto& v : violations) logger()->warn("sub-additivity fails at m={} n={}", v.m, v.n);

  if (csv) {
    std::vector<std::string> header{"n",         "ratio_num",     "ratio_den",       "exponent",
                                    "bound_num", "bound_den",     "bound_exponent",  "bound_degree",
                                    "bound_approx", "within_epsilon"};
    if (cfg.sections) header.push_back("section");
    std::string out = csv_line(header);
    for (unsigned n = 1; n <= cfg.max_degree; ++n) {
      std::vector<std::string> row{std::to_string(n)};
      const auto& r = table.ratios[n - 1];
      if (r) {
        Rational q = r->coefficient();
        row.insert(row.end(), {Integer(q.get_num()).get_str(), Integer(q.get_den()).get_str(),
                               std::to_string(r->exponent())});
      } else {
        row.insert(row.end(), {"", "", ""});
      }
      const auto& b = est.running_inf[n - 1];
      if (b) {
        Rational q = b->first.coefficient();
        row.insert(row.end(), {Integer(q.get_num()).get_str(), Integer(q.get_den()).get_str(),
                               std::to_string(b->first.exponent()), std::to_string(b->second),
                               approx_text(approx_log(b->first.value()) / b->second)});
      } else {
        row.insert(row.end(), {"", "", "", "", ""});
      }
      std::string within;
      if (report && report->holds[n - 1]) within = *report->holds[n - 1] ? "true" : "false";
      row.push_back(within);
      if (cfg.sections) row.push_back(lifts[n - 1] ? section_cell(lifts[n - 1]->section) : "");
      out += csv_line(row);
    }
    return out;
  }

  ojson rows = ojson::array();
  for (unsigned n = 1; n <= cfg.max_degree; ++n) {
    ojson row{{"n", n}};
    const auto& r = table.ratios[n - 1];
    row["ratio"] = r ? to_json(*r) : ojson(nullptr);
    const auto& b = est.running_inf[n - 1];
    if (b)
      row["bound"] = ojson{{"ratio", to_json(b->first)},
                           {"degree", b->second},
                           {"approx", approx_log(b->first.value()) / b->second}};
    else
      row["bound"] = nullptr;
    if (report) row["within_epsilon"] = report->holds[n - 1] ? ojson(*report->holds[n - 1]) : ojson(nullptr);
    if (cfg.sections) row["section"] = lifts[n - 1] ? to_json(lifts[n - 1]->section) : ojson(nullptr);
    rows.push_back(std::move(row));
  }
  ojson viol = ojson::array();
  for (const auto& v : violations) viol.push_back(ojson{{"m", v.m}, {"n", v.n}});
  ojson out{{"restricted_norm", to_json(problem.restricted_norm())}, {"rows", std::move(rows)},
            {"subadditivity_violations", std::move(viol)}};
  if (report) {
    out["epsilon"] = rational_text(*cfg.epsilon);
    out["n0"] = report->n0 ? ojson(*report->n0) : ojson(nullptr);
  }
  return dump(out);
}

std::string cmd_extend_trivial(const Flags& f) {
  const bool csv = want_csv(f, false, true);
  auto doc = load_config(f);
  auto cfg = load_problem(f, Node(doc.data, ""), true);
  const auto& problem = *cfg.problem;
  auto lifts = parallel_map<std::optional<LaurentLift>>(
      cfg.max_degree, f.jobs, [&](std::size_t i) -> std::optional<LaurentLift> {
        try {
          return extend_trivial_via_laurent(problem, static_cast<unsigned>(i + 1));
        } catch (const PreconditionError& e) {
          if (e.code() != "degree_too_small") throw;
          return std::nullopt;
        }
      });
  if (csv) {
    std::string out = csv_line({"n", "base_prime", "ratio_num", "ratio_den", "retained", "section"});
    for (unsigned n = 1; n <= cfg.max_degree; ++n) {
      const auto& l = lifts[n - 1];
      if (!l) {
        out += csv_line({std::to_string(n), "", "", "", "", ""});
        continue;
      }
      Rational q = l->ratio.value();
      out += csv_line({std::to_string(n), std::to_string(l->base_prime), Integer(q.get_num()).get_str(),
                       Integer(q.get_den()).get_str(), std::to_string(l->retained.size()), section_cell(l->section)});
    }
    return out;
  }
  ojson rows = ojson::array();
  for (unsigned n = 1; n <= cfg.max_degree; ++n) {
    const auto& l = lifts[n - 1];
    if (!l) {
      rows.push_back(ojson{{"n", n}, {"lift", nullptr}});
      continue;
    }
    ojson retained = ojson::array();
    for (const auto& c : l->retained) retained.push_back(rational_text(c));
    rows.push_back(ojson{{"n", n},
                         {"base_prime", l->base_prime},
                         {"ratio", rational_text(l->ratio.value())},
                         {"retained", std::move(retained)},
                         {"section", to_json(l->section)}});
  }
  return dump(ojson{{"restricted_norm", rational_text(problem.restricted_norm().value())}, {"rows", std::move(rows)}});
}

std::string cmd_lambda(const Flags& f) {
  const bool csv = want_csv(f, false, true);
  json lattice_doc, norm_doc, config_doc;
  std::optional<Node> lat_node, norm_node;
  if (!f.config.empty()) {
    if (!f.lattice.empty() || !f.norm.empty()) throw UsageError("use either --config or --lattice/--norm");
    config_doc = load_json_file(f.config);
    Node root(config_doc, "");
    root.expect_object({"lattice", "norm"});
    lat_node = root.at("lattice");
    norm_node = root.find("norm");
  } else {
    if (f.lattice.empty()) throw UsageError("--lattice is required");
    lattice_doc = load_json_file(f.lattice);
    lat_node = Node(lattice_doc, "");
    if (!f.norm.empty()) {
      norm_doc = load_json_file(f.norm);
      norm_node = Node(norm_doc, "");
    }
  }
  lat_node->expect_object({"generators", "adelic"});
  if (lat_node->has("generators") == lat_node->has("adelic"))
    lat_node->error("give exactly one of 'generators' and 'adelic'");
  std::optional<NormedLattice> nl;
  if (auto a = lat_node->find("adelic")) {
    auto space = parse_adelic(*a);
    nl = finite_unit_lattice(space);
    if (norm_node) nl->norm = parse_polyhedral(*norm_node, space.dim());
  } else {
    auto gens = parse_vectors(lat_node->at("generators"));
    const std::size_t dim = gens.front().size();
    if (!norm_node) throw UsageError("--norm is required with a generator lattice");
    nl = NormedLattice{ZLattice::from_generators(std::span<const Vector<Rational>>(gens), dim),
                       parse_polyhedral(*norm_node, dim)};
  }
  if (nl->norm.dim() != nl->lattice.dim()) norm_node->error("norm dimension differs from the lattice dimension");
  LambdaOptions opts;
  opts.jobs = f.jobs;
  auto res = compute_lambda(*nl, opts);
  if (csv)
    return csv_line({"rank", "lambda_q", "lambda_z"}) +
           csv_line({std::to_string(res.rank), rational_text(res.lambda_q), rational_text(res.lambda_z)});
  return dump(ojson{{"rank", res.rank},
                    {"lambda_q", rational_text(res.lambda_q)},
                    {"lambda_z", rational_text(res.lambda_z)},
                    {"q_basis", to_json(res.q_basis)},
                    {"z_basis", to_json(res.z_basis)}});
}

std::string basis_cell(const std::vector<Vector<Rational>>& basis) {
  std::string out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) out += " ";
    out += point_text(basis[i]);
  }
  return out;
}

std::string cmd_nakai(const Flags& f) {
  const bool csv = want_csv(f, true, true);
  auto doc = load_config(f);
  Node root(doc.data, "");
  std::optional<GradedAdelic> graded;
  unsigned max_degree = 6;
  if (root.has("pieces")) {
    root.expect_object({"pieces", "max_degree"});
    std::map<unsigned, AdelicSpace> pieces;
    for (const auto& [key, value] : root.at("pieces").entries()) {
      if (key.empty() || key.size() > 4 || key.find_first_not_of("0123456789") != std::string::npos ||
          std::stoul(key) == 0)
        value.error("piece keys must be positive degrees");
      pieces.emplace(static_cast<unsigned>(std::stoul(key)), parse_adelic(value));
    }
    if (auto d = root.find("max_degree")) max_degree = static_cast<unsigned>(d->natural(1));
    if (f.max_degree) max_degree = *f.max_degree;
    graded.emplace(std::move(pieces));
  } else {
    json recipe_only = doc.data;
    if (recipe_only.is_object() && recipe_only.contains("max_degree")) {
      max_degree = static_cast<unsigned>(root.at("max_degree").natural(1));
      recipe_only.erase("max_degree");
    }
    if (f.max_degree) max_degree = *f.max_degree;
    if (max_degree == 0 || max_degree > 32) throw UsageError("max degree must lie in 1..32");
    graded = GradedAdelic::from_recipe(parse_recipe(Node(recipe_only, "")), max_degree);
  }
  if (max_degree == 0 || max_degree > 32) throw UsageError("max degree must lie in 1..32");
  for (unsigned n = 1; n <= max_degree; ++n)
    if (!graded->has(n)) fail("missing_degree", "no piece for degree " + std::to_string(n));
  logger()->info("nakai: degrees 1..{}, {} jobs", max_degree, f.jobs);

  LambdaOptions opts;
  opts.jobs = f.jobs;
  std::vector<NakaiResult> results;
  for (unsigned n = 1; n <= max_degree; ++n) results.push_back(nakai_basis_search(*graded, n, opts));

  auto max_of = [](const std::vector<Rational>& xs) {
    Rational m = 0;
    for (const auto& x : xs)
      if (x > m) m = x;
    return m;
  };
  if (csv) {
    std::string out = csv_line({"n", "rank", "lambda_q", "lambda_z", "found", "max_archimedean_norm",
                                "max_finite_norm", "basis"});
    for (const auto& r : results) {
      out += csv_line({std::to_string(r.n), std::to_string(r.rank), rational_text(r.lambda_q),
                       rational_text(r.lambda_z), r.found ? "true" : "false",
                       r.found ? rational_text(max_of(r.archimedean_norms)) : "",
                       r.found ? rational_text(max_of(r.max_finite_norms)) : "", basis_cell(r.basis)});
    }
    return out;
  }
  ojson rows = ojson::array();
  std::vector<GradedRow> grows;
  std::optional<unsigned> first;
  bool persistent = true;
  for (const auto& r : results) {
    grows.push_back({r.n, r.rank, r.lambda_q, r.lambda_z});
    if (r.found && !first) first = r.n;
    if (first && !r.found) persistent = false;
    ojson arch = ojson::array(), fin = ojson::array();
    for (const auto& x : r.archimedean_norms) arch.push_back(rational_text(x));
    for (const auto& x : r.max_finite_norms) fin.push_back(rational_text(x));
    rows.push_back(ojson{{"n", r.n},
                         {"rank", r.rank},
                         {"lambda_q", rational_text(r.lambda_q)},
                         {"lambda_z", rational_text(r.lambda_z)},
                         {"found", r.found},
                         {"basis", to_json(r.basis)},
                         {"archimedean_norms", std::move(arch)},
                         {"max_finite_norms", std::move(fin)}});
  }
  ojson out{{"rows", std::move(rows)}, {"first_success", first ? ojson(*first) : ojson(nullptr)}};
  if (first) out["success_persists"] = persistent;
  if (auto fit = fit_lambda_decay(grows))
    out["decay_fit_approx"] =
        ojson{{"slope", fit->slope}, {"intercept", fit->intercept}, {"rate", fit->rate}, {"points", fit->points}};
  return dump(out);
}

void write_output(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + f.out + "'");
  file << text;
}

void report(std::ostream& err, const ojson& j) { err << j.dump() << "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Exact ultrametric norms, quotient metrics and adelic lattice invariants", "ultranorm"};
  app.require_subcommand(1);
  struct Spec {
    const char* name;
    const char* help;
    std::string (*fn)(const Flags&);
  };
  const Spec specs[] = {
      {"orthogonalize", "orthogonal basis for a flag", cmd_orthogonalize},
      {"quotient", "quotient norm along a surjection", cmd_quotient},
      {"dual", "dual norm", cmd_dual},
      {"lattice", "lattice <-> norm correspondence", cmd_lattice},
      {"sigma-sample", "sigma ratios at sample points", cmd_sigma_sample},
      {"extension-table", "minimal extension ratios by degree", cmd_extension_table},
      {"extend-trivial", "trivial-valuation extension via Laurent series", cmd_extend_trivial},
      {"lambda", "lambda_Q and lambda_Z of a normed lattice", cmd_lambda},
      {"nakai", "basis search across a graded family", cmd_nakai},
  };
  std::map<CLI::App*, const Spec*> dispatch;
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    dispatch[sub] = &s;
    sub->add_option("--config", f.config, "JSON configuration file");
    sub->add_option("--out", f.out, "output file (default stdout)");
    sub->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1U, 256U));
    sub->add_option("--seed", f.seed, "seed for generated samples");
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    const std::string name = s.name;
    if (name == "sigma-sample") {
      sub->add_option("--degrees", f.degrees, "largest degree");
      sub->add_option("--max-degree", f.degrees, "same as --degrees");
      sub->add_option("--points", f.points, "JSON file with points");
    }
    if (name == "extension-table" || name == "extend-trivial" || name == "nakai")
      sub->add_option("--max-degree", f.max_degree, "largest degree");
    if (name == "extension-table" || name == "extend-trivial") {
      sub->add_option("--epsilon", f.epsilon, "NUM/DEN");
      sub->add_flag("--sections", f.sections, "emit the extended sections");
    }
    if (name == "lambda") {
      sub->add_option("--lattice", f.lattice, "lattice JSON file");
      sub->add_option("--norm", f.norm, "archimedean norm JSON file");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, ojson{{"error", "usage"}, {"message", e.what()}});
    return 2;
  }

  const Spec* spec = nullptr;
  for (auto* sub : app.get_subcommands()) spec = dispatch.at(sub);
  f.command = spec->name;
  try {
    logger()->debug("running {}", f.command);
    write_output(f, spec->fn(f), out);
    return 0;
  } catch (const SchemaError& e) {
    report(err, ojson{{"error", "schema"}, {"pointer", e.pointer()}, {"message", e.what()}});
    return 2;
  } catch (const UsageError& e) {
    report(err, ojson{{"error", "usage"}, {"message", e.what()}});
    return 2;
  } catch (const PreconditionError& e) {
    report(err, ojson{{"error", "precondition"}, {"code", e.code()}, {"message", e.what()}});
    return 3;
  } catch (const std::invalid_argument& e) {
    report(err, ojson{{"error", "precondition"}, {"code", "invalid_argument"}, {"message", e.what()}});
    return 3;
  } catch (const std::domain_error& e) {
    report(err, ojson{{"error", "precondition"}, {"code", "domain_error"}, {"message", e.what()}});
    return 3;
  } catch (const std::exception& e) {
    report(err, ojson{{"error", "internal"}, {"message", e.what()}});
    return 1;
  }
}

}  // namespace ultranorm::cli
