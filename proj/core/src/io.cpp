#include "npspace/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "npspace/catalog.hpp"
#include "npspace/errors.hpp"

namespace npspace::io {

namespace {

constexpr std::string_view kCatalogPrefix = "catalog:";

json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] pairs of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    throw ParseError("basis matrix must have " + std::to_string(d) + " rows");
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != d) {
      throw ParseError("basis matrix row must have " + std::to_string(d) + " entries");
    }
    for (int k = 0; k < d; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("coordinate vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t t = 0; t < j.size(); ++t) v(static_cast<Eigen::Index>(t)) = complex_from_json(j[t]);
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index t = 0; t < v.size(); ++t) out.push_back(complex_to_json(v(t)));
  return out;
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

SpacePtr named_space(std::string_view name) {
  if (name == "C" || name == "M1") return scalar_space();
  if (name.size() >= 2 && (name[0] == 'M' || name[0] == 'D')) {
    int d = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), d);
    if (ec == std::errc() && ptr == name.data() + name.size() && d >= 1 && d <= 16) {
      return name[0] == 'M' ? full_matrix_space(d) : diagonal_space(d);
    }
  }
  throw ParseError("unknown built-in space '" + std::string(name) + "'");
}

SpacePtr space_reference(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_object()) return space_from_json(j);
  if (j.is_string()) {
    const std::string ref = j.get<std::string>();
    if (ref.starts_with(kCatalogPrefix)) return named_space(std::string_view(ref).substr(kCatalogPrefix.size()));
    return space_from_json(read_json_file(base_dir / ref));
  }
  throw ParseError("space reference must be an object, a path or catalog:<name>");
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_double17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json space_to_json(const OperatorSpace& space) {
  json basis = json::array();
  for (const auto& b : space.basis()) basis.push_back(matrix_to_json(b));
  return {{"label", space.label()}, {"ambient_dim", space.ambient_dim()}, {"basis", std::move(basis)}};
}

SpacePtr space_from_json(const json& j) {
  const int d = required<int>(j, "ambient_dim");
  if (d < 1) throw ParseError("ambient_dim must be positive");
  const json& basis_json = j.contains("basis") ? j.at("basis") : throw ParseError("missing field 'basis'");
  if (!basis_json.is_array()) throw ParseError("'basis' must be an array");
  std::vector<Matrix> basis;
  for (const auto& m : basis_json) basis.push_back(matrix_from_json(m, d));
  const std::string label = j.contains("label") ? required<std::string>(j, "label") : std::string();
  return make_space(d, std::move(basis), label);
}

json map_to_json(const LinearMapRep& phi) {
  json action = json::array();
  for (Eigen::Index t = 0; t < phi.coeff().cols(); ++t) action.push_back(vector_to_json(phi.coeff().col(t)));
  return {{"label", phi.label()},
          {"domain", space_to_json(*phi.domain())},
          {"codomain", space_to_json(*phi.codomain())},
          {"action", std::move(action)}};
}

MapPtr map_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("map file must hold a JSON object");
  for (const char* key : {"domain", "codomain", "action"}) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  }
  SpacePtr domain = space_reference(j.at("domain"), base_dir);
  SpacePtr codomain = space_reference(j.at("codomain"), base_dir);
  const json& action_json = j.at("action");
  if (!action_json.is_array()) throw ParseError("'action' must be an array");
  std::vector<Vector> action;
  for (const auto& a : action_json) action.push_back(vector_from_json(a));
  const std::string label = j.contains("label") ? required<std::string>(j, "label") : std::string("map");
  return make_map(std::move(domain), std::move(codomain), action, label);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

MapPtr load_map(std::string_view spec) {
  if (spec.starts_with(kCatalogPrefix)) return find_entry(spec.substr(kCatalogPrefix.size())).map;
  const std::filesystem::path path(spec);
  return map_from_json(read_json_file(path), path.parent_path());
}

SpacePtr load_space(std::string_view spec) {
  if (spec.starts_with(kCatalogPrefix)) return named_space(spec.substr(kCatalogPrefix.size()));
  return space_from_json(read_json_file(std::filesystem::path(spec)));
}

json witness_to_json(const SpaceElement& x, double value) {
  const int n = x.level();
  json coords = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int k = 0; k < n; ++k) row.push_back(vector_to_json(x.entry(i, k)));
    coords.push_back(std::move(row));
  }
  return {{"level", n}, {"coords", std::move(coords)}, {"value", value}};
}

SpaceElement witness_from_json(const json& j, const SpacePtr& space) {
  const int n = required<int>(j, "level");
  if (n < 1) throw ParseError("witness level must be >= 1");
  const json& coords = j.at("coords");
  if (!coords.is_array() || static_cast<int>(coords.size()) != n) throw ParseError("witness coords must be n x n");
  Matrix c(space->dim(), n * n);
  for (int i = 0; i < n; ++i) {
    if (!coords[i].is_array() || static_cast<int>(coords[i].size()) != n) {
      throw ParseError("witness coords must be n x n");
    }
    for (int k = 0; k < n; ++k) {
      const Vector v = vector_from_json(coords[i][k]);
      if (v.size() != space->dim()) throw ParseError("witness entry has wrong coordinate count");
      c.col(i * n + k) = v;
    }
  }
  return SpaceElement(space, n, std::move(c));
}

json bracket_to_json(const NormBracket& b) {
  return {{"lo", b.lo},
          {"hi", finite_or_null(b.hi)},
          {"lo_source", std::string(to_string(b.lo_source))},
          {"hi_source", std::string(to_string(b.hi_source))}};
}

json table_to_json(const LevelNormTable& table) {
  json entries = json::array();
  for (const auto& e : table.entries) {
    json row = bracket_to_json(e.bracket);
    row["n"] = e.level;
    row["optimizer_value"] = e.optimizer_value;
    entries.push_back(std::move(row));
  }
  json out = {{"label", table.label}, {"entries", std::move(entries)}};
  out["stabilization_level"] = table.stabilization_level ? json(*table.stabilization_level) : json(nullptr);
  out["smith_level"] = table.smith_level ? json(*table.smith_level) : json(nullptr);
  out["uniform_hi"] = table.uniform_hi ? finite_or_null(*table.uniform_hi) : json(nullptr);
  out["full_codomain"] = table.full_codomain;
  return out;
}

std::string table_to_csv(const LevelNormTable& table) {
  std::ostringstream os;
  os << "n,lo,hi,lo_source,hi_source\n";
  for (const auto& e : table.entries) {
    os << e.level << ',' << format_double17(e.bracket.lo) << ',' << format_double17(e.bracket.hi) << ','
       << to_string(e.bracket.lo_source) << ',' << to_string(e.bracket.hi_source) << '\n';
  }
  return os.str();
}

json np_result_to_json(const NpResult& r) {
  json out = {{"p", r.p},
              {"lo", r.bracket.lo},
              {"hi", finite_or_null(r.bracket.hi)},
              {"verdict", std::string(to_string(r.verdict))},
              {"K", r.truncation},
              {"tail", json::array({r.tail_lo, finite_or_null(r.tail_hi)})},
              {"closed_form", r.closed_form == ClosedForm::none ? json(nullptr)
                                                                : json(std::string(to_string(r.closed_form)))}};
  if (r.divergence_proof) out["divergence_proof"] = *r.divergence_proof;
  return out;
}

json index_to_json(const IndexEstimate& e) {
  return {{"r_hat", e.r_hat},
          {"alpha_hat", e.alpha_hat},
          {"fit_window", json::array({e.fit_first, e.fit_last})},
          {"residual", e.residual},
          {"stabilized", e.stabilized}};
}

json axiom_report_to_json(const AxiomReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"trials", c.trials},
                      {"failures", c.failures},
                      {"worst_violation", c.worst_violation}});
  }
  return {{"space", r.space_label}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

json cross_report_to_json(const CrossReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    json row = {{"n", l.level},
                {"brute_lo", l.brute_lo},
                {"table_lo", l.table_lo},
                {"table_hi", finite_or_null(l.table_hi)},
                {"upper_ok", l.upper_ok},
                {"lower_ok", l.lower_ok}};
    row["witness"] = l.witness ? witness_to_json(*l.witness, l.brute_lo) : json(nullptr);
    levels.push_back(std::move(row));
  }
  return {{"label", r.label}, {"passed", r.passed()}, {"levels", std::move(levels)}};
}

json inclusion_to_json(const InclusionReport& r) {
  json out = {{"p", np_result_to_json(r.at_p)},
              {"q", np_result_to_json(r.at_q)},
              {"slack", r.slack},
              {"bracket_ok", r.bracket_ok},
              {"passed", r.passed()}};
  out["value_ok"] = r.value_ok ? json(*r.value_ok) : json(nullptr);
  return out;
}

}  // namespace npspace::io
