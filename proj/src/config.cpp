#include "mplab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mplab/errors.hpp"

namespace mplab {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

cmat parse_matrix(const json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) bad(what + ": expected " + std::to_string(rows) + " rows");
  cmat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      bad(what + ": expected " + std::to_string(cols) + " columns");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

FiniteUnitaryGroup parse_group(const json& j, int n) {
  if (!j.is_object()) bad("group must be an object");
  if (j.contains("preset")) {
    const std::string p = get_or<std::string>(j, "preset", "");
    const int k = get_or<int>(j, "k", 0);
    FiniteUnitaryGroup g;
    if (p == "trivial") {
      g = trivial_group(n);
    } else if (p == "cyclic_diagonal" || p == "scalar_cyclic") {
      if (k < 1) bad("preset " + p + " needs k >= 1");
      g = p == "cyclic_diagonal" ? cyclic_diagonal(n, k) : scalar_cyclic(n, k);
    } else if (p == "dihedral_real") {
      if (k < 1) bad("preset dihedral_real needs k >= 1");
      g = dihedral_real(k);
    } else if (p == "quaternion") {
      g = quaternion_group();
    } else if (p == "generic_cyclic8") {
      g = generic_cyclic8();
    } else {
      bad("unknown group preset '" + p + "'");
    }
    if (g.dim() != n) bad("preset " + p + " acts on C^" + std::to_string(g.dim()) + ", config has n=" + std::to_string(n));
    return g;
  }
  if (!j.contains("generators")) bad("group needs 'preset' or 'generators'");
  const json& gens = j.at("generators");
  if (!gens.is_array()) bad("generators must be a list of matrices");
  std::vector<UnitaryElement> els;
  for (std::size_t i = 0; i < gens.size(); ++i)
    els.push_back(UnitaryElement::from_matrix(parse_matrix(gens[i], n, n, "generator " + std::to_string(i))));
  FiniteUnitaryGroup g = close_group(els, get_or<int>(j, "max_order", 1000), n);
  g.label = get_or<std::string>(j, "label", "generated");
  return g;
}

std::vector<cplx> parse_character(const json& j, const FiniteUnitaryGroup& g) {
  if (!j.is_object()) bad("character must be an object");
  const std::string kind = get_or<std::string>(j, "kind", "");
  if (kind == "trivial") return trivial_character(g);
  if (kind == "det_power") return det_power_character(g, get_or<int>(j, "power", 0));
  if (kind == "standard") return standard_character(g);
  if (kind == "explicit") {
    const json& v = j.contains("values") ? j.at("values") : json();
    if (!v.is_array() || static_cast<int>(v.size()) != g.order())
      bad("explicit character needs one value per group element (" + std::to_string(g.order()) + ")");
    std::vector<cplx> chi;
    for (const json& x : v) chi.push_back(parse_complex(x));
    return chi;
  }
  bad("unknown character kind '" + kind + "'");
}

ProjectionSpec parse_projection(const json& j, const FiniteUnitaryGroup& g, int index) {
  if (!j.is_object()) bad("projection must be an object");
  const std::string type = get_or<std::string>(j, "type", "");
  ProjectionSpec spec;
  spec.label = get_or<std::string>(j, "label", type + "#" + std::to_string(index));
  if (type == "isotypic") {
    if (!j.contains("character")) bad("isotypic projection needs a character");
    std::vector<cplx> chi = parse_character(j.at("character"), g);
    const int dim = static_cast<int>(std::lround(std::abs(chi[g.identity()])));
    spec.p = isotypic_projection(g, chi, dim, get_or<int>(j, "copies", 1));
  } else if (type == "identity") {
    const int size = get_or<int>(j, "size", 1);
    if (size < 1) bad("identity projection needs size >= 1");
    spec.p = GroupAlgebraMatrix::identity(g.order(), size);
  } else if (type == "explicit") {
    const int size = get_or<int>(j, "size", 1);
    const json& comps = j.contains("components") ? j.at("components") : json();
    if (size < 1 || !comps.is_array() || static_cast<int>(comps.size()) != g.order())
      bad("explicit projection needs size >= 1 and one component per group element");
    spec.p = GroupAlgebraMatrix::zero(g.order(), size);
    for (int h = 0; h < g.order(); ++h)
      spec.p.comp[h] = parse_matrix(comps[h], size, size, "component " + std::to_string(h));
    const double defect = projection_defect(g, spec.p);
    if (defect > 1e-10)
      throw Error(ErrorCode::NotProjection, spec.label + " is not a projection (defect " + std::to_string(defect) + ")");
  } else {
    bad("unknown projection type '" + type + "'");
  }
  return spec;
}

}  // namespace

cplx parse_complex(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  bad("complex values are numbers or [re, im] pairs");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  ExperimentConfig c;
  c.source = j;
  c.n = get_or<int>(j, "n", 1);
  if (c.n < 1 || c.n > 4) bad("n must be between 1 and 4");

  const json basis = j.value("basis", json::object());
  c.K = get_or<int>(basis, "K", c.K);
  c.M = get_or<int>(basis, "M", c.M);
  c.dK = get_or<int>(basis, "dK", c.dK);
  if (c.K < 2 || c.M < 0 || c.M >= c.K || c.dK < 1) bad("basis needs K >= 2, 0 <= M < K and dK >= 1");

  if (!j.contains("group")) bad("config needs a group");
  c.group = std::make_shared<const FiniteUnitaryGroup>(parse_group(j.at("group"), c.n));

  const json projs = j.value("projections", json::array());
  if (!projs.is_array() || projs.empty()) bad("config needs a non-empty projections list");
  for (std::size_t i = 0; i < projs.size(); ++i)
    c.projections.push_back(parse_projection(projs[i], *c.group, static_cast<int>(i)));

  c.quadrature = default_quadrature(c.n);
  const json quad = j.value("quadrature", json::object());
  c.quadrature.radial = get_or<int>(quad, "radial", c.quadrature.radial);
  c.quadrature.angular = get_or<int>(quad, "angular", c.quadrature.angular);
  c.quadrature.simplex = get_or<int>(quad, "simplex", c.quadrature.simplex);
  c.profile.r0 = get_or<double>(quad, "r0", c.profile.r0);
  c.profile.r1 = get_or<double>(quad, "r1", c.profile.r1);
  const std::string prof = get_or<std::string>(quad, "profile", "quintic");
  if (prof == "quintic")
    c.profile.kind = PsiProfile::Kind::Quintic;
  else if (prof == "sine")
    c.profile.kind = PsiProfile::Kind::SineRamp;
  else
    bad("profile must be 'quintic' or 'sine'");
  if (c.quadrature.radial < 1 || c.quadrature.angular < 1 || c.quadrature.simplex < 0)
    bad("quadrature orders must be positive");
  if (!(c.profile.r0 > 0.0 && c.profile.r1 > c.profile.r0)) bad("quadrature needs 0 < r0 < r1");

  const json tol = j.value("tolerances", json::object());
  c.compare_tol = get_or<double>(tol, "compare", c.compare_tol);
  c.residual_tol = get_or<double>(tol, "residual", c.residual_tol);
  c.loop_tol = get_or<double>(tol, "loop", c.loop_tol);
  if (!(c.compare_tol > 0.0 && c.residual_tol > 0.0 && c.loop_tol > 0.0)) bad("tolerances must be positive");

  const json rep = j.value("representation", json::object());
  c.representation_levels = get_or<std::vector<int>>(rep, "K", c.representation_levels);
  for (int k : c.representation_levels)
    if (k < 2) bad("representation levels must be >= 2");

  const json bott = j.value("bott", json::object());
  c.bott_radius = get_or<double>(bott, "radius", c.bott_radius);
  c.bott_density = get_or<int>(bott, "density", c.bott_density);
  c.rotation_steps = get_or<int>(bott, "rotation_steps", c.rotation_steps);
  if (!(c.bott_radius > 0.0) || c.bott_density < 1 || c.rotation_steps < 2) bad("bott settings out of range");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace mplab
