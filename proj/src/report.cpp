#include "mplab/report.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "mplab/chern.hpp"
#include "mplab/euler.hpp"
#include "mplab/fock.hpp"

namespace mplab {

using nlohmann::json;

const char* const kVersion = "0.1.0";

namespace {

std::string num(double v) { return format_number(v); }

json class_record(const ClassValue& cv) {
  return json{{"representative", cv.representative},
              {"members", cv.members},
              {"fixed_dim", cv.fixed_dim},
              {"perp_det", complex_json(cv.perp_det)},
              {"value", complex_json(cv.value)},
              {"value_coarse", complex_json(cv.coarse)}};
}

json topological_record(const TopologicalIndex& t) {
  json classes = json::array();
  for (const ClassValue& cv : t.per_class) classes.push_back(class_record(cv));
  return json{{"total", complex_json(t.total)},
              {"total_coarse", complex_json(t.total_coarse)},
              {"per_class", classes},
              {"integrality", {{"imag", t.imag}, {"distance", t.distance}, {"integral", t.integral},
                               {"rounded", t.rounded}}},
              {"p1_projection_defect", t.max_p1_defect},
              {"tolerance", {{"quadrature_relative", 1e-4}, {"imag", 1e-4}, {"integer", 1e-3}}}};
}

json analytic_record(const StableIndex& s) {
  auto one = [](const IndexResult& r, int K) {
    return json{{"K", K},
                {"kernel", r.kernel},
                {"cokernel", r.cokernel},
                {"index", r.index},
                {"even_dim", r.even_dim},
                {"odd_dim", r.odd_dim},
                {"smallest_kept", r.smallest_kept},
                {"largest_zero", r.largest_zero}};
  };
  return json{{"index", s.index()},
              {"base", one(s.base, s.K_base)},
              {"refined", one(s.refined, s.K_refined)},
              {"tolerance", {{"zero", 1e-6}, {"gap", 1e-2}}}};
}

// sum of tr P_s over a class: the character value ch_g[P]
cplx class_character(const ClassValue& cv, const GroupAlgebraMatrix& p) {
  cplx v = 0.0;
  for (int s : cv.members) v += p.comp[s].trace();
  return v;
}

int verify_representation(const ExperimentConfig& c, unsigned seed, json& results, RunOutcome& out) {
  const FiniteUnitaryGroup& g = *c.group;
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  cvec rv(2 * c.n);
  for (int k = 0; k < 2 * c.n; ++k) rv(k) = cplx(nd(rng), nd(rng));
  out.table.push_back({"K", "M", "homomorphism", "unitarity", "egorov", "equivariance", "loop"});
  std::vector<double> hom;
  bool ok = true;
  for (int K : c.representation_levels) {
    FockBasis b(c.n, K, K / 2);
    double h = homomorphism_defect(g, b), u = 0.0, e = 0.0, q = 0.0;
    FockOperator euler = build_euler(b);
    for (int i = 0; i < g.order(); ++i) {
      FockOperator r = metaplectic(g.element(i), b).op;
      spmat rr = r.matrix.adjoint() * r.matrix;
      u = std::max(u, reliable_norm(r, spmat(rr - sparse_identity(b.dim()))));
      for (int k = 0; k <= 2 * c.n; ++k) {
        cvec v = k < 2 * c.n ? cvec(cvec::Unit(2 * c.n, k)) : rv;
        e = std::max(e, egorov_residual(g.element(i), v, b));
      }
      q = std::max(q, equivariance_residual(g.element(i), euler));
    }
    FockOperator loop = loop_product(b, 32, true);
    double l = reliable_norm(loop, spmat(loop.matrix - sparse_identity(b.dim())));
    hom.push_back(h);
    results["levels"].push_back(json{{"K", K}, {"M", K / 2}, {"homomorphism", h}, {"unitarity", u},
                                      {"egorov", e}, {"equivariance", q}, {"loop", l}});
    out.table.push_back({std::to_string(K), std::to_string(K / 2), num(h), num(u), num(e), num(q), num(l)});
    if (K == c.representation_levels.back())
      ok = ok && h <= c.residual_tol && u <= c.residual_tol && e <= c.residual_tol && q <= c.residual_tol &&
           l <= c.loop_tol;
  }
  // decreasing with K, up to a roundoff floor
  const bool decreasing = hom.back() <= 1.1 * hom.front() || hom.back() < 1e-12;
  results["decreasing"] = decreasing;
  results["tolerance"] = {{"residual", c.residual_tol}, {"loop", c.loop_tol}};
  results["pass"] = ok && decreasing;
  return ok && decreasing ? 0 : 1;
}

int analytic_index_cmd(const ExperimentConfig& c, json& results, RunOutcome& out) {
  out.table.push_back({"projection", "K", "kernel", "cokernel", "index", "K_refined", "index_refined",
                       "smallest_kept", "largest_zero"});
  for (const ProjectionSpec& ps : c.projections) {
    StableIndex s = twisted_euler_index(*c.group, ps.p, FockBasis(c.n, c.K, c.M), c.dK);
    json r = analytic_record(s);
    r["projection"] = ps.label;
    results["projections"].push_back(r);
    out.table.push_back({ps.label, std::to_string(s.K_base), std::to_string(s.base.kernel),
                         std::to_string(s.base.cokernel), std::to_string(s.base.index),
                         std::to_string(s.K_refined), std::to_string(s.refined.index), num(s.base.smallest_kept),
                         num(s.base.largest_zero)});
  }
  return 0;
}

int topological_index_cmd(const ExperimentConfig& c, json& results, RunOutcome& out) {
  out.table.push_back({"projection", "class", "members", "fixed_dim", "perp_det_re", "perp_det_im", "value_re",
                       "value_im", "coarse_re", "coarse_im"});
  for (const ProjectionSpec& ps : c.projections) {
    TopologicalIndex t = topological_index(bott_map(c.group, ps.p), c.quadrature, c.profile);
    json r = topological_record(t);
    r["projection"] = ps.label;
    results["projections"].push_back(r);
    for (const ClassValue& cv : t.per_class)
      out.table.push_back({ps.label, std::to_string(cv.representative), std::to_string(cv.members.size()),
                           std::to_string(cv.fixed_dim), num(cv.perp_det.real()), num(cv.perp_det.imag()),
                           num(cv.value.real()), num(cv.value.imag()), num(cv.coarse.real()), num(cv.coarse.imag())});
    out.table.push_back({ps.label, "total", "", "", "", "", num(t.total.real()), num(t.total.imag()),
                         num(t.total_coarse.real()), num(t.total_coarse.imag())});
  }
  return 0;
}

int compare_cmd(const ExperimentConfig& c, json& results, RunOutcome& out) {
  out.table.push_back({"projection", "class", "fixed_dim", "analytic_re", "analytic_im", "topological_re",
                       "topological_im", "topological_coarse_re", "topological_coarse_im", "abs_error",
                       "tolerance", "pass"});
  bool all = true;
  for (const ProjectionSpec& ps : c.projections) {
    StableIndex s = twisted_euler_index(*c.group, ps.p, FockBasis(c.n, c.K, c.M), c.dK);
    TopologicalIndex t = topological_index(bott_map(c.group, ps.p), c.quadrature, c.profile);
    json classes = json::array();
    for (const ClassValue& cv : t.per_class) {
      const cplx expected = class_character(cv, ps.p);
      const double err = std::abs(cv.value - expected);
      const bool pass = err <= c.compare_tol;
      all = all && pass;
      json rec = class_record(cv);
      rec["analytic"] = complex_json(expected);
      rec["abs_error"] = err;
      rec["pass"] = pass;
      classes.push_back(rec);
      out.table.push_back({ps.label, std::to_string(cv.representative), std::to_string(cv.fixed_dim),
                           num(expected.real()), num(expected.imag()), num(cv.value.real()), num(cv.value.imag()),
                           num(cv.coarse.real()), num(cv.coarse.imag()), num(err), num(c.compare_tol),
                           pass ? "true" : "false"});
    }
    const double err = std::abs(t.total - double(s.index()));
    const bool pass = err <= c.compare_tol;
    all = all && pass;
    results["projections"].push_back(json{{"projection", ps.label},
                                          {"analytic", analytic_record(s)},
                                          {"topological", topological_record(t)},
                                          {"per_class", classes},
                                          {"total_abs_error", err},
                                          {"pass", pass}});
    out.table.push_back({ps.label, "total", "", std::to_string(s.index()), "0", num(t.total.real()),
                         num(t.total.imag()), num(t.total_coarse.real()), num(t.total_coarse.imag()), num(err),
                         num(c.compare_tol), pass ? "true" : "false"});
  }
  results["tolerance"] = c.compare_tol;
  results["pass"] = all;
  return all ? 0 : 1;
}

int bott_check_cmd(const ExperimentConfig& c, json& results, RunOutcome& out) {
  out.table.push_back({"projection", "kind", "angle", "certificate"});
  bool all = true;
  EquivariantTriple euler = euler_factor(*c.group, EulerScaling::None);
  for (const ProjectionSpec& ps : c.projections) {
    EllipticTriple t = bott_map(c.group, ps.p);
    EllipticCertificate cert = check_elliptic(t, c.bott_radius, c.bott_density);
    double compat = 0.0;
    for (const rvec& xi : sphere_points(t.a.real_dim(), c.bott_radius, 8))
      compat = std::max(compat, compatibility_defect(t, xi));
    RotationCurve curve = rotation_certificates(exterior_product(t, euler), c.bott_radius, c.rotation_steps,
                                                c.bott_density);
    double lowest = curve.certificates.front();
    for (double v : curve.certificates) lowest = std::min(lowest, v);
    const bool pass = cert.value > 1e-6 && compat <= 1e-10 && lowest >= 0.5 * curve.certificates.front();
    all = all && pass;
    results["projections"].push_back(json{{"projection", ps.label},
                                          {"certificate", cert.value},
                                          {"sample_points", cert.points},
                                          {"compatibility_defect", compat},
                                          {"rotation", {{"angles", curve.angles}, {"certificates", curve.certificates}}},
                                          {"pass", pass}});
    out.table.push_back({ps.label, "bott", "", num(cert.value)});
    for (std::size_t i = 0; i < curve.angles.size(); ++i)
      out.table.push_back({ps.label, "rotation", num(curve.angles[i]), num(curve.certificates[i])});
  }
  results["tolerance"] = {{"elliptic", 1e-6}, {"compatibility", 1e-10}, {"rotation_ratio", 0.5}};
  results["pass"] = all;
  return all ? 0 : 1;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string s;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      const std::string& f = row[i];
      if (f.find_first_of(",\"\n") != std::string::npos) {
        s += '"';
        for (char ch : f) s += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        s += '"';
      } else {
        s += f;
      }
    }
    s += '\n';
  }
  return s;
}

json conventions() {
  return json{
      {"units", "dimensionless"},
      {"coordinates", "C^n = R^2n with z = p + i x, xi = (x_1..x_n, p_1..p_n)"},
      {"group_action", "(g b)(z) = b(g^-1 z); (ab)_g = sum_{g1 g2 = g} a_g1 g1(b_g2)"},
      {"metaplectic", "R_g = exp(-i H) exp(i tr A / 2) with log g = B + i A"},
      {"reliable_block", "occupation total plus form degree <= K - M"},
      {"chern_form", "P exp(-dP dP / (2 pi i))"},
      {"orientation", "prod_j dp_j ^ dx_j positive on each fixed subspace"},
      {"class_value", "sum over the class of tau_s, divided by conj det(1 - s) on the fixed complement"},
      {"complex_numbers", "[re, im]"}};
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"verify-representation", "analytic-index", "topological-index", "compare",
                                          "bott-check"};
  return s;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotUnitary:
    case ErrorCode::OrderExceeded:
    case ErrorCode::NotIdempotent:
    case ErrorCode::NotProjection:
    case ErrorCode::SizeLimit:
      return 2;
    default:
      return 3;
  }
}

RunOutcome run_experiment(const std::string& sub, const ExperimentConfig& c, unsigned seed) {
  RunOutcome out;
  out.report = json{{"tool", {{"name", "mplab"}, {"version", kVersion}}},
                    {"subcommand", sub},
                    {"conventions", conventions()},
                    {"config", c.source},
                    {"group", {{"label", c.group->label}, {"order", c.group->order()}, {"n", c.n}}}};
  json results = json::object();
  try {
    if (sub == "verify-representation")
      out.exit_code = verify_representation(c, seed, results, out);
    else if (sub == "analytic-index")
      out.exit_code = analytic_index_cmd(c, results, out);
    else if (sub == "topological-index")
      out.exit_code = topological_index_cmd(c, results, out);
    else if (sub == "compare")
      out.exit_code = compare_cmd(c, results, out);
    else if (sub == "bott-check")
      out.exit_code = bott_check_cmd(c, results, out);
    else
      throw Error(ErrorCode::InvalidArgument, "unknown subcommand '" + sub + "'");
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    out.report["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
  }
  out.report["results"] = results;
  out.report["exit_code"] = out.exit_code;
  return out;
}

}  // namespace mplab
