#include "mplab/group_core.hpp"

#include <deque>

#include "mplab/errors.hpp"

namespace mplab {

UnitaryElement UnitaryElement::from_matrix(const cmat& g, double tol) {
  if (g.rows() != g.cols() || g.rows() == 0)
    throw Error(ErrorCode::NotUnitary, "matrix is not square");
  double defect = max_abs(g.adjoint() * g - cmat::Identity(g.rows(), g.cols()));
  if (defect > tol)
    throw Error(ErrorCode::NotUnitary, "|g*g - I| = " + std::to_string(defect));
  return UnitaryElement(g);
}

rmat real_action(const cmat& g) {
  const int n = static_cast<int>(g.rows());
  rmat u = g.real(), v = g.imag();
  rmat s(2 * n, 2 * n);
  s << u, v, -v, u;
  return s;
}

int FiniteUnitaryGroup::find(const cmat& g, double tol) const {
  for (int i = 0; i < order(); ++i)
    if (max_abs(elements_[i] - g) <= tol) return i;
  return -1;
}

bool FiniteUnitaryGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

FiniteUnitaryGroup close_group(const std::vector<UnitaryElement>& gens, int max_order, int dim) {
  FiniteUnitaryGroup grp;
  grp.dim_ = gens.empty() ? dim : gens.front().dim();
  if (grp.dim_ <= 0) throw Error(ErrorCode::InvalidArgument, "group dimension unknown");
  for (const auto& g : gens)
    if (g.dim() != grp.dim_) throw Error(ErrorCode::InvalidArgument, "generator sizes differ");

  grp.elements_.push_back(cmat::Identity(grp.dim_, grp.dim_));
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      cmat y = grp.elements_[x] * g.matrix();
      if (grp.find(y) >= 0) continue;
      if (grp.order() >= max_order)
        throw Error(ErrorCode::OrderExceeded,
                    "closure exceeds max_order = " + std::to_string(max_order));
      grp.elements_.push_back(y);
      queue.push_back(grp.order() - 1);
    }
  }

  const int m = grp.order();
  grp.table_.assign(m * m, -1);
  grp.inverse_.assign(m, -1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int c = grp.find(grp.elements_[a] * grp.elements_[b]);
      if (c < 0) throw Error(ErrorCode::InvalidArgument, "closure not multiplicatively closed");
      grp.table_[a * m + b] = c;
      if (c == 0) grp.inverse_[a] = b;
    }
  for (const auto& e : grp.elements_) grp.real_.push_back(real_action(e));
  return grp;
}

FixedSubspace fixed_subspace(const cmat& s, double tol) {
  const int n = static_cast<int>(s.rows());
  cmat d = s - cmat::Identity(n, n);
  Eigen::JacobiSVD<cmat> svd(d, Eigen::ComputeFullV);
  std::vector<int> ker, rest;
  for (int i = 0; i < n; ++i) (svd.singularValues()(i) <= tol ? ker : rest).push_back(i);
  FixedSubspace f;
  f.basis.resize(n, static_cast<int>(ker.size()));
  f.complement.resize(n, static_cast<int>(rest.size()));
  for (size_t i = 0; i < ker.size(); ++i) f.basis.col(i) = svd.matrixV().col(ker[i]);
  for (size_t i = 0; i < rest.size(); ++i) f.complement.col(i) = svd.matrixV().col(rest[i]);
  if (rest.empty()) {
    f.perp_det = 1.0;
  } else {
    cmat restricted = f.complement.adjoint() * (-d) * f.complement;
    f.perp_det = restricted.determinant();
  }
  return f;
}

std::vector<ConjugacyClass> conjugacy_classes(const FiniteUnitaryGroup& g) {
  const int m = g.order();
  std::vector<int> assigned(m, -1);
  std::vector<ConjugacyClass> classes;
  for (int s = 0; s < m; ++s) {
    if (assigned[s] >= 0) continue;
    ConjugacyClass c;
    c.representative = s;
    for (int h = 0; h < m; ++h) {
      int t = g.multiply(g.multiply(h, s), g.inverse(h));
      if (assigned[t] < 0) {
        assigned[t] = static_cast<int>(classes.size());
        c.members.push_back(t);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    c.fixed = fixed_subspace(g.element(s));
    classes.push_back(std::move(c));
  }
  return classes;
}

GroupAlgebraMatrix GroupAlgebraMatrix::zero(int order, int size) {
  return {size, std::vector<cmat>(order, cmat::Zero(size, size))};
}

GroupAlgebraMatrix GroupAlgebraMatrix::identity(int order, int size) {
  GroupAlgebraMatrix p = zero(order, size);
  p.comp[0] = cmat::Identity(size, size);
  return p;
}

GroupAlgebraMatrix multiply(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& a,
                            const GroupAlgebraMatrix& b) {
  GroupAlgebraMatrix c = GroupAlgebraMatrix::zero(g.order(), a.size);
  for (int g1 = 0; g1 < g.order(); ++g1)
    for (int g2 = 0; g2 < g.order(); ++g2) c.comp[g.multiply(g1, g2)] += a.comp[g1] * b.comp[g2];
  return c;
}

GroupAlgebraMatrix adjoint(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& a) {
  GroupAlgebraMatrix c = GroupAlgebraMatrix::zero(g.order(), a.size);
  for (int h = 0; h < g.order(); ++h) c.comp[h] = a.comp[g.inverse(h)].adjoint();
  return c;
}

double projection_defect(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p) {
  GroupAlgebraMatrix sq = multiply(g, p, p);
  GroupAlgebraMatrix adj = adjoint(g, p);
  double d = 0.0;
  for (int h = 0; h < g.order(); ++h)
    d = std::max({d, max_abs(sq.comp[h] - p.comp[h]), max_abs(adj.comp[h] - p.comp[h])});
  return d;
}

GroupAlgebraMatrix isotypic_projection(const FiniteUnitaryGroup& g,
                                       const std::vector<cplx>& character, int dim,
                                       int n_copies) {
  if (static_cast<int>(character.size()) != g.order())
    throw Error(ErrorCode::InvalidArgument, "character length differs from group order");
  GroupAlgebraMatrix p = GroupAlgebraMatrix::zero(g.order(), n_copies);
  const double scale = static_cast<double>(dim) / g.order();
  for (int h = 0; h < g.order(); ++h)
    p.comp[h] = scale * std::conj(character[h]) * cmat::Identity(n_copies, n_copies);
  double defect = projection_defect(g, p);
  if (defect > 1e-10)
    throw Error(ErrorCode::NotIdempotent, "isotypic element defect " + std::to_string(defect));
  return p;
}

std::vector<cplx> trivial_character(const FiniteUnitaryGroup& g) {
  return std::vector<cplx>(g.order(), 1.0);
}

std::vector<cplx> det_power_character(const FiniteUnitaryGroup& g, int power) {
  std::vector<cplx> chi;
  for (const auto& e : g.elements()) chi.push_back(std::pow(e.determinant(), power));
  return chi;
}

std::vector<cplx> standard_character(const FiniteUnitaryGroup& g) {
  std::vector<cplx> chi;
  for (const auto& e : g.elements()) chi.push_back(e.trace());
  return chi;
}

namespace {
UnitaryElement unit(const cmat& m) { return UnitaryElement::from_matrix(m, 1e-12); }
cplx root_of_unity(int k, int j = 1) { return std::polar(1.0, 2.0 * kPi * j / k); }
}  // namespace

FiniteUnitaryGroup trivial_group(int n) {
  FiniteUnitaryGroup g = close_group({}, 1, n);
  g.label = "trivial(n=" + std::to_string(n) + ")";
  return g;
}

FiniteUnitaryGroup cyclic_diagonal(int n, int k) {
  cmat gen = cmat::Identity(n, n);
  gen(0, 0) = root_of_unity(k);
  FiniteUnitaryGroup g = close_group({unit(gen)}, k, n);
  g.label = "cyclic_diagonal(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
  return g;
}

FiniteUnitaryGroup scalar_cyclic(int n, int k) {
  cmat gen = root_of_unity(k) * cmat::Identity(n, n);
  FiniteUnitaryGroup g = close_group({unit(gen)}, k, n);
  g.label = "scalar_cyclic(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
  return g;
}

FiniteUnitaryGroup dihedral_real(int k) {
  double t = 2.0 * kPi / k;
  cmat rot(2, 2), ref(2, 2);
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  ref << 1.0, 0.0, 0.0, -1.0;
  FiniteUnitaryGroup g = close_group({unit(rot), unit(ref)}, 2 * k, 2);
  g.label = "dihedral_real(k=" + std::to_string(k) + ")";
  return g;
}

FiniteUnitaryGroup quaternion_group() {
  cmat qi(2, 2), qj(2, 2);
  qi << kI, 0.0, 0.0, -kI;
  qj << 0.0, 1.0, -1.0, 0.0;
  FiniteUnitaryGroup g = close_group({unit(qi), unit(qj)}, 8, 2);
  g.label = "quaternion";
  return g;
}

FiniteUnitaryGroup generic_cyclic8() {
  const double a = 0.4, phi = 0.7;
  cmat v(2, 2);
  v << std::cos(a), -std::polar(std::sin(a), phi), std::polar(std::sin(a), -phi), std::cos(a);
  cmat d = cmat::Zero(2, 2);
  d(0, 0) = root_of_unity(8, 1);
  d(1, 1) = root_of_unity(8, 3);
  FiniteUnitaryGroup g = close_group({unit(v * d * v.adjoint())}, 8, 2);
  g.label = "generic_cyclic8";
  return g;
}

}  // namespace mplab
