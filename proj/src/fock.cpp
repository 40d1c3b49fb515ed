#include "mplab/fock.hpp"

#include <Eigen/Eigenvalues>

#include "mplab/errors.hpp"
#include "mplab/exterior.hpp"

namespace mplab {

namespace {
constexpr long kMaxFockDim = 1L << 20;
}

FockBasis::FockBasis(int n_, int K_, int M_) : n(n_), K(K_), M(M_) {
  if (n < 1 || K < 2 || M < 0 || M >= K)
    throw Error(ErrorCode::InvalidArgument, "need n >= 1, K >= 2, 0 <= M < K");
  long d = 1;
  for (int j = 0; j < n; ++j) {
    d *= K;
    if (d > kMaxFockDim) throw Error(ErrorCode::SizeLimit, "K^n exceeds the size guard");
  }
  dim_ = static_cast<int>(d);
  total_.resize(dim_);
  for (int i = 0; i < dim_; ++i) {
    int s = 0;
    for (int r = i; r > 0; r /= K) s += r % K;
    total_[i] = s;
  }
}

std::vector<int> FockBasis::occupation(int idx) const {
  std::vector<int> occ(n);
  for (int j = n - 1; j >= 0; --j) {
    occ[j] = idx % K;
    idx /= K;
  }
  return occ;
}

int FockBasis::index(const std::vector<int>& occ) const {
  int idx = 0;
  for (int j = 0; j < n; ++j) idx = idx * K + occ[j];
  return idx;
}

int FockOperator::level(int row) const {
  int fock = row / (form_dim * aux_dim);
  int lvl = basis.total(fock);
  if (form_dim > 1) lvl += form_degree(static_cast<unsigned>(form_mask(row)));
  return lvl;
}

std::vector<int> FockOperator::reliable_indices() const {
  std::vector<int> idx;
  for (int r = 0; r < dim(); ++r)
    if (level(r) <= basis.reliable_level()) idx.push_back(r);
  return idx;
}

double reliable_norm(const FockOperator& like, const spmat& x) {
  double s = 0.0;
  for (int c : like.reliable_indices())
    for (spmat::InnerIterator it(x, c); it; ++it) s += std::norm(it.value());
  return std::sqrt(s);
}

double reliable_norm(const FockOperator& x) { return reliable_norm(x, x.matrix); }

spmat annihilation(const FockBasis& b, int j) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int i = 0; i < b.dim(); ++i) {
    auto occ = b.occupation(i);
    if (occ[j] == 0) continue;
    double amp = std::sqrt(static_cast<double>(occ[j]));
    occ[j] -= 1;
    trip.emplace_back(b.index(occ), i, amp);
  }
  spmat a(b.dim(), b.dim());
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

spmat position_op(const FockBasis& b, int j) {
  spmat a = annihilation(b, j);
  spmat ad = a.adjoint();
  return (a + ad) * cplx(1.0 / std::sqrt(2.0));
}

spmat momentum_op(const FockBasis& b, int j) {
  spmat a = annihilation(b, j);
  spmat ad = a.adjoint();
  return (a - ad) * cplx(0.0, -1.0 / std::sqrt(2.0));
}

spmat linear_op(const FockBasis& b, const cvec& v) {
  spmat out(b.dim(), b.dim());
  for (int j = 0; j < b.n; ++j) {
    if (v(j) != cplx(0.0)) out += position_op(b, j) * v(j);
    if (v(b.n + j) != cplx(0.0)) out += momentum_op(b, j) * v(b.n + j);
  }
  return out;
}

LogResult unitary_log(const cmat& g) {
  const int n = static_cast<int>(g.rows());
  Eigen::ComplexSchur<cmat> schur(g);
  const cmat& u = schur.matrixU();
  cvec theta(n);
  LogResult res;
  for (int j = 0; j < n; ++j) {
    double t = std::arg(schur.matrixT()(j, j));
    if (std::abs(t) > kPi - 1e-6) res.branch_warning = true;
    theta(j) = kI * t;
  }
  cmat x = u * theta.asDiagonal() * u.adjoint();
  rmat a = x.imag(), bm = x.real();
  res.h.A = 0.5 * (a + a.transpose());
  res.h.B = 0.5 * (bm - bm.transpose());
  return res;
}

spmat weyl_quantize_quadratic(const QuadraticHamiltonian& h, const FockBasis& b) {
  const int n = b.n;
  rmat mq(2 * n, 2 * n);
  mq << h.A, -h.B, h.B, h.A;
  std::vector<spmat> xi;
  for (int j = 0; j < n; ++j) xi.push_back(position_op(b, j));
  for (int j = 0; j < n; ++j) xi.push_back(momentum_op(b, j));
  spmat out(b.dim(), b.dim());
  for (int j = 0; j < 2 * n; ++j)
    for (int k = 0; k < 2 * n; ++k)
      if (mq(j, k) != 0.0) out += (xi[j] * xi[k]) * cplx(0.5 * mq(j, k));
  spmat adj = out.adjoint();
  out = (out + adj) * cplx(0.5);
  out.prune([](int, int, const cplx& v) { return std::abs(v) > 1e-13; });
  return out;
}

Metaplectic metaplectic(const cmat& g, const FockBasis& b) {
  if (g.rows() != b.n) throw Error(ErrorCode::InvalidArgument, "group element size differs from n");
  UnitaryElement::from_matrix(g, 1e-9);
  LogResult lg = unitary_log(g);
  spmat hh = weyl_quantize_quadratic(lg.h, b);
  cplx phase = std::polar(1.0, 0.5 * lg.h.A.trace());
  spmat r = sparse_hermitian_function(hh, [](double l) { return std::polar(1.0, -l); });
  if (hh.nonZeros() == 0) r = sparse_identity(b.dim());
  Metaplectic out{FockOperator{b, 1, 1, r * phase}, lg.branch_warning};
  return out;
}

FockOperator form_representation(const cmat& g, const FockBasis& b) {
  Metaplectic r = metaplectic(g, b);
  spmat lam = to_sparse(exterior_power(g.conjugate()), 1e-15);
  return FockOperator{b, 1 << b.n, 1, kron(r.op.matrix, lam)};
}

double egorov_residual(const cmat& g, const cvec& v, const FockBasis& b) {
  spmat r = metaplectic(g, b).op.matrix;
  spmat rd = r.adjoint();
  cvec sv = real_action(g).cast<cplx>() * v;
  spmat lhs = r * linear_op(b, v) * rd;
  spmat diff = lhs - linear_op(b, sv);
  return reliable_norm(FockOperator{b, 1, 1, {}}, diff);
}

double homomorphism_defect(const FiniteUnitaryGroup& g, const FockBasis& b) {
  std::vector<spmat> r;
  for (const auto& e : g.elements()) r.push_back(metaplectic(e, b).op.matrix);
  FockOperator like{b, 1, 1, {}};
  double worst = 0.0;
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      spmat d = r[x] * r[y] - r[g.multiply(x, y)];
      worst = std::max(worst, reliable_norm(like, d));
    }
  return worst;
}

std::vector<cmat> orthogonal_torus_factorization(const cmat& g) {
  const int n = static_cast<int>(g.rows());
  cmat w = g.transpose() * g;
  // Re W and Im W commute; a generic combination diagonalises both
  rmat comb = w.real() + 0.5772156649 * w.imag();
  Eigen::SelfAdjointEigenSolver<rmat> es(0.5 * (comb + comb.transpose()));
  rmat o = es.eigenvectors();
  cmat lam = o.transpose().cast<cplx>() * w * o.cast<cplx>();
  cvec d(n);
  for (int j = 0; j < n; ++j) d(j) = std::sqrt(lam(j, j));
  cmat o1 = g * o.cast<cplx>() * d.cwiseInverse().asDiagonal();
  rmat o1r = o1.real();

  std::vector<cmat> factors;
  factors.push_back(o1r.cast<cplx>());
  for (int j = 0; j < n; ++j) {
    cmat swap = cmat::Identity(n, n);
    if (j > 0) {
      swap(0, 0) = swap(j, j) = 0.0;
      swap(0, j) = swap(j, 0) = 1.0;
    }
    cmat phase = cmat::Identity(n, n);
    phase(0, 0) = d(j) / std::abs(d(j));
    if (j > 0) factors.push_back(swap);
    factors.push_back(phase);
    if (j > 0) factors.push_back(swap);
  }
  factors.push_back(o.transpose().cast<cplx>());
  return factors;
}

double generation_defect(const cmat& g, const FockBasis& b) {
  spmat direct = metaplectic(g, b).op.matrix;
  spmat prod = sparse_identity(b.dim());
  for (const auto& f : orthogonal_torus_factorization(g)) prod = prod * metaplectic(f, b).op.matrix;
  spmat diff = direct - prod;
  return reliable_norm(FockOperator{b, 1, 1, {}}, diff);
}

FockOperator loop_product(const FockBasis& b, int steps, bool include_phase) {
  cmat g = cmat::Identity(b.n, b.n);
  g(0, 0) = std::polar(1.0, 2.0 * kPi / steps);
  spmat step = metaplectic(g, b).op.matrix;
  if (!include_phase) step = step * std::polar(1.0, -kPi / steps);
  spmat prod = sparse_identity(b.dim());
  for (int s = 0; s < steps; ++s) prod = prod * step;
  return FockOperator{b, 1, 1, prod};
}

}  // namespace mplab
