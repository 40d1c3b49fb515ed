#include "mplab/linalg.hpp"

#include <numeric>

#include "mplab/errors.hpp"

namespace mplab {

spmat sparse_identity(int n) {
  spmat id(n, n);
  id.setIdentity();
  return id;
}

spmat kron(const spmat& a, const spmat& b) {
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (spmat::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (spmat::InnerIterator ib(b, kb); ib; ++ib)
          trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                            ia.value() * ib.value());
  spmat out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

spmat to_sparse(const cmat& a, double drop) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j)) > drop) trip.emplace_back(i, j, a(i, j));
  spmat out(a.rows(), a.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

cmat hermitian_function(const cmat& h, const std::function<cplx(double)>& f) {
  Eigen::SelfAdjointEigenSolver<cmat> es(h);
  const cmat& v = es.eigenvectors();
  cvec fl(h.rows());
  for (int i = 0; i < h.rows(); ++i) fl(i) = f(es.eigenvalues()(i));
  return v * fl.asDiagonal() * v.adjoint();
}

namespace {
int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}
}  // namespace

std::vector<std::vector<int>> sparse_components(const spmat& h) {
  const int n = static_cast<int>(h.rows());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int k = 0; k < h.outerSize(); ++k)
    for (spmat::InnerIterator it(h, k); it; ++it) {
      if (it.value() == cplx(0.0)) continue;
      int a = find_root(parent, static_cast<int>(it.row()));
      int b = find_root(parent, static_cast<int>(it.col()));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> comps;
  for (int i = 0; i < n; ++i) {
    int r = find_root(parent, i);
    if (label[r] < 0) {
      label[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[label[r]].push_back(i);
  }
  return comps;
}

spmat sparse_hermitian_function(const spmat& h, const std::function<cplx(double)>& f,
                                double drop) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (const auto& comp : sparse_components(h)) {
    cmat block = submatrix(h, comp, comp);
    cmat fb = hermitian_function(0.5 * (block + block.adjoint()), f);
    for (size_t j = 0; j < comp.size(); ++j)
      for (size_t i = 0; i < comp.size(); ++i)
        if (std::abs(fb(i, j)) > drop) trip.emplace_back(comp[i], comp[j], fb(i, j));
  }
  spmat out(h.rows(), h.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

cmat submatrix(const spmat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> rpos(a.rows(), -1);
  for (size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
  cmat out = cmat::Zero(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  if (a.IsRowMajor) {
    cmat full = cmat(a);
    return submatrix(full, rows, cols);
  }
  for (size_t j = 0; j < cols.size(); ++j)
    for (spmat::InnerIterator it(a, cols[j]); it; ++it) {
      int r = rpos[it.row()];
      if (r >= 0) out(r, static_cast<int>(j)) = it.value();
    }
  return out;
}

cmat submatrix(const cmat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  cmat out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < rows.size(); ++i) out(i, j) = a(rows[i], cols[j]);
  return out;
}

cmat projection_range(const cmat& p, double tol) {
  if (p.rows() == 0) return cmat(0, 0);
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (p + p.adjoint()));
  std::vector<int> keep;
  for (int i = 0; i < p.rows(); ++i) {
    double l = es.eigenvalues()(i);
    if (std::abs(l) > tol && std::abs(l - 1.0) > tol)
      throw Error(ErrorCode::NotProjection,
                  "eigenvalue " + std::to_string(l) + " is neither 0 nor 1");
    if (l > 0.5) keep.push_back(i);
  }
  cmat q(p.rows(), static_cast<int>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) q.col(k) = es.eigenvectors().col(keep[k]);
  return q;
}

double max_abs(const cmat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

HermitianCalculus hermitian_calculus(const cmat& y) {
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (y + y.adjoint()));
  return {es.eigenvectors(), es.eigenvalues()};
}

cmat HermitianCalculus::apply(const std::function<double(double)>& f) const {
  rvec fl = values.unaryExpr(f);
  return vectors * fl.asDiagonal() * vectors.adjoint();
}

cmat HermitianCalculus::derivative(const cmat& dy, const std::function<double(double)>& f,
                                   const std::function<double(double)>& df) const {
  const int n = static_cast<int>(values.size());
  cmat inner = vectors.adjoint() * dy * vectors;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double li = values(i), lj = values(j);
      double dd;
      if (std::abs(li - lj) > 1e-9 * std::max(1.0, std::abs(li)))
        dd = (f(li) - f(lj)) / (li - lj);
      else
        dd = df(0.5 * (li + lj));
      inner(i, j) *= dd;
    }
  return vectors * inner * vectors.adjoint();
}

}  // namespace mplab
