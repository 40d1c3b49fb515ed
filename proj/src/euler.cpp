#include "mplab/euler.hpp"

#include "mplab/errors.hpp"
#include "mplab/exterior.hpp"

namespace mplab {

FockOperator build_euler(const FockBasis& b) {
  const int n = b.n;
  spmat full(b.dim() << n, b.dim() << n);
  for (int j = 0; j < n; ++j) {
    spmat a = annihilation(b, j);
    spmat ad = a.adjoint();
    spmat e = to_sparse(creation_op(n, j));
    spmat iota = e.adjoint();
    full += kron(a, e) + kron(ad, iota);
  }
  spmat fock_id = sparse_identity(b.dim());
  spmat odd = kron(fock_id, to_sparse(parity_projection(n, false)));
  spmat even = kron(fock_id, to_sparse(parity_projection(n, true)));
  spmat out = odd * full * even * cplx(std::sqrt(2.0));
  return FockOperator{b, 1 << n, 1, out};
}

FockOperator normalize(const FockOperator& e) {
  spmat ed = e.matrix.adjoint();
  spmat eed = e.matrix * ed;
  eed.prune([](int, int, const cplx& v) { return std::abs(v) > 1e-13; });
  spmat f = sparse_hermitian_function(eed, [](double l) { return 1.0 / std::sqrt(l + 1.0); });
  // rows outside every component are untouched by f; E vanishes there anyway
  FockOperator out = e;
  out.matrix = f * e.matrix;
  return out;
}

double equivariance_residual(const cmat& g, const FockOperator& e) {
  spmat rho = form_representation(g, e.basis).matrix;
  spmat rhod = rho.adjoint();
  spmat diff = rho * e.matrix * rhod - e.matrix;
  return reliable_norm(e, diff);
}

FockOperator twisting_projection(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p,
                                 const FockBasis& b) {
  const int big = (b.dim() << b.n) * p.size;
  spmat out(big, big);
  for (int h = 0; h < g.order(); ++h) {
    if (max_abs(p.comp[h]) == 0.0) continue;
    spmat rho = form_representation(g.element(h), b).matrix;
    out += kron(rho, to_sparse(p.comp[h]));
  }
  out.prune([](int, int, const cplx& v) { return std::abs(v) > 1e-14; });
  return FockOperator{b, 1 << b.n, p.size, out};
}

TwistedOperator twist_by_projection(const FockOperator& e0, const FiniteUnitaryGroup& g,
                                    const GroupAlgebraMatrix& p) {
  FockOperator proj = twisting_projection(g, p, e0.basis);
  spmat pd = proj.matrix.adjoint();
  double idem = reliable_norm(proj, spmat(proj.matrix * proj.matrix - proj.matrix));
  double herm = reliable_norm(proj, spmat(pd - proj.matrix));
  if (idem > 1e-6 || herm > 1e-6)
    throw Error(ErrorCode::NotProjection, "1 (x) P defect " + std::to_string(std::max(idem, herm)));

  spmat lifted = kron(e0.matrix, sparse_identity(p.size));
  TwistedOperator t{FockOperator{e0.basis, e0.form_dim, p.size, {}}, proj, 0.0};
  t.op.matrix = proj.matrix * lifted * proj.matrix;
  t.commutator_residual =
      reliable_norm(proj, spmat(proj.matrix * lifted - lifted * proj.matrix));
  return t;
}

IndexResult analytic_index(const FockOperator& op, const FockOperator& projection) {
  std::vector<int> even, odd;
  for (int r : op.reliable_indices())
    (form_degree(static_cast<unsigned>(op.form_mask(r))) % 2 == 0 ? even : odd).push_back(r);
  cmat qe = projection_range(submatrix(projection.matrix, even, even));
  cmat qo = projection_range(submatrix(projection.matrix, odd, odd));
  cmat block = qo.adjoint() * submatrix(op.matrix, odd, even) * qe;

  IndexResult res;
  res.even_dim = static_cast<int>(qe.cols());
  res.odd_dim = static_cast<int>(qo.cols());
  int rank = 0;
  if (block.size() > 0) {
    Eigen::BDCSVD<cmat> svd(block);
    res.singular_values = svd.singularValues();
  } else {
    res.singular_values = rvec(0);
  }
  res.smallest_kept = std::numeric_limits<double>::infinity();
  for (int i = 0; i < res.singular_values.size(); ++i) {
    double s = res.singular_values(i);
    if (s <= 1e-6) {
      res.largest_zero = std::max(res.largest_zero, s);
    } else if (s < 1e-2) {
      throw Error(ErrorCode::GapFailure, "singular value " + std::to_string(s) +
                                             " inside the gap (1e-6, 1e-2)");
    } else {
      ++rank;
      res.smallest_kept = std::min(res.smallest_kept, s);
    }
  }
  res.kernel = res.even_dim - rank;
  res.cokernel = res.odd_dim - rank;
  res.index = res.kernel - res.cokernel;
  return res;
}

StableIndex twisted_euler_index(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p,
                                const FockBasis& b, int dK) {
  auto run = [&](const FockBasis& basis) {
    FockOperator e0 = normalize(build_euler(basis));
    TwistedOperator t = twist_by_projection(e0, g, p);
    return analytic_index(t.op, t.projection);
  };
  StableIndex s;
  s.K_base = b.K;
  s.K_refined = b.K + dK;
  s.base = run(b);
  s.refined = run(FockBasis(b.n, b.K + dK, b.M));
  if (s.base.index != s.refined.index)
    throw Error(ErrorCode::UnstableIndex, "index " + std::to_string(s.base.index) + " at K=" +
                                              std::to_string(s.K_base) + " but " +
                                              std::to_string(s.refined.index) + " at K=" +
                                              std::to_string(s.K_refined));
  return s;
}

}  // namespace mplab
