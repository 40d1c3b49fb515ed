#include "mplab/chern.hpp"

#include <cmath>
#include <mutex>
#include <thread>

#include "mplab/errors.hpp"
#include "mplab/exterior.hpp"

namespace mplab {

const cplx kChernConstant = kI / (2.0 * kPi);

namespace {

// positions h * size + i of pi_z for i in the support, h-major
std::vector<int> compressed_indices(int order, int size, const std::vector<int>& support) {
  std::vector<int> idx;
  for (int h = 0; h < order; ++h)
    for (int i : support) idx.push_back(h * size + i);
  return idx;
}

struct CompressedJet {
  cmat value;
  std::vector<cmat> gradient;
};

CompressedJet compressed_jet(const DifferencePair& pair, const std::vector<int>& idx, const rvec& xi) {
  RegularJet r = pair.regular ? pair.regular(xi) : regular_representation(pair.p1, xi);
  CompressedJet c;
  c.value = submatrix(r.value, idx, idx);
  for (const cmat& g : r.gradient) c.gradient.push_back(submatrix(g, idx, idx));
  return c;
}

// exp(X) for X of even degree, truncated by nilpotency
FormMatrix nilpotent_exp(const FormMatrix& x, int max_power) {
  FormMatrix term = FormMatrix::scalar(x.covectors, cmat::Identity(x.rows(), x.cols()));
  FormMatrix sum = term;
  for (int k = 1; k <= max_power; ++k) {
    term = wedge(term, x);
    term *= 1.0 / k;
    sum += term;
  }
  return sum;
}

// values f(node) summed in node order; evaluations spread over threads
cplx integrate(const std::vector<QuadratureScheme::Node>& nodes,
               const std::function<cplx(const rvec&)>& f) {
  std::vector<cplx> vals(nodes.size());
  unsigned nt = std::max(1u, std::thread::hardware_concurrency());
  if (nodes.size() < 256) nt = 1;
  nt = std::min<unsigned>(nt, 16);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < nodes.size(); i += nt) vals[i] = f(nodes[i].y);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += nodes[i].weight * vals[i];
  return sum;
}

TraceValue converged(const std::function<cplx(const QuadratureScheme&)>& at, const QuadratureScheme& q,
                     int d, const std::string& what) {
  TraceValue tv;
  tv.coarse = at(q);
  QuadratureScheme qd = q.doubled();
  tv.value = at(qd);
  tv.nodes = static_cast<int>(q.nodes(d).size() + qd.nodes(d).size());
  const double diff = std::abs(tv.value - tv.coarse);
  if (diff > 1e-4 * std::max(1.0, std::abs(tv.value)))
    throw Error(ErrorCode::QuadratureUnconverged,
                what + ": doubling the nodes moved the value by " + std::to_string(diff));
  return tv;
}

}  // namespace

FormField chern_form(const DifferencePair& pair) {
  const FiniteUnitaryGroup& g = pair.p1.group();
  const int order = g.order(), size = pair.p1.size(), ns = static_cast<int>(pair.support.size());
  std::vector<int> idx = compressed_indices(order, size, pair.support);
  const int n = g.dim();
  FormField w(pair.p1.group_ptr(), size, [pair, idx, order, size, ns, n](const rvec& xi) {
    const FiniteUnitaryGroup& grp = pair.p1.group();
    const int m = 2 * n;
    CompressedJet j = compressed_jet(pair, idx, xi);
    cmat pi0 = submatrix(regular_representation(pair.p0, xi).value, idx, idx);
    FormMatrix dp = FormMatrix::zero(m, j.value.rows(), j.value.cols());
    for (int k = 0; k < m; ++k) dp.coeff[1u << k] = j.gradient[k];
    FormMatrix x = kChernConstant * wedge(dp, dp);
    FormMatrix row = FormMatrix::scalar(m, j.value.topRows(ns));
    FormMatrix om = wedge(row, nilpotent_exp(x, n));
    om.coeff[0] -= pi0.topRows(ns);
    std::vector<FormMatrix> out(order, FormMatrix::zero(m, size, size));
    for (int h = 0; h < order; ++h) {
      const int col = grp.inverse(h) * ns;
      for (std::size_t mask = 0; mask < om.coeff.size(); ++mask)
        for (int a = 0; a < ns; ++a)
          for (int b = 0; b < ns; ++b)
            out[h].coeff[mask](pair.support[a], pair.support[b]) = om.coeff[mask](a, col + b);
    }
    return out;
  });
  const double leak = support_leak(w, pair.r1);
  if (leak > 1e-12)
    throw Error(ErrorCode::SupportLeak, "Chern form is " + std::to_string(leak) + " beyond r1");
  return w;
}

FormField chern_form_crossed(const MatrixSymbolField& p1, const MatrixSymbolField& p0) {
  const int n = p1.group().dim();
  auto side = [n](const MatrixSymbolField& p) {
    FormField pf = form_from_symbol(p);
    FormField dp = differential(p);
    FormField x = scale(multiply(dp, dp), kChernConstant);
    FormField term = pf, sum = pf;
    for (int k = 1; k <= n; ++k) {
      term = scale(multiply(term, x), 1.0 / k);
      sum = sum + term;
    }
    return sum;
  };
  return side(p1) - side(p0);
}

double support_leak(const FormField& w, double r1, int density) {
  double worst = 0.0;
  for (double f : {1.01, 1.5, 3.0})
    for (const rvec& xi : sphere_points(w.real_dim(), f * r1, density))
      for (const FormMatrix& c : w(xi)) worst = std::max(worst, max_abs(c));
  return worst;
}

rmat fixed_embedding(const cmat& basis) {
  const int n = static_cast<int>(basis.rows()), d = static_cast<int>(basis.cols());
  rmat j = rmat::Zero(2 * n, 2 * d);
  for (int k = 0; k < d; ++k) {
    // z = p + i x
    const cvec v = basis.col(k), iv = kI * basis.col(k);
    j.col(k).head(n) = iv.imag();
    j.col(k).tail(n) = iv.real();
    j.col(d + k).head(n) = v.imag();
    j.col(d + k).tail(n) = v.real();
  }
  return j;
}

int orientation_sign(int d) {
  unsigned mask = 0;
  int sign = 1;
  for (int j = 0; j < d; ++j)
    for (unsigned bit : {1u << (d + j), 1u << j}) {
      sign *= wedge_sign(mask, bit);
      mask |= bit;
    }
  return sign;
}

cplx twisted_trace_single(const FormField& w, int s, const QuadratureScheme& q) {
  FixedSubspace fs = fixed_subspace(w.group().element(s));
  const int d = fs.dim();
  if (d == 0) return w(rvec::Zero(w.real_dim()))[s].coeff[0].trace();
  const rmat j = fixed_embedding(fs.basis);
  const double sign = orientation_sign(d);
  return integrate(q.nodes(d), [&](const rvec& y) {
    FormMatrix f = pullback(w(j * y)[s], j);
    return sign * f.coeff[f.top_mask()].trace();
  });
}

TraceValue twisted_trace(const FormField& w, int s, const QuadratureScheme& q) {
  const int d = fixed_subspace(w.group().element(s)).dim();
  if (d == 0) {
    cplx v = twisted_trace_single(w, s, q);
    return TraceValue{v, v, 1};
  }
  return converged([&](const QuadratureScheme& qq) { return twisted_trace_single(w, s, qq); }, q, d,
                   "twisted trace");
}

TraceValue localized_trace(const DifferencePair& pair, int s, const QuadratureScheme& q,
                           double* p1_defect) {
  const FiniteUnitaryGroup& g = pair.p1.group();
  const int order = g.order(), size = pair.p1.size(), ns = static_cast<int>(pair.support.size());
  const std::vector<int> idx = compressed_indices(order, size, pair.support);
  const int col = g.inverse(s) * ns;
  FixedSubspace fs = fixed_subspace(g.element(s));
  const int d = fs.dim();

  if (d == 0) {
    rvec zero = rvec::Zero(2 * g.dim());
    cmat p1 = submatrix(regular_representation(pair.p1, zero).value, idx, idx);
    cmat p0 = submatrix(regular_representation(pair.p0, zero).value, idx, idx);
    cplx v = (p1 - p0).block(0, col, ns, ns).trace();
    return TraceValue{v, v, 1};
  }

  const rmat j = fixed_embedding(fs.basis);
  const double sign = orientation_sign(d);
  const int mm = static_cast<int>(idx.size());
  std::vector<double> defects;
  std::mutex lock;
  auto f = [&](const rvec& y) {
    CompressedJet cj = compressed_jet(pair, idx, j * y);
    FormMatrix dp = FormMatrix::zero(2 * d, mm, mm);
    for (int a = 0; a < 2 * d; ++a) {
      cmat da = cmat::Zero(mm, mm);
      for (int k = 0; k < j.rows(); ++k)
        if (j(k, a) != 0.0) da += j(k, a) * cj.gradient[k];
      dp.coeff[1u << a] = da;
    }
    // (c dP dP)^d / d! applied to the block column of s^{-1}
    FormMatrix y2 = FormMatrix::scalar(2 * d, cmat::Identity(mm, mm).middleCols(col, ns));
    for (int k = 1; k <= d; ++k) {
      y2 = wedge(dp, wedge(dp, y2));
      y2 *= kChernConstant / double(k);
    }
    cplx v = sign * (cj.value.topRows(ns) * y2.coeff[y2.top_mask()]).trace();
    if (p1_defect) {
      double e = std::max(max_abs(cmat(cj.value * cj.value - cj.value)),
                          max_abs(cmat(cj.value.adjoint() - cj.value)));
      std::lock_guard<std::mutex> g(lock);
      defects.push_back(e);
    }
    return v;
  };
  QuadratureScheme qr = q;
  qr.r_inner = pair.r0;
  qr.r_outer = pair.r1;
  TraceValue tv = converged([&](const QuadratureScheme& qq) { return integrate(qq.nodes(d), f); }, qr,
                            d, "localized trace");
  if (p1_defect)
    for (double e : defects) *p1_defect = std::max(*p1_defect, e);
  return tv;
}

TopologicalIndex topological_index(const EllipticTriple& t, const QuadratureScheme& q,
                                   const PsiProfile& profile) {
  DifferencePair pair = difference_construction(t, profile);
  const FiniteUnitaryGroup& g = t.a.group();
  TopologicalIndex out;
  for (const ConjugacyClass& cc : conjugacy_classes(g)) {
    ClassValue cv;
    cv.representative = cc.representative;
    cv.members = cc.members;
    cv.fixed_dim = cc.fixed.dim();
    cv.perp_det = cc.fixed.perp_det;
    cplx sum = 0.0, sum_coarse = 0.0;
    for (int s : cc.members) {
      TraceValue tv = localized_trace(pair, s, q, &out.max_p1_defect);
      sum += tv.value;
      sum_coarse += tv.coarse;
    }
    cv.value = sum / std::conj(cv.perp_det);
    cv.coarse = sum_coarse / std::conj(cv.perp_det);
    out.total += cv.value;
    out.total_coarse += cv.coarse;
    out.per_class.push_back(cv);
  }
  out.imag = std::abs(out.total.imag());
  out.rounded = std::lround(out.total.real());
  out.distance = std::abs(out.total.real() - double(out.rounded));
  out.integral = out.imag <= 1e-4 && out.distance <= 1e-3;
  return out;
}

TraceValue riemann_roch_check(int n, const QuadratureScheme& q) {
  auto g = std::make_shared<const FiniteUnitaryGroup>(trivial_group(n));
  TopologicalIndex ti = topological_index(bott_map(g, GroupAlgebraMatrix::identity(1, 1)), q);
  return TraceValue{ti.total, ti.total_coarse, 0};
}

}  // namespace mplab
