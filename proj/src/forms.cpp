#include "mplab/forms.hpp"

#include <random>

#include "mplab/errors.hpp"
#include "mplab/exterior.hpp"

namespace mplab {

FormMatrix FormMatrix::zero(int m, int rows, int cols) {
  FormMatrix f;
  f.covectors = m;
  f.coeff.assign(std::size_t(1) << m, cmat::Zero(rows, cols));
  return f;
}

FormMatrix FormMatrix::scalar(int m, const cmat& value) {
  FormMatrix f = zero(m, static_cast<int>(value.rows()), static_cast<int>(value.cols()));
  f.coeff[0] = value;
  return f;
}

FormMatrix FormMatrix::degree_part(int k) const {
  FormMatrix f = zero(covectors, rows(), cols());
  for (unsigned i = 0; i < coeff.size(); ++i)
    if (form_degree(i) == k) f.coeff[i] = coeff[i];
  return f;
}

FormMatrix FormMatrix::block(int r, int c, int nr, int nc) const {
  FormMatrix f;
  f.covectors = covectors;
  for (const cmat& x : coeff) f.coeff.push_back(x.block(r, c, nr, nc));
  return f;
}

FormMatrix& FormMatrix::operator+=(const FormMatrix& o) {
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
  return *this;
}

FormMatrix& FormMatrix::operator-=(const FormMatrix& o) {
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
  return *this;
}

FormMatrix& FormMatrix::operator*=(cplx s) {
  for (cmat& x : coeff) x *= s;
  return *this;
}

FormMatrix operator+(FormMatrix a, const FormMatrix& b) { return a += b; }
FormMatrix operator-(FormMatrix a, const FormMatrix& b) { return a -= b; }
FormMatrix operator*(cplx s, FormMatrix a) { return a *= s; }

FormMatrix wedge(const FormMatrix& a, const FormMatrix& b) {
  FormMatrix out = FormMatrix::zero(a.covectors, a.rows(), b.cols());
  const unsigned size = static_cast<unsigned>(a.coeff.size());
  std::vector<bool> za(size), zb(size);
  for (unsigned i = 0; i < size; ++i) {
    za[i] = a.coeff[i].isZero(0.0);
    zb[i] = b.coeff[i].isZero(0.0);
  }
  for (unsigned i = 0; i < size; ++i) {
    if (za[i]) continue;
    for (unsigned j = 0; j < size; ++j) {
      if (zb[j] || (i & j)) continue;
      out.coeff[i | j].noalias() += double(wedge_sign(i, j)) * (a.coeff[i] * b.coeff[j]);
    }
  }
  return out;
}

FormMatrix pullback(const FormMatrix& a, const rmat& l) {
  const int m = a.covectors, mp = static_cast<int>(l.cols());
  FormMatrix out = FormMatrix::zero(mp, a.rows(), a.cols());
  for (unsigned i = 0; i < a.coeff.size(); ++i) {
    if (a.coeff[i].isZero(0.0)) continue;
    std::vector<int> rows;
    for (int k = 0; k < m; ++k)
      if (i >> k & 1) rows.push_back(k);
    const int deg = static_cast<int>(rows.size());
    for (unsigned j = 0; j < out.coeff.size(); ++j) {
      if (form_degree(j) != deg) continue;
      std::vector<int> cols;
      for (int k = 0; k < mp; ++k)
        if (j >> k & 1) cols.push_back(k);
      double det = 1.0;
      if (deg > 0) {
        rmat minor(deg, deg);
        for (int r = 0; r < deg; ++r)
          for (int c = 0; c < deg; ++c) minor(r, c) = l(rows[r], cols[c]);
        det = minor.determinant();
      }
      if (det != 0.0) out.coeff[j] += det * a.coeff[i];
    }
  }
  return out;
}

double max_abs(const FormMatrix& a) {
  double m = 0.0;
  for (const cmat& x : a.coeff) m = std::max(m, max_abs(x));
  return m;
}

FormField::FormField(GroupPtr group, int size, Evaluator eval)
    : group_(std::move(group)), size_(size), eval_(std::move(eval)) {}

FormField form_from_symbol(const MatrixSymbolField& a) {
  return FormField(a.group_ptr(), a.size(), [a](const rvec& xi) {
    SymbolJet j = a(xi);
    std::vector<FormMatrix> out;
    for (const cmat& v : j.value) out.push_back(FormMatrix::scalar(a.real_dim(), v));
    return out;
  });
}

FormField operator+(const FormField& a, const FormField& b) {
  return FormField(a.group_ptr(), a.size(), [a, b](const rvec& xi) {
    auto x = a(xi), y = b(xi);
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += y[c];
    return x;
  });
}

FormField operator-(const FormField& a, const FormField& b) {
  return FormField(a.group_ptr(), a.size(), [a, b](const rvec& xi) {
    auto x = a(xi), y = b(xi);
    for (std::size_t c = 0; c < x.size(); ++c) x[c] -= y[c];
    return x;
  });
}

FormField scale(const FormField& a, cplx s) {
  return FormField(a.group_ptr(), a.size(), [a, s](const rvec& xi) {
    auto x = a(xi);
    for (auto& f : x) f *= s;
    return x;
  });
}

FormField multiply(const FormField& a, const FormField& b) {
  return FormField(a.group_ptr(), a.size(), [a, b](const rvec& xi) {
    const FiniteUnitaryGroup& g = a.group();
    auto x = a(xi);
    std::vector<FormMatrix> out(g.order(), FormMatrix::zero(a.real_dim(), a.size(), b.size()));
    for (int g1 = 0; g1 < g.order(); ++g1) {
      if (max_abs(x[g1]) == 0.0) continue;
      const rmat& l = g.real(g.inverse(g1));
      auto y = b(l * xi);
      for (int g2 = 0; g2 < g.order(); ++g2)
        out[g.multiply(g1, g2)] += wedge(x[g1], pullback(y[g2], l));
    }
    return out;
  });
}

FormField conjugate(const FormField& a, int g) {
  return FormField(a.group_ptr(), a.size(), [a, g](const rvec& xi) {
    const FiniteUnitaryGroup& grp = a.group();
    const int gi = grp.inverse(g);
    const rmat& l = grp.real(gi);
    auto y = a(l * xi);
    std::vector<FormMatrix> out;
    for (int h = 0; h < grp.order(); ++h)
      out.push_back(pullback(y[grp.multiply(grp.multiply(gi, h), g)], l));
    return out;
  });
}

FormMatrix regular_representation(const FormField& w, const rvec& xi) {
  const FiniteUnitaryGroup& g = w.group();
  const int order = g.order(), n = w.size(), m = w.real_dim();
  FormMatrix out = FormMatrix::zero(m, order * n, order * n);
  for (int h = 0; h < order; ++h) {
    auto y = w(g.real(h) * xi);
    for (int hp = 0; hp < order; ++hp) {
      FormMatrix b = pullback(y[g.multiply(h, g.inverse(hp))], g.real(h));
      for (std::size_t i = 0; i < b.coeff.size(); ++i)
        out.coeff[i].block(h * n, hp * n, n, n) = b.coeff[i];
    }
  }
  return out;
}

FormField to_field(const FormSymbol& a) {
  const MatrixSymbolField& first = a.coeffs.at(0);
  return FormField(first.group_ptr(), first.size(), [a](const rvec& xi) {
    const MatrixSymbolField& f = a.coeffs[0];
    std::vector<FormMatrix> out(f.group().order(), FormMatrix::zero(f.real_dim(), f.size(), f.size()));
    for (std::size_t t = 0; t < a.masks.size(); ++t) {
      SymbolJet j = a.coeffs[t](xi);
      for (std::size_t c = 0; c < out.size(); ++c) out[c].coeff[a.masks[t]] += j.value[c];
    }
    return out;
  });
}

FormField exterior_derivative(const FormSymbol& a) {
  const MatrixSymbolField& first = a.coeffs.at(0);
  return FormField(first.group_ptr(), first.size(), [a](const rvec& xi) {
    const MatrixSymbolField& f = a.coeffs[0];
    const int m = f.real_dim();
    std::vector<FormMatrix> out(f.group().order(), FormMatrix::zero(m, f.size(), f.size()));
    for (std::size_t t = 0; t < a.masks.size(); ++t) {
      const unsigned mask = a.masks[t];
      SymbolJet j = a.coeffs[t](xi);
      for (int k = 0; k < m; ++k) {
        const unsigned bit = 1u << k;
        if (mask & bit) continue;
        const double s = wedge_sign(bit, mask);
        for (std::size_t c = 0; c < out.size(); ++c) out[c].coeff[bit | mask] += s * j.gradient[c][k];
      }
    }
    return out;
  });
}

double derivative_mismatch(const MatrixSymbolField& p, int probes, unsigned seed, double probe_scale,
                           double h) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, probe_scale);
  const int m = p.real_dim();
  double worst = 0.0;
  for (int t = 0; t < probes; ++t) {
    rvec xi(m);
    for (int k = 0; k < m; ++k) xi(k) = nd(rng);
    SymbolJet j = p(xi);
    for (int k = 0; k < m; ++k) {
      rvec e = rvec::Zero(m);
      e(k) = h;
      SymbolJet jp = p(xi + e), jm = p(xi - e);
      for (std::size_t c = 0; c < j.value.size(); ++c) {
        cmat fd = (jp.value[c] - jm.value[c]) / (2.0 * h);
        double scale = std::max(1.0, max_abs(j.gradient[c][k]));
        worst = std::max(worst, max_abs(fd - j.gradient[c][k]) / scale);
      }
    }
  }
  return worst;
}

FormField differential(const MatrixSymbolField& p, unsigned seed, double probe_scale) {
  double mis = derivative_mismatch(p, 20, seed, probe_scale);
  if (mis > 1e-6)
    throw Error(ErrorCode::DerivativeMismatch,
                "derivative callbacks disagree with central differences by " + std::to_string(mis));
  return exterior_derivative(FormSymbol{{0u}, {p}});
}

}  // namespace mplab
