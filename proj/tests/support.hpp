#pragma once

#include <random>

#include "mplab/forms.hpp"
#include "mplab/quadrature.hpp"
#include "mplab/symbol.hpp"

namespace testing_support {

using namespace mplab;

inline cmat random_matrix(int r, int c, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  cmat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  return m;
}

inline rvec random_point(int m, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  rvec x(m);
  for (int k = 0; k < m; ++k) x(k) = nd(rng);
  return x;
}

// Components c0 + sum_k c1_k xi_k + sum_{k<=l} c2_kl xi_k xi_l, for every group element
inline MatrixSymbolField random_polynomial_symbol(GroupPtr g, int size, unsigned seed) {
  std::mt19937 rng(seed);
  const int order = g->order(), m = 2 * g->dim();
  struct Poly {
    cmat c0;
    std::vector<cmat> c1;
    std::vector<std::vector<cmat>> c2;
  };
  std::vector<Poly> polys(order);
  for (auto& p : polys) {
    p.c0 = random_matrix(size, size, rng);
    for (int k = 0; k < m; ++k) p.c1.push_back(random_matrix(size, size, rng, 0.5));
    p.c2.assign(m, std::vector<cmat>(m));
    for (int k = 0; k < m; ++k)
      for (int l = k; l < m; ++l) p.c2[k][l] = random_matrix(size, size, rng, 0.25);
  }
  return MatrixSymbolField(g, size, [polys, order, m, size](const rvec& xi) {
    SymbolJet j = SymbolJet::zero(order, size, m);
    for (int h = 0; h < order; ++h) {
      const Poly& p = polys[h];
      j.value[h] = p.c0;
      for (int k = 0; k < m; ++k) {
        j.value[h] += xi(k) * p.c1[k];
        j.gradient[h][k] += p.c1[k];
        for (int l = k; l < m; ++l) {
          j.value[h] += xi(k) * xi(l) * p.c2[k][l];
          j.gradient[h][k] += xi(l) * p.c2[k][l];
          j.gradient[h][l] += xi(k) * p.c2[k][l];
        }
      }
    }
    return j;
  });
}

// central differences of every component gradient, for cross-checks in tests
inline double gradient_mismatch(const MatrixSymbolField& a, const rvec& xi, double h = 1e-5) {
  SymbolJet j = a(xi);
  double worst = 0.0;
  for (int k = 0; k < a.real_dim(); ++k) {
    rvec e = rvec::Zero(a.real_dim());
    e(k) = h;
    SymbolJet jp = a(xi + e), jm = a(xi - e);
    for (size_t c = 0; c < j.value.size(); ++c) {
      cmat fd = (jp.value[c] - jm.value[c]) / (2.0 * h);
      worst = std::max(worst, max_abs(fd - j.gradient[c][k]));
    }
  }
  return worst;
}

// f(|xi|) a with f = (rb^2 - |xi|^2)^2 inside the ball of radius rb, zero outside
inline MatrixSymbolField bump(const MatrixSymbolField& a, double rb) {
  return MatrixSymbolField(a.group_ptr(), a.size(), [a, rb](const rvec& xi) {
    SymbolJet j = a(xi);
    const double u = rb * rb - xi.squaredNorm();
    const double f = u > 0.0 ? u * u : 0.0;
    for (std::size_t c = 0; c < j.value.size(); ++c) {
      for (int k = 0; k < xi.size(); ++k) {
        const double df = u > 0.0 ? -4.0 * u * xi(k) : 0.0;
        j.gradient[c][k] = f * j.gradient[c][k] + df * j.value[c];
      }
      j.value[c] *= f;
    }
    return j;
  });
}

// random compactly supported form of one degree, coefficients of degree <= 2
inline FormSymbol random_form(GroupPtr g, int size, int degree, unsigned seed, double rb = 1.5) {
  FormSymbol f;
  const unsigned m = 2 * g->dim();
  unsigned salt = 0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != degree) continue;
    f.masks.push_back(mask);
    f.coeffs.push_back(bump(random_polynomial_symbol(g, size, seed * 7919u + ++salt), rb));
  }
  return f;
}

// exact for the forms above: products have polynomial degree <= 12 on the ball
inline QuadratureScheme polynomial_quadrature(double rb = 1.5) {
  QuadratureScheme q;
  q.radial = 8;
  q.simplex = 6;
  q.angular = 16;
  q.r_inner = 0.0;
  q.r_outer = rb;
  return q;
}

}  // namespace testing_support
