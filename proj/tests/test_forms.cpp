#include <cmath>

#include "doctest.h"
#include "mplab/chern.hpp"
#include "mplab/errors.hpp"
#include "mplab/exterior.hpp"
#include "support.hpp"

using namespace mplab;
using namespace testing_support;

namespace {

GroupPtr share(FiniteUnitaryGroup g) { return std::make_shared<const FiniteUnitaryGroup>(std::move(g)); }

FormMatrix random_form_matrix(int m, int rows, int cols, std::mt19937& rng) {
  FormMatrix f = FormMatrix::zero(m, rows, cols);
  for (cmat& c : f.coeff) c = random_matrix(rows, cols, rng);
  return f;
}

double max_diff(const std::vector<FormMatrix>& a, const std::vector<FormMatrix>& b) {
  double d = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) d = std::max(d, max_abs(a[c] - b[c]));
  return d;
}

cplx class_trace(const FormField& w, const ConjugacyClass& cc, const QuadratureScheme& q) {
  cplx v = 0.0;
  for (int s : cc.members) v += twisted_trace_single(w, s, q);
  return v;
}

}  // namespace

TEST_CASE("wedge of covectors anticommutes and matrices multiply") {
  FormMatrix dx = FormMatrix::zero(2, 1, 1), dp = dx;
  dx.coeff[1](0, 0) = 1.0;
  dp.coeff[2](0, 0) = 1.0;
  CHECK(wedge(dx, dp).coeff[3](0, 0) == 1.0);
  CHECK(wedge(dp, dx).coeff[3](0, 0) == -1.0);
  CHECK(max_abs(wedge(dx, dx)) == 0.0);

  std::mt19937 rng(1);
  cmat a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
  FormMatrix fa = FormMatrix::scalar(3, a), fb = FormMatrix::scalar(3, b);
  CHECK(max_abs(cmat(wedge(fa, fb).coeff[0] - a * b)) < 1e-14);
}

TEST_CASE("wedge is associative and graded commutative on scalar forms") {
  std::mt19937 rng(2);
  for (int m : {2, 4}) {
    FormMatrix a = random_form_matrix(m, 2, 2, rng), b = random_form_matrix(m, 2, 2, rng),
               c = random_form_matrix(m, 2, 2, rng);
    CHECK(max_abs(wedge(wedge(a, b), c) - wedge(a, wedge(b, c))) < 1e-12);
    for (int da = 0; da <= m; ++da)
      for (int db = 0; db <= m; ++db) {
        FormMatrix x = random_form_matrix(m, 1, 1, rng).degree_part(da);
        FormMatrix y = random_form_matrix(m, 1, 1, rng).degree_part(db);
        const double sign = (da * db) % 2 ? -1.0 : 1.0;
        CHECK(max_abs(wedge(x, y) - sign * wedge(y, x)) < 1e-12);
      }
  }
}

TEST_CASE("pullback is functorial and multiplicative") {
  std::mt19937 rng(3);
  const int m = 4;
  rmat l1 = rmat::Random(m, m), l2 = rmat::Random(m, 3);
  FormMatrix a = random_form_matrix(m, 2, 2, rng), b = random_form_matrix(m, 2, 2, rng);
  // (L1 L2)^* = L2^* L1^* with the coefficient convention dxi_k -> sum_j L(k, j) dy_j
  CHECK(max_abs(pullback(pullback(a, l1), l2) - pullback(a, l1 * l2)) < 1e-12);
  CHECK(max_abs(pullback(wedge(a, b), l1) - wedge(pullback(a, l1), pullback(b, l1))) < 1e-12);
  // the top coefficient scales by the determinant
  FormMatrix top = FormMatrix::zero(m, 1, 1);
  top.coeff[15](0, 0) = 1.0;
  CHECK(std::abs(pullback(top, l1).coeff[15](0, 0) - l1.determinant()) < 1e-12);
}

TEST_CASE("crossed product of forms is associative") {
  for (auto g : {share(cyclic_diagonal(1, 3)), share(dihedral_real(3))}) {
    auto mk = [&](int deg, unsigned seed) { return to_field(random_form(g, 2, deg, seed)); };
    FormField a = mk(1, 1) + mk(0, 2), b = mk(1, 3) + mk(2, 4), c = mk(1, 5);
    FormField ab_c = multiply(multiply(a, b), c), a_bc = multiply(a, multiply(b, c));
    std::mt19937 rng(4);
    for (int t = 0; t < 3; ++t) {
      rvec xi = random_point(g->dim() * 2, rng, 0.6);
      CHECK(max_diff(ab_c(xi), a_bc(xi)) < 1e-10);
    }
  }
}

TEST_CASE("degree zero crossed product matches the symbol product") {
  auto g = share(dihedral_real(3));
  MatrixSymbolField a = random_polynomial_symbol(g, 2, 5), b = random_polynomial_symbol(g, 2, 6);
  FormField prod = multiply(form_from_symbol(a), form_from_symbol(b));
  MatrixSymbolField ab = multiply(a, b);
  std::mt19937 rng(7);
  rvec xi = random_point(4, rng);
  auto w = prod(xi);
  SymbolJet j = ab(xi);
  for (int h = 0; h < g->order(); ++h) CHECK(max_abs(cmat(w[h].coeff[0] - j.value[h])) < 1e-10);
}

TEST_CASE("regular representation of forms is multiplicative") {
  auto g = share(dihedral_real(3));
  FormField a = to_field(random_form(g, 1, 1, 8)), b = to_field(random_form(g, 1, 2, 9));
  std::mt19937 rng(10);
  rvec xi = random_point(4, rng, 0.5);
  FormMatrix lhs = regular_representation(multiply(a, b), xi);
  FormMatrix rhs = wedge(regular_representation(a, xi), regular_representation(b, xi));
  CHECK(max_abs(lhs - rhs) < 1e-10);
}

TEST_CASE("differential of constant and radial fields") {
  auto g = share(cyclic_diagonal(1, 4));
  auto p = isotypic_projection(*g, det_power_character(*g, 1), 1, 1);
  FormField dp = differential(constant_symbol(g, p));
  std::mt19937 rng(11);
  for (const FormMatrix& f : dp(random_point(2, rng))) CHECK(max_abs(f) == 0.0);

  // d psi = psi'(r) (sum x dx + p dp) / r
  PsiProfile prof;
  auto t = share(trivial_group(2));
  MatrixSymbolField psi(t, 1, [prof](const rvec& xi) {
    SymbolJet j = SymbolJet::zero(1, 1, 4);
    const double r = xi.norm();
    j.value[0](0, 0) = prof.psi(r);
    for (int k = 0; k < 4; ++k) j.gradient[0][k](0, 0) = prof.dpsi(r) * xi(k) / r;
    return j;
  });
  FormField dpsi = differential(psi);
  rvec xi(4);
  xi << 0.7, -0.4, 0.9, 0.3;
  const double r = xi.norm();
  auto w = dpsi(xi);
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(w[0].coeff[1u << k](0, 0) - prof.dpsi(r) * xi(k) / r) < 1e-15);
  // and the closed form against a fine difference quotient
  const double h = 1e-6;
  CHECK(std::abs(prof.dpsi(r) - (prof.psi(r + h) - prof.psi(r - h)) / (2 * h)) < 1e-8);
}

TEST_CASE("Leibniz rule on random crossed fields") {
  for (auto g : {share(cyclic_diagonal(1, 3)), share(dihedral_real(3))}) {
    MatrixSymbolField a = random_polynomial_symbol(g, 2, 12), b = random_polynomial_symbol(g, 2, 13);
    FormField lhs = differential(multiply(a, b));
    FormField rhs = multiply(differential(a), form_from_symbol(b)) +
                    multiply(form_from_symbol(a), differential(b));
    std::mt19937 rng(14);
    for (int t = 0; t < 5; ++t) {
      rvec xi = random_point(2 * g->dim(), rng);
      CHECK(max_diff(lhs(xi), rhs(xi)) < 1e-9);
    }
  }
}

TEST_CASE("wrong derivative callbacks are rejected") {
  auto g = share(trivial_group(1));
  MatrixSymbolField bad(g, 1, [](const rvec& xi) {
    SymbolJet j = SymbolJet::zero(1, 1, 2);
    j.value[0](0, 0) = xi(0) * xi(0);
    j.gradient[0][0](0, 0) = xi(0);  // should be 2 x
    return j;
  });
  try {
    differential(bad);
    FAIL("expected DerivativeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DerivativeMismatch);
  }
  CHECK(derivative_mismatch(random_polynomial_symbol(g, 2, 3), 20, 1, 1.5) < 1e-6);
}

TEST_CASE("Gauss-Legendre nodes") {
  std::vector<double> x, w;
  for (int n : {1, 2, 5, 16, 33}) {
    gauss_legendre(n, x, w);
    double sw = 0.0;
    for (double v : w) sw += v;
    CHECK(std::abs(sw - 2.0) < 1e-13);
    // x^(2n-2) integrates exactly
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], 2 * n - 2);
    CHECK(std::abs(s - 2.0 / (2 * n - 1)) < 1e-13);
  }
}

TEST_CASE("shell quadrature integrates |z_1|^2a |z_2|^2b exactly") {
  // pi^d prod a_j! / (|a| + d - 1)! (R^{2(|a|+d)} - r^{2(|a|+d)}) / (|a| + d)
  auto exact = [](const std::vector<int>& a, double r0, double r1) {
    const int d = static_cast<int>(a.size());
    int tot = 0;
    double num = std::pow(kPi, d);
    for (int v : a) {
      tot += v;
      num *= std::tgamma(v + 1.0);
    }
    const int e = tot + d;
    return num / std::tgamma(double(e)) * (std::pow(r1, 2 * e) - std::pow(r0, 2 * e)) / e;
  };
  QuadratureScheme q;
  q.radial = 8;
  q.simplex = 6;
  q.angular = 8;
  q.r_inner = 0.5;
  q.r_outer = 1.7;
  for (std::vector<int> a : {std::vector<int>{0}, {3}, {0, 0}, {2, 1}, {3, 3}, {1, 0, 2}}) {
    const int d = static_cast<int>(a.size());
    double s = 0.0;
    for (const auto& node : q.nodes(d)) {
      double f = 1.0;
      for (int j = 0; j < d; ++j)
        f *= std::pow(node.y(j) * node.y(j) + node.y(d + j) * node.y(d + j), a[j]);
      s += node.weight * f;
    }
    CHECK(std::abs(s - exact(a, q.r_inner, q.r_outer)) < 1e-10 * exact(a, q.r_inner, q.r_outer));
  }
  // non-radial monomials average out
  double s = 0.0;
  for (const auto& node : q.nodes(2)) s += node.weight * node.y(0) * node.y(1) * node.y(2);
  CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("twisted trace of simple forms") {
  auto g = share(cyclic_diagonal(1, 3));
  // zero s-component gives zero
  MatrixSymbolField a = bump(random_polynomial_symbol(g, 2, 30), 1.5);
  MatrixSymbolField only_e(g, 2, [a](const rvec& xi) {
    SymbolJet j = a(xi);
    for (std::size_t c = 1; c < j.value.size(); ++c) {
      j.value[c].setZero();
      for (auto& d : j.gradient[c]) d.setZero();
    }
    return j;
  });
  FormField w = to_field(FormSymbol{{3u}, {only_e}});
  CHECK(std::abs(twisted_trace_single(w, 1, polynomial_quadrature())) == 0.0);
  // L_s = 0: trace of the degree zero value at the origin
  FormField w0 = form_from_symbol(a);
  CHECK(std::abs(twisted_trace(w0, 2, polynomial_quadrature()).value - a(rvec::Zero(2)).value[2].trace()) <
        1e-15);
  // the area form f dp ^ dx over the disc: int (R^2 - r^2)^2 = pi R^6 / 3
  auto t = share(trivial_group(1));
  MatrixSymbolField one = bump(constant_symbol(t, GroupAlgebraMatrix::identity(1, 1)), 1.5);
  FormField area = to_field(FormSymbol{{3u}, {one}});
  // dx ^ dp is negatively oriented
  CHECK(std::abs(twisted_trace(area, 0, polynomial_quadrature()).value + kPi * std::pow(1.5, 6) / 3.0) <
        1e-12);
}

TEST_CASE("graded trace, compatibility and closedness") {
  QuadratureScheme q = polynomial_quadrature();
  unsigned seed = 100;
  for (auto g : {share(cyclic_diagonal(1, 3)), share(dihedral_real(3)), share(cyclic_diagonal(2, 4))}) {
    for (const ConjugacyClass& cc : conjugacy_classes(*g)) {
      const int d = cc.fixed.dim();
      // split the top degree 2d between the factors
      for (int da = 0; da <= 2 * d; da += std::max(1, d)) {
        FormField a = to_field(random_form(g, 2, da, ++seed));
        FormField b = to_field(random_form(g, 2, 2 * d - da, ++seed));
        const double sign = (da * (2 * d - da)) % 2 ? -1.0 : 1.0;
        cplx ab = class_trace(multiply(a, b), cc, q), ba = class_trace(multiply(b, a), cc, q);
        CHECK(std::abs(ab) > 1e-6);
        CHECK(std::abs(ab - sign * ba) < 1e-8 * std::max(1.0, std::abs(ab)));
      }
      FormField a = to_field(random_form(g, 2, 2 * d, ++seed));
      const int s = cc.representative;
      for (int h = 0; h < g->order(); ++h) {
        const int t = g->multiply(g->multiply(h, s), g->inverse(h));
        cplx lhs = twisted_trace_single(a, t, q);
        cplx rhs = twisted_trace_single(conjugate(a, g->inverse(h)), s, q);
        CHECK(std::abs(lhs) > 1e-6);
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
      }
      if (d > 0) {
        FormField da = exterior_derivative(random_form(g, 2, 2 * d - 1, ++seed));
        CHECK(std::abs(twisted_trace_single(da, s, q)) < 1e-6);
      }
    }
  }
}
