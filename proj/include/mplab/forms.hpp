#pragma once

#include <functional>
#include <vector>

#include "mplab/symbol.hpp"

namespace mplab {

// Matrix with entries in the exterior algebra over m real covectors.
// coeff[I] multiplies dxi^I in the bitmask basis (bit k is dxi_k, xi = (x, p)).
struct FormMatrix {
  int covectors = 0;
  std::vector<cmat> coeff;

  static FormMatrix zero(int m, int rows, int cols);
  static FormMatrix scalar(int m, const cmat& value);
  int rows() const { return static_cast<int>(coeff[0].rows()); }
  int cols() const { return static_cast<int>(coeff[0].cols()); }
  unsigned top_mask() const { return (1u << covectors) - 1; }
  FormMatrix degree_part(int k) const;
  FormMatrix block(int r, int c, int rows, int cols) const;

  FormMatrix& operator+=(const FormMatrix& o);
  FormMatrix& operator-=(const FormMatrix& o);
  FormMatrix& operator*=(cplx s);
};

FormMatrix operator+(FormMatrix a, const FormMatrix& b);
FormMatrix operator-(FormMatrix a, const FormMatrix& b);
FormMatrix operator*(cplx s, FormMatrix a);
// matrix product with wedge of entries
FormMatrix wedge(const FormMatrix& a, const FormMatrix& b);
// L^* of the coefficients: dxi_k -> sum_j L(k, j) dy_j, L is m x m'
FormMatrix pullback(const FormMatrix& a, const rmat& l);
double max_abs(const FormMatrix& a);

// Element of M_N(C^infty(C^n, Lambda(R^2n)) x| G), evaluated pointwise.
class FormField {
 public:
  using Evaluator = std::function<std::vector<FormMatrix>(const rvec&)>;

  FormField(GroupPtr group, int size, Evaluator eval);

  const FiniteUnitaryGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int size() const { return size_; }
  int real_dim() const { return 2 * group_->dim(); }
  std::vector<FormMatrix> operator()(const rvec& xi) const { return eval_(xi); }

 private:
  GroupPtr group_;
  int size_;
  Evaluator eval_;
};

FormField form_from_symbol(const MatrixSymbolField& a);
FormField operator+(const FormField& a, const FormField& b);
FormField operator-(const FormField& a, const FormField& b);
FormField scale(const FormField& a, cplx s);
// (w eta)_g(z) = sum_{g1 g2 = g} w_{g1}(z) ^ (g1 . eta_{g2})(z), g1 acting by pullback along g1^{-1}
FormField multiply(const FormField& a, const FormField& b);
// T_g a T_g^{-1}: components g . a_{g^{-1} h g}
FormField conjugate(const FormField& a, int g);
// [pi_z(w)]_{h,h'} = (h^* w_{h h'^{-1}})(z)
FormMatrix regular_representation(const FormField& w, const rvec& xi);

// sum_I c_I dxi^I with differentiable coefficient symbols
struct FormSymbol {
  std::vector<unsigned> masks;
  std::vector<MatrixSymbolField> coeffs;
};
FormField to_field(const FormSymbol& a);
FormField exterior_derivative(const FormSymbol& a);

// dP from the derivative callbacks, cross-checked against central differences
// (h = 1e-4, relative 1e-6) on 20 seeded probes; DerivativeMismatch on failure
FormField differential(const MatrixSymbolField& p, unsigned seed = 20240611, double probe_scale = 1.5);
// largest relative mismatch found by the probes
double derivative_mismatch(const MatrixSymbolField& p, int probes, unsigned seed, double probe_scale,
                           double h = 1e-4);

}  // namespace mplab
