#pragma once

#include <vector>

#include "mplab/forms.hpp"
#include "mplab/quadrature.hpp"
#include "mplab/symbol.hpp"

namespace mplab {

// i / (2 pi) = -1 / (2 pi i), the coefficient of dP dP in the Chern form
extern const cplx kChernConstant;

// w = P1 exp(c dP1 dP1) - P0 exp(c dP0 dP0), evaluated through pi_z on the
// support of the pair. Throws SupportLeak if w does not vanish beyond r1 (1e-12).
FormField chern_form(const DifferencePair& pair);
// same form from products of crossed form fields, for cross-checks
FormField chern_form_crossed(const MatrixSymbolField& p1, const MatrixSymbolField& p0);
// max |w| over sphere samples at radii 1.01 r1, 1.5 r1 and 3 r1
double support_leak(const FormField& w, double r1, int density = 6);

// Real embedding of L_s: columns along x'_1..x'_d (z = i v_k), then p'_1..p'_d (z = v_k)
rmat fixed_embedding(const cmat& basis);
// sign with dx'_1..dx'_d dp'_1..dp'_d = sign prod_j dp'_j ^ dx'_j
int orientation_sign(int d);

struct TraceValue {
  cplx value;   // at the doubled resolution
  cplx coarse;  // at the requested resolution
  int nodes = 0;
};

// int_{L_s} tr w_s, or tr w_s(0) when L_s = 0. QuadratureUnconverged if doubling
// moves the value by more than 1e-4 max(1, |value|).
TraceValue twisted_trace(const FormField& w, int s, const QuadratureScheme& q);
cplx twisted_trace_single(const FormField& w, int s, const QuadratureScheme& q);

struct ClassValue {
  int representative = 0;
  std::vector<int> members;
  int fixed_dim = 0;
  cplx perp_det;
  cplx value;   // (1 / conj perp_det) sum over members of tau_s
  cplx coarse;
};

struct TopologicalIndex {
  cplx total;
  cplx total_coarse;
  std::vector<ClassValue> per_class;
  double imag = 0.0;        // |Im total|
  double distance = 0.0;    // |Re total - round(Re total)|
  bool integral = false;    // imag <= 1e-4 and distance <= 1e-3
  long rounded = 0;
  double max_p1_defect = 0.0;  // |p1^2 - p1| and |p1^* - p1| over the nodes, through pi_z
};

// Localized trace of the Chern form of the difference construction for one
// element, through pi_z restricted to L_s; radii taken from the pair.
TraceValue localized_trace(const DifferencePair& pair, int s, const QuadratureScheme& q,
                           double* p1_defect = nullptr);
TopologicalIndex topological_index(const EllipticTriple& t, const QuadratureScheme& q,
                                   const PsiProfile& profile = PsiProfile{});
// int over C^n of the Chern form of the untwisted Euler symbol pair; expected 1
TraceValue riemann_roch_check(int n, const QuadratureScheme& q);

}  // namespace mplab
