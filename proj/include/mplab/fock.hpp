#pragma once

#include <vector>

#include "mplab/group_core.hpp"
#include "mplab/linalg.hpp"

namespace mplab {

// Truncated Fock space of n modes, occupations 0 <= k_j < K. Mode 1 is the
// most significant digit, so a_1 = a (x) I (x) ... (x) I.
struct FockBasis {
  int n = 1;
  int K = 16;
  int M = 8;  // states with level <= K - M are reliable

  FockBasis(int n_, int K_, int M_);
  int dim() const { return dim_; }
  int reliable_level() const { return K - M; }
  std::vector<int> occupation(int index) const;
  int index(const std::vector<int>& occ) const;
  int total(int index) const { return total_[index]; }

 private:
  int dim_ = 0;
  std::vector<int> total_;
};

// Operator on Fock (x) Lambda(C^n)^{form_dim} (x) C^{aux_dim}, in that tensor order.
struct FockOperator {
  FockBasis basis;
  int form_dim = 1;
  int aux_dim = 1;
  spmat matrix;

  int dim() const { return basis.dim() * form_dim * aux_dim; }
  // occupation total plus form degree
  int level(int row) const;
  int form_mask(int row) const { return (row / aux_dim) % form_dim; }
  std::vector<int> reliable_indices() const;
};

// Frobenius norm of X restricted to reliable inputs
double reliable_norm(const FockOperator& x);
double reliable_norm(const FockOperator& like, const spmat& x);

spmat annihilation(const FockBasis& b, int j);
spmat position_op(const FockBasis& b, int j);
spmat momentum_op(const FockBasis& b, int j);
// v . xi-hat with xi = (x_1..x_n, p_1..p_n)
spmat linear_op(const FockBasis& b, const cvec& v);

// log g = B + iA, A real symmetric, B real skew-symmetric
struct QuadraticHamiltonian {
  rmat A;
  rmat B;
};

struct LogResult {
  QuadraticHamiltonian h;
  bool branch_warning = false;  // an eigenvalue of g sits near -1
};

LogResult unitary_log(const cmat& g);

// Weyl quantisation of 1/2 xi^T Mq xi, Mq = [[A, -B], [B, A]]
spmat weyl_quantize_quadratic(const QuadraticHamiltonian& h, const FockBasis& b);

struct Metaplectic {
  FockOperator op;
  bool branch_warning = false;
};

// R_g = exp(-i H_hat) e^{i tr A / 2}
Metaplectic metaplectic(const cmat& g, const FockBasis& b);

// rho_g = R_g (x) Lambda(conj g)
FockOperator form_representation(const cmat& g, const FockBasis& b);

// |R_g (v.xi) R_g^{-1} - (S_g v).xi| on reliable inputs
double egorov_residual(const cmat& g, const cvec& v, const FockBasis& b);

// max over pairs |R_g R_h - R_gh| on reliable inputs
double homomorphism_defect(const FiniteUnitaryGroup& g, const FockBasis& b);

// g = O1 D O2 with O1, O2 real orthogonal and D diagonal; D is further split into
// single-mode phases conjugated by permutations, giving a product of O(n) and
// (conjugated) U(1) factors.
std::vector<cmat> orthogonal_torus_factorization(const cmat& g);

// |R_g - prod R_factor| on reliable inputs
double generation_defect(const cmat& g, const FockBasis& b);

// product of R over the loop diag(e^{it},1,..) in `steps` pieces; with
// include_phase = false the determinant correction is dropped
FockOperator loop_product(const FockBasis& b, int steps, bool include_phase);

}  // namespace mplab
