#pragma once

#include <string>
#include <vector>

#include "mplab/linalg.hpp"

namespace mplab {

class UnitaryElement {
 public:
  // throws NotUnitary if |g^* g - I| > tol
  static UnitaryElement from_matrix(const cmat& g, double tol = 1e-10);
  const cmat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  explicit UnitaryElement(cmat m) : m_(std::move(m)) {}
  cmat m_;
};

// Real 2n x 2n matrix of g = U + iV acting on xi = (x_1..x_n, p_1..p_n), where
// C^n is identified with R^2n by z = p + i x.
rmat real_action(const cmat& g);

class FiniteUnitaryGroup {
 public:
  int dim() const { return dim_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const cmat& element(int i) const { return elements_[i]; }
  const std::vector<cmat>& elements() const { return elements_; }
  const rmat& real(int i) const { return real_[i]; }
  int identity() const { return 0; }
  int multiply(int a, int b) const { return table_[a * order() + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int find(const cmat& g, double tol = 1e-8) const;
  bool is_abelian() const;

  std::string label;

 private:
  friend FiniteUnitaryGroup close_group(const std::vector<UnitaryElement>&, int, int);
  int dim_ = 0;
  std::vector<cmat> elements_;
  std::vector<rmat> real_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

// Closure of the generated subgroup; element 0 is the identity and elements are
// listed in breadth-first order. dim is only needed when gens is empty.
FiniteUnitaryGroup close_group(const std::vector<UnitaryElement>& gens, int max_order,
                               int dim = 0);

struct FixedSubspace {
  cmat basis;       // orthonormal basis of L_s = ker(s - I)
  cmat complement;  // orthonormal basis of the orthogonal complement
  cplx perp_det;    // det(1 - s) on the complement
  int dim() const { return static_cast<int>(basis.cols()); }
};

FixedSubspace fixed_subspace(const cmat& s, double tol = 1e-8);

struct ConjugacyClass {
  int representative;
  std::vector<int> members;
  FixedSubspace fixed;  // of the representative
};

std::vector<ConjugacyClass> conjugacy_classes(const FiniteUnitaryGroup& g);

// Element of M_N(C[G]) with constant coefficients: one N x N block per element.
struct GroupAlgebraMatrix {
  int size = 0;
  std::vector<cmat> comp;

  static GroupAlgebraMatrix zero(int order, int size);
  static GroupAlgebraMatrix identity(int order, int size);
};

GroupAlgebraMatrix multiply(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& a,
                            const GroupAlgebraMatrix& b);
GroupAlgebraMatrix adjoint(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& a);

// max over components of |P^2 - P| and |P^* - P|
double projection_defect(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p);

// P_g = (dim/|G|) conj(chi(g)) I_N; throws NotIdempotent for non-irreducible chi
GroupAlgebraMatrix isotypic_projection(const FiniteUnitaryGroup& g,
                                       const std::vector<cplx>& character, int dim, int n_copies);

std::vector<cplx> trivial_character(const FiniteUnitaryGroup& g);
std::vector<cplx> det_power_character(const FiniteUnitaryGroup& g, int power);
std::vector<cplx> standard_character(const FiniteUnitaryGroup& g);

// stored subgroups
FiniteUnitaryGroup trivial_group(int n);
FiniteUnitaryGroup cyclic_diagonal(int n, int k);  // generated by diag(e^{2 pi i/k}, 1, ..., 1)
FiniteUnitaryGroup scalar_cyclic(int n, int k);    // generated by e^{2 pi i/k} I
FiniteUnitaryGroup dihedral_real(int k);           // D_k inside O(2) in U(2)
FiniteUnitaryGroup quaternion_group();             // Q8 inside SU(2)
FiniteUnitaryGroup generic_cyclic8();              // Z/8 in U(2), not diagonal, not real

}  // namespace mplab
