#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mplab/group_core.hpp"
#include "mplab/linalg.hpp"

namespace mplab {

using GroupPtr = std::shared_ptr<const FiniteUnitaryGroup>;

// Values and first derivatives of every group component at one point.
// gradient[g][k] is the derivative along real coordinate k of xi = (x, p).
struct SymbolJet {
  std::vector<cmat> value;
  std::vector<std::vector<cmat>> gradient;

  static SymbolJet zero(int order, int size, int real_dim);
};

// Element of M_N(C^infty(C^n) x| G): a smooth matrix function per group element.
class MatrixSymbolField {
 public:
  using Evaluator = std::function<SymbolJet(const rvec&)>;

  MatrixSymbolField(GroupPtr group, int size, Evaluator eval);

  const FiniteUnitaryGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int size() const { return size_; }
  int real_dim() const { return 2 * group_->dim(); }
  SymbolJet operator()(const rvec& xi) const { return eval_(xi); }

 private:
  GroupPtr group_;
  int size_;
  Evaluator eval_;
};

MatrixSymbolField constant_symbol(GroupPtr g, const GroupAlgebraMatrix& p);

// [pi_z(a)]_{h,h'} = a_{h h'^{-1}}(h z), with its derivative in z
struct RegularJet {
  cmat value;
  std::vector<cmat> gradient;
};

RegularJet regular_representation(const MatrixSymbolField& a, const rvec& xi);
// a_g(z) = [pi_z(a)]_{e, g^{-1}}
SymbolJet components_from_regular(const RegularJet& r, const FiniteUnitaryGroup& g, int size);
cmat regular_constant(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p);

MatrixSymbolField multiply(const MatrixSymbolField& a, const MatrixSymbolField& b);
MatrixSymbolField adjoint(const MatrixSymbolField& a);
// a . P for constant P, needs no orbit evaluations
MatrixSymbolField multiply_constant_right(const MatrixSymbolField& a, const GroupAlgebraMatrix& p);

// Symbol a with projections P1 (domain) and P2 (target); elliptic outside radius.
struct EllipticTriple {
  MatrixSymbolField a;
  GroupAlgebraMatrix p1;
  GroupAlgebraMatrix p2;
  double radius = 1.0;
  bool homogeneous = false;
  // a^* a = P1 and a a^* = P2 for |z| >= radius, so polar retraction is the identity
  bool isometric = false;
};

// Enforces a = P2 a P1 through the crossed product.
EllipticTriple make_triple(const MatrixSymbolField& a, const GroupAlgebraMatrix& p1,
                           const GroupAlgebraMatrix& p2, double radius);

// max over the components of |a - P2 a P1| at xi
double compatibility_defect(const EllipticTriple& t, const rvec& xi);

std::vector<rvec> sphere_points(int dim, double radius, int density);

struct EllipticCertificate {
  double value = 0.0;  // smallest corner singular value found
  rvec worst;
  int points = 0;
};

// throws NotElliptic when the certificate is <= 1e-6
EllipticCertificate check_elliptic(const EllipticTriple& t, double radius, int density);
// same, without throwing
EllipticCertificate elliptic_certificate(const EllipticTriple& t, double radius, int density);

enum class EulerScaling { None, Homogeneous, Regularized };

// sigma(E)(x, p) = sum_j (x_j + i p_j) e_j^ + (x_j - i p_j) iota_j on Lambda(C^n),
// identity component only. Homogeneous divides by |xi|, Regularized by sqrt(1 + |xi|^2).
MatrixSymbolField euler_symbol(GroupPtr g, EulerScaling scaling);

// psi = -pi/2 + pi S((r - r0)/(r1 - r0)), S a smooth step
struct PsiProfile {
  enum class Kind { Quintic, SineRamp };
  Kind kind = Kind::Quintic;
  double r0 = 1.0;
  double r1 = 2.0;
  double psi(double r) const;
  double dpsi(double r) const;
};

MatrixSymbolField polar_retract(const EllipticTriple& t);

struct DifferencePair {
  MatrixSymbolField p1;
  MatrixSymbolField p0;
  double r0 = 1.0;
  double r1 = 2.0;
  std::vector<int> support;  // indices where p1 and p0 can be nonzero
  // pi_z(p1) with derivatives from a single pi_z(a); psi is G-invariant
  std::function<RegularJet(const rvec&)> regular;
};

// p1 = 1/2 [[(1 - sin psi) P1, a_u^* cos psi], [a_u cos psi, (1 + sin psi) P2]],
// p0 = diag(0, P2); a_u the polar retraction of a
DifferencePair difference_construction(const EllipticTriple& t, const PsiProfile& profile);

// b over C^n valued in End(C^{N_b}) with unitary representations rho1, rho2 of G
// intertwined by b and commuting with the projections q1, q2
struct EquivariantTriple {
  MatrixSymbolField b;  // over the trivial group
  cmat q1;
  cmat q2;
  std::vector<cmat> rho1;
  std::vector<cmat> rho2;
};

// max |rho2(g) b(g^{-1} w) rho1(g)^{-1} - b(w)| over sample points; NotEquivariant above 1e-8
double intertwining_defect(const EquivariantTriple& b, const FiniteUnitaryGroup& g, int samples,
                           unsigned seed);

// G acting diagonally on C^n x C^n, with map from G indices to the doubled indices
struct DoubledGroup {
  GroupPtr group;
  std::vector<int> from_base;
};
DoubledGroup doubled_group(const FiniteUnitaryGroup& g);

// a # b = [[a (x) 1, -1 (x) b^*], [1 (x) b, a^* (x) 1]] on C^{2n}, coordinates
// (x_z, x_w, p_z, p_w)
EllipticTriple exterior_product(const EllipticTriple& a, const EquivariantTriple& b);

// Euler symbol with the conjugate exterior representation, as an equivariant factor
EquivariantTriple euler_factor(const FiniteUnitaryGroup& g, EulerScaling scaling);

// sigma(E_0) (x) 1 restricted to (1 (x) P) even -> odd
EllipticTriple bott_map(GroupPtr g, const GroupAlgebraMatrix& p);

// sigma_t(z, w) = sigma(z cos t + w sin t, w cos t - z sin t)
EllipticTriple rotation_homotopy(const EllipticTriple& t, double angle);

struct RotationCurve {
  std::vector<double> angles;
  std::vector<double> certificates;
};

// throws EllipticityLost if the certificate drops below half of its t = 0 value
RotationCurve rotation_certificates(const EllipticTriple& t, double radius, int steps, int density);

}  // namespace mplab
