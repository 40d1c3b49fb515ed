#pragma once

#include "mplab/fock.hpp"
#include "mplab/group_core.hpp"

namespace mplab {

// Euler operator sqrt2 sum_j (a_j (x) E_j + a_j^* (x) iota_j) on Fock (x) Lambda(C^n),
// kept as its even -> odd part (zero on odd inputs).
FockOperator build_euler(const FockBasis& b);

// E0 = (E E^* + 1)^{-1/2} E
FockOperator normalize(const FockOperator& e);

// |rho_g E rho_g^{-1} - E| on reliable inputs
double equivariance_residual(const cmat& g, const FockOperator& e);

// 1 (x) P = sum_g rho_g (x) P_g on Fock (x) Lambda (x) C^N
FockOperator twisting_projection(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p,
                                 const FockBasis& b);

struct TwistedOperator {
  FockOperator op;          // (1 (x) P)(E0 (x) 1_N)(1 (x) P)
  FockOperator projection;  // 1 (x) P
  double commutator_residual = 0.0;
};

// throws NotProjection if 1 (x) P fails to be a projection on the reliable block
TwistedOperator twist_by_projection(const FockOperator& e0, const FiniteUnitaryGroup& g,
                                    const GroupAlgebraMatrix& p);

struct IndexResult {
  int kernel = 0;
  int cokernel = 0;
  int index = 0;
  int even_dim = 0;
  int odd_dim = 0;
  double smallest_kept = 0.0;   // smallest singular value above the threshold
  double largest_zero = 0.0;    // largest singular value counted as zero
  rvec singular_values;
};

// Index of op restricted to the even part of the range of `projection`, mapped to
// the odd part, on the reliable block. Singular values <= 1e-6 count as zero; any
// value in (1e-6, 1e-2) raises GapFailure.
IndexResult analytic_index(const FockOperator& op, const FockOperator& projection);

struct StableIndex {
  IndexResult base;
  IndexResult refined;
  int K_base = 0;
  int K_refined = 0;
  int index() const { return base.index; }
};

// Builds, normalises and twists the Euler operator at K and K + dK; throws
// UnstableIndex if the two indices differ.
StableIndex twisted_euler_index(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p,
                                const FockBasis& b, int dK = 8);

}  // namespace mplab
