#pragma once

#include <vector>

#include "mplab/linalg.hpp"

namespace mplab {

// Exterior algebra of C^m in the bitmask basis: bit j of a mask I set means
// e_j is a factor, e_I = e_{i1} ^ ... ^ e_{ik} with i1 < ... < ik.

inline int form_degree(unsigned mask) { return __builtin_popcount(mask); }

// sign s with e_I ^ e_J = s e_{I|J}; zero when I and J overlap
int wedge_sign(unsigned i, unsigned j);

// left exterior multiplication by e_j, dense 2^m x 2^m
cmat creation_op(int m, int j);
std::vector<cmat> creation_ops(int m);

// Lambda(A) for a (possibly rectangular) matrix A : C^{m_in} -> C^{m_out}
cmat exterior_power(const cmat& a);

// diagonal 0/1 projection onto even or odd degree
cmat parity_projection(int m, bool even);

}  // namespace mplab
