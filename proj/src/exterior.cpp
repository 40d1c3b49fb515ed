#include "mplab/exterior.hpp"

namespace mplab {

int wedge_sign(unsigned i, unsigned j) {
  if (i & j) return 0;
  // count pairs (a in I, b in J) with a > b
  int swaps = 0;
  for (unsigned rest = j; rest; rest &= rest - 1) {
    unsigned b = __builtin_ctz(rest);
    swaps += __builtin_popcount(i >> (b + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

cmat creation_op(int m, int j) {
  const int dim = 1 << m;
  cmat e = cmat::Zero(dim, dim);
  for (int mask = 0; mask < dim; ++mask) {
    if (mask & (1 << j)) continue;
    int below = __builtin_popcount(static_cast<unsigned>(mask) & ((1u << j) - 1));
    e(mask | (1 << j), mask) = (below & 1) ? -1.0 : 1.0;
  }
  return e;
}

std::vector<cmat> creation_ops(int m) {
  std::vector<cmat> ops;
  for (int j = 0; j < m; ++j) ops.push_back(creation_op(m, j));
  return ops;
}

cmat exterior_power(const cmat& a) {
  const int mo = static_cast<int>(a.rows()), mi = static_cast<int>(a.cols());
  const int dout = 1 << mo, din = 1 << mi;
  std::vector<cmat> e = creation_ops(mo);
  cmat out = cmat::Zero(dout, din);
  for (int mask = 0; mask < din; ++mask) {
    cvec v = cvec::Zero(dout);
    v(0) = 1.0;
    // e_{i1} ^ ... ^ e_{ik}: apply the highest index first
    for (int c = mi - 1; c >= 0; --c) {
      if (!(mask & (1 << c))) continue;
      cvec w = cvec::Zero(dout);
      for (int r = 0; r < mo; ++r)
        if (a(r, c) != cplx(0.0)) w += a(r, c) * (e[r] * v);
      v = w;
    }
    out.col(mask) = v;
  }
  return out;
}

cmat parity_projection(int m, bool even) {
  const int dim = 1 << m;
  cmat p = cmat::Zero(dim, dim);
  for (int mask = 0; mask < dim; ++mask)
    if ((form_degree(mask) % 2 == 0) == even) p(mask, mask) = 1.0;
  return p;
}

}  // namespace mplab
