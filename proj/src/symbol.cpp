#include "mplab/symbol.hpp"

#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "mplab/errors.hpp"
#include "mplab/exterior.hpp"

namespace mplab {

SymbolJet SymbolJet::zero(int order, int size, int real_dim) {
  SymbolJet j;
  j.value.assign(order, cmat::Zero(size, size));
  j.gradient.assign(order, std::vector<cmat>(real_dim, cmat::Zero(size, size)));
  return j;
}

MatrixSymbolField::MatrixSymbolField(GroupPtr group, int size, Evaluator eval)
    : group_(std::move(group)), size_(size), eval_(std::move(eval)) {}

MatrixSymbolField constant_symbol(GroupPtr g, const GroupAlgebraMatrix& p) {
  const int order = g->order(), m = 2 * g->dim(), size = p.size;
  return MatrixSymbolField(g, size, [p, order, m, size](const rvec&) {
    SymbolJet j = SymbolJet::zero(order, size, m);
    j.value = p.comp;
    return j;
  });
}

RegularJet regular_representation(const MatrixSymbolField& a, const rvec& xi) {
  const FiniteUnitaryGroup& g = a.group();
  const int order = g.order(), n = a.size(), m = a.real_dim();
  RegularJet r;
  r.value = cmat::Zero(order * n, order * n);
  r.gradient.assign(m, cmat::Zero(order * n, order * n));
  for (int h = 0; h < order; ++h) {
    const rmat& s = g.real(h);
    SymbolJet j = a(s * xi);
    for (int hp = 0; hp < order; ++hp) {
      int c = g.multiply(h, g.inverse(hp));
      r.value.block(h * n, hp * n, n, n) = j.value[c];
      for (int k = 0; k < m; ++k) {
        cmat d = cmat::Zero(n, n);
        for (int l = 0; l < m; ++l)
          if (s(l, k) != 0.0) d += s(l, k) * j.gradient[c][l];
        r.gradient[k].block(h * n, hp * n, n, n) = d;
      }
    }
  }
  return r;
}

SymbolJet components_from_regular(const RegularJet& r, const FiniteUnitaryGroup& g, int size) {
  const int order = g.order(), m = static_cast<int>(r.gradient.size());
  SymbolJet j = SymbolJet::zero(order, size, m);
  for (int c = 0; c < order; ++c) {
    int col = g.inverse(c) * size;
    j.value[c] = r.value.block(0, col, size, size);
    for (int k = 0; k < m; ++k) j.gradient[c][k] = r.gradient[k].block(0, col, size, size);
  }
  return j;
}

cmat regular_constant(const FiniteUnitaryGroup& g, const GroupAlgebraMatrix& p) {
  const int order = g.order(), n = p.size;
  cmat out(order * n, order * n);
  for (int h = 0; h < order; ++h)
    for (int hp = 0; hp < order; ++hp)
      out.block(h * n, hp * n, n, n) = p.comp[g.multiply(h, g.inverse(hp))];
  return out;
}

MatrixSymbolField multiply(const MatrixSymbolField& a, const MatrixSymbolField& b) {
  return MatrixSymbolField(a.group_ptr(), a.size(), [a, b](const rvec& xi) {
    RegularJet ra = regular_representation(a, xi), rb = regular_representation(b, xi);
    RegularJet r;
    r.value = ra.value * rb.value;
    for (size_t k = 0; k < ra.gradient.size(); ++k)
      r.gradient.push_back(ra.gradient[k] * rb.value + ra.value * rb.gradient[k]);
    return components_from_regular(r, a.group(), a.size());
  });
}

MatrixSymbolField adjoint(const MatrixSymbolField& a) {
  return MatrixSymbolField(a.group_ptr(), a.size(), [a](const rvec& xi) {
    const FiniteUnitaryGroup& g = a.group();
    const int m = a.real_dim();
    SymbolJet out = SymbolJet::zero(g.order(), a.size(), m);
    for (int c = 0; c < g.order(); ++c) {
      int ci = g.inverse(c);
      const rmat& s = g.real(ci);
      SymbolJet j = a(s * xi);
      out.value[c] = j.value[ci].adjoint();
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (s(l, k) != 0.0) out.gradient[c][k] += s(l, k) * j.gradient[ci][l].adjoint();
    }
    return out;
  });
}

MatrixSymbolField multiply_constant_right(const MatrixSymbolField& a, const GroupAlgebraMatrix& p) {
  return MatrixSymbolField(a.group_ptr(), a.size(), [a, p](const rvec& xi) {
    const FiniteUnitaryGroup& g = a.group();
    SymbolJet j = a(xi);
    const int m = a.real_dim();
    SymbolJet out = SymbolJet::zero(g.order(), a.size(), m);
    for (int g1 = 0; g1 < g.order(); ++g1)
      for (int g2 = 0; g2 < g.order(); ++g2) {
        const cmat& pc = p.comp[g2];
        if (max_abs(pc) == 0.0) continue;
        int c = g.multiply(g1, g2);
        out.value[c] += j.value[g1] * pc;
        for (int k = 0; k < m; ++k) out.gradient[c][k] += j.gradient[g1][k] * pc;
      }
    return out;
  });
}

EllipticTriple make_triple(const MatrixSymbolField& a, const GroupAlgebraMatrix& p1,
                           const GroupAlgebraMatrix& p2, double radius) {
  MatrixSymbolField compatible =
      multiply(constant_symbol(a.group_ptr(), p2), multiply_constant_right(a, p1));
  return EllipticTriple{compatible, p1, p2, radius, false, false};
}

double compatibility_defect(const EllipticTriple& t, const rvec& xi) {
  MatrixSymbolField sandwiched =
      multiply(constant_symbol(t.a.group_ptr(), t.p2), multiply_constant_right(t.a, t.p1));
  SymbolJet x = t.a(xi), y = sandwiched(xi);
  double d = 0.0;
  for (size_t c = 0; c < x.value.size(); ++c) d = std::max(d, max_abs(x.value[c] - y.value[c]));
  return d;
}

std::vector<rvec> sphere_points(int dim, double radius, int density) {
  std::vector<rvec> pts;
  if (dim == 2) {
    for (int i = 0; i < density; ++i) {
      double t = 2.0 * kPi * i / density;
      rvec p(2);
      p << radius * std::cos(t), radius * std::sin(t);
      pts.push_back(p);
    }
    return pts;
  }
  for (int k = 0; k < dim; ++k)
    for (double sgn : {1.0, -1.0}) {
      rvec p = rvec::Zero(dim);
      p(k) = sgn * radius;
      pts.push_back(p);
    }
  std::mt19937 rng(20240611u);
  std::normal_distribution<double> nd;
  while (static_cast<int>(pts.size()) < density) {
    rvec p(dim);
    for (int k = 0; k < dim; ++k) p(k) = nd(rng);
    pts.push_back(radius * p / p.norm());
  }
  return pts;
}

namespace {

double min_corner(const cmat& a, const cmat& q1, const cmat& q2) {
  double best = std::numeric_limits<double>::infinity();
  if (q1.cols() > 0) {
    cmat aq = a * q1;
    Eigen::SelfAdjointEigenSolver<cmat> es(aq.adjoint() * aq, Eigen::EigenvaluesOnly);
    best = std::min(best, es.eigenvalues()(0));
  }
  if (q2.cols() > 0) {
    cmat aq = a.adjoint() * q2;
    Eigen::SelfAdjointEigenSolver<cmat> es(aq.adjoint() * aq, Eigen::EigenvaluesOnly);
    best = std::min(best, es.eigenvalues()(0));
  }
  return std::sqrt(std::max(best, 0.0));
}

}  // namespace

EllipticCertificate elliptic_certificate(const EllipticTriple& t, double radius, int density) {
  const FiniteUnitaryGroup& g = t.a.group();
  cmat q1 = projection_range(regular_constant(g, t.p1));
  cmat q2 = projection_range(regular_constant(g, t.p2));
  EllipticCertificate cert;
  cert.value = std::numeric_limits<double>::infinity();
  for (const rvec& p : sphere_points(t.a.real_dim(), radius, density)) {
    double c = min_corner(regular_representation(t.a, p).value, q1, q2);
    ++cert.points;
    if (c < cert.value) {
      cert.value = c;
      cert.worst = p;
    }
  }
  return cert;
}

EllipticCertificate check_elliptic(const EllipticTriple& t, double radius, int density) {
  EllipticCertificate cert = elliptic_certificate(t, radius, density);
  if (cert.value <= 1e-6) {
    std::string where;
    for (int k = 0; k < cert.worst.size(); ++k) where += (k ? "," : "") + std::to_string(cert.worst(k));
    throw Error(ErrorCode::NotElliptic, "certificate " + std::to_string(cert.value) + " at (" + where + ")");
  }
  return cert;
}

MatrixSymbolField euler_symbol(GroupPtr g, EulerScaling scaling) {
  const int n = g->dim(), d = 1 << n, order = g->order();
  std::vector<cmat> e = creation_ops(n);
  std::vector<cmat> dsig(2 * n);
  for (int j = 0; j < n; ++j) {
    dsig[j] = e[j] + e[j].adjoint();
    dsig[n + j] = kI * e[j] - kI * e[j].adjoint();
  }
  return MatrixSymbolField(g, d, [dsig, scaling, n, d, order](const rvec& xi) {
    SymbolJet j = SymbolJet::zero(order, d, 2 * n);
    cmat sig = cmat::Zero(d, d);
    for (int k = 0; k < 2 * n; ++k) sig += xi(k) * dsig[k];
    double r2 = xi.squaredNorm();
    double s = 1.0;
    if (scaling == EulerScaling::Homogeneous) s = std::sqrt(r2);
    if (scaling == EulerScaling::Regularized) s = std::sqrt(1.0 + r2);
    if (s == 0.0) return j;
    j.value[0] = sig / s;
    for (int k = 0; k < 2 * n; ++k) {
      j.gradient[0][k] = dsig[k] / s;
      if (scaling != EulerScaling::None) j.gradient[0][k] -= sig * (xi(k) / (s * s * s));
    }
    return j;
  });
}

double PsiProfile::psi(double r) const {
  double t = std::clamp((r - r0) / (r1 - r0), 0.0, 1.0);
  double s = kind == Kind::Quintic ? t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
                                   : t - std::sin(2.0 * kPi * t) / (2.0 * kPi);
  return -0.5 * kPi + kPi * s;
}

double PsiProfile::dpsi(double r) const {
  if (r <= r0 || r >= r1) return 0.0;
  double t = (r - r0) / (r1 - r0);
  double ds = kind == Kind::Quintic ? 30.0 * t * t * (1.0 - t) * (1.0 - t)
                                    : 1.0 - std::cos(2.0 * kPi * t);
  return kPi * ds / (r1 - r0);
}

namespace {

// pi_z of the polar retraction a (a^* a)^{-1/2}, computed from pi_z(a) alone
RegularJet polar_regular(const EllipticTriple& t, const cmat& q, const rvec& xi) {
  RegularJet ra = regular_representation(t.a, xi);
  if (t.isometric) return ra;
  const int dim = static_cast<int>(q.rows());
  cmat x = ra.value.adjoint() * ra.value;
  cmat y = x + (cmat::Identity(dim, dim) - q);
  HermitianCalculus hc = hermitian_calculus(y);
  if (hc.values.minCoeff() <= 1e-10)
    throw Error(ErrorCode::NotElliptic, "symbol not invertible on the retraction annulus");
  auto f = [](double l) { return 1.0 / std::sqrt(l); };
  auto df = [](double l) { return -0.5 / (l * std::sqrt(l)); };
  cmat c = q * hc.apply(f) * q;
  RegularJet out;
  out.value = ra.value * c;
  for (size_t k = 0; k < ra.gradient.size(); ++k) {
    cmat dx = ra.gradient[k].adjoint() * ra.value + ra.value.adjoint() * ra.gradient[k];
    cmat dc = q * hc.derivative(dx, f, df) * q;
    out.gradient.push_back(ra.gradient[k] * c + ra.value * dc);
  }
  return out;
}

}  // namespace

MatrixSymbolField polar_retract(const EllipticTriple& t) {
  if (t.isometric) return t.a;
  cmat q = regular_constant(t.a.group(), t.p1);
  return MatrixSymbolField(t.a.group_ptr(), t.a.size(), [t, q](const rvec& xi) {
    return components_from_regular(polar_regular(t, q, xi), t.a.group(), t.a.size());
  });
}

DifferencePair difference_construction(const EllipticTriple& t, const PsiProfile& profile) {
  const FiniteUnitaryGroup& g = t.a.group();
  const int n = t.a.size(), order = g.order(), m = t.a.real_dim();
  cmat q = regular_constant(g, t.p1);

  auto p1_eval = [t, q, profile, n, order, m](const rvec& xi) {
    const FiniteUnitaryGroup& grp = t.a.group();
    SymbolJet j = SymbolJet::zero(order, 2 * n, m);
    const double r = xi.norm();
    const double ps = profile.psi(r), dps = profile.dpsi(r);
    const double s = std::sin(ps), c = std::cos(ps);
    for (int h = 0; h < order; ++h) {
      j.value[h].topLeftCorner(n, n) = 0.5 * (1.0 - s) * t.p1.comp[h];
      j.value[h].bottomRightCorner(n, n) = 0.5 * (1.0 + s) * t.p2.comp[h];
    }
    if (r <= profile.r0 || r >= profile.r1) return j;

    RegularJet u = polar_regular(t, q, xi);
    for (int h = 0; h < order; ++h) {
      const int col = grp.inverse(h) * n;
      // a_u components sit in row e, those of a_u^* are adjoints of column e
      cmat au = u.value.block(0, col, n, n);
      cmat aus = u.value.block(col, 0, n, n).adjoint();
      j.value[h].bottomLeftCorner(n, n) = 0.5 * c * au;
      j.value[h].topRightCorner(n, n) = 0.5 * c * aus;
      for (int k = 0; k < m; ++k) {
        const double dk = xi(k) / r * dps;
        const double ds = c * dk, dc = -s * dk;
        cmat dau = u.gradient[k].block(0, col, n, n);
        cmat daus = u.gradient[k].block(col, 0, n, n).adjoint();
        cmat& gk = j.gradient[h][k];
        gk.topLeftCorner(n, n) = -0.5 * ds * t.p1.comp[h];
        gk.bottomRightCorner(n, n) = 0.5 * ds * t.p2.comp[h];
        gk.bottomLeftCorner(n, n) = 0.5 * (dc * au + c * dau);
        gk.topRightCorner(n, n) = 0.5 * (dc * aus + c * daus);
      }
    }
    return j;
  };

  GroupAlgebraMatrix p0c = GroupAlgebraMatrix::zero(order, 2 * n);
  for (int h = 0; h < order; ++h) p0c.comp[h].bottomRightCorner(n, n) = t.p2.comp[h];

  cmat q2 = regular_constant(g, t.p2);
  // pi_z(p1) in the h-major layout of a 2n x 2n symbol
  auto regular = [t, q, q2, profile, n, order, m](const rvec& xi) {
    const int big = order * n;
    const double r = xi.norm();
    const double ps = profile.psi(r), dps = profile.dpsi(r);
    const double s = std::sin(ps), c = std::cos(ps);
    cmat v = cmat::Zero(2 * big, 2 * big);
    std::vector<cmat> grad(m, cmat::Zero(2 * big, 2 * big));
    v.topLeftCorner(big, big) = 0.5 * (1.0 - s) * q;
    v.bottomRightCorner(big, big) = 0.5 * (1.0 + s) * q2;
    if (r > profile.r0 && r < profile.r1) {
      RegularJet u = polar_regular(t, q, xi);
      v.bottomLeftCorner(big, big) = 0.5 * c * u.value;
      v.topRightCorner(big, big) = 0.5 * c * u.value.adjoint();
      for (int k = 0; k < m; ++k) {
        const double dk = xi(k) / r * dps;
        const double ds = c * dk, dc = -s * dk;
        cmat& gk = grad[k];
        gk.topLeftCorner(big, big) = -0.5 * ds * q;
        gk.bottomRightCorner(big, big) = 0.5 * ds * q2;
        gk.bottomLeftCorner(big, big) = 0.5 * (dc * u.value + c * u.gradient[k]);
        gk.topRightCorner(big, big) = 0.5 * (dc * u.value + c * u.gradient[k]).adjoint();
      }
    }
    // block (h, h') of the 2n x 2n symbol gathers rows h n + i and big + h n + i
    std::vector<int> perm(2 * big);
    for (int h = 0; h < order; ++h)
      for (int i = 0; i < n; ++i) {
        perm[h * 2 * n + i] = h * n + i;
        perm[h * 2 * n + n + i] = big + h * n + i;
      }
    RegularJet out;
    out.value = submatrix(v, perm, perm);
    for (const cmat& gk : grad) out.gradient.push_back(submatrix(gk, perm, perm));
    return out;
  };

  DifferencePair dp{MatrixSymbolField(t.a.group_ptr(), 2 * n, p1_eval),
                    constant_symbol(t.a.group_ptr(), p0c), profile.r0, profile.r1, {}, regular};
  auto touches = [&](const GroupAlgebraMatrix& p, int i) {
    for (int h = 0; h < order; ++h)
      if (p.comp[h].row(i).norm() + p.comp[h].col(i).norm() > 0.0) return true;
    return false;
  };
  for (int i = 0; i < n; ++i)
    if (touches(t.p1, i)) dp.support.push_back(i);
  for (int i = 0; i < n; ++i)
    if (touches(t.p2, i)) dp.support.push_back(n + i);
  return dp;
}

double intertwining_defect(const EquivariantTriple& b, const FiniteUnitaryGroup& g, int samples,
                           unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  const int m = 2 * g.dim();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    rvec w(m);
    for (int k = 0; k < m; ++k) w(k) = nd(rng);
    cmat bw = b.b(w).value[0];
    for (int h = 0; h < g.order(); ++h) {
      cmat moved = b.b(g.real(g.inverse(h)) * w).value[0];
      cmat lhs = b.rho2[h] * moved * b.rho1[h].adjoint();
      worst = std::max(worst, max_abs(lhs - bw));
    }
  }
  return worst;
}

DoubledGroup doubled_group(const FiniteUnitaryGroup& g) {
  const int n = g.dim();
  std::vector<UnitaryElement> gens;
  for (int h = 1; h < g.order(); ++h) {
    cmat d = cmat::Zero(2 * n, 2 * n);
    d.topLeftCorner(n, n) = g.element(h);
    d.bottomRightCorner(n, n) = g.element(h);
    gens.push_back(UnitaryElement::from_matrix(d, 1e-9));
  }
  auto grp = std::make_shared<FiniteUnitaryGroup>(close_group(gens, g.order(), 2 * n));
  grp->label = g.label + "_diagonal";
  DoubledGroup out{grp, {}};
  for (int h = 0; h < g.order(); ++h) {
    cmat d = cmat::Zero(2 * n, 2 * n);
    d.topLeftCorner(n, n) = g.element(h);
    d.bottomRightCorner(n, n) = g.element(h);
    out.from_base.push_back(grp->find(d));
  }
  return out;
}

namespace {

cmat kron_dense(const cmat& a, const cmat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

cmat block_diag(const cmat& a, const cmat& b) {
  cmat out = cmat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

EllipticTriple exterior_product(const EllipticTriple& a, const EquivariantTriple& b) {
  const FiniteUnitaryGroup& g = a.a.group();
  const int n = g.dim(), na = a.a.size(), nb = b.b.size(), order = g.order();
  if (intertwining_defect(b, g, 8, 99u) > 1e-8)
    throw Error(ErrorCode::NotEquivariant, "b does not intertwine rho1 and rho2");
  DoubledGroup dg = doubled_group(g);
  MatrixSymbolField astar = adjoint(a.a);
  const int size = 2 * na * nb;

  // Blocks are taken between the ranges of the projections, so 1 (x) b becomes
  // sum_g P1_g (x) b(w) rho1(g) Q1, and a (x) 1 becomes sum_g a_g (x) rho1(g) Q1.
  auto eval = [a, b, astar, dg, n, na, nb, order, size](const rvec& xi) {
    rvec z(2 * n), w(2 * n);
    std::vector<int> zi(2 * n), wi(2 * n);
    for (int k = 0; k < n; ++k) {
      zi[k] = k;
      wi[k] = n + k;
      zi[n + k] = 2 * n + k;
      wi[n + k] = 3 * n + k;
    }
    for (int k = 0; k < 2 * n; ++k) {
      z(k) = xi(zi[k]);
      w(k) = xi(wi[k]);
    }
    SymbolJet ja = a.a(z), jas = astar(z), jb = b.b(w);
    const cmat& bw = jb.value[0];
    SymbolJet out = SymbolJet::zero(order, size, 4 * n);
    const int half = na * nb;
    for (int h = 0; h < order; ++h) {
      const int c = dg.from_base[h];
      const cmat r1 = b.rho1[h] * b.q1, r2 = b.rho2[h] * b.q2;
      const cmat br = b.q2 * bw * r1, bsr = -(b.q1 * bw.adjoint() * r2);
      cmat& v = out.value[c];
      v.topLeftCorner(half, half) = kron_dense(ja.value[h], r1);
      v.bottomRightCorner(half, half) = kron_dense(jas.value[h], r2);
      v.bottomLeftCorner(half, half) = kron_dense(a.p1.comp[h], br);
      v.topRightCorner(half, half) = kron_dense(a.p2.comp[h], bsr);
      for (int k = 0; k < 2 * n; ++k) {
        cmat& gz = out.gradient[c][zi[k]];
        gz.topLeftCorner(half, half) = kron_dense(ja.gradient[h][k], r1);
        gz.bottomRightCorner(half, half) = kron_dense(jas.gradient[h][k], r2);
        const cmat& db = jb.gradient[0][k];
        cmat& gw = out.gradient[c][wi[k]];
        gw.bottomLeftCorner(half, half) = kron_dense(a.p1.comp[h], cmat(b.q2 * db * r1));
        gw.topRightCorner(half, half) = kron_dense(a.p2.comp[h], cmat(-(b.q1 * db.adjoint() * r2)));
      }
    }
    return out;
  };

  GroupAlgebraMatrix p1 = GroupAlgebraMatrix::zero(order, size);
  GroupAlgebraMatrix p2 = GroupAlgebraMatrix::zero(order, size);
  for (int h = 0; h < order; ++h) {
    const int c = dg.from_base[h];
    cmat r1 = b.rho1[h] * b.q1, r2 = b.rho2[h] * b.q2;
    p1.comp[c] = block_diag(kron_dense(a.p1.comp[h], r1), kron_dense(a.p2.comp[h], r2));
    p2.comp[c] = block_diag(kron_dense(a.p2.comp[h], r1), kron_dense(a.p1.comp[h], r2));
  }
  return EllipticTriple{MatrixSymbolField(dg.group, size, eval), p1, p2, a.radius, false, false};
}

EquivariantTriple euler_factor(const FiniteUnitaryGroup& g, EulerScaling scaling) {
  const int n = g.dim();
  auto triv = std::make_shared<FiniteUnitaryGroup>(trivial_group(n));
  MatrixSymbolField full = euler_symbol(triv, scaling);
  cmat pe = parity_projection(n, true), po = parity_projection(n, false);
  MatrixSymbolField b(triv, 1 << n, [full, pe, po](const rvec& xi) {
    SymbolJet j = full(xi);
    j.value[0] = po * j.value[0] * pe;
    for (auto& d : j.gradient[0]) d = po * d * pe;
    return j;
  });
  EquivariantTriple t{b, pe, po, {}, {}};
  for (const auto& e : g.elements()) {
    cmat lam = exterior_power(e.conjugate());
    t.rho1.push_back(lam);
    t.rho2.push_back(lam);
  }
  return t;
}

EllipticTriple bott_map(GroupPtr g, const GroupAlgebraMatrix& p) {
  const int n = g->dim(), d = 1 << n, big = d * p.size, order = g->order();
  MatrixSymbolField sigma = euler_symbol(g, EulerScaling::Homogeneous);
  cmat pe = parity_projection(n, true), po = parity_projection(n, false);
  const cmat id_n = cmat::Identity(p.size, p.size);
  MatrixSymbolField base(g, big, [sigma, pe, po, id_n, order, big, n](const rvec& xi) {
    SymbolJet s = sigma(xi);
    SymbolJet j = SymbolJet::zero(order, big, 2 * n);
    j.value[0] = kron_dense(po * s.value[0] * pe, id_n);
    for (int k = 0; k < 2 * n; ++k) j.gradient[0][k] = kron_dense(po * s.gradient[0][k] * pe, id_n);
    return j;
  });
  GroupAlgebraMatrix p1 = GroupAlgebraMatrix::zero(order, big), p2 = p1;
  for (int h = 0; h < order; ++h) {
    cmat lam = exterior_power(g->element(h).conjugate());
    p1.comp[h] = kron_dense(pe * lam, p.comp[h]);
    p2.comp[h] = kron_dense(po * lam, p.comp[h]);
  }
  // sigma is equivariant, so a P1 already equals P2 a P1
  return EllipticTriple{multiply_constant_right(base, p1), p1, p2, 1.0, true, true};
}

EllipticTriple rotation_homotopy(const EllipticTriple& t, double angle) {
  const int m = t.a.real_dim();
  const int n = m / 4;
  rmat rot = rmat::Zero(m, m);
  const double c = std::cos(angle), s = std::sin(angle);
  for (int part = 0; part < 2; ++part)
    for (int k = 0; k < n; ++k) {
      int zk = part * 2 * n + k, wk = part * 2 * n + n + k;
      rot(zk, zk) = c;
      rot(zk, wk) = s;
      rot(wk, wk) = c;
      rot(wk, zk) = -s;
    }
  MatrixSymbolField base = t.a;
  MatrixSymbolField rotated(t.a.group_ptr(), t.a.size(), [base, rot, m](const rvec& xi) {
    SymbolJet j = base(rot * xi);
    SymbolJet out = j;
    for (size_t h = 0; h < j.value.size(); ++h)
      for (int k = 0; k < m; ++k) {
        out.gradient[h][k].setZero();
        for (int l = 0; l < m; ++l)
          if (rot(l, k) != 0.0) out.gradient[h][k] += rot(l, k) * j.gradient[h][l];
      }
    return out;
  });
  EllipticTriple r = t;
  r.a = rotated;
  return r;
}

RotationCurve rotation_certificates(const EllipticTriple& t, double radius, int steps, int density) {
  RotationCurve curve;
  for (int i = 0; i < steps; ++i) {
    double angle = 0.5 * kPi * i / (steps - 1);
    double c = elliptic_certificate(rotation_homotopy(t, angle), radius, density).value;
    curve.angles.push_back(angle);
    curve.certificates.push_back(c);
    if (c < 0.5 * curve.certificates.front())
      throw Error(ErrorCode::EllipticityLost,
                  "certificate " + std::to_string(c) + " at angle " + std::to_string(angle));
  }
  return curve;
}

}  // namespace mplab
