#include "mplab/quadrature.hpp"

#include <cmath>

#include "mplab/errors.hpp"

namespace mplab {

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "quadrature order must be positive");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

std::vector<QuadratureScheme::Node> QuadratureScheme::nodes(int d) const {
  std::vector<Node> out;
  if (d == 0) {
    out.push_back(Node{rvec(0), 1.0});
    return out;
  }
  std::vector<double> rx, rw, sx, sw;
  gauss_legendre(radial, rx, rw);
  gauss_legendre(simplex > 0 ? simplex : radial, sx, sw);

  // simplex points t in R^d with weights, by the collapsed (Duffy) map
  std::vector<std::vector<double>> ts;
  std::vector<double> tw;
  const int k = d - 1, ns = static_cast<int>(sx.size());
  std::vector<int> idx(k, 0);
  while (true) {
    std::vector<double> t(d);
    double rest = 1.0, w = 1.0;
    for (int i = 0; i < k; ++i) {
      double v = 0.5 * (sx[idx[i]] + 1.0);
      w *= 0.5 * sw[idx[i]] * rest;
      t[i] = rest * v;
      rest *= 1.0 - v;
    }
    t[k] = rest;
    ts.push_back(t);
    tw.push_back(w);
    int i = 0;
    while (i < k && ++idx[i] == ns) idx[i++] = 0;
    if (i == k) break;
  }

  const double dtheta = 2.0 * kPi / angular;
  std::vector<int> th(d, 0);
  std::vector<std::vector<int>> angles;
  while (true) {
    angles.push_back(th);
    int i = 0;
    while (i < d && ++th[i] == angular) th[i++] = 0;
    if (i == d) break;
  }

  const double a = r_inner, b = r_outer;
  for (int ir = 0; ir < radial; ++ir) {
    const double rho = a + 0.5 * (b - a) * (rx[ir] + 1.0);
    const double wr = 0.5 * (b - a) * rw[ir] * std::pow(2.0, 1 - d) * std::pow(rho, 2 * d - 1);
    for (std::size_t is = 0; is < ts.size(); ++is)
      for (const auto& ang : angles) {
        rvec y(2 * d);
        for (int j = 0; j < d; ++j) {
          const double r = rho * std::sqrt(ts[is][j]), t = dtheta * ang[j];
          y(j) = r * std::sin(t);
          y(d + j) = r * std::cos(t);
        }
        out.push_back(Node{y, wr * tw[is] * std::pow(dtheta, d)});
      }
  }
  return out;
}

QuadratureScheme QuadratureScheme::doubled() const {
  QuadratureScheme q = *this;
  q.radial *= 2;
  q.angular *= 2;
  q.simplex = 2 * (simplex > 0 ? simplex : radial);
  return q;
}

QuadratureScheme default_quadrature(int n) {
  QuadratureScheme q;
  if (n >= 2) {
    q.radial = 16;
    q.simplex = 6;
    q.angular = 8;
  }
  return q;
}

}  // namespace mplab
