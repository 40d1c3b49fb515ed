#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <functional>
#include <vector>

namespace mplab {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;
using spmat = Eigen::SparseMatrix<cplx>;

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

spmat sparse_identity(int n);
spmat kron(const spmat& a, const spmat& b);
spmat to_sparse(const cmat& a, double drop = 0.0);

// f applied to a Hermitian matrix through its eigendecomposition
cmat hermitian_function(const cmat& h, const std::function<cplx(double)>& f);

// Same, for a sparse Hermitian matrix: the sparsity graph is split into
// connected components and each block is diagonalised densely.
spmat sparse_hermitian_function(const spmat& h, const std::function<cplx(double)>& f,
                                double drop = 1e-15);

// connected components of the (symmetrised) sparsity graph
std::vector<std::vector<int>> sparse_components(const spmat& h);

cmat submatrix(const spmat& a, const std::vector<int>& rows, const std::vector<int>& cols);
cmat submatrix(const cmat& a, const std::vector<int>& rows, const std::vector<int>& cols);

// orthonormal basis of the range of a Hermitian projection; throws NotProjection
// if eigenvalues are not within tol of 0 or 1
cmat projection_range(const cmat& p, double tol = 1e-6);

double max_abs(const cmat& a);

// Frechet derivative of a Hermitian matrix function: given Y = V diag(l) V^*
// and dY, returns V ((V^* dY V) o D) V^* with D the divided differences of f.
struct HermitianCalculus {
  cmat vectors;
  rvec values;
  cmat apply(const std::function<double(double)>& f) const;
  cmat derivative(const cmat& dy, const std::function<double(double)>& f,
                  const std::function<double(double)>& df) const;
};
HermitianCalculus hermitian_calculus(const cmat& y);

}  // namespace mplab
