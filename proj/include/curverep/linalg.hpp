#pragma once

#include <span>
#include <vector>

#include "curverep/numpoly.hpp"

namespace curverep {

// Dense complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Complex>& data() const { return data_; }

  Matrix adjoint() const;
  double frobenius() const;
  std::vector<Complex> apply(std::span<const Complex> x) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

struct QRFactors {
  Matrix q;  // rows x cols, orthonormal columns
  Matrix r;  // cols x cols, upper triangular
};

// Thin Householder QR; requires rows >= cols.
QRFactors qr(const Matrix& m);

struct LstsqResult {
  std::vector<Complex> x;
  double residual = 0.0;  // ||A x - b||_2
  int rank = 0;
  bool rank_deficient = false;
};

// Relative rank threshold shared by lstsq and the gcd degree decisions.
inline constexpr double kRankTol = 1e-10;

// Least squares via column-pivoted Householder QR. Rank-deficient systems
// (pivot below kRankTol * largest pivot) get the minimum-norm solution.
LstsqResult lstsq(const Matrix& a, std::span<const Complex> b);

// Determinant by LU with partial pivoting.
Complex det(Matrix m);

struct SingularPair {
  double sigma = 0.0;
  std::vector<Complex> v;  // unit right singular vector
};

// Singular values in descending order (one-sided Jacobi).
std::vector<double> singular_values(const Matrix& a);

// Smallest singular value and its right singular vector. For wide matrices
// (rows < cols) this returns sigma = 0 with a null vector.
SingularPair min_singular(const Matrix& a);

// Convolution matrix of p: (deg p + n) x n, so that C * x = coeffs(p * x)
// for x of length n.
Matrix convolution(const Poly& p, std::size_t n);
// Same with the formal degree a.size() - 1, zero leading entries kept.
Matrix convolution(std::span<const Complex> a, std::size_t n);

}  // namespace curverep
