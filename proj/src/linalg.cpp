#include "curverep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curverep/error.hpp"

namespace curverep {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw Error(ErrorCode::invalid_argument, "Matrix: shape mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<Complex> Matrix::apply(std::span<const Complex> x) const {
  if (x.size() != cols_) throw Error(ErrorCode::invalid_argument, "Matrix::apply: size mismatch");
  std::vector<Complex> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::invalid_argument, "Matrix product: shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::invalid_argument, "Matrix difference: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

namespace {

// In-place Householder triangularization of `a`. Reflector k is stored as a
// unit vector w_k (length rows - k) so that H_k = I - 2 w w^H.
struct Householder {
  Matrix a;
  std::vector<std::vector<Complex>> w;
  std::vector<std::size_t> perm;
};

Householder householder(Matrix a, bool pivot) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t steps = std::min(m, n);
  Householder h{std::move(a), {}, std::vector<std::size_t>(n)};
  std::iota(h.perm.begin(), h.perm.end(), 0);
  Matrix& r = h.a;
  std::vector<double> colnorm(n, 0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    if (pivot) {
      for (std::size_t j = k; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += std::norm(r(i, j));
        colnorm[j] = s;
      }
      std::size_t best = k;
      for (std::size_t j = k + 1; j < n; ++j)
        if (colnorm[j] > colnorm[best]) best = j;
      if (best != k) {
        for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, best));
        std::swap(h.perm[k], h.perm[best]);
      }
    }
    std::vector<Complex> v(m - k);
    double norm_x = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      v[i - k] = r(i, k);
      norm_x += std::norm(v[i - k]);
    }
    norm_x = std::sqrt(norm_x);
    if (norm_x == 0.0) {
      h.w.emplace_back(m - k, Complex{});
      continue;
    }
    const Complex x0 = v[0];
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * norm_x;
    v[0] -= alpha;
    double vn = 0.0;
    for (const auto& c : v) vn += std::norm(c);
    vn = std::sqrt(vn);
    for (auto& c : v) c /= vn;
    for (std::size_t j = k; j < n; ++j) {
      Complex dot{};
      for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * r(i, j);
      for (std::size_t i = k; i < m; ++i) r(i, j) -= 2.0 * v[i - k] * dot;
    }
    r(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    h.w.push_back(std::move(v));
  }
  return h;
}

// y <- Q^H y using the stored reflectors.
void apply_qh(const Householder& h, std::vector<Complex>& y) {
  for (std::size_t k = 0; k < h.w.size(); ++k) {
    const auto& v = h.w[k];
    Complex dot{};
    for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * y[k + i];
    for (std::size_t i = 0; i < v.size(); ++i) y[k + i] -= 2.0 * v[i] * dot;
  }
}

struct Jacobi {
  Matrix u;  // A V: columns are sigma_i * u_i
  Matrix v;
  std::vector<double> sigma;
};

// One-sided Jacobi SVD (Hestenes). Columns of A V become mutually orthogonal.
Jacobi jacobi_svd(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Jacobi j{a, Matrix::identity(n), std::vector<double>(n)};
  Matrix& u = j.u;
  Matrix& v = j.v;
  constexpr double tol = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma{};
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(u(i, p));
          beta += std::norm(u(i, q));
          gamma += std::conj(u(i, p)) * u(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex e = std::conj(gamma / g);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex up = u(i, p), uq = u(i, q) * e;
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v(i, p), vq = v(i, q) * e;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(u(i, c));
    j.sigma[c] = std::sqrt(s);
  }
  return j;
}

}  // namespace

QRFactors qr(const Matrix& m) {
  if (m.rows() < m.cols()) throw Error(ErrorCode::invalid_argument, "qr: rows < cols");
  const Householder h = householder(m, false);
  const std::size_t rows = m.rows(), n = m.cols();
  QRFactors f{Matrix(rows, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) f.r(i, j) = h.a(i, j);
  // Q = H_0 H_1 ... H_{n-1} applied to the first n unit vectors.
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Complex> y(rows);
    y[c] = 1.0;
    for (std::size_t k = h.w.size(); k-- > 0;) {
      const auto& v = h.w[k];
      Complex dot{};
      for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * y[k + i];
      for (std::size_t i = 0; i < v.size(); ++i) y[k + i] -= 2.0 * v[i] * dot;
    }
    for (std::size_t i = 0; i < rows; ++i) f.q(i, c) = y[i];
  }
  return f;
}

LstsqResult lstsq(const Matrix& a, std::span<const Complex> b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::invalid_argument, "lstsq: size mismatch");
  const std::size_t m = a.rows(), n = a.cols();
  LstsqResult out;
  out.x.assign(n, Complex{});
  if (n == 0) {
    double s = 0.0;
    for (const auto& c : b) s += std::norm(c);
    out.residual = std::sqrt(s);
    return out;
  }
  const Householder h = householder(a, true);
  const std::size_t steps = std::min(m, n);
  const double top = std::abs(h.a(0, 0));
  std::size_t rank = 0;
  while (rank < steps && top > 0.0 && std::abs(h.a(rank, rank)) > kRankTol * top) ++rank;
  out.rank = static_cast<int>(rank);
  out.rank_deficient = rank < n;
  if (!out.rank_deficient) {
    std::vector<Complex> y(b.begin(), b.end());
    apply_qh(h, y);
    std::vector<Complex> z(n);
    for (std::size_t i = n; i-- > 0;) {
      Complex acc = y[i];
      for (std::size_t j = i + 1; j < n; ++j) acc -= h.a(i, j) * z[j];
      z[i] = acc / h.a(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) out.x[h.perm[i]] = z[i];
  } else if (rank > 0) {
    // Minimum-norm solution through the SVD, truncated at the same threshold.
    const Jacobi j = jacobi_svd(a);
    const double smax = *std::max_element(j.sigma.begin(), j.sigma.end());
    for (std::size_t c = 0; c < n; ++c) {
      const double s = j.sigma[c];
      if (s <= kRankTol * smax) continue;
      Complex dot{};
      for (std::size_t i = 0; i < m; ++i) dot += std::conj(j.u(i, c)) * b[i];
      const Complex coef = dot / (s * s);
      for (std::size_t i = 0; i < n; ++i) out.x[i] += coef * j.v(i, c);
    }
  }
  const auto ax = a.apply(out.x);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += std::norm(ax[i] - b[i]);
  out.residual = std::sqrt(s);
  return out;
}

Complex det(Matrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::invalid_argument, "det: matrix is not square");
  const std::size_t n = m.rows();
  Complex d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == Complex{}) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      d = -d;
    }
    const Complex pk = m(k, k);
    d *= pk;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = m(i, k) / pk;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

std::vector<double> singular_values(const Matrix& a) {
  const Matrix& src = a;
  const Jacobi j = a.rows() >= a.cols() ? jacobi_svd(src) : jacobi_svd(src.adjoint());
  std::vector<double> s = j.sigma;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

SingularPair min_singular(const Matrix& a) {
  const std::size_t n = a.cols();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "min_singular: empty matrix");
  // Reduce tall matrices to their R factor first; the right singular
  // vectors are unchanged and the Jacobi sweeps run on n x n.
  Matrix work = a;
  if (a.rows() > n) {
    const Householder h = householder(a, false);
    work = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) work(i, j) = h.a(i, j);
  }
  const Jacobi j = jacobi_svd(work);
  std::size_t best = 0;
  for (std::size_t c = 1; c < n; ++c)
    if (j.sigma[c] < j.sigma[best]) best = c;
  SingularPair out;
  out.sigma = a.rows() < n ? 0.0 : j.sigma[best];
  out.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.v[i] = j.v(i, best);
  return out;
}

Matrix convolution(const Poly& p, std::size_t n) {
  const std::size_t dp = static_cast<std::size_t>(std::max(p.degree(), 0));
  return convolution(std::span<const Complex>(p.padded(dp + 1)), n);
}

Matrix convolution(std::span<const Complex> a, std::size_t n) {
  if (a.empty()) throw Error(ErrorCode::invalid_argument, "convolution: empty coefficient vector");
  Matrix c(a.size() - 1 + n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < a.size(); ++i) c(i + j, j) = a[i];
  return c;
}

}  // namespace curverep
