#pragma once

// Small fixed-size vector and matrix types used across the library.
// Row-major storage throughout.

#include <array>
#include <cmath>
#include <cstddef>

namespace attikit {

struct Vec3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Vec3 operator*(double s, const Vec3& v) {
    return {s * v.x, s * v.y, s * v.z};
  }
  friend constexpr Vec3 operator*(const Vec3& v, double s) { return s * v; }
  friend constexpr Vec3 operator/(const Vec3& v, double s) {
    return {v.x / s, v.y / s, v.z / s};
  }

  constexpr double operator[](std::size_t i) const {
    return i == 0 ? x : (i == 1 ? y : z);
  }
};

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Dense row-major R x C matrix of doubles.
template <std::size_t Rows, std::size_t Cols>
struct Matrix {
  std::array<double, Rows * Cols> data{};

  static constexpr std::size_t rows = Rows;
  static constexpr std::size_t cols = Cols;

  constexpr double& operator()(std::size_t r, std::size_t c) {
    return data[r * Cols + c];
  }
  constexpr double operator()(std::size_t r, std::size_t c) const {
    return data[r * Cols + c];
  }

  static constexpr Matrix zero() { return Matrix{}; }

  static constexpr Matrix identity()
    requires(Rows == Cols)
  {
    Matrix m{};
    for (std::size_t i = 0; i < Rows; ++i) m(i, i) = 1.0;
    return m;
  }

  constexpr Matrix<Cols, Rows> transpose() const {
    Matrix<Cols, Rows> t{};
    for (std::size_t r = 0; r < Rows; ++r)
      for (std::size_t c = 0; c < Cols; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;

  friend constexpr Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix out{};
    for (std::size_t i = 0; i < Rows * Cols; ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
  }
  friend constexpr Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix out{};
    for (std::size_t i = 0; i < Rows * Cols; ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
  }
  friend constexpr Matrix operator*(double s, const Matrix& a) {
    Matrix out{};
    for (std::size_t i = 0; i < Rows * Cols; ++i) out.data[i] = s * a.data[i];
    return out;
  }
};

using Mat3 = Matrix<3, 3>;
using Mat4 = Matrix<4, 4>;
using Mat34 = Matrix<3, 4>;

template <std::size_t R, std::size_t K, std::size_t C>
constexpr Matrix<R, C> operator*(const Matrix<R, K>& a, const Matrix<K, C>& b) {
  Matrix<R, C> out{};
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < K; ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  return out;
}

constexpr Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

constexpr double determinant(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Cross-product matrix: skew(w) * v == cross(w, v).
constexpr Mat3 skew(const Vec3& w) {
  Mat3 m{};
  m(0, 1) = -w.z;
  m(0, 2) = w.y;
  m(1, 0) = w.z;
  m(1, 2) = -w.x;
  m(2, 0) = -w.y;
  m(2, 1) = w.x;
  return m;
}

/// Largest absolute entry-wise difference.
template <std::size_t R, std::size_t C>
double max_abs_diff(const Matrix<R, C>& a, const Matrix<R, C>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < R * C; ++i)
    worst = std::fmax(worst, std::fabs(a.data[i] - b.data[i]));
  return worst;
}

inline double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::fmax(std::fabs(a.x - b.x),
                   std::fmax(std::fabs(a.y - b.y), std::fabs(a.z - b.z)));
}

}  // namespace attikit
