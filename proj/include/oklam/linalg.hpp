#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace oklam {

using Vec3 = std::array<double, 3>;

// Row-major 3x3 matrix. Small enough that everything stays by value.
struct Mat3 {
  std::array<double, 9> e{};

  double& operator()(int i, int j) { return e[static_cast<std::size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return e[static_cast<std::size_t>(3 * i + j)]; }

  static Mat3 zero() { return Mat3{}; }
  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }

  bool operator==(const Mat3&) const = default;
};

struct Mat2 {
  std::array<double, 4> e{};

  double& operator()(int i, int j) { return e[static_cast<std::size_t>(2 * i + j)]; }
  double operator()(int i, int j) const { return e[static_cast<std::size_t>(2 * i + j)]; }

  bool operator==(const Mat2&) const = default;
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.e[k] = a.e[k] + b.e[k];
  return r;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.e[k] = a.e[k] - b.e[k];
  return r;
}

inline Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.e[k] = s * a.e[k];
  return r;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Vec3 mul(const Mat3& a, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += a(i, j) * v[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return r;
}

inline Mat3 symmetrize(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (a(i, j) + a(j, i));
  return r;
}

inline double frobenius(const Mat3& a) {
  double s = 0.0;
  for (double x : a.e) s += x * x;
  return std::sqrt(s);
}

inline double max_abs(const Mat3& a) {
  double s = 0.0;
  for (double x : a.e) s = std::max(s, std::abs(x));
  return s;
}

// Eigenvalues of a symmetric 3x3 matrix, ascending. Cyclic Jacobi with a
// fixed sweep order; deterministic across platforms for identical input.
Vec3 sym_eigenvalues(const Mat3& a);

inline double min_sym_eigenvalue(const Mat3& a) { return sym_eigenvalues(a)[0]; }

// Neumaier compensated accumulator; the segment-pair sums cancel heavily
// for thin layers.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace oklam
