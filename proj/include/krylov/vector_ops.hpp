#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace krylov {

using Vector = std::vector<double>;

inline void check_same_size(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vector dimension mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

inline double dot(const Vector& a, const Vector& b) {
  check_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

/// y + c*x as a new vector.
inline Vector axpy(double c, const Vector& x, const Vector& y) {
  check_same_size(x, y);
  Vector out(y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += c * x[i];
  return out;
}

inline void axpy_in_place(Vector& y, double c, const Vector& x) {
  check_same_size(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline Vector scaled(const Vector& a, double c) {
  Vector out(a);
  for (double& v : out) v *= c;
  return out;
}

inline Vector add(const Vector& a, const Vector& b) {
  check_same_size(a, b);
  Vector out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Vector subtract(const Vector& a, const Vector& b) {
  check_same_size(a, b);
  Vector out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

inline bool is_zero(const Vector& a) {
  for (double v : a)
    if (v != 0.0) return false;
  return true;
}

inline double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline Vector zeros(std::size_t n) { return Vector(n, 0.0); }

}  // namespace krylov
