#pragma once

#include "krylov/vector_ops.hpp"

namespace krylov {

/// Dense symmetric matrix; only the lower triangle is stored (row-major).
class SymMatrix {
 public:
  explicit SymMatrix(int order);
  SymMatrix(int order, std::vector<double> lowerRowMajor);

  static SymMatrix diagonal(const Vector& d);

  int order() const noexcept { return n_; }
  double operator()(int i, int j) const;
  void set(int i, int j, double value);
  void add_at(int i, int j, double value);

  Vector apply(const Vector& x) const;
  double max_abs() const;

  const std::vector<double>& lower() const noexcept { return lower_; }

 private:
  int n_ = 0;
  std::vector<double> lower_;  // n(n+1)/2 entries
};

/// Symmetric tridiagonal matrix: diagonal of length k, off-diagonal of length k-1.
class Tridiag {
 public:
  Tridiag() = default;
  Tridiag(Vector diag, Vector off);

  int order() const noexcept { return static_cast<int>(diag_.size()); }
  const Vector& diag() const noexcept { return diag_; }
  const Vector& off() const noexcept { return off_; }
  Vector& diag() noexcept { return diag_; }
  Vector& off() noexcept { return off_; }

  Vector apply(const Vector& x) const;
  double max_abs() const;
  SymMatrix to_sym() const;

  /// a + c*b, entrywise on both bands.
  static Tridiag add_scaled(const Tridiag& a, double c, const Tridiag& b);

 private:
  Vector diag_;
  Vector off_;
};

}  // namespace krylov
