#pragma once

#include <optional>

#include "krylov/ldlt.hpp"

namespace krylov {

/// Symmetric positive definite matrix, certified by a successful LDL^T
/// factorization at construction. The factors are kept for direct solves.
///
/// Generators that build the matrix from a prescribed spectrum may attach the
/// exact eigensystem; consumers fall back to Lanczos-based estimates when it
/// is absent.
class SpdMatrix {
 public:
  struct Eigensystem {
    Vector values;                  // ascending
    std::vector<Vector> vectors;    // unit columns, aligned with values
  };

  /// Throws NotPositiveDefiniteError if a pivot fails.
  static SpdMatrix certify(SymMatrix m);
  static SpdMatrix diagonal(const Vector& positiveEntries);

  int order() const noexcept { return m_.order(); }
  double operator()(int i, int j) const { return m_(i, j); }
  const SymMatrix& sym() const noexcept { return m_; }
  double max_abs() const { return m_.max_abs(); }

  Vector apply(const Vector& x) const { return m_.apply(x); }
  const LdlFactors& factors() const noexcept { return factors_; }
  Vector solve(const Vector& rhs) const { return ldlt_solve(factors_, rhs); }

  bool has_eigensystem() const noexcept { return eig_.has_value(); }
  const Eigensystem& eigensystem() const { return *eig_; }
  void attach_eigensystem(Eigensystem eig);

 private:
  SpdMatrix(SymMatrix m, LdlFactors f) : m_(std::move(m)), factors_(std::move(f)) {}

  SymMatrix m_;
  LdlFactors factors_;
  std::optional<Eigensystem> eig_;
};

/// Energy norm sqrt(v^T A v); clamps roundoff-negative quadratic forms to 0.
double a_norm(const SpdMatrix& a, const Vector& v);

}  // namespace krylov
