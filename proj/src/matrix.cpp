#include "krylov/matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace krylov {

namespace {
inline std::size_t lower_index(int i, int j) {
  // caller guarantees i >= j
  return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
}
}  // namespace

SymMatrix::SymMatrix(int order) : n_(order) {
  if (order < 1) throw std::invalid_argument("SymMatrix order must be >= 1");
  lower_.assign(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0);
}

SymMatrix::SymMatrix(int order, std::vector<double> lowerRowMajor) : n_(order) {
  if (order < 1) throw std::invalid_argument("SymMatrix order must be >= 1");
  if (lowerRowMajor.size() != static_cast<std::size_t>(order) * (order + 1) / 2)
    throw std::invalid_argument("SymMatrix: lower triangle has wrong length");
  lower_ = std::move(lowerRowMajor);
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.order(); ++i) m.set(i, i, d[i]);
  return m;
}

double SymMatrix::operator()(int i, int j) const {
  assert(i >= 0 && i < n_ && j >= 0 && j < n_);
  if (i < j) std::swap(i, j);
  return lower_[lower_index(i, j)];
}

void SymMatrix::set(int i, int j, double value) {
  assert(i >= 0 && i < n_ && j >= 0 && j < n_);
  if (i < j) std::swap(i, j);
  lower_[lower_index(i, j)] = value;
}

void SymMatrix::add_at(int i, int j, double value) {
  assert(i >= 0 && i < n_ && j >= 0 && j < n_);
  if (i < j) std::swap(i, j);
  lower_[lower_index(i, j)] += value;
}

Vector SymMatrix::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("SymMatrix::apply dimension mismatch");
  Vector y(x.size(), 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double a = lower_[lower_index(i, j)];
      y[i] += a * x[j];
      if (i != j) y[j] += a * x[i];
    }
  }
  return y;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : lower_) m = std::max(m, std::abs(v));
  return m;
}

Tridiag::Tridiag(Vector diag, Vector off) : diag_(std::move(diag)), off_(std::move(off)) {
  if (diag_.empty()) throw std::invalid_argument("Tridiag needs at least one diagonal entry");
  if (off_.size() + 1 != diag_.size())
    throw std::invalid_argument("Tridiag: off-diagonal length must be diagonal length - 1");
}

Vector Tridiag::apply(const Vector& x) const {
  const int n = order();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("Tridiag::apply dimension mismatch");
  Vector y(x.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    y[i] = diag_[i] * x[i];
    if (i > 0) y[i] += off_[i - 1] * x[i - 1];
    if (i + 1 < n) y[i] += off_[i] * x[i + 1];
  }
  return y;
}

double Tridiag::max_abs() const {
  return std::max(krylov::max_abs(diag_), krylov::max_abs(off_));
}

SymMatrix Tridiag::to_sym() const {
  SymMatrix m(order());
  for (int i = 0; i < order(); ++i) {
    m.set(i, i, diag_[i]);
    if (i > 0) m.set(i, i - 1, off_[i - 1]);
  }
  return m;
}

Tridiag Tridiag::add_scaled(const Tridiag& a, double c, const Tridiag& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("Tridiag::add_scaled dimension mismatch");
  Vector d(a.diag_), e(a.off_);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += c * b.diag_[i];
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += c * b.off_[i];
  return Tridiag(std::move(d), std::move(e));
}

}  // namespace krylov
