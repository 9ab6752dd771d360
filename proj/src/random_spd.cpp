#include "krylov/random_spd.hpp"

#include <cmath>
#include <stdexcept>

namespace krylov {

Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (double& x : v) x = gauss(rng);
  return v;
}

Vector random_unit_vector(int n, std::mt19937_64& rng) {
  Vector v = random_vector(n, rng);
  const double nrm = norm2(v);
  if (nrm == 0.0) return random_unit_vector(n, rng);
  return scaled(v, 1.0 / nrm);
}

SpdMatrix spd_from_spectrum(const Vector& eigenvalues, std::uint64_t seed) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n < 1) throw std::invalid_argument("spd_from_spectrum: empty spectrum");
  for (double lambda : eigenvalues)
    if (!(lambda > 0.0))
      throw std::invalid_argument("spd_from_spectrum: eigenvalues must be positive");

  std::mt19937_64 rng(seed);
  std::vector<Vector> q(n);
  for (int j = 0; j < n; ++j) {
    Vector v = random_vector(n, rng);
    // Two Gram-Schmidt passes keep Q orthonormal to near machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) axpy_in_place(v, -dot(q[i], v), q[i]);
    const double nrm = norm2(v);
    if (nrm < 1e-12) throw std::runtime_error("spd_from_spectrum: degenerate draw");
    q[j] = scaled(v, 1.0 / nrm);
  }

  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += eigenvalues[k] * q[k][i] * q[k][j];
      m.set(i, j, s);
    }
  }

  SpdMatrix a = SpdMatrix::certify(std::move(m));
  SpdMatrix::Eigensystem eig;
  eig.values = eigenvalues;
  eig.vectors = std::move(q);
  a.attach_eigensystem(std::move(eig));
  return a;
}

Vector uniform_spectrum(int n, double conditionNumber) {
  if (n < 1) throw std::invalid_argument("uniform_spectrum: n must be >= 1");
  if (!(conditionNumber >= 1.0))
    throw std::invalid_argument("uniform_spectrum: condition number must be >= 1");
  Vector s(n);
  if (n == 1) {
    s[0] = 1.0;
    return s;
  }
  for (int i = 0; i < n; ++i)
    s[i] = 1.0 + (conditionNumber - 1.0) * static_cast<double>(i) / (n - 1);
  return s;
}

Vector geometric_spectrum(int n, double conditionNumber) {
  if (n < 1) throw std::invalid_argument("geometric_spectrum: n must be >= 1");
  if (!(conditionNumber >= 1.0))
    throw std::invalid_argument("geometric_spectrum: condition number must be >= 1");
  Vector s(n);
  if (n == 1) {
    s[0] = 1.0;
    return s;
  }
  for (int i = 0; i < n; ++i)
    s[i] = std::pow(conditionNumber, static_cast<double>(i) / (n - 1));
  return s;
}

}  // namespace krylov
