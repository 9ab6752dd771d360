#include "krylov/spd.hpp"

#include <algorithm>
#include <numeric>

namespace krylov {

SpdMatrix SpdMatrix::certify(SymMatrix m) {
  LdlFactors f = ldlt_factor(m);
  return SpdMatrix(std::move(m), std::move(f));
}

SpdMatrix SpdMatrix::diagonal(const Vector& positiveEntries) {
  return certify(SymMatrix::diagonal(positiveEntries));
}

void SpdMatrix::attach_eigensystem(Eigensystem eig) {
  if (static_cast<int>(eig.values.size()) != order() ||
      eig.vectors.size() != eig.values.size())
    throw std::invalid_argument("attach_eigensystem: wrong dimensions");
  std::vector<int> idx(eig.values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return eig.values[i] < eig.values[j]; });
  Eigensystem sorted;
  sorted.values.reserve(idx.size());
  sorted.vectors.reserve(idx.size());
  for (int i : idx) {
    sorted.values.push_back(eig.values[i]);
    sorted.vectors.push_back(std::move(eig.vectors[i]));
  }
  eig_ = std::move(sorted);
}

double a_norm(const SpdMatrix& a, const Vector& v) {
  const double q = dot(v, a.apply(v));
  return std::sqrt(std::max(q, 0.0));
}

}  // namespace krylov
