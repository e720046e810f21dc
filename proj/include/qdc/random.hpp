#pragma once

#include <random>

#include "qdc/states.hpp"

// Seeded sampling helpers for property tests: Ginibre matrices, Haar
// unitaries, full-rank density matrices and pure states.

namespace qdc {

inline CMat ginibre(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  return m;
}

// QR of a Ginibre matrix with the R-diagonal phases absorbed, which makes the
// distribution Haar.
inline CMat haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const CMat g = ginibre(n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0 ? d / mag : Complex(1.0, 0.0));
  }
  return q;
}

inline CMat random_density_matrix(Eigen::Index n, std::mt19937_64& rng) {
  const CMat g = ginibre(n, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline CVec random_ket(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v /= v.norm();
  return v;
}

inline MultipartiteState random_state(const std::vector<Party>& parties,
                                      std::mt19937_64& rng) {
  Dims dims;
  for (const Party& p : parties) dims.push_back(p.dim);
  return MultipartiteState(parties, random_density_matrix(dim_product(dims), rng));
}

inline MultipartiteState random_pure_state(const std::vector<Party>& parties,
                                           std::mt19937_64& rng) {
  Dims dims;
  for (const Party& p : parties) dims.push_back(p.dim);
  return MultipartiteState(parties, outer(random_ket(dim_product(dims), rng)));
}

}  // namespace qdc
