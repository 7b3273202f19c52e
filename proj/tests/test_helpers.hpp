#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "varprop/ensemble.hpp"
#include "varprop/hermitian.hpp"

namespace testutil {

using namespace varprop;

inline HermitianOperator random_hermitian(int dim, std::uint64_t seed) {
  return HermitianOperator(gue_sample(dim, seed));
}

/// Hermitian matrix with a prescribed spectrum in a random (Haar-ish) basis:
/// QR of a Gaussian complex matrix supplies the unitary.
inline HermitianOperator with_spectrum(const RealVector& eigenvalues, std::uint64_t seed) {
  const int d = static_cast<int>(eigenvalues.size());
  const Matrix g = gue_sample(d, seed) + kImag * gue_sample(d, sub_seed(seed, 999));
  const Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ();
  return HermitianOperator(q * eigenvalues.asDiagonal() * q.adjoint());
}

inline Matrix pauli(int i) {
  Matrix m(2, 2);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m = Matrix::Identity(2, 2);
  }
  return m;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testutil
