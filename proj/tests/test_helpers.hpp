#pragma once

#include <cmath>
#include <vector>

#include "conical/operator_space.hpp"

namespace conical::testing {

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Independent Kronecker product, written entrywise so tests do not share the
// implementation's tensor code path.
inline CMatrix kron_oracle(const CMatrix& a, const CMatrix& b) {
  const int ar = static_cast<int>(a.rows()), ac = static_cast<int>(a.cols());
  const int br = static_cast<int>(b.rows()), bc = static_cast<int>(b.cols());
  CMatrix out(ar * br, ac * bc);
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < ac; ++j)
      for (int k = 0; k < br; ++k)
        for (int l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = a(i, j) * b(k, l);
  return out;
}

// Random density matrix (unit trace, PSD) from a Gaussian square root.
inline HermitianOperator random_state(int d, Rng& rng) {
  CMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) g(j, k) = Complex(rng.gaussian(), rng.gaussian());
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator(rho);
}

// Random unit-Bloch-norm trace-zero direction.
inline HermitianOperator random_direction(int d, Rng& rng) {
  const HermitianOperator h = random_hermitian(d, rng);
  CMatrix b = h.mat() - (h.trace() / d) * CMatrix::Identity(d, d);
  b *= std::sqrt(static_cast<double>(d) * (d - 1)) / b.norm();
  return HermitianOperator(b);
}

}  // namespace conical::testing
