#pragma once
// Single-qudit operator algebra on dimension d: clock/shift matrices, expansion
// of a unitary in the X^i Z^j basis, and exact phase bookkeeping for products
// of multi-qudit terms.
//
// Conventions (d-th root omega = exp(2*pi*i/d)):
//   X|k> = |k+1 mod d>,  Z|k> = omega^k |k>
//   X^a Z^b = omega^{-ab} Z^b X^a
// A term is written normal-ordered as  amplitude * omega^{phase_pow} * X^x Z^z
// (per support position), with all exponents reduced mod d.

#include <complex>
#include <cstdint>
#include <vector>

namespace loopsim {

using cplx = std::complex<double>;
using CMat = std::vector<cplx>;  // d x d row-major

cplx omega_root(int d, long long power = 1);

CMat mat_identity(int d);
CMat mat_mul(const CMat& a, const CMat& b, int d);
CMat mat_adjoint(const CMat& a, int d);
double mat_max_abs_diff(const CMat& a, const CMat& b, int d);
bool mat_is_unitary(const CMat& a, int d, double tol = 1e-10);

CMat pauli_x(int d);
CMat pauli_z(int d);
// X^x Z^z, exponents taken mod d.
CMat hw_matrix(int d, int x, int z);

// Coefficients of a single-qudit operator F = sum_{i,j} f[i*d+j] X^i Z^j.
// For unitary F, sum |f|^2 == 1.
struct ErrorModel {
  int d = 2;
  std::vector<cplx> f;

  cplx coeff(int i, int j) const { return f[static_cast<std::size_t>(i) * d + j]; }
};

// Projects m onto the X^i Z^j basis (trace inner product); throws
// std::invalid_argument if m is not unitary within tol.
ErrorModel model_from_matrix(const CMat& m, int d, double tol = 1e-10);
CMat model_matrix(const ErrorModel& em);

ErrorModel make_identity_model(int d);
ErrorModel make_shift_model(int d, int power = 1);
ErrorModel make_phase_model(int d, int power = 1);
// diag(e^{i*theta*k}), k = 0..d-1.
ErrorModel make_rotation_model(int d, double theta);
// Haar-ish unitary: complex Ginibre + Gram-Schmidt, deterministic in seed.
ErrorModel make_random_unitary_model(int d, std::uint64_t seed);

// Multi-qudit normal-ordered term over an implicit ordered support.
struct PauliTerm {
  std::vector<int> x, z;      // exponents per support position, in [0, d)
  long long phase_pow = 0;    // power of omega (kept unreduced)
  cplx amplitude = 1.0;
};

// a * b, reordered to normal form: picks up omega^{sum_q a.z[q]*b.x[q]}.
PauliTerm normal_ordered_product(const PauliTerm& a, const PauliTerm& b, int d);
// (omega^p X^x Z^z)^dagger = omega^{-p + sum x*z} X^{-x} Z^{-z}, amplitude conjugated.
PauliTerm term_adjoint(const PauliTerm& a, int d);
// Dense matrix on d^m, support position 0 = most significant digit.
CMat term_matrix(const PauliTerm& t, int d);

}  // namespace loopsim
