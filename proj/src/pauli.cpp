#include "loopsim/pauli.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace loopsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

int mod_d(long long v, int d) {
  int r = static_cast<int>(v % d);
  return r < 0 ? r + d : r;
}

void check_dim(int d) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
}

}  // namespace

cplx omega_root(int d, long long power) {
  check_dim(d);
  const double arg = 2.0 * kPi * mod_d(power, d) / d;
  return {std::cos(arg), std::sin(arg)};
}

CMat mat_identity(int d) {
  CMat m(static_cast<std::size_t>(d) * d, 0.0);
  for (int k = 0; k < d; ++k) m[static_cast<std::size_t>(k) * d + k] = 1.0;
  return m;
}

CMat mat_mul(const CMat& a, const CMat& b, int d) {
  CMat out(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const cplx aik = a[static_cast<std::size_t>(i) * d + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < d; ++j)
        out[static_cast<std::size_t>(i) * d + j] += aik * b[static_cast<std::size_t>(k) * d + j];
    }
  return out;
}

CMat mat_adjoint(const CMat& a, int d) {
  CMat out(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out[static_cast<std::size_t>(j) * d + i] = std::conj(a[static_cast<std::size_t>(i) * d + j]);
  return out;
}

double mat_max_abs_diff(const CMat& a, const CMat& b, int d) {
  double m = 0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(d) * d; ++k)
    m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

bool mat_is_unitary(const CMat& a, int d, double tol) {
  return mat_max_abs_diff(mat_mul(mat_adjoint(a, d), a, d), mat_identity(d), d) <= tol;
}

CMat pauli_x(int d) { return hw_matrix(d, 1, 0); }
CMat pauli_z(int d) { return hw_matrix(d, 0, 1); }

CMat hw_matrix(int d, int x, int z) {
  check_dim(d);
  x = mod_d(x, d);
  z = mod_d(z, d);
  CMat m(static_cast<std::size_t>(d) * d, 0.0);
  for (int k = 0; k < d; ++k)
    m[static_cast<std::size_t>((k + x) % d) * d + k] = omega_root(d, static_cast<long long>(z) * k);
  return m;
}

ErrorModel model_from_matrix(const CMat& m, int d, double tol) {
  check_dim(d);
  if (m.size() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("matrix size does not match dimension");
  if (!mat_is_unitary(m, d, tol))
    throw std::invalid_argument("operator is not unitary within tolerance");
  ErrorModel em;
  em.d = d;
  em.f.resize(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const CMat basis = hw_matrix(d, i, j);
      cplx acc = 0.0;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          acc += std::conj(basis[static_cast<std::size_t>(r) * d + c]) *
                 m[static_cast<std::size_t>(r) * d + c];
      em.f[static_cast<std::size_t>(i) * d + j] = acc / static_cast<double>(d);
    }
  return em;
}

CMat model_matrix(const ErrorModel& em) {
  const int d = em.d;
  CMat out(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cplx c = em.coeff(i, j);
      if (c == 0.0) continue;
      const CMat basis = hw_matrix(d, i, j);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * basis[k];
    }
  return out;
}

ErrorModel make_identity_model(int d) {
  check_dim(d);
  ErrorModel em;
  em.d = d;
  em.f.assign(static_cast<std::size_t>(d) * d, 0.0);
  em.f[0] = 1.0;
  return em;
}

ErrorModel make_shift_model(int d, int power) {
  check_dim(d);
  ErrorModel em;
  em.d = d;
  em.f.assign(static_cast<std::size_t>(d) * d, 0.0);
  em.f[static_cast<std::size_t>(mod_d(power, d)) * d] = 1.0;
  return em;
}

ErrorModel make_phase_model(int d, int power) {
  check_dim(d);
  ErrorModel em;
  em.d = d;
  em.f.assign(static_cast<std::size_t>(d) * d, 0.0);
  em.f[static_cast<std::size_t>(mod_d(power, d))] = 1.0;
  return em;
}

ErrorModel make_rotation_model(int d, double theta) {
  check_dim(d);
  CMat m(static_cast<std::size_t>(d) * d, 0.0);
  for (int k = 0; k < d; ++k)
    m[static_cast<std::size_t>(k) * d + k] = cplx{std::cos(theta * k), std::sin(theta * k)};
  return model_from_matrix(m, d);
}

ErrorModel make_random_unitary_model(int d, std::uint64_t seed) {
  check_dim(d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat m(static_cast<std::size_t>(d) * d);
  for (auto& e : m) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    e = cplx{re, im};
  }
  // Gram-Schmidt on columns.
  for (int c = 0; c < d; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx dot = 0.0;
      for (int r = 0; r < d; ++r)
        dot += std::conj(m[static_cast<std::size_t>(r) * d + prev]) *
               m[static_cast<std::size_t>(r) * d + c];
      for (int r = 0; r < d; ++r)
        m[static_cast<std::size_t>(r) * d + c] -= dot * m[static_cast<std::size_t>(r) * d + prev];
    }
    double norm = 0;
    for (int r = 0; r < d; ++r) norm += std::norm(m[static_cast<std::size_t>(r) * d + c]);
    norm = std::sqrt(norm);
    if (norm < 1e-8) throw std::runtime_error("degenerate random matrix draw");
    for (int r = 0; r < d; ++r) m[static_cast<std::size_t>(r) * d + c] /= norm;
  }
  return model_from_matrix(m, d);
}

PauliTerm normal_ordered_product(const PauliTerm& a, const PauliTerm& b, int d) {
  if (a.x.size() != b.x.size()) throw std::invalid_argument("support size mismatch");
  PauliTerm out;
  const std::size_t m = a.x.size();
  out.x.resize(m);
  out.z.resize(m);
  long long cross = 0;
  for (std::size_t q = 0; q < m; ++q) {
    cross += static_cast<long long>(a.z[q]) * b.x[q];
    out.x[q] = mod_d(a.x[q] + b.x[q], d);
    out.z[q] = mod_d(a.z[q] + b.z[q], d);
  }
  out.phase_pow = a.phase_pow + b.phase_pow + cross;
  out.amplitude = a.amplitude * b.amplitude;
  return out;
}

PauliTerm term_adjoint(const PauliTerm& a, int d) {
  PauliTerm out;
  const std::size_t m = a.x.size();
  out.x.resize(m);
  out.z.resize(m);
  long long cross = 0;
  for (std::size_t q = 0; q < m; ++q) {
    cross += static_cast<long long>(a.x[q]) * a.z[q];
    out.x[q] = mod_d(-a.x[q], d);
    out.z[q] = mod_d(-a.z[q], d);
  }
  out.phase_pow = -a.phase_pow + cross;
  out.amplitude = std::conj(a.amplitude);
  return out;
}

CMat term_matrix(const PauliTerm& t, int d) {
  const std::size_t m = t.x.size();
  std::size_t dim = 1;
  for (std::size_t q = 0; q < m; ++q) {
    if (dim > (std::size_t(1) << 24) / d) throw std::invalid_argument("term too large to materialize");
    dim *= d;
  }
  CMat out(dim * dim, 0.0);
  const cplx scale = t.amplitude * omega_root(d, t.phase_pow);
  std::vector<int> dig(m);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (std::size_t q = m; q-- > 0;) {
      dig[q] = static_cast<int>(rest % d);
      rest /= d;
    }
    long long zphase = 0;
    std::size_t row = 0;
    for (std::size_t q = 0; q < m; ++q) {
      zphase += static_cast<long long>(t.z[q]) * dig[q];
      row = row * d + static_cast<std::size_t>((dig[q] + t.x[q]) % d);
    }
    out[row * dim + col] = scale * omega_root(d, zphase);
  }
  return out;
}

}  // namespace loopsim
