// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace vsdoa {

using cplx = std::complex<double>;

/// 2x2 Hermitian matrix [[q, r], [conj(r), s]] with real q, s.
/// Used for per-bin cross-spectral matrices and their combinations.
struct Herm2 {
  double q = 0.0;  // (x,x) auto term
  double s = 0.0;  // (y,y) auto term
  cplx r = {0.0, 0.0};  // (x,y) cross term

  double trace() const { return q + s; }
  double det() const { return q * s - std::norm(r); }

  Herm2& operator+=(const Herm2& o) {
    q += o.q;
    s += o.s;
    r += o.r;
    return *this;
  }
  Herm2& operator*=(double c) {
    q *= c;
    s *= c;
    r *= c;
    return *this;
  }
  friend Herm2 operator+(Herm2 a, const Herm2& b) { return a += b; }
  friend Herm2 operator*(double c, Herm2 a) { return a *= c; }
};

/// Eigensystem of a Herm2, closed form. vmax is a unit eigenvector for
/// lambda_max; its global phase is unspecified.
struct Eig2 {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  cplx vmax_x = {1.0, 0.0};
  cplx vmax_y = {0.0, 0.0};
};

/// lambda_max - lambda_min = sqrt((q-s)^2 + 4|r|^2), always >= 0.
inline double eigengap(const Herm2& m) {
  return std::hypot(m.q - m.s, 2.0 * std::abs(m.r));
}

inline double lambda_max(const Herm2& m) { return 0.5 * (m.trace() + eigengap(m)); }
inline double lambda_min(const Herm2& m) { return 0.5 * (m.trace() - eigengap(m)); }

inline Eig2 eig2(const Herm2& m) {
  Eig2 e;
  const double gap = eigengap(m);
  e.lambda_max = 0.5 * (m.trace() + gap);
  e.lambda_min = 0.5 * (m.trace() - gap);
  if (std::abs(m.r) == 0.0) {
    if (m.q >= m.s) {
      e.vmax_x = 1.0;
      e.vmax_y = 0.0;
    } else {
      e.vmax_x = 0.0;
      e.vmax_y = 1.0;
    }
    return e;
  }
  // Two algebraic candidates; the one with the larger norm is the
  // numerically stable choice.
  const cplx a1 = m.r;
  const cplx b1 = {e.lambda_max - m.q, 0.0};
  const cplx a2 = {e.lambda_max - m.s, 0.0};
  const cplx b2 = std::conj(m.r);
  const double n1 = std::norm(a1) + std::norm(b1);
  const double n2 = std::norm(a2) + std::norm(b2);
  cplx vx = a1, vy = b1;
  if (n2 > n1) {
    vx = a2;
    vy = b2;
  }
  const double inv = 1.0 / std::sqrt(std::norm(vx) + std::norm(vy));
  e.vmax_x = vx * inv;
  e.vmax_y = vy * inv;
  return e;
}

/// Hermitian PSD square root: S with S*S = m. Negative eigenvalues from
/// rounding are clamped to zero.
inline Herm2 herm_sqrt(const Herm2& m) {
  const Eig2 e = eig2(m);
  const double lmax = std::sqrt(std::max(e.lambda_max, 0.0));
  const double lmin = std::sqrt(std::max(e.lambda_min, 0.0));
  // Orthonormal complement of vmax.
  const cplx wx = -std::conj(e.vmax_y);
  const cplx wy = std::conj(e.vmax_x);
  Herm2 out;
  out.q = lmax * std::norm(e.vmax_x) + lmin * std::norm(wx);
  out.s = lmax * std::norm(e.vmax_y) + lmin * std::norm(wy);
  out.r = lmax * e.vmax_x * std::conj(e.vmax_y) + lmin * wx * std::conj(wy);
  return out;
}

/// PSD within tolerance: Hermitian by construction, so only the
/// eigenvalue signs need checking.
inline bool is_psd(const Herm2& m, double eps = 1e-12) {
  const double scale = m.trace();
  return m.q >= -eps * std::abs(scale) && m.s >= -eps * std::abs(scale) &&
         m.det() >= -eps * scale * scale;
}

}  // namespace vsdoa
