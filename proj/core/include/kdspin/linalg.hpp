#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace kdspin {

using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(double s, const Vec3& v) {
    return {s * v.x, s * v.y, s * v.z};
  }
  friend Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm2(const Vec3& v) { return dot(v, v); }

// Contravariant components, metric diag(1,-1,-1,-1).
struct FourVector {
  std::array<cplx, 4> c{};  // (t, x, y, z)

  cplx& operator[](int mu) { return c[mu]; }
  const cplx& operator[](int mu) const { return c[mu]; }

  friend FourVector operator+(const FourVector& a, const FourVector& b) {
    FourVector r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend FourVector operator-(const FourVector& a, const FourVector& b) {
    FourVector r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  friend FourVector operator*(cplx s, const FourVector& a) {
    FourVector r;
    for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
    return r;
  }
};

inline FourVector conj(const FourVector& a) {
  return {{std::conj(a.c[0]), std::conj(a.c[1]), std::conj(a.c[2]),
           std::conj(a.c[3])}};
}

// Bilinear, symmetric; no complex conjugation.
inline cplx minkowski_dot(const FourVector& a, const FourVector& b) {
  return a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
}

struct SpinState {
  cplx up{}, down{};

  friend SpinState operator+(const SpinState& a, const SpinState& b) {
    return {a.up + b.up, a.down + b.down};
  }
  friend SpinState operator*(cplx s, const SpinState& a) {
    return {s * a.up, s * a.down};
  }
  double norm2() const { return std::norm(up) + std::norm(down); }
};

// <a|b> with the bra conjugated
inline cplx inner(const SpinState& a, const SpinState& b) {
  return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

inline SpinState normalized(const SpinState& s) {
  const double n = std::sqrt(s.norm2());
  return {s.up / n, s.down / n};
}

inline const SpinState spin_up{1.0, 0.0};
inline const SpinState spin_down{0.0, 1.0};

// 2x2 complex matrix, row-major.
struct SpinMatrix2 {
  std::array<cplx, 4> m{};  // (0,0) (0,1) (1,0) (1,1)

  cplx& operator()(int r, int c) { return m[2 * r + c]; }
  const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

  static SpinMatrix2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
  static SpinMatrix2 zero() { return {}; }

  friend SpinMatrix2 operator+(const SpinMatrix2& a, const SpinMatrix2& b) {
    SpinMatrix2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
  }
  friend SpinMatrix2 operator-(const SpinMatrix2& a, const SpinMatrix2& b) {
    SpinMatrix2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
  }
  friend SpinMatrix2 operator*(cplx s, const SpinMatrix2& a) {
    SpinMatrix2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
    return r;
  }
  friend SpinMatrix2 operator*(const SpinMatrix2& a, const SpinMatrix2& b) {
    SpinMatrix2 r;
    r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
    r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
    r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
    r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
    return r;
  }
  friend SpinState operator*(const SpinMatrix2& a, const SpinState& v) {
    return {a.m[0] * v.up + a.m[1] * v.down, a.m[2] * v.up + a.m[3] * v.down};
  }

  SpinMatrix2 adjoint() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]),
             std::conj(m[3])}};
  }
  cplx trace() const { return m[0] + m[3]; }
  double frobenius_norm() const {
    return std::sqrt(std::norm(m[0]) + std::norm(m[1]) + std::norm(m[2]) +
                     std::norm(m[3]));
  }
};

inline SpinMatrix2 outer(const SpinState& ket, const SpinState& bra) {
  return {{ket.up * std::conj(bra.up), ket.up * std::conj(bra.down),
           ket.down * std::conj(bra.up), ket.down * std::conj(bra.down)}};
}

// <bra| M |ket>
inline cplx sandwich(const SpinState& bra, const SpinMatrix2& M,
                     const SpinState& ket) {
  return inner(bra, M * ket);
}

inline const SpinMatrix2 pauli_x{{0.0, 1.0, 1.0, 0.0}};
inline const SpinMatrix2 pauli_y{{0.0, -iu, iu, 0.0}};
inline const SpinMatrix2 pauli_z{{1.0, 0.0, 0.0, -1.0}};

struct PauliCoefficients {
  cplx c0, cx, cy, cz;
};

// M = c0*1 + cx*sx + cy*sy + cz*sz; unique and exact for any complex 2x2.
inline PauliCoefficients pauli_decompose(const SpinMatrix2& M) {
  return {0.5 * (M.m[0] + M.m[3]), 0.5 * (M.m[1] + M.m[2]),
          0.5 * iu * (M.m[1] - M.m[2]), 0.5 * (M.m[0] - M.m[3])};
}

inline SpinMatrix2 pauli_compose(const PauliCoefficients& p) {
  return {{p.c0 + p.cz, p.cx - iu * p.cy, p.cx + iu * p.cy, p.c0 - p.cz}};
}

struct Bispinor {
  std::array<cplx, 4> c{};

  cplx& operator[](int i) { return c[i]; }
  const cplx& operator[](int i) const { return c[i]; }

  friend Bispinor operator*(cplx s, const Bispinor& w) {
    Bispinor r;
    for (int i = 0; i < 4; ++i) r.c[i] = s * w.c[i];
    return r;
  }
};

// w^dagger w'
inline cplx adjoint_dot(const Bispinor& w, const Bispinor& wp) {
  cplx s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::conj(w.c[i]) * wp.c[i];
  return s;
}

// 4x4 complex matrix, row-major.
struct Mat4 {
  std::array<cplx, 16> m{};

  cplx& operator()(int r, int c) { return m[4 * r + c]; }
  const cplx& operator()(int r, int c) const { return m[4 * r + c]; }

  static Mat4 identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
    return r;
  }

  friend Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
  }
  friend Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
  }
  friend Mat4 operator*(cplx s, const Mat4& a) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = s * a.m[i];
    return r;
  }
  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const cplx aik = a(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Bispinor operator*(const Mat4& a, const Bispinor& w) {
    Bispinor r;
    for (int i = 0; i < 4; ++i) {
      cplx s = 0.0;
      for (int j = 0; j < 4; ++j) s += a(i, j) * w.c[j];
      r.c[i] = s;
    }
    return r;
  }

  double max_abs() const {
    double v = 0.0;
    for (const auto& e : m) v = std::max(v, std::abs(e));
    return v;
  }
};

// w^dagger M w'
inline cplx quadratic_form(const Bispinor& w, const Mat4& M,
                           const Bispinor& wp) {
  return adjoint_dot(w, M * wp);
}

// |ket><bra| with the bra conjugated
inline Mat4 outer(const Bispinor& ket, const Bispinor& bra) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = ket.c[i] * std::conj(bra.c[j]);
  return r;
}

}  // namespace kdspin
