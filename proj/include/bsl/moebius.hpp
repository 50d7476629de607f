#pragma once

#include <optional>
#include <utility>

#include "bsl/errors.hpp"
#include "bsl/numeric.hpp"

namespace bsl {

// Point of the extended real line R u {inf} (boundary of the upper half-plane).
struct HalfPlanePoint {
  Real x;
  bool inf = false;

  static HalfPlanePoint infinity() { return {Real(0), true}; }
  static HalfPlanePoint at(Real v) { return {std::move(v), false}; }

  bool same(const HalfPlanePoint& o, const Real& tol) const {
    if (inf || o.inf) return inf == o.inf;
    return near(x, o.x, tol);
  }
};

// phi(z) = (z - i)/(z + i) maps the upper half-plane onto the unit disc.
inline Complex phi(const Complex& z) {
  return (z - Complex(Real(0), Real(1))) / (z + Complex(Real(0), Real(1)));
}

inline Complex phi_boundary(const HalfPlanePoint& p) {
  if (p.inf) return Complex(Real(1));
  return phi(Complex(p.x));
}

// Inverse of phi on the boundary: disc point of modulus 1 back to R u {inf}.
inline HalfPlanePoint phi_inv_boundary(const Complex& w, const Real& tol) {
  if (near(w, Complex(Real(1)), tol)) return HalfPlanePoint::infinity();
  Complex z = Complex(Real(0), Real(1)) * (Complex(Real(1)) + w) / (Complex(Real(1)) - w);
  return HalfPlanePoint::at(z.re);
}

inline Complex phi_inv(const Complex& w) {
  return Complex(Real(0), Real(1)) * (Complex(Real(1)) + w) / (Complex(Real(1)) - w);
}

// Boundary point, stored canonically in the disc model (the boundary circle is
// compact, so no infinity special cases); the half-plane form is derived.
struct BoundaryPoint {
  Complex w;  // |w| = 1

  static BoundaryPoint from_disc(Complex z) {
    Real n = abs(z);
    return {{z.re / n, z.im / n}};
  }
  static BoundaryPoint from_real(const Real& x) { return from_disc(phi_boundary(HalfPlanePoint::at(x))); }
  static BoundaryPoint infinity() { return {Complex(Real(1))}; }
  static BoundaryPoint from_halfplane(const HalfPlanePoint& p) { return from_disc(phi_boundary(p)); }

  HalfPlanePoint halfplane(const Real& tol) const { return phi_inv_boundary(w, tol); }
  HalfPlanePoint halfplane() const { return halfplane(precision::tau()); }
  bool is_infinity(const Real& tol) const { return near(w, Complex(Real(1)), tol); }

  // Arc parameter: the point is e^{-it}, t normalized into [0, 2pi).
  Real t() const {
    Real v = -arg(w);
    Real twopi = 2 * pi_value();
    if (v < 0) v += twopi;
    if (v >= twopi) v -= twopi;
    return v;
  }

  bool same(const BoundaryPoint& o, const Real& tol) const { return near(w, o.w, tol); }
  bool same(const BoundaryPoint& o) const { return same(o, precision::tau()); }
};

// det 1 real matrix acting on the upper half-plane, canonical sign c > 0, or
// c = 0 and a > 0.
struct RealMoebius {
  Real a, b, c, d;

  static RealMoebius identity() { return {Real(1), Real(0), Real(0), Real(1)}; }

  Real det() const { return a * d - b * c; }
  Real trace() const { return a + d; }

  RealMoebius& canonicalize() {
    Real tol = precision::tau();
    bool flip = c < -tol || (abs(c) <= tol && a < 0);
    if (flip) {
      a = -a; b = -b; c = -c; d = -d;
    }
    return *this;
  }

  RealMoebius inverse() const { return RealMoebius{d, -b, -c, a}.canonicalize(); }

  friend RealMoebius compose(const RealMoebius& m, const RealMoebius& n) {
    return RealMoebius{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                       m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d}
        .canonicalize();
  }

  HalfPlanePoint apply(const HalfPlanePoint& p) const {
    if (p.inf) {
      if (c == 0) return HalfPlanePoint::infinity();
      return HalfPlanePoint::at(a / c);
    }
    Real den = c * p.x + d;
    if (den == 0) return HalfPlanePoint::infinity();
    Real v = (a * p.x + b) / den;
    if (!boost::multiprecision::isfinite(v)) return HalfPlanePoint::infinity();
    return HalfPlanePoint::at(v);
  }

  Complex apply(const Complex& z) const {
    return (Complex(a) * z + Complex(b)) / (Complex(c) * z + Complex(d));
  }

  bool same(const RealMoebius& o, const Real& tol) const {
    return near(a, o.a, tol) && near(b, o.b, tol) && near(c, o.c, tol) && near(d, o.d, tol);
  }
};

// Conjugated form acting on the unit disc: F = [alpha, conj(beta); beta, conj(alpha)]
// with |alpha|^2 - |beta|^2 = 1.
struct DiskMoebius {
  Complex alpha, beta;

  static DiskMoebius identity() { return {Complex(Real(1)), Complex(Real(0))}; }

  Real det_residual() const { return abs2(alpha) - abs2(beta) - 1; }

  DiskMoebius inverse() const { return {conj(alpha), -beta}; }

  friend DiskMoebius compose(const DiskMoebius& f, const DiskMoebius& g) {
    return {f.alpha * g.alpha + conj(f.beta) * g.beta,
            f.beta * g.alpha + conj(f.alpha) * g.beta};
  }

  // Rescales onto the |alpha|^2 - |beta|^2 = 1 sheet (drift control in long
  // compositions); the projective action is unchanged.
  DiskMoebius& renormalize() {
    Real n = sqrt(abs2(alpha) - abs2(beta));
    alpha = {alpha.re / n, alpha.im / n};
    beta = {beta.re / n, beta.im / n};
    return *this;
  }

  Complex apply(const Complex& z) const {
    return (alpha * z + conj(beta)) / (beta * z + conj(alpha));
  }

  BoundaryPoint apply(const BoundaryPoint& p) const {
    return BoundaryPoint::from_disc(apply(p.w));
  }
};

// Conjugation by phi: half-plane matrix to its disc form and back.
inline DiskMoebius to_disk(const RealMoebius& g) {
  return {{(g.a + g.d) / 2, (g.b - g.c) / 2}, {(g.a - g.d) / 2, (g.b + g.c) / 2}};
}

inline RealMoebius to_real(const DiskMoebius& f) {
  return RealMoebius{f.alpha.re + f.beta.re, f.alpha.im + f.beta.im,
                     f.beta.im - f.alpha.im, f.alpha.re - f.beta.re}
      .canonicalize();
}

struct IsometricCircle {
  Complex center;
  Real radius;
};

inline IsometricCircle isometric_circle(const DiskMoebius& f) {
  Real babs = abs(f.beta);
  if (babs <= precision::tau()) throw BetaZero("isometric circle undefined: beta = 0");
  return {-conj(f.alpha) / f.beta, 1 / babs};
}

// Euclidean diameter of G({Im z > T}); +inf when c = 0 (image is again a
// horoball at infinity).
inline Real horoball_diameter(const RealMoebius& g, const Real& T) {
  if (abs(g.c) <= precision::tau()) {
    return Real(std::numeric_limits<double>::infinity());
  }
  return 1 / (T * g.c * g.c);
}

enum class MoebiusClass { Identity, Parabolic, Elliptic, Hyperbolic };

inline MoebiusClass classify(const RealMoebius& g) {
  Real tol = precision::tau();
  Real tr = abs(g.trace());
  if (near(tr, Real(2), tol)) {
    if (abs(g.b) <= tol && abs(g.c) <= tol && near(abs(g.a), Real(1), tol))
      return MoebiusClass::Identity;
    return MoebiusClass::Parabolic;
  }
  return tr < 2 ? MoebiusClass::Elliptic : MoebiusClass::Hyperbolic;
}

inline const char* to_string(MoebiusClass c) {
  switch (c) {
    case MoebiusClass::Identity: return "identity";
    case MoebiusClass::Parabolic: return "parabolic";
    case MoebiusClass::Elliptic: return "elliptic";
    case MoebiusClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

}  // namespace bsl
