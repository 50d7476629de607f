#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bsl/errors.hpp"
#include "bsl/polygon.hpp"

namespace bsl {

using Word = std::vector<int>;

inline void check_admissible(const LabelledPolygon& P, const Word& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == P.hat(w[i - 1]))
      throw BacktrackingWord("letter " + P.label(w[i]) + " follows " + P.label(w[i - 1]));
}

inline std::string word_str(const LabelledPolygon& P, const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += P.label(w[i]);
  }
  return s;
}

// Pull-based boundary expansion.  Each step locates the current image and
// extends the composed inverse map; the image of the *original* point is
// recomputed from scratch through the composed map, so the error is governed
// by the matrix entries rather than by an iterated rounded orbit.
class Expander {
 public:
  Expander(const LabelledPolygon& P, BoundaryPoint xi) : P_(&P), xi0_(xi) {}

  int next() {
    guard_precision();
    BoundaryPoint cur = comp_.apply(xi0_);
    int a = P_->locate(cur);  // may throw NearBoundaryAmbiguity
    if (last_ >= 0 && a == P_->hat(last_))
      throw NearBoundaryAmbiguity("expansion backtracked; point too close to an arc endpoint");
    comp_ = compose(P_->gen_disc(a).inverse(), comp_);
    comp_.renormalize();
    last_ = a;
    ++steps_;
    return a;
  }

  int steps() const { return steps_; }
  BoundaryPoint current() const { return comp_.apply(xi0_); }
  std::function<int()> as_supplier() {
    return [this] { return next(); };
  }

 private:
  void guard_precision() const {
    unsigned bits = precision::bits();
    Real limit = ldexp(Real(1), static_cast<int>(bits) - 32);
    if (abs2(comp_.alpha) > limit)
      throw PrecisionExhausted("composed map entries exceed precision budget after " +
                               std::to_string(steps_) + " steps");
  }

  const LabelledPolygon* P_;
  BoundaryPoint xi0_;
  DiskMoebius comp_ = DiskMoebius::identity();
  int last_ = -1;
  int steps_ = 0;
};

inline Word expand(const LabelledPolygon& P, const BoundaryPoint& xi, int n) {
  Expander e(P, xi);
  Word w;
  w.reserve(n);
  for (int i = 0; i < n; ++i) w.push_back(e.next());
  return w;
}

inline BoundaryPoint bs_step(const LabelledPolygon& P, const BoundaryPoint& xi) {
  int a = P.locate(xi);
  return P.gen_disc(a).inverse().apply(xi);
}

struct CylinderArc {
  Word word;
  BoundaryPoint inf, sup;  // right-open arc from inf to sup in the t direction
  DiskMoebius map;         // composed F over the whole word

  Real width() const {
    Real twopi = 2 * pi_value();
    Real dt = sup.t() - inf.t();
    while (dt < 0) dt += twopi;
    while (dt >= twopi) dt -= twopi;
    return dt;
  }
  Real diameter() const { return abs(sup.w - inf.w); }
  BoundaryPoint midpoint() const {
    return {unit_at(-(inf.t() + width() / 2))};
  }
  bool contains_t(Real t, const Real& tol) const {
    Real twopi = 2 * pi_value();
    Real dt = t - inf.t();
    while (dt < 0) dt += twopi;
    while (dt >= twopi) dt -= twopi;
    return dt <= width() + tol;
  }
};

inline CylinderArc cylinder(const LabelledPolygon& P, const Word& w) {
  if (w.empty()) throw BacktrackingWord("cylinder of the empty word is undefined");
  check_admissible(P, w);
  DiskMoebius prefix = DiskMoebius::identity();
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    prefix = compose(prefix, P.gen_disc(w[i]));
    prefix.renormalize();
  }
  int an = w.back();
  return {w, prefix.apply(P.xi_L(an)), prefix.apply(P.xi_R(an)),
          compose(prefix, P.gen_disc(an))};
}

struct DecodeResult {
  BoundaryPoint point;
  Real error;  // cylinder diameter at the stopping depth
  int depth;
};

// Intersection of the nested cylinders of an admissible letter stream.
inline DecodeResult decode(const LabelledPolygon& P, const std::function<int()>& letters,
                           const Real& resolution, int n_max) {
  DiskMoebius prefix = DiskMoebius::identity();
  int last = -1;
  for (int n = 0; n < n_max; ++n) {
    int a = letters();
    if (last >= 0 && a == P.hat(last))
      throw BacktrackingWord("decode stream violates the no-backtracking condition");
    BoundaryPoint lo = prefix.apply(P.xi_L(a));
    BoundaryPoint hi = prefix.apply(P.xi_R(a));
    CylinderArc arc{{}, lo, hi, DiskMoebius::identity()};
    Real diam = arc.diameter();
    if (diam < resolution) return {arc.midpoint(), diam, n + 1};
    prefix = compose(prefix, P.gen_disc(a));
    prefix.renormalize();
    last = a;
  }
  throw ResolutionNotReached("cylinder diameter above resolution after " +
                             std::to_string(n_max) + " letters");
}

inline DecodeResult decode(const LabelledPolygon& P, const Word& w, const Real& resolution,
                           int n_max) {
  size_t i = 0;
  auto sup = [&]() -> int {
    if (i >= w.size()) throw ResolutionNotReached("finite word exhausted before resolution");
    return w[i++];
  };
  return decode(P, sup, resolution, n_max);
}

}  // namespace bsl
