#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "bsl/cuspidal.hpp"

namespace bsl {

// Unique representation of a parabolic point as G_{b_0..b_m} . zeta_0 where the
// vertex zeta_0 is not an endpoint of the side e_{hat(b_m)}.
struct ReducedForm {
  Word word;
  int vertex;
};

inline ReducedForm reduced_form(const LabelledPolygon& P, Word w, int vertex) {
  int n = P.n_letters();
  while (!w.empty()) {
    int m = w.back();
    int h = P.hat(m);
    if (vertex == h)
      vertex = (m + 1) % n;
    else if (vertex == (h + 1) % n)
      vertex = m;
    else
      break;
    w.pop_back();
  }
  return {std::move(w), vertex};
}

struct EnumPoint {
  Real x;      // half-plane position
  Real D;      // denominator
  Word word;   // reduced word
  int vertex;  // reduced vertex index
  RealMoebius G;  // matrix of the reduced word
};

struct EnumerationResult {
  std::vector<EnumPoint> points;  // sorted by x, deduplicated by reduced form
  bool complete = true;
  Real Q;
  Real lo, hi;
};

struct EnumerateOptions {
  Real s0 = 1;          // separation constant used by the prune
  int max_depth = 512;
  long max_nodes = 4000000;
  // optional measure focus: only points with D^2 |alpha - p| < eps are needed,
  // letting the prune cut branches whose denominator floor is already too
  // large for their distance to alpha
  bool has_focus = false;
  Real focus_alpha = 0;
  Real focus_eps = 0;
};

// Parabolic points with 0 < D <= Q inside [lo, hi]: breadth-first refinement of
// cylinder arcs, cut by window disjointness and by the horoball separation
// bound (an open cylinder of euclidean length L with endpoint denominators
// D1, D2 holds no point with D <= Q once 1/(s0 L min(D1,D2)) > Q).
class Enumerator {
 public:
  Enumerator(const LabelledPolygon& P, Real Q, Real lo, Real hi, EnumerateOptions opt = {})
      : P_(&P), Q_(std::move(Q)), lo_(std::move(lo)), hi_(std::move(hi)), opt_(opt) {
    t_hi_ = BoundaryPoint::from_real(hi_).t();  // window arc runs from t(hi) to t(lo)
    t_lo_ = BoundaryPoint::from_real(lo_).t();
    t_inf_ = BoundaryPoint::infinity().t();
  }

  EnumerationResult run() {
    result_ = {};
    result_.Q = Q_;
    result_.lo = lo_;
    result_.hi = hi_;
    nodes_ = 0;
    seen_.clear();
    for (int b = 0; b < P_->n_letters(); ++b) emit(Word{}, b);
    for (int b = 0; b < P_->n_letters(); ++b)
      descend(Word{b}, P_->gen_half(b), P_->xi_L(b).t(), P_->xi_R(b).t(), 1);
    std::sort(result_.points.begin(), result_.points.end(),
              [](const EnumPoint& a, const EnumPoint& b) { return a.x < b.x; });
    return std::move(result_);
  }

 private:
  // arc [tL, tR) given as raw t values; width = tR - tL cyclically
  static Real cyc(Real dt, const Real& twopi) {
    while (dt < 0) dt += twopi;
    while (dt >= twopi) dt -= twopi;
    return dt;
  }

  bool arc_contains(const Real& tL, const Real& width, const Real& t, const Real& slack) const {
    Real twopi = 2 * pi_value();
    return cyc(t - tL + slack, twopi) <= width + 2 * slack;
  }

  bool intersects_window(const Real& tL, const Real& width) const {
    Real twopi = 2 * pi_value();
    Real wwidth = cyc(t_lo_ - t_hi_, twopi);
    Real slack = sqrt(precision::tau());
    // two cyclic intervals intersect iff either contains the other's start
    return cyc(t_hi_ - tL, twopi) <= width + slack || cyc(tL - t_hi_, twopi) <= wwidth + slack;
  }

  // Emit both endpoints of the arc [prefix . xi_L(b), prefix . xi_R(b)).
  std::pair<Real, Real> emit(const Word& prefix, int b) {
    int n = P_->n_letters();
    Real d1 = emit_one(prefix, b);
    Real d2 = emit_one(prefix, (b + 1) % n);
    return {d1, d2};
  }

  // Returns the denominator of the endpoint (prefix, vertex) (0 for infinity).
  Real emit_one(const Word& prefix, int vertex) {
    ReducedForm rf = reduced_form(*P_, prefix, vertex);
    Word key = rf.word;
    key.push_back(~rf.vertex);
    auto it = seen_.find(key);
    if (it != seen_.end()) return it->second;

    RealMoebius G = RealMoebius::identity();
    for (int a : rf.word) G = compose(G, P_->gen_half(a));
    auto [B, k] = P_->vertex_rep(rf.vertex);
    RealMoebius rep = compose(compose(G, B), P_->cusps()[k].A);
    Real D = abs(rep.c);
    seen_.emplace(std::move(key), D);

    HalfPlanePoint p = rep.apply(HalfPlanePoint::infinity());
    if (!p.inf && D > 0 && D <= Q_ && p.x >= lo_ - precision::tau() &&
        p.x <= hi_ + precision::tau()) {
      result_.points.push_back({p.x, D, rf.word, rf.vertex, G});
    }
    return D;
  }

  void descend(const Word& w, const RealMoebius& G, Real tL, Real tR, int depth) {
    if (++nodes_ > opt_.max_nodes || depth > opt_.max_depth) {
      result_.complete = false;
      return;
    }
    Real twopi = 2 * pi_value();
    Real width = cyc(tR - tL, twopi);
    if (!intersects_window(tL, width)) return;

    int n = P_->n_letters();
    int last = w.back();
    DiskMoebius Gd = to_disk(G);
    for (int b = 0; b < n; ++b) {
      if (b == P_->hat(last)) continue;
      auto [d1, d2] = emit(w, b);
      BoundaryPoint cl = Gd.apply(P_->xi_L(b));
      BoundaryPoint cr = Gd.apply(P_->xi_R(b));
      Real ctL = cl.t(), ctR = cr.t();
      Real cwidth = cyc(ctR - ctL, twopi);
      if (!intersects_window(ctL, cwidth)) continue;
      // separation prune: valid only for arcs with infinity outside
      if (!arc_contains(ctL, cwidth, t_inf_, sqrt(precision::tau()))) {
        HalfPlanePoint e1 = cl.halfplane(), e2 = cr.halfplane();
        if (!e1.inf && !e2.inf) {
          Real len = abs(e1.x - e2.x);
          Real bound = 0;
          if (d1 > 0 && len > 0) bound = std::max(bound, 1 / (opt_.s0 * len * d1));
          if (d2 > 0 && len > 0) bound = std::max(bound, 1 / (opt_.s0 * len * d2));
          Real qloc = Q_;
          if (opt_.has_focus) {
            Real xlo = std::min(e1.x, e2.x), xhi = std::max(e1.x, e2.x);
            Real dist = 0;
            if (opt_.focus_alpha < xlo) dist = xlo - opt_.focus_alpha;
            if (opt_.focus_alpha > xhi) dist = opt_.focus_alpha - xhi;
            if (dist > 0) qloc = std::min(qloc, sqrt(opt_.focus_eps / dist));
          }
          if (bound > qloc) continue;
        }
      }
      Word cw = w;
      cw.push_back(b);
      descend(cw, compose(G, P_->gen_half(b)), ctL, ctR, depth + 1);
    }
  }

  const LabelledPolygon* P_;
  Real Q_, lo_, hi_;
  EnumerateOptions opt_;
  Real t_lo_, t_hi_, t_inf_;
  EnumerationResult result_;
  long nodes_ = 0;
  std::map<Word, Real> seen_;
};

inline EnumerationResult enumerate_points(const LabelledPolygon& P, const Real& Q, const Real& lo,
                                          const Real& hi, EnumerateOptions opt = {}) {
  if (!(Q > 0)) throw Error("enumerate_points: Q must be positive");
  if (!(lo < hi)) throw Error("enumerate_points: empty window");
  EnumerationResult res = Enumerator(P, Q, lo, hi, opt).run();
  if (!res.complete)
    throw BudgetExceeded("enumeration budget exceeded; partial results at Q=" + to_decimal(Q, 8));
  return res;
}

// Default enumeration window: convex hull of the finite polygon vertices.
inline std::pair<Real, Real> default_window(const LabelledPolygon& P) {
  Real lo = 0, hi = 0;
  bool first = true;
  for (int v = 0; v < P.vertex_count(); ++v) {
    HalfPlanePoint p = P.vertex(v).halfplane();
    if (p.inf) continue;
    if (first) {
      lo = hi = p.x;
      first = false;
    } else {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
  }
  if (first || !(lo < hi)) throw Error("polygon has fewer than two finite vertices");
  return {lo, hi};
}

// Conservative separation constant for the prune: exact for the modular preset
// (Ford circles are disjoint or tangent), otherwise a shallow unpruned scan
// with a safety factor.
inline Real default_s0(const LabelledPolygon& P) {
  if (P.name() == "modular") return Real(1);
  auto [lo, hi] = default_window(P);
  EnumerateOptions opt;
  opt.s0 = Real(1) / 1024;  // effectively disables the separation prune
  opt.max_depth = 6;
  EnumerationResult shallow = Enumerator(P, Real(64), lo, hi, opt).run();
  Real s0 = 1;
  const auto& pts = shallow.points;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size() && j < i + 40; ++j) {
      Real gap = pts[j].x - pts[i].x;
      if (gap <= 0) continue;
      s0 = std::max(s0, 1 / (gap * pts[i].D * pts[j].D));
    }
  return 4 * s0;
}

struct ConstantsEstimate {
  Real S0, eps0, kappa1, kappa2, M;
  Real Q;
  long n_points;
  long n_alpha;
};

struct ConstantsOptions {
  int n_alpha = 40;
  uint64_t seed = 20240915;
  long kappa2_cap = 4000;  // points included in the kappa_2 scan
  int rmax_factor = 8;     // convergents generated until D > rmax_factor * Q
};

namespace detail {

inline std::vector<Real> sample_alphas(const Real& lo, const Real& hi, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 1 << 20);
  std::vector<Real> out;
  while (static_cast<int>(out.size()) < count) {
    // quadratic surds (p + q sqrt(N))/r folded into the window
    int N = std::array<int, 8>{2, 3, 5, 6, 7, 10, 11, 13}[num(rng) % 8];
    Real x = (Real(num(rng) % 1000 - 500) / 100 + sqrt(Real(N)) / (1 + num(rng) % 9));
    Real span = hi - lo;
    x = lo + fmod(fmod(x - lo, span) + span, span);
    if (x - lo > span / 1000 && hi - x > span / 1000) out.push_back(x);
  }
  return out;
}

// zeta_r values (|W_r| > 0) of alpha until the denominators exceed Dmax.
inline std::vector<std::pair<Real, Real>> convergent_points(const LabelledPolygon& P,
                                                            const Real& alpha, const Real& Dmax,
                                                            int run_bound = 10000) {
  std::vector<std::pair<Real, Real>> out;
  ConvergentStream s(P, BoundaryPoint::from_real(alpha), run_bound);
  for (int r = 0; r < 100000; ++r) {
    ConvergentRecord rec = s.next();
    HalfPlanePoint hp = rec.zeta.halfplane();
    if (!hp.inf && rec.length > 0) out.emplace_back(hp.x, rec.denom);
    if (rec.denom > Dmax) break;
  }
  return out;
}

}  // namespace detail

// Deterministic alpha sample inside the polygon's default window; the same
// seed always yields the same sequence, so acceptance runs can reuse a subset
// of the sample an estimate was computed from.
inline std::vector<Real> sample_window_alphas(const LabelledPolygon& P, int count,
                                              uint64_t seed = 20240915) {
  auto [lo, hi] = default_window(P);
  return detail::sample_alphas(lo, hi, count, seed);
}

// Empirical estimates of the constants S_0, eps_0, kappa_1, kappa_2, M at
// enumeration bound Q.  eps_0 is the exact sample minimum of missed-point
// measures (the value that bisection over the same sample converges to).
inline ConstantsEstimate estimate_constants(const LabelledPolygon& P, const Real& Q,
                                            ConstantsOptions opt = {}) {
  auto [lo, hi] = default_window(P);
  EnumerateOptions eo;
  eo.s0 = default_s0(P);
  EnumerationResult enumr = enumerate_points(P, Q, lo, hi, eo);
  const auto& pts = enumr.points;
  if (pts.size() < 100)
    throw InsufficientData("estimate_constants needs at least 100 points, got " +
                           std::to_string(pts.size()));
  ConstantsEstimate est;
  est.Q = Q;
  est.n_points = static_cast<long>(pts.size());
  est.n_alpha = opt.n_alpha;

  // S0 = max over pairs of 1/(|x - x'| D D'); only near neighbours can win
  Real S0 = 0;
  Real Dmin = pts.front().D;
  for (const auto& p : pts) Dmin = std::min(Dmin, p.D);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      Real gap = pts[j].x - pts[i].x;
      if (S0 > 0 && gap > 1 / (S0 * pts[i].D * Dmin)) break;
      if (gap <= 0) continue;
      S0 = std::max(S0, 1 / (gap * pts[i].D * pts[j].D));
    }
  }
  est.S0 = S0;

  // kappa_1: distance from the reduced-form vertex to the pole of G
  Real k1 = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    if (p.word.empty() || abs(p.G.c) <= precision::tau()) continue;
    HalfPlanePoint v = P.vertex(p.vertex).halfplane();
    if (v.inf) continue;
    Real pole = -p.G.d / p.G.c;
    k1 = std::min(k1, abs(v.x - pole));
  }
  est.kappa1 = k1;

  // kappa_2: Lemma-3 ratios over (a deterministic subsample of) reduced forms
  Real k2 = std::numeric_limits<double>::infinity();
  size_t stride = std::max<size_t>(1, pts.size() / opt.kappa2_cap);
  int n = P.n_letters();
  for (size_t i = 0; i < pts.size(); i += stride) {
    const auto& p = pts[i];
    if (p.word.empty()) continue;
    int last = p.word.back();
    for (int v1 = 0; v1 < n; ++v1) {
      if (v1 == p.vertex) continue;
      auto [B, k] = P.vertex_rep(v1);
      Real Dv = abs(compose(compose(p.G, B), P.cusps()[k].A).c);
      if (Dv > 0) k2 = std::min(k2, p.D / Dv);
    }
    for (int b = 0; b < n; ++b) {
      if (b == P.hat(last)) continue;
      RealMoebius Gb = compose(p.G, P.gen_half(b));
      for (int v2 = 0; v2 < n; ++v2) {
        // skip extensions landing back on the same point's vertex
        HalfPlanePoint img = P.gen_half(b).apply(P.vertex(v2).halfplane());
        HalfPlanePoint v0 = P.vertex(p.vertex).halfplane();
        if (img.same(v0, sqrt(precision::tau()))) continue;
        auto [B, k] = P.vertex_rep(v2);
        Real Dv = abs(compose(compose(Gb, B), P.cusps()[k].A).c);
        if (Dv > 0) k2 = std::min(k2, p.D / Dv);
      }
    }
  }
  est.kappa2 = k2;

  // eps_0 and M over a seeded alpha sample
  std::vector<Real> alphas = detail::sample_alphas(lo, hi, opt.n_alpha, opt.seed);
  Real eps0 = std::numeric_limits<double>::infinity();
  Real M = 0;
  Real match_tol = sqrt(precision::tau());
  for (const Real& a : alphas) {
    std::vector<std::pair<Real, Real>> zs;
    try {
      zs = detail::convergent_points(P, a, opt.rmax_factor * Q);
    } catch (const Error&) {
      continue;  // ambiguous / near-parabolic sample, skip
    }
    Real best_defect = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      Real dist = abs(a - p.x);
      best_defect = std::min(best_defect, dist * p.D * Q);
      Real measure = p.D * p.D * dist;
      if (measure < eps0) {
        bool matched = false;
        for (const auto& z : zs)
          if (abs(z.first - p.x) <= match_tol) {
            matched = true;
            break;
          }
        if (!matched) eps0 = measure;
      }
    }
    M = std::max(M, best_defect);
  }
  est.eps0 = eps0;
  est.M = M;
  return est;
}

struct DirichletResult {
  bool ok;
  EnumPoint witness;  // best candidate on failure
  Real defect;        // |alpha - p| D Q of the returned point
};

// Patterson/Dirichlet check: some enumerated point with 0 < D <= Q and
// |alpha - p| <= M / (D Q).
inline DirichletResult dirichlet_check(const LabelledPolygon& P, const Real& alpha, const Real& Q,
                                       const Real& M, const Real& s0) {
  Real Dfloor = std::numeric_limits<double>::infinity();
  for (int v = 0; v < P.vertex_count(); ++v) {
    auto [B, k] = P.vertex_rep(v);
    Real D = abs(compose(B, P.cusps()[k].A).c);
    if (D > precision::tau()) Dfloor = std::min(Dfloor, D);
  }
  Real radius = M / (Q * Dfloor) * 2;
  EnumerateOptions opt;
  opt.s0 = s0;
  EnumerationResult res = enumerate_points(P, Q, alpha - radius, alpha + radius, opt);
  DirichletResult out;
  out.ok = false;
  out.defect = std::numeric_limits<double>::infinity();
  for (const auto& p : res.points) {
    Real defect = abs(alpha - p.x) * p.D * Q;
    if (defect < out.defect) {
      out.defect = defect;
      out.witness = p;
    }
    if (defect <= M) out.ok = true;
  }
  return out;
}

}  // namespace bsl
