#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bsl/expansion.hpp"

namespace bsl {

enum class CuspidalType { R, L, NotCuspidal, SingleLetter };

inline const char* to_string(CuspidalType t) {
  switch (t) {
    case CuspidalType::R: return "R";
    case CuspidalType::L: return "L";
    case CuspidalType::NotCuspidal: return "not-cuspidal";
    case CuspidalType::SingleLetter: return "single-letter";
  }
  return "?";
}

inline CuspidalType cuspidal_type(const LabelledPolygon& P, const Word& w) {
  if (w.empty()) throw BacktrackingWord("empty word has no cuspidal type");
  check_admissible(P, w);
  if (w.size() == 1) return CuspidalType::SingleLetter;
  bool all_r = true, all_l = true;
  for (size_t i = 1; i < w.size(); ++i) {
    all_r = all_r && P.is_R_step(w[i - 1], w[i]);
    all_l = all_l && P.is_L_step(w[i - 1], w[i]);
  }
  if (all_r) return CuspidalType::R;
  if (all_l) return CuspidalType::L;
  return CuspidalType::NotCuspidal;
}

struct CuspidalWord {
  Word letters;
  CuspidalType type;  // SingleLetter keeps the R anchor by convention
};

// Anchor vertex xi_W: the common endpoint of all prefix cylinders.
inline BoundaryPoint anchor(const LabelledPolygon& P, const CuspidalWord& w) {
  int a0 = w.letters.front();
  return w.type == CuspidalType::L ? P.xi_L(a0) : P.xi_R(a0);
}

inline int anchor_vertex_index(const LabelledPolygon& P, const CuspidalWord& w) {
  int a0 = w.letters.front();
  return w.type == CuspidalType::L ? a0 : (a0 + 1) % P.n_letters();
}

// Greedy cuspidal acceleration: emits maximal cuspidal words of an admissible
// letter stream.  A word is only emitted once the following letter certifies
// its maximality; a run longer than run_bound signals an eventually cuspidal
// stream (a parabolic point), which the decomposition excludes.
class Accelerator {
 public:
  Accelerator(const LabelledPolygon& P, std::function<int()> letters, int run_bound = 10000)
      : P_(&P), letters_(std::move(letters)), run_bound_(run_bound) {}

  CuspidalWord next() {
    Word w;
    CuspidalType type = CuspidalType::SingleLetter;
    if (pending_ >= 0) {
      w.push_back(pending_);
      pending_ = -1;
    } else {
      w.push_back(letters_());
    }
    while (true) {
      if (static_cast<int>(w.size()) > run_bound_)
        throw SuspectedParabolicPoint("cuspidal run exceeded " + std::to_string(run_bound_) +
                                      " letters; input looks eventually cuspidal");
      int nxt = letters_();
      if (nxt == P_->hat(w.back()))
        throw BacktrackingWord("input stream violates the no-backtracking condition");
      bool r = P_->is_R_step(w.back(), nxt);
      bool l = P_->is_L_step(w.back(), nxt);
      bool extends = false;
      if (w.size() == 1) {
        if (r) type = CuspidalType::R, extends = true;
        else if (l) type = CuspidalType::L, extends = true;
      } else {
        extends = (type == CuspidalType::R) ? r : l;
      }
      if (!extends) {
        pending_ = nxt;
        return {w, w.size() == 1 ? CuspidalType::SingleLetter : type};
      }
      w.push_back(nxt);
    }
  }

 private:
  const LabelledPolygon* P_;
  std::function<int()> letters_;
  int run_bound_;
  int pending_ = -1;
};

// |W|: horizontal distance between the first and last geodesics of the word's
// fan, measured after sending the anchor vertex to infinity through (B A_k)^-1.
inline Real geometric_length(const LabelledPolygon& P, const CuspidalWord& w) {
  if (w.letters.size() <= 1) return Real(0);
  int a0 = w.letters.front();
  int an = w.letters.back();
  BoundaryPoint xw = anchor(P, w);
  BoundaryPoint p1 = (w.type == CuspidalType::R) ? P.xi_L(a0) : P.xi_R(a0);
  DiskMoebius prefix = DiskMoebius::identity();
  for (size_t i = 0; i + 1 < w.letters.size(); ++i) {
    prefix = compose(prefix, P.gen_disc(w.letters[i]));
    prefix.renormalize();
  }
  BoundaryPoint f1 = prefix.apply(P.xi_L(an));
  BoundaryPoint f2 = prefix.apply(P.xi_R(an));
  Real tol = sqrt(precision::tau());
  BoundaryPoint p2{};
  if (f1.same(xw, tol))
    p2 = f2;
  else if (f2.same(xw, tol))
    p2 = f1;
  else
    throw Error("cuspidal word does not share its anchor endpoint (internal)");
  auto [B, k] = P.vertex_rep(anchor_vertex_index(P, w));
  RealMoebius M = compose(B, P.cusps()[k].A).inverse();
  HalfPlanePoint x1 = M.apply(p1.halfplane());
  HalfPlanePoint x2 = M.apply(p2.halfplane());
  if (x1.inf || x2.inf) throw Error("geodesic endpoint mapped to infinity (internal)");
  return abs(x1.x - x2.x);
}

// D(G . z_k) = |c(G A_k)|.
inline Real denominator(const LabelledPolygon& P, const RealMoebius& G, int k) {
  return abs(compose(G, P.cusps()[k].A).c);
}

struct ConvergentRecord {
  int r;
  Word word;
  CuspidalType type;
  BoundaryPoint zeta;
  Real denom;
  Real length;
  int cusp;
};

// Stream of convergents zeta_r = G_{W_0,...,W_{r-1}} . zeta_{W_r}.
class ConvergentStream {
 public:
  ConvergentStream(const LabelledPolygon& P, const BoundaryPoint& alpha, int run_bound = 10000)
      : P_(&P), expander_(P, alpha), accel_(P, expander_.as_supplier(), run_bound) {}

  ConvergentRecord next() {
    CuspidalWord w = accel_.next();
    auto [B, k] = P_->vertex_rep(anchor_vertex_index(*P_, w));
    ConvergentRecord rec;
    rec.r = r_++;
    rec.word = w.letters;
    rec.type = w.type;
    rec.cusp = k;
    rec.zeta = BoundaryPoint::from_halfplane(prefix_.apply(anchor(*P_, w).halfplane()));
    rec.denom = abs(compose(compose(prefix_, B), P_->cusps()[k].A).c);
    rec.length = geometric_length(*P_, w);
    for (int a : w.letters) prefix_ = compose(prefix_, P_->gen_half(a));
    return rec;
  }

 private:
  const LabelledPolygon* P_;
  Expander expander_;
  Accelerator accel_;
  RealMoebius prefix_ = RealMoebius::identity();
  int r_ = 0;
};

inline std::vector<ConvergentRecord> convergents(const LabelledPolygon& P,
                                                 const BoundaryPoint& alpha, int r_max) {
  ConvergentStream s(P, alpha);
  std::vector<ConvergentRecord> out;
  out.reserve(r_max);
  for (int r = 0; r < r_max; ++r) out.push_back(s.next());
  return out;
}

}  // namespace bsl
