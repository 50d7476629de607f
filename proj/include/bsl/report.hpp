#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsl/classical.hpp"
#include "bsl/parabolic.hpp"

namespace bsl {

struct TheoremRow {
  std::string alpha;
  int r;
  std::string word;
  Real length;
  Real denom;
  Real measure;  // D^2 |alpha - zeta_r|
  Real lower, upper;
  bool pass;
};

struct InclusionRow {
  std::string alpha;
  Real point;
  Real denom;
  Real measure;
  bool matched;
};

struct TheoremReport {
  std::vector<TheoremRow> part1;
  std::vector<InclusionRow> part2;
  std::vector<std::string> skipped;  // alphas that raised module errors
  Real eps, Q;

  bool part1_ok() const {
    for (const auto& r : part1)
      if (!r.pass) return false;
    return true;
  }
  bool part2_ok() const {
    for (const auto& r : part2)
      if (!r.matched) return false;
    return true;
  }
  bool ok() const { return part1_ok() && part2_ok() && skipped.empty(); }
};

struct TheoremOptions {
  int r_max = 25;
  Real slack_factor = 10;  // bound slack = slack_factor * tau
  int run_bound = 10000;
  Real zeta_D_factor = 8;  // collect zeta_r until D > factor * Q
};

// Runs both parts of the approximation theorem for a batch of alphas.
inline TheoremReport check_theorem(const LabelledPolygon& P, const std::vector<Real>& alphas,
                                   const std::vector<std::string>& labels, const Real& eps,
                                   const Real& Q, const Real& s0, TheoremOptions opt = {}) {
  TheoremReport rep;
  rep.eps = eps;
  rep.Q = Q;
  Real tau = precision::tau();
  Real slack = opt.slack_factor * tau;
  Real mu = P.mu_max();
  Real match_tol = sqrt(tau);

  for (size_t ai = 0; ai < alphas.size(); ++ai) {
    const Real& alpha = alphas[ai];
    std::string label = ai < labels.size() ? labels[ai] : to_decimal(alpha, 12);
    std::vector<std::pair<Real, Real>> zeta;  // (x, D) with |W_r| > 0
    try {
      ConvergentStream s(P, BoundaryPoint::from_real(alpha), opt.run_bound);
      int emitted = 0;
      for (int r = 0; r < 100000; ++r) {
        ConvergentRecord rec = s.next();
        HalfPlanePoint hp = rec.zeta.halfplane();
        if (rec.length > 0 && !hp.inf) {
          zeta.emplace_back(hp.x, rec.denom);
          if (emitted < opt.r_max) {
            TheoremRow row;
            row.alpha = label;
            row.r = rec.r;
            row.word = word_str(P, rec.word);
            row.length = rec.length;
            row.denom = rec.denom;
            row.measure = rec.denom * rec.denom * abs(alpha - hp.x);
            row.lower = 1 / (rec.length + 2 * mu);
            row.upper = 1 / rec.length;
            row.pass = (row.measure >= row.lower - slack) && (row.measure <= row.upper + slack);
            rep.part1.push_back(row);
            ++emitted;
          }
        }
        if (rec.denom > opt.zeta_D_factor * Q && emitted >= opt.r_max) break;
      }
    } catch (const Error& e) {
      rep.skipped.push_back(label + ": " + e.what());
      continue;
    }

    // part 2: every enumerated point with D^2 |alpha - p| < eps must be a zeta_r
    Real Dfloor = std::numeric_limits<double>::infinity();
    for (int v = 0; v < P.vertex_count(); ++v) {
      auto [B, k] = P.vertex_rep(v);
      Real D = abs(compose(B, P.cusps()[k].A).c);
      if (D > tau) Dfloor = std::min(Dfloor, D);
    }
    Real radius = eps / (Dfloor * Dfloor) + 1;
    EnumerateOptions eo;
    eo.s0 = s0;
    eo.has_focus = true;
    eo.focus_alpha = alpha;
    eo.focus_eps = eps * Real("1.0625");
    EnumerationResult pts = enumerate_points(P, Q, alpha - radius, alpha + radius, eo);
    for (const auto& p : pts.points) {
      Real measure = p.D * p.D * abs(alpha - p.x);
      if (!(measure < eps)) continue;
      bool matched = false;
      for (const auto& z : zeta)
        if (abs(z.first - p.x) <= match_tol) {
          matched = true;
          break;
        }
      rep.part2.push_back({label, p.x, p.D, measure, matched});
    }
  }
  return rep;
}

inline nlohmann::json theorem_report_json(const TheoremReport& rep) {
  nlohmann::json j;
  j["eps"] = to_decimal(rep.eps, 12);
  j["Q"] = to_decimal(rep.Q, 12);
  j["part1_ok"] = rep.part1_ok();
  j["part2_ok"] = rep.part2_ok();
  j["ok"] = rep.ok();
  j["part1"] = nlohmann::json::array();
  for (const auto& r : rep.part1)
    j["part1"].push_back({{"alpha", r.alpha},
                          {"r", r.r},
                          {"word", r.word},
                          {"length", to_decimal(r.length, 20)},
                          {"D", to_decimal(r.denom, 20)},
                          {"measure", to_decimal(r.measure, 20)},
                          {"lower", to_decimal(r.lower, 20)},
                          {"upper", to_decimal(r.upper, 20)},
                          {"pass", r.pass}});
  j["part2"] = nlohmann::json::array();
  for (const auto& r : rep.part2)
    j["part2"].push_back({{"alpha", r.alpha},
                          {"point", to_decimal(r.point, 20)},
                          {"D", to_decimal(r.denom, 20)},
                          {"measure", to_decimal(r.measure, 20)},
                          {"matched", r.matched}});
  j["skipped"] = rep.skipped;
  return j;
}

inline std::string theorem_report_text(const TheoremReport& rep) {
  std::ostringstream os;
  os << "part 1 rows (" << rep.part1.size() << "):\n";
  for (const auto& r : rep.part1)
    os << "  " << (r.pass ? "pass" : "FAIL") << "  alpha=" << r.alpha << " r=" << r.r
       << " |W|=" << to_decimal(r.length, 8) << " D=" << to_decimal(r.denom, 8)
       << " D^2|a-z|=" << to_decimal(r.measure, 10) << " in [" << to_decimal(r.lower, 8) << ", "
       << to_decimal(r.upper, 8) << "]\n";
  os << "part 2 rows (" << rep.part2.size() << "):\n";
  for (const auto& r : rep.part2)
    os << "  " << (r.matched ? "pass" : "FAIL") << "  alpha=" << r.alpha
       << " point=" << to_decimal(r.point, 12) << " D=" << to_decimal(r.denom, 8)
       << " measure=" << to_decimal(r.measure, 10) << "\n";
  for (const auto& s : rep.skipped) os << "  skipped " << s << "\n";
  os << (rep.ok() ? "THEOREM CHECK PASS" : "THEOREM CHECK FAIL") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Ford-circle figure.

namespace svg_detail {

inline std::string fixed(const Real& x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << static_cast<double>(x);
  std::string s = os.str();
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace svg_detail

// Deterministic SVG of the horoball packing: one circle of diameter 1/D^2
// tangent at every enumerated point, plus the cusp horoballs.
inline std::string render_ford(const LabelledPolygon& P, const Real& Q, const Real& lo,
                               const Real& hi, const Real& s0) {
  using svg_detail::fixed;
  Real span = hi - lo;
  int W = 900;
  Real scale = W / span;
  Real Hreal = std::min(Real(1.2), span / 2);
  int H = static_cast<int>(Hreal * static_cast<double>(scale)) + 20;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  auto X = [&](const Real& x) { return (x - lo) * scale; };
  auto Y = [&](const Real& y) { return Real(H - 10) - y * scale; };
  // cusp horoballs
  for (const auto& c : P.cusps()) {
    HalfPlanePoint z = c.z.halfplane();
    Real diam = horoball_diameter(c.A, Real(1));
    if (z.inf || !boost::multiprecision::isfinite(diam)) {
      os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << fixed(Y(Real(1)))
         << "\" fill=\"#e8e8f0\" stroke=\"#333\"/>\n";
    } else if (z.x >= lo && z.x <= hi) {
      os << "<circle cx=\"" << fixed(X(z.x)) << "\" cy=\"" << fixed(Y(diam / 2)) << "\" r=\""
         << fixed(diam / 2 * scale) << "\" fill=\"#e8e8f0\" stroke=\"#333\"/>\n";
    }
  }
  EnumerateOptions eo;
  eo.s0 = s0;
  EnumerationResult pts = enumerate_points(P, Q, lo, hi, eo);
  for (const auto& p : pts.points) {
    Real r = 1 / (2 * p.D * p.D);
    os << "<circle cx=\"" << fixed(X(p.x)) << "\" cy=\"" << fixed(Y(r)) << "\" r=\""
       << fixed(r * scale) << "\" fill=\"#f5f5f5\" stroke=\"black\" stroke-width=\"0.6\"/>\n";
  }
  os << "<line x1=\"0\" y1=\"" << fixed(Y(Real(0))) << "\" x2=\"" << W << "\" y2=\""
     << fixed(Y(Real(0))) << "\" stroke=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace bsl
