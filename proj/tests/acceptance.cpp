// Acceptance suite: runs the seven top-level criteria and prints one
// pass/fail line each.  Exit code 0 iff every criterion passed.

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#include "bsl/report.hpp"
#include "oracles.hpp"

using namespace bsl;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  const char* name;
  Clock::time_point start = Clock::now();
  bool ok = true;
  std::string detail;

  explicit Criterion(const char* n) : name(n) {}
  void fail(const std::string& why) {
    ok = false;
    if (detail.size() < 600) detail += (detail.empty() ? "" : "; ") + why;
  }
  ~Criterion() {
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::cout << "[" << name << "] " << (ok ? "PASS" : "FAIL") << "  (" << secs << " s)"
              << (detail.empty() ? "" : "  " + detail) << std::endl;
    if (!ok) ++failures;
  }
};

std::string octagon_path() { return std::string(BSL_SOURCE_DIR) + "/data/genus2_octagon.json"; }

std::vector<Surd> decimal_batch(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Surd> out;
  for (int i = 0; i < count; ++i) {
    std::string digits = std::to_string(1 + static_cast<int>(rng() % 8)) + ".";
    for (int j = 0; j < 50; ++j) digits += static_cast<char>('0' + rng() % 10);
    out.push_back(parse_alpha(digits));
  }
  return out;
}

// ---------------------------------------------------------------------- 1
void criterion1() {
  Criterion c("criterion 1: classical laws, exact");
  std::vector<Surd> alphas = oracles::surd_batch(30, 101);
  std::vector<Surd> decs = decimal_batch(20, 102);
  alphas.insert(alphas.end(), decs.begin(), decs.end());
  for (size_t i = 0; i < alphas.size(); ++i) {
    ClassicalReport rep = check_classical_bounds(alphas[i], 25, Int(10000));
    if (!rep.good_missing.empty())
      c.fail("alpha#" + std::to_string(i) + ": " + std::to_string(rep.good_missing.size()) +
             " good approximations missing from the convergents");
    for (const auto& row : rep.bound_rows)
      if (!row.pass) c.fail("alpha#" + std::to_string(i) + " row n=" + std::to_string(row.n));
  }
}

// ---------------------------------------------------------------------- 2
void run_part1(Criterion& c, const LabelledPolygon& P, const std::vector<Real>& alphas,
               const std::string& tag) {
  Real tau = precision::tau();
  Real mu = P.mu_max();
  for (size_t i = 0; i < alphas.size(); ++i) {
    int rows = 0;
    try {
      ConvergentStream s(P, BoundaryPoint::from_real(alphas[i]));
      for (int r = 0; r < 4000 && rows < 25; ++r) {
        ConvergentRecord rec = s.next();
        if (!(rec.length > 0)) continue;
        HalfPlanePoint hp = rec.zeta.halfplane();
        if (hp.inf) continue;
        ++rows;
        Real measure = rec.denom * rec.denom * abs(alphas[i] - hp.x);
        if (!(measure >= 1 / (rec.length + 2 * mu) - 10 * tau) ||
            !(measure <= 1 / rec.length + 10 * tau))
          c.fail(tag + " alpha#" + std::to_string(i) + " r=" + std::to_string(rec.r));
      }
      if (rows < 25) c.fail(tag + " alpha#" + std::to_string(i) + ": only " +
                            std::to_string(rows) + " usable records");
    } catch (const Error& e) {
      c.fail(tag + " alpha#" + std::to_string(i) + ": " + e.what());
    }
  }
}

void criterion2() {
  Criterion c("criterion 2: theorem part 1, modular + octagon, 20 alphas each");
  auto P = preset_modular();
  run_part1(c, P, sample_window_alphas(P, 20, 7001), "modular");
  auto O = load_group(octagon_path());
  run_part1(c, O, sample_window_alphas(O, 20, 7002), "octagon");
}

// ---------------------------------------------------------------------- 3
void criterion3() {
  Criterion c("criterion 3: theorem part 2, Q=300, eps=0.4 (modular) / empirical (octagon)");
  {
    auto P = preset_modular();
    std::vector<Real> alphas = sample_window_alphas(P, 20, 20240915);
    TheoremOptions opt;
    opt.r_max = 25;
    TheoremReport rep = check_theorem(P, alphas, {}, Real(2) / 5, Real(300), Real(1), opt);
    int unmatched = 0;
    for (const auto& row : rep.part2)
      if (!row.matched) ++unmatched;
    if (unmatched > 0 || !rep.skipped.empty())
      c.fail("modular eps=0.4: " + std::to_string(unmatched) +
             " good approximations are not accelerated convergents (the empirical "
             "inclusion threshold of this preset is near 0.2, see README)");
  }
  {
    auto O = load_group(octagon_path());
    Real s0 = default_s0(O);
    ConstantsEstimate est = estimate_constants(O, Real(300));
    std::cout << "  octagon estimates: eps0=" << to_decimal(est.eps0, 8)
              << " S0=" << to_decimal(est.S0, 8) << " kappa1=" << to_decimal(est.kappa1, 8)
              << " kappa2=" << to_decimal(est.kappa2, 8) << " M=" << to_decimal(est.M, 8)
              << " (n=" << est.n_points << ")\n";
    std::vector<Real> alphas = sample_window_alphas(O, 20);  // subset of the estimator sample
    TheoremOptions opt;
    opt.r_max = 25;
    TheoremReport rep = check_theorem(O, alphas, {}, est.eps0, Real(300), s0, opt);
    int unmatched = 0;
    for (const auto& row : rep.part2)
      if (!row.matched) ++unmatched;
    if (unmatched > 0) c.fail("octagon at empirical eps0: " + std::to_string(unmatched) + " gaps");
    if (!rep.skipped.empty()) c.fail("octagon skipped " + std::to_string(rep.skipped.size()));
  }
}

// ---------------------------------------------------------------------- 4
void criterion4() {
  Criterion c("criterion 4: enumeration equals the Farey oracle, Q <= 50");
  auto P = preset_modular();
  for (int Q : {7, 23, 50}) {
    EnumerationResult res = enumerate_points(P, Real(Q), Real(0), Real(1));
    std::vector<Rational> farey = farey_interval(Int(Q), Rational(0), Rational(1));
    if (res.points.size() != farey.size()) {
      c.fail("Q=" + std::to_string(Q) + ": " + std::to_string(res.points.size()) + " vs " +
             std::to_string(farey.size()));
      continue;
    }
    for (size_t i = 0; i < farey.size(); ++i) {
      Real x = Real(numerator(farey[i]).str()) / Real(denominator(farey[i]).str());
      if (!near(res.points[i].x, x, sqrt(precision::tau())) ||
          !near(res.points[i].D, Real(denominator(farey[i]).str()), sqrt(precision::tau())))
        c.fail("Q=" + std::to_string(Q) + " mismatch at index " + std::to_string(i));
    }
  }
}

// ---------------------------------------------------------------------- 5
void criterion5() {
  Criterion c("criterion 5: dynamics invariants");
  precision::Scoped guard(768);  // depth-200/500 walks need headroom
  auto P = preset_modular();
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0, 1);

  // shift conjugacy, 100 points x 40 steps
  int done = 0;
  while (done < 100) {
    BoundaryPoint xi{unit_at(2 * pi_value() * Real(u(rng)))};
    try {
      Word full = expand(P, xi, 41);
      Word shifted = expand(P, bs_step(P, xi), 40);
      for (int i = 0; i < 40; ++i)
        if (shifted[i] != full[i + 1]) {
          c.fail("shift conjugacy violated");
          break;
        }
      ++done;
    } catch (const NearBoundaryAmbiguity&) {
    }
  }

  // no backtracking + nesting + monotone shrinking to depth 200
  done = 0;
  while (done < 8) {
    Real x = Real(u(rng)) * 2 - Real("0.5") + sqrt(Real(2)) / 1000;
    BoundaryPoint p = BoundaryPoint::from_real(x);
    try {
      Word w = expand(P, p, 200);
      check_admissible(P, w);
      Real prev = 10;
      DiskMoebius prefix = DiskMoebius::identity();
      for (int nn = 0; nn < 200; ++nn) {
        BoundaryPoint lo = prefix.apply(P.xi_L(w[nn]));
        BoundaryPoint hi = prefix.apply(P.xi_R(w[nn]));
        Real diam = abs(hi.w - lo.w);
        if (diam > prev + precision::tau()) c.fail("diameter not monotone");
        prev = diam;
        prefix = compose(prefix, P.gen_disc(w[nn]));
        prefix.renormalize();
      }
      if (!(prev < Real("1e-6"))) c.fail("diameter above 1e-6 at depth 200");
      ++done;
    } catch (const NearBoundaryAmbiguity&) {
    }
  }

  // decomposition faithfulness + maximality, 500 letters x 20 alphas
  done = 0;
  int guard_iter = 0;
  while (done < 20 && ++guard_iter < 200) {
    Real x = Real(u(rng)) * 3 - 1 + sqrt(Real(3)) / 977;
    try {
      Expander e(P, BoundaryPoint::from_real(x));
      Word stream;
      auto tap = [&]() {
        int v = e.next();
        stream.push_back(v);
        return v;
      };
      Accelerator acc(P, tap);
      size_t consumed = 0;
      while (consumed < 500) {
        CuspidalWord cw = acc.next();
        if (cuspidal_type(P, cw.letters) == CuspidalType::NotCuspidal)
          c.fail("emitted word is not cuspidal");
        for (size_t i = 0; i < cw.letters.size(); ++i)
          if (stream[consumed + i] != cw.letters[i]) c.fail("decomposition not faithful");
        consumed += cw.letters.size();
        if (consumed < stream.size()) {
          Word ext = cw.letters;
          ext.push_back(stream[consumed]);
          if (cuspidal_type(P, ext) != CuspidalType::NotCuspidal) c.fail("word not maximal");
        }
      }
      ++done;
    } catch (const NearBoundaryAmbiguity&) {
    } catch (const SuspectedParabolicPoint&) {
    }
  }
  if (done < 20) c.fail("could not collect 20 alphas");
}

// ---------------------------------------------------------------------- 6
void criterion6() {
  Criterion c("criterion 6: geometry invariants");
  Real tau = precision::tau();
  auto P = preset_modular();
  std::mt19937_64 rng(606);

  // isometric circle identities on generators and random words of length <= 8
  std::vector<DiskMoebius> cases;
  for (int a = 0; a < P.n_letters(); ++a) cases.push_back(P.gen_disc(a));
  for (int t = 0; t < 12; ++t) {
    Word w;
    int last = -1;
    int len = 2 + static_cast<int>(rng() % 7);
    DiskMoebius m = DiskMoebius::identity();
    for (int i = 0; i < len; ++i) {
      int a;
      do {
        a = static_cast<int>(rng() % P.n_letters());
      } while (last >= 0 && a == P.hat(last));
      last = a;
      m = compose(m, P.gen_disc(a));
    }
    cases.push_back(m);
  }
  for (const DiskMoebius& F : cases) {
    if (abs(F.beta) <= tau) continue;
    IsometricCircle ic = isometric_circle(F);
    IsometricCircle ici = isometric_circle(F.inverse());
    if (!near(ic.radius, ici.radius, 10 * tau)) c.fail("rho(F) != rho(F^-1)");
    for (int s = 0; s < 24; ++s) {
      Complex xi = ic.center + ic.radius * unit_at(2 * pi_value() * s / 24);
      if (abs(abs(F.apply(xi) - ici.center) - ici.radius) > 10 * tau)
        c.fail("F(I_F) != I_{F^-1}");
    }
  }

  // horoball diameter against the sampled supremum
  int done = 0;
  while (done < 3) {
    RealMoebius g = oracles::random_moebius(rng);
    if (abs(g.c) <= tau) continue;
    ++done;
    for (int T : {1, 2, 5}) {
      Real diam = horoball_diameter(g, Real(T));
      Real sup = oracles::horoball_sup_im(g, Real(T), 800);
      if (abs(sup - diam) > 10 * tau) c.fail("horoball diameter vs sampled supremum");
    }
  }

  // Delta independence of B across 3 representatives per vertex, both groups
  auto delta_with = [](const LabelledPolygon& G, const CuspidalWord& w, const RealMoebius& B,
                       int k) {
    BoundaryPoint xw = anchor(G, w);
    BoundaryPoint p1 = (w.type == CuspidalType::R) ? G.xi_L(w.letters.front())
                                                   : G.xi_R(w.letters.front());
    DiskMoebius pre = DiskMoebius::identity();
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
      pre = compose(pre, G.gen_disc(w.letters[i]));
    BoundaryPoint f1 = pre.apply(G.xi_L(w.letters.back()));
    BoundaryPoint f2 = pre.apply(G.xi_R(w.letters.back()));
    BoundaryPoint p2 = f1.same(xw, sqrt(precision::tau())) ? f2 : f1;
    RealMoebius M = compose(B, G.cusps()[k].A).inverse();
    return abs(M.apply(p1.halfplane()).x - M.apply(p2.halfplane()).x);
  };
  auto run_delta = [&](const LabelledPolygon& G, const char* tag) {
    for (int a = 0; a < G.n_letters(); ++a) {
      // an R-cuspidal two-letter word starting at every letter
      int nxt = (G.hat(a) + G.n_letters() - 1) % G.n_letters();
      Word w{a, nxt};
      if (cuspidal_type(G, w) != CuspidalType::R) continue;
      CuspidalWord cw{w, CuspidalType::R};
      auto [B, k] = G.vertex_rep(anchor_vertex_index(G, cw));
      Real ref = geometric_length(G, cw);
      // P = A_k T^m A_k^-1 is parabolic fixing z_k; B' = B P represents too
      RealMoebius T{Real(1), G.cusps()[k].mu, Real(0), Real(1)};
      RealMoebius Pk = compose(compose(G.cusps()[k].A, T), G.cusps()[k].A.inverse());
      RealMoebius B1 = compose(B, Pk);
      RealMoebius B2 = compose(B1, Pk);
      if (abs(delta_with(G, cw, B1, k) - ref) > 10 * precision::tau())
        c.fail(std::string(tag) + ": Delta depends on B");
      if (abs(delta_with(G, cw, B2, k) - ref) > 10 * precision::tau())
        c.fail(std::string(tag) + ": Delta depends on B (second rep)");
    }
  };
  run_delta(P, "modular");
  auto O = load_group(octagon_path());
  run_delta(O, "octagon");
}

// ---------------------------------------------------------------------- 7
void criterion7() {
  Criterion c("criterion 7: constants sanity");
  auto P = preset_modular();
  ConstantsOptions copt;
  copt.n_alpha = 20;
  ConstantsEstimate est = estimate_constants(P, Real(200), copt);
  std::cout << "  modular estimates: eps0=" << to_decimal(est.eps0, 8)
            << " S0=" << to_decimal(est.S0, 8) << " kappa1=" << to_decimal(est.kappa1, 8)
            << " kappa2=" << to_decimal(est.kappa2, 8) << " M=" << to_decimal(est.M, 8)
            << " (n=" << est.n_points << ")\n";
  if (!(est.kappa1 > 0)) c.fail("kappa1 not positive");
  if (!(est.kappa2 > 0)) c.fail("kappa2 not positive");

  // separation regression against the frozen modular S0 = 1
  EnumerationResult res = enumerate_points(P, Real(200), Real(0), Real(1));
  Real slack = sqrt(precision::tau());
  for (size_t i = 0; i + 1 < res.points.size(); ++i) {
    const auto& a = res.points[i];
    const auto& b = res.points[i + 1];
    if (b.x - a.x < 1 / (a.D * b.D) - slack) c.fail("separation below the frozen S0 = 1");
  }

  // Dirichlet with M = 1 never fails: 100 alphas, Q up to 1000
  std::vector<Real> alphas = sample_window_alphas(P, 100, 707);
  int i = 0;
  for (const Real& a : alphas) {
    Real Q = Real(100 + (i++ * 9) % 901);  // spread over Q <= 10^3
    DirichletResult r = dirichlet_check(P, a, Q, Real(1), Real(1));
    if (!r.ok) c.fail("dirichlet failed at alpha#" + std::to_string(i - 1));
  }
}

}  // namespace

int main() {
  precision::set_bits(256);
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  std::cout << (failures ? "ACCEPTANCE: FAILURES PRESENT" : "ACCEPTANCE: ALL PASS")
            << " (" << failures << " failed)" << std::endl;
  return failures ? 1 : 0;
}
