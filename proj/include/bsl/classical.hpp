#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bsl/errors.hpp"
#include "bsl/numeric.hpp"

namespace bsl {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact quadratic surd (p + q sqrt(N)) / r, the reproducible irrational input
// of the classical lane.  Perfect-square N collapses to a rational.
struct Surd {
  Int p, q, r;  // r > 0
  Int N;        // N >= 0

  static Surd of_rational(const Rational& x) {
    return Surd{numerator(x), 0, denominator(x), 0}.normalize();
  }
  static Surd sqrt_of(Int N) { return Surd{0, 1, 1, std::move(N)}.normalize(); }

  Surd normalize() {
    if (r < 0) {
      p = -p;
      q = -q;
      r = -r;
    }
    if (r == 0) throw Error("surd with zero denominator");
    if (N < 0) throw Error("surd with negative radicand");
    Int s = boost::multiprecision::sqrt(N);
    if (s * s == N) {  // rational in disguise
      p += q * s;
      q = 0;
      N = 0;
    }
    if (q == 0) N = 0;
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(p), abs(q)), r);
    if (g > 1) {
      p /= g;
      q /= g;
      r /= g;
    }
    return *this;
  }

  bool is_rational() const { return q == 0; }
  Rational as_rational() const { return Rational(p, r); }

  // sign of A + B sqrt(N), exact
  static int sign_of(const Int& A, const Int& B, const Int& N) {
    int sa = A.sign(), sb = B.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Int lhs = A * A, rhs = B * B * N;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
  }

  // sign of (this - a/b), exact
  int cmp_rational(const Int& a, const Int& b) const {
    // (p b - a r) + q b sqrt(N), with b > 0, r > 0
    Int bb = b < 0 ? -b : b;
    Int aa = b < 0 ? -a : a;
    return sign_of(p * bb - aa * r, q * bb, N);
  }

  Int floor_int() const {
    if (q == 0) {
      Int k = p / r;
      if (p < 0 && p % r != 0) --k;
      return k;
    }
    // initial guess from floats, then exact adjustment
    Real approx = (Real(p.str()) + Real(q.str()) * sqrt(Real(N.str()))) / Real(r.str());
    Int k(boost::multiprecision::floor(approx).str());
    while (cmp_rational(k, 1) < 0) --k;        // x < k : lower
    while (cmp_rational(k + 1, 1) >= 0) ++k;   // x >= k+1 : raise
    return k;
  }

  Surd sub_int(const Int& a) const { return Surd{p - a * r, q, r, N}.normalize(); }

  Surd reciprocal() const {
    // r (p - q sqrt(N)) / (p^2 - q^2 N)
    Int den = p * p - q * q * N;
    if (den == 0) throw Error("reciprocal of zero surd");
    return Surd{r * p, -r * q, den, N}.normalize();
  }

  Real to_real() const {
    return (Real(p.str()) + Real(q.str()) * sqrt(Real(N.str()))) / Real(r.str());
  }
};

// Parses the alpha grammar: decimal strings, "sqrt:N", "(p+q*sqrt:N)/r"
// (q* optional, signs allowed).
inline Surd parse_alpha(const std::string& s) {
  auto fail = [&](const std::string& why) {
    throw ParseError("cannot parse alpha '" + s + "': " + why);
  };
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) fail("empty");
  if (t.rfind("sqrt:", 0) == 0) {
    try {
      return Surd::sqrt_of(Int(t.substr(5)));
    } catch (const std::exception&) {
      fail("bad radicand");
    }
  }
  if (t[0] == '(') {
    size_t close = t.find(')');
    if (close == std::string::npos) fail("missing ')'");
    std::string body = t.substr(1, close - 1);
    Int r = 1;
    if (close + 1 < t.size()) {
      if (t[close + 1] != '/') fail("expected '/r' after ')'");
      r = Int(t.substr(close + 2));
    }
    size_t k = body.find("sqrt:");
    if (k == std::string::npos) fail("expected sqrt: inside parentheses");
    // split body as p + q*sqrt:N, with the + sign separating at the q term
    size_t qstart = k;
    if (qstart > 0 && body[qstart - 1] == '*') --qstart;
    while (qstart > 0 && (isdigit(static_cast<unsigned char>(body[qstart - 1])))) --qstart;
    if (qstart > 0 && (body[qstart - 1] == '+' || body[qstart - 1] == '-')) --qstart;
    std::string pstr = body.substr(0, qstart);
    std::string qstr = body.substr(qstart, k - qstart);
    if (!qstr.empty() && qstr.back() == '*') qstr.pop_back();
    if (qstr.empty() || qstr == "+") qstr = "1";
    if (qstr == "-") qstr = "-1";
    std::string Nstr = body.substr(k + 5);
    try {
      return Surd{pstr.empty() ? Int(0) : Int(pstr), Int(qstr), r, Int(Nstr)}.normalize();
    } catch (const std::exception&) {
      fail("bad integer field");
    }
  }
  // plain decimal
  size_t dot = t.find('.');
  try {
    if (dot == std::string::npos) return Surd::of_rational(Rational(Int(t), 1));
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    Int scale = 1;
    for (size_t i = dot + 1; i < t.size(); ++i) scale *= 10;
    return Surd::of_rational(Rational(Int(digits), scale));
  } catch (const std::exception&) {
    fail("not a decimal");
  }
  return Surd{};  // unreachable
}

struct ClassicalCF {
  Int a0;
  std::vector<Int> partial;          // a_1, a_2, ...
  std::vector<Rational> convergents;  // p_0/q_0, p_1/q_1, ...
  bool rational_exhausted = false;   // expansion terminated (input rational)
  int guard_digits = 0;              // decimal guard available (surds: unlimited)
};

// Standard continued fraction expansion by the Gauss map, exact.
inline ClassicalCF classical_cf(const Surd& alpha, int n_max) {
  ClassicalCF cf;
  Surd x = alpha;
  cf.a0 = x.floor_int();
  Int p0 = 1, q0 = 0, p1 = cf.a0, q1 = 1;
  cf.convergents.emplace_back(p1, q1);
  Surd frac = x.sub_int(cf.a0);
  for (int i = 0; i < n_max; ++i) {
    if (frac.q == 0 && frac.p == 0) {
      cf.rational_exhausted = true;
      break;
    }
    Surd inv = frac.reciprocal();
    Int a = inv.floor_int();
    if (a < 1) throw Error("continued fraction step produced a < 1 (internal)");
    cf.partial.push_back(a);
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    cf.convergents.emplace_back(p1, q1);
    frac = inv.sub_int(a);
  }
  cf.guard_digits = alpha.is_rational()
                        ? static_cast<int>(alpha.r.str().size())
                        : std::numeric_limits<int>::max();
  return cf;
}

// classical_cf that reports rational inputs as the spec's error once the
// expansion terminates
inline ClassicalCF classical_cf_checked(const Surd& alpha, int n_max) {
  ClassicalCF cf = classical_cf(alpha, n_max);
  if (cf.rational_exhausted) {
    std::string quot = cf.a0.str() + ";";
    for (size_t i = 0; i < cf.partial.size(); ++i)
      quot += (i ? "," : " ") + cf.partial[i].str();
    throw RationalDetected("input is rational: [" + quot + "]");
  }
  return cf;
}

struct ClassicalBoundsRow {
  int n;
  Int a_next;
  Rational lower, value, upper;  // value = q_n^2 |alpha - p_n/q_n| only when alpha rational
  bool pass;
};

struct ClassicalReport {
  std::vector<ClassicalBoundsRow> bound_rows;  // Eq-style two-sided bounds
  std::vector<Rational> good_points;           // q^2 |alpha - p/q| < 1/2 from the oracle
  std::vector<Rational> good_missing;          // those not among the convergents
  bool ok() const {
    if (!good_missing.empty()) return false;
    for (const auto& r : bound_rows)
      if (!r.pass) return false;
    return true;
  }
};

// sign of (alpha - a/b) with alpha a surd: exact
inline int surd_cmp(const Surd& alpha, const Rational& x) {
  return alpha.cmp_rational(numerator(x), denominator(x));
}

// q_n^2 |alpha - p_n/q_n| compared against a rational bound t, exact:
// returns sign of (q_n^2 |alpha - p_n/q_n| - t).
inline int measure_cmp(const Surd& alpha, const Rational& pq, const Rational& t) {
  int s = surd_cmp(alpha, pq);
  Int qn = denominator(pq);
  // |alpha - p/q| vs t/q^2  <=>  alpha vs p/q +- t/q^2
  Rational shift = t / (Rational(qn) * qn);
  if (s >= 0) return surd_cmp(alpha, pq + shift);
  return -surd_cmp(alpha, pq - shift);
}

// Two-sided classical bounds plus the 1/2-threshold oracle: every p/q with
// q <= q_bound and q^2 |alpha - p/q| < 1/2 must be a convergent.
inline ClassicalReport check_classical_bounds(const Surd& alpha, int n_max, const Int& q_bound) {
  ClassicalReport rep;
  ClassicalCF cf = classical_cf(alpha, n_max + 1);
  int usable = static_cast<int>(cf.partial.size());
  for (int nidx = 0; nidx + 1 <= usable; ++nidx) {
    // row n = nidx: convergent p_n/q_n = convergents[nidx], a_{n+1} = partial[nidx]
    ClassicalBoundsRow row;
    row.n = nidx;
    row.a_next = cf.partial[nidx];
    row.lower = Rational(1, 2 + row.a_next);
    row.upper = Rational(1, row.a_next);
    const Rational& pq = cf.convergents[nidx];
    bool lo_ok = measure_cmp(alpha, pq, row.lower) >= 0;
    bool hi_ok = measure_cmp(alpha, pq, row.upper) <= 0;
    row.pass = lo_ok && hi_ok;
    rep.bound_rows.push_back(row);
  }
  // oracle: nearest p for each q (only the nearest candidate can beat 1/(2q))
  for (Int q = 1; q <= q_bound; ++q) {
    // p = round(alpha q): floor of alpha*q + 1/2 exactly
    Surd aq{alpha.p * q * 2 + alpha.r, alpha.q * q * 2, alpha.r * 2, alpha.N};
    Int p = aq.normalize().floor_int();
    for (Int pp = p - 1; pp <= p + 1; ++pp) {
      Rational cand(pp, q);  // auto-reduces
      if (measure_cmp(alpha, cand, Rational(1, 2)) < 0) {
        if (std::find(rep.good_points.begin(), rep.good_points.end(), cand) !=
            rep.good_points.end())
          continue;
        rep.good_points.push_back(cand);
        if (std::find(cf.convergents.begin(), cf.convergents.end(), cand) ==
            cf.convergents.end())
          rep.good_missing.push_back(cand);
      }
    }
  }
  return rep;
}

// Stern-Brocot / Farey oracle: all reduced fractions with denominator <= Q in
// [lo, hi], ascending.  Used as the independent enumeration cross-check.
inline std::vector<Rational> farey_interval(const Int& Q, const Rational& lo,
                                            const Rational& hi) {
  std::vector<Rational> out;
  // next-term Farey recurrence from the two smallest elements >= lo
  auto floor_div = [](const Int& a, const Int& b) {
    Int k = a / b;
    if ((a < 0) != (b < 0) && k * b != a) --k;
    return k;
  };
  // first fraction >= lo with denominator <= Q: scan denominators
  Rational a = lo, b = hi;  // placeholders
  bool have_a = false;
  for (Int q = 1; q <= Q; ++q) {
    Int p = floor_div(numerator(lo) * q, denominator(lo));
    if (Rational(p, q) < lo) ++p;
    Rational cand(p, q);
    if (denominator(cand) > Q) continue;
    if (!have_a || cand < a) {
      a = cand;
      have_a = true;
    }
  }
  if (!have_a || a > hi) return out;
  out.push_back(a);
  // second element
  bool have_b = false;
  for (Int q = 1; q <= Q; ++q) {
    Int p = floor_div(numerator(a) * q, denominator(a)) + 1;
    while (Rational(p, q) <= a) ++p;
    Rational cand(p, q);
    if (denominator(cand) > Q) continue;
    if (!have_b || cand < b) {
      b = cand;
      have_b = true;
    }
  }
  while (have_b && b <= hi) {
    out.push_back(b);
    // standard Farey next: c = (floor((q_a + Q)/q_b) * b - a)
    Int k = (denominator(a) + Q) / denominator(b);
    Rational c(k * numerator(b) - numerator(a), k * denominator(b) - denominator(a));
    a = b;
    b = c;
  }
  return out;
}

}  // namespace bsl
