// bsl: Bowen-Series boundary expansions for non-uniform Fuchsian lattices.
//
// Subcommands: validate, expand, accelerate, convergents, check-classical,
// check-theorem, enumerate, render.  Exit code 0 iff every assertion made by
// the invoked suite passed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "bsl/report.hpp"

using namespace bsl;

namespace {

LabelledPolygon resolve_group(const std::string& spec) {
  if (spec == "modular") return preset_modular();
  return load_group(spec);
}

Real alpha_value(const std::string& s) { return parse_alpha(s).to_real(); }

struct GlobalOpts {
  unsigned precision = 256;
  int tolerance_exp = 0;
  bool json = false;
};

void apply_globals(const GlobalOpts& g) {
  precision::set_bits(g.precision);
  precision::set_tolerance_exp(g.tolerance_exp);
}

int cmd_validate(const std::string& group, bool json) {
  LabelledPolygon P = resolve_group(group);
  ValidationReport rep = P.validate();
  if (json) {
    nlohmann::json j;
    j["group"] = P.name();
    j["ok"] = rep.ok();
    j["checks"] = nlohmann::json::array();
    for (const auto& it : rep.items)
      j["checks"].push_back({{"name", it.name},
                             {"pass", it.pass},
                             {"residual", to_decimal(it.residual, 12)},
                             {"detail", it.detail}});
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "group: " << P.name() << "\n" << rep.summary();
    std::cout << (rep.ok() ? "VALID" : "INVALID") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_expand(const std::string& group, const std::string& alpha, int depth, bool json) {
  LabelledPolygon P = resolve_group(group);
  Word w = expand(P, BoundaryPoint::from_real(alpha_value(alpha)), depth);
  if (json) {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["letters"] = nlohmann::json::array();
    for (int a : w) j["letters"].push_back(P.label(a));
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << word_str(P, w) << "\n";
  }
  return 0;
}

int cmd_accelerate(const std::string& group, const std::string& alpha, int count, bool json) {
  LabelledPolygon P = resolve_group(group);
  Expander e(P, BoundaryPoint::from_real(alpha_value(alpha)));
  Accelerator acc(P, e.as_supplier());
  nlohmann::json arr = nlohmann::json::array();
  for (int r = 0; r < count; ++r) {
    CuspidalWord w = acc.next();
    Real len = geometric_length(P, w);
    if (json) {
      nlohmann::json jw;
      jw["r"] = r;
      jw["type"] = to_string(w.type);
      jw["length"] = to_decimal(len, 20);
      jw["letters"] = nlohmann::json::array();
      for (int a : w.letters) jw["letters"].push_back(P.label(a));
      arr.push_back(jw);
    } else {
      std::cout << "W_" << r << " = " << word_str(P, w.letters) << "  type=" << to_string(w.type)
                << "  |W|=" << to_decimal(len, 10) << "\n";
    }
  }
  if (json) std::cout << arr.dump(1) << "\n";
  return 0;
}

int cmd_convergents(const std::string& group, const std::string& alpha, int rmax, bool json) {
  LabelledPolygon P = resolve_group(group);
  Real a = alpha_value(alpha);
  auto cv = convergents(P, BoundaryPoint::from_real(a), rmax);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rec : cv) {
    HalfPlanePoint hp = rec.zeta.halfplane();
    std::string z = hp.inf ? "inf" : to_decimal(hp.x, 30);
    Real measure = hp.inf ? Real(0) : rec.denom * rec.denom * abs(a - hp.x);
    if (json) {
      arr.push_back({{"r", rec.r},
                     {"word", word_str(P, rec.word)},
                     {"type", to_string(rec.type)},
                     {"zeta", z},
                     {"D", to_decimal(rec.denom, 20)},
                     {"length", to_decimal(rec.length, 20)},
                     {"cusp", rec.cusp},
                     {"measure", to_decimal(measure, 20)}});
    } else {
      std::cout << "r=" << rec.r << "  W=" << word_str(P, rec.word)
                << "  zeta=" << z << "  D=" << to_decimal(rec.denom, 12)
                << "  |W|=" << to_decimal(rec.length, 10)
                << "  D^2|a-z|=" << to_decimal(measure, 10) << "\n";
    }
  }
  if (json) std::cout << arr.dump(1) << "\n";
  return 0;
}

int cmd_check_classical(const std::string& alpha, int n, long qbound, bool json) {
  Surd a = parse_alpha(alpha);
  if (a.is_rational()) {
    try {
      classical_cf_checked(a, n);
    } catch (const RationalDetected& e) {
      std::cout << e.what() << "\n";
      return 1;
    }
  }
  ClassicalReport rep = check_classical_bounds(a, n, Int(qbound));
  if (json) {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["ok"] = rep.ok();
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rep.bound_rows)
      j["rows"].push_back({{"n", r.n},
                           {"a_next", r.a_next.str()},
                           {"lower", r.lower.str()},
                           {"upper", r.upper.str()},
                           {"pass", r.pass}});
    j["good_points"] = nlohmann::json::array();
    for (const auto& g : rep.good_points) j["good_points"].push_back(g.str());
    j["good_missing"] = nlohmann::json::array();
    for (const auto& g : rep.good_missing) j["good_missing"].push_back(g.str());
    std::cout << j.dump(1) << "\n";
  } else {
    for (const auto& r : rep.bound_rows)
      std::cout << (r.pass ? "pass" : "FAIL") << "  n=" << r.n << "  a_{n+1}=" << r.a_next
                << "  bounds [" << r.lower << ", " << r.upper << "]\n";
    std::cout << rep.good_points.size() << " good approximations below 1/2; "
              << rep.good_missing.size() << " missing from the convergents\n";
    std::cout << (rep.ok() ? "CLASSICAL CHECK PASS" : "CLASSICAL CHECK FAIL") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_check_theorem(const std::string& group, const std::vector<std::string>& alphas, int rmax,
                      double eps_in, double qmax, bool json) {
  LabelledPolygon P = resolve_group(group);
  Real s0 = default_s0(P);
  Real eps;
  if (eps_in > 0) {
    eps = Real(eps_in);
  } else if (P.name() == "modular") {
    eps = Real(2) / 5;
  } else {
    ConstantsEstimate est = estimate_constants(P, Real(qmax));
    eps = est.eps0;
    std::cerr << "using empirical eps0 estimate " << to_decimal(eps, 10) << "\n";
  }
  std::vector<Real> values;
  for (const auto& s : alphas) values.push_back(alpha_value(s));
  TheoremOptions opt;
  opt.r_max = rmax;
  TheoremReport rep = check_theorem(P, values, alphas, eps, Real(qmax), s0, opt);
  if (json)
    std::cout << theorem_report_json(rep).dump(1) << "\n";
  else
    std::cout << theorem_report_text(rep);
  return rep.ok() ? 0 : 1;
}

int cmd_enumerate(const std::string& group, double qmax, const std::string& window, bool json) {
  LabelledPolygon P = resolve_group(group);
  Real lo, hi;
  if (window.empty()) {
    auto w = default_window(P);
    lo = w.first;
    hi = w.second;
  } else {
    auto comma = window.find(',');
    if (comma == std::string::npos) throw ParseError("--window expects LO,HI");
    lo = Real(window.substr(0, comma));
    hi = Real(window.substr(comma + 1));
  }
  EnumerateOptions opt;
  opt.s0 = default_s0(P);
  EnumerationResult res = enumerate_points(P, Real(qmax), lo, hi, opt);
  for (const auto& p : res.points) {
    if (json) {
      nlohmann::json j;
      j["point"] = to_decimal(p.x, 30);
      j["D"] = to_decimal(p.D, 20);
      j["word"] = nlohmann::json::array();
      for (int a : p.word) j["word"].push_back(P.label(a));
      j["vertex"] = P.label(p.vertex);
      std::cout << j.dump() << "\n";  // JSON lines
    } else {
      std::cout << to_decimal(p.x, 20) << "  D=" << to_decimal(p.D, 12)
                << "  word=" << word_str(P, p.word) << "  vertex=" << P.label(p.vertex) << "\n";
    }
  }
  std::cerr << res.points.size() << " points\n";
  return 0;
}

int cmd_render(const std::string& group, double qmax, const std::string& window,
               const std::string& out) {
  LabelledPolygon P = resolve_group(group);
  Real lo, hi;
  if (window.empty()) {
    auto w = default_window(P);
    lo = w.first;
    hi = w.second;
  } else {
    auto comma = window.find(',');
    if (comma == std::string::npos) throw ParseError("--window expects LO,HI");
    lo = Real(window.substr(0, comma));
    hi = Real(window.substr(comma + 1));
  }
  std::string svg = render_ford(P, Real(qmax), lo, hi, default_s0(P));
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out);
  f << svg;
  std::cerr << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bowen-Series boundary expansion toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--precision", g.precision, "working precision in bits")->capture_default_str();
  app.add_option("--tolerance-exp", g.tolerance_exp,
                 "tolerance exponent e (tau = 2^-e); 0 means bits/2");
  app.add_flag("--json", g.json, "machine-readable output");

  std::string group = "modular", alpha, window, out = "ford.svg";
  std::vector<std::string> alphas;
  int depth = 50, rmax = 25, count = 10, n = 25;
  long qbound = 10000;
  double eps = 0, qmax = 300;

  auto* validate = app.add_subcommand("validate", "check the polygon axioms of a group");
  validate->add_option("--group", group, "group file or 'modular'")->capture_default_str();

  auto* expandc = app.add_subcommand("expand", "boundary expansion of a point");
  expandc->add_option("--group", group);
  expandc->add_option("--alpha", alpha)->required();
  expandc->add_option("--depth", depth, "number of letters")->capture_default_str();

  auto* accel = app.add_subcommand("accelerate", "cuspidal decomposition of an expansion");
  accel->add_option("--group", group);
  accel->add_option("--alpha", alpha)->required();
  accel->add_option("--count", count, "number of cuspidal words")->capture_default_str();

  auto* conv = app.add_subcommand("convergents", "accelerated convergents zeta_r");
  conv->add_option("--group", group);
  conv->add_option("--alpha", alpha)->required();
  conv->add_option("--rmax", rmax)->capture_default_str();

  auto* classical = app.add_subcommand("check-classical", "exact classical CF laws");
  classical->add_option("--alpha", alpha)->required();
  classical->add_option("--n", n, "convergents to test")->capture_default_str();
  classical->add_option("--qbound", qbound, "oracle denominator bound")->capture_default_str();

  auto* theorem = app.add_subcommand("check-theorem", "two-sided bounds and inclusion");
  theorem->add_option("--group", group);
  theorem->add_option("--alpha", alphas, "one or more alphas")->required();
  theorem->add_option("--rmax", rmax)->capture_default_str();
  theorem->add_option("--eps", eps, "inclusion threshold (0: preset default / estimate)");
  theorem->add_option("--qmax", qmax)->capture_default_str();

  auto* enumc = app.add_subcommand("enumerate", "parabolic points up to a denominator bound");
  enumc->add_option("--group", group);
  enumc->add_option("--qmax", qmax)->capture_default_str();
  enumc->add_option("--window", window, "LO,HI (default: finite-vertex hull)");

  auto* render = app.add_subcommand("render", "Ford-circle SVG figure");
  render->add_option("--group", group);
  render->add_option("--qmax", qmax)->capture_default_str();
  render->add_option("--window", window, "LO,HI (default: finite-vertex hull)");
  render->add_option("-o,--out", out)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  apply_globals(g);
  try {
    if (app.got_subcommand(validate)) return cmd_validate(group, g.json);
    if (app.got_subcommand(expandc)) return cmd_expand(group, alpha, depth, g.json);
    if (app.got_subcommand(accel)) return cmd_accelerate(group, alpha, count, g.json);
    if (app.got_subcommand(conv)) return cmd_convergents(group, alpha, rmax, g.json);
    if (app.got_subcommand(classical)) return cmd_check_classical(alpha, n, qbound, g.json);
    if (app.got_subcommand(theorem))
      return cmd_check_theorem(group, alphas, rmax, eps, qmax, g.json);
    if (app.got_subcommand(enumc)) return cmd_enumerate(group, qmax, window, g.json);
    if (app.got_subcommand(render)) return cmd_render(group, qmax, window, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
