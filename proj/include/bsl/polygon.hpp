#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bsl/errors.hpp"
#include "bsl/moebius.hpp"

namespace bsl {

// Cusp representative of the ambient lattice: z_k = A_k . inf, and the primitive
// parabolic of A_k Gamma A_k^-1 fixing inf translates by mu_k.
struct CuspDatum {
  RealMoebius A;
  BoundaryPoint z;
  Real mu;
};

struct ValidationReport {
  struct Item {
    std::string name;
    bool pass;
    Real residual;
    std::string detail;
  };
  std::vector<Item> items;

  bool ok() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& it : items)
      os << (it.pass ? "pass  " : "FAIL  ") << it.name << "  residual=" << it.residual
         << (it.detail.empty() ? "" : "  " + it.detail) << "\n";
    return os.str();
  }
};

// Labelled ideal polygon: 2d boundary arcs in cyclic order, one side-pairing
// generator per letter, plus the ambient lattice's cusp data.  Letters are
// identified with their index, which is also the cyclic order map o (the first
// letter is the anchor o = 0).  Immutable after construction.
class LabelledPolygon {
 public:
  struct Letter {
    std::string label;
    int hat;
    RealMoebius gen_h;
    DiskMoebius gen_d;
    Real tL, tR;  // arc [a] = { e^{-it} : t in [tL, tR) }, right-open
  };

  LabelledPolygon(std::string name, std::vector<std::string> labels, std::vector<int> hats,
                  std::vector<RealMoebius> gens, std::vector<CuspDatum> cusps,
                  std::vector<RealMoebius> cosets, unsigned precision_bits)
      : name_(std::move(name)), cusps_(std::move(cusps)), cosets_(std::move(cosets)),
        precision_bits_(precision_bits) {
    size_t n = labels.size();
    if (n < 4 || n % 2 != 0) throw ParseError("alphabet must have 2d letters, d >= 2");
    if (cosets_.empty()) cosets_.push_back(RealMoebius::identity());
    letters_.resize(n);
    for (size_t i = 0; i < n; ++i) {
      letters_[i].label = labels[i];
      letters_[i].hat = hats[i];
      letters_[i].gen_h = gens[i].canonicalize();
      letters_[i].gen_d = to_disk(gens[i]);
    }
    compute_arcs();
  }

  int n_letters() const { return static_cast<int>(letters_.size()); }
  int d() const { return n_letters() / 2; }
  const std::string& name() const { return name_; }
  unsigned precision_bits() const { return precision_bits_; }
  const Letter& letter(int a) const { return letters_[a]; }
  int hat(int a) const { return letters_[a].hat; }
  const std::string& label(int a) const { return letters_[a].label; }
  const DiskMoebius& gen_disc(int a) const { return letters_[a].gen_d; }
  const RealMoebius& gen_half(int a) const { return letters_[a].gen_h; }
  const std::vector<CuspDatum>& cusps() const { return cusps_; }
  const std::vector<RealMoebius>& cosets() const { return cosets_; }

  int letter_index(const std::string& label) const {
    for (int i = 0; i < n_letters(); ++i)
      if (letters_[i].label == label) return i;
    throw ParseError("unknown letter label: " + label);
  }

  Real mu_max() const {
    Real m = 0;
    for (const auto& c : cusps_) m = std::max(m, c.mu);
    return m;
  }

  // Arc endpoints: xi^L is the included (inf) end, xi^R the excluded (sup) end.
  BoundaryPoint xi_L(int a) const { return {unit_at(-letters_[a].tL)}; }
  BoundaryPoint xi_R(int a) const { return {unit_at(-letters_[a].tR)}; }

  // Polygon vertices indexed so that vertex(a) = xi_L(a) = xi_R(a-1).
  BoundaryPoint vertex(int v) const { return xi_L(v); }
  int vertex_count() const { return n_letters(); }

  // The unique letter whose right-open arc contains the point.
  int locate(const BoundaryPoint& p) const {
    Real t = normalize_t(p.t());
    Real tol = precision::tau();
    int n = n_letters();
    int lo = 0, hi = n - 1;
    while (lo < hi) {  // largest arc with tL <= t
      int mid = (lo + hi + 1) / 2;
      if (letters_[mid].tL <= t)
        lo = mid;
      else
        hi = mid - 1;
    }
    Real mL = t - letters_[lo].tL;
    Real mR = letters_[lo].tR - t;
    if (mL < tol || mR < tol)
      throw NearBoundaryAmbiguity("boundary point within tolerance of an arc endpoint");
    return lo;
  }

  // Cyclic-order step tests of the cuspidal criteria.
  bool is_R_step(int l1, int l2) const {
    int n = n_letters();
    return (letters_[l1].hat - l2 + n) % n == 1;
  }
  bool is_L_step(int l1, int l2) const {
    int n = n_letters();
    return (l2 - letters_[l1].hat + n) % n == 1;
  }

  // Representation vertex = B A_k . inf with B in the ambient lattice.
  // Resolved once by a bounded search and cached (write-once, lock-guarded).
  std::pair<RealMoebius, int> vertex_rep(int v, int seed_depth = 3) const {
    {
      std::lock_guard<std::mutex> lk(cache_->mutex);
      auto it = cache_->reps.find(v);
      if (it != cache_->reps.end()) return it->second;
    }
    resolve_reps(seed_depth);
    std::lock_guard<std::mutex> lk(cache_->mutex);
    auto it = cache_->reps.find(v);
    if (it == cache_->reps.end())
      throw VertexNotResolved("no ambient representation found for vertex " + std::to_string(v));
    return it->second;
  }

  ValidationReport validate() const;

 private:
  void compute_arcs() {
    int n = n_letters();
    Real twopi = 2 * pi_value();
    std::vector<Real> tl(n), width(n);
    for (int a = 0; a < n; ++a) {
      IsometricCircle ic = isometric_circle(letters_[letters_[a].hat].gen_d);
      Real oa = abs(ic.center);
      Real w = acos(1 / oa);
      Real psi = arg(ic.center);
      tl[a] = -psi - w;
      width[a] = 2 * w;
    }
    // anchor letter 0 at its raw position folded into [0, 2pi)
    Real base = tl[0];
    while (base < 0) base += twopi;
    while (base >= twopi) base -= twopi;
    for (int a = 0; a < n; ++a) {
      Real t = tl[a];
      while (t < base - precision::tau()) t += twopi;
      while (t >= base + twopi - precision::tau()) t -= twopi;
      letters_[a].tL = t;
      letters_[a].tR = t + width[a];
    }
    tbase_ = letters_[0].tL;
  }

  Real normalize_t(Real t) const {
    Real twopi = 2 * pi_value();
    while (t < tbase_) t += twopi;
    while (t >= tbase_ + twopi) t -= twopi;
    return t;
  }

  void resolve_reps(int seed_depth) const;

  std::string name_;
  std::vector<Letter> letters_;
  std::vector<CuspDatum> cusps_;
  std::vector<RealMoebius> cosets_;
  unsigned precision_bits_;
  Real tbase_;

  struct RepCache {
    std::mutex mutex;
    std::map<int, std::pair<RealMoebius, int>> reps;
  };
  std::shared_ptr<RepCache> cache_ = std::make_shared<RepCache>();
};

inline void LabelledPolygon::resolve_reps(int seed_depth) const {
  Real tol = sqrt(precision::tau());  // vertex matching tolerance, forgiving
  int n = n_letters();
  std::map<int, std::pair<RealMoebius, int>> found;
  auto try_candidate = [&](const RealMoebius& B, int k) {
    HalfPlanePoint img = compose(B, cusps_[k].A).apply(HalfPlanePoint::infinity());
    BoundaryPoint p = BoundaryPoint::from_halfplane(img);
    for (int v = 0; v < n; ++v) {
      if (found.count(v)) continue;
      if (p.same(vertex(v), tol)) found.emplace(v, std::make_pair(B, k));
    }
  };
  // seed: short words times coset representatives, for every cusp
  struct Node {
    RealMoebius m;
    int last;
  };
  std::vector<Node> frontier{{RealMoebius::identity(), -1}};
  for (int depth = 0; depth <= seed_depth; ++depth) {
    for (const auto& nd : frontier)
      for (const auto& c : cosets_) {
        RealMoebius B = compose(nd.m, c);
        for (int k = 0; k < static_cast<int>(cusps_.size()); ++k) try_candidate(B, k);
      }
    if (static_cast<int>(found.size()) == n || depth == seed_depth) break;
    std::vector<Node> next;
    for (const auto& nd : frontier)
      for (int a = 0; a < n; ++a) {
        if (nd.last >= 0 && a == letters_[nd.last].hat) continue;
        next.push_back({compose(nd.m, letters_[a].gen_h), a});
      }
    frontier = std::move(next);
  }
  // closure along the pairing action: F_a maps xi_L(hat a) -> xi_R(a) and
  // xi_R(hat a) -> xi_L(a); spread representations through these edges.
  bool changed = true;
  while (changed && static_cast<int>(found.size()) < n) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      int h = letters_[a].hat;
      int src1 = h, dst1 = (a + 1) % n;          // xi_L(hat a) -> xi_R(a) = vertex a+1
      int src2 = (h + 1) % n, dst2 = a;          // xi_R(hat a) -> xi_L(a) = vertex a
      for (auto [src, dst] : {std::pair(src1, dst1), std::pair(src2, dst2)}) {
        auto it = found.find(src);
        if (it != found.end() && !found.count(dst)) {
          found.emplace(dst, std::make_pair(compose(letters_[a].gen_h, it->second.first),
                                            it->second.second));
          changed = true;
        }
      }
    }
  }
  std::lock_guard<std::mutex> lk(cache_->mutex);
  for (auto& kv : found) cache_->reps.emplace(kv.first, kv.second);
}

inline ValidationReport LabelledPolygon::validate() const {
  ValidationReport rep;
  Real tol = precision::tau();
  int n = n_letters();
  auto add = [&](const std::string& name, bool pass, Real residual, std::string detail = "") {
    rep.items.push_back({name, pass, residual, std::move(detail)});
  };

  // involution structure
  {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      int h = letters_[a].hat;
      ok = h >= 0 && h < n && h != a && letters_[h].hat == a;
    }
    add("involution", ok, Real(0));
  }
  // determinants and F_hat = F^-1
  {
    Real worst = 0;
    for (int a = 0; a < n; ++a) worst = std::max(worst, abs(letters_[a].gen_h.det() - 1));
    add("determinant", worst <= 16 * tol, worst);
  }
  {
    Real worst = 0;
    for (int a = 0; a < n; ++a) {
      RealMoebius prod = compose(letters_[a].gen_h, letters_[letters_[a].hat].gen_h);
      Real r = abs(prod.a - 1) + abs(prod.b) + abs(prod.c) + abs(prod.d - 1);
      worst = std::max(worst, r);
    }
    add("inverse_pairing", worst <= 16 * tol, worst);
  }
  {
    Real worst = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) worst = std::min(worst, abs(letters_[a].gen_d.beta));
    add("beta_nonzero", worst > tol, worst);
  }
  // arcs partition the circle in the letter order
  {
    Real worst = 0;
    Real twopi = 2 * pi_value();
    for (int a = 0; a < n; ++a) {
      Real next = (a + 1 < n) ? letters_[a + 1].tL : letters_[0].tL + twopi;
      worst = std::max(worst, abs(letters_[a].tR - next));
    }
    add("arc_partition", worst <= 64 * sqrt(tol), worst,
        "consecutive arc endpoints coincide; letters in cyclic order");
    Real total = 0;
    for (int a = 0; a < n; ++a) total += letters_[a].tR - letters_[a].tL;
    add("arc_total", near(total, twopi, 10 * sqrt(tol)), abs(total - twopi));
  }
  // side pairing F_a(s_hat-a) = s_a as endpoint sets
  {
    Real worst = 0;
    for (int a = 0; a < n; ++a) {
      int h = letters_[a].hat;
      BoundaryPoint i1 = gen_disc(a).apply(xi_L(h));
      BoundaryPoint i2 = gen_disc(a).apply(xi_R(h));
      Real r = std::min(abs(i1.w - xi_R(a).w) + abs(i2.w - xi_L(a).w),
                        abs(i1.w - xi_L(a).w) + abs(i2.w - xi_R(a).w));
      worst = std::max(worst, r);
    }
    add("side_pairing", worst <= 64 * sqrt(tol), worst);
  }
  // vertices on the unit circle
  {
    Real worst = 0;
    for (int v = 0; v < n; ++v) worst = std::max(worst, abs(abs(vertex(v).w) - 1));
    add("ideal_vertices", worst <= 16 * tol, worst);
  }
  // F_a maps the complement of [hat a] into [a] (sampled)
  {
    bool ok = true;
    Real twopi = 2 * pi_value();
    int samples = 50;
    for (int a = 0; a < n && ok; ++a) {
      int h = letters_[a].hat;
      for (int s = 1; s < samples && ok; ++s) {
        Real t = letters_[h].tR + (twopi - (letters_[h].tR - letters_[h].tL)) * s / samples;
        BoundaryPoint p{unit_at(-t)};
        BoundaryPoint img = gen_disc(a).apply(p);
        Real ti = normalize_t(img.t());
        ok = (letters_[a].tL - sqrt(tol) <= ti) && (ti <= letters_[a].tR + sqrt(tol));
      }
    }
    add("arc_action", ok, Real(0), "sampled F_a(complement of [hat a]) inside [a]");
  }
  // cusp data
  {
    Real worst = 0;
    bool mu_ok = true;
    for (const auto& c : cusps_) {
      worst = std::max(worst, abs(c.A.det() - 1));
      if (!(c.mu > 0)) mu_ok = false;
    }
    add("cusp_matrices", worst <= 16 * tol && mu_ok, worst);
  }
  // parabolicity of the vertex cycle words (Lemma-style spot check): walk the
  // pairing action around each vertex until it returns, compose, classify
  {
    bool ok = true;
    for (int v0 = 0; v0 < n && ok; ++v0) {
      RealMoebius m = RealMoebius::identity();
      int v = v0;
      for (int steps = 0; steps < 4 * n; ++steps) {
        // v = xi_L(v): the pairing F_a with hat(a) = v maps it to xi_R(a)
        int a = letters_[v].hat;
        m = compose(gen_half(a), m);
        v = (a + 1) % n;
        if (v == v0) break;
      }
      ok = v == v0 && classify(m) == MoebiusClass::Parabolic;
    }
    add("vertex_cycles_parabolic", ok, Real(0));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Presets and the group file format.

inline LabelledPolygon preset_modular() {
  // Gamma_0 = Gamma(2), free of index 6 in Gamma = PSL(2,Z); generators are the
  // half-plane matrices z+2 and z/(2z+1), conjugated into the disc on
  // construction.  Letters in cyclic arc order with arcs (1,inf], (0,1],
  // (-1,0], (-inf,-1] in half-plane form.
  RealMoebius T2{Real(1), Real(2), Real(0), Real(1)};
  RealMoebius V{Real(1), Real(0), Real(2), Real(1)};
  std::vector<std::string> labels{"a", "b", "B", "A"};
  std::vector<int> hats{3, 2, 1, 0};
  std::vector<RealMoebius> gens{T2, V, V.inverse(), T2.inverse()};
  std::vector<CuspDatum> cusps{{RealMoebius::identity(), BoundaryPoint::infinity(), Real(1)}};
  RealMoebius T{Real(1), Real(1), Real(0), Real(1)};
  RealMoebius S{Real(0), Real(-1), Real(1), Real(0)};
  std::vector<RealMoebius> cosets{RealMoebius::identity(), T,          S,
                                  compose(T, S),           compose(S, T), compose(T, compose(S, T))};
  return LabelledPolygon("modular", labels, hats, gens, cusps, cosets, precision::bits());
}

inline LabelledPolygon polygon_from_json(const nlohmann::json& j);

inline LabelledPolygon load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("group file is not valid JSON: ") + e.what());
  }
  return polygon_from_json(j);
}

inline LabelledPolygon polygon_from_json(const nlohmann::json& j) {
  auto need = [&](const char* field) {
    if (!j.contains(field)) throw ParseError(std::string("missing field: ") + field);
  };
  need("name");
  need("d");
  need("letters");
  need("cusps");
  need("precision_bits");
  unsigned bits = j["precision_bits"].get<unsigned>();
  if (bits < 32) throw ParseError("precision_bits too small");
  int d = j["d"].get<int>();
  const auto& jl = j["letters"];
  if (static_cast<int>(jl.size()) != 2 * d)
    throw ParseError("letters array must have exactly 2d entries");
  std::vector<std::string> labels;
  std::vector<std::string> inverses;
  for (const auto& l : jl) {
    labels.push_back(l.at("label").get<std::string>());
    inverses.push_back(l.at("inverse").get<std::string>());
  }
  std::vector<int> hats(2 * d);
  for (int i = 0; i < 2 * d; ++i) {
    auto it = std::find(labels.begin(), labels.end(), inverses[i]);
    if (it == labels.end()) throw ParseError("inverse label not in alphabet: " + inverses[i]);
    hats[i] = static_cast<int>(it - labels.begin());
  }
  for (int i = 0; i < 2 * d; ++i) {
    if (hats[i] == i) throw ParseError("involution has a fixed letter: " + labels[i]);
    if (hats[hats[i]] != i) throw ParseError("involution is not an involution at " + labels[i]);
  }
  auto parse_mat = [](const nlohmann::json& arr, const char* what) {
    if (!arr.is_array() || arr.size() != 4)
      throw ParseError(std::string(what) + ": expected [a,b,c,d]");
    auto f = [&](int i) {
      try {
        return Real(arr[i].get<std::string>());
      } catch (const std::exception&) {
        throw ParseError(std::string(what) + ": entry is not a decimal string");
      }
    };
    return RealMoebius{f(0), f(1), f(2), f(3)};
  };
  std::vector<RealMoebius> gens;
  for (const auto& l : jl) gens.push_back(parse_mat(l.at("generator_halfplane"), "generator"));
  std::vector<CuspDatum> cusps;
  for (const auto& c : j["cusps"]) {
    RealMoebius A = parse_mat(c.at("A"), "cusp matrix");
    Real mu(c.at("mu").get<std::string>());
    cusps.push_back({A.canonicalize(), BoundaryPoint::from_halfplane(
                                            A.apply(HalfPlanePoint::infinity())),
                     mu});
  }
  std::vector<RealMoebius> cosets;
  if (j.contains("cosets"))
    for (const auto& c : j["cosets"]) cosets.push_back(parse_mat(c, "coset").canonicalize());
  LabelledPolygon P(j["name"].get<std::string>(), labels, hats, gens, cusps, cosets, bits);
  ValidationReport rep = P.validate();
  if (!rep.ok()) throw ValidationError("group file fails validation:\n" + rep.summary());
  return P;
}

inline nlohmann::json polygon_to_json(const LabelledPolygon& P) {
  nlohmann::json j;
  j["name"] = P.name();
  j["d"] = P.d();
  j["precision_bits"] = P.precision_bits();
  auto mat = [](const RealMoebius& m) {
    return nlohmann::json::array(
        {to_decimal(m.a), to_decimal(m.b), to_decimal(m.c), to_decimal(m.d)});
  };
  j["letters"] = nlohmann::json::array();
  for (int a = 0; a < P.n_letters(); ++a) {
    j["letters"].push_back({{"label", P.label(a)},
                            {"inverse", P.label(P.hat(a))},
                            {"generator_halfplane", mat(P.gen_half(a))}});
  }
  j["cusps"] = nlohmann::json::array();
  for (const auto& c : P.cusps())
    j["cusps"].push_back({{"A", mat(c.A)}, {"mu", to_decimal(c.mu)}});
  if (P.cosets().size() > 1) {
    j["cosets"] = nlohmann::json::array();
    for (const auto& c : P.cosets()) j["cosets"].push_back(mat(c));
  }
  return j;
}

inline void save_group(const LabelledPolygon& P, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write group file: " + path);
  out << polygon_to_json(P).dump(1) << "\n";
}

}  // namespace bsl
