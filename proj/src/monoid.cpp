#include "mltoric/monoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace mltoric {

std::string Certificate::tag() const {
  switch (kind) {
    case Kind::exact:
      return "exact";
    case Kind::bounded:
      return "bounded(" + to_string(parameter) + ")";
    case Kind::heuristic_window:
      return "heuristic-window(" + to_string(parameter) + ")";
  }
  return "exact";
}

Certificate Certificate::parse(const std::string& tag) {
  if (tag == "exact") return exact();
  auto inner = [&](const std::string& prefix) -> std::optional<Integer> {
    if (tag.size() < prefix.size() + 2 || tag.compare(0, prefix.size(), prefix) != 0 ||
        tag[prefix.size()] != '(' || tag.back() != ')')
      return std::nullopt;
    Integer v;
    if (v.set_str(tag.substr(prefix.size() + 1, tag.size() - prefix.size() - 2), 10) != 0)
      return std::nullopt;
    return v;
  };
  if (auto b = inner("bounded")) return bounded(*b);
  if (auto k = inner("heuristic-window")) return window(*k);
  throw InputError("unknown certification tag '" + tag + "'");
}

Certificate weakest(const Certificate& a, const Certificate& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind) ? a : b;
  if (a.kind == Certificate::Kind::exact) return a;
  return a.parameter <= b.parameter ? a : b;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(FacetStatus s) {
  switch (s) {
    case FacetStatus::saturated:
      return "saturated";
    case FacetStatus::almost_saturated:
      return "almost-saturated";
    case FacetStatus::nowhere_saturated:
      return "nowhere-saturated";
    case FacetStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

FacetStatus facet_status_from_string(const std::string& s) {
  if (s == "saturated") return FacetStatus::saturated;
  if (s == "almost-saturated") return FacetStatus::almost_saturated;
  if (s == "nowhere-saturated") return FacetStatus::nowhere_saturated;
  if (s == "inconclusive") return FacetStatus::inconclusive;
  throw InputError("unknown facet status '" + s + "'");
}

bool HoleFamily::contains(const LatticePoint& x) const {
  if (x.size() != base.size()) return false;
  LatticePoint diff = x - base;
  Integer k;
  bool have = false;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    Integer unit = step * direction[i];
    if (unit == 0) {
      if (diff[i] != 0) return false;
      continue;
    }
    if (diff[i] % unit != 0) return false;
    Integer q = diff[i] / unit;
    if (have && q != k) return false;
    k = q;
    have = true;
  }
  return !have || k >= 0;
}

bool PlanarHoles::is_hole(const LatticePoint& x) const {
  if (std::binary_search(isolated.begin(), isolated.end(), x)) return true;
  return std::any_of(families.begin(), families.end(),
                     [&](const HoleFamily& f) { return f.contains(x); });
}

std::size_t worker_threads() {
  std::size_t n = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("ML_TORIC_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = static_cast<std::size_t>(v);
  }
  return n;
}

namespace {

long to_long(const Integer& v, const char* what) {
  if (!v.fits_slong_p()) throw UnsupportedInput(std::string(what) + " too large: " + to_string(v));
  return v.get_si();
}

// The semigroup S of multiples c with c * u in P for a primitive ray u,
// stored as d * T with T a numerical semigroup.
struct RaySemigroup {
  Integer d = 0;
  std::vector<bool> member;  // T membership below the conductor
  long conductor = 0;

  bool contains(const Integer& s) const {
    if (s < 0) return false;
    if (s == 0) return true;
    if (d == 0 || s % d != 0) return false;
    Integer q = s / d;
    if (q >= conductor) return true;
    return member[q.get_ui()];
  }

  // Least element of S that is >= m.
  Integer next(const Integer& m) const {
    if (m <= 0) return 0;
    Integer q = ceil_div(m, d);
    while (q < conductor && !member[q.get_ui()]) q += 1;
    return q * d;
  }

  Integer least_positive() const { return next(Integer(1)); }

  static RaySemigroup from(const std::vector<Integer>& coeffs) {
    RaySemigroup s;
    for (const auto& c : coeffs) s.d = gcd(s.d, c);
    if (s.d == 0) throw InternalInconsistency("extremal ray without a generator of P");
    std::vector<long> q;
    for (const auto& c : coeffs) q.push_back(to_long(c / s.d, "generator coefficient"));
    const long qmin = *std::min_element(q.begin(), q.end());
    s.member.push_back(true);
    long run = qmin == 1 ? 1 : 0;
    if (qmin == 1) {
      s.conductor = 0;
      s.member.clear();
      return s;
    }
    for (long k = 1;; ++k) {
      bool in = false;
      for (long g : q)
        if (g <= k && s.member[static_cast<std::size_t>(k - g)]) {
          in = true;
          break;
        }
      s.member.push_back(in);
      run = in ? run + 1 : 0;
      if (run == qmin) {
        s.conductor = k - qmin + 1;
        s.member.resize(static_cast<std::size_t>(s.conductor));
        return s;
      }
    }
  }
};

// Coordinates (t, j) with x = t * b + j * u on the lines <x, n> = t.
struct FacetLines {
  DualVector n;       // normal of this facet
  DualVector other;   // normal of the other facet
  LatticePoint u;     // primitive ray of the facet
  LatticePoint b;     // <b, n> = 1
  RaySemigroup s;
  std::vector<std::pair<Integer, Integer>> off;  // (t, j) of generators off the facet
  std::vector<std::vector<Integer>> sums;        // sums[t] = pruned j-values of Y_t

  Integer j_of(const LatticePoint& x) const {
    Integer t = pairing(x, n);
    LatticePoint rest = x - t * b;
    std::size_t i = u[0] != 0 ? 0 : 1;
    if (rest[i] % u[i] != 0) throw InternalInconsistency("line coordinate is not integral");
    return rest[i] / u[i];
  }
  LatticePoint point(const Integer& t, const Integer& j) const { return t * b + j * u; }

  // Least j with t * b + j * u in the cone.
  Integer j_min(const Integer& t) const {
    return ceil_div(-t * pairing(b, other), pairing(u, other));
  }

  const std::vector<Integer>& line_sums(std::size_t t) {
    while (sums.size() <= t) {
      const std::size_t cur = sums.size();
      std::set<Integer> js;
      if (cur == 0) js.insert(Integer(0));
      for (const auto& [tg, jg] : off) {
        if (tg > cur) continue;
        for (const auto& j : sums[cur - tg.get_ui()]) js.insert(j + jg);
      }
      std::map<Integer, Integer> least;
      for (const auto& j : js) {
        Integer c = mod_floor(j, s.d);
        auto it = least.find(c);
        if (it == least.end() || j < it->second) least[c] = j;
      }
      std::vector<Integer> kept;
      for (const auto& j : js)
        if (const Integer& lo = least[mod_floor(j, s.d)]; j == lo || j < lo + s.d * s.conductor)
          kept.push_back(j);
      sums.push_back(std::move(kept));
    }
    return sums[t];
  }

  bool on_line(const std::vector<Integer>& ys, const Integer& j) const {
    for (const auto& y : ys)
      if (s.contains(j - y)) return true;
    return false;
  }
};

LatticePoint unit_solution(const DualVector& n) {
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), n[0].get_mpz_t(), n[1].get_mpz_t());
  if (g != 1) throw InternalInconsistency("facet normal is not primitive");
  return LatticePoint(std::vector<Integer>{s, t});
}

}  // namespace

struct AffineMonoid::Impl {
  std::size_t ambient = 0;
  std::vector<LatticePoint> input;
  CoordinateChange change;
  std::vector<LatticePoint> gens;
  MCone cone;
  NCone dual;
  DualVector grading;

  mutable std::mutex mutex;
  mutable std::optional<MembershipOracle> oracle;
  mutable std::optional<bool> saturated;
  mutable std::optional<std::vector<LatticePoint>> small_points;  // degree < D, by degree

  mutable std::array<std::optional<FacetLines>, 2> lines;
  std::optional<PlanarHoles> planar;

  std::size_t rank() const { return change.rank(); }

  bool member(const LatticePoint& m) const {
    std::lock_guard<std::mutex> lock(mutex);
    return oracle->contains(m);
  }

  // Sum of the k largest generator degrees.
  Integer top_degrees(const std::vector<LatticePoint>& gs, std::size_t k) const {
    std::vector<Integer> deg;
    for (const auto& g : gs) deg.push_back(pairing(g, grading));
    std::sort(deg.rbegin(), deg.rend());
    Integer total = 0;
    for (std::size_t i = 0; i < std::min(k, deg.size()); ++i) total += deg[i];
    return total;
  }

  const std::vector<LatticePoint>& points_below_parallelepiped() const {
    std::lock_guard<std::mutex> lock(mutex);
    if (!small_points) {
      Integer d = top_degrees(gens, rank());
      auto pts = lattice_points_up_to(cone, grading, d - 1);
      std::stable_sort(pts.begin(), pts.end(), [&](const LatticePoint& a, const LatticePoint& b) {
        return pairing(a, grading) < pairing(b, grading);
      });
      small_points = std::move(pts);
    }
    return *small_points;
  }

  FacetLines& facet_lines(std::size_t f) const {
    if (!lines[f]) throw DomainError("line structure is only available in rank 2");
    return *lines[f];
  }

  void build_planar();
};

void AffineMonoid::Impl::build_planar() {
  const auto& normals = cone.facet_normals();
  for (std::size_t f = 0; f < 2; ++f) {
    FacetLines fl;
    fl.n = normals[f];
    fl.other = normals[1 - f];
    for (const auto& r : cone.rays())
      if (pairing(r, fl.n) == 0) fl.u = r;
    fl.b = unit_solution(fl.n);
    std::vector<Integer> coeffs;
    for (const auto& g : gens) {
      Integer t = pairing(g, fl.n);
      Integer j = fl.j_of(g);
      if (t == 0)
        coeffs.push_back(j);
      else
        fl.off.emplace_back(t, j);
    }
    fl.s = RaySemigroup::from(coeffs);
    lines[f] = std::move(fl);
  }

  // Cosets of the lattice spanned by the least generator on each ray; a
  // representative q in P of every coset bounds the strips holding holes.
  const LatticePoint v0 = lines[0]->s.least_positive() * lines[0]->u;
  const LatticePoint v1 = lines[1]->s.least_positive() * lines[1]->u;
  const Integer det = abs(v0[0] * v1[1] - v0[1] * v1[0]);
  auto key = [&](const LatticePoint& x) {
    return std::make_pair(mod_floor(x[0] * v1[1] - x[1] * v1[0], det),
                          mod_floor(v0[0] * x[1] - v0[1] * x[0], det));
  };
  std::map<std::pair<Integer, Integer>, LatticePoint> reps;
  std::vector<LatticePoint> frontier{LatticePoint(2)};
  reps.emplace(key(frontier[0]), frontier[0]);
  while (!frontier.empty()) {
    std::vector<LatticePoint> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        LatticePoint y = x + g;
        if (reps.emplace(key(y), y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  if (Integer(static_cast<unsigned long>(reps.size())) != det)
    throw InternalInconsistency("coset representatives do not cover the quotient lattice");

  PlanarHoles ph;
  for (std::size_t f = 0; f < 2; ++f) {
    Integer a = 0;
    for (const auto& [k, q] : reps) a = std::max(a, pairing(q, normals[f]));
    ph.strip[f] = a;
  }

  std::set<LatticePoint> candidates;
  for (std::size_t f = 0; f < 2; ++f) {
    FacetLines& fl = *lines[f];
    const Integer& d = fl.s.d;
    for (long t = 0; t < to_long(ph.strip[f], "strip width"); ++t) {
      const auto& ys = fl.line_sums(static_cast<std::size_t>(t));
      const Integer jmin = fl.j_min(t);
      std::map<Integer, Integer> least;
      for (const auto& y : ys) {
        Integer c = mod_floor(y, d);
        auto it = least.find(c);
        if (it == least.end() || y < it->second) least[c] = y;
      }
      if (least.empty()) {
        ph.families.push_back({fl.point(t, jmin), fl.u, Integer(1), f, Certificate::exact()});
        continue;
      }
      for (Integer c = 0; c < d; ++c) {
        Integer j0 = jmin + mod_floor(c - jmin, d);
        auto it = least.find(c);
        if (it == least.end()) {
          ph.families.push_back({fl.point(t, j0), fl.u, d, f, Certificate::exact()});
          continue;
        }
        const Integer stop = it->second + d * fl.s.conductor;
        for (Integer j = j0; j < stop; j += d)
          if (!fl.on_line(ys, j)) candidates.insert(fl.point(t, j));
      }
    }
  }
  for (const auto& x : candidates)
    if (std::none_of(ph.families.begin(), ph.families.end(),
                     [&](const HoleFamily& fam) { return fam.contains(x); }))
      ph.isolated.push_back(x);
  std::sort(ph.families.begin(), ph.families.end(), [](const HoleFamily& a, const HoleFamily& b) {
    if (a.facet != b.facet) return a.facet < b.facet;
    return a.base < b.base;
  });
  planar = std::move(ph);
}

AffineMonoid::AffineMonoid(std::size_t ambient_rank, std::vector<LatticePoint> generators)
    : impl_(std::make_shared<Impl>()) {
  if (generators.empty()) throw DomainError("a monoid needs at least one generator");
  for (const auto& g : generators)
    if (g.size() != ambient_rank)
      throw DimensionError("generator " + to_string(g) + " does not have length " +
                           std::to_string(ambient_rank));
  Impl& m = *impl_;
  m.ambient = ambient_rank;
  m.input = generators;
  m.change = smith_reindex(generators, ambient_rank);
  const std::size_t r = m.change.rank();

  std::vector<LatticePoint> local;
  for (const auto& g : generators) {
    auto l = m.change.to_local(g);
    if (!l) throw InternalInconsistency("generator outside its own group");
    if (!l->is_zero()) local.push_back(std::move(*l));
  }
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());

  m.cone = MCone::from_generators(r, local);
  if (!m.cone.is_pointed())
    throw UnsupportedMonoid("the monoid has nonzero units: its cone contains a line");
  if (!m.cone.is_full_dimensional())
    throw InternalInconsistency("cone of a reindexed monoid is not full-dimensional");
  m.dual = dual_cone(m.cone);
  if (m.dual.rays() != m.cone.facet_normals())
    throw InternalInconsistency("rays of the dual cone differ from the facet normals");
  m.grading = DualVector(r);
  for (const auto& nrm : m.cone.facet_normals()) m.grading += nrm;

  std::stable_sort(local.begin(), local.end(), [&](const LatticePoint& a, const LatticePoint& b) {
    return pairing(a, m.grading) < pairing(b, m.grading);
  });
  for (const auto& g : local) {
    if (!m.gens.empty()) {
      std::vector<LatticePoint> smaller;
      for (const auto& h : m.gens)
        if (pairing(h, m.grading) < pairing(g, m.grading)) smaller.push_back(h);
      if (!smaller.empty() &&
          MembershipOracle(smaller, m.grading, m.cone.facet_normals()).contains(g))
        continue;
    }
    m.gens.push_back(g);
  }
  std::sort(m.gens.begin(), m.gens.end());
  m.oracle.emplace(m.gens, m.grading, m.cone.facet_normals());

  if (r == 2) m.build_planar();
}

std::size_t AffineMonoid::ambient_rank() const noexcept { return impl_->ambient; }
std::size_t AffineMonoid::rank() const noexcept { return impl_->rank(); }
const std::vector<LatticePoint>& AffineMonoid::input_generators() const noexcept {
  return impl_->input;
}
const std::vector<LatticePoint>& AffineMonoid::generators() const noexcept { return impl_->gens; }
const CoordinateChange& AffineMonoid::coordinate_change() const noexcept { return impl_->change; }
const MCone& AffineMonoid::cone() const noexcept { return impl_->cone; }
const NCone& AffineMonoid::dual() const noexcept { return impl_->dual; }
const DualVector& AffineMonoid::grading() const noexcept { return impl_->grading; }
std::size_t AffineMonoid::facet_count() const noexcept {
  return impl_->cone.facet_normals().size();
}
MFace AffineMonoid::facet(std::size_t i) const { return impl_->cone.facet(i); }
const DualVector& AffineMonoid::facet_normal(std::size_t i) const {
  if (i >= facet_count()) throw DomainError("facet index out of range");
  return impl_->cone.facet_normals()[i];
}

Integer AffineMonoid::degree(const LatticePoint& m) const { return pairing(m, impl_->grading); }

Integer AffineMonoid::max_generator_degree() const {
  Integer best = 0;
  for (const auto& g : impl_->gens) best = std::max(best, degree(g));
  return best;
}

Integer AffineMonoid::default_degree_bound() const {
  Integer b = 12 * max_generator_degree();
  return b < 1 ? Integer(1) : b;
}

bool AffineMonoid::contains(const LatticePoint& m) const {
  if (m.size() != rank()) throw DimensionError("point has wrong length for this monoid");
  return impl_->member(m);
}

std::optional<std::vector<Integer>> AffineMonoid::decompose(const LatticePoint& m) const {
  if (m.size() != rank()) throw DimensionError("point has wrong length for this monoid");
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->oracle->solve(m);
}

bool AffineMonoid::in_saturation(const LatticePoint& m) const {
  if (m.size() != rank()) throw DimensionError("point has wrong length for this monoid");
  return impl_->cone.contains(m);
}

std::vector<LatticePoint> AffineMonoid::cone_points_up_to(const Integer& bound) const {
  return lattice_points_up_to(impl_->cone, impl_->grading, bound);
}

HoleInventory AffineMonoid::holes_up_to(const Integer& bound) const {
  HoleInventory inv;
  inv.bound = bound;
  const auto points = cone_points_up_to(bound);
  const std::size_t threads = std::min<std::size_t>(worker_threads(), points.size() / 256 + 1);
  std::vector<std::vector<LatticePoint>> found(threads);
  auto work = [&](std::size_t part) {
    MembershipOracle oracle(impl_->gens, impl_->grading, impl_->cone.facet_normals());
    const std::size_t lo = points.size() * part / threads;
    const std::size_t hi = points.size() * (part + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i)
      if (!oracle.contains(points[i])) found[part].push_back(points[i]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t p = 0; p < threads; ++p) pool.emplace_back(work, p);
    for (auto& t : pool) t.join();
  }
  for (auto& part : found) inv.holes.insert(inv.holes.end(), part.begin(), part.end());
  return inv;
}

bool AffineMonoid::is_saturated() const {
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    if (impl_->saturated) return *impl_->saturated;
  }
  bool sat = true;
  for (const auto& z : impl_->points_below_parallelepiped())
    if (!contains(z)) {
      sat = false;
      break;
    }
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->saturated = sat;
  return sat;
}

SaturationVerdict AffineMonoid::is_saturation_point(const LatticePoint& p) const {
  if (!contains(p)) throw DomainError("saturation point test needs a point of P, got " + to_string(p));
  SaturationVerdict v;
  v.certificate = Certificate::exact();
  for (const auto& z : impl_->points_below_parallelepiped()) {
    LatticePoint x = p + z;
    if (!contains(x)) {
      v.status = Verdict::no;
      v.witness = x;
      return v;
    }
  }
  v.status = Verdict::yes;
  v.witness = p;
  return v;
}

bool AffineMonoid::face_is_hole_free(const MFace& face) const {
  if (face.dimension() == 0) return true;
  std::vector<LatticePoint> on;
  for (const auto& g : impl_->gens)
    if (face.contains(g)) on.push_back(g);
  Integer bound = impl_->top_degrees(on, face.dimension());
  for (const auto& x : cone_points_up_to(bound - 1))
    if (face.contains(x) && !contains(x)) return false;
  return true;
}

std::vector<HoleFamily> AffineMonoid::hole_families(const Integer& bound, std::size_t window) const {
  if (const auto* ph = planar_holes()) return ph->families;
  std::vector<HoleFamily> out;
  if (rank() < 2) return out;
  const auto inv = holes_up_to(bound);
  for (std::size_t f = 0; f < facet_count(); ++f) {
    const MFace face = facet(f);
    LatticePoint d(rank());
    for (const auto& r : face.ray_vectors()) d += r;
    d = primitive_vector(d);
    for (const auto& h : inv.holes)
      for (std::size_t m = 1; m <= std::max<std::size_t>(window, 1); ++m) {
        const LatticePoint step = Integer(static_cast<unsigned long>(m)) * d;
        if (is_hole(h - step)) continue;
        bool persists = true;
        for (std::size_t k = 1; k <= window && persists; ++k)
          persists = is_hole(h + Integer(static_cast<unsigned long>(k)) * step);
        if (persists) {
          out.push_back({h, d, Integer(static_cast<unsigned long>(m)), f,
                         Certificate::window(Integer(static_cast<unsigned long>(window)))});
          break;
        }
      }
  }
  return out;
}

FacetSaturation AffineMonoid::facet_saturation_status(std::size_t f, const Integer& bound,
                                                      std::size_t window) const {
  if (f >= facet_count()) throw DomainError("facet index out of range");
  const MFace face = facet(f);
  FacetSaturation out;
  out.hole_free = face_is_hole_free(face);

  auto found = [&](const LatticePoint& p, Certificate cert) {
    auto v = is_saturation_point(p);
    if (v.status != Verdict::yes)
      throw InternalInconsistency("saturation point candidate " + to_string(p) + " failed");
    out.saturation_point = p;
    out.status = out.hole_free ? FacetStatus::saturated : FacetStatus::almost_saturated;
    out.certificate = std::move(cert);
    return out;
  };

  if (const auto* ph = planar_holes()) {
    const FacetLines& fl = impl_->facet_lines(f);
    for (const auto& fam : ph->families)
      if (fam.facet == f) {
        out.status = FacetStatus::nowhere_saturated;
        out.family = fam;
        out.certificate = Certificate::exact();
        return out;
      }
    const std::size_t g = 1 - f;
    std::optional<Integer> height;
    auto note = [&](const LatticePoint& h) {
      Integer v = pairing(h, facet_normal(g));
      if (!height || v > *height) height = v;
    };
    for (const auto& h : ph->isolated) note(h);
    for (const auto& fam : ph->families) note(fam.base);
    Integer a = 0;
    if (height) a = fl.s.next(floor_div(*height, pairing(fl.u, facet_normal(g))) + 1);
    return found(a * fl.u, Certificate::exact());
  }

  if (is_saturated()) return found(LatticePoint(rank()), Certificate::exact());
  if (face.dimension() == 0) {
    out.status = FacetStatus::nowhere_saturated;
    out.certificate = Certificate::exact();
    return out;
  }

  // Search P on the facet by degree. A candidate p fails exactly when a hole
  // of p + cone lies within the parallelepiped degree of p.
  const Integer span = impl_->top_degrees(impl_->gens, rank());
  const auto holes = holes_up_to(bound + span).holes;
  auto candidates = cone_points_up_to(bound);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const LatticePoint& a, const LatticePoint& b) { return degree(a) < degree(b); });
  for (const auto& p : candidates) {
    if (!face.contains(p) || !contains(p)) continue;
    bool clean = true;
    for (const auto& h : holes) {
      LatticePoint z = h - p;
      if (degree(z) < span && in_saturation(z)) {
        clean = false;
        break;
      }
    }
    if (clean) return found(p, Certificate::exact());
  }

  for (const auto& fam : hole_families(bound, window))
    if (fam.facet == f) {
      out.status = FacetStatus::nowhere_saturated;
      out.family = fam;
      out.certificate = fam.certificate;
      return out;
    }
  out.status = FacetStatus::inconclusive;
  out.certificate = Certificate::bounded(bound);
  return out;
}

const PlanarHoles* AffineMonoid::planar_holes() const noexcept {
  return impl_->planar ? &*impl_->planar : nullptr;
}

std::optional<Integer> AffineMonoid::planar_series_break(std::size_t f, const LatticePoint& h) const {
  if (rank() != 2) throw DomainError("series analysis is only available in rank 2");
  if (f >= 2) throw DomainError("facet index out of range");
  std::lock_guard<std::mutex> lock(impl_->mutex);
  FacetLines& fl = impl_->facet_lines(f);
  const Integer t = pairing(h, fl.n);
  if (t < 0) return std::nullopt;
  const Integer jh = fl.j_of(h);
  const auto& ys = fl.line_sums(static_cast<std::size_t>(to_long(t, "line index")));
  std::optional<Integer> best;
  for (const auto& y : ys) {
    Integer s = fl.s.next(jh + 1 - y);
    Integer k = y + s - jh;
    if (!best || k < *best) best = k;
  }
  return best;
}

}  // namespace mltoric
