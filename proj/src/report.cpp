#include "mltoric/report.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mltoric {

using ojson = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// scalars

ojson int_json(const Integer& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

Integer int_from(const ojson& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_string()) {
    Integer v;
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || v.set_str(s, 10) != 0) throw InputError(where + ": '" + s + "' is not an integer");
    return v;
  }
  throw InputError(where + ": expected an integer");
}

std::size_t size_from(const ojson& j, const std::string& where) {
  Integer v = int_from(j, where);
  if (v < 0 || !v.fits_ulong_p()) throw InputError(where + ": expected a nonnegative integer");
  return v.get_ui();
}

ojson rational_json(const Rational& q) {
  if (q.get_den() == 1) return int_json(q.get_num());
  return to_string(q);
}

Rational rational_from(const ojson& j, const std::string& where) {
  if (!j.is_string()) return Rational(int_from(j, where));
  Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0) throw InputError(where + ": not a rational number");
  q.canonicalize();
  return q;
}

template <Space S>
ojson vec_json(const IntVector<S>& v) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(int_json(v[i]));
  return a;
}

template <Space S>
IntVector<S> vec_from(const ojson& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers");
  std::vector<Integer> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(int_from(j[i], where + "[" + std::to_string(i) + "]"));
  return IntVector<S>(std::move(c));
}

template <class T, class F>
ojson list_json(const std::vector<T>& xs, F f) {
  ojson a = ojson::array();
  for (const auto& x : xs) a.push_back(f(x));
  return a;
}

template <class T, class F>
std::vector<T> list_from(const ojson& j, const std::string& where, F f) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(f(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T, class F>
ojson opt_json(const std::optional<T>& x, F f) {
  return x ? f(*x) : ojson(nullptr);
}

template <class T, class F>
std::optional<T> opt_from(const ojson& j, const std::string& key, const std::string& where, F f) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return f(j.at(key), where + "." + key);
}

const ojson& field(const ojson& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

bool bool_from(const ojson& j, const std::string& where) {
  if (!j.is_boolean()) throw InputError(where + ": expected a boolean");
  return j.get<bool>();
}

std::string str_from(const ojson& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

Verdict verdict_from(const ojson& j, const std::string& where) {
  const std::string s = str_from(j, where);
  for (auto v : {Verdict::yes, Verdict::no, Verdict::inconclusive})
    if (to_string(v) == s) return v;
  throw InputError(where + ": unknown verdict '" + s + "'");
}

Certificate cert_from(const ojson& j, const std::string& where) {
  try {
    return Certificate::parse(str_from(j, where));
  } catch (const DomainError& e) {
    throw InputError(where + ": " + e.what());
  }
}

auto lp_from = [](const ojson& j, const std::string& w) { return vec_from<Space::character>(j, w); };
auto dv_from = [](const ojson& j, const std::string& w) { return vec_from<Space::cocharacter>(j, w); };
auto lp_json = [](const LatticePoint& v) { return vec_json(v); };

// ---------------------------------------------------------------------------
// composite values

ojson family_json(const HoleFamily& f) {
  ojson j;
  j["base"] = vec_json(f.base);
  j["direction"] = vec_json(f.direction);
  j["step"] = int_json(f.step);
  j["facet"] = f.facet;
  j["certificate"] = f.certificate.tag();
  return j;
}

HoleFamily family_from(const ojson& j, const std::string& w) {
  return {lp_from(field(j, "base", w), w + ".base"), lp_from(field(j, "direction", w), w + ".direction"),
          int_from(field(j, "step", w), w + ".step"), size_from(field(j, "facet", w), w + ".facet"),
          cert_from(field(j, "certificate", w), w + ".certificate")};
}

ojson face_json(const FaceSummary& f) {
  ojson j;
  j["dimension"] = f.dimension;
  j["rays"] = f.rays;
  j["ray_vectors"] = list_json(f.ray_vectors, lp_json);
  return j;
}

FaceSummary face_from(const ojson& j, const std::string& w) {
  FaceSummary f;
  f.dimension = size_from(field(j, "dimension", w), w + ".dimension");
  f.rays = list_from<std::size_t>(field(j, "rays", w), w + ".rays", size_from);
  f.ray_vectors = list_from<LatticePoint>(field(j, "ray_vectors", w), w + ".ray_vectors", lp_from);
  return f;
}

ojson derivation_json(const HomogeneousDerivation& d) {
  ojson j;
  j["rho"] = vec_json(d.rho);
  j["e"] = vec_json(d.e);
  j["lambda"] = rational_json(d.lambda);
  return j;
}

HomogeneousDerivation derivation_from(const ojson& j, const std::string& w) {
  return {dv_from(field(j, "rho", w), w + ".rho"), lp_from(field(j, "e", w), w + ".e"),
          rational_from(field(j, "lambda", w), w + ".lambda")};
}

ojson ray_test_json(const AffineRayTest& t) {
  ojson j;
  j["verdict"] = to_string(t.verdict);
  j["ray"] = vec_json(t.ray);
  j["in_monoid"] = t.in_monoid;
  j["pairing"] = int_json(t.pairing);
  j["holes_persist"] = t.holes_persist;
  j["hole"] = opt_json(t.hole, lp_json);
  j["break_at"] = opt_json(t.break_at, int_json);
  j["reason"] = t.reason;
  j["certificate"] = t.certificate.tag();
  return j;
}

AffineRayTest ray_test_from(const ojson& j, const std::string& w) {
  AffineRayTest t;
  t.verdict = verdict_from(field(j, "verdict", w), w + ".verdict");
  t.ray = lp_from(field(j, "ray", w), w + ".ray");
  t.in_monoid = bool_from(field(j, "in_monoid", w), w + ".in_monoid");
  t.pairing = int_from(field(j, "pairing", w), w + ".pairing");
  t.holes_persist = bool_from(field(j, "holes_persist", w), w + ".holes_persist");
  t.hole = opt_from<LatticePoint>(j, "hole", w, lp_from);
  t.break_at = opt_from<Integer>(j, "break_at", w, int_from);
  t.reason = str_from(field(j, "reason", w), w + ".reason");
  t.certificate = cert_from(field(j, "certificate", w), w + ".certificate");
  return t;
}

ojson facet_json(const FacetClassification& c) {
  ojson j;
  j["index"] = c.facet;
  j["normal"] = vec_json(c.normal);
  j["rays"] = c.rays;
  j["status"] = to_string(c.saturation.status);
  j["hole_free"] = c.saturation.hole_free;
  j["saturation_point"] = opt_json(c.saturation.saturation_point, lp_json);
  j["hole_family"] = opt_json(c.saturation.family, family_json);
  j["saturation_certificate"] = c.saturation.certificate.tag();
  j["affine"] = to_string(c.affine);
  j["affine_strict"] = c.affine_strict;
  j["others_dimension"] = c.others_dimension;
  j["distinguished_ray"] = c.distinguished_ray ? ojson(*c.distinguished_ray) : ojson(nullptr);
  j["affine_ray"] = opt_json(c.affine_ray, ray_test_json);
  j["slice"] = c.slice ? ojson{{"derivation", derivation_json(c.slice->derivation)},
                               {"slice", vec_json(c.slice->slice)}}
                       : ojson(nullptr);
  j["note"] = c.note ? ojson(*c.note) : ojson(nullptr);
  j["certificate"] = c.certificate.tag();
  return j;
}

FacetClassification facet_from(const ojson& j, const std::string& w) {
  FacetClassification c;
  c.facet = size_from(field(j, "index", w), w + ".index");
  c.normal = dv_from(field(j, "normal", w), w + ".normal");
  c.rays = list_from<std::size_t>(field(j, "rays", w), w + ".rays", size_from);
  try {
    c.saturation.status = facet_status_from_string(str_from(field(j, "status", w), w + ".status"));
  } catch (const DomainError& e) {
    throw InputError(w + ".status: " + e.what());
  }
  c.saturation.hole_free = bool_from(field(j, "hole_free", w), w + ".hole_free");
  c.saturation.saturation_point = opt_from<LatticePoint>(j, "saturation_point", w, lp_from);
  c.saturation.family = opt_from<HoleFamily>(j, "hole_family", w, family_from);
  c.saturation.certificate = cert_from(field(j, "saturation_certificate", w), w + ".saturation_certificate");
  c.affine = verdict_from(field(j, "affine", w), w + ".affine");
  c.affine_strict = bool_from(field(j, "affine_strict", w), w + ".affine_strict");
  c.others_dimension = size_from(field(j, "others_dimension", w), w + ".others_dimension");
  c.distinguished_ray = opt_from<std::size_t>(j, "distinguished_ray", w, size_from);
  c.affine_ray = opt_from<AffineRayTest>(j, "affine_ray", w, ray_test_from);
  c.slice = opt_from<SliceDerivation>(j, "slice", w, [](const ojson& s, const std::string& sw) {
    return SliceDerivation{derivation_from(field(s, "derivation", sw), sw + ".derivation"),
                           lp_from(field(s, "slice", sw), sw + ".slice")};
  });
  c.note = opt_from<std::string>(j, "note", w, str_from);
  c.certificate = cert_from(field(j, "certificate", w), w + ".certificate");
  return c;
}

ojson splitting_json(const Splitting& s) {
  ojson j;
  j["k"] = s.k;
  j["affine_rays"] = list_json(s.affine_rays, [](const AffineRay& a) {
    return ojson{{"facet", a.facet}, {"ray", a.ray}, {"vector", vec_json(a.vector)}};
  });
  j["core_face"] = face_json(s.core_face);
  j["core_rank"] = s.core_rank;
  j["core_generators"] = list_json(s.core_generators, lp_json);
  j["core_generators_ambient"] = list_json(s.core_generators_ambient, lp_json);
  return j;
}

Splitting splitting_from(const ojson& j, const std::string& w) {
  Splitting s;
  s.k = size_from(field(j, "k", w), w + ".k");
  s.affine_rays = list_from<AffineRay>(field(j, "affine_rays", w), w + ".affine_rays",
                                       [](const ojson& a, const std::string& aw) {
                                         return AffineRay{size_from(field(a, "facet", aw), aw + ".facet"),
                                                          size_from(field(a, "ray", aw), aw + ".ray"),
                                                          lp_from(field(a, "vector", aw), aw + ".vector")};
                                       });
  s.core_face = face_from(field(j, "core_face", w), w + ".core_face");
  s.core_rank = size_from(field(j, "core_rank", w), w + ".core_rank");
  s.core_generators = list_from<LatticePoint>(field(j, "core_generators", w), w + ".core_generators", lp_from);
  s.core_generators_ambient = list_from<LatticePoint>(field(j, "core_generators_ambient", w),
                                                      w + ".core_generators_ambient", lp_from);
  return s;
}

ojson flag_json(const std::optional<bool>& b) { return b ? ojson(*b) : ojson(nullptr); }

ojson bounds_json(const InvariantReport& r) {
  ojson j;
  j["degree_bound"] = int_json(r.degree_bound);
  j["family_window"] = r.family_window;
  j["root_height"] = int_json(r.root_height);
  j["max_iter"] = r.max_iter;
  return j;
}

ojson parse_json(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

MonoidInput parse_input(const std::string& text) {
  const ojson j = parse_json(text);
  if (!j.is_object()) throw InputError("input: expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "rank" && k != "generators" && k != "name" && k != "bounds")
      throw InputError("input: unknown field '" + k + "'");
  MonoidInput in;
  in.rank = size_from(field(j, "rank", "input"), "input.rank");
  if (in.rank == 0) throw InputError("input.rank: must be positive");
  const ojson& gens = field(j, "generators", "input");
  if (!gens.is_array()) throw InputError("input.generators: expected an array");
  if (gens.empty()) throw InputError("input.generators: the generator list is empty");
  std::set<LatticePoint> seen;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string w = "input.generators[" + std::to_string(i) + "]";
    LatticePoint g = lp_from(gens[i], w);
    if (g.size() != in.rank)
      throw InputError(w + ": length " + std::to_string(g.size()) + " differs from rank " +
                       std::to_string(in.rank));
    if (!seen.insert(g).second) throw InputError(w + ": duplicate generator " + to_string(g));
    in.generators.push_back(std::move(g));
  }
  if (j.contains("name")) in.name = str_from(j.at("name"), "input.name");
  if (j.contains("bounds")) {
    const ojson& b = j.at("bounds");
    if (!b.is_object()) throw InputError("input.bounds: expected an object");
    for (const auto& [k, v] : b.items()) {
      const std::string w = "input.bounds." + k;
      if (k == "degree_bound") {
        Integer d = int_from(v, w);
        if (d < 0) throw InputError(w + ": must be nonnegative");
        in.bounds.degree_bound = d;
      } else if (k == "family_window") {
        in.bounds.family_window = size_from(v, w);
      } else if (k == "root_height") {
        in.bounds.root_height = size_from(v, w);
      } else if (k == "max_iter") {
        in.bounds.max_iter = size_from(v, w);
        if (in.bounds.max_iter == 0) throw InputError(w + ": must be positive");
      } else {
        throw InputError("input.bounds: unknown field '" + k + "'");
      }
    }
  }
  return in;
}

std::string input_to_json(const MonoidInput& in) {
  ojson j;
  j["rank"] = in.rank;
  j["generators"] = list_json(in.generators, lp_json);
  if (!in.name.empty()) j["name"] = in.name;
  return j.dump();
}

std::string report_to_json(const InvariantReport& r, int indent) {
  ojson j;
  j["tool"] = {{"name", "mltoric"}, {"version", tool_version}};
  j["name"] = r.name;
  j["input"] = {{"rank", r.ambient_rank}, {"generators", list_json(r.input_generators, lp_json)}};
  j["lattice"] = {{"rank", r.rank},
                  {"index", int_json(r.lattice_index)},
                  {"generators", list_json(r.generators, lp_json)},
                  {"grading", vec_json(r.grading)},
                  {"cone_rays", list_json(r.cone_rays, lp_json)}};
  j["bounds"] = bounds_json(r);
  j["status"] = r.complete ? "complete" : "partial";
  j["certificate"] = r.certificate.tag();
  j["facets"] = list_json(r.facets, facet_json);
  j["almost_saturated"] = r.almost_saturated;
  j["ml_face"] = opt_json(r.ml_face, face_json);
  j["ml_star_face"] = opt_json(r.ml_star_face, face_json);
  j["no_slice"] = r.no_slice;
  j["splitting"] = opt_json(r.splitting, splitting_json);
  j["flags"] = {{"is_rigid_core", flag_json(r.is_rigid_core)},
                {"is_affine_space", flag_json(r.is_affine_space)},
                {"ml_equals_ml_star", flag_json(r.ml_equals_ml_star)},
                {"is_rigid", flag_json(r.is_rigid)}};
  j["notes"] = r.notes;
  return j.dump(indent) + "\n";
}

InvariantReport report_from_json(const std::string& text) {
  const ojson j = parse_json(text);
  const std::string w = "report";
  InvariantReport r;
  r.name = str_from(field(j, "name", w), "report.name");
  const ojson& in = field(j, "input", w);
  r.ambient_rank = size_from(field(in, "rank", "report.input"), "report.input.rank");
  r.input_generators = list_from<LatticePoint>(field(in, "generators", "report.input"),
                                               "report.input.generators", lp_from);
  const ojson& lat = field(j, "lattice", w);
  r.rank = size_from(field(lat, "rank", "report.lattice"), "report.lattice.rank");
  r.lattice_index = int_from(field(lat, "index", "report.lattice"), "report.lattice.index");
  r.generators = list_from<LatticePoint>(field(lat, "generators", "report.lattice"),
                                         "report.lattice.generators", lp_from);
  r.grading = dv_from(field(lat, "grading", "report.lattice"), "report.lattice.grading");
  r.cone_rays = list_from<LatticePoint>(field(lat, "cone_rays", "report.lattice"),
                                        "report.lattice.cone_rays", lp_from);
  const ojson& b = field(j, "bounds", w);
  r.degree_bound = int_from(field(b, "degree_bound", "report.bounds"), "report.bounds.degree_bound");
  r.family_window = size_from(field(b, "family_window", "report.bounds"), "report.bounds.family_window");
  r.root_height = int_from(field(b, "root_height", "report.bounds"), "report.bounds.root_height");
  r.max_iter = size_from(field(b, "max_iter", "report.bounds"), "report.bounds.max_iter");
  const std::string status = str_from(field(j, "status", w), "report.status");
  if (status != "complete" && status != "partial") throw InputError("report.status: unknown value");
  r.complete = status == "complete";
  r.certificate = cert_from(field(j, "certificate", w), "report.certificate");
  r.facets = list_from<FacetClassification>(field(j, "facets", w), "report.facets", facet_from);
  r.almost_saturated = list_from<std::size_t>(field(j, "almost_saturated", w), "report.almost_saturated",
                                              size_from);
  r.ml_face = opt_from<FaceSummary>(j, "ml_face", w, face_from);
  r.ml_star_face = opt_from<FaceSummary>(j, "ml_star_face", w, face_from);
  r.no_slice = bool_from(field(j, "no_slice", w), "report.no_slice");
  r.splitting = opt_from<Splitting>(j, "splitting", w, splitting_from);
  const ojson& flags = field(j, "flags", w);
  r.is_rigid_core = opt_from<bool>(flags, "is_rigid_core", "report.flags", bool_from);
  r.is_affine_space = opt_from<bool>(flags, "is_affine_space", "report.flags", bool_from);
  r.ml_equals_ml_star = opt_from<bool>(flags, "ml_equals_ml_star", "report.flags", bool_from);
  r.is_rigid = opt_from<bool>(flags, "is_rigid", "report.flags", bool_from);
  r.notes = list_from<std::string>(field(j, "notes", w), "report.notes", str_from);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string face_text(const std::optional<FaceSummary>& f) {
  if (!f) return "undetermined";
  if (f->dimension == 0) return "apex {0}";
  std::string out = "dim " + std::to_string(f->dimension) + ", rays";
  for (const auto& v : f->ray_vectors) out += " " + to_string(v);
  return out;
}

std::string flag_text(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "undefined"; }

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

std::string report_to_text(const InvariantReport& r) {
  std::ostringstream out;
  out << "monoid";
  if (!r.name.empty()) out << " " << r.name;
  out << " (rank " << r.rank << ", lattice index " << to_string(r.lattice_index) << ")\n";
  out << "  generators:";
  for (const auto& g : r.generators) out << " " << to_string(g);
  out << "\n  bounds: B=" << to_string(r.degree_bound) << " K=" << r.family_window
      << " H=" << to_string(r.root_height) << " max_iter=" << r.max_iter << "\n";
  out << "  status: " << (r.complete ? "complete" : "partial") << ", certificate " << r.certificate.tag()
      << "\n\n";

  std::vector<std::vector<std::string>> rows{
      {"facet", "normal", "status", "witness", "affine", "affine ray", "slice", "certificate"}};
  for (const auto& c : r.facets) {
    std::string witness = "-";
    if (c.saturation.saturation_point) witness = to_string(*c.saturation.saturation_point);
    else if (const auto& fam = c.saturation.family) {
      witness = "family " + to_string(fam->base) + "+k";
      if (fam->step != 1) witness += to_string(fam->step) + "*";
      witness += to_string(fam->direction);
    }
    std::string ray = "-";
    if (c.affine_ray) ray = to_string(c.affine_ray->ray) + " " + to_string(c.affine_ray->verdict);
    rows.push_back({std::to_string(c.facet), to_string(c.normal), to_string(c.saturation.status), witness,
                    to_string(c.affine), ray, c.slice ? "x^" + to_string(c.slice->slice) : "-",
                    c.certificate.tag()});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : rows) {
    std::string line = " ";
    for (std::size_t i = 0; i < row.size(); ++i) line += " " + pad(row[i], width[i]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  for (const auto& c : r.facets)
    if (c.affine_ray && !c.affine_ray->reason.empty())
      out << "  facet " << c.facet << " ray test: " << c.affine_ray->reason << "\n";

  out << "\n  ml face:          " << face_text(r.ml_face) << "\n";
  out << "  ml* face:         " << (r.no_slice ? "no slice exists" : face_text(r.ml_star_face)) << "\n";
  if (r.splitting) {
    out << "  affine factors:   k=" << r.splitting->k << "\n";
    out << "  core monoid:      rank " << r.splitting->core_rank;
    if (r.splitting->core_generators.empty()) out << ", zero monoid";
    else {
      out << ", generators";
      for (const auto& g : r.splitting->core_generators) out << " " << to_string(g);
    }
    out << "\n";
  }
  out << "  rigid core:       " << flag_text(r.is_rigid_core) << "\n";
  out << "  affine space:     " << flag_text(r.is_affine_space) << "\n";
  out << "  ml equals ml*:    " << flag_text(r.ml_equals_ml_star) << "\n";
  out << "  rigid:            " << flag_text(r.is_rigid) << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  return out.str();
}

}  // namespace mltoric
