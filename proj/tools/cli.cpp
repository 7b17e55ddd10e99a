#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mltoric/report.hpp"
#include "oracles.hpp"

namespace mltoric::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string format = "json";
  std::string file;
  std::optional<std::string> degree_bound;
  std::optional<std::size_t> family_window;
  std::optional<std::size_t> root_height;
  std::optional<std::size_t> max_iter;
  bool exact_only = false;

  std::string bound;
  std::size_t ray = 0;
  std::string height = "6";
  std::string root;
  std::optional<std::string> apply;
  std::optional<std::string> exp;
  std::string mode = "strict";
  std::uint32_t seed = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Integer parse_integer(const std::string& s, const std::string& what) {
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InputError(what + ": '" + s + "' is not an integer");
  return v;
}

Rational parse_rational(const std::string& s, const std::string& what) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw InputError(what + ": '" + s + "' is not a rational number");
  q.canonicalize();
  return q;
}

// "1,-2,3", optionally wrapped in () or [].
std::vector<std::string> split_list(std::string s) {
  std::string clean;
  for (char c : s)
    if (c != '(' && c != ')' && c != '[' && c != ']' && c != ' ') clean += c;
  std::vector<std::string> parts;
  std::stringstream ss(clean);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

LatticePoint parse_point(const std::string& s, std::size_t rank, const std::string& what) {
  auto parts = split_list(s);
  if (parts.size() != rank)
    throw InputError(what + ": expected " + std::to_string(rank) + " coordinates, got '" + s + "'");
  LatticePoint v(rank);
  for (std::size_t i = 0; i < rank; ++i) v[i] = parse_integer(parts[i], what);
  return v;
}

Bounds merged_bounds(const MonoidInput& in, const Options& o) {
  Bounds b = in.bounds;
  if (o.degree_bound) b.degree_bound = parse_integer(*o.degree_bound, "--degree-bound");
  if (o.family_window) b.family_window = *o.family_window;
  if (o.root_height) b.root_height = Integer(static_cast<unsigned long>(*o.root_height));
  if (o.max_iter) {
    if (*o.max_iter == 0) throw InputError("--max-iter must be positive");
    b.max_iter = *o.max_iter;
  }
  if (b.degree_bound && *b.degree_bound < 0) throw InputError("--degree-bound must be nonnegative");
  return b;
}

ojson point_json(const LatticePoint& v) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].fits_slong_p()) a.push_back(v[i].get_si());
    else a.push_back(v[i].get_str());
  }
  return a;
}

ojson element_json(const AlgebraElement& f, const CoordinateChange& cc) {
  ojson terms = ojson::array();
  AlgebraElement ambient(cc.ambient_rank());
  for (const auto& [m, c] : f.terms()) ambient.add_term(cc.to_ambient(m), c);
  for (auto it = ambient.terms().rbegin(); it != ambient.terms().rend(); ++it)
    terms.push_back({{"monomial", point_json(it->first)}, {"coefficient", to_string(it->second)}});
  return {{"text", ambient.to_string()}, {"terms", terms}};
}

LatticePoint to_local(const AffineMonoid& p, const LatticePoint& x, const std::string& what) {
  if (x.size() != p.ambient_rank()) throw InputError(what + ": wrong number of coordinates");
  auto y = p.coordinate_change().to_local(x);
  if (!y) throw InputError(what + ": " + to_string(x) + " is outside the lattice generated by P");
  return *y;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const Options& o, std::ostream& out) {
  const MonoidInput in = parse_input(read_file(o.file));
  const Bounds b = merged_bounds(in, o);
  AffineMonoid p(in.rank, in.generators);
  const InvariantReport r = analyze(p, b, in.name, o.exact_only);
  out << (o.format == "text" ? report_to_text(r) : report_to_json(r));
  return r.complete ? ok : inconclusive;
}

int cmd_holes(const Options& o, std::ostream& out) {
  const MonoidInput in = parse_input(read_file(o.file));
  const Bounds b = merged_bounds(in, o);
  AffineMonoid p(in.rank, in.generators);
  const Integer bound = o.bound.empty() ? b.degree_for(p) : parse_integer(o.bound, "--bound");
  if (bound < 0) throw InputError("--bound must be nonnegative");
  const auto& cc = p.coordinate_change();
  const HoleInventory inv = p.holes_up_to(bound);
  const auto families = p.hole_families(bound, b.family_window);

  std::vector<LatticePoint> holes;
  for (const auto& h : inv.holes) holes.push_back(cc.to_ambient(h));
  std::sort(holes.begin(), holes.end());
  if (o.format == "text") {
    out << "holes of degree <= " << to_string(bound) << ": " << holes.size() << "\n";
    for (const auto& h : holes) out << "  " << to_string(h) << "\n";
    for (const auto& f : families)
      out << "family " << to_string(cc.to_ambient(f.base)) << " + k*" << to_string(f.step) << "*"
          << to_string(cc.to_ambient(f.direction)) << "  [" << f.certificate.tag() << "]\n";
    return ok;
  }
  ojson j;
  j["bound"] = to_string(bound);
  j["grading"] = point_json(LatticePoint(p.grading().coords()));
  j["lattice_index"] = to_string(cc.index());
  j["holes"] = ojson::array();
  for (const auto& h : holes) j["holes"].push_back(point_json(h));
  j["families"] = ojson::array();
  for (const auto& f : families)
    j["families"].push_back({{"base", point_json(cc.to_ambient(f.base))},
                             {"direction", point_json(cc.to_ambient(f.direction))},
                             {"step", to_string(f.step)},
                             {"facet", f.facet},
                             {"certificate", f.certificate.tag()}});
  out << j.dump(2) << "\n";
  return ok;
}

int cmd_roots(const Options& o, std::ostream& out) {
  const MonoidInput in = parse_input(read_file(o.file));
  AffineMonoid p(in.rank, in.generators);
  const Integer h = parse_integer(o.height, "--height");
  if (o.ray >= p.facet_count()) throw InputError("--ray: the cone has " + std::to_string(p.facet_count()) + " rays");
  const auto roots = demazure_roots(p.dual(), o.ray, h);
  ojson list = ojson::array();
  for (const auto& r : roots) {
    const auto v = descends(p, r);
    list.push_back({{"e", point_json(r.e)},
                    {"descends", to_string(v.status)},
                    {"witness", v.witness ? point_json(*v.witness) : ojson(nullptr)},
                    {"certificate", v.certificate.tag()}});
  }
  if (o.format == "text") {
    out << "ray " << o.ray << " normal " << to_string(p.facet_normal(o.ray)) << ", height " << to_string(h)
        << ": " << roots.size() << " roots\n";
    for (const auto& j : list) {
      out << "  e=" << j["e"].dump() << "  descends: " << j["descends"].get<std::string>();
      if (!j["witness"].is_null()) out << " (generator " << j["witness"].dump() << " leaves P)";
      out << "\n";
    }
    return ok;
  }
  ojson j;
  j["ray"] = o.ray;
  j["normal"] = point_json(LatticePoint(p.facet_normal(o.ray).coords()));
  j["height"] = to_string(h);
  j["coordinates"] = p.coordinate_change().is_identity() ? "input" : "lattice generated by P";
  j["roots"] = list;
  out << j.dump(2) << "\n";
  return ok;
}

int cmd_derive(const Options& o, std::ostream& out) {
  const MonoidInput in = parse_input(read_file(o.file));
  const Bounds b = merged_bounds(in, o);
  AffineMonoid p(in.rank, in.generators);
  if (o.ray >= p.facet_count()) throw InputError("--ray: the cone has " + std::to_string(p.facet_count()) + " rays");
  if (o.apply.has_value() == o.exp.has_value()) throw InputError("derive needs exactly one of --apply and --exp");
  AlgebraMode mode = AlgebraMode::strict;
  if (o.mode == "normalization") mode = AlgebraMode::normalization;
  else if (o.mode == "laurent") mode = AlgebraMode::laurent;
  else if (o.mode != "strict") throw InputError("--algebra must be strict, normalization or laurent");

  const LatticePoint e = parse_point(o.root, p.rank(), "--root");
  if (!is_demazure_root(p.dual(), o.ray, e))
    throw InputError("--root: " + to_string(e) + " is not a Demazure root of ray " + std::to_string(o.ray));
  const DemazureRoot root{o.ray, e};
  const auto d = root_derivation(p, root);
  const auto descent = descends(p, root);
  DerivationEngine eng(p, mode, b.max_iter);

  ojson j;
  j["derivation"] = {{"rho", point_json(LatticePoint(d.rho.coords()))}, {"e", point_json(d.e)}};
  j["descends"] = to_string(descent.status);
  j["witness"] = descent.witness ? point_json(*descent.witness) : ojson(nullptr);
  j["algebra"] = to_string(mode);
  const auto& cc = p.coordinate_change();

  AlgebraElement result;
  LatticePoint m;
  if (o.apply) {
    m = to_local(p, parse_point(*o.apply, p.ambient_rank(), "--apply"), "--apply");
    result = eng.apply(d, AlgebraElement::monomial(m));
    j["operation"] = "apply";
    const auto nil = homogeneous_nilpotency(d, m);
    j["nilpotency_index"] = nil.nilpotent ? ojson(nil.index) : ojson(nullptr);
  } else {
    auto parts = split_list(*o.exp);
    if (parts.size() != p.ambient_rank() + 1) throw InputError("--exp expects t followed by the monomial");
    const Rational t = parse_rational(parts[0], "--exp");
    std::string rest;
    for (std::size_t i = 1; i < parts.size(); ++i) rest += (i > 1 ? "," : "") + parts[i];
    m = to_local(p, parse_point(rest, p.ambient_rank(), "--exp"), "--exp");
    result = eng.exponential(Derivation::homogeneous(d), t, AlgebraElement::monomial(m));
    j["operation"] = "exp";
    j["t"] = to_string(t);
  }
  j["monomial"] = point_json(cc.to_ambient(m));
  j["result"] = element_json(result, cc);
  if (o.format == "text") {
    out << to_string(d) << (descent.status == Verdict::yes ? " (descends)" : " (does not descend)") << "\n";
    out << (o.apply ? "d" : "exp(" + j["t"].get<std::string>() + " d)") << "(x^" << to_string(cc.to_ambient(m))
        << ") = " << j["result"]["text"].get<std::string>() << "\n";
    return ok;
  }
  out << j.dump(2) << "\n";
  return ok;
}

int cmd_check(const Options& o, std::ostream& out) {
  const MonoidInput in = parse_input(read_file(o.file));
  const Bounds b = merged_bounds(in, o);
  AffineMonoid p(in.rank, in.generators);
  const auto results = oracles::property_suite(p, b, o.seed);
  bool all = true;
  ojson list = ojson::array();
  for (const auto& r : results) {
    all = all && r.passed;
    list.push_back({{"property", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (o.format == "text") {
    for (const auto& r : results)
      out << (r.passed ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  } else {
    out << ojson{{"passed", all}, {"properties", list}}.dump(2) << "\n";
  }
  return all ? ok : check_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Makar-Limanov invariants of affine toric varieties given by affine monoids", "mltoric"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "input JSON document")->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--degree-bound", o.degree_bound, "degree bound B for hole searches");
    sub->add_option("--family-window", o.family_window, "window K for hole families");
    sub->add_option("--root-height", o.root_height, "height H for root enumeration");
    sub->add_option("--max-iter", o.max_iter, "iteration cap for nilpotency checks");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "full invariant report");
  add_common(analyze_cmd);
  analyze_cmd->add_flag("--exact-only", o.exact_only, "treat heuristic verdicts as inconclusive");

  auto* holes_cmd = app.add_subcommand("holes", "holes of bounded degree");
  add_common(holes_cmd);
  holes_cmd->add_option("--bound", o.bound, "degree bound");

  auto* roots_cmd = app.add_subcommand("roots", "Demazure roots of one ray");
  add_common(roots_cmd);
  roots_cmd->add_option("--ray", o.ray, "ray index")->required();
  roots_cmd->add_option("--height", o.height, "root height");

  auto* derive_cmd = app.add_subcommand("derive", "apply a root derivation or its exponential");
  add_common(derive_cmd);
  derive_cmd->add_option("--ray", o.ray, "ray index")->required();
  derive_cmd->add_option("--root", o.root, "root e, e.g. --root=-1,0")->required();
  derive_cmd->add_option("--apply", o.apply, "monomial m");
  derive_cmd->add_option("--exp", o.exp, "t,m for exp(t d)(x^m)");
  derive_cmd->add_option("--algebra", o.mode, "strict, normalization or laurent");

  auto* check_cmd = app.add_subcommand("check", "property suite on this input");
  add_common(check_cmd);
  check_cmd->add_option("--seed", o.seed, "seed for random samples");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(o, out);
    if (holes_cmd->parsed()) return cmd_holes(o, out);
    if (roots_cmd->parsed()) return cmd_roots(o, out);
    if (derive_cmd->parsed()) return cmd_derive(o, out);
    if (check_cmd->parsed()) return cmd_check(o, out);
  } catch (const UnsupportedMonoid& e) {
    err << "unsupported monoid: " << e.what() << "\n";
    return unsupported_monoid;
  } catch (const ClosureError& e) {
    err << "closure error at x^" << e.monomial() << ": " << e.what() << "\n";
    return invalid_input;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return check_failed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  }
  return invalid_input;
}

}  // namespace mltoric::cli
