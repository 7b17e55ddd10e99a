#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mltoric/report.hpp"
#include "oracles.hpp"

namespace py = pybind11;
using namespace mltoric;

namespace {

Integer to_integer(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw py::type_error("coordinates must be integers");
  Integer v;
  v.set_str(py::str(h).cast<std::string>(), 10);
  return v;
}

py::int_ from_integer(const Integer& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

LatticePoint to_point(const py::handle& seq) {
  std::vector<Integer> c;
  for (const auto& x : py::cast<py::sequence>(seq)) c.push_back(to_integer(x));
  return LatticePoint(std::move(c));
}

py::tuple from_point(const LatticePoint& p) {
  py::tuple t(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) t[i] = from_integer(p[i]);
  return t;
}

py::object from_rational(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(from_integer(q.get_num()), from_integer(q.get_den()));
}

Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return Rational(to_integer(h));
  py::object f = py::module_::import("fractions").attr("Fraction")(h);
  Rational q(to_integer(f.attr("numerator")), to_integer(f.attr("denominator")));
  q.canonicalize();
  return q;
}

AffineMonoid make_monoid(const py::sequence& gens, std::optional<std::size_t> rank) {
  std::vector<LatticePoint> g;
  for (const auto& x : gens) g.push_back(to_point(x));
  std::size_t n = rank ? *rank : (g.empty() ? 0 : g.front().size());
  return AffineMonoid(n, std::move(g));
}

std::optional<LatticePoint> local(const AffineMonoid& p, const py::handle& m) {
  LatticePoint x = to_point(m);
  if (x.size() != p.ambient_rank()) throw DimensionError("expected " + std::to_string(p.ambient_rank()) +
                                                         " coordinates");
  return p.coordinate_change().to_local(x);
}

Bounds make_bounds(py::object degree_bound, std::size_t family_window, long root_height, std::size_t max_iter) {
  Bounds b;
  if (!degree_bound.is_none()) b.degree_bound = to_integer(degree_bound);
  b.family_window = family_window;
  b.root_height = root_height;
  if (max_iter == 0) throw InputError("max_iter must be positive");
  b.max_iter = max_iter;
  return b;
}

py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

DemazureRoot checked_root(const AffineMonoid& p, std::size_t ray, const py::handle& e) {
  if (ray >= p.facet_count()) throw DomainError("ray index out of range");
  LatticePoint v = to_point(e);
  if (v.size() != p.rank() || !is_demazure_root(p.dual(), ray, v))
    throw InputError(to_string(v) + " is not a Demazure root of ray " + std::to_string(ray));
  return {ray, v};
}

AlgebraMode mode_of(const std::string& s) {
  if (s == "strict") return AlgebraMode::strict;
  if (s == "normalization") return AlgebraMode::normalization;
  if (s == "laurent") return AlgebraMode::laurent;
  throw InputError("algebra must be strict, normalization or laurent");
}

}  // namespace

PYBIND11_MODULE(_mltoric, m) {
  m.doc() = "Makar-Limanov invariants of affine toric varieties given by affine monoids";
  m.attr("__version__") = tool_version;

  auto base = py::register_exception<Error>(m, "MltoricError", PyExc_RuntimeError);
  py::register_exception<UnsupportedMonoid>(m, "UnsupportedMonoid", base.ptr());
  py::register_exception<ClosureError>(m, "ClosureError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());

  py::class_<AffineMonoid>(m, "AffineMonoid")
      .def(py::init(&make_monoid), py::arg("generators"), py::arg("rank") = py::none())
      .def_property_readonly("ambient_rank", &AffineMonoid::ambient_rank)
      .def_property_readonly("rank", &AffineMonoid::rank)
      .def_property_readonly("lattice_index",
                             [](const AffineMonoid& p) { return from_integer(p.coordinate_change().index()); })
      .def_property_readonly("generators",
                             [](const AffineMonoid& p) {
                               py::list out;
                               for (const auto& g : p.generators())
                                 out.append(from_point(p.coordinate_change().to_ambient(g)));
                               return out;
                             })
      .def_property_readonly("facet_count", &AffineMonoid::facet_count)
      .def("facet_normal",
           [](const AffineMonoid& p, std::size_t i) { return from_point(LatticePoint(p.facet_normal(i).coords())); })
      .def("contains",
           [](const AffineMonoid& p, const py::sequence& x) {
             auto y = local(p, x);
             return y && p.contains(*y);
           })
      .def("is_hole",
           [](const AffineMonoid& p, const py::sequence& x) {
             auto y = local(p, x);
             return y && p.is_hole(*y);
           })
      .def("holes",
           [](const AffineMonoid& p, py::object bound) {
             const Integer b = bound.is_none() ? p.default_degree_bound() : to_integer(bound);
             py::list out;
             for (const auto& h : p.holes_up_to(b).holes) out.append(from_point(p.coordinate_change().to_ambient(h)));
             return out;
           },
           py::arg("bound") = py::none())
      .def("__repr__", [](const AffineMonoid& p) {
        std::string s = "AffineMonoid([";
        for (std::size_t i = 0; i < p.input_generators().size(); ++i)
          s += (i ? ", " : "") + to_string(p.input_generators()[i]);
        return s + "])";
      });

  m.def(
      "analyze",
      [](const AffineMonoid& p, py::object degree_bound, std::size_t family_window, long root_height,
         std::size_t max_iter, const std::string& name, bool exact_only) {
        const auto b = make_bounds(degree_bound, family_window, root_height, max_iter);
        std::string text;
        {
          py::gil_scoped_release release;
          text = report_to_json(analyze(p, b, name, exact_only));
        }
        return loads(text);
      },
      py::arg("monoid"), py::arg("degree_bound") = py::none(), py::arg("family_window") = 8,
      py::arg("root_height") = 6, py::arg("max_iter") = 64, py::arg("name") = "", py::arg("exact_only") = false);

  m.def(
      "report_text",
      [](const AffineMonoid& p, py::object degree_bound, const std::string& name) {
        const auto b = make_bounds(degree_bound, 8, 6, 64);
        py::gil_scoped_release release;
        return report_to_text(analyze(p, b, name));
      },
      py::arg("monoid"), py::arg("degree_bound") = py::none(), py::arg("name") = "");

  m.def(
      "roots",
      [](const AffineMonoid& p, std::size_t ray, long height) {
        if (ray >= p.facet_count()) throw DomainError("ray index out of range");
        py::list out;
        for (const auto& r : demazure_roots(p.dual(), ray, height)) {
          const auto v = descends(p, r);
          py::dict d;
          d["e"] = from_point(r.e);
          d["descends"] = to_string(v.status);
          d["witness"] = v.witness ? py::object(from_point(*v.witness)) : py::object(py::none());
          d["certificate"] = v.certificate.tag();
          out.append(d);
        }
        return out;
      },
      py::arg("monoid"), py::arg("ray"), py::arg("height") = 6);

  m.def(
      "descends",
      [](const AffineMonoid& p, std::size_t ray, const py::sequence& e) {
        return descends(p, checked_root(p, ray, e)).status == Verdict::yes;
      },
      py::arg("monoid"), py::arg("ray"), py::arg("e"));

  m.def(
      "derive",
      [](const AffineMonoid& p, std::size_t ray, const py::sequence& e, const py::sequence& monomial,
         py::object t, const std::string& algebra, std::size_t max_iter) {
        const auto d = root_derivation(p, checked_root(p, ray, e));
        auto x = local(p, monomial);
        if (!x) throw InputError("monomial is outside the lattice generated by P");
        DerivationEngine eng(p, mode_of(algebra), max_iter);
        const auto f = AlgebraElement::monomial(*x);
        const AlgebraElement g =
            t.is_none() ? eng.apply(d, f) : eng.exponential(Derivation::homogeneous(d), to_rational(t), f);
        py::dict out;
        for (const auto& [mono, c] : g.terms())
          out[from_point(p.coordinate_change().to_ambient(mono))] = from_rational(c);
        return out;
      },
      py::arg("monoid"), py::arg("ray"), py::arg("e"), py::arg("monomial"), py::arg("t") = py::none(),
      py::arg("algebra") = "strict", py::arg("max_iter") = 64);

  m.def(
      "check",
      [](const AffineMonoid& p, std::uint32_t seed) {
        py::list out;
        for (const auto& r : oracles::property_suite(p, Bounds{}, seed))
          out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
      },
      py::arg("monoid"), py::arg("seed") = 1);
}
