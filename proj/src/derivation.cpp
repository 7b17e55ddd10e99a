#include "mltoric/derivation.hpp"

#include <set>

namespace mltoric {

AlgebraElement AlgebraElement::monomial(const LatticePoint& m, const Rational& c) {
  AlgebraElement out(m.size());
  out.add_term(m, c);
  return out;
}

AlgebraElement AlgebraElement::constant(std::size_t rank, const Rational& c) {
  return monomial(LatticePoint(rank), c);
}

Rational AlgebraElement::coefficient(const LatticePoint& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraElement::add_term(const LatticePoint& m, const Rational& c) {
  if (m.size() != rank_) throw DimensionError("monomial of wrong rank in algebra element");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (o.rank_ != rank_) throw DimensionError("adding algebra elements of different rank");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (o.rank_ != rank_) throw DimensionError("subtracting algebra elements of different rank");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.rank_ != b.rank_) throw DimensionError("multiplying algebra elements of different rank");
  AlgebraElement out(a.rank_);
  for (const auto& [m, c] : a.terms_)
    for (const auto& [n, d] : b.terms_) out.add_term(m + n, c * d);
  return out;
}

AlgebraElement operator*(const Rational& c, const AlgebraElement& a) {
  AlgebraElement out(a.rank_);
  for (const auto& [m, d] : a.terms_) out.add_term(m, c * d);
  return out;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->second;
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    out += mltoric::to_string(Rational(abs(c))) + "*x^" + mltoric::to_string(it->first);
  }
  return out;
}

AlgebraElement HomogeneousDerivation::on_monomial(const LatticePoint& m) const {
  AlgebraElement out(m.size());
  out.add_term(m + e, lambda * Rational(pairing(m, rho)));
  return out;
}

std::string to_string(const HomogeneousDerivation& d) {
  std::string s = "d[rho=" + to_string(d.rho) + ", e=" + to_string(d.e);
  if (d.lambda != 1) s += ", lambda=" + to_string(d.lambda);
  return s + "]";
}

std::string to_string(AlgebraMode m) {
  switch (m) {
    case AlgebraMode::strict:
      return "strict";
    case AlgebraMode::normalization:
      return "normalization";
    case AlgebraMode::laurent:
      return "laurent";
  }
  return "strict";
}

// ---------------------------------------------------------------------------

struct Derivation::Node {
  Kind kind = Kind::zero;
  HomogeneousDerivation h;
  std::vector<Derivation> children;
  AlgebraElement factor;
  Rational parameter;
};

Derivation::Derivation() : node_(std::make_shared<Node>()) {}

Derivation Derivation::homogeneous(HomogeneousDerivation h) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::homogeneous;
  n->h = std::move(h);
  Derivation d;
  d.node_ = std::move(n);
  return d;
}

Derivation Derivation::sum(std::vector<Derivation> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->children = std::move(terms);
  Derivation d;
  d.node_ = std::move(n);
  return d;
}

Derivation Derivation::replica(AlgebraElement f, Derivation inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::replica;
  n->factor = std::move(f);
  n->children = {std::move(inner)};
  Derivation d;
  d.node_ = std::move(n);
  return d;
}

Derivation Derivation::conjugate(Derivation by, Rational t, Derivation inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::conjugate;
  n->parameter = std::move(t);
  n->children = {std::move(by), std::move(inner)};
  Derivation d;
  d.node_ = std::move(n);
  return d;
}

Derivation::Kind Derivation::kind() const noexcept { return node_->kind; }

const HomogeneousDerivation& Derivation::as_homogeneous() const {
  if (node_->kind != Kind::homogeneous) throw DomainError("derivation is not homogeneous");
  return node_->h;
}
const std::vector<Derivation>& Derivation::children() const { return node_->children; }
const AlgebraElement& Derivation::factor() const { return node_->factor; }
const Rational& Derivation::parameter() const { return node_->parameter; }

std::string Derivation::describe() const {
  switch (node_->kind) {
    case Kind::zero:
      return "0";
    case Kind::homogeneous:
      return to_string(node_->h);
    case Kind::sum: {
      std::string s = "(";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i) s += " + ";
        s += node_->children[i].describe();
      }
      return s + ")";
    }
    case Kind::replica:
      return "(" + node_->factor.to_string() + ") * " + node_->children[0].describe();
    case Kind::conjugate:
      return "exp(" + to_string(node_->parameter) + " * " + node_->children[0].describe() +
             ") o " + node_->children[1].describe() + " o exp(-" + to_string(node_->parameter) +
             " * " + node_->children[0].describe() + ")";
  }
  return "0";
}

// ---------------------------------------------------------------------------

MonomialNilpotency homogeneous_nilpotency(const HomogeneousDerivation& d, const LatticePoint& m) {
  if (d.lambda == 0) return {true, 1};
  const Integer a = pairing(m, d.rho);
  const Integer b = pairing(d.e, d.rho);
  // The factor <m + i e, rho> = a + i b vanishes for some i >= 0 or never.
  if (b == 0) return a == 0 ? MonomialNilpotency{true, 1} : MonomialNilpotency{false, 0};
  if (a % b != 0) return {false, 0};
  Integer i = -a / b;
  if (i < 0) return {false, 0};
  return {true, static_cast<std::size_t>(i.get_ui()) + 1};
}

DerivationEngine::DerivationEngine(AffineMonoid monoid, AlgebraMode mode, std::size_t max_iter)
    : monoid_(std::move(monoid)), mode_(mode), max_iter_(max_iter) {
  if (max_iter_ == 0) throw DomainError("max_iter must be positive");
}

bool DerivationEngine::in_algebra(const LatticePoint& m) const {
  switch (mode_) {
    case AlgebraMode::strict:
      return monoid_.in_saturation(m) && monoid_.contains(m);
    case AlgebraMode::normalization:
      return monoid_.in_saturation(m);
    case AlgebraMode::laurent:
      return true;
  }
  return true;
}

void DerivationEngine::require_in_algebra(const AlgebraElement& f, const std::string& context) const {
  for (const auto& [m, c] : f.terms())
    if (!in_algebra(m))
      throw ClosureError(context + ": monomial x^" + to_string(m) + " is outside the " +
                             to_string(mode_) + " algebra",
                         to_string(m));
}

AlgebraElement DerivationEngine::apply(const HomogeneousDerivation& d, const AlgebraElement& f) const {
  return apply(Derivation::homogeneous(d), f);
}

AlgebraElement DerivationEngine::apply(const Derivation& d, const AlgebraElement& f) const {
  if (f.rank() != monoid_.rank()) throw DimensionError("algebra element has wrong rank");
  require_in_algebra(f, "argument");
  AlgebraElement out = apply_unchecked(d, f);
  require_in_algebra(out, "image of " + d.describe());
  return out;
}

AlgebraElement DerivationEngine::apply_unchecked(const Derivation& d, const AlgebraElement& f) const {
  AlgebraElement out(f.rank());
  switch (d.kind()) {
    case Derivation::Kind::zero:
      return out;
    case Derivation::Kind::homogeneous: {
      const auto& h = d.as_homogeneous();
      if (h.rho.size() != f.rank() || h.e.size() != f.rank())
        throw DimensionError("derivation and element ranks differ");
      for (const auto& [m, c] : f.terms()) out += c * h.on_monomial(m);
      return out;
    }
    case Derivation::Kind::sum:
      for (const auto& child : d.children()) out += apply_unchecked(child, f);
      return out;
    case Derivation::Kind::replica:
      return d.factor() * apply_unchecked(d.children()[0], f);
    case Derivation::Kind::conjugate: {
      const Derivation& by = d.children()[0];
      AlgebraElement g = exponential(by, -d.parameter(), f);
      AlgebraElement dg = apply_unchecked(d.children()[1], g);
      require_in_algebra(dg, "inner image of " + d.describe());
      return exponential(by, d.parameter(), dg);
    }
  }
  return out;
}

std::optional<std::size_t> DerivationEngine::nilpotency_index(const Derivation& d,
                                                              const AlgebraElement& f,
                                                              std::optional<std::size_t> limit) const {
  const std::size_t cap = limit.value_or(max_iter_);
  AlgebraElement cur = f;
  for (std::size_t k = 0; k <= cap; ++k) {
    if (cur.is_zero()) return k;
    if (k == cap) break;
    cur = apply(d, cur);
  }
  return std::nullopt;
}

AlgebraElement DerivationEngine::exponential(const Derivation& d, const Rational& t,
                                             const AlgebraElement& f) const {
  AlgebraElement total(f.rank());
  AlgebraElement term = f;
  Rational scale = 1;
  for (std::size_t k = 0; k <= max_iter_; ++k) {
    if (term.is_zero()) return total;
    total += scale * term;
    if (k == max_iter_) break;
    term = apply(d, term);
    scale *= t;
    scale /= Rational(static_cast<unsigned long>(k + 1));
  }
  throw DomainError("exponential: " + d.describe() + " is not nilpotent on " + f.to_string() +
                    " within " + std::to_string(max_iter_) + " steps");
}

Derivation DerivationEngine::replica(const AlgebraElement& f, const Derivation& d) const {
  require_in_algebra(f, "replica factor");
  if (!apply(d, f).is_zero())
    throw DomainError("replica factor " + f.to_string() + " is not in the kernel of " + d.describe());
  return Derivation::replica(f, d);
}

namespace {

// Layer functional of a derivation built from one homogeneous piece.
std::optional<DualVector> leading_rho(const Derivation& d) {
  switch (d.kind()) {
    case Derivation::Kind::homogeneous:
      return d.as_homogeneous().rho;
    case Derivation::Kind::replica:
      return leading_rho(d.children()[0]);
    case Derivation::Kind::sum:
      for (const auto& c : d.children())
        if (auto r = leading_rho(c)) return r;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

SliceSumReport DerivationEngine::sum_with_slice_check(const HomogeneousDerivation& d,
                                                      const LatticePoint& slice,
                                                      const Derivation& other,
                                                      const std::vector<LatticePoint>& samples) const {
  SliceSumReport rep;
  rep.slice = slice;
  const Derivation total = Derivation::sum({Derivation::homogeneous(d), other});
  const AlgebraElement s = AlgebraElement::monomial(slice);
  rep.slice_in_kernel = apply(other, s).is_zero();
  rep.slice_preserved = apply(total, s) == AlgebraElement::constant(slice.size(), 1);

  rep.layer_functional = leading_rho(other);
  const DualVector layer = rep.layer_functional.value_or(d.rho);
  std::map<Integer, LayerProfile> layers;
  for (const auto& m : samples) {
    SampleOutcome out{m, std::nullopt, pairing(m, layer)};
    const AlgebraElement f = AlgebraElement::monomial(m);
    if (rep.layer_functional) {
      const AlgebraElement own = apply(Derivation::homogeneous(d), f);
      for (const auto& [t, c] : own.terms())
        if (pairing(t, layer) != out.layer) rep.layers_consistent = false;
      const AlgebraElement lowered = apply(other, f);
      for (const auto& [t, c] : lowered.terms())
        if (pairing(t, layer) != out.layer - 1) rep.layers_consistent = false;
    }
    out.index = nilpotency_index(total, f);
    if (!out.index) rep.all_nilpotent = false;
    auto& lp = layers[out.layer];
    lp.layer = out.layer;
    lp.samples += 1;
    if (out.index) lp.max_index = std::max(lp.max_index, *out.index);
    rep.samples.push_back(std::move(out));
  }
  for (auto& [k, v] : layers) rep.layers.push_back(v);
  return rep;
}

bool DerivationEngine::vanishes_on_face(const Derivation& d, const MFace& face, const Integer& bound,
                                        LatticePoint* counterexample) const {
  for (const auto& m : monoid_.cone_points_up_to(bound)) {
    if (!face.contains(m) || !in_algebra(m)) continue;
    if (!apply(d, AlgebraElement::monomial(m)).is_zero()) {
      if (counterexample) *counterexample = m;
      return false;
    }
  }
  return true;
}

}  // namespace mltoric
