#include "dopsym/density.hpp"

#include "dopsym/errors.hpp"

namespace dopsym {

VectorField line_field(unsigned p) { return {PolyFn::monomial(p)}; }
VectorField circle_cos_field(unsigned n) {
  return {n == 0 ? TrigFn::constant(Rat(1)) : TrigFn::cos(n)};
}
VectorField circle_sin_field(unsigned n) {
  if (n == 0) throw Error("sin(0x) d/dx is the zero field");
  return {TrigFn::sin(n)};
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  return {x.value * ring_diff(y.value) - y.value * ring_diff(x.value)};
}

DensityOperator::DensityOperator(Rat lambda, Rat mu, std::vector<CoefficientFunction> coeffs)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), c_(std::move(coeffs)) {
  if (c_.empty()) throw Error("an operator needs at least one coefficient; use zero()");
  space_ = c_.front().space();
  for (const auto& c : c_) {
    if (c.space() != space_) throw RingMismatch("operator coefficients on mixed spaces");
  }
  normalize();
}

DensityOperator DensityOperator::zero(Rat lambda, Rat mu, Space s) {
  return {std::move(lambda), std::move(mu), {CoefficientFunction::zero(s)}};
}

DensityOperator DensityOperator::identity(Rat lambda, Space s) {
  Rat mu = lambda;
  return {std::move(lambda), std::move(mu), {CoefficientFunction::constant(s, Rat(1))}};
}

DensityOperator DensityOperator::monomial(Rat lambda, Rat mu, unsigned i, CoefficientFunction a) {
  const Space s = a.space();
  std::vector<CoefficientFunction> c(i + 1, CoefficientFunction::zero(s));
  c[i] = std::move(a);
  return {std::move(lambda), std::move(mu), std::move(c)};
}

void DensityOperator::normalize() {
  while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
}

CoefficientFunction DensityOperator::coeff(unsigned i) const {
  return i < c_.size() ? c_[i] : CoefficientFunction::zero(space_);
}

namespace {

void require_same_module(const DensityOperator& a, const DensityOperator& b) {
  if (a.space() != b.space()) throw RingMismatch("operators on different spaces");
  if (a.lambda() != b.lambda() || a.mu() != b.mu()) {
    throw WeightMismatch("operators act between different density spaces");
  }
}

}  // namespace

DensityOperator operator+(const DensityOperator& a, const DensityOperator& b) {
  require_same_module(a, b);
  const std::size_t n = std::max(a.c_.size(), b.c_.size());
  std::vector<CoefficientFunction> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.push_back(a.coeff(static_cast<unsigned>(i)) + b.coeff(static_cast<unsigned>(i)));
  }
  return {a.lambda_, a.mu_, std::move(c)};
}

DensityOperator operator-(const DensityOperator& a, const DensityOperator& b) {
  return a + Rat(-1) * b;
}

DensityOperator operator*(const Rat& s, const DensityOperator& a) {
  std::vector<CoefficientFunction> c;
  c.reserve(a.c_.size());
  for (const auto& f : a.c_) c.push_back(s * f);
  return {a.lambda_, a.mu_, std::move(c)};
}

bool operator==(const DensityOperator& a, const DensityOperator& b) {
  return a.space_ == b.space_ && a.lambda_ == b.lambda_ && a.mu_ == b.mu_ && a.c_ == b.c_;
}

Density apply(const DensityOperator& a, const Density& phi) {
  if (phi.weight != a.lambda()) {
    throw WeightMismatch("density of weight " + phi.weight.str() + " fed to an operator on " +
                         a.lambda().str() + "-densities");
  }
  if (phi.space() != a.space()) throw RingMismatch("density and operator on different spaces");
  CoefficientFunction out = CoefficientFunction::zero(a.space());
  for (unsigned i = 0; i <= a.order(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    out = out + a.coeffs()[i] * ring_diff(phi.value, i);
  }
  return {a.mu(), out};
}

DensityOperator compose(const DensityOperator& a, const DensityOperator& b) {
  if (b.mu() != a.lambda()) {
    throw WeightMismatch("cannot compose: inner target weight " + b.mu().str() +
                         " differs from outer source weight " + a.lambda().str());
  }
  if (a.space() != b.space()) throw RingMismatch("operators on different spaces");
  const Space s = a.space();
  std::vector<CoefficientFunction> out(a.order() + b.order() + 1, CoefficientFunction::zero(s));
  // (a_i d^i)(b_j d^j) = Σ_m C(i,m) a_i b_j^{(i-m)} d^{m+j}
  for (unsigned i = 0; i <= a.order(); ++i) {
    const auto& ai = a.coeffs()[i];
    if (ai.is_zero()) continue;
    for (unsigned j = 0; j <= b.order(); ++j) {
      const auto& bj = b.coeffs()[j];
      if (bj.is_zero()) continue;
      for (unsigned m = 0; m <= i; ++m) {
        const auto d = ring_diff(bj, i - m);
        if (d.is_zero()) continue;
        out[m + j] = out[m + j] + binomial(i, m) * (ai * d);
      }
    }
  }
  return {b.lambda(), a.mu(), std::move(out)};
}

Density lie_derivative_density(const VectorField& x, const Density& phi) {
  return {phi.weight, x.value * ring_diff(phi.value) + phi.weight * (ring_diff(x.value) * phi.value)};
}

DensityOperator lie_operator(const VectorField& x, const Rat& lambda) {
  return {lambda, lambda, {lambda * ring_diff(x.value), x.value}};
}

DensityOperator lie_derivative_operator(const VectorField& x, const DensityOperator& a) {
  if (x.space() != a.space()) throw RingMismatch("field and operator on different spaces");
  return compose(lie_operator(x, a.mu()), a) - compose(a, lie_operator(x, a.lambda()));
}

PolynomialSymbol symbol_action(const VectorField& x, const PolynomialSymbol& p) {
  PolynomialSymbol out{p.delta, {}};
  const auto dx = ring_diff(x.value);
  for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
    const Rat w = Rat(static_cast<long>(j)) - p.delta;
    out.coeffs.push_back(x.value * ring_diff(p.coeffs[j]) - w * (dx * p.coeffs[j]));
  }
  return out;
}

Rat pairing(const Density& phi, const Density& psi) {
  if (phi.space() != Space::circle || psi.space() != Space::circle) {
    throw UnsupportedFunctional("the invariant pairing needs compact support; use the circle");
  }
  if (phi.weight + psi.weight != Rat(1)) {
    throw WeightMismatch("paired weights must sum to 1");
  }
  return circle_mean(phi.value * psi.value);
}

PolynomialSymbol total_symbol(const DensityOperator& a) { return {a.mu() - a.lambda(), a.coeffs()}; }

DensityOperator from_symbol(const PolynomialSymbol& p, const Rat& lambda, const Rat& mu) {
  if (p.delta != mu - lambda) {
    throw WeightMismatch("symbol shift " + p.delta.str() + " does not match mu - lambda");
  }
  return {lambda, mu, p.coeffs};
}

nlohmann::json to_json(const DensityOperator& a) {
  nlohmann::json j;
  j["lambda"] = a.lambda().str();
  j["mu"] = a.mu().str();
  j["space"] = to_string(a.space());
  j["coeffs"] = nlohmann::json::array();
  for (const auto& c : a.coeffs()) j["coeffs"].push_back(to_string(c));
  return j;
}

DensityOperator operator_from_json(const nlohmann::json& j) {
  try {
    const Space s = parse_space(j.at("space").get<std::string>());
    std::vector<CoefficientFunction> c;
    for (const auto& e : j.at("coeffs")) {
      auto f = parse_coefficient(e.get<std::string>());
      if (f.space() != s) throw RingMismatch("coefficient does not live on the declared space");
      c.push_back(std::move(f));
    }
    if (c.empty()) c.push_back(CoefficientFunction::zero(s));
    return {Rat::parse(j.at("lambda").get<std::string>()), Rat::parse(j.at("mu").get<std::string>()),
            std::move(c)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed operator JSON: ") + e.what());
  }
}

std::string to_string(const DensityOperator& a) { return to_json(a).dump(); }

}  // namespace dopsym
