#include "dopsym/invariant_ops.hpp"

#include <algorithm>
#include <map>

#include "dopsym/errors.hpp"

namespace dopsym {

namespace {

Rat sgn(unsigned i) { return (i % 2 == 0) ? Rat(1) : Rat(-1); }

// Σ (-1)^i d^i ∘ b_i as a coefficient list
std::vector<CoefficientFunction> alternating_adjoint(const std::vector<CoefficientFunction>& b,
                                                     Space s) {
  std::vector<CoefficientFunction> out(b.size(), CoefficientFunction::zero(s));
  for (unsigned i = 0; i < b.size(); ++i) {
    if (b[i].is_zero()) continue;
    for (unsigned m = 0; m <= i; ++m) {
      out[m] = out[m] + (sgn(i) * binomial(i, m)) * ring_diff(b[i], i - m);
    }
  }
  return out;
}

void require_weights(const DensityOperator& a, const std::optional<Rat>& lambda,
                     const std::optional<Rat>& mu, const char* what) {
  if ((lambda && a.lambda() != *lambda) || (mu && a.mu() != *mu)) {
    std::string need = std::string(what) + " needs";
    if (lambda) need += " lambda = " + lambda->str();
    if (mu) need += std::string(lambda ? "," : "") + " mu = " + mu->str();
    throw InapplicableSymmetry(need + "; got (" + a.lambda().str() + ", " + a.mu().str() + ")");
  }
}

void require_order(const DensityOperator& a, unsigned k, const char* what) {
  if (a.order() > k) {
    throw Error(std::string(what) + ": operator of order " + std::to_string(a.order()) +
                " is outside D^" + std::to_string(k));
  }
}

}  // namespace

DensityOperator conjugate(const DensityOperator& a) {
  return {Rat(1) - a.mu(), Rat(1) - a.lambda(), alternating_adjoint(a.coeffs(), a.space())};
}

DensityOperator p0(const DensityOperator& a) {
  require_weights(a, Rat(0), std::nullopt, "P0");
  return {a.lambda(), a.mu(), {a.coeff(0)}};
}

DensityOperator p0_star(const DensityOperator& a) {
  require_weights(a, std::nullopt, Rat(1), "P0*");
  CoefficientFunction f = CoefficientFunction::zero(a.space());
  for (unsigned i = 0; i <= a.order(); ++i) f = f + sgn(i) * ring_diff(a.coeffs()[i], i);
  return {a.lambda(), a.mu(), {f}};
}

DensityOperator p1(const DensityOperator& a) {
  require_weights(a, Rat(0), Rat(1), "P1");
  CoefficientFunction f = CoefficientFunction::zero(a.space());
  for (unsigned i = 1; i <= a.order(); ++i) f = f + sgn(i - 1) * ring_diff(a.coeffs()[i], i - 1);
  return {a.lambda(), a.mu(), {CoefficientFunction::zero(a.space()), f}};
}

DensityOperator nonlocal_L(const DensityOperator& a) {
  require_weights(a, Rat(0), Rat(1), "L");
  if (a.space() != Space::circle) {
    throw UnsupportedFunctional("L integrates a_0 over the circle; it does not exist on the line");
  }
  const Rat m = circle_mean(a.coeff(0));
  return {a.lambda(), a.mu(),
          {CoefficientFunction::zero(Space::circle), CoefficientFunction::constant(Space::circle, m)}};
}

DensityOperator s_map(const DensityOperator& a) {
  require_weights(a, Rat(0), Rat(0), "S");
  std::vector<CoefficientFunction> b;
  for (unsigned i = 0; i <= a.order(); ++i) b.push_back(a.coeff(i) + ring_diff(a.coeff(i + 1)));
  return {a.lambda(), a.mu(), alternating_adjoint(b, a.space())};
}

DensityOperator s_star(const DensityOperator& a) {
  require_weights(a, Rat(1), Rat(1), "S*");
  return conjugate(s_map(conjugate(a)));
}

DensityOperator delta_compose(const DensityOperator& a) {
  require_weights(a, Rat(1), std::nullopt, "delta");
  std::vector<CoefficientFunction> c{CoefficientFunction::zero(a.space())};
  for (const auto& f : a.coeffs()) c.push_back(f);
  return {Rat(0), a.mu(), std::move(c)};
}

DensityOperator delta_inverse(const DensityOperator& a) {
  require_weights(a, Rat(0), std::nullopt, "delta^-1");
  if (!a.coeff(0).is_zero()) throw NotInKernel("delta^-1 needs a_0 = 0");
  std::vector<CoefficientFunction> c(a.coeffs().begin() + 1, a.coeffs().end());
  if (c.empty()) c.push_back(CoefficientFunction::zero(a.space()));
  return {Rat(1), a.mu(), std::move(c)};
}

Density pi_delta(const DensityOperator& a) {
  require_weights(a, Rat(0), Rat(1), "pi_delta");
  const DensityOperator reduced = a - p0(a);
  const DensityOperator c = conjugate(delta_inverse(reduced));
  return {Rat(0), p0(c).coeff(0)};
}

// ---- projections ----

std::string to_string(ProjectionKind k) {
  switch (k) {
    case ProjectionKind::principal_symbol: return "sigma";
    case ProjectionKind::v_map: return "V";
    case ProjectionKind::w_map: return "W";
    case ProjectionKind::wilmod_a: return "wilmodA";
    case ProjectionKind::wilmod_b: return "wilmodB";
    case ProjectionKind::p0: return "P0";
    case ProjectionKind::pi_delta: return "piDelta";
  }
  return "?";
}

bool satisfies_hk(unsigned k, const Rat& lambda, const Rat& mu) {
  const Rat kk(static_cast<long>(k));
  return (lambda + (kk - 2) / 3) * (mu - (kk + 1) / 3) + (kk + 1) * (kk - 2) / 36 == Rat(0);
}

bool is_wilmod(unsigned k, const Rat& lambda, const Rat& mu) {
  const Rat kk(static_cast<long>(k));
  return lambda == (Rat(1) - kk) / 2 && mu == (Rat(1) + kk) / 2;
}

bool projection_applicable(ProjectionKind kind, unsigned k, const Rat& lambda, const Rat& mu) {
  switch (kind) {
    case ProjectionKind::principal_symbol: return true;
    case ProjectionKind::v_map: return k >= 1;
    case ProjectionKind::w_map: return k >= 3 && satisfies_hk(k, lambda, mu);
    case ProjectionKind::wilmod_a:
    case ProjectionKind::wilmod_b: return k >= 1 && is_wilmod(k, lambda, mu);
    case ProjectionKind::p0: return lambda == Rat(0);
    case ProjectionKind::pi_delta: return lambda == Rat(0) && mu == Rat(1);
  }
  return false;
}

ProjectionSpec make_projection(ProjectionKind kind, unsigned k, const Rat& lambda, const Rat& mu) {
  if (!projection_applicable(kind, k, lambda, mu)) {
    throw InapplicableSymmetry("projection " + to_string(kind) + " is not defined on D^" +
                               std::to_string(k) + "_{" + lambda.str() + "," + mu.str() + "}");
  }
  return projection_formula(kind, k, lambda, mu);
}

ProjectionSpec projection_formula(ProjectionKind kind, unsigned k, const Rat& lambda, const Rat& mu) {
  ProjectionSpec p{kind, k, lambda, mu, {}};
  const Rat kk(static_cast<long>(k));
  switch (kind) {
    case ProjectionKind::principal_symbol:
      p.coefficients = {Rat(1)};
      break;
    case ProjectionKind::v_map:
      p.coefficients = {lambda * kk + kk * (kk - 1) / 2, mu - lambda - kk};
      break;
    case ProjectionKind::w_map: {
      const Rat t = kk + 3 * lambda - 2;
      p.coefficients = {Rat(2, 3) * kk * (kk - 1) * t * t,
                        Rat(2) * (kk - 1) * t * (Rat(2) - 2 * lambda - kk),
                        3 * kk * kk + 12 * lambda * kk + 12 * lambda * lambda - 11 * kk -
                            24 * lambda + 10};
      break;
    }
    default:
      break;
  }
  return p;
}

Rat ProjectionSpec::target_weight() const {
  const Rat kk(static_cast<long>(k));
  switch (kind) {
    case ProjectionKind::principal_symbol: return mu - lambda - kk;
    case ProjectionKind::v_map: return mu - lambda - kk + 1;
    case ProjectionKind::w_map: return mu - lambda - kk + 2;
    case ProjectionKind::wilmod_a:
    case ProjectionKind::wilmod_b: return Rat(1);
    case ProjectionKind::p0: return mu;
    case ProjectionKind::pi_delta: return Rat(0);
  }
  return Rat(0);
}

Density project(const ProjectionSpec& p, const DensityOperator& a) {
  if (a.lambda() != p.lambda || a.mu() != p.mu) {
    throw WeightMismatch("projection " + to_string(p.kind) + " is set up for (" + p.lambda.str() +
                         ", " + p.mu.str() + ")");
  }
  require_order(a, p.k, "projection");
  const unsigned k = p.k;
  const auto& c = p.coefficients;
  CoefficientFunction v = CoefficientFunction::zero(a.space());
  switch (p.kind) {
    case ProjectionKind::principal_symbol:
      v = a.coeff(k);
      break;
    case ProjectionKind::v_map:
      v = c[0] * ring_diff(a.coeff(k)) + c[1] * a.coeff(k - 1);
      break;
    case ProjectionKind::w_map:
      v = c[0] * ring_diff(a.coeff(k), 2) + c[1] * ring_diff(a.coeff(k - 1)) +
          c[2] * a.coeff(k - 2);
      break;
    case ProjectionKind::wilmod_a:
      v = ring_diff(a.coeff(k));
      break;
    case ProjectionKind::wilmod_b:
      v = a.coeff(k - 1);
      break;
    case ProjectionKind::p0:
      v = a.coeff(0);
      break;
    case ProjectionKind::pi_delta:
      return pi_delta(a);
  }
  return {p.target_weight(), v};
}

Density sigma_map(const DensityOperator& a, unsigned k) {
  return project(make_projection(ProjectionKind::principal_symbol, k, a.lambda(), a.mu()), a);
}

Density v_map(const DensityOperator& a, unsigned k) {
  return project(make_projection(ProjectionKind::v_map, k, a.lambda(), a.mu()), a);
}

Density w_map(const DensityOperator& a, unsigned k) {
  return project(make_projection(ProjectionKind::w_map, k, a.lambda(), a.mu()), a);
}

std::pair<Density, Density> wilmod_projections(const DensityOperator& a, unsigned k) {
  return {project(make_projection(ProjectionKind::wilmod_a, k, a.lambda(), a.mu()), a),
          project(make_projection(ProjectionKind::wilmod_b, k, a.lambda(), a.mu()), a)};
}

// ---- bilinear ----

std::string to_string(BilinearKind k) {
  switch (k) {
    case BilinearKind::product: return "product";
    case BilinearKind::poisson: return "poisson";
    case BilinearKind::d_left: return "d_left";
    case BilinearKind::d_right: return "d_right";
    case BilinearKind::d_outer: return "d_outer";
    case BilinearKind::dd_inner: return "dd_inner";
    case BilinearKind::d_d_left: return "d_d_left";
    case BilinearKind::d_d_right: return "d_d_right";
    case BilinearKind::grozman: return "grozman";
  }
  return "?";
}

const std::vector<BilinearKind>& all_bilinear_kinds() {
  static const std::vector<BilinearKind> kinds{
      BilinearKind::product,  BilinearKind::poisson,  BilinearKind::d_left,
      BilinearKind::d_right,  BilinearKind::d_outer,  BilinearKind::dd_inner,
      BilinearKind::d_d_left, BilinearKind::d_d_right, BilinearKind::grozman};
  return kinds;
}

BilinearKind parse_bilinear_kind(const std::string& s) {
  for (auto k : all_bilinear_kinds()) {
    if (to_string(k) == s) return k;
  }
  throw ParseError("unknown bilinear operator '" + s + "'");
}

unsigned BilinearOp::order() const {
  switch (kind) {
    case BilinearKind::product: return 0;
    case BilinearKind::poisson: return 1;
    case BilinearKind::d_left:
    case BilinearKind::d_right:
    case BilinearKind::d_outer: return 2;
    default: return 3;
  }
}

bool bilinear_admissible(BilinearKind kind, const Rat& nu, const Rat& lambda) {
  switch (kind) {
    case BilinearKind::product:
    case BilinearKind::poisson: return true;
    case BilinearKind::d_left: return nu == Rat(0);
    case BilinearKind::d_right: return lambda == Rat(0);
    case BilinearKind::d_outer: return nu + lambda == Rat(-1);
    case BilinearKind::dd_inner: return nu == Rat(0) && lambda == Rat(0);
    case BilinearKind::d_d_left: return nu == Rat(0) && lambda == Rat(-2);
    case BilinearKind::d_d_right: return nu == Rat(-2) && lambda == Rat(0);
    case BilinearKind::grozman: return nu == Rat(-2, 3) && lambda == Rat(-2, 3);
  }
  return false;
}

BilinearOp make_bilinear(BilinearKind kind, const Rat& nu, const Rat& lambda) {
  if (!bilinear_admissible(kind, nu, lambda)) {
    throw WeightMismatch("bilinear operator " + to_string(kind) + " is not invariant on F_" +
                         nu.str() + " x F_" + lambda.str());
  }
  return {kind, nu, lambda};
}

std::vector<CoefficientFunction> bilinear_coeffs(const BilinearOp& j, const CoefficientFunction& phi) {
  const Space s = phi.space();
  const auto zero = CoefficientFunction::zero(s);
  auto d = [&](unsigned n) { return ring_diff(phi, n); };
  const Rat& nu = j.nu;
  const Rat& la = j.lambda;
  switch (j.kind) {
    case BilinearKind::product: return {phi};
    case BilinearKind::poisson: return {-la * d(1), nu * phi};
    case BilinearKind::d_left: return {-la * d(2), d(1)};
    case BilinearKind::d_right: return {zero, -d(1), nu * phi};
    case BilinearKind::d_outer: return {-la * d(2), (nu - la) * d(1), nu * phi};
    case BilinearKind::dd_inner: return {zero, -d(2), d(1)};
    case BilinearKind::d_d_left: return {Rat(2) * d(3), Rat(3) * d(2), d(1)};
    case BilinearKind::d_d_right: return {zero, -d(2), Rat(-3) * d(1), Rat(-2) * phi};
    case BilinearKind::grozman: return {Rat(-2) * d(3), Rat(-3) * d(2), Rat(3) * d(1), Rat(2) * phi};
  }
  return {zero};
}

Density bilinear_apply(const BilinearOp& j, const Density& phi, const Density& psi) {
  if (phi.weight != j.nu || psi.weight != j.lambda) {
    throw WeightMismatch(to_string(j.kind) + " expects weights (" + j.nu.str() + ", " +
                         j.lambda.str() + ")");
  }
  const DensityOperator op(j.lambda, j.output_weight(), bilinear_coeffs(j, phi.value));
  return apply(op, psi);
}

// ---- endomorphisms ----

DensityOperator Endomorphism::operator()(const DensityOperator& a) const {
  if (a.lambda() != lambda || a.mu() != mu) {
    throw WeightMismatch(name + " acts on D_{" + lambda.str() + "," + mu.str() + "}, got D_{" +
                         a.lambda().str() + "," + a.mu().str() + "}");
  }
  require_order(a, k, name.c_str());
  DensityOperator out = fn(a);
  if (out.lambda() != lambda || out.mu() != mu) {
    throw WeightMismatch(name + " left its module");
  }
  if (out.order() > k) {
    throw Error(name + " raised the order above " + std::to_string(k));
  }
  return out;
}

Endomorphism scaled(const Endomorphism& t, const Rat& s) {
  Endomorphism out = t;
  auto f = t.fn;
  out.fn = [f, s](const DensityOperator& a) { return s * f(a); };
  return out;
}

Endomorphism symmetry_from_projection(const BilinearOp& j, const ProjectionSpec& pi,
                                      const Rat& scale, std::string name) {
  if (j.nu != pi.target_weight() || j.lambda != pi.lambda || j.output_weight() != pi.mu) {
    throw WeightMismatch("weight chain broken: " + to_string(pi.kind) + " lands in F_" +
                         pi.target_weight().str() + ", " + to_string(j.kind) + " maps F_" +
                         j.nu.str() + " x F_" + j.lambda.str() + " to F_" +
                         j.output_weight().str() + ", module is D_{" + pi.lambda.str() + "," +
                         pi.mu.str() + "}");
  }
  if (name.empty()) name = to_string(j.kind) + "o" + to_string(pi.kind);
  Endomorphism e;
  e.name = std::move(name);
  e.k = pi.k;
  e.lambda = pi.lambda;
  e.mu = pi.mu;
  e.fn = [j, pi, scale](const DensityOperator& a) {
    const Density phi = project(pi, a);
    auto c = bilinear_coeffs(j, scale * phi.value);
    return DensityOperator(pi.lambda, pi.mu, std::move(c));
  };
  return e;
}

namespace {

// y = s x ? (x nonzero)
std::optional<Rat> proportionality(const DensityOperator& y, const DensityOperator& x) {
  if (x.is_zero()) return std::nullopt;
  if (y.is_zero()) return Rat(0);
  std::optional<Rat> s;
  for (unsigned i = 0; i <= x.order(); ++i) {
    const auto& xi = x.coeffs()[i].poly().coeffs();
    for (std::size_t m = 0; m < xi.size(); ++m) {
      if (!xi[m].is_zero()) {
        s = y.coeff(i).poly().coeff(static_cast<unsigned>(m)) / xi[m];
        break;
      }
    }
    if (s) break;
  }
  if (!s || !(y == *s * x)) return std::nullopt;
  return s;
}

}  // namespace

std::optional<Rat> square_factor(const Endomorphism& t) {
  std::optional<Rat> found;
  for (unsigned i = 0; i <= t.k; ++i) {
    for (unsigned m = 0; m <= t.k + 4; ++m) {
      const auto a = DensityOperator::monomial(t.lambda, t.mu, i, PolyFn::monomial(m));
      const auto ta = t(a);
      if (ta.is_zero()) continue;
      const auto s = proportionality(t(ta), ta);
      if (!s) return std::nullopt;
      if (found && *found != *s) return std::nullopt;
      found = s;
    }
  }
  return found;
}

Endomorphism idempotent_normalised(const Endomorphism& t) {
  const auto s = square_factor(t);
  if (!s || s->is_zero()) return t;
  return scaled(t, Rat(1) / *s);
}

Endomorphism delta_transport(const Endomorphism& t) {
  if (t.lambda != Rat(1)) throw InapplicableSymmetry("delta transport needs a map on D_{1,mu}");
  Endomorphism e;
  e.name = "delta(" + t.name + ")";
  e.k = t.k + 1;
  e.lambda = Rat(0);
  e.mu = t.mu;
  e.nonlocal = t.nonlocal;
  e.circle_only = t.circle_only;
  e.fn = [t](const DensityOperator& a) { return delta_compose(t(delta_inverse(a - p0(a)))); };
  return e;
}

Endomorphism conjugation_transport(const Endomorphism& t) {
  Endomorphism e;
  e.name = "C(" + t.name + ")";
  e.k = t.k;
  e.lambda = Rat(1) - t.mu;
  e.mu = Rat(1) - t.lambda;
  e.nonlocal = t.nonlocal;
  e.circle_only = t.circle_only;
  e.fn = [t](const DensityOperator& a) { return conjugate(t(conjugate(a))); };
  return e;
}

std::vector<Endomorphism> projection_symmetries(unsigned k, const Rat& lambda, const Rat& mu) {
  static const std::vector<ProjectionKind> kinds{
      ProjectionKind::principal_symbol, ProjectionKind::v_map,    ProjectionKind::w_map,
      ProjectionKind::wilmod_a,         ProjectionKind::wilmod_b, ProjectionKind::pi_delta};
  std::vector<Endomorphism> out;
  for (auto pk : kinds) {
    if (!projection_applicable(pk, k, lambda, mu)) continue;
    const ProjectionSpec pi = make_projection(pk, k, lambda, mu);
    const Rat nu = pi.target_weight();
    struct Cand {
      BilinearKind kind;
      std::string special;
    };
    std::vector<Cand> cands;
    for (auto bk : all_bilinear_kinds()) {
      if (!bilinear_admissible(bk, nu, lambda)) continue;
      const BilinearOp j{bk, nu, lambda};
      if (j.output_weight() != mu) continue;
      std::string special;
      if (pk == ProjectionKind::v_map && bk == BilinearKind::poisson) special = "calV";
      if (pk == ProjectionKind::w_map && bk == BilinearKind::poisson) special = "calW";
      if (pk == ProjectionKind::v_map && bk == BilinearKind::grozman) special = "GV";
      if (pk == ProjectionKind::principal_symbol && bk == BilinearKind::grozman) special = "Gsigma";
      cands.push_back({bk, special});
    }
    std::string base;
    switch (pk) {
      case ProjectionKind::principal_symbol: base = "Jsigma"; break;
      case ProjectionKind::v_map: base = "JV"; break;
      case ProjectionKind::w_map: base = "JW"; break;
      case ProjectionKind::wilmod_a: base = "JwilmodA"; break;
      case ProjectionKind::wilmod_b: base = "JwilmodB"; break;
      default: base = "J" + to_string(pk); break;
    }
    const auto plain = std::count_if(cands.begin(), cands.end(),
                                     [](const Cand& c) { return c.special.empty(); });
    for (const auto& c : cands) {
      std::string name = c.special;
      if (name.empty()) name = plain > 1 ? base + "[" + to_string(c.kind) + "]" : base;
      const Rat scale = name == "calW" ? Rat(1, 4) : Rat(1);
      Endomorphism e = symmetry_from_projection(BilinearOp{c.kind, nu, lambda}, pi, scale, name);
      if (name.rfind("JW", 0) == 0 || name == "GV" || name == "Gsigma") e = idempotent_normalised(e);
      out.push_back(std::move(e));
    }
  }
  return out;
}

const std::vector<std::string>& catalog_endomorphism_names() {
  static const std::vector<std::string> names{"Id",  "C",      "P0", "P0star", "P1",
                                              "L",   "S",      "Sstar", "JW",  "JV",
                                              "Jsigma", "GV",  "Gsigma", "calW", "calV",
                                              "JwilmodA", "JwilmodB"};
  return names;
}

Endomorphism catalog_endomorphism(const std::string& name, unsigned k, const Rat& lambda,
                                  const Rat& mu) {
  Endomorphism e;
  e.name = name;
  e.k = k;
  e.lambda = lambda;
  e.mu = mu;
  auto fail = [&](const std::string& why) -> Endomorphism {
    throw InapplicableSymmetry(name + " is not a symmetry of D^" + std::to_string(k) + "_{" +
                               lambda.str() + "," + mu.str() + "}: " + why);
  };
  if (name == "Id") {
    e.fn = [](const DensityOperator& a) { return a; };
  } else if (name == "C") {
    if (lambda + mu != Rat(1)) return fail("needs lambda + mu = 1");
    e.fn = conjugate;
  } else if (name == "P0") {
    if (lambda != Rat(0)) return fail("needs lambda = 0");
    e.fn = p0;
  } else if (name == "P0star") {
    if (mu != Rat(1)) return fail("needs mu = 1");
    e.fn = p0_star;
  } else if (name == "P1") {
    if (lambda != Rat(0) || mu != Rat(1)) return fail("needs (0,1)");
    e.fn = p1;
  } else if (name == "L") {
    if (lambda != Rat(0) || mu != Rat(1)) return fail("needs (0,1)");
    if (k < 1) return fail("needs k >= 1");
    e.fn = nonlocal_L;
    e.nonlocal = true;
    e.circle_only = true;
  } else if (name == "S") {
    if (lambda != Rat(0) || mu != Rat(0)) return fail("needs (0,0)");
    e.fn = s_map;
  } else if (name == "Sstar") {
    if (lambda != Rat(1) || mu != Rat(1)) return fail("needs (1,1)");
    e.fn = s_star;
  } else {
    for (auto& cand : projection_symmetries(k, lambda, mu)) {
      if (cand.name == name || cand.name.rfind(name + "[", 0) == 0) return cand;
    }
    if (std::find(catalog_endomorphism_names().begin(), catalog_endomorphism_names().end(),
                  name) == catalog_endomorphism_names().end()) {
      throw ParseError("unknown symmetry '" + name + "'");
    }
    return fail("no projection/bilinear pair closes the weight chain");
  }
  return e;
}

}  // namespace dopsym
