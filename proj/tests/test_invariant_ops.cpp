#include <doctest.h>

#include "dopsym/errors.hpp"
#include "dopsym/invariant_ops.hpp"
#include "support.hpp"

using namespace dopsym;

namespace {

CoefficientFunction xp(unsigned n, const Rat& c = Rat(1)) { return PolyFn::monomial(n, c); }
CoefficientFunction cst(Space s, const Rat& c) { return CoefficientFunction::constant(s, c); }
CoefficientFunction zero(Space s = Space::line) { return CoefficientFunction::zero(s); }
CoefficientFunction d(const CoefficientFunction& f, unsigned n = 1) { return ring_diff(f, n); }

DensityOperator op(const Rat& l, const Rat& m, std::vector<CoefficientFunction> c) {
  return {l, m, std::move(c)};
}

std::vector<VectorField> fields(Space s) {
  if (s == Space::line) {
    return {line_field(0), line_field(1), line_field(2), line_field(3), line_field(4)};
  }
  return {circle_cos_field(0), circle_cos_field(1), circle_sin_field(1), circle_cos_field(2),
          circle_sin_field(3)};
}

/// T(L_X A) = L_X T(A) on random operators, checked directly without matrices.
bool commutes(const Endomorphism& t, Space s, testgen::Rng& rng, int samples = 6) {
  for (int i = 0; i < samples; ++i) {
    const auto a = testgen::op(rng, t.k, t.lambda, t.mu, s, 3);
    for (const auto& x : fields(s)) {
      if (!(t(lie_derivative_operator(x, a)) == lie_derivative_operator(x, t(a)))) return false;
    }
  }
  return true;
}

/// Some s ≠ 0 with y = s x on the sample operators.
bool proportional(const Endomorphism& y, const std::function<DensityOperator(const DensityOperator&)>& x,
                  testgen::Rng& rng) {
  std::optional<Rat> scale;
  for (int i = 0; i < 8; ++i) {
    const auto a = testgen::op(rng, y.k, y.lambda, y.mu, Space::line, 4);
    const auto ya = y(a);
    const auto xa = x(a);
    if (xa.is_zero()) {
      if (!ya.is_zero()) return false;
      continue;
    }
    if (!scale) {
      for (unsigned j = 0; j <= xa.order() && !scale; ++j) {
        const auto& c = xa.coeffs()[j].poly().coeffs();
        for (std::size_t m = 0; m < c.size(); ++m) {
          if (!c[m].is_zero()) {
            scale = ya.coeff(j).poly().coeff(static_cast<unsigned>(m)) / c[m];
            break;
          }
        }
      }
    }
    if (!scale || scale->is_zero() || !(ya == *scale * xa)) return false;
  }
  return scale.has_value();
}

}  // namespace

TEST_SUITE("invariant_ops") {
  TEST_CASE("conjugation") {
    const Rat l(1, 3);
    const Rat m(2, 7);
    const auto a0 = op(l, m, {xp(2)});
    const auto ca0 = conjugate(a0);
    CHECK(ca0.coeffs() == a0.coeffs());
    CHECK(ca0.lambda() == Rat(1) - m);
    CHECK(ca0.mu() == Rat(1) - l);
    CHECK(conjugate(op(l, m, {zero(), xp(0)})).coeffs() ==
          std::vector<CoefficientFunction>{zero(), xp(0, Rat(-1))});
    CHECK(conjugate(op(l, m, {zero(), xp(1)})).coeffs() ==
          std::vector<CoefficientFunction>{xp(0, Rat(-1)), xp(1, Rat(-1))});
  }

  TEST_CASE("conjugation is an involution and the adjoint for the pairing") {
    testgen::Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      const Rat l = testgen::rat(rng);
      const Rat m = testgen::rat(rng);
      for (Space s : {Space::line, Space::circle}) {
        const auto a = testgen::op(rng, 4, l, m, s);
        CHECK(conjugate(conjugate(a)) == a);
      }
      const auto a = testgen::op(rng, 3, l, m, Space::circle);
      const Density phi{Rat(1) - m, testgen::function(rng, Space::circle)};
      const Density psi{l, testgen::function(rng, Space::circle)};
      CHECK(pairing(apply(conjugate(a), phi), psi) == pairing(phi, apply(a, psi)));
    }
  }

  TEST_CASE("P0, P0*, P1") {
    const Space s = Space::line;
    CHECK(p0(op(Rat(0), Rat(3), {xp(1, Rat(3)), zero(), xp(0)})) == op(Rat(0), Rat(3), {xp(1, Rat(3))}));
    CHECK(p0(op(Rat(0), Rat(3), {zero(), xp(0)})).is_zero());
    CHECK_THROWS_AS(p0(op(Rat(1, 2), Rat(1, 2), {xp(0)})), InapplicableSymmetry);

    CHECK(p0_star(op(Rat(2), Rat(1), {zero(), xp(1)})) == op(Rat(2), Rat(1), {cst(s, Rat(-1))}));
    CHECK(p0_star(op(Rat(2), Rat(1), {xp(3)})) == op(Rat(2), Rat(1), {xp(3)}));
    CHECK(p0_star(op(Rat(2), Rat(1), {zero(), zero(), xp(0, Rat(5))})).is_zero());
    CHECK_THROWS_AS(p0_star(op(Rat(2), Rat(2), {xp(0)})), InapplicableSymmetry);

    CHECK(p1(op(Rat(0), Rat(1), {zero(), zero(), xp(2)})) == op(Rat(0), Rat(1), {zero(), xp(1, Rat(-2))}));
    CHECK(p1(op(Rat(0), Rat(1), {xp(4)})).is_zero());
  }

  TEST_CASE("P0 and P0* are idempotent") {
    testgen::Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = testgen::op(rng, 4, Rat(0), Rat(1), Space::circle);
      CHECK(p0(p0(a)) == p0(a));
      CHECK(p0_star(p0_star(a)) == p0_star(a));
    }
  }

  TEST_CASE("nonlocal L") {
    const Space s = Space::circle;
    const auto a = op(Rat(0), Rat(1), {cst(s, Rat(2)) + TrigFn::cos(1), TrigFn::sin(2)});
    CHECK(nonlocal_L(a) == op(Rat(0), Rat(1), {zero(s), cst(s, Rat(2))}));
    CHECK(nonlocal_L(op(Rat(0), Rat(1), {zero(s), cst(s, Rat(1))})).is_zero());
    CHECK_THROWS_AS(nonlocal_L(op(Rat(0), Rat(1), {xp(0)})), UnsupportedFunctional);
    CHECK_THROWS_AS(nonlocal_L(op(Rat(0), Rat(2), {cst(s, Rat(1))})), InapplicableSymmetry);
  }

  TEST_CASE("S and delta") {
    CHECK(s_map(op(Rat(0), Rat(0), {xp(2)})) == op(Rat(0), Rat(0), {xp(2)}));
    CHECK(s_map(op(Rat(0), Rat(0), {zero(), xp(0)})) == op(Rat(0), Rat(0), {zero(), xp(0, Rat(-1))}));
    // Σ (-1)^i d^i ∘ (a_i + a_{i+1}') is the adjoint of the operator with coefficients a_i + a_{i+1}'
    testgen::Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = testgen::op(rng, 3, Rat(0), Rat(0), Space::line);
      const DensityOperator shifted(Rat(0), Rat(0),
                                    {a.coeff(0) + d(a.coeff(1)), a.coeff(1) + d(a.coeff(2)),
                                     a.coeff(2) + d(a.coeff(3)), a.coeff(3)});
      const DensityOperator moved(Rat(1), Rat(1), shifted.coeffs());
      const auto expected = conjugate(moved);
      CHECK(s_map(a).coeffs() == expected.coeffs());
      CHECK(s_map(s_map(a)) == a);
      CHECK(s_map(p0(a)) == p0(a));
      CHECK(p0(s_map(a)) == p0(a));
    }
    const auto b = op(Rat(1), Rat(3, 2), {xp(2), xp(1)});
    const auto db = delta_compose(b);
    CHECK(db == op(Rat(0), Rat(3, 2), {zero(), xp(2), xp(1)}));
    CHECK(delta_inverse(db) == b);
    CHECK_THROWS_AS(delta_inverse(op(Rat(0), Rat(3, 2), {xp(0), xp(1)})), NotInKernel);
  }

  TEST_CASE("pi_delta") {
    CHECK(pi_delta(op(Rat(0), Rat(1), {xp(3)})).value.is_zero());
    CHECK(pi_delta(op(Rat(0), Rat(1), {zero(), xp(0)})).value == xp(0));
    CHECK(pi_delta(op(Rat(0), Rat(1), {zero(), xp(1)})).value == xp(1));
    CHECK(pi_delta(op(Rat(0), Rat(1), {zero(), xp(1)})).weight == Rat(0));
  }

  TEST_CASE("principal symbol and V") {
    const Rat l(1, 3);
    const Rat m(5, 2);
    const auto s = sigma_map(op(l, m, {zero(), xp(0), xp(3)}), 2);
    CHECK(s.value == xp(3));
    CHECK(s.weight == m - l - Rat(2));
    CHECK(sigma_map(op(l, m, {zero(), xp(0)}), 2).value.is_zero());

    const auto wm = make_projection(ProjectionKind::v_map, 2, Rat(-1, 2), Rat(3, 2));
    CHECK(wm.coefficients == std::vector<Rat>{Rat(0), Rat(0)});
    testgen::Rng rng(4);
    CHECK(v_map(testgen::op(rng, 2, Rat(-1, 2), Rat(3, 2), Space::line), 2).value.is_zero());

    const auto v00 = make_projection(ProjectionKind::v_map, 2, Rat(0), Rat(0));
    CHECK(v00.coefficients == std::vector<Rat>{Rat(1), Rat(-2)});
    const auto a = testgen::op(rng, 2, Rat(0), Rat(0), Space::line);
    CHECK(v_map(a, 2) == Density{Rat(-1), d(a.coeff(2)) - Rat(2) * a.coeff(1)});
  }

  TEST_CASE("WilMod pair") {
    const auto [pa, pb] = wilmod_projections(op(Rat(-1, 2), Rat(3, 2), {zero(), xp(1), xp(2)}), 2);
    CHECK(pa == Density{Rat(1), xp(1, Rat(2))});
    CHECK(pb == Density{Rat(1), xp(1)});
    const auto [qa, qb] = wilmod_projections(op(Rat(-1, 2), Rat(3, 2), {xp(1), zero(), xp(0)}), 2);
    CHECK(qa.value.is_zero());
    CHECK(qb.value.is_zero());
    CHECK_THROWS_AS(make_projection(ProjectionKind::wilmod_a, 2, Rat(0), Rat(1)), InapplicableSymmetry);
  }

  TEST_CASE("W coefficients") {
    const auto w = make_projection(ProjectionKind::w_map, 4, Rat(0), Rat(5, 4));
    CHECK(w.coefficients == std::vector<Rat>{Rat(32), Rat(-24), Rat(14)});
    CHECK(w.target_weight() == Rat(5, 4) - Rat(2));
    CHECK_THROWS_AS(make_projection(ProjectionKind::w_map, 4, Rat(1, 3), Rat(1, 5)), InapplicableSymmetry);
    CHECK(w_map(op(Rat(0), Rat(5, 4), {xp(3), xp(1)}), 4).value.is_zero());
    // at k = 3 the coefficients are 4 (3λ+1)², -4 (3λ+1)(1+2λ), 4 (3λ²+3λ+1)
    for (const Rat& l : {Rat(1, 3), Rat(-2, 3), Rat(2, 5)}) {
      const Rat m = (Rat(-1) / (3 * l + 1) + 4) / 3;
      REQUIRE(satisfies_hk(3, l, m));
      const auto w3 = make_projection(ProjectionKind::w_map, 3, l, m);
      const Rat t = 3 * l + 1;
      CHECK(w3.coefficients ==
            std::vector<Rat>{4 * t * t, -4 * t * (1 + 2 * l), 4 * (3 * l * l + 3 * l + 1)});
    }
  }

  TEST_CASE("hk and WilMod predicates") {
    CHECK(satisfies_hk(4, Rat(0), Rat(5, 4)));
    CHECK(satisfies_hk(4, Rat(-1, 4), Rat(1)));
    CHECK(satisfies_hk(3, Rat(-2, 3), Rat(5, 3)));
    CHECK_FALSE(satisfies_hk(4, Rat(0), Rat(1)));
    CHECK(is_wilmod(2, Rat(-1, 2), Rat(3, 2)));
    CHECK(is_wilmod(3, Rat(-1), Rat(2)));
    CHECK_FALSE(is_wilmod(3, Rat(-1, 2), Rat(3, 2)));
  }

  TEST_CASE("bilinear operators") {
    const auto pb = make_bilinear(BilinearKind::poisson, Rat(1), Rat(0));
    CHECK(bilinear_apply(pb, {Rat(1), xp(1)}, {Rat(0), xp(1)}) == Density{Rat(2), xp(1)});
    testgen::Rng rng(5);
    const Rat nu(3, 4);
    const auto pe = make_bilinear(BilinearKind::poisson, nu, nu);
    const auto f = testgen::function(rng, Space::circle);
    CHECK(bilinear_apply(pe, {nu, f}, {nu, f}).value.is_zero());
    const auto g = make_bilinear(BilinearKind::grozman, Rat(-2, 3), Rat(-2, 3));
    CHECK(bilinear_apply(g, {Rat(-2, 3), xp(0)}, {Rat(-2, 3), xp(3)}) ==
          Density{Rat(5, 3), cst(Space::line, Rat(12))});
    CHECK_THROWS_AS(make_bilinear(BilinearKind::grozman, Rat(0), Rat(0)), WeightMismatch);
    CHECK_THROWS_AS(bilinear_apply(pb, {Rat(0), xp(1)}, {Rat(0), xp(1)}), WeightMismatch);
  }

  TEST_CASE("bilinear operators are invariant") {
    testgen::Rng rng(6);
    const std::vector<std::pair<BilinearKind, std::pair<Rat, Rat>>> cases{
        {BilinearKind::product, {Rat(1, 3), Rat(-2)}},  {BilinearKind::poisson, {Rat(2, 5), Rat(1, 7)}},
        {BilinearKind::d_left, {Rat(0), Rat(3, 2)}},     {BilinearKind::d_right, {Rat(5, 3), Rat(0)}},
        {BilinearKind::d_outer, {Rat(1, 4), Rat(-5, 4)}}, {BilinearKind::dd_inner, {Rat(0), Rat(0)}},
        {BilinearKind::d_d_left, {Rat(0), Rat(-2)}},     {BilinearKind::d_d_right, {Rat(-2), Rat(0)}},
        {BilinearKind::grozman, {Rat(-2, 3), Rat(-2, 3)}}};
    for (const auto& [kind, w] : cases) {
      CAPTURE(to_string(kind));
      const auto j = make_bilinear(kind, w.first, w.second);
      for (Space s : {Space::line, Space::circle}) {
        for (int trial = 0; trial < 5; ++trial) {
          const Density phi{w.first, testgen::function(rng, s)};
          const Density psi{w.second, testgen::function(rng, s)};
          for (const auto& x : fields(s)) {
            const auto lhs = lie_derivative_density(x, bilinear_apply(j, phi, psi));
            const auto rhs = bilinear_apply(j, lie_derivative_density(x, phi), psi).value +
                             bilinear_apply(j, phi, lie_derivative_density(x, psi)).value;
            CHECK(lhs.value == rhs);
          }
        }
      }
    }
  }

  TEST_CASE("catalog maps commute with the action") {
    struct Home {
      std::string name;
      unsigned k;
      Rat l;
      Rat m;
    };
    const Rat hl(1, 3);
    const Rat hm = (Rat(-1) / (3 * hl + 1) + 4) / 3;
    const std::vector<Home> homes{
        {"C", 3, Rat(2, 7), Rat(5, 7)},       {"P0", 3, Rat(0), Rat(4, 9)},
        {"P0star", 3, Rat(3, 5), Rat(1)},     {"P1", 3, Rat(0), Rat(1)},
        {"L", 3, Rat(0), Rat(1)},             {"S", 4, Rat(0), Rat(0)},
        {"Sstar", 4, Rat(1), Rat(1)},         {"JW", 4, Rat(0), Rat(5, 4)},
        {"JV", 3, Rat(2, 7), Rat(16, 7)},     {"Jsigma", 3, Rat(0), Rat(3)},
        {"GV", 4, Rat(-2, 3), Rat(5, 3)},     {"Gsigma", 3, Rat(-2, 3), Rat(5, 3)},
        {"calW", 3, hl, hm},                  {"calV", 2, Rat(2, 9), Rat(-3, 5)},
        {"JwilmodA", 2, Rat(-1, 2), Rat(3, 2)}, {"JwilmodB", 2, Rat(-1, 2), Rat(3, 2)}};
    testgen::Rng rng(7);
    for (const auto& h : homes) {
      CAPTURE(h.name);
      const auto t = catalog_endomorphism(h.name, h.k, h.l, h.m);
      CHECK(commutes(t, Space::circle, rng));
      if (!t.circle_only) CHECK(commutes(t, Space::line, rng));
    }
    CHECK_THROWS_AS(catalog_endomorphism("P0", 2, Rat(1, 2), Rat(1, 2)), InapplicableSymmetry);
    CHECK_THROWS_AS(catalog_endomorphism("JW", 4, Rat(1, 3), Rat(1, 5)), InapplicableSymmetry);
  }

  TEST_CASE("explicit generator formulas") {
    testgen::Rng rng(8);
    // (J∘V)(A) = (3(λ+1) a3'' - a2') d - λ (3(λ+1) a3''' - a2'') on μ - λ = 2
    for (const Rat& l : {Rat(2, 7), Rat(-3, 5), Rat(4)}) {
      const Rat m = l + 2;
      const auto jv = catalog_endomorphism("JV", 3, l, m);
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = testgen::op(rng, 3, l, m, Space::circle);
        const auto p = Rat(3) * (l + 1) * d(a.coeff(3), 2) - d(a.coeff(2));
        CHECK(jv(a) == op(l, m, {-l * d(p), p}));
      }
    }
    // (J∘σ)(A) = a3' d² - a3'' d at (0,3)
    const auto js = catalog_endomorphism("Jsigma", 3, Rat(0), Rat(3));
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = testgen::op(rng, 3, Rat(0), Rat(3), Space::circle);
      CHECK(js(a) == op(Rat(0), Rat(3), {zero(Space::circle), -d(a.coeff(3), 2), d(a.coeff(3))}));
    }
    // 𝒱(A) = (μ-λ-1)((2λ+1)a2' + (μ-λ-2)a1) d - λ((2λ+1)a2'' + (μ-λ-2)a1')
    for (const auto& [l, m] : {std::pair{Rat(2, 9), Rat(-3, 5)}, std::pair{Rat(-4), Rat(1, 2)},
                               std::pair{Rat(3, 2), Rat(7, 3)}}) {
      const auto v = catalog_endomorphism("calV", 2, l, m);
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = testgen::op(rng, 2, l, m, Space::line);
        const auto q = (2 * l + 1) * d(a.coeff(2)) + (m - l - 2) * a.coeff(1);
        CHECK(v(a) == op(l, m, {-l * d(q), (m - l - 1) * q}));
      }
    }
    // 𝒲(A) = -λ W' + (μ-λ-1) W d, W = (3λ+1)² a3'' - (3λ+1)(1+2λ) a2' + (3λ²+3λ+1) a1
    for (const Rat& l : {Rat(1, 3), Rat(-2, 3), Rat(2, 5)}) {
      const Rat m = (Rat(-1) / (3 * l + 1) + 4) / 3;
      const auto w = catalog_endomorphism("calW", 3, l, m);
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = testgen::op(rng, 3, l, m, Space::line);
        const Rat t = 3 * l + 1;
        const auto ww = (t * t) * d(a.coeff(3), 2) - (t * (1 + 2 * l)) * d(a.coeff(2)) +
                        (3 * l * l + 3 * l + 1) * a.coeff(1);
        CHECK(w(a) == op(l, m, {-l * d(ww), (m - l - 1) * ww}));
      }
    }
  }

  TEST_CASE("the alternative alpha1 for calW breaks invariance") {
    testgen::Rng rng(9);
    for (const Rat& l : {Rat(1, 3), Rat(-2, 3), Rat(2, 5)}) {
      const Rat m = (Rat(-1) / (3 * l + 1) + 4) / 3;
      Endomorphism alt;
      alt.name = "calW_alt";
      alt.k = 3;
      alt.lambda = l;
      alt.mu = m;
      alt.fn = [l, m](const DensityOperator& a) {
        const Rat t = 3 * l + 1;
        const auto ww = (t * t) * d(a.coeff(3), 2) - (t * (1 - 2 * l)) * d(a.coeff(2)) +
                        (3 * l * l + 3 * l + 1) * a.coeff(1);
        return op(l, m, {-l * d(ww), (m - l - 1) * ww});
      };
      CHECK_FALSE(commutes(alt, Space::line, rng));
      CHECK(commutes(catalog_endomorphism("calW", 3, l, m), Space::line, rng));
    }
  }

  TEST_CASE("J∘W at (0,5/4) is proportional to W in d² and its derivative in d") {
    testgen::Rng rng(10);
    const auto jw = catalog_endomorphism("JW", 4, Rat(0), Rat(5, 4));
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = testgen::op(rng, 4, Rat(0), Rat(5, 4), Space::line, 4);
      const auto out = jw(a);
      CHECK(out.coeff(0).is_zero());
      CHECK(out.coeff(1) == Rat(4, 3) * d(out.coeff(2)));
    }
    CHECK(proportional(jw, [](const DensityOperator& a) {
      const auto w = Rat(16, 7) * d(a.coeff(4), 2) - Rat(12, 7) * d(a.coeff(3)) + a.coeff(2);
      return op(Rat(0), Rat(5, 4), {zero(), Rat(4, 3) * d(w), w});
    }, rng));
  }

  TEST_CASE("G∘V at (-2/3,5/3) is proportional to the third-order expression in a3 - 2a4'") {
    testgen::Rng rng(11);
    const Rat l(-2, 3);
    const Rat m(5, 3);
    const auto gv = catalog_endomorphism("GV", 4, l, m);
    CHECK(proportional(gv, [&](const DensityOperator& a) {
      const auto p = a.coeff(3) - Rat(2) * d(a.coeff(4));
      return op(l, m, {-d(p, 3), Rat(-3, 2) * d(p, 2), Rat(3, 2) * d(p), p});
    }, rng));
  }
}
