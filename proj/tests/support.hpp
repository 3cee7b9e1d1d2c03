#pragma once

#include <random>
#include <vector>

#include "dopsym/coefficient_ring.hpp"
#include "dopsym/density.hpp"
#include "dopsym/rational.hpp"

namespace testgen {

using dopsym::CoefficientFunction;
using dopsym::DensityOperator;
using dopsym::PolyFn;
using dopsym::Rat;
using dopsym::Space;
using dopsym::TrigFn;
using dopsym::VectorField;

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// p/q with |p| ≤ bound, 1 ≤ q ≤ bound.
inline Rat rat(Rng& rng, long bound = 9) {
  return {uniform(rng, -bound, bound), uniform(rng, 1, bound)};
}

inline Rat nonzero_rat(Rng& rng, long bound = 9) {
  Rat r = rat(rng, bound);
  while (r.is_zero()) r = rat(rng, bound);
  return r;
}

inline PolyFn poly(Rng& rng, unsigned max_degree = 3) {
  std::vector<Rat> c;
  const auto deg = static_cast<unsigned>(uniform(rng, 0, max_degree));
  for (unsigned i = 0; i <= deg; ++i) c.push_back(rat(rng));
  return PolyFn(c);
}

inline TrigFn trig(Rng& rng, unsigned max_frequency = 3) {
  TrigFn t = TrigFn::constant(rat(rng));
  for (unsigned n = 1; n <= max_frequency; ++n) {
    if (uniform(rng, 0, 2) == 0) continue;
    t = t + TrigFn::cos(n, rat(rng)) + TrigFn::sin(n, rat(rng));
  }
  return t;
}

inline CoefficientFunction function(Rng& rng, Space s, unsigned level = 3) {
  if (s == Space::line) return poly(rng, level);
  return trig(rng, level);
}

inline DensityOperator op(Rng& rng, unsigned k, const Rat& lambda, const Rat& mu, Space s,
                          unsigned level = 3) {
  std::vector<CoefficientFunction> c;
  for (unsigned i = 0; i <= k; ++i) c.push_back(function(rng, s, level));
  return {lambda, mu, c};
}

inline VectorField field(Rng& rng, Space s, unsigned level = 3) {
  return {function(rng, s, level)};
}

inline std::vector<double> angles(unsigned n) {
  std::vector<double> out;
  for (unsigned i = 0; i < n; ++i) out.push_back(2.0 * 3.14159265358979323846 * i / n);
  return out;
}

}  // namespace testgen
