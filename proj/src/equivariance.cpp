#include "dopsym/equivariance.hpp"

#include <algorithm>
#include <map>

#include "dopsym/errors.hpp"

namespace dopsym {

TruncatedBasis::TruncatedBasis(unsigned k, unsigned M, Space space, Rat lambda, Rat mu)
    : k_(k), M_(M), space_(space), lambda_(std::move(lambda)), mu_(std::move(mu)) {}

std::size_t TruncatedBasis::functions_per_order() const {
  return space_ == Space::line ? M_ + 1 : 2 * M_ + 1;
}

CoefficientFunction TruncatedBasis::function(std::size_t m) const {
  if (space_ == Space::line) return PolyFn::monomial(static_cast<unsigned>(m));
  if (m == 0) return TrigFn::constant(Rat(1));
  const auto n = static_cast<unsigned>((m + 1) / 2);
  return m % 2 == 1 ? TrigFn::cos(n) : TrigFn::sin(n);
}

unsigned TruncatedBasis::level(std::size_t m) const {
  return static_cast<unsigned>(space_ == Space::line ? m : (m + 1) / 2);
}

DensityOperator TruncatedBasis::element(std::size_t idx) const {
  const std::size_t f = functions_per_order();
  return DensityOperator::monomial(lambda_, mu_, static_cast<unsigned>(idx / f), function(idx % f));
}

std::vector<Rat> TruncatedBasis::function_coordinates(const CoefficientFunction& fn) const {
  std::vector<Rat> out(functions_per_order(), Rat(0));
  if (fn.space() != space_) throw RingMismatch("coefficient on the wrong space for this basis");
  if (space_ == Space::line) {
    const auto& c = fn.poly().coeffs();
    if (c.size() > M_ + 1) {
      throw TruncationOverflow("degree " + std::to_string(c.size() - 1) + " exceeds M = " +
                               std::to_string(M_));
    }
    std::copy(c.begin(), c.end(), out.begin());
    return out;
  }
  const TrigFn& t = fn.trig();
  if (t.max_frequency() > M_) {
    throw TruncationOverflow("frequency " + std::to_string(t.max_frequency()) + " exceeds M = " +
                             std::to_string(M_));
  }
  out[0] = t.mean();
  for (const auto& [n, c] : t.cos_coeffs()) out[2 * n - 1] = c;
  for (const auto& [n, s] : t.sin_coeffs()) out[2 * n] = s;
  return out;
}

RatVector TruncatedBasis::coordinates(const DensityOperator& a) const {
  if (a.order() > k_) {
    throw TruncationOverflow("operator order " + std::to_string(a.order()) + " exceeds k = " +
                             std::to_string(k_));
  }
  const std::size_t f = functions_per_order();
  RatVector v = zero_vector(static_cast<Eigen::Index>(size()));
  for (unsigned i = 0; i <= a.order(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    const auto c = function_coordinates(a.coeffs()[i]);
    for (std::size_t m = 0; m < f; ++m) v(static_cast<Eigen::Index>(i * f + m)) = c[m];
  }
  return v;
}

DensityOperator TruncatedBasis::from_coordinates(const RatVector& v) const {
  const std::size_t f = functions_per_order();
  std::vector<CoefficientFunction> c;
  for (unsigned i = 0; i <= k_; ++i) {
    if (space_ == Space::line) {
      std::vector<Rat> p(f);
      for (std::size_t m = 0; m < f; ++m) p[m] = v(static_cast<Eigen::Index>(i * f + m));
      c.emplace_back(PolyFn(std::move(p)));
    } else {
      TrigFn t = TrigFn::constant(v(static_cast<Eigen::Index>(i * f)));
      for (unsigned n = 1; n <= M_; ++n) {
        const Rat& cc = v(static_cast<Eigen::Index>(i * f + 2 * n - 1));
        const Rat& ss = v(static_cast<Eigen::Index>(i * f + 2 * n));
        if (!cc.is_zero()) t = t + TrigFn::cos(n, cc);
        if (!ss.is_zero()) t = t + TrigFn::sin(n, ss);
      }
      c.emplace_back(std::move(t));
    }
  }
  return {lambda_, mu_, std::move(c)};
}

SymmetryMap realize(const Endomorphism& t, const TruncatedBasis& basis) {
  if (t.lambda != basis.lambda() || t.mu != basis.mu() || t.k != basis.k()) {
    throw WeightMismatch(t.name + " lives on D^" + std::to_string(t.k) + "_{" + t.lambda.str() +
                         "," + t.mu.str() + "}, basis is D^" + std::to_string(basis.k()) + "_{" +
                         basis.lambda().str() + "," + basis.mu().str() + "}");
  }
  if (t.circle_only && basis.space() != Space::circle) {
    throw UnsupportedFunctional(t.name + " exists on the circle only");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  RatMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m.col(j) = basis.coordinates(t(basis.element(static_cast<std::size_t>(j))));
  }
  return {t.name, basis, std::move(m), t.nonlocal};
}

SymmetryMap realize(const std::string& catalog_name, const TruncatedBasis& basis) {
  return realize(catalog_endomorphism(catalog_name, basis.k(), basis.lambda(), basis.mu()), basis);
}

SymmetryMap identity_map(const TruncatedBasis& basis) {
  return {"Id", basis, identity_matrix(static_cast<Eigen::Index>(basis.size())), false};
}

SymmetryMap compose(const SymmetryMap& a, const SymmetryMap& b) {
  if (!(a.basis == b.basis)) throw Error("composing maps realized on different bases");
  return {a.name + "*" + b.name, a.basis, multiply(a.matrix, b.matrix), a.nonlocal || b.nonlocal};
}

SymmetryMap combine(const std::vector<std::pair<Rat, const SymmetryMap*>>& terms, std::string name) {
  if (terms.empty()) throw Error("empty linear combination");
  const TruncatedBasis& basis = terms.front().second->basis;
  RatMatrix m = zero_matrix(static_cast<Eigen::Index>(basis.size()),
                            static_cast<Eigen::Index>(basis.size()));
  bool nonlocal = false;
  for (const auto& [c, map] : terms) {
    if (!(map->basis == basis)) throw Error("combining maps realized on different bases");
    if (c.is_zero()) continue;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (!map->matrix(i, j).is_zero()) m(i, j) += c * map->matrix(i, j);
      }
    }
    nonlocal = nonlocal || map->nonlocal;
  }
  return {std::move(name), basis, std::move(m), nonlocal};
}

GeneratorFamily line_family(unsigned max_degree) {
  GeneratorFamily g{Space::line, {}, {}, {}};
  for (unsigned p = 0; p <= max_degree; ++p) {
    g.fields.push_back(line_field(p));
    g.shifts.push_back(p == 0 ? 0 : p - 1);
    g.labels.push_back(p == 0 ? "d/dx" : (p == 1 ? "x d/dx" : "x^" + std::to_string(p) + " d/dx"));
  }
  return g;
}

GeneratorFamily circle_family(unsigned N) {
  if (N < 2) throw Error("the circle generator family needs N >= 2");
  GeneratorFamily g{Space::circle, {circle_cos_field(0)}, {0}, {"d/dx"}};
  for (unsigned n = 1; n <= N; ++n) {
    g.fields.push_back(circle_cos_field(n));
    g.shifts.push_back(n);
    g.labels.push_back("cos " + std::to_string(n) + "x d/dx");
    g.fields.push_back(circle_sin_field(n));
    g.shifts.push_back(n);
    g.labels.push_back("sin " + std::to_string(n) + "x d/dx");
  }
  return g;
}

GeneratorFamily default_family(Space s) { return s == Space::line ? line_family(3) : circle_family(2); }

RatMatrix equivariance_defect(const SymmetryMap& t, const VectorField& x, unsigned shift) {
  const TruncatedBasis& b = t.basis;
  if (x.space() != b.space()) throw RingMismatch("vector field on the wrong space");
  const auto n = static_cast<Eigen::Index>(b.size());
  const std::size_t f = b.functions_per_order();
  // highest level reached by each image column
  std::vector<unsigned> image_level(b.size(), 0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!t.matrix(i, j).is_zero()) {
        image_level[j] = std::max(image_level[j], b.level(static_cast<std::size_t>(i) % f));
      }
    }
  }
  std::vector<Eigen::Index> safe;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (b.element_level(static_cast<std::size_t>(j)) + shift <= b.M() &&
        image_level[j] + shift <= b.M()) {
      safe.push_back(j);
    }
  }
  if (safe.empty()) throw Error("window too small: no basis element keeps its image inside");
  RatMatrix out = zero_matrix(n, static_cast<Eigen::Index>(safe.size()));
  for (std::size_t s = 0; s < safe.size(); ++s) {
    const Eigen::Index j = safe[s];
    const RatVector lx = b.coordinates(lie_derivative_operator(x, b.element(static_cast<std::size_t>(j))));
    RatVector tl = zero_vector(n);
    for (Eigen::Index l = 0; l < n; ++l) {
      if (lx(l).is_zero()) continue;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!t.matrix(i, l).is_zero()) tl(i) += t.matrix(i, l) * lx(l);
      }
    }
    const RatVector lt =
        b.coordinates(lie_derivative_operator(x, b.from_coordinates(t.matrix.col(j))));
    for (Eigen::Index i = 0; i < n; ++i) out(i, static_cast<Eigen::Index>(s)) = tl(i) - lt(i);
  }
  return out;
}

bool is_equivariant(const SymmetryMap& t, const GeneratorFamily& family) {
  for (std::size_t i = 0; i < family.fields.size(); ++i) {
    if (!is_zero(equivariance_defect(t, family.fields[i], family.shifts[i]))) return false;
  }
  return true;
}

std::size_t ansatz_index(unsigned r, unsigned l) { return r * (r + 1) / 2 + l; }
std::size_t ansatz_size(unsigned k) { return (k + 1) * (k + 2) / 2; }

namespace {

DensityOperator elementary(unsigned r, unsigned l, const DensityOperator& a) {
  return DensityOperator::monomial(a.lambda(), a.mu(), r - l, ring_diff(a.coeff(r), l));
}

}  // namespace

DensityOperator apply_ansatz(const RatVector& t, unsigned k, const DensityOperator& a) {
  DensityOperator out = DensityOperator::zero(a.lambda(), a.mu(), a.space());
  for (unsigned r = 0; r <= k; ++r) {
    for (unsigned l = 0; l <= r; ++l) {
      const Rat& c = t(static_cast<Eigen::Index>(ansatz_index(r, l)));
      if (!c.is_zero()) out = out + c * elementary(r, l, a);
    }
  }
  return out;
}

RatVector ansatz_to_recurrence(const RatVector& t, unsigned k) {
  RatVector out = t;
  for (unsigned r = 0; r <= k; ++r) {
    for (unsigned l = 0; l <= r; ++l) {
      const auto i = static_cast<Eigen::Index>(ansatz_index(r, l));
      out(i) = t(i) / falling_factorial(Rat(static_cast<long>(r)), l);
    }
  }
  return out;
}

BruteForceResult brute_force_local_symmetries(unsigned k, const Rat& lambda, const Rat& mu,
                                              Space space, unsigned M) {
  if (M < k + 4) throw Error("brute force needs M >= k + 4");
  const TruncatedBasis basis(k, M, space, lambda, mu);
  GeneratorFamily fam{space, {}, {}, {}};
  if (space == Space::line) {
    fam.fields = {line_field(2), line_field(3)};
    fam.shifts = {1, 2};
  } else {
    fam.fields = {circle_cos_field(1), circle_sin_field(1), circle_cos_field(2), circle_sin_field(2)};
    fam.shifts = {1, 1, 2, 2};
  }
  const std::size_t nu = ansatz_size(k);
  SparseEchelon ech;
  for (std::size_t fi = 0; fi < fam.fields.size() && ech.rank() < nu; ++fi) {
    const auto& x = fam.fields[fi];
    for (std::size_t j = 0; j < basis.size() && ech.rank() < nu; ++j) {
      if (basis.element_level(j) + fam.shifts[fi] > M) continue;
      const DensityOperator b = basis.element(j);
      const DensityOperator lb = lie_derivative_operator(x, b);
      // coordinate -> row over the unknowns
      std::map<Eigen::Index, SparseVec> rows;
      for (unsigned r = 0; r <= k; ++r) {
        for (unsigned l = 0; l <= r; ++l) {
          const DensityOperator d =
              elementary(r, l, lb) - lie_derivative_operator(x, elementary(r, l, b));
          if (d.is_zero()) continue;
          const RatVector v = basis.coordinates(d);
          for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (!v(i).is_zero()) rows[i].emplace_back(ansatz_index(r, l), v(i));
          }
        }
      }
      for (auto& [coord, row] : rows) ech.insert(row);
    }
  }
  RatMatrix eq = zero_matrix(static_cast<Eigen::Index>(ech.rank()), static_cast<Eigen::Index>(nu));
  const auto rows = ech.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [c, v] : rows[i]) eq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = v;
  }
  BruteForceResult res;
  res.kernel = nullspace(eq);
  res.dimension = static_cast<std::size_t>(res.kernel.cols());
  return res;
}

std::size_t invariant_functionals_dimension(const Rat& lambda, unsigned N) {
  const GeneratorFamily fam = circle_family(N);
  const TruncatedBasis basis(0, N, Space::circle, lambda, lambda);
  SparseEchelon ech;
  const std::size_t f = basis.functions_per_order();
  for (std::size_t fi = 0; fi < fam.fields.size(); ++fi) {
    for (std::size_t m = 0; m < f; ++m) {
      if (basis.level(m) + fam.shifts[fi] > N) continue;
      const Density phi{lambda, basis.function(m)};
      const auto c = basis.function_coordinates(lie_derivative_density(fam.fields[fi], phi).value);
      SparseVec v;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_zero()) v.emplace_back(i, c[i]);
      }
      ech.insert(v);
    }
  }
  return f - ech.rank();
}

}  // namespace dopsym
