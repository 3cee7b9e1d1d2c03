#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dopsym/density.hpp"
#include "dopsym/exact_linalg.hpp"
#include "dopsym/invariant_ops.hpp"

namespace dopsym {

/// Finite window of D^k_{λ,μ}: elements b_m d^i with b_m = x^m (m ≤ M) on the line and
/// b_m ∈ {1, cos x, sin x, ..., cos Mx, sin Mx} on the circle. Ordered by i, then m.
class TruncatedBasis {
 public:
  TruncatedBasis(unsigned k, unsigned M, Space space, Rat lambda, Rat mu);

  [[nodiscard]] unsigned k() const { return k_; }
  [[nodiscard]] unsigned M() const { return M_; }
  [[nodiscard]] Space space() const { return space_; }
  [[nodiscard]] const Rat& lambda() const { return lambda_; }
  [[nodiscard]] const Rat& mu() const { return mu_; }
  [[nodiscard]] std::size_t size() const { return (k_ + 1) * functions_per_order(); }
  [[nodiscard]] std::size_t functions_per_order() const;

  /// b_m
  [[nodiscard]] CoefficientFunction function(std::size_t m) const;
  /// degree (line) or frequency (circle) of b_m
  [[nodiscard]] unsigned level(std::size_t m) const;
  [[nodiscard]] unsigned element_level(std::size_t idx) const { return level(idx % functions_per_order()); }
  [[nodiscard]] DensityOperator element(std::size_t idx) const;

  /// Throws TruncationOverflow when f leaves the window.
  [[nodiscard]] std::vector<Rat> function_coordinates(const CoefficientFunction& f) const;
  [[nodiscard]] RatVector coordinates(const DensityOperator& a) const;
  [[nodiscard]] DensityOperator from_coordinates(const RatVector& v) const;

  friend bool operator==(const TruncatedBasis& a, const TruncatedBasis& b) {
    return a.k_ == b.k_ && a.M_ == b.M_ && a.space_ == b.space_ && a.lambda_ == b.lambda_ &&
           a.mu_ == b.mu_;
  }

 private:
  unsigned k_;
  unsigned M_;
  Space space_;
  Rat lambda_;
  Rat mu_;
};

/// Matrix of an endomorphism on a TruncatedBasis; column j is the image of element j.
struct SymmetryMap {
  std::string name;
  TruncatedBasis basis;
  RatMatrix matrix;
  /// Rank-one mean ⊗ d part present (the trace-like map L).
  bool nonlocal = false;
};

SymmetryMap realize(const Endomorphism& t, const TruncatedBasis& basis);
SymmetryMap realize(const std::string& catalog_name, const TruncatedBasis& basis);
SymmetryMap identity_map(const TruncatedBasis& basis);

/// Composition a ∘ b.
SymmetryMap compose(const SymmetryMap& a, const SymmetryMap& b);
SymmetryMap combine(const std::vector<std::pair<Rat, const SymmetryMap*>>& terms, std::string name);

struct GeneratorFamily {
  Space space;
  std::vector<VectorField> fields;
  /// How far each field raises degree or frequency.
  std::vector<unsigned> shifts;
  std::vector<std::string> labels;
};

/// {d/dx, x d/dx, ..., x^max_degree d/dx}
GeneratorFamily line_family(unsigned max_degree = 3);
/// {d/dx, cos nx d/dx, sin nx d/dx : 1 ≤ n ≤ N}
GeneratorFamily circle_family(unsigned N);
/// Line: up to x³ d/dx. Circle: N = 2.
GeneratorFamily default_family(Space s);

/// T ∘ ℒ_X - ℒ_X ∘ T on the sub-basis whose images stay in the window.
/// Throws when that sub-basis is empty.
RatMatrix equivariance_defect(const SymmetryMap& t, const VectorField& x, unsigned shift);
/// True when every field of the family has zero defect.
bool is_equivariant(const SymmetryMap& t, const GeneratorFamily& family);

/// Unknown ordering of the ansatz T(a_r d^r) = Σ_ℓ t_{r,ℓ} a_r^{(ℓ)} d^{r-ℓ}.
std::size_t ansatz_index(unsigned r, unsigned l);
std::size_t ansatz_size(unsigned k);
DensityOperator apply_ansatz(const RatVector& t, unsigned k, const DensityOperator& a);
/// t_{r,ℓ} ↦ t_{r,ℓ} / (r)_ℓ, the normalisation in which the recurrences are written.
RatVector ansatz_to_recurrence(const RatVector& t, unsigned k);

struct BruteForceResult {
  std::size_t dimension = 0;
  /// Columns span the solutions, in ansatz ordering.
  RatMatrix kernel;
};

/// Solves for every ansatz map commuting with the non-affine generators on a window of
/// size M (line: x² d/dx, x³ d/dx; circle: cos nx d/dx, sin nx d/dx for n ≤ 2).
BruteForceResult brute_force_local_symmetries(unsigned k, const Rat& lambda, const Rat& mu,
                                              Space space, unsigned M);

/// Dimension of the functionals on λ-densities of frequency ≤ N that kill every L_X φ
/// computable inside the window.
std::size_t invariant_functionals_dimension(const Rat& lambda, unsigned N);

}  // namespace dopsym
