#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dopsym/coefficient_ring.hpp"
#include "dopsym/rational.hpp"

namespace dopsym {

/// φ(x)(dx)^λ
struct Density {
  Rat weight;
  CoefficientFunction value;

  [[nodiscard]] Space space() const { return value.space(); }
  friend bool operator==(const Density&, const Density&) = default;
};

/// X(x) d/dx
struct VectorField {
  CoefficientFunction value;

  [[nodiscard]] Space space() const { return value.space(); }
};

/// Field x^p d/dx on the line.
VectorField line_field(unsigned p);
/// d/dx, cos(nx) d/dx or sin(nx) d/dx on the circle; n = 0 gives d/dx.
VectorField circle_cos_field(unsigned n);
VectorField circle_sin_field(unsigned n);

VectorField bracket(const VectorField& x, const VectorField& y);

/// A = a_k d^k + ... + a_0 acting from λ-densities to μ-densities.
class DensityOperator {
 public:
  DensityOperator(Rat lambda, Rat mu, std::vector<CoefficientFunction> coeffs);
  static DensityOperator zero(Rat lambda, Rat mu, Space s);
  static DensityOperator identity(Rat lambda, Space s);
  /// a(x) d^i
  static DensityOperator monomial(Rat lambda, Rat mu, unsigned i, CoefficientFunction a);

  [[nodiscard]] const Rat& lambda() const { return lambda_; }
  [[nodiscard]] const Rat& mu() const { return mu_; }
  [[nodiscard]] Space space() const { return space_; }
  [[nodiscard]] unsigned order() const { return static_cast<unsigned>(c_.size() - 1); }
  [[nodiscard]] const std::vector<CoefficientFunction>& coeffs() const { return c_; }
  /// a_i, zero past the order.
  [[nodiscard]] CoefficientFunction coeff(unsigned i) const;
  [[nodiscard]] bool is_zero() const { return c_.size() == 1 && c_[0].is_zero(); }

  friend DensityOperator operator+(const DensityOperator& a, const DensityOperator& b);
  friend DensityOperator operator-(const DensityOperator& a, const DensityOperator& b);
  friend DensityOperator operator*(const Rat& s, const DensityOperator& a);
  friend bool operator==(const DensityOperator& a, const DensityOperator& b);

 private:
  void normalize();
  Rat lambda_;
  Rat mu_;
  Space space_;
  std::vector<CoefficientFunction> c_;
};

/// P = Σ a_i ξ^{i-δ}
struct PolynomialSymbol {
  Rat delta;
  std::vector<CoefficientFunction> coeffs;
};

Density apply(const DensityOperator& a, const Density& phi);
DensityOperator compose(const DensityOperator& a, const DensityOperator& b);
Density lie_derivative_density(const VectorField& x, const Density& phi);
/// L^λ_X as a first-order operator on λ-densities.
DensityOperator lie_operator(const VectorField& x, const Rat& lambda);
/// L^μ_X ∘ A - A ∘ L^λ_X
DensityOperator lie_derivative_operator(const VectorField& x, const DensityOperator& a);
/// Affine action on symbols: component j maps to X a_j' - (j - δ) X' a_j.
PolynomialSymbol symbol_action(const VectorField& x, const PolynomialSymbol& p);
/// Mean of φψ over the circle; requires weights summing to 1.
Rat pairing(const Density& phi, const Density& psi);

PolynomialSymbol total_symbol(const DensityOperator& a);
DensityOperator from_symbol(const PolynomialSymbol& p, const Rat& lambda, const Rat& mu);

nlohmann::json to_json(const DensityOperator& a);
DensityOperator operator_from_json(const nlohmann::json& j);
std::string to_string(const DensityOperator& a);

}  // namespace dopsym
