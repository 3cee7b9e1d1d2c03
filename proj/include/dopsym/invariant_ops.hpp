#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dopsym/density.hpp"

namespace dopsym {

/// Σ (-1)^i (d/dx)^i ∘ a_i, landing in D^k_{1-μ,1-λ}.
DensityOperator conjugate(const DensityOperator& a);
/// Multiplication by a_0 (needs λ = 0).
DensityOperator p0(const DensityOperator& a);
/// Multiplication by Σ (-1)^i a_i^{(i)} (needs μ = 1).
DensityOperator p0_star(const DensityOperator& a);
/// (Σ_{i≥1} (-1)^{i-1} a_i^{(i-1)}) ∘ d at (λ,μ) = (0,1).
DensityOperator p1(const DensityOperator& a);
/// mean(a_0) d at (0,1); circle only.
DensityOperator nonlocal_L(const DensityOperator& a);
/// Σ (-1)^i (d/dx)^i ∘ (a_i + a_{i+1}') at (0,0).
DensityOperator s_map(const DensityOperator& a);
/// C ∘ S ∘ C at (1,1).
DensityOperator s_star(const DensityOperator& a);
/// A ↦ A ∘ d, from D^k_{1,μ} to D^{k+1}_{0,μ}.
DensityOperator delta_compose(const DensityOperator& a);
/// Inverse of delta_compose on operators with a_0 = 0.
DensityOperator delta_inverse(const DensityOperator& a);
/// P0 ∘ C ∘ δ^{-1} ∘ (Id - P0) at (0,1), a 0-density.
Density pi_delta(const DensityOperator& a);

// ---- projections onto densities ----

enum class ProjectionKind { principal_symbol, v_map, w_map, wilmod_a, wilmod_b, p0, pi_delta };

std::string to_string(ProjectionKind k);

struct ProjectionSpec {
  ProjectionKind kind;
  unsigned k;
  Rat lambda;
  Rat mu;
  /// σ: {1}; V: {α, β}; W: {α2, α1, α0}; empty otherwise
  std::vector<Rat> coefficients;

  [[nodiscard]] Rat target_weight() const;
};

/// Validates the weights and computes the coefficients.
ProjectionSpec make_projection(ProjectionKind kind, unsigned k, const Rat& lambda, const Rat& mu);
/// Same coefficients as make_projection, without checking where the map is invariant.
ProjectionSpec projection_formula(ProjectionKind kind, unsigned k, const Rat& lambda, const Rat& mu);
bool projection_applicable(ProjectionKind kind, unsigned k, const Rat& lambda, const Rat& mu);
Density project(const ProjectionSpec& p, const DensityOperator& a);

/// (λ + (k-2)/3)(μ - (k+1)/3) + (k+1)(k-2)/36 = 0
bool satisfies_hk(unsigned k, const Rat& lambda, const Rat& mu);
bool is_wilmod(unsigned k, const Rat& lambda, const Rat& mu);

Density sigma_map(const DensityOperator& a, unsigned k);
Density v_map(const DensityOperator& a, unsigned k);
Density w_map(const DensityOperator& a, unsigned k);
std::pair<Density, Density> wilmod_projections(const DensityOperator& a, unsigned k);

// ---- bilinear operators F_ν ⊗ F_λ → F_{ν+λ+order} ----

enum class BilinearKind {
  product,
  poisson,
  d_left,
  d_right,
  d_outer,
  dd_inner,
  d_d_left,
  d_d_right,
  grozman
};

std::string to_string(BilinearKind k);
BilinearKind parse_bilinear_kind(const std::string& s);
const std::vector<BilinearKind>& all_bilinear_kinds();

struct BilinearOp {
  BilinearKind kind;
  Rat nu;
  Rat lambda;

  [[nodiscard]] unsigned order() const;
  [[nodiscard]] Rat output_weight() const { return nu + lambda + Rat(static_cast<long>(order())); }
};

bool bilinear_admissible(BilinearKind kind, const Rat& nu, const Rat& lambda);
BilinearOp make_bilinear(BilinearKind kind, const Rat& nu, const Rat& lambda);
/// J(φ, ·) as the coefficient list of a differential operator in ψ.
std::vector<CoefficientFunction> bilinear_coeffs(const BilinearOp& j, const CoefficientFunction& phi);
Density bilinear_apply(const BilinearOp& j, const Density& phi, const Density& psi);

// ---- endomorphisms of D^k_{λ,μ} ----

/// A named linear map D^k_{λ,μ} → D^k_{λ,μ}.
struct Endomorphism {
  std::string name;
  unsigned k = 0;
  Rat lambda;
  Rat mu;
  std::function<DensityOperator(const DensityOperator&)> fn;
  bool nonlocal = false;
  bool circle_only = false;

  DensityOperator operator()(const DensityOperator& a) const;
};

Endomorphism scaled(const Endomorphism& t, const Rat& s);

/// (J∘π)(A) = J(π(A), ·)
Endomorphism symmetry_from_projection(const BilinearOp& j, const ProjectionSpec& pi,
                                      const Rat& scale = Rat(1), std::string name = "");

/// s with T(T(A)) = s T(A) on probe operators, if T is proportional to an idempotent
/// or nilpotent of order 2.
std::optional<Rat> square_factor(const Endomorphism& t);
/// T / s when T² = s T with s ≠ 0, otherwise T itself.
Endomorphism idempotent_normalised(const Endomorphism& t);

/// δ ∘ T ∘ δ^{-1} ∘ (Id - P0) for T on D^{k-1}_{1,μ}; lands on D^k_{0,μ}.
Endomorphism delta_transport(const Endomorphism& t);
/// C ∘ T ∘ C for T on D^k_{1-μ,1-λ}; lands on D^k_{λ,μ}.
Endomorphism conjugation_transport(const Endomorphism& t);

/// All J∘π constructions whose weights close up at (k, λ, μ), named as in the catalog.
std::vector<Endomorphism> projection_symmetries(unsigned k, const Rat& lambda, const Rat& mu);

/// Catalog lookup: Id, C, P0, P0star, P1, L, S, Sstar, JW, JV, Jsigma, GV, Gsigma, calW,
/// calV, JwilmodA, JwilmodB. Throws InapplicableSymmetry when undefined at (k, λ, μ).
Endomorphism catalog_endomorphism(const std::string& name, unsigned k, const Rat& lambda,
                                  const Rat& mu);
const std::vector<std::string>& catalog_endomorphism_names();

}  // namespace dopsym
