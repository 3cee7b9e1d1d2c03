#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dopsym/equivariance.hpp"
#include "dopsym/invariant_ops.hpp"

namespace dopsym {

/// Overrides for a named check. Unset fields fall back to the check's own sample points.
struct IdentityParams {
  std::optional<unsigned> k;
  std::optional<Rat> lambda;
  std::optional<Rat> mu;
  std::optional<Space> space;
  /// 0 means k + 6.
  unsigned truncation = 0;
  std::uint64_t seed = 20240607;
};

struct IdentityResult {
  std::string name;
  bool passed = true;
  /// Sum of the l1 norms of every defect that has to vanish.
  Rat defect;
  /// Largest truncated basis used.
  std::size_t basis_size = 0;
  std::size_t checks = 0;
  std::vector<std::string> notes;

  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] std::string to_text() const;
};

/// conj_involution, adjoint_pairing, mult_table_01, isomorphism_01, s_relations, calw_square,
/// calv_square, calv_conjugation, jv_nilpotent, gv_relations, jv_conjugation_t2,
/// gsigma_decomposition, w_sharpness, v_wilmod_vanishing, grozman_equivariance,
/// invariant_functionals, oracle_agreement
const std::vector<std::string>& identity_names();
IdentityResult verify_identity(const std::string& name, const IdentityParams& p = {});

/// Equivariance of one catalog map: C, P0, P0star, P1, L, S, Sstar, sigma, V, W, wilmodA,
/// wilmodB, piDelta, poisson, grozman, JW, JV, Jsigma, GV, Gsigma, calW, calV.
/// For poisson and grozman, `lambda` and `mu` set the two input weights.
const std::vector<std::string>& operator_names();
IdentityResult verify_operator(const std::string& name, const IdentityParams& p = {});

Rat l1_norm(const CoefficientFunction& f);
Rat l1_norm(const DensityOperator& a);

/// Σ |π(ℒ_X A) - ℒ_X π(A)| over the window elements A and the fields of the family.
Rat projection_defect(const ProjectionSpec& pi, const TruncatedBasis& basis, const GeneratorFamily& family);

/// Σ |ℒ_X J(φ,ψ) - J(ℒ_X φ,ψ) - J(φ,ℒ_X ψ)| over window functions φ, ψ of level ≤ M.
Rat bilinear_defect(const BilinearOp& j, Space space, unsigned M, const GeneratorFamily& family);

/// Σ over fields of the l1 norm of equivariance_defect.
Rat matrix_equivariance_defect(const SymmetryMap& t, const GeneratorFamily& family);

/// (k, λ, μ) covering every exceptional locus and generic samples, k ≤ 6.
std::vector<std::pair<unsigned, std::pair<Rat, Rat>>> oracle_triples(std::uint64_t seed);

}  // namespace dopsym
