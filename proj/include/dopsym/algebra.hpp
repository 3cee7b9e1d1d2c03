#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dopsym/equivariance.hpp"
#include "dopsym/exact_linalg.hpp"

namespace dopsym {

/// Finite-dimensional associative algebra over Q given by structure constants:
/// e_i e_j = Σ_k c[i][j][k] e_k.
struct FiniteAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  std::vector<std::vector<std::vector<Rat>>> constants;
  /// Coordinates of further named elements known to lie in the span.
  std::map<std::string, std::vector<Rat>> named;

  [[nodiscard]] std::vector<Rat> product(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  [[nodiscard]] bool is_associative() const;
  /// Coordinates of a basis or named element, if known.
  [[nodiscard]] std::optional<std::vector<Rat>> element(const std::string& name) const;
  /// Unit element, if the algebra has one.
  [[nodiscard]] std::optional<std::vector<Rat>> unit() const;
};

/// Structure constants of the span of linearly independent maps. Products are solved
/// against the span exactly; SpanNotClosed if one falls outside. `extra` maps are recorded
/// in `named` with their coordinates (they must lie in the span).
FiniteAlgebra span_algebra(const std::vector<SymmetryMap>& maps,
                           const std::vector<SymmetryMap>& extra = {});

/// Like span_algebra, but keeps the first independent maps as the basis and records the
/// others (by name) as named elements.
FiniteAlgebra independent_span_algebra(const std::vector<SymmetryMap>& maps);

/// Algebra spanned by the given (independent) square matrices.
FiniteAlgebra matrix_algebra(const std::vector<RatMatrix>& generators,
                             const std::vector<std::string>& names);

/// Direct sum of copies of b, t2, a and R.
struct AlgebraKind {
  int b = 0;
  int t2 = 0;
  int a = 0;
  int r = 0;
  bool identified = true;

  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::size_t dimension() const {
    return static_cast<std::size_t>(4 * b + 3 * t2 + 2 * a + r);
  }
  friend bool operator==(const AlgebraKind&, const AlgebraKind&) = default;
};

AlgebraKind parse_algebra_kind(const std::string& s);

struct Fingerprint {
  std::size_t dim = 0;
  std::size_t centre = 0;
  std::size_t radical = 0;
  std::size_t radical_squared = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Columns: basis of the centre.
RatMatrix centre_basis(const FiniteAlgebra& alg);
/// Columns: basis of the Jacobson radical {x : tr(L_{xy}) = 0 for all y}.
RatMatrix radical_basis(const FiniteAlgebra& alg);
Fingerprint fingerprint(const FiniteAlgebra& alg);

/// The algebra built from the standard matrix generators of each summand.
FiniteAlgebra template_algebra(const AlgebraKind& kind);

/// Explicit basis change for the (0,1) family when P0, P0star, P1 (and L) are present,
/// fingerprint matching otherwise. Never guesses: ambiguous or unmatched algebras come
/// back with identified = false.
AlgebraKind identify(const FiniteAlgebra& alg);

/// The basis change ā, b̄, c̄, d̄ and the central z1, z2 for the (0,1) family, when it
/// applies. On success returns the kind and fills the transformed table.
struct BasisChangeReport {
  bool applies = false;
  bool table_matches = false;
  bool z_central = false;
  std::size_t z_rank = 0;
  bool z1_zero = false;
  bool z2_zero = false;
  std::vector<std::string> names;  // ā, b̄, c̄, (d̄)
  std::vector<std::vector<std::vector<Rat>>> table;
};
BasisChangeReport basis_change_01(const FiniteAlgebra& alg);

/// Rows "i,j,k,c" for every nonzero structure constant.
std::string structure_constants_csv(const FiniteAlgebra& alg);

}  // namespace dopsym
