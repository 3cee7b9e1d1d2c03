#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dopsym/algebra.hpp"
#include "dopsym/equivariance.hpp"
#include "dopsym/exact_linalg.hpp"

namespace dopsym {

/// Which recurrence closes the system next to the first-order relation.
/// `derived`: the four-term relation from matching coefficients against x³ d/dx.
/// `two_term`: the short two-term form; kept to show it disagrees with brute force.
enum class RecurrenceVariant { derived, two_term };

std::string to_string(RecurrenceVariant v);
RecurrenceVariant parse_recurrence_variant(const std::string& s);

/// Homogeneous linear system in T_{r,ℓ}, 0 ≤ ℓ ≤ r ≤ k, ordered like ansatz_index.
struct RecurrenceSystem {
  unsigned k = 0;
  Rat lambda;
  Rat mu;
  RecurrenceVariant variant = RecurrenceVariant::derived;
  std::size_t unknowns = 0;
  std::vector<SparseVec> equations;

  [[nodiscard]] RatMatrix dense() const;
};

RecurrenceSystem build_system(unsigned k, const Rat& lambda, const Rat& mu,
                              RecurrenceVariant variant = RecurrenceVariant::derived);

/// unknowns - rank, with the rank from fraction-free elimination.
std::size_t local_dimension(const RecurrenceSystem& sys);
std::size_t local_dimension(unsigned k, const Rat& lambda, const Rat& mu);

/// 1 at (0,1) on the circle for k ≥ 1, else 0.
std::size_t nonlocal_dimension(unsigned k, const Rat& lambda, const Rat& mu, Space space);

/// Candidate symmetries at (k, λ, μ): catalog maps, J∘π constructions, and their
/// δ- and C-transports from neighbouring modules, up to `depth` transports deep.
std::vector<Endomorphism> candidate_pool(unsigned k, const Rat& lambda, const Rat& mu, Space space,
                                         unsigned depth = 2);

struct ClassifyOptions {
  /// Window size; 0 means k + 6.
  unsigned truncation = 0;
  bool cross_check = true;
  bool identify_algebra = true;
};

struct ClassificationReport {
  unsigned k = 0;
  Rat lambda;
  Rat mu;
  Space space = Space::circle;
  unsigned truncation = 0;
  std::size_t local_dim = 0;
  std::size_t nonlocal_dim = 0;
  std::vector<std::string> generators;
  std::vector<SymmetryMap> maps;
  std::optional<FiniteAlgebra> algebra;
  std::optional<AlgebraKind> kind;

  [[nodiscard]] std::size_t total() const { return local_dim + nonlocal_dim; }
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Local dimension from the recurrence (cross-checked by brute force), plus an explicit
/// spanning set drawn from the candidate pool and the identified algebra.
/// OracleDisagreement when the two dimension counts differ; SpanMismatch when the pool
/// does not span exactly that many independent maps.
ClassificationReport classify(unsigned k, const Rat& lambda, const Rat& mu, Space space,
                              const ClassifyOptions& opts = {});

// ---- exceptional loci and sampling ----

/// Conditions met by (λ, μ): "lambda0", "mu1", "sum1", "diff1", "diff2", "hyperbola",
/// "hk4".."hk6", "isolated".
std::vector<std::string> exceptional_tags(const Rat& lambda, const Rat& mu);

/// The isolated points with their own dimension rows, plus (0,2) and (-1,1).
const std::vector<std::pair<Rat, Rat>>& isolated_points();

/// p/q with p in [-97, 97], q in [1, 97].
Rat random_rational(std::mt19937_64& rng);

struct TableRow {
  std::string label;
  std::vector<std::pair<Rat, Rat>> samples;
  std::vector<std::size_t> dims;
  /// Circle algebra kind of the first sample, per k (local plus nonlocal part).
  std::vector<std::string> kinds;
};

/// Row labels, in order.
const std::vector<std::string>& table_row_labels();

/// Random weights lying on row `row` (0-based) and nowhere more special.
std::pair<Rat, Rat> sample_row(std::size_t row, std::size_t index, std::mt19937_64& rng);

/// Dimensions for k = 0..kmax at `samples` points per row. Throws OracleDisagreement if
/// two samples of a row disagree.
std::vector<TableRow> dimension_table(unsigned kmax, std::size_t samples, std::uint64_t seed,
                                      bool with_kinds);

std::string table_csv(const std::vector<TableRow>& rows);
nlohmann::json table_json(const std::vector<TableRow>& rows);

}  // namespace dopsym
