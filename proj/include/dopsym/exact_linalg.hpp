#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dopsym/rational.hpp"

namespace dopsym {

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

RatMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols);
RatMatrix identity_matrix(Eigen::Index n);
RatVector zero_vector(Eigen::Index n);

/// Reduced row echelon form. `pivots` receives the pivot column of each nonzero row.
RatMatrix rref(const RatMatrix& m, std::vector<Eigen::Index>* pivots = nullptr);

Eigen::Index rank(const RatMatrix& m);

/// Fraction-free (Bareiss) rank: rows are scaled to integers first, so every
/// intermediate quantity is an integer.
Eigen::Index bareiss_rank(const RatMatrix& m);

/// Columns form a basis of {x : m x = 0}.
RatMatrix nullspace(const RatMatrix& m);

/// Some x with m x = b; throws if the system is inconsistent.
RatVector solve(const RatMatrix& m, const RatVector& b);

bool is_zero(const RatMatrix& m);

/// Product that skips zero entries; the matrices met here are very sparse.
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);

/// Sum of absolute values of the entries.
Rat l1_norm(const RatMatrix& m);

/// Sorted (index, value) pairs with no zero values.
using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

SparseVec to_sparse(const RatMatrix& m);  // column-major flattening
SparseVec to_sparse(const RatVector& v);
/// y + c x
SparseVec axpy(const SparseVec& y, const Rat& c, const SparseVec& x);

/// Incremental row echelon over sparse vectors. Tracks how each stored row was
/// combined from the inserted vectors so that membership queries also return
/// coordinates.
class SparseEchelon {
 public:
  /// Inserts v. Returns true when v was independent of everything inserted so far.
  bool insert(const SparseVec& v);

  /// Coordinates of v in terms of the independent inserted vectors (in
  /// insertion order), or false if v is outside their span.
  bool coordinates(const SparseVec& v, std::vector<Rat>* coords) const;

  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  /// The reduced rows, each with a distinct pivot.
  [[nodiscard]] std::vector<SparseVec> rows() const;

 private:
  struct Row {
    std::size_t pivot;
    SparseVec vec;             // pivot entry normalised to 1
    std::vector<Rat> combo;    // vec = sum combo[i] * inserted[i]
  };
  // Reduces v against the stored rows; combo receives -coefficients used.
  SparseVec reduce(SparseVec v, std::vector<Rat>* combo) const;

  std::vector<Row> rows_;
};

}  // namespace dopsym
