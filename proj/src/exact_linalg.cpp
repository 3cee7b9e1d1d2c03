#include "dopsym/exact_linalg.hpp"

#include <algorithm>

#include "dopsym/errors.hpp"

namespace dopsym {

RatMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  RatMatrix m(rows, cols);
  m.setConstant(Rat(0));
  return m;
}

RatMatrix identity_matrix(Eigen::Index n) {
  RatMatrix m = zero_matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Rat(1);
  return m;
}

RatVector zero_vector(Eigen::Index n) {
  RatVector v(n);
  v.setConstant(Rat(0));
  return v;
}

RatMatrix rref(const RatMatrix& m, std::vector<Eigen::Index>* pivots) {
  RatMatrix a = m;
  if (pivots) pivots->clear();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row) a.row(p).swap(a.row(row));
    const Rat inv = Rat(1) / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) {
      if (!a(row, j).is_zero()) a(row, j) *= inv;
    }
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Rat f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) {
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
      }
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return a;
}

Eigen::Index rank(const RatMatrix& m) {
  std::vector<Eigen::Index> piv;
  rref(m, &piv);
  return static_cast<Eigen::Index>(piv.size());
}

Eigen::Index bareiss_rank(const RatMatrix& m) {
  const auto rows = m.rows();
  const auto cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (Eigen::Index i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).denominator().get_mpz_t());
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      a[i][j] = m(i, j).numerator() * (l / m(i, j).denominator());
    }
  }
  mpz_class prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

RatMatrix nullspace(const RatMatrix& m) {
  std::vector<Eigen::Index> piv;
  const RatMatrix r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  RatMatrix basis = zero_matrix(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const auto fc = free_cols[f];
    basis(fc, f) = Rat(1);
    for (std::size_t i = 0; i < piv.size(); ++i) basis(piv[i], f) = -r(i, fc);
  }
  return basis;
}

RatVector solve(const RatMatrix& m, const RatVector& b) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  std::vector<Eigen::Index> piv;
  const RatMatrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == m.cols()) throw Error("inconsistent linear system");
  RatVector x = zero_vector(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x(piv[i]) = r(i, m.cols());
  return x;
}

bool is_zero(const RatMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_zero()) return false;
    }
  }
  return true;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
  // nonzero rows of each column of a
  std::vector<std::vector<Eigen::Index>> acol(a.cols());
  for (Eigen::Index l = 0; l < a.cols(); ++l) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!a(i, l).is_zero()) acol[l].push_back(i);
    }
  }
  RatMatrix out = zero_matrix(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index l = 0; l < b.rows(); ++l) {
      const Rat& blj = b(l, j);
      if (blj.is_zero()) continue;
      for (auto i : acol[l]) out(i, j) += a(i, l) * blj;
    }
  }
  return out;
}

Rat l1_norm(const RatMatrix& m) {
  Rat s(0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += abs(m(i, j));
  }
  return s;
}

SparseVec to_sparse(const RatMatrix& m) {
  SparseVec v;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_zero()) v.emplace_back(static_cast<std::size_t>(j * m.rows() + i), m(i, j));
    }
  }
  return v;
}

SparseVec to_sparse(const RatVector& v) {
  SparseVec out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) out.emplace_back(static_cast<std::size_t>(i), v(i));
  }
  return out;
}

SparseVec axpy(const SparseVec& y, const Rat& c, const SparseVec& x) {
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, c * x[j].second);
      ++j;
    } else {
      Rat s = y[i].second + c * x[j].second;
      if (!s.is_zero()) out.emplace_back(y[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec SparseEchelon::reduce(SparseVec v, std::vector<Rat>* combo) const {
  // rows_ are kept with distinct pivots and fully reduced against each other
  for (const Row& row : rows_) {
    auto it = std::lower_bound(v.begin(), v.end(), row.pivot,
                               [](const auto& e, std::size_t p) { return e.first < p; });
    if (it == v.end() || it->first != row.pivot) continue;
    const Rat c = -it->second;
    v = axpy(v, c, row.vec);
    if (combo) {
      for (std::size_t i = 0; i < row.combo.size(); ++i) {
        if (!row.combo[i].is_zero()) (*combo)[i] += c * row.combo[i];
      }
    }
  }
  return v;
}

bool SparseEchelon::insert(const SparseVec& v) {
  const std::size_t n = rows_.size();
  std::vector<Rat> combo(n + 1, Rat(0));
  SparseVec r = reduce(v, &combo);
  if (r.empty()) return false;
  combo[n] = Rat(1);
  const Rat inv = Rat(1) / r.front().second;
  for (auto& e : r) e.second *= inv;
  for (auto& c : combo) c *= inv;
  Row fresh{r.front().first, std::move(r), std::move(combo)};
  for (Row& row : rows_) {
    row.combo.emplace_back(0);
    auto it = std::lower_bound(row.vec.begin(), row.vec.end(), fresh.pivot,
                               [](const auto& e, std::size_t p) { return e.first < p; });
    if (it == row.vec.end() || it->first != fresh.pivot) continue;
    const Rat c = -it->second;
    row.vec = axpy(row.vec, c, fresh.vec);
    for (std::size_t i = 0; i < fresh.combo.size(); ++i) row.combo[i] += c * fresh.combo[i];
  }
  rows_.push_back(std::move(fresh));
  return true;
}

std::vector<SparseVec> SparseEchelon::rows() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const Row& r : rows_) out.push_back(r.vec);
  return out;
}

bool SparseEchelon::coordinates(const SparseVec& v, std::vector<Rat>* coords) const {
  std::vector<Rat> combo(rows_.size(), Rat(0));
  SparseVec r = reduce(v, &combo);
  if (!r.empty()) return false;
  // v - sum(rowcoef * row) = 0, and combo holds -sum(rowcoef * row.combo)
  if (coords) {
    coords->assign(rows_.size(), Rat(0));
    for (std::size_t i = 0; i < combo.size(); ++i) (*coords)[i] = -combo[i];
  }
  return true;
}

}  // namespace dopsym
