#include "qgt/linalg.hpp"

#include <algorithm>

namespace qgt {

ExactMatrix ExactMatrix::identity(Field f, size_t n) {
  ExactMatrix m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols != o.rows) fail("ShapeMismatch", "matrix product shapes");
  ExactMatrix r(field, rows, o.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      const Scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < o.cols; ++j) {
        const Scalar& y = o.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

bool ExactMatrix::is_zero() const {
  for (const Scalar& s : a)
    if (!s.is_zero()) return false;
  return true;
}

RrefResult rref(ExactMatrix m) {
  RrefResult res;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t piv = row;
    while (piv < m.rows && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Scalar inv = m.at(row, col).inverse();
    for (size_t j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar c = m.at(i, col);
      for (size_t j = col; j < m.cols; ++j)
        m.at(i, j) -= c * m.at(row, j);
    }
    res.pivot_cols.push_back(col);
    ++row;
  }
  res.rank = row;
  res.m = std::move(m);
  return res;
}

size_t rank_of(const ExactMatrix& m) { return rref(m).rank; }

std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols, Scalar::zero(m.field));
    v[free] = Scalar::one(m.field);
    for (size_t k = 0; k < r.pivot_cols.size(); ++k)
      v[r.pivot_cols[k]] = -r.m.at(k, free);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Scalar>> solve_membership(
    const std::vector<std::vector<Scalar>>& span,
    const std::vector<Scalar>& target, const Field& field) {
  size_t n = target.size();
  for (const auto& v : span)
    if (v.size() != n) fail("ShapeMismatch", "span vectors of unequal length");
  ExactMatrix m(field, n, span.size() + 1);
  for (size_t j = 0; j < span.size(); ++j)
    for (size_t i = 0; i < n; ++i) m.at(i, j) = span[j][i];
  for (size_t i = 0; i < n; ++i) m.at(i, span.size()) = target[i];
  RrefResult r = rref(std::move(m));
  for (size_t c : r.pivot_cols)
    if (c == span.size()) return std::nullopt;
  std::vector<Scalar> coef(span.size(), Scalar::zero(field));
  for (size_t k = 0; k < r.pivot_cols.size(); ++k)
    coef[r.pivot_cols[k]] = r.m.at(k, span.size());
  return coef;
}

size_t rref_rows(std::vector<std::vector<Scalar>>& rows, std::vector<size_t>* pivots) {
  if (rows.empty()) {
    if (pivots) pivots->clear();
    return 0;
  }
  size_t cols = rows[0].size();
  std::vector<std::vector<Scalar>> done;
  std::vector<size_t> piv;
  for (auto& v : rows) {
    for (size_t k = 0; k < done.size(); ++k) {
      const Scalar& c = v[piv[k]];
      if (c.is_zero()) continue;
      Scalar f = c;
      for (size_t j = 0; j < cols; ++j) v[j] -= f * done[k][j];
    }
    size_t lead = cols;
    for (size_t j = 0; j < cols; ++j)
      if (!v[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead == cols) continue;
    Scalar inv = v[lead].inverse();
    for (size_t j = lead; j < cols; ++j) v[j] = v[j] * inv;
    for (size_t k = 0; k < done.size(); ++k) {
      const Scalar& c = done[k][lead];
      if (c.is_zero()) continue;
      Scalar f = c;
      for (size_t j = 0; j < cols; ++j) done[k][j] -= f * v[j];
    }
    done.push_back(std::move(v));
    piv.push_back(lead);
  }
  // keep pivots ascending
  std::vector<size_t> order(done.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return piv[a] < piv[b]; });
  std::vector<std::vector<Scalar>> sorted;
  std::vector<size_t> sorted_piv;
  for (size_t i : order) {
    sorted.push_back(std::move(done[i]));
    sorted_piv.push_back(piv[i]);
  }
  rows = std::move(sorted);
  if (pivots) *pivots = sorted_piv;
  return rows.size();
}

bool reduce_in_span(std::vector<Scalar>& v, const std::vector<std::vector<Scalar>>& rows,
                    const std::vector<size_t>& pivots) {
  for (size_t k = 0; k < rows.size(); ++k) {
    const Scalar& c = v[pivots[k]];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[k][j];
  }
  for (const Scalar& s : v)
    if (!s.is_zero()) return false;
  return true;
}

}  // namespace qgt
