#pragma once

#include <optional>
#include <vector>

#include "qgt/scalar.hpp"

namespace qgt {

struct ExactMatrix {
  Field field;
  size_t rows = 0, cols = 0;
  std::vector<Scalar> a;  // row-major

  ExactMatrix() = default;
  ExactMatrix(Field f, size_t r, size_t c)
      : field(f), rows(r), cols(c), a(r * c, Scalar::zero(f)) {}

  static ExactMatrix identity(Field f, size_t n);

  Scalar& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Scalar& at(size_t i, size_t j) const { return a[i * cols + j]; }

  ExactMatrix operator*(const ExactMatrix& o) const;
  bool is_zero() const;
  bool operator==(const ExactMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct RrefResult {
  ExactMatrix m;
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
};

RrefResult rref(ExactMatrix m);
size_t rank_of(const ExactMatrix& m);

// Basis of the right null space: vectors v with m * v = 0.
std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m);

// Coefficients expressing target in the span, or nullopt when not a member.
std::optional<std::vector<Scalar>> solve_membership(
    const std::vector<std::vector<Scalar>>& span,
    const std::vector<Scalar>& target, const Field& field);

// In-place row reduction of plain row vectors; returns the rank.
// Rows end up in reduced echelon form with zero rows dropped.
size_t rref_rows(std::vector<std::vector<Scalar>>& rows,
                 std::vector<size_t>* pivots = nullptr);

// Reduce v against rref'd rows; returns true when the residual is zero.
bool reduce_in_span(std::vector<Scalar>& v,
                    const std::vector<std::vector<Scalar>>& rows,
                    const std::vector<size_t>& pivots);

}  // namespace qgt
