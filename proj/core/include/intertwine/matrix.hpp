#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "intertwine/scalar.hpp"

namespace intertwine {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix diagonal(const Vector& diag);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] Vector row(std::size_t r) const;
  [[nodiscard]] Vector column(std::size_t c) const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] bool is_zero() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Kronecker product a ⊗ b with row index i_a * rows(b) + i_b.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// Reduced row-echelon form; `pivots` receives the pivot column of each nonzero row.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const Matrix& m);

/// Kernel basis in reduced-echelon form: one vector per free column, with a 1
/// in that column and zeros in the other free columns.
std::vector<Vector> kernel(const Matrix& m);

struct SolutionSet {
  std::optional<Vector> particular;  ///< empty when the system is inconsistent
  std::vector<Vector> kernel;
  [[nodiscard]] bool consistent() const { return particular.has_value(); }
};

SolutionSet solve_linear(const Matrix& system, const Vector& rhs);

std::optional<Matrix> inverse(const Matrix& m);

/// Basis of ker(m − mu·I); empty when mu is not an eigenvalue.
std::vector<Vector> eigenspace(const Matrix& m, const Scalar& mu);

bool is_zero(const Vector& v);

}  // namespace intertwine
