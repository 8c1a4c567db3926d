#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "psylex/error.hpp"

namespace psylex {

/// Dense row-major matrix with named rows (document ids) and columns.
struct Matrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> columns;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::vector<std::string> rows, std::vector<std::string> cols)
      : row_ids(std::move(rows)), columns(std::move(cols)), values(row_ids.size() * columns.size()) {}

  std::size_t rows() const noexcept { return row_ids.size(); }
  std::size_t cols() const noexcept { return columns.size(); }

  double& at(std::size_t r, std::size_t c) { return values[r * columns.size() + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * columns.size() + c]; }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
    return out;
  }

  std::size_t column_index(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == name) return c;
    throw Error("no column named '" + name + "'");
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Documents x categories; cell = proportion of the document's tokens matched
/// by the category.
struct ScoreMatrix : Matrix {
  std::string dictionary_id;
  std::string corpus_id;

  using Matrix::Matrix;
  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;
};

/// Documents x entries of one category; cell = occurrences of the entry in the
/// document divided by the document's token count.
struct ItemMatrix : Matrix {
  std::string category;

  using Matrix::Matrix;
  friend bool operator==(const ItemMatrix&, const ItemMatrix&) = default;
};

}  // namespace psylex
