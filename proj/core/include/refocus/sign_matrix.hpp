#pragma once

#include <cstdint>
#include <vector>

#include "refocus/error.hpp"

namespace refocus {

/// Coherence-order history of a pulse sequence: rows are spins, columns are
/// equal free-evolution intervals, entries are the ±1 coherence sign of the
/// spin during that interval. Every row starts at +1.
class SignMatrix {
 public:
  SignMatrix(int rows, int cols);  // all +1

  /// Validates ±1 entries, rectangular shape and the +1 first column.
  static SignMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int at(int r, int c) const { return entries_[r * cols_ + c]; }

  /// value must be ±1; column 0 must stay +1.
  void set(int r, int c, int value);

  std::vector<int> row(int r) const;

  int row_sum(int r) const;
  int row_dot(int r1, int r2) const;

  /// True iff row r changes sign at internal boundary k (1 ≤ k ≤ cols-1),
  /// i.e. between columns k-1 and k.
  bool changes_at(int r, int boundary) const;

  /// Count of internal sign changes along row r.
  int row_sign_changes(int r) const;

  int total_sign_changes() const;

  bool operator==(const SignMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int8_t> entries_;
};

}  // namespace refocus
