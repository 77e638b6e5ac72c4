#include "refocus/sign_matrix.hpp"

#include <string>

namespace refocus {

SignMatrix::SignMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "sign matrix needs at least one row and one column");
  }
  entries_.assign(static_cast<size_t>(rows) * cols, 1);
}

SignMatrix SignMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::InvalidArgument, "sign matrix must be non-empty");
  }
  SignMatrix m(static_cast<int>(rows.size()),
               static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols()) {
      throw Error(ErrorCode::InvalidArgument, "ragged rows in sign matrix");
    }
    for (int c = 0; c < m.cols(); ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void SignMatrix::set(int r, int c, int value) {
  if (value != 1 && value != -1) {
    throw Error(ErrorCode::InvalidArgument, "sign matrix entries must be +1 or -1");
  }
  if (c == 0 && value != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "every row must start at +1 (spin begins in the reference "
                "coherence state)");
  }
  entries_[r * cols_ + c] = static_cast<std::int8_t>(value);
}

std::vector<int> SignMatrix::row(int r) const {
  return {entries_.begin() + static_cast<size_t>(r) * cols_,
          entries_.begin() + static_cast<size_t>(r + 1) * cols_};
}

int SignMatrix::row_sum(int r) const {
  int sum = 0;
  for (int c = 0; c < cols_; ++c) sum += at(r, c);
  return sum;
}

int SignMatrix::row_dot(int r1, int r2) const {
  int dot = 0;
  for (int c = 0; c < cols_; ++c) dot += at(r1, c) * at(r2, c);
  return dot;
}

bool SignMatrix::changes_at(int r, int boundary) const {
  return at(r, boundary - 1) != at(r, boundary);
}

int SignMatrix::row_sign_changes(int r) const {
  int changes = 0;
  for (int b = 1; b < cols_; ++b) {
    if (changes_at(r, b)) ++changes;
  }
  return changes;
}

int SignMatrix::total_sign_changes() const {
  int total = 0;
  for (int r = 0; r < rows_; ++r) total += row_sign_changes(r);
  return total;
}

}  // namespace refocus
