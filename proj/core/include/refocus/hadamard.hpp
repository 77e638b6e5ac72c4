#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "refocus/error.hpp"

namespace refocus {

/// Square ±1 matrix with pairwise orthogonal rows: H·Hᵀ = n·I, checked in
/// exact integer arithmetic. Instances are kept in normalized form
/// (first row and first column all +1).
class HadamardMatrix {
 public:
  static constexpr int kMaxOrder = 64;

  /// Validates squareness, ±1 entries and exact orthogonality.
  explicit HadamardMatrix(const std::vector<std::vector<int>>& rows);

  int order() const noexcept { return order_; }
  int at(int row, int col) const { return entries_[row * order_ + col]; }

  std::vector<int> row(int r) const;

  /// Negates columns, then rows, until row 0 and column 0 are all +1.
  HadamardMatrix& normalize();

  /// Internal sign changes along row r (count of c with H[r,c] != H[r,c+1]).
  int row_sign_changes(int r) const;

  /// Rows of '+'/'-' characters, one line per row.
  std::string to_string() const;

  bool operator==(const HadamardMatrix&) const = default;

 private:
  int order_ = 0;
  std::vector<std::int8_t> entries_;
};

/// True iff m is a Hadamard matrix (M·Mᵀ = n·I). Throws InvalidArgument for
/// non-square matrices or entries outside {+1, -1}.
bool is_hadamard(const std::vector<std::vector<int>>& m);

/// Order 2^k by repeated doubling: S(k) = [[S, S], [S, -S]]. k ≤ 6.
HadamardMatrix sylvester(int k);

/// Order q+1 from the quadratic-residue circulant over Z_q plus a border.
/// Requires q prime with q ≡ 3 (mod 4).
HadamardMatrix paley_i(int q);

/// Order 2(q+1) built blockwise from the symmetric conference matrix of
/// order q+1. Requires q prime with q ≡ 1 (mod 4).
HadamardMatrix paley_ii(int q);

/// Kronecker product; entry[(i·n_b+k),(j·n_b+l)] = a[i,j]·b[k,l].
HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b);

/// Fixed deterministic routing for every admissible order n ≤ 48:
///   - powers of two                         -> sylvester        (1,2,4,8,16,32)
///   - n-1 prime, n-1 ≡ 3 (mod 4)            -> paley_i          (12,20,24,44,48)
///   - n/2-1 prime, n/2-1 ≡ 1 (mod 4)        -> paley_ii         (28,36)
///   - otherwise                             -> H2 ⊗ (order n/2) (40)
HadamardMatrix hadamard_of_order(int n);

/// Orders reachable by hadamard_of_order: {1, 2, 4, 8, ..., 48}.
const std::vector<int>& admissible_orders();

bool is_admissible_order(int n);

/// Smallest admissible order ≥ minimum; throws Capacity above 48.
int smallest_admissible_order(int minimum);

}  // namespace refocus
