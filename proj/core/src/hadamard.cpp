#include "refocus/hadamard.hpp"

#include <algorithm>
#include <bit>

namespace refocus {
namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Legendre symbol (a/p) for odd prime p, by Euler's criterion.
int legendre(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long long result = 1;
  long long base = a;
  int exp = (p - 1) / 2;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result == 1 ? 1 : -1;
}

void check_constructed_order(int n) {
  if (n > HadamardMatrix::kMaxOrder) {
    throw Error(ErrorCode::SizeLimit,
                "Hadamard order " + std::to_string(n) + " exceeds the cap of " +
                    std::to_string(HadamardMatrix::kMaxOrder));
  }
}

}  // namespace

HadamardMatrix::HadamardMatrix(const std::vector<std::vector<int>>& rows) {
  if (!is_hadamard(rows)) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix rows are not mutually orthogonal");
  }
  order_ = static_cast<int>(rows.size());
  entries_.reserve(static_cast<size_t>(order_) * order_);
  for (const auto& r : rows) {
    for (int v : r) entries_.push_back(static_cast<std::int8_t>(v));
  }
}

std::vector<int> HadamardMatrix::row(int r) const {
  return {entries_.begin() + static_cast<size_t>(r) * order_,
          entries_.begin() + static_cast<size_t>(r + 1) * order_};
}

HadamardMatrix& HadamardMatrix::normalize() {
  for (int c = 0; c < order_; ++c) {
    if (at(0, c) < 0) {
      for (int r = 0; r < order_; ++r) entries_[r * order_ + c] = -at(r, c);
    }
  }
  for (int r = 0; r < order_; ++r) {
    if (at(r, 0) < 0) {
      for (int c = 0; c < order_; ++c) entries_[r * order_ + c] = -at(r, c);
    }
  }
  return *this;
}

int HadamardMatrix::row_sign_changes(int r) const {
  int changes = 0;
  for (int c = 0; c + 1 < order_; ++c) {
    if (at(r, c) != at(r, c + 1)) ++changes;
  }
  return changes;
}

std::string HadamardMatrix::to_string() const {
  std::string out;
  out.reserve(static_cast<size_t>(order_) * (order_ + 1));
  for (int r = 0; r < order_; ++r) {
    for (int c = 0; c < order_; ++c) out += at(r, c) > 0 ? '+' : '-';
    out += '\n';
  }
  return out;
}

bool is_hadamard(const std::vector<std::vector<int>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::InvalidArgument,
                  "matrix is not square (" + std::to_string(n) + "x" +
                      std::to_string(row.size()) + ")");
    }
    for (int v : row) {
      if (v != 1 && v != -1) {
        throw Error(ErrorCode::InvalidArgument, "entries must be +1 or -1");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int dot = 0;
      for (int c = 0; c < n; ++c) dot += m[i][c] * m[j][c];
      if (dot != 0) return false;
    }
  }
  return true;
}

HadamardMatrix sylvester(int k) {
  if (k < 0 || k > 6) {
    throw Error(ErrorCode::SizeLimit,
                "sylvester exponent must be in [0, 6], got " + std::to_string(k));
  }
  std::vector<std::vector<int>> h{{1}};
  for (int step = 0; step < k; ++step) {
    const int n = static_cast<int>(h.size());
    std::vector<std::vector<int>> next(2 * n, std::vector<int>(2 * n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        next[i][j] = h[i][j];
        next[i][j + n] = h[i][j];
        next[i + n][j] = h[i][j];
        next[i + n][j + n] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return HadamardMatrix(h).normalize();
}

HadamardMatrix paley_i(int q) {
  if (!is_prime(q) || q % 4 != 3) {
    throw Error(ErrorCode::InvalidArgument,
                "paley_i needs a prime q with q = 3 (mod 4), got " +
                    std::to_string(q));
  }
  const int n = q + 1;
  check_constructed_order(n);
  // H = I + C with C = [[0, 1...1], [-1...-1, Q]], Q[r][c] = (r-c / q).
  std::vector<std::vector<int>> h(n, std::vector<int>(n));
  h[0][0] = 1;
  for (int j = 1; j < n; ++j) {
    h[0][j] = 1;
    h[j][0] = -1;
  }
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) {
      h[r + 1][c + 1] = r == c ? 1 : legendre(r - c, q);
    }
  }
  return HadamardMatrix(h).normalize();
}

HadamardMatrix paley_ii(int q) {
  if (!is_prime(q) || q % 4 != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "paley_ii needs a prime q with q = 1 (mod 4), got " +
                    std::to_string(q));
  }
  const int n = 2 * (q + 1);
  check_constructed_order(n);
  // Symmetric conference matrix C of order q+1, then each entry v of C
  // becomes a 2x2 block: 0 -> [[1,-1],[-1,-1]], v -> v·[[1,1],[1,-1]].
  const int m = q + 1;
  std::vector<std::vector<int>> conf(m, std::vector<int>(m, 0));
  for (int j = 1; j < m; ++j) {
    conf[0][j] = 1;
    conf[j][0] = 1;
  }
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) {
      if (r != c) conf[r + 1][c + 1] = legendre(r - c, q);
    }
  }
  std::vector<std::vector<int>> h(n, std::vector<int>(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int v = conf[i][j];
      if (v == 0) {
        h[2 * i][2 * j] = 1;
        h[2 * i][2 * j + 1] = -1;
        h[2 * i + 1][2 * j] = -1;
        h[2 * i + 1][2 * j + 1] = -1;
      } else {
        h[2 * i][2 * j] = v;
        h[2 * i][2 * j + 1] = v;
        h[2 * i + 1][2 * j] = v;
        h[2 * i + 1][2 * j + 1] = -v;
      }
    }
  }
  return HadamardMatrix(h).normalize();
}

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b) {
  const int na = a.order();
  const int nb = b.order();
  check_constructed_order(na * nb);
  std::vector<std::vector<int>> h(na * nb, std::vector<int>(na * nb));
  for (int i = 0; i < na; ++i) {
    for (int k = 0; k < nb; ++k) {
      for (int j = 0; j < na; ++j) {
        for (int l = 0; l < nb; ++l) {
          h[i * nb + k][j * nb + l] = a.at(i, j) * b.at(k, l);
        }
      }
    }
  }
  return HadamardMatrix(h).normalize();
}

HadamardMatrix hadamard_of_order(int n) {
  if (!is_admissible_order(n)) {
    std::string msg = "no Hadamard matrix of order " + std::to_string(n);
    if (n >= 1 && n <= 48) {
      msg += "; smallest admissible order is " +
             std::to_string(smallest_admissible_order(n));
    } else {
      msg += "; supported orders are 1, 2 and multiples of 4 up to 48";
    }
    throw Error(ErrorCode::NoHadamardOrder, msg);
  }
  if (std::has_single_bit(static_cast<unsigned>(n))) {
    return sylvester(std::countr_zero(static_cast<unsigned>(n)));
  }
  if (is_prime(n - 1) && (n - 1) % 4 == 3) return paley_i(n - 1);
  if (is_prime(n / 2 - 1) && (n / 2 - 1) % 4 == 1) return paley_ii(n / 2 - 1);
  return kronecker(sylvester(1), hadamard_of_order(n / 2));
}

const std::vector<int>& admissible_orders() {
  static const std::vector<int> orders = [] {
    std::vector<int> v{1, 2};
    for (int n = 4; n <= 48; n += 4) v.push_back(n);
    return v;
  }();
  return orders;
}

bool is_admissible_order(int n) {
  return n == 1 || n == 2 || (n > 0 && n % 4 == 0 && n <= 48);
}

int smallest_admissible_order(int minimum) {
  for (int n : admissible_orders()) {
    if (n >= minimum) return n;
  }
  throw Error(ErrorCode::Capacity,
              "no Hadamard matrix available for " + std::to_string(minimum) +
                  " rows; constructions stop at order 48");
}

}  // namespace refocus
