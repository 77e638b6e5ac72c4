#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "refocus/error.hpp"
#include "refocus/hadamard.hpp"
#include "test_util.hpp"

using namespace refocus;
using testutil::thrown_code;

namespace {

std::vector<std::vector<int>> rows_of(const HadamardMatrix& h) {
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < h.order(); ++r) rows.push_back(h.row(r));
  return rows;
}

}  // namespace

TEST_CASE("order 2 and order 4 match the published forms") {
  CHECK(rows_of(hadamard_of_order(2)) ==
        std::vector<std::vector<int>>{{1, 1}, {1, -1}});
  CHECK(rows_of(hadamard_of_order(4)) ==
        std::vector<std::vector<int>>{
            {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}});
}

TEST_CASE("is_hadamard accepts valid matrices and rejects the rest") {
  CHECK(is_hadamard({{1}}));
  CHECK(is_hadamard({{1, 1}, {1, -1}}));
  CHECK_FALSE(is_hadamard({{1, 1}, {1, 1}}));
  CHECK(thrown_code([] { is_hadamard({{1, 1}}); }) == ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { is_hadamard({{1, 2}, {1, -1}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { is_hadamard({{1, 0}, {1, -1}}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("constructing from non-orthogonal rows throws") {
  CHECK(thrown_code([] { HadamardMatrix({{1, 1}, {1, 1}}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("sylvester doubling") {
  CHECK(sylvester(0).order() == 1);
  CHECK(sylvester(1).order() == 2);
  CHECK(sylvester(6).order() == 64);
  CHECK(thrown_code([] { sylvester(-1); }) == ErrorCode::SizeLimit);
  CHECK(thrown_code([] { sylvester(7); }) == ErrorCode::SizeLimit);

  // Frozen: per-row internal sign changes of the order-8 doubling, computed
  // from sign = (-1)^popcount(r & c).
  const HadamardMatrix h8 = sylvester(3);
  const std::vector<int> expected{0, 7, 3, 4, 1, 6, 2, 5};
  for (int r = 0; r < 8; ++r) CHECK(h8.row_sign_changes(r) == expected[r]);
  int total = 0;
  for (int r = 0; r < 8; ++r) total += h8.row_sign_changes(r);
  CHECK(total == 28);
}

TEST_CASE("paley constructions need the right residue class") {
  CHECK(paley_i(11).order() == 12);
  CHECK(paley_i(23).order() == 24);
  CHECK(paley_ii(13).order() == 28);
  CHECK(paley_ii(17).order() == 36);
  CHECK(thrown_code([] { paley_i(13); }) == ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { paley_i(9); }) == ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { paley_ii(11); }) == ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { paley_ii(15); }) == ErrorCode::InvalidArgument);
  // Valid residue class but past the order cap.
  CHECK(thrown_code([] { paley_i(67); }) == ErrorCode::SizeLimit);
}

TEST_CASE("kronecker product of valid matrices is valid") {
  const HadamardMatrix h8 = kronecker(sylvester(1), sylvester(2));
  CHECK(h8.order() == 8);
  CHECK(is_hadamard(rows_of(h8)));
  const HadamardMatrix h24 = kronecker(sylvester(1), paley_i(11));
  CHECK(h24.order() == 24);
  CHECK(is_hadamard(rows_of(h24)));
  CHECK(thrown_code([] { kronecker(sylvester(2), paley_i(23)); }) ==
        ErrorCode::SizeLimit);
}

TEST_CASE("every admissible order builds a normalized Hadamard matrix") {
  for (int n : admissible_orders()) {
    CAPTURE(n);
    const HadamardMatrix h = hadamard_of_order(n);
    CHECK(h.order() == n);
    CHECK(is_hadamard(rows_of(h)));
    for (int i = 0; i < n; ++i) {
      CHECK(h.at(0, i) == 1);
      CHECK(h.at(i, 0) == 1);
    }
  }
}

TEST_CASE("inadmissible orders are refused with a pointer to the next one") {
  for (int n : {3, 5, 6, 7, 9, 10, 42, 46}) {
    CAPTURE(n);
    CHECK(thrown_code([n] { hadamard_of_order(n); }) == ErrorCode::NoHadamardOrder);
  }
  try {
    hadamard_of_order(3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
  CHECK(thrown_code([] { hadamard_of_order(0); }) == ErrorCode::NoHadamardOrder);
  CHECK(thrown_code([] { hadamard_of_order(52); }) == ErrorCode::NoHadamardOrder);
  CHECK(thrown_code([] { hadamard_of_order(-4); }) == ErrorCode::NoHadamardOrder);
}

TEST_CASE("admissible order helpers") {
  const std::vector<int> expected{1,  2,  4,  8,  12, 16, 20, 24,
                                  28, 32, 36, 40, 44, 48};
  CHECK(admissible_orders() == expected);
  CHECK(is_admissible_order(1));
  CHECK(is_admissible_order(40));
  CHECK_FALSE(is_admissible_order(3));
  CHECK_FALSE(is_admissible_order(52));
  CHECK(smallest_admissible_order(1) == 1);
  CHECK(smallest_admissible_order(2) == 2);
  CHECK(smallest_admissible_order(3) == 4);
  CHECK(smallest_admissible_order(5) == 8);
  CHECK(smallest_admissible_order(9) == 12);
  CHECK(smallest_admissible_order(48) == 48);
  CHECK(thrown_code([] { smallest_admissible_order(49); }) == ErrorCode::Capacity);
}

TEST_CASE("normalize fixes a matrix with negated rows and columns") {
  std::vector<std::vector<int>> rows = {
      {-1, -1, -1, -1}, {-1, 1, -1, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  HadamardMatrix h(rows);
  h.normalize();
  for (int i = 0; i < 4; ++i) {
    CHECK(h.at(0, i) == 1);
    CHECK(h.at(i, 0) == 1);
  }
  CHECK(is_hadamard(rows_of(h)));
}

TEST_CASE("to_string renders rows of plus and minus") {
  CHECK(hadamard_of_order(2).to_string() == "++\n+-\n");
  CHECK(hadamard_of_order(1).to_string() == "+\n");
}
