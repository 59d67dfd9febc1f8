#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "symcover/error.hpp"
#include "symcover/level_sp.hpp"

using namespace symcover;

namespace {

// q^{g²} Π_{i=1..g} (q^{2i} − 1) for a prime q.
BigInt sp_prime_order(int genus, int q) {
  BigInt out = 1;
  for (int k = 0; k < genus * genus; ++k) out *= q;
  for (int i = 1; i <= genus; ++i) {
    BigInt p = 1;
    for (int k = 0; k < 2 * i; ++k) p *= q;
    out *= p - 1;
  }
  return out;
}

std::vector<ModMatrix> all_sp(int genus, int level) {
  std::vector<ModMatrix> out;
  enumerate_sp(genus, level, [&](const ModMatrix& m) { out.push_back(m); });
  return out;
}

}  // namespace

TEST_CASE("standard_form") {
  CHECK(standard_form(1) == std::vector<std::vector<int>>{{0, 1}, {-1, 0}});
  const auto j2 = standard_form(2);
  REQUIRE(j2.size() == 4);
  CHECK(j2[0] == std::vector<int>{0, 1, 0, 0});
  CHECK(j2[1] == std::vector<int>{-1, 0, 0, 0});
  CHECK(j2[2] == std::vector<int>{0, 0, 0, 1});
  CHECK(j2[3] == std::vector<int>{0, 0, -1, 0});
}

TEST_CASE("is_symplectic examples") {
  CHECK(is_symplectic(ModMatrix({{2, 0}, {0, 3}}, 5), SpParams{1, 5}));
  CHECK_FALSE(is_symplectic(ModMatrix({{2, 0}, {0, 2}}, 4), SpParams{1, 4}));
  CHECK(is_symplectic(ModMatrix::identity(4, 7), SpParams{2, 7}));
  CHECK_THROWS_AS(is_symplectic(ModMatrix::identity(2, 5), SpParams{2, 5}), Error);
  CHECK_THROWS_AS(is_symplectic(ModMatrix::identity(2, 5), SpParams{1, 7}), Error);
  try {
    ModMatrix({{1, 0}}, 3);
    FAIL("non-square accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("genus one: symplectic means determinant one") {
  for (int m = 2; m <= 5; ++m)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            const bool det_one = ((a * d - b * c) % m + m) % m == 1 % m;
            CHECK(is_symplectic(ModMatrix({{a, b}, {c, d}}, m), SpParams{1, m}) == det_one);
          }
}

TEST_CASE("sp_order against enumeration and the prime formula") {
  CHECK(sp_order(1, 2) == 6);
  CHECK(sp_order(1, 3) == 24);
  CHECK(sp_order(2, 2) == 720);
  CHECK(sp_order(1, 4) == 48);
  CHECK(sp_order(1, 6) == 144);
  CHECK(sp_order(2, 3) == 51840);

  for (int m = 2; m <= 6; ++m) {
    CAPTURE(m);
    const auto expected = oracle::brute_force_sp_count(1, m);
    CHECK(sp_order(1, m) == expected);
    CHECK(enumerate_sp(1, m, [](const ModMatrix&) {}) == expected);
  }
  CHECK(sp_order(2, 2) == oracle::brute_force_sp_count(2, 2));

  for (int q : {2, 3, 5, 7, 11})
    for (int g = 1; g <= 4; ++g) CHECK(sp_order(g, q) == sp_prime_order(g, q));
  CHECK(sp_order(3, 2) == 1451520);
}

TEST_CASE("sp_order is multiplicative over coprime levels") {
  for (int g = 1; g <= 3; ++g)
    for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 3}, {4, 9}, {5, 8}, {3, 7}, {16, 25}})
      CHECK(sp_order(g, a * b) == sp_order(g, a) * sp_order(g, b));
  // Prime powers lift by q^{dim Sp} = q^{g(2g+1)}: |Sp_2(ℤ/4)| = 6 · 2³.
  CHECK(sp_order(1, 4) == sp_order(1, 2) * 8);
  CHECK(sp_order(2, 9) == sp_order(2, 3) * BigInt(59049));
  CHECK(sp_order(20, 101) > BigInt(1) << 1000);
}

TEST_CASE("enumerated matrices form a group") {
  for (auto [g, m] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}}) {
    CAPTURE(g);
    CAPTURE(m);
    const auto elements = all_sp(g, m);
    const std::set<ModMatrix> set(elements.begin(), elements.end());
    REQUIRE(set.size() == elements.size());
    CHECK(set.count(ModMatrix::identity(2 * g, m)));
    for (const auto& x : elements) {
      bool has_inverse = false;
      for (const auto& y : elements) {
        const auto xy = x * y;
        CHECK(set.count(xy));
        if (xy == ModMatrix::identity(2 * g, m)) has_inverse = true;
      }
      CHECK(has_inverse);
    }
  }
}

TEST_CASE("enumeration budget") {
  try {
    enumerate_sp(2, 3, [](const ModMatrix&) {});
    FAIL("3^16 candidates accepted under the default budget");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  CHECK_THROWS_AS(enumerate_sp(1, 5, [](const ModMatrix&) {}, 100), Error);
}

TEST_CASE("level_cover_data") {
  const auto three = level_cover_data(2, 3);
  CHECK(three.m_valid);
  CHECK(three.ambient_order == 51840);
  const auto two = level_cover_data(2, 2);
  CHECK_FALSE(two.m_valid);
  CHECK(two.ambient_order == 720);
  CHECK(two.note.find("m >= 3") != std::string::npos);
  CHECK_FALSE(SpParams{2, 2}.free_action());
  CHECK(SpParams{2, 3}.free_action());
}
