#include "doctest.h"
#include "oracles.hpp"
#include "symcover/error.hpp"
#include "symcover/vectors.hpp"

using namespace symcover;

TEST_CASE("vector_validate") {
  const auto z2 = preset_group("cyclic:2");
  CHECK(vector_validate(z2, Shape{0, {2, 2, 2, 2, 2, 2}}, GeneratingVector{0, {1, 1, 1, 1, 1, 1}}).ok());

  const auto z3 = preset_group("cyclic:3");
  const auto bad = vector_validate(z3, Shape{0, {3, 3, 3, 3}}, GeneratingVector{0, {1, 1, 1, 1}});
  CHECK(bad.failure == VectorDiagnostics::Failure::Relation);
  CHECK(bad.message.find("residue 1") != std::string::npos);

  const auto z4 = preset_group("cyclic:4");
  CHECK(vector_validate(z4, Shape{0, {4, 4, 2, 2}}, GeneratingVector{0, {1, 3, 2, 2}}).ok());
  const auto order_failure = vector_validate(z4, Shape{0, {4, 4, 2, 2}}, GeneratingVector{0, {1, 2, 3, 2}});
  CHECK(order_failure.failure == VectorDiagnostics::Failure::Order);
  CHECK(order_failure.message.find("c2") != std::string::npos);
  const auto gen_failure = vector_validate(z4, Shape{0, {2, 2, 2, 2}}, GeneratingVector{0, {2, 2, 2, 2}});
  CHECK(gen_failure.failure == VectorDiagnostics::Failure::Generation);
  CHECK(vector_validate(z4, Shape{1, {2}}, GeneratingVector{0, {2}}).failure == VectorDiagnostics::Failure::Length);
}

TEST_CASE("enumeration examples") {
  const auto z2 = preset_group("cyclic:2");
  const auto z3 = preset_group("cyclic:3");
  CHECK(count_vectors(z2, Shape{0, {2, 2, 2, 2, 2, 2}}) == 1);
  CHECK(count_vectors(z3, Shape{0, {3, 3, 3, 3}}) == 6);
  CHECK(count_vectors(z3, Shape{1, {3}}) == 0);
  CHECK(count_vectors(z2, Shape{1, {2, 2}}) == 4);
  CHECK(count_vectors(z2, Shape{4, {}}) == 255);
  CHECK(count_vectors(preset_group("symmetric:3"), Shape{0, {3, 3, 3, 3}}) == 0);
}

TEST_CASE("enumeration matches brute force in order and content") {
  for (const auto& spec : oracle::small_groups()) {
    const auto g = preset_group(spec);
    for (int genus = 2; genus <= 4; ++genus)
      for (const auto& sig : enumerate_signatures(g, genus)) {
        // Keep the brute force affordable: |G|^(2g'+d) ≤ 3·10⁵.
        double work = 1;
        for (int k = 0; k < sig.vector_length(); ++k) work *= g.order();
        if (work > 3e5) continue;
        for (const auto& shape : arrangements(sig)) {
          CAPTURE(spec);
          CAPTURE(format_signature(sig));
          const auto got = list_vectors(g, shape);
          const auto expected = oracle::brute_force_vectors(g, shape.gprime, shape.orders);
          CHECK(oracle::pruned_vectors(g, shape.gprime, shape.orders) == expected);
          REQUIRE(got.size() == expected.size());
          for (std::size_t k = 0; k < got.size(); ++k) {
            CHECK(got[k].entries == expected[k]);
            CHECK(vector_validate(g, shape, got[k]).ok());
          }
        }
      }
  }
}

TEST_CASE("limit and early stop") {
  const auto z3 = preset_group("cyclic:3");
  try {
    count_vectors(z3, Shape{0, {3, 3, 3, 3}}, EnumerationOptions{5});
    FAIL("limit ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LimitExceeded);
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
  CHECK(count_vectors(z3, Shape{0, {3, 3, 3, 3}}, EnumerationOptions{6}) == 6);

  int seen = 0;
  enumerate_vectors(z3, Shape{0, {3, 3, 3, 3}}, [&](const GeneratingVector&) { return ++seen < 2; });
  CHECK(seen == 2);
}

TEST_CASE("arrangements list each ordering once, sorted first") {
  const auto shapes = arrangements(Signature{0, {3, 2, 2}, 6, 2});
  REQUIRE(shapes.size() == 3);
  CHECK(shapes[0].orders == std::vector<int>{2, 2, 3});
  CHECK(shapes[2].orders == std::vector<int>{3, 2, 2});
}
