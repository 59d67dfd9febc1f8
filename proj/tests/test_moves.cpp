#include "doctest.h"
#include "oracles.hpp"
#include "symcover/error.hpp"
#include "symcover/moves.hpp"

using namespace symcover;

namespace {

ElementId by_label(const FiniteGroup& g, const std::string& label) {
  for (int x = 0; x < g.order(); ++x)
    if (g.label(ElementId(x)) == label) return ElementId(x);
  FAIL("no element " << label);
  return 0;
}

WordMap word_map(const std::string& name, std::vector<std::pair<std::string, std::string>> outputs,
                 std::optional<int> gprime = std::nullopt) {
  WordMap map;
  map.name = name;
  for (const auto& [slot, word] : outputs) map.outputs.emplace_back(parse_slot(slot), parse_word(word));
  map.gprime = gprime;
  return map;
}

// Slides the first puncture across the last handle; valid for g' = 1.
WordMap coupling_move() {
  return word_map("slide_c1_a1",
                  {{"a1", "a1 * c1"}, {"b1", "c1^-1 * b1"}, {"c1", "c1^-1 * b1 * a1 * c1 * a1^-1 * b1^-1 * c1"}}, 1);
}

}  // namespace

TEST_CASE("apply_move examples") {
  const auto z4 = preset_group("cyclic:4");
  CHECK(apply_move(z4, GeneratingVector{0, {1, 3}}, Move::braid(1, +1)).entries == std::vector<ElementId>{3, 1});

  const auto s3 = preset_group("symmetric:3");
  const auto t12 = by_label(s3, "(1 2)"), t13 = by_label(s3, "(1 3)"), t23 = by_label(s3, "(2 3)");
  const GeneratingVector v{0, {t12, t13, t23, t12}};
  const auto w = apply_move_unchecked(s3, v, Move::braid(1, +1));
  CHECK(w.c(1) == t23);
  CHECK(w.c(2) == t12);

  const auto z2 = preset_group("cyclic:2");
  const auto twisted = apply_move(z2, GeneratingVector{1, {1, 0, 1, 1}}, Move::twist_t(1, +1));
  CHECK(twisted.entries == std::vector<ElementId>{1, 1, 1, 1});

  CHECK_THROWS_AS(apply_move(z4, GeneratingVector{0, {1, 3}}, Move::braid(2, +1)), Error);
  CHECK_THROWS_AS(apply_move(z2, GeneratingVector{0, {1, 1}}, Move::twist_u(1, +1)), Error);
}

TEST_CASE("built-in moves are sound, invertible and satisfy the braid relation") {
  const MoveSet moves = MoveSet::standard();
  for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:4", "klein", "symmetric:3"}) {
    const auto g = preset_group(spec);
    for (int genus = 2; genus <= 5; ++genus)
      for (const auto& sig : enumerate_signatures(g, genus)) {
        const auto all_moves = moves.moves_for(g, sig.gprime, sig.branch_count(), true);
        for (const auto& shape : arrangements(sig))
          for (const auto& v : list_vectors(g, shape)) {
            CAPTURE(spec);
            CAPTURE(format_vector(g, v));
            for (std::size_t k = 0; k < all_moves.size(); k += 2) {
              const auto w = apply_move(g, v, all_moves[k]);
              auto orders = branch_arrangement(g, w);
              CHECK(vector_validate(g, Shape{sig.gprime, orders}, w).ok());
              std::sort(orders.begin(), orders.end());
              CHECK(orders == sig.branch_orders);
              CHECK(apply_move(g, w, all_moves[k + 1]) == v);
            }
            for (int j = 1; j + 2 <= sig.branch_count(); ++j) {
              const auto bj = Move::braid(j, +1), bk = Move::braid(j + 1, +1);
              auto lhs = apply_move_unchecked(g, apply_move_unchecked(g, apply_move_unchecked(g, v, bj), bk), bj);
              auto rhs = apply_move_unchecked(g, apply_move_unchecked(g, apply_move_unchecked(g, v, bk), bj), bk);
              CHECK(lhs == rhs);
            }
          }
      }
  }
}

TEST_CASE("commutator identities behind the handle twists") {
  for (const char* spec : {"cyclic:6", "symmetric:3", "dihedral:4", "quaternion8", "alternating:4", "symmetric:4",
                           "dihedral:6", "product(symmetric:3,cyclic:4)"}) {
    const auto g = preset_group(spec);
    REQUIRE(g.order() <= 24);
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y) {
        const auto a = ElementId(x), b = ElementId(y);
        CHECK(g.commutator(a, g.mul(b, a)) == g.commutator(a, b));
        CHECK(g.commutator(g.mul(a, b), b) == g.commutator(a, b));
      }
  }
}

TEST_CASE("word parsing") {
  const auto w = parse_word("b1 * a1^-1");
  REQUIRE(w.size() == 2);
  CHECK(w[0].slot.name() == "b1");
  CHECK(w[1].exponent == -1);
  CHECK(format_word(w) == "b1 * a1^-1");
  CHECK(parse_word("1").empty());
  CHECK_THROWS_AS(parse_word("x1"), Error);
  CHECK_THROWS_AS(parse_word("a1 * * b1"), Error);
  CHECK_THROWS_AS(parse_word("a0"), Error);
  CHECK_THROWS_AS(parse_word("a1^z"), Error);
}

TEST_CASE("registering a braid as a word map reproduces the built-in") {
  const auto braid = word_map("braid_as_words", {{"c1", "c1 * c2 * c1^-1"}, {"c2", "c1"}});
  const MoveSet moves = register_move(MoveSet::standard(), braid);
  CHECK(moves.tag() == "default+registered");
  CHECK(moves.fingerprint() != MoveSet::standard().fingerprint());
  const auto s3 = preset_group("symmetric:3");
  const auto registered = Move::registered(moves.registered().front());
  for (const auto& v : list_vectors(s3, Shape{0, {2, 2, 2, 2, 3}})) {
    CHECK(apply_move(s3, v, registered) == apply_move(s3, v, Move::braid(1, +1)));
    CHECK(apply_move(s3, v, registered.inverse(s3)) == apply_move(s3, v, Move::braid(1, -1)));
  }
}

TEST_CASE("order-breaking move is rejected with a counterexample") {
  const auto bad = word_map("c1_times_c2", {{"c1", "c1 * c2"}});
  const auto failure = validate_word_map(bad);
  REQUIRE(failure);
  CHECK(failure->reason == "branch-order multiset not preserved");
  const auto g = preset_group(failure->group);
  CHECK(vector_validate(g, Shape{failure->input.gprime, branch_arrangement(g, failure->input)}, failure->input).ok());

  // The ℤ/4 instance: c = (1,1,2) maps to c₁ = 2, of order 2 instead of 4.
  const auto z4 = preset_group("cyclic:4");
  const auto image = apply_word_map(z4, GeneratingVector{0, {1, 1, 2}}, bad);
  CHECK(z4.element_order(image.c(1)) == 2);

  try {
    register_move(MoveSet::standard(), bad);
    FAIL("bad move registered");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MoveValidationFailed);
    CHECK(std::string(e.what()).find("->") != std::string::npos);
  }
}

TEST_CASE("relation-breaking move is rejected on S3") {
  const auto bad = word_map("a1_times_c1", {{"a1", "a1 * c1"}});
  const auto failure = validate_word_map(bad);
  REQUIRE(failure);
  CHECK(failure->group == "symmetric:3");
  CHECK(failure->reason.find("surface relation") != std::string::npos);
  const auto s3 = preset_group("symmetric:3");
  CHECK(relation_residue(s3, failure->input) == s3.identity());
  CHECK(relation_residue(s3, failure->output) != s3.identity());
  CHECK_THROWS_AS(register_move(MoveSet::standard(), bad), Error);
}

TEST_CASE("non-injective and unexercised moves are rejected") {
  // Sends every handle pair to (1, 1).
  const auto collapse = word_map("collapse", {{"a1", "1"}, {"b1", "1"}}, 1);
  CHECK(validate_word_map(collapse));
  const auto unreachable = word_map("far", {{"a9", "a9"}});
  const auto failure = validate_word_map(unreachable);
  REQUIRE(failure);
  CHECK(failure->reason.find("no battery vector") != std::string::npos);
}

TEST_CASE("the handle-puncture coupling move passes validation") {
  const auto map = coupling_move();
  CHECK_FALSE(validate_word_map(map));
  const MoveSet moves = register_move(MoveSet::standard(), map);
  const auto z2 = preset_group("cyclic:2");
  const auto w = apply_move(z2, GeneratingVector{1, {0, 0, 1, 1}}, Move::registered(moves.registered().front()));
  CHECK(w.entries == std::vector<ElementId>{1, 1, 1, 1});

  // Seeded sampling adds random vectors from larger signatures.
  ValidationBattery seeded;
  seeded.seed = 7;
  seeded.max_genus = 7;
  CHECK_FALSE(validate_word_map(map, seeded));
  // Without the g' = 1 restriction the move breaks the relation at g' = 2;
  // S4 is the smallest preset where this shows up (S3, A4, D4 and Q8 do not).
  const auto s4 = preset_group("symmetric:4");
  bool broken = false;
  enumerate_vectors(s4, Shape{2, {2}}, [&](const GeneratingVector& v) {
    broken = relation_residue(s4, apply_word_map(s4, v, map)) != s4.identity();
    return !broken;
  });
  CHECK(broken);
  CHECK_FALSE(map.applies_to(2, 1));
}

TEST_CASE("registered inverse undoes the forward map") {
  const auto map = std::make_shared<const WordMap>(coupling_move());
  const auto s3 = preset_group("symmetric:3");
  const auto fwd = Move::registered(map), back = fwd.inverse(s3);
  for (const auto& v : list_vectors(s3, Shape{1, {3}})) {
    CHECK(apply_move(s3, apply_move(s3, v, fwd), back) == v);
    CHECK(apply_move(s3, apply_move(s3, v, back), fwd) == v);
  }
}
