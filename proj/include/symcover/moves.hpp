#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symcover/group.hpp"
#include "symcover/vectors.hpp"

namespace symcover {

/// A slot of a generating vector by name: a1, b1, …, c1, c2, …
struct Slot {
  char kind = 'a';  // 'a', 'b' or 'c'
  int index = 1;    // 1-based

  /// Flat position in a vector with the given quotient genus.
  int position(int gprime) const { return kind == 'c' ? 2 * gprime + index - 1 : 2 * (index - 1) + (kind == 'b'); }
  bool fits(int gprime, int branch_count) const {
    return index >= 1 && (kind == 'c' ? index <= branch_count : index <= gprime);
  }
  std::string name() const { return std::string(1, kind) + std::to_string(index); }
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct WordLetter {
  Slot slot;
  int exponent = 1;
};

/// A product of slot powers read left to right; empty means the identity.
using Word = std::vector<WordLetter>;

/// Parses words like "b1 * a1^-1"; "1" is the empty word. Throws ParseError.
Word parse_word(const std::string& text);
Slot parse_slot(const std::string& text);
std::string format_word(const Word& word);

/// A user-supplied move: each listed output slot is replaced by a word in the
/// input slots, evaluated simultaneously; unlisted slots are unchanged.
struct WordMap {
  std::string name;
  std::vector<std::pair<Slot, Word>> outputs;
  /// Restrict the move to vectors with exactly this quotient genus.
  std::optional<int> gprime;

  bool applies_to(int gprime_value, int branch_count) const;
  /// Canonical text; feeds the move-set fingerprint.
  std::string canonical() const;
};

enum class MoveKind { Conjugate, Braid, TwistT, TwistU, Registered };

struct Move {
  std::string name;
  MoveKind kind = MoveKind::Conjugate;
  /// Braid position j (acts on c_j, c_{j+1}) or handle i for twists; 1-based.
  int index = 1;
  /// +1 or −1 for braids and twists; for registered moves −1 selects the inverse.
  int sign = 1;
  /// Conjugating element for MoveKind::Conjugate.
  ElementId element = 0;
  std::shared_ptr<const WordMap> word_map;

  static Move conjugate(const FiniteGroup& group, ElementId h);
  static Move braid(int j, int sign);
  static Move twist_t(int i, int sign);
  static Move twist_u(int i, int sign);
  static Move registered(std::shared_ptr<const WordMap> map, int sign = 1);

  Move inverse(const FiniteGroup& group) const;
  /// Whether the move's indices fit a vector with this quotient genus and branch count.
  bool applies_to(int gprime, int branch_count) const;
};

/// Evaluates the move without checking the result. Throws IndexOutOfRange
/// when the move does not fit the vector.
GeneratingVector apply_move_unchecked(const FiniteGroup& group, const GeneratingVector& v, const Move& move);

/// Applies the move and asserts the image is still a generating vector with
/// the same branch-order multiset and generated subgroup; throws
/// PostconditionViolated otherwise.
GeneratingVector apply_move(const FiniteGroup& group, const GeneratingVector& v, const Move& move);

/// Evaluates a word map on the input vector (simultaneous substitution).
GeneratingVector apply_word_map(const FiniteGroup& group, const GeneratingVector& v, const WordMap& map);

/// The move system acting on generating vectors. Conjugation and braids are
/// always present; the default set adds handle twists; registered word maps
/// come on top of either.
class MoveSet {
 public:
  static MoveSet braid_only();
  static MoveSet standard();

  /// "braid-only", "default", or either followed by "+registered".
  std::string tag() const;
  bool has_twists() const { return twists_; }
  const std::vector<std::shared_ptr<const WordMap>>& registered() const { return registered_; }
  /// Stable text identifying the move set; cache keys hash it.
  std::string fingerprint() const;

  /// The concrete moves acting on vectors of the given shape. Conjugations
  /// use a generating set of G. With include_inverses, every move is followed
  /// by its inverse.
  std::vector<Move> moves_for(const FiniteGroup& group, int gprime, int branch_count, bool include_inverses) const;

  MoveSet with_registered(std::shared_ptr<const WordMap> map) const;

 private:
  bool twists_ = true;
  std::vector<std::shared_ptr<const WordMap>> registered_;
};

struct ValidationBattery {
  std::vector<std::string> groups{"cyclic:2", "cyclic:3", "cyclic:4", "symmetric:3"};
  int min_genus = 2;
  int max_genus = 5;
  /// Signatures whose arrangement space holds at most this many vectors are checked exhaustively.
  std::uint64_t exhaustive_cap = 10000;
  /// When set, larger signatures contribute this many random valid vectors each.
  std::optional<std::uint64_t> seed;
  std::uint64_t samples_per_signature = 64;
};

struct MoveCounterexample {
  std::string group;
  std::string signature;
  GeneratingVector input;
  GeneratingVector output;
  std::string reason;
  std::string describe(const FiniteGroup& group) const;
};

/// Runs the registration battery; empty when the word map passes. Checks the
/// surface relation, the branch-order multiset, the generated subgroup and
/// injectivity on each signature's arrangement space.
std::optional<MoveCounterexample> validate_word_map(const WordMap& map, const ValidationBattery& battery = {});

/// Validates and adds the word map (its inverse is implied). Throws
/// MoveValidationFailed naming a concrete counterexample.
MoveSet register_move(const MoveSet& moves, const WordMap& map, const ValidationBattery& battery = {});

}  // namespace symcover
