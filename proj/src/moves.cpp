#include "symcover/moves.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "symcover/error.hpp"

namespace symcover {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::string sign_text(int sign) { return sign > 0 ? "+" : "-"; }

void require_fit(const Move& move, const GeneratingVector& v) {
  if (!move.applies_to(v.gprime, v.branch_count())) {
    throw Error(ErrorCode::IndexOutOfRange, "move " + move.name + " does not fit a vector with g' = " +
                                                std::to_string(v.gprime) + " and d = " +
                                                std::to_string(v.branch_count()));
  }
}

std::vector<int> sorted_orders(const FiniteGroup& group, const GeneratingVector& v) {
  auto orders = branch_arrangement(group, v);
  std::sort(orders.begin(), orders.end());
  return orders;
}

// Walks the cycle of v under the forward map; the predecessor of v is its preimage.
GeneratingVector invert_by_cycle(const FiniteGroup& group, const GeneratingVector& v, const WordMap& map) {
  constexpr std::uint64_t kMaxCycle = 1u << 22;
  GeneratingVector current = v;
  for (std::uint64_t step = 0; step < kMaxCycle; ++step) {
    GeneratingVector next = apply_word_map(group, current, map);
    if (next == v) return current;
    current = std::move(next);
  }
  throw Error(ErrorCode::PostconditionViolated,
              "inverse of move " + map.name + " not found: the word map is not a bijection here");
}

}  // namespace

Slot parse_slot(const std::string& text) {
  const std::string s = trim(text);
  if (s.size() < 2 || (s[0] != 'a' && s[0] != 'b' && s[0] != 'c'))
    throw Error(ErrorCode::ParseError, "bad slot name '" + text + "'");
  int index = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw Error(ErrorCode::ParseError, "bad slot name '" + text + "'");
    index = index * 10 + (s[k] - '0');
    if (index > 1000000) throw Error(ErrorCode::ParseError, "slot index too large in '" + text + "'");
  }
  if (index < 1) throw Error(ErrorCode::ParseError, "slot indices start at 1: '" + text + "'");
  return Slot{s[0], index};
}

Word parse_word(const std::string& text) {
  Word word;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, '*')) {
    token = trim(token);
    if (token.empty()) throw Error(ErrorCode::ParseError, "empty factor in word '" + text + "'");
    if (token == "1") continue;
    int exponent = 1;
    const auto caret = token.find('^');
    if (caret != std::string::npos) {
      const std::string power = trim(token.substr(caret + 1));
      try {
        std::size_t used = 0;
        exponent = std::stoi(power, &used);
        if (used != power.size()) throw std::invalid_argument(power);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad exponent '" + power + "' in word '" + text + "'");
      }
      token = token.substr(0, caret);
    }
    if (exponent != 0) word.push_back(WordLetter{parse_slot(token), exponent});
  }
  return word;
}

std::string format_word(const Word& word) {
  if (word.empty()) return "1";
  std::string out;
  for (const auto& letter : word) {
    if (!out.empty()) out += " * ";
    out += letter.slot.name();
    if (letter.exponent != 1) out += "^" + std::to_string(letter.exponent);
  }
  return out;
}

bool WordMap::applies_to(int gprime_value, int branch_count) const {
  if (gprime && *gprime != gprime_value) return false;
  for (const auto& [slot, word] : outputs) {
    if (!slot.fits(gprime_value, branch_count)) return false;
    for (const auto& letter : word)
      if (!letter.slot.fits(gprime_value, branch_count)) return false;
  }
  return true;
}

std::string WordMap::canonical() const {
  auto sorted = outputs;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string out = name + "{";
  if (gprime) out += "g'=" + std::to_string(*gprime) + ";";
  for (const auto& [slot, word] : sorted) out += slot.name() + "=" + format_word(word) + ";";
  return out + "}";
}

Move Move::conjugate(const FiniteGroup& group, ElementId h) {
  Move m;
  m.kind = MoveKind::Conjugate;
  m.element = h;
  m.name = "conj(" + group.label(h) + ")";
  return m;
}

Move Move::braid(int j, int sign) {
  Move m;
  m.kind = MoveKind::Braid;
  m.index = j;
  m.sign = sign;
  m.name = "braid(" + std::to_string(j) + "," + sign_text(sign) + ")";
  return m;
}

Move Move::twist_t(int i, int sign) {
  Move m;
  m.kind = MoveKind::TwistT;
  m.index = i;
  m.sign = sign;
  m.name = "twist_t(" + std::to_string(i) + "," + sign_text(sign) + ")";
  return m;
}

Move Move::twist_u(int i, int sign) {
  Move m;
  m.kind = MoveKind::TwistU;
  m.index = i;
  m.sign = sign;
  m.name = "twist_u(" + std::to_string(i) + "," + sign_text(sign) + ")";
  return m;
}

Move Move::registered(std::shared_ptr<const WordMap> map, int sign) {
  Move m;
  m.kind = MoveKind::Registered;
  m.sign = sign;
  m.name = map->name + (sign < 0 ? "^-1" : "");
  m.word_map = std::move(map);
  return m;
}

Move Move::inverse(const FiniteGroup& group) const {
  switch (kind) {
    case MoveKind::Conjugate: return conjugate(group, group.inverse(element));
    case MoveKind::Braid: return braid(index, -sign);
    case MoveKind::TwistT: return twist_t(index, -sign);
    case MoveKind::TwistU: return twist_u(index, -sign);
    case MoveKind::Registered: return registered(word_map, -sign);
  }
  return *this;
}

bool Move::applies_to(int gprime, int branch_count) const {
  switch (kind) {
    case MoveKind::Conjugate: return true;
    case MoveKind::Braid: return index >= 1 && index + 1 <= branch_count;
    case MoveKind::TwistT:
    case MoveKind::TwistU: return index >= 1 && index <= gprime;
    case MoveKind::Registered: return word_map->applies_to(gprime, branch_count);
  }
  return false;
}

GeneratingVector apply_word_map(const FiniteGroup& group, const GeneratingVector& v, const WordMap& map) {
  GeneratingVector out = v;
  for (const auto& [slot, word] : map.outputs) {
    ElementId acc = group.identity();
    for (const auto& letter : word)
      acc = group.mul(acc, group.power(v.entries[letter.slot.position(v.gprime)], letter.exponent));
    out.entries[slot.position(v.gprime)] = acc;
  }
  return out;
}

GeneratingVector apply_move_unchecked(const FiniteGroup& group, const GeneratingVector& v, const Move& move) {
  require_fit(move, v);
  GeneratingVector out = v;
  auto& e = out.entries;
  switch (move.kind) {
    case MoveKind::Conjugate:
      for (auto& x : e) x = group.conjugate(move.element, x);
      break;
    case MoveKind::Braid: {
      const int p = 2 * v.gprime + move.index - 1;
      const ElementId x = v.entries[p], y = v.entries[p + 1];
      if (move.sign > 0) {
        e[p] = group.conjugate(x, y);
        e[p + 1] = x;
      } else {
        e[p] = y;
        e[p + 1] = group.conjugate(group.inverse(y), x);
      }
      break;
    }
    case MoveKind::TwistT: {
      const int p = 2 * (move.index - 1);
      e[p + 1] = group.mul(v.entries[p + 1], move.sign > 0 ? v.entries[p] : group.inverse(v.entries[p]));
      break;
    }
    case MoveKind::TwistU: {
      const int p = 2 * (move.index - 1);
      e[p] = group.mul(v.entries[p], move.sign > 0 ? v.entries[p + 1] : group.inverse(v.entries[p + 1]));
      break;
    }
    case MoveKind::Registered:
      out = move.sign > 0 ? apply_word_map(group, v, *move.word_map) : invert_by_cycle(group, v, *move.word_map);
      break;
  }
  return out;
}

GeneratingVector apply_move(const FiniteGroup& group, const GeneratingVector& v, const Move& move) {
  GeneratingVector out = apply_move_unchecked(group, v, move);
  const ElementId residue = relation_residue(group, out);
  if (residue != group.identity() && relation_residue(group, v) == group.identity()) {
    throw Error(ErrorCode::PostconditionViolated,
                move.name + " broke the surface relation: residue " + group.label(residue));
  }
  if (sorted_orders(group, out) != sorted_orders(group, v))
    throw Error(ErrorCode::PostconditionViolated, move.name + " changed the branch-order multiset");
  if (subgroup_closure(group, out.entries) != subgroup_closure(group, v.entries))
    throw Error(ErrorCode::PostconditionViolated, move.name + " changed the generated subgroup");
  return out;
}

MoveSet MoveSet::braid_only() {
  MoveSet set;
  set.twists_ = false;
  return set;
}

MoveSet MoveSet::standard() { return MoveSet{}; }

std::string MoveSet::tag() const {
  std::string base = twists_ ? "default" : "braid-only";
  return registered_.empty() ? base : base + "+registered";
}

std::string MoveSet::fingerprint() const {
  std::string out = tag();
  for (const auto& map : registered_) out += "|" + map->canonical();
  return out;
}

std::vector<Move> MoveSet::moves_for(const FiniteGroup& group, int gprime, int branch_count,
                                     bool include_inverses) const {
  std::vector<Move> forward;
  for (ElementId h : group.generators()) forward.push_back(Move::conjugate(group, h));
  for (int j = 1; j + 1 <= branch_count; ++j) forward.push_back(Move::braid(j, +1));
  if (twists_) {
    for (int i = 1; i <= gprime; ++i) {
      forward.push_back(Move::twist_t(i, +1));
      forward.push_back(Move::twist_u(i, +1));
    }
  }
  for (const auto& map : registered_)
    if (map->applies_to(gprime, branch_count)) forward.push_back(Move::registered(map));
  if (!include_inverses) return forward;
  std::vector<Move> all;
  for (const auto& m : forward) {
    all.push_back(m);
    all.push_back(m.inverse(group));
  }
  return all;
}

MoveSet MoveSet::with_registered(std::shared_ptr<const WordMap> map) const {
  MoveSet copy = *this;
  copy.registered_.push_back(std::move(map));
  return copy;
}

std::string MoveCounterexample::describe(const FiniteGroup& group_ref) const {
  if (input.entries.empty() && output.entries.empty()) return reason;
  return reason + " on " + group + " signature (" + signature + "): " + format_vector(group_ref, input) + " -> " +
         format_vector(group_ref, output);
}

namespace {

std::optional<std::string> check_image(const FiniteGroup& group, const GeneratingVector& v,
                                       const GeneratingVector& image) {
  if (sorted_orders(group, image) != sorted_orders(group, v)) return "branch-order multiset not preserved";
  const ElementId residue = relation_residue(group, image);
  if (residue != group.identity()) return "surface relation broken (residue " + group.label(residue) + ")";
  if (subgroup_closure(group, image.entries) != subgroup_closure(group, v.entries))
    return "generated subgroup not preserved";
  return std::nullopt;
}

std::vector<GeneratingVector> sample_vectors(const FiniteGroup& group, const Signature& sig, std::mt19937_64& rng,
                                             std::uint64_t wanted) {
  std::vector<GeneratingVector> out;
  const auto shapes = arrangements(sig);
  const std::uint64_t attempts = wanted * 2000;
  for (std::uint64_t t = 0; t < attempts && out.size() < wanted; ++t) {
    const Shape& shape = shapes[rng() % shapes.size()];
    GeneratingVector v{shape.gprime, std::vector<ElementId>(shape.length())};
    const int d = shape.branch_count();
    for (int s = 0; s < shape.length() - (d > 0 ? 1 : 0); ++s) {
      if (s < 2 * shape.gprime) {
        v.entries[s] = static_cast<ElementId>(rng() % group.order());
      } else {
        const auto pool = group.elements_of_order(shape.orders[s - 2 * shape.gprime]);
        if (pool.empty()) return out;
        v.entries[s] = pool[rng() % pool.size()];
      }
    }
    if (d > 0) {
      v.entries.back() = group.identity();
      v.entries.back() = group.inverse(relation_residue(group, v));
    }
    if (vector_validate(group, shape, v).ok()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::optional<MoveCounterexample> validate_word_map(const WordMap& map, const ValidationBattery& battery) {
  std::optional<std::mt19937_64> rng;
  if (battery.seed) rng.emplace(*battery.seed);
  bool exercised = false;
  for (const auto& spec : battery.groups) {
    const FiniteGroup group = preset_group(spec);
    for (int genus = battery.min_genus; genus <= battery.max_genus; ++genus) {
      for (const auto& sig : enumerate_signatures(group, genus)) {
        if (!map.applies_to(sig.gprime, sig.branch_count())) continue;
        const auto shapes = arrangements(sig);
        std::vector<GeneratingVector> domain;
        bool exhaustive = true;
        try {
          for (const auto& shape : shapes) {
            const std::uint64_t left = battery.exhaustive_cap - domain.size();
            auto part = list_vectors(group, shape, EnumerationOptions{left});
            domain.insert(domain.end(), part.begin(), part.end());
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::LimitExceeded) throw;
          exhaustive = false;
          domain.clear();
          if (rng) domain = sample_vectors(group, sig, *rng, battery.samples_per_signature);
        }
        std::set<GeneratingVector> images;
        for (const auto& v : domain) {
          exercised = true;
          GeneratingVector image = apply_word_map(group, v, map);
          if (auto reason = check_image(group, v, image))
            return MoveCounterexample{spec, format_signature(sig), v, image, *reason};
          if (exhaustive && !images.insert(image).second)
            return MoveCounterexample{spec, format_signature(sig), v, image, "not injective"};
        }
      }
    }
  }
  if (!exercised) return MoveCounterexample{"", "", {}, {}, "no battery vector exercises move " + map.name};
  return std::nullopt;
}

MoveSet register_move(const MoveSet& moves, const WordMap& map, const ValidationBattery& battery) {
  if (map.outputs.empty()) throw Error(ErrorCode::MoveValidationFailed, "move " + map.name + " has no outputs");
  if (auto failure = validate_word_map(map, battery)) {
    std::string detail = failure->reason;
    if (!failure->group.empty()) detail = failure->describe(preset_group(failure->group));
    throw Error(ErrorCode::MoveValidationFailed, "move " + map.name + ": " + detail);
  }
  return moves.with_registered(std::make_shared<const WordMap>(map));
}

}  // namespace symcover
