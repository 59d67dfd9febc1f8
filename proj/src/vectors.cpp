#include "symcover/vectors.hpp"

#include <algorithm>
#include <sstream>

#include "symcover/error.hpp"

namespace symcover {

std::vector<Shape> arrangements(const Signature& sig) {
  std::vector<Shape> out;
  std::vector<int> orders = sig.branch_orders;
  std::sort(orders.begin(), orders.end());
  do {
    out.push_back(Shape{sig.gprime, orders});
  } while (std::next_permutation(orders.begin(), orders.end()));
  return out;
}

ElementId relation_residue(const FiniteGroup& group, const GeneratingVector& v) {
  ElementId acc = group.identity();
  for (int i = 1; i <= v.gprime; ++i) acc = group.mul(acc, group.commutator(v.a(i), v.b(i)));
  for (int j = 1; j <= v.branch_count(); ++j) acc = group.mul(acc, v.c(j));
  return acc;
}

std::vector<int> branch_arrangement(const FiniteGroup& group, const GeneratingVector& v) {
  std::vector<int> orders;
  for (int j = 1; j <= v.branch_count(); ++j) orders.push_back(group.element_order(v.c(j)));
  return orders;
}

std::string format_vector(const FiniteGroup& group, const GeneratingVector& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < v.entries.size(); ++k) {
    if (k) out << ", ";
    const int slot = static_cast<int>(k);
    if (slot < 2 * v.gprime)
      out << (slot % 2 ? 'b' : 'a') << slot / 2 + 1;
    else
      out << 'c' << slot - 2 * v.gprime + 1;
    out << '=' << group.label(v.entries[k]);
  }
  out << ']';
  return out.str();
}

VectorDiagnostics vector_validate(const FiniteGroup& group, const Shape& shape, const GeneratingVector& v) {
  using F = VectorDiagnostics::Failure;
  if (v.gprime != shape.gprime || static_cast<int>(v.entries.size()) != shape.length()) {
    return {F::Length, "vector has " + std::to_string(v.entries.size()) + " entries with g' = " +
                           std::to_string(v.gprime) + ", shape needs " + std::to_string(shape.length()) +
                           " with g' = " + std::to_string(shape.gprime)};
  }
  for (ElementId e : v.entries)
    if (e >= group.order()) return {F::Length, "entry " + std::to_string(e) + " is not an element id"};
  const ElementId residue = relation_residue(group, v);
  if (residue != group.identity())
    return {F::Relation, "surface relation fails: residue " + group.label(residue)};
  for (int j = 1; j <= shape.branch_count(); ++j) {
    const int got = group.element_order(v.c(j));
    if (got != shape.orders[j - 1]) {
      return {F::Order, "c" + std::to_string(j) + " = " + group.label(v.c(j)) + " has order " + std::to_string(got) +
                            ", expected " + std::to_string(shape.orders[j - 1])};
    }
  }
  const auto span = subgroup_closure(group, v.entries);
  if (static_cast<int>(span.count()) != group.order()) {
    return {F::Generation, "entries generate a subgroup of order " + std::to_string(span.count()) + " < " +
                               std::to_string(group.order())};
  }
  return {};
}

std::uint64_t enumerate_vectors(const FiniteGroup& group, const Shape& shape, const VectorVisitor& visit,
                                const EnumerationOptions& options) {
  const int d = shape.branch_count();
  const int handles = shape.gprime;
  const int free_slots = 2 * handles + std::max(d - 1, 0);

  std::vector<std::vector<ElementId>> candidates(free_slots);
  std::vector<ElementId> all(group.order());
  for (int x = 0; x < group.order(); ++x) all[x] = static_cast<ElementId>(x);
  for (int s = 0; s < free_slots; ++s)
    candidates[s] = s < 2 * handles ? all : group.elements_of_order(shape.orders[s - 2 * handles]);

  GeneratingVector v{handles, std::vector<ElementId>(shape.length(), group.identity())};
  // prefix[s] is the relation product over slots before s; handle pairs fold in after b_i.
  std::vector<ElementId> prefix(free_slots + 1, group.identity());
  std::uint64_t count = 0;
  bool stopped = false;

  auto emit = [&](ElementId product) {
    if (d == 0) {
      if (product != group.identity()) return;
    } else {
      const ElementId last = group.inverse(product);
      if (group.element_order(last) != shape.orders[d - 1]) return;
      v.entries[shape.length() - 1] = last;
    }
    if (static_cast<int>(subgroup_closure(group, v.entries).count()) != group.order()) return;
    if (options.limit && count >= *options.limit) {
      throw Error(ErrorCode::LimitExceeded,
                  "vector enumeration cap " + std::to_string(*options.limit) + " reached");
    }
    ++count;
    if (!visit(v)) stopped = true;
  };

  auto recurse = [&](auto&& self, int slot) -> void {
    if (stopped) return;
    if (slot == free_slots) {
      emit(prefix[slot]);
      return;
    }
    for (ElementId x : candidates[slot]) {
      v.entries[slot] = x;
      if (slot < 2 * handles) {
        prefix[slot + 1] =
            slot % 2 == 1 ? group.mul(prefix[slot - 1], group.commutator(v.entries[slot - 1], x)) : prefix[slot];
      } else {
        prefix[slot + 1] = group.mul(prefix[slot], x);
      }
      self(self, slot + 1);
      if (stopped) return;
    }
  };
  recurse(recurse, 0);
  return count;
}

std::vector<GeneratingVector> list_vectors(const FiniteGroup& group, const Shape& shape,
                                           const EnumerationOptions& options) {
  std::vector<GeneratingVector> out;
  enumerate_vectors(
      group, shape,
      [&](const GeneratingVector& v) {
        out.push_back(v);
        return true;
      },
      options);
  return out;
}

std::uint64_t count_vectors(const FiniteGroup& group, const Shape& shape, const EnumerationOptions& options) {
  return enumerate_vectors(group, shape, [](const GeneratingVector&) { return true; }, options);
}

}  // namespace symcover
