#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symcover/group.hpp"
#include "symcover/signature.hpp"

namespace symcover {

/// Quotient genus plus one arrangement (ordering) of the branch orders.
/// Braid moves permute the branch orders, so orbits live in the union of all
/// arrangements of a signature's multiset.
struct Shape {
  int gprime = 0;
  std::vector<int> orders;

  int branch_count() const { return static_cast<int>(orders.size()); }
  int length() const { return 2 * gprime + branch_count(); }
  friend bool operator==(const Shape&, const Shape&) = default;
  friend auto operator<=>(const Shape&, const Shape&) = default;
};

inline Shape shape_of(const Signature& sig) { return Shape{sig.gprime, sig.branch_orders}; }

/// Every distinct arrangement of the branch orders, sorted arrangement first.
std::vector<Shape> arrangements(const Signature& sig);

/// (a₁, b₁, …, a_{g'}, b_{g'}, c₁, …, c_d) stored flat in that order.
/// Accessors take 1-based indices to match slot names a1, b1, c1.
struct GeneratingVector {
  int gprime = 0;
  std::vector<ElementId> entries;

  int branch_count() const { return static_cast<int>(entries.size()) - 2 * gprime; }
  ElementId a(int i) const { return entries[2 * (i - 1)]; }
  ElementId b(int i) const { return entries[2 * (i - 1) + 1]; }
  ElementId c(int j) const { return entries[2 * gprime + j - 1]; }

  friend bool operator==(const GeneratingVector&, const GeneratingVector&) = default;
  friend auto operator<=>(const GeneratingVector&, const GeneratingVector&) = default;
};

/// Π[a_i, b_i] · Π c_j, read left to right.
ElementId relation_residue(const FiniteGroup& group, const GeneratingVector& v);

/// Orders of c₁ … c_d in slot order.
std::vector<int> branch_arrangement(const FiniteGroup& group, const GeneratingVector& v);

std::string format_vector(const FiniteGroup& group, const GeneratingVector& v);

struct VectorDiagnostics {
  enum class Failure { None, Length, Relation, Order, Generation };
  Failure failure = Failure::None;
  std::string message;

  bool ok() const { return failure == Failure::None; }
};

/// Checks length, the surface relation, exact branch orders (positional
/// against the shape) and generation of G. Reports the first failure.
VectorDiagnostics vector_validate(const FiniteGroup& group, const Shape& shape, const GeneratingVector& v);

inline VectorDiagnostics vector_validate(const FiniteGroup& group, const Signature& sig, const GeneratingVector& v) {
  return vector_validate(group, shape_of(sig), v);
}

struct EnumerationOptions {
  /// Throw LimitExceeded once more than this many vectors would be produced.
  std::optional<std::uint64_t> limit;
};

/// Return false to stop the enumeration early.
using VectorVisitor = std::function<bool(const GeneratingVector&)>;

/// Streams every valid vector of the shape exactly once, in lexicographic
/// order of entries. The last branch entry is solved from the relation.
/// Returns the number of vectors visited.
std::uint64_t enumerate_vectors(const FiniteGroup& group, const Shape& shape, const VectorVisitor& visit,
                                const EnumerationOptions& options = {});

std::vector<GeneratingVector> list_vectors(const FiniteGroup& group, const Shape& shape,
                                           const EnumerationOptions& options = {});

std::uint64_t count_vectors(const FiniteGroup& group, const Shape& shape, const EnumerationOptions& options = {});

inline std::uint64_t count_vectors(const FiniteGroup& group, const Signature& sig,
                                   const EnumerationOptions& options = {}) {
  return count_vectors(group, shape_of(sig), options);
}

}  // namespace symcover
