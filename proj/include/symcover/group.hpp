#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symcover {

using ElementId = std::uint16_t;

inline constexpr int kDefaultSizeGuard = 256;
inline constexpr int kAutomorphismGuard = 64;

/// Set of element ids; sized for the largest group admitted by the size guard.
using ElementSet = std::bitset<kDefaultSizeGuard>;

/// A finite group given by its full multiplication table. table(x, y) is x·y,
/// and for permutation groups x·y means "apply x first, then y".
///
/// Instances are immutable after construction; all derived metadata
/// (inverses, element orders, conjugacy classes) is computed once.
class FiniteGroup {
 public:
  int order() const { return order_; }
  ElementId identity() const { return identity_; }
  ElementId mul(ElementId x, ElementId y) const { return table_[static_cast<std::size_t>(x) * order_ + y]; }
  ElementId inverse(ElementId x) const { return inverse_[x]; }
  int element_order(ElementId x) const { return element_order_[x]; }
  int conjugacy_class(ElementId x) const { return class_id_[x]; }
  int class_count() const { return class_count_; }
  const std::string& label(ElementId x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

  /// h·x·h⁻¹
  ElementId conjugate(ElementId h, ElementId x) const { return mul(mul(h, x), inverse(h)); }
  /// [x, y] = x·y·x⁻¹·y⁻¹
  ElementId commutator(ElementId x, ElementId y) const {
    return mul(mul(mul(x, y), inverse(x)), inverse(y));
  }
  ElementId power(ElementId x, int k) const;

  bool is_abelian() const;
  /// Distinct element orders, ascending.
  std::vector<int> distinct_orders() const;
  /// Elements of exactly the given order, ascending by id.
  std::vector<ElementId> elements_of_order(int k) const;
  /// Sizes of conjugacy classes, indexed by class id.
  std::vector<int> class_sizes() const;

  /// Ids sorted identity first, then by (element order, label).
  std::vector<ElementId> canonical_order() const;
  /// Stable 64-bit hash of the table after relabeling into canonical order.
  std::uint64_t canonical_hash() const;
  /// Text form of the relabeled table; the cache key is built from it.
  std::string canonical_form() const;

  /// A short generating sequence, chosen greedily by ascending id.
  std::vector<ElementId> generators() const;

  void set_name(std::string name) { name_ = std::move(name); }

 private:
  friend FiniteGroup group_from_table(int, std::vector<std::vector<int>>, std::vector<std::string>, int);

  int order_ = 0;
  ElementId identity_ = 0;
  std::vector<ElementId> table_;
  std::vector<ElementId> inverse_;
  std::vector<int> element_order_;
  std::vector<int> class_id_;
  int class_count_ = 0;
  std::vector<std::string> labels_;
  std::string name_;
};

/// Validates a multiplication table and derives the group metadata.
/// Throws Error with NotAssociative, NoIdentity, NoInverse, SizeGuardExceeded
/// or InvalidArgument (malformed table); diagnostics name the first violation.
FiniteGroup group_from_table(int order, std::vector<std::vector<int>> table,
                             std::vector<std::string> labels = {}, int size_guard = kDefaultSizeGuard);

/// A permutation in one-line notation over {0, …, degree−1}.
using Permutation = std::vector<int>;

/// Cycle notation with 1-based points, e.g. "(1 2 3)"; identity is "()".
std::string cycle_notation(const Permutation& p);

/// Closure of the generators by breadth-first products. Labels are cycle
/// notation strings. Generators use 0-based one-line images.
FiniteGroup group_from_permutations(int degree, const std::vector<Permutation>& generators,
                                    int size_guard = kDefaultSizeGuard);

/// Builds one of: cyclic:n, dihedral:n (order 2n), symmetric:n, alternating:n,
/// quaternion8, klein, product(spec, spec, …).
FiniteGroup preset_group(const std::string& spec, int size_guard = kDefaultSizeGuard);

/// Least subgroup containing the given elements.
ElementSet subgroup_closure(const FiniteGroup& group, std::span<const ElementId> elements);

class GroupAutomorphism {
 public:
  explicit GroupAutomorphism(std::vector<ElementId> images) : images_(std::move(images)) {}
  ElementId operator()(ElementId x) const { return images_[x]; }
  const std::vector<ElementId>& images() const { return images_; }
  bool is_identity() const;

 private:
  std::vector<ElementId> images_;
};

/// All automorphisms, found by backtracking over images of a generating set.
/// The identity automorphism comes first.
std::vector<GroupAutomorphism> automorphisms(const FiniteGroup& group, int guard = kAutomorphismGuard);

}  // namespace symcover
