#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symcover/group.hpp"
#include "symcover/moves.hpp"
#include "symcover/signature.hpp"
#include "symcover/vectors.hpp"

namespace symcover {

enum class Completeness {
  Exact,
  /// Orbits of a possibly incomplete move set; the count bounds the number of components from above.
  UpperBound,
};

std::string completeness_name(Completeness c);

/// One orbit of generating vectors, i.e. one topological type.
struct TopologicalTypeRecord {
  Signature signature;
  /// Lexicographically least orbit member in the sorted branch arrangement.
  GeneratingVector representative;
  /// Orbit members in the sorted branch arrangement.
  std::uint64_t size = 0;
  int dimension = 0;
  Completeness completeness = Completeness::Exact;
  std::string moveset_tag;
  /// Index of the Aut(G)-merged class, when coarsening was requested.
  std::optional<int> coarse_class;
};

struct OrbitResult {
  /// Every orbit member over all branch arrangements, sorted.
  std::vector<GeneratingVector> members;
  GeneratingVector representative;
  /// Members in the sorted branch arrangement.
  std::uint64_t canonical_size = 0;
};

/// Breadth-first closure of {v} under every move of the set and its inverse.
/// Throws OrbitBudgetExceeded once more than `budget` states are visited.
OrbitResult orbit_of(const FiniteGroup& group, const GeneratingVector& v, const MoveSet& moves,
                     std::uint64_t budget = 1u << 24);

struct ClassifyOptions {
  bool coarse_aut = false;
  int jobs = 1;
  std::optional<std::uint64_t> limit_vectors;
  /// Cap on the number of states in one signature's arrangement space.
  std::uint64_t orbit_budget = 1u << 24;
};

enum class SignatureStatus { Complete, LimitExceeded, OrbitBudgetExceeded };

struct SignatureClassification {
  Signature signature;
  int dimension = 0;
  SignatureStatus status = SignatureStatus::Complete;
  std::string diagnostic;
  /// Valid vectors in the sorted branch arrangement, in lexicographic order.
  std::vector<GeneratingVector> vectors;
  /// orbit_index[k] is the orbit of vectors[k]; orbits are numbered by representative.
  std::vector<std::uint32_t> orbit_index;
  std::vector<TopologicalTypeRecord> orbits;
  Completeness completeness = Completeness::Exact;
  std::optional<int> coarse_count;

  std::uint64_t vector_count() const { return vectors.size(); }
};

/// Partitions all vectors of one signature into orbits with a union-find over
/// the arrangement space. Edges come from single forward move applications;
/// workers split the vector range.
SignatureClassification classify_signature(const FiniteGroup& group, const Signature& sig, const MoveSet& moves,
                                           const ClassifyOptions& options = {});

struct ClassificationReport {
  std::string group_name;
  int group_order = 0;
  std::uint64_t group_hash = 0;
  int genus = 0;
  std::string moveset_tag;
  std::string moveset_fingerprint;
  std::vector<SignatureClassification> signatures;
  std::uint64_t total = 0;
  bool exact = true;
  bool complete = true;
  std::optional<std::uint64_t> coarse_total;
  /// Wall time; not part of the serialized report.
  double seconds = 0.0;
};

ClassificationReport classify(const FiniteGroup& group, int genus, const MoveSet& moves,
                              const ClassifyOptions& options = {});

struct ComponentCount {
  std::uint64_t count = 0;
  bool exact = true;
};

ComponentCount component_count(const FiniteGroup& group, int genus, const MoveSet& moves,
                               const ClassifyOptions& options = {});

struct StabilityRow {
  int gprime = 0;
  int genus = 0;
  std::uint64_t vectors = 0;
  std::uint64_t orbits = 0;
  bool exact = true;
};

/// Orbit counts of the signature (g'; branch multiset) for each admissible g'
/// in [gprime_min, gprime_max]. Quotient data that fails Riemann–Hurwitz with
/// g ≥ 2 or has no deformation space produces no row.
std::vector<StabilityRow> stability_scan(const FiniteGroup& group, std::vector<int> branch_multiset, int gprime_min,
                                         int gprime_max, const MoveSet& moves, const ClassifyOptions& options = {});

}  // namespace symcover
