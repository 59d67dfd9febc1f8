#include "symcover/orbits.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <exception>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "symcover/error.hpp"

namespace symcover {

namespace {

std::string key_of(const GeneratingVector& v) {
  std::string key(v.entries.size(), '\0');
  for (std::size_t k = 0; k < v.entries.size(); ++k) key[k] = static_cast<char>(v.entries[k]);
  return key;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index becomes the root, so roots are scheduling-independent.
  void unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

bool sorted_arrangement(const FiniteGroup& group, const GeneratingVector& v) {
  const auto orders = branch_arrangement(group, v);
  return std::is_sorted(orders.begin(), orders.end());
}

}  // namespace

std::string completeness_name(Completeness c) { return c == Completeness::Exact ? "exact" : "upper-bound"; }

OrbitResult orbit_of(const FiniteGroup& group, const GeneratingVector& v, const MoveSet& moves, std::uint64_t budget) {
  const auto all_moves = moves.moves_for(group, v.gprime, v.branch_count(), true);
  std::unordered_map<std::string, std::uint32_t> seen;
  std::vector<GeneratingVector> queue{v};
  seen.emplace(key_of(v), 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& move : all_moves) {
      GeneratingVector next = apply_move_unchecked(group, queue[head], move);
      if (seen.emplace(key_of(next), static_cast<std::uint32_t>(queue.size())).second) {
        if (queue.size() >= budget) {
          throw Error(ErrorCode::OrbitBudgetExceeded,
                      "orbit exceeds " + std::to_string(budget) + " states; partial orbit discarded");
        }
        queue.push_back(std::move(next));
      }
    }
  }
  OrbitResult result;
  result.members = std::move(queue);
  std::sort(result.members.begin(), result.members.end());
  bool have_rep = false;
  for (const auto& m : result.members) {
    if (!sorted_arrangement(group, m)) continue;
    if (!have_rep) {
      result.representative = m;
      have_rep = true;
    }
    ++result.canonical_size;
  }
  if (!have_rep) result.representative = result.members.front();
  return result;
}

SignatureClassification classify_signature(const FiniteGroup& group, const Signature& sig, const MoveSet& moves,
                                           const ClassifyOptions& options) {
  SignatureClassification out;
  out.signature = sig;
  out.dimension = dimension(sig);

  // Arrangement space: every ordering of the branch orders, sorted ordering first.
  std::vector<GeneratingVector> space;
  std::size_t canonical_count = 0;
  const auto shapes = arrangements(sig);
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    std::uint64_t cap = options.orbit_budget - std::min<std::uint64_t>(options.orbit_budget, space.size());
    bool limit_binds = false;
    if (options.limit_vectors) {
      const std::uint64_t left = *options.limit_vectors - std::min<std::uint64_t>(*options.limit_vectors, space.size());
      if (left <= cap) {
        cap = left;
        limit_binds = true;
      }
    }
    try {
      auto part = list_vectors(group, shapes[s], EnumerationOptions{cap});
      space.insert(space.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LimitExceeded) throw;
      out.status = limit_binds ? SignatureStatus::LimitExceeded : SignatureStatus::OrbitBudgetExceeded;
      out.diagnostic = limit_binds
                           ? std::string(e.what())
                           : "OrbitBudgetExceeded: arrangement space exceeds " + std::to_string(options.orbit_budget) +
                                 " states";
      out.completeness = Completeness::UpperBound;
      return out;
    }
    if (s == 0) canonical_count = space.size();
  }

  const std::size_t n = space.size();
  std::unordered_map<std::string, std::uint32_t> index;
  index.reserve(n);
  for (std::size_t k = 0; k < n; ++k) index.emplace(key_of(space[k]), static_cast<std::uint32_t>(k));

  const auto forward = moves.moves_for(group, sig.gprime, sig.branch_count(), false);
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(std::max<std::size_t>(n, 1))));
  std::vector<DisjointSets> partial(jobs, DisjointSets(n));
  std::vector<std::exception_ptr> failures(jobs);

  auto work = [&](int w) {
    try {
      const std::size_t begin = n * w / jobs, end = n * (w + 1) / jobs;
      for (std::size_t k = begin; k < end; ++k) {
        for (const auto& move : forward) {
          const GeneratingVector image = apply_move_unchecked(group, space[k], move);
          const auto it = index.find(key_of(image));
          if (it == index.end()) {
            throw Error(ErrorCode::PostconditionViolated,
                        move.name + " maps " + format_vector(group, space[k]) + " outside the signature's vectors");
          }
          partial[w].unite(static_cast<std::uint32_t>(k), it->second);
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  DisjointSets& merged = partial[0];
  for (int w = 1; w < jobs; ++w)
    for (std::uint32_t k = 0; k < n; ++k) merged.unite(k, partial[w].find(k));

  // Orbits are numbered by their least canonical member, i.e. by representative.
  std::unordered_map<std::uint32_t, std::uint32_t> orbit_of_root;
  out.orbit_index.resize(canonical_count);
  for (std::uint32_t k = 0; k < canonical_count; ++k) {
    const auto root = merged.find(k);
    auto [it, fresh] = orbit_of_root.emplace(root, static_cast<std::uint32_t>(out.orbits.size()));
    if (fresh) {
      TopologicalTypeRecord record;
      record.signature = sig;
      record.representative = space[k];
      record.dimension = out.dimension;
      record.moveset_tag = moves.tag();
      out.orbits.push_back(std::move(record));
    }
    out.orbit_index[k] = it->second;
    ++out.orbits[it->second].size;
  }
  for (std::uint32_t k = static_cast<std::uint32_t>(canonical_count); k < n; ++k) {
    if (!orbit_of_root.count(merged.find(k))) {
      throw Error(ErrorCode::PostconditionViolated,
                  "orbit of " + format_vector(group, space[k]) + " misses the sorted branch arrangement");
    }
  }

  out.completeness =
      sig.gprime == 0 || out.orbits.size() <= 1 ? Completeness::Exact : Completeness::UpperBound;
  for (auto& record : out.orbits) record.completeness = out.completeness;

  if (options.coarse_aut && !out.orbits.empty()) {
    const auto autos = automorphisms(group);
    DisjointSets classes(out.orbits.size());
    std::unordered_map<std::string, std::uint32_t> canonical_index;
    for (std::uint32_t k = 0; k < canonical_count; ++k) canonical_index.emplace(key_of(space[k]), k);
    for (std::uint32_t o = 0; o < out.orbits.size(); ++o) {
      for (const auto& phi : autos) {
        GeneratingVector image = out.orbits[o].representative;
        for (auto& e : image.entries) e = phi(e);
        const auto it = canonical_index.find(key_of(image));
        if (it == canonical_index.end())
          throw Error(ErrorCode::PostconditionViolated, "automorphism image left the sorted arrangement");
        classes.unite(o, out.orbit_index[it->second]);
      }
    }
    std::unordered_map<std::uint32_t, int> class_number;
    for (std::uint32_t o = 0; o < out.orbits.size(); ++o) {
      auto [it, fresh] = class_number.emplace(classes.find(o), static_cast<int>(class_number.size()));
      out.orbits[o].coarse_class = it->second;
    }
    out.coarse_count = static_cast<int>(class_number.size());
  } else if (options.coarse_aut) {
    out.coarse_count = 0;
  }

  space.resize(canonical_count);
  out.vectors = std::move(space);
  return out;
}

ClassificationReport classify(const FiniteGroup& group, int genus, const MoveSet& moves,
                              const ClassifyOptions& options) {
  if (genus < 2) throw Error(ErrorCode::GenusBelowTwo, "classification needs genus >= 2, got " + std::to_string(genus));
  const auto start = std::chrono::steady_clock::now();
  ClassificationReport report;
  report.group_name = group.name();
  report.group_order = group.order();
  report.group_hash = group.canonical_hash();
  report.genus = genus;
  report.moveset_tag = moves.tag();
  report.moveset_fingerprint = moves.fingerprint();
  if (options.coarse_aut) report.coarse_total = 0;
  for (const auto& sig : enumerate_signatures(group, genus)) {
    auto entry = classify_signature(group, sig, moves, options);
    report.total += entry.orbits.size();
    if (entry.status != SignatureStatus::Complete) report.complete = false;
    if (entry.completeness != Completeness::Exact) report.exact = false;
    if (report.coarse_total && entry.coarse_count) *report.coarse_total += *entry.coarse_count;
    report.signatures.push_back(std::move(entry));
  }
  if (!report.complete) report.exact = false;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ComponentCount component_count(const FiniteGroup& group, int genus, const MoveSet& moves,
                               const ClassifyOptions& options) {
  const auto report = classify(group, genus, moves, options);
  if (!report.complete) {
    for (const auto& s : report.signatures)
      if (s.status != SignatureStatus::Complete) throw Error(s.status == SignatureStatus::LimitExceeded
                                                                 ? ErrorCode::LimitExceeded
                                                                 : ErrorCode::OrbitBudgetExceeded,
                                                             s.diagnostic);
  }
  return {report.total, report.exact};
}

std::vector<StabilityRow> stability_scan(const FiniteGroup& group, std::vector<int> branch_multiset, int gprime_min,
                                         int gprime_max, const MoveSet& moves, const ClassifyOptions& options) {
  std::sort(branch_multiset.begin(), branch_multiset.end());
  const auto orders = group.distinct_orders();
  for (int m : branch_multiset) {
    if (m < 2 || !std::binary_search(orders.begin(), orders.end(), m))
      throw Error(ErrorCode::InvalidArgument, "branch order " + std::to_string(m) + " is not an element order of G");
  }
  if (gprime_min < 0 || gprime_max < gprime_min)
    throw Error(ErrorCode::InvalidArgument, "empty or negative g' range");

  std::vector<StabilityRow> rows;
  for (int gprime = gprime_min; gprime <= gprime_max; ++gprime) {
    Signature sig{gprime, branch_multiset, group.order(), 0};
    try {
      sig.genus = rh_genus(group.order(), gprime, branch_multiset).genus;
      (void)dimension(sig);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonIntegralGenus || e.code() == ErrorCode::GenusBelowTwo ||
          e.code() == ErrorCode::NegativeDimension)
        continue;
      throw;
    }
    const auto entry = classify_signature(group, sig, moves, options);
    if (entry.status != SignatureStatus::Complete) {
      throw Error(entry.status == SignatureStatus::LimitExceeded ? ErrorCode::LimitExceeded
                                                                 : ErrorCode::OrbitBudgetExceeded,
                  "g' = " + std::to_string(gprime) + ": " + entry.diagnostic);
    }
    rows.push_back(StabilityRow{gprime, sig.genus, entry.vector_count(), entry.orbits.size(),
                                entry.completeness == Completeness::Exact});
  }
  return rows;
}

}  // namespace symcover
