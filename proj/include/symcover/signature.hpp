#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "symcover/group.hpp"

namespace symcover {

/// Quotient data (g'; m₁ ≤ … ≤ m_d) of a G-action on a genus-g surface.
struct Signature {
  int gprime = 0;
  std::vector<int> branch_orders;
  int group_order = 1;
  int genus = 2;

  int branch_count() const { return static_cast<int>(branch_orders.size()); }
  /// Number of entries of a generating vector: 2g' + d.
  int vector_length() const { return 2 * gprime + branch_count(); }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// "g'; m1,m2,..." e.g. "0; 3,3,3,3"; "1;" for an empty branch list.
std::string format_signature(const Signature& sig);

/// Parses "g';m1,m2,…" into (g', sorted branch orders). Throws ParseError.
std::pair<int, std::vector<int>> parse_signature(const std::string& text);

struct RiemannHurwitz {
  int genus;
  /// Exact value of 2g − 2 = |G|(2g' − 2) + |G|·Σ(1 − 1/m_j).
  boost::rational<std::int64_t> euler_term;
};

/// Solves Riemann–Hurwitz for the total genus.
/// Throws NonIntegralGenus when 2g − 2 is not an even integer and GenusBelowTwo when g ≤ 1.
RiemannHurwitz rh_genus(int group_order, int gprime, const std::vector<int>& branch_orders);

/// Every signature with genus g whose branch orders are element orders of G,
/// sorted by (g', branch multiset).
std::vector<Signature> enumerate_signatures(const FiniteGroup& group, int genus);

/// 3g' − 3 + d. Throws NegativeDimension for g' = 0 with d < 3 and g' = 1 with d = 0.
int dimension(const Signature& sig);

}  // namespace symcover
