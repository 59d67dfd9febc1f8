#include "symcover/signature.hpp"

#include <algorithm>
#include <sstream>

#include "symcover/error.hpp"

namespace symcover {

std::string format_signature(const Signature& sig) {
  std::ostringstream out;
  out << sig.gprime << ';';
  for (std::size_t j = 0; j < sig.branch_orders.size(); ++j) out << (j ? "," : " ") << sig.branch_orders[j];
  return out.str();
}

std::pair<int, std::vector<int>> parse_signature(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw Error(ErrorCode::ParseError, "signature '" + text + "' lacks ';'");
  auto to_int = [&](const std::string& token) {
    try {
      std::size_t used = 0;
      int v = std::stoi(token, &used);
      while (used < token.size() && token[used] == ' ') ++used;
      if (used != token.size()) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad integer '" + token + "' in signature '" + text + "'");
    }
  };
  const int gprime = to_int(text.substr(0, semi));
  if (gprime < 0) throw Error(ErrorCode::ParseError, "negative quotient genus in '" + text + "'");
  std::vector<int> orders;
  std::stringstream rest(text.substr(semi + 1));
  std::string token;
  while (std::getline(rest, token, ',')) {
    if (token.find_first_not_of(' ') == std::string::npos) continue;
    const int m = to_int(token);
    if (m < 2) throw Error(ErrorCode::ParseError, "branch order " + token + " < 2 in '" + text + "'");
    orders.push_back(m);
  }
  std::sort(orders.begin(), orders.end());
  return {gprime, orders};
}

RiemannHurwitz rh_genus(int group_order, int gprime, const std::vector<int>& branch_orders) {
  using Q = boost::rational<std::int64_t>;
  if (group_order < 1 || gprime < 0)
    throw Error(ErrorCode::InvalidArgument, "group order must be positive and g' non-negative");
  Q rhs = Q(group_order) * Q(2 * gprime - 2);
  for (int m : branch_orders) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "branch order " + std::to_string(m) + " < 2");
    rhs += Q(group_order) * (Q(1) - Q(1, m));
  }
  if (rhs.denominator() != 1 || rhs.numerator() % 2 != 0) {
    std::ostringstream msg;
    msg << "2g-2 = " << rhs << " is not an even integer";
    throw Error(ErrorCode::NonIntegralGenus, msg.str());
  }
  const std::int64_t genus = rhs.numerator() / 2 + 1;
  if (genus < 2) throw Error(ErrorCode::GenusBelowTwo, "Riemann-Hurwitz gives genus " + std::to_string(genus));
  return {static_cast<int>(genus), rhs};
}

std::vector<Signature> enumerate_signatures(const FiniteGroup& group, int genus) {
  std::vector<Signature> out;
  if (genus < 2) return out;
  const long long n = group.order();
  std::vector<int> orders;
  for (int m : group.distinct_orders())
    if (m >= 2) orders.push_back(m);

  // With R = 2g − 2 − n(2g' − 2), each branch point contributes n − n/m ≥ n/2 to R.
  for (int gprime = 0; n * (2LL * gprime - 2) <= 2LL * genus - 2; ++gprime) {
    const long long remaining = 2LL * genus - 2 - n * (2LL * gprime - 2);
    std::vector<int> current;
    auto extend = [&](auto&& self, std::size_t start, long long left) -> void {
      if (left == 0) {
        out.push_back(Signature{gprime, current, group.order(), genus});
        return;
      }
      for (std::size_t i = start; i < orders.size(); ++i) {
        const long long contribution = n - n / orders[i];
        if (contribution > left) continue;
        current.push_back(orders[i]);
        self(self, i, left - contribution);
        current.pop_back();
      }
    };
    extend(extend, 0, remaining);
  }
  std::sort(out.begin(), out.end(), [](const Signature& a, const Signature& b) {
    if (a.gprime != b.gprime) return a.gprime < b.gprime;
    return a.branch_orders < b.branch_orders;
  });
  return out;
}

int dimension(const Signature& sig) {
  const int d = sig.branch_count();
  if ((sig.gprime == 0 && d < 3) || (sig.gprime == 1 && d == 0)) {
    throw Error(ErrorCode::NegativeDimension,
                "quotient data (" + format_signature(sig) + ") admits no deformation space: need d >= 3 for g' = 0 and d >= 1 for g' = 1");
  }
  return 3 * sig.gprime - 3 + d;
}

}  // namespace symcover
