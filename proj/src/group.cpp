#include "symcover/group.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "symcover/error.hpp"

namespace symcover {

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\n");
  return std::string(s.substr(begin, end - begin + 1));
}

int parse_positive(const std::string& spec, const std::string& text) {
  try {
    std::size_t used = 0;
    int value = std::stoi(text, &used);
    if (used != text.size() || value < 1) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::UnknownPreset, "bad size in preset '" + spec + "'");
  }
}

void check_guard(long long order, int guard, const std::string& what) {
  if (order > guard) {
    throw Error(ErrorCode::SizeGuardExceeded,
                what + " has order " + std::to_string(order) + " > guard " + std::to_string(guard));
  }
}

// Splits "a,b,c" at top-level commas (commas inside parentheses are kept).
std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  parts.push_back(trim(current));
  return parts;
}

FiniteGroup cyclic(int n, int guard) {
  check_guard(n, guard, "cyclic:" + std::to_string(n));
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return group_from_table(n, std::move(table), std::move(labels), guard);
}

// Elements r^k s^e with id k + n·e; s·r·s⁻¹ = r⁻¹.
FiniteGroup dihedral(int n, int guard) {
  check_guard(2LL * n, guard, "dihedral:" + std::to_string(n));
  const int order = 2 * n;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    const int a = x % n, e = x / n;
    std::string rot = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
    labels[x] = e == 0 ? (rot.empty() ? "1" : rot) : rot + "s";
    for (int y = 0; y < order; ++y) {
      const int b = y % n, f = y / n;
      const int k = ((e == 0 ? a + b : a - b) % n + n) % n;
      table[x][y] = k + n * ((e + f) % 2);
    }
  }
  return group_from_table(order, std::move(table), std::move(labels), guard);
}

FiniteGroup quaternion8(int guard) {
  // Units 1, i, j, k as 0..3; unit_mul gives (sign, unit) of the product.
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> unit_mul{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  static const std::array<std::string, 4> names{"1", "i", "j", "k"};
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    labels[x] = (x % 2 ? "-" : "") + names[x / 2];
    for (int y = 0; y < 8; ++y) {
      auto [sign, unit] = unit_mul[x / 2][y / 2];
      if (x % 2) sign = -sign;
      if (y % 2) sign = -sign;
      table[x][y] = unit * 2 + (sign < 0 ? 1 : 0);
    }
  }
  return group_from_table(8, std::move(table), std::move(labels), guard);
}

FiniteGroup direct_product(const FiniteGroup& lhs, const FiniteGroup& rhs, int guard) {
  const long long order = static_cast<long long>(lhs.order()) * rhs.order();
  check_guard(order, guard, "product");
  const int n = static_cast<int>(order);
  const int m = rhs.order();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    labels[x] = "(" + lhs.label(static_cast<ElementId>(x / m)) + "," + rhs.label(static_cast<ElementId>(x % m)) + ")";
    for (int y = 0; y < n; ++y) {
      table[x][y] = lhs.mul(static_cast<ElementId>(x / m), static_cast<ElementId>(y / m)) * m +
                    rhs.mul(static_cast<ElementId>(x % m), static_cast<ElementId>(y % m));
    }
  }
  return group_from_table(n, std::move(table), std::move(labels), guard);
}

Permutation cycle_perm(int degree, std::initializer_list<int> points) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> pts(points);
  for (std::size_t i = 0; i < pts.size(); ++i) p[pts[i]] = pts[(i + 1) % pts.size()];
  return p;
}

FiniteGroup preset_impl(const std::string& spec, int guard) {
  const std::string s = trim(spec);
  if (s == "quaternion8") return quaternion8(guard);
  if (s == "klein") return direct_product(cyclic(2, guard), cyclic(2, guard), guard);
  if (s.rfind("product(", 0) == 0 && s.back() == ')') {
    auto parts = split_top_level(std::string_view(s).substr(8, s.size() - 9));
    if (parts.size() < 2) throw Error(ErrorCode::UnknownPreset, "product needs at least two factors: " + s);
    FiniteGroup acc = preset_impl(parts[0], guard);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_product(acc, preset_impl(parts[i], guard), guard);
    return acc;
  }
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::UnknownPreset, "unknown preset '" + s + "'");
  const std::string kind = s.substr(0, colon);
  const int n = parse_positive(s, s.substr(colon + 1));
  if (kind == "cyclic") return cyclic(n, guard);
  if (kind == "dihedral") return dihedral(n, guard);
  if (kind == "symmetric" || kind == "alternating") {
    std::vector<Permutation> gens;
    if (kind == "symmetric" && n >= 2) {
      gens.push_back(cycle_perm(n, {0, 1}));
      Permutation rot(n);
      for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
      gens.push_back(rot);
    }
    if (kind == "alternating") {
      for (int k = 2; k < n; ++k) gens.push_back(cycle_perm(n, {0, 1, k}));
    }
    return group_from_permutations(n, gens, guard);
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + s + "'");
}

}  // namespace

ElementId FiniteGroup::power(ElementId x, int k) const {
  ElementId base = k < 0 ? inverse(x) : x;
  int e = k < 0 ? -k : k;
  e %= element_order(x);
  ElementId result = identity_;
  for (int i = 0; i < e; ++i) result = mul(result, base);
  return result;
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order_; ++x)
    for (int y = x + 1; y < order_; ++y)
      if (mul(ElementId(x), ElementId(y)) != mul(ElementId(y), ElementId(x))) return false;
  return true;
}

std::vector<int> FiniteGroup::distinct_orders() const {
  std::vector<int> orders(element_order_);
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  return orders;
}

std::vector<ElementId> FiniteGroup::elements_of_order(int k) const {
  std::vector<ElementId> out;
  for (int x = 0; x < order_; ++x)
    if (element_order_[x] == k) out.push_back(ElementId(x));
  return out;
}

std::vector<int> FiniteGroup::class_sizes() const {
  std::vector<int> sizes(class_count_, 0);
  for (int c : class_id_) ++sizes[c];
  return sizes;
}

std::vector<ElementId> FiniteGroup::canonical_order() const {
  std::vector<ElementId> ids(order_);
  std::iota(ids.begin(), ids.end(), ElementId(0));
  std::stable_sort(ids.begin(), ids.end(), [this](ElementId x, ElementId y) {
    const bool xe = x != identity_, ye = y != identity_;
    if (xe != ye) return xe < ye;
    if (element_order_[x] != element_order_[y]) return element_order_[x] < element_order_[y];
    return labels_[x] < labels_[y];
  });
  return ids;
}

std::string FiniteGroup::canonical_form() const {
  const auto ids = canonical_order();
  std::vector<int> position(order_);
  for (int i = 0; i < order_; ++i) position[ids[i]] = i;
  std::ostringstream out;
  out << order_ << ':';
  for (int i = 0; i < order_; ++i) {
    for (int j = 0; j < order_; ++j) out << position[mul(ids[i], ids[j])] << (j + 1 < order_ ? ',' : ';');
  }
  return out.str();
}

std::uint64_t FiniteGroup::canonical_hash() const { return fnv1a(canonical_form()); }

std::vector<ElementId> FiniteGroup::generators() const {
  std::vector<ElementId> candidates(order_);
  std::iota(candidates.begin(), candidates.end(), ElementId(0));
  std::stable_sort(candidates.begin(), candidates.end(),
                   [this](ElementId x, ElementId y) { return element_order_[x] > element_order_[y]; });
  std::vector<ElementId> gens;
  ElementSet span;
  span.set(identity_);
  for (ElementId x : candidates) {
    if (span.test(x)) continue;
    gens.push_back(x);
    span = subgroup_closure(*this, gens);
    if (static_cast<int>(span.count()) == order_) break;
  }
  return gens;
}

FiniteGroup group_from_table(int order, std::vector<std::vector<int>> table, std::vector<std::string> labels,
                             int size_guard) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "group order must be at least 1");
  check_guard(order, std::min(size_guard, kDefaultSizeGuard), "table");
  if (static_cast<int>(table.size()) != order)
    throw Error(ErrorCode::InvalidArgument, "table has " + std::to_string(table.size()) + " rows, expected " +
                                                std::to_string(order));
  FiniteGroup g;
  g.order_ = order;
  g.table_.resize(static_cast<std::size_t>(order) * order);
  for (int x = 0; x < order; ++x) {
    if (static_cast<int>(table[x].size()) != order)
      throw Error(ErrorCode::InvalidArgument, "table row " + std::to_string(x) + " has wrong length");
    for (int y = 0; y < order; ++y) {
      const int v = table[x][y];
      if (v < 0 || v >= order)
        throw Error(ErrorCode::InvalidArgument, "table[" + std::to_string(x) + "][" + std::to_string(y) +
                                                    "] = " + std::to_string(v) + " out of range");
      g.table_[static_cast<std::size_t>(x) * order + y] = static_cast<ElementId>(v);
    }
  }

  std::optional<int> identity;
  for (int e = 0; e < order && !identity; ++e) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorCode::NoIdentity, "no element acts as a two-sided identity");
  g.identity_ = static_cast<ElementId>(*identity);

  g.inverse_.resize(order);
  for (int x = 0; x < order; ++x) {
    int found = -1;
    for (int y = 0; y < order && found < 0; ++y)
      if (table[x][y] == *identity && table[y][x] == *identity) found = y;
    if (found < 0) throw Error(ErrorCode::NoInverse, "element " + std::to_string(x) + " has no two-sided inverse");
    g.inverse_[x] = static_cast<ElementId>(found);
  }

  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const int xy = table[x][y];
      for (int z = 0; z < order; ++z) {
        if (table[xy][z] != table[x][table[y][z]]) {
          throw Error(ErrorCode::NotAssociative, "(x·y)·z != x·(y·z) for (x,y,z) = (" + std::to_string(x) + "," +
                                                     std::to_string(y) + "," + std::to_string(z) + ")");
        }
      }
    }

  g.element_order_.resize(order);
  for (int x = 0; x < order; ++x) {
    int k = 1;
    int acc = x;
    while (acc != *identity) {
      acc = table[acc][x];
      ++k;
    }
    g.element_order_[x] = k;
  }

  g.class_id_.assign(order, -1);
  for (int x = 0; x < order; ++x) {
    if (g.class_id_[x] >= 0) continue;
    for (int h = 0; h < order; ++h) g.class_id_[g.conjugate(ElementId(h), ElementId(x))] = g.class_count_;
    ++g.class_count_;
  }

  if (labels.empty()) {
    labels.resize(order);
    for (int x = 0; x < order; ++x) labels[x] = std::to_string(x);
  }
  if (static_cast<int>(labels.size()) != order)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(order) + " labels");
  g.labels_ = std::move(labels);
  return g;
}

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      if (out.back() != '(') out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

FiniteGroup group_from_permutations(int degree, const std::vector<Permutation>& generators, int size_guard) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "permutation degree must be at least 1");
  for (const auto& gen : generators) {
    std::vector<bool> hit(degree, false);
    bool ok = static_cast<int>(gen.size()) == degree;
    for (int v : gen) {
      if (!ok || v < 0 || v >= degree || hit[v]) {
        ok = false;
        break;
      }
      hit[v] = true;
    }
    if (!ok) throw Error(ErrorCode::InvalidArgument, "generator is not a permutation of degree " + std::to_string(degree));
  }

  // (p·q)[i] = q[p[i]]: apply p first, then q.
  auto compose = [](const Permutation& p, const Permutation& q) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  };

  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elements{id};
  std::map<Permutation, int> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : generators) {
      Permutation next = compose(elements[head], gen);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(std::move(next));
        check_guard(static_cast<long long>(elements.size()), size_guard, "permutation closure");
      }
    }
  }

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    labels[x] = cycle_notation(elements[x]);
    for (int y = 0; y < n; ++y) table[x][y] = index.at(compose(elements[x], elements[y]));
  }
  return group_from_table(n, std::move(table), std::move(labels), size_guard);
}

FiniteGroup preset_group(const std::string& spec, int size_guard) {
  FiniteGroup g = preset_impl(spec, size_guard);
  g.set_name(trim(spec));
  return g;
}

ElementSet subgroup_closure(const FiniteGroup& group, std::span<const ElementId> elements) {
  ElementSet members;
  members.set(group.identity());
  std::vector<ElementId> queue{group.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (ElementId s : elements) {
      const ElementId next = group.mul(queue[head], s);
      if (!members.test(next)) {
        members.set(next);
        queue.push_back(next);
      }
    }
  }
  return members;
}

bool GroupAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<GroupAutomorphism> automorphisms(const FiniteGroup& group, int guard) {
  check_guard(group.order(), guard, "automorphism search");
  constexpr std::size_t kResultBudget = 1u << 20;
  const int n = group.order();
  const auto gens = group.generators();
  const std::size_t k = gens.size();

  std::vector<std::vector<ElementId>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) candidates[i] = group.elements_of_order(group.element_order(gens[i]));

  std::vector<GroupAutomorphism> result;
  std::vector<ElementId> chosen(k);

  // Extends the map over ⟨gens[0..level]⟩; false on conflict or non-injectivity.
  auto extend = [&](std::size_t level, std::vector<int>& image) {
    image.assign(n, -1);
    std::vector<bool> used(n, false);
    image[group.identity()] = group.identity();
    used[group.identity()] = true;
    std::vector<ElementId> queue{group.identity()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const ElementId x = queue[head];
      for (std::size_t j = 0; j <= level; ++j) {
        const ElementId y = group.mul(x, gens[j]);
        const auto want = group.mul(static_cast<ElementId>(image[x]), chosen[j]);
        if (image[y] < 0) {
          if (used[want]) return false;
          image[y] = want;
          used[want] = true;
          queue.push_back(y);
        } else if (image[y] != want) {
          return false;
        }
      }
    }
    return true;
  };

  std::vector<int> image;
  auto search = [&](auto&& self, std::size_t level) -> void {
    for (ElementId cand : candidates[level]) {
      chosen[level] = cand;
      if (!extend(level, image)) continue;
      if (level + 1 == k) {
        std::vector<ElementId> images(n);
        for (int x = 0; x < n; ++x) images[x] = static_cast<ElementId>(image[x]);
        result.emplace_back(std::move(images));
        if (result.size() > kResultBudget)
          throw Error(ErrorCode::SizeGuardExceeded, "more than 2^20 automorphisms");
      } else {
        self(self, level + 1);
      }
    }
  };

  if (k == 0) {
    result.emplace_back(std::vector<ElementId>{group.identity()});
    return result;
  }
  search(search, 0);
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.is_identity() != b.is_identity()) return a.is_identity();
    return a.images() < b.images();
  });
  return result;
}

}  // namespace symcover
