#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace symcover {

using BigInt = boost::multiprecision::cpp_int;

struct SpParams {
  int genus = 1;
  int level = 2;

  /// The level subgroup acts freely on Teichmüller space only for m ≥ 3.
  bool free_action() const { return level >= 3; }
};

/// A 2g×2g matrix over ℤ/m, row-major, entries kept in [0, m).
class ModMatrix {
 public:
  ModMatrix(int size, int modulus);
  ModMatrix(std::vector<std::vector<std::int64_t>> rows, int modulus);

  static ModMatrix identity(int size, int modulus);

  int size() const { return size_; }
  int modulus() const { return modulus_; }
  std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * size_ + c]; }
  void set(int r, int c, std::int64_t v);

  ModMatrix transpose() const;
  ModMatrix operator*(const ModMatrix& rhs) const;
  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
  friend auto operator<=>(const ModMatrix&, const ModMatrix&) = default;

 private:
  int size_;
  int modulus_;
  std::vector<std::int64_t> data_;
};

/// Block-diagonal form with g blocks [[0,1],[−1,0]] in the basis (a₁,b₁,…,a_g,b_g).
/// Entries are plain integers (−1 stays −1).
std::vector<std::vector<int>> standard_form(int genus);

/// MᵀJM ≡ J (mod m). Throws DimensionMismatch unless M is 2g×2g over ℤ/m.
bool is_symplectic(const ModMatrix& m, const SpParams& params);

/// |Sp_{2g}(ℤ/m)| from the prime-power formula, multiplied over the factorization of m.
BigInt sp_order(int genus, int level);

/// Default cap on m^{(2g)²} candidate matrices.
inline constexpr std::uint64_t kSpEnumerationBudget = 1u << 24;

/// Streams every symplectic matrix; returns the count. Throws BudgetExceeded
/// when m^{(2g)²} exceeds the budget.
std::uint64_t enumerate_sp(int genus, int level, const std::function<void(const ModMatrix&)>& visit,
                           std::uint64_t budget = kSpEnumerationBudget);

struct LevelCoverData {
  int level = 2;
  bool m_valid = false;
  BigInt ambient_order;
  std::string note;
};

/// Level-m bookkeeping for a component of genus g: the validity of m and the
/// order of the ambient finite symplectic group.
LevelCoverData level_cover_data(int genus, int level);

}  // namespace symcover
