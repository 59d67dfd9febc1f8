#include "symcover/level_sp.hpp"

#include "symcover/error.hpp"

namespace symcover {

namespace {

std::int64_t reduce(std::int64_t v, int m) {
  v %= m;
  return v < 0 ? v + m : v;
}

void require_params(int genus, int level) {
  if (genus < 1) throw Error(ErrorCode::InvalidArgument, "genus must be >= 1");
  if (level < 2) throw Error(ErrorCode::InvalidArgument, "level must be >= 2");
}

}  // namespace

ModMatrix::ModMatrix(int size, int modulus)
    : size_(size), modulus_(modulus), data_(static_cast<std::size_t>(size) * size, 0) {
  if (size < 1 || modulus < 1) throw Error(ErrorCode::InvalidArgument, "matrix size and modulus must be positive");
}

ModMatrix::ModMatrix(std::vector<std::vector<std::int64_t>> rows, int modulus)
    : ModMatrix(static_cast<int>(rows.size()), modulus) {
  for (int r = 0; r < size_; ++r) {
    if (static_cast<int>(rows[r].size()) != size_)
      throw Error(ErrorCode::DimensionMismatch, "matrix is not square: row " + std::to_string(r) + " has " +
                                                    std::to_string(rows[r].size()) + " entries");
    for (int c = 0; c < size_; ++c) set(r, c, rows[r][c]);
  }
}

ModMatrix ModMatrix::identity(int size, int modulus) {
  ModMatrix m(size, modulus);
  for (int i = 0; i < size; ++i) m.set(i, i, 1);
  return m;
}

void ModMatrix::set(int r, int c, std::int64_t v) { data_[static_cast<std::size_t>(r) * size_ + c] = reduce(v, modulus_); }

ModMatrix ModMatrix::transpose() const {
  ModMatrix t(size_, modulus_);
  for (int r = 0; r < size_; ++r)
    for (int c = 0; c < size_; ++c) t.data_[static_cast<std::size_t>(c) * size_ + r] = (*this)(r, c);
  return t;
}

ModMatrix ModMatrix::operator*(const ModMatrix& rhs) const {
  if (size_ != rhs.size_ || modulus_ != rhs.modulus_)
    throw Error(ErrorCode::DimensionMismatch, "matrix product of incompatible shapes or moduli");
  ModMatrix out(size_, modulus_);
  for (int r = 0; r < size_; ++r)
    for (int c = 0; c < size_; ++c) {
      std::int64_t acc = 0;
      for (int k = 0; k < size_; ++k) acc = (acc + (*this)(r, k) * rhs(k, c)) % modulus_;
      out.data_[static_cast<std::size_t>(r) * size_ + c] = acc;
    }
  return out;
}

std::vector<std::vector<int>> standard_form(int genus) {
  if (genus < 1) throw Error(ErrorCode::InvalidArgument, "genus must be >= 1");
  std::vector<std::vector<int>> j(2 * genus, std::vector<int>(2 * genus, 0));
  for (int i = 0; i < genus; ++i) {
    j[2 * i][2 * i + 1] = 1;
    j[2 * i + 1][2 * i] = -1;
  }
  return j;
}

bool is_symplectic(const ModMatrix& m, const SpParams& params) {
  require_params(params.genus, params.level);
  if (m.size() != 2 * params.genus || m.modulus() != params.level) {
    throw Error(ErrorCode::DimensionMismatch, "expected a " + std::to_string(2 * params.genus) + "x" +
                                                  std::to_string(2 * params.genus) + " matrix mod " +
                                                  std::to_string(params.level) + ", got " + std::to_string(m.size()) +
                                                  "x" + std::to_string(m.size()) + " mod " +
                                                  std::to_string(m.modulus()));
  }
  const auto form = standard_form(params.genus);
  const int n = m.size();
  const int mod = params.level;
  // (MᵀJM)[r][c] = Σ_{k,l} M[k][r] J[k][l] M[l][c]; J has one nonzero per row.
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::int64_t acc = 0;
      for (int k = 0; k < n; ++k) {
        const int l = k ^ 1;
        acc += m(k, r) * form[k][l] * m(l, c);
      }
      if (reduce(acc - form[r][c], mod) != 0) return false;
    }
  return true;
}

BigInt sp_order(int genus, int level) {
  require_params(genus, level);
  BigInt order = 1;
  int rest = level;
  for (int p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    const BigInt prime = p;
    BigInt value = boost::multiprecision::pow(prime, static_cast<unsigned>(genus * genus));
    for (int i = 1; i <= genus; ++i) value *= boost::multiprecision::pow(prime, static_cast<unsigned>(2 * i)) - 1;
    value *= boost::multiprecision::pow(prime, static_cast<unsigned>((e - 1) * (2 * genus * genus + genus)));
    order *= value;
  }
  return order;
}

std::uint64_t enumerate_sp(int genus, int level, const std::function<void(const ModMatrix&)>& visit,
                           std::uint64_t budget) {
  require_params(genus, level);
  const int n = 2 * genus;
  const int cells = n * n;
  BigInt candidates = boost::multiprecision::pow(BigInt(level), static_cast<unsigned>(cells));
  if (candidates > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(level) + "^" + std::to_string(cells) +
                                               " candidate matrices exceed the budget of " + std::to_string(budget));
  }
  const SpParams params{genus, level};
  ModMatrix m(n, level);
  std::uint64_t count = 0;
  // Odometer over the entries in row-major order.
  while (true) {
    if (is_symplectic(m, params)) {
      ++count;
      visit(m);
    }
    int cell = cells - 1;
    for (; cell >= 0; --cell) {
      const int r = cell / n, c = cell % n;
      if (m(r, c) + 1 < level) {
        m.set(r, c, m(r, c) + 1);
        break;
      }
      m.set(r, c, 0);
    }
    if (cell < 0) break;
  }
  return count;
}

LevelCoverData level_cover_data(int genus, int level) {
  require_params(genus, level);
  LevelCoverData data;
  data.level = level;
  data.m_valid = level >= 3;
  data.ambient_order = sp_order(genus, level);
  if (!data.m_valid) data.note = "m >= 3 required for free level-m action";
  return data;
}

}  // namespace symcover
