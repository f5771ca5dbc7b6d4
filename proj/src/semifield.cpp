// semifield.cpp — cubes, tables, nuclei, primitivity.
#include "semi/semifield.hpp"

#include <algorithm>
#include <stdexcept>

namespace semi {

bool check_standard_basis(const std::vector<BitMatrix>& mats, std::string* why) {
  if (mats.empty()) throw std::invalid_argument("check_standard_basis: empty list");
  int d = mats[0].dim();
  for (const auto& m : mats)
    if (m.dim() != d) throw std::invalid_argument("check_standard_basis: mixed dims");
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (int(mats.size()) != d)
    return fail("expected " + std::to_string(d) + " matrices, got " + std::to_string(mats.size()));
  if (!(mats[0] == BitMatrix::identity(d))) return fail("A1 is not the identity");
  for (int i = 1; i <= d; ++i) {
    if (mats[i - 1].first_column() != (uint8_t(1) << (i - 1)))
      return fail("first column of A" + std::to_string(i) + " is not e" + std::to_string(i));
  }
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::array<uint8_t, 6> rows{};
    for (int i = 0; i < d; ++i)
      if (mask >> i & 1)
        for (int r = 0; r < d; ++r) rows[r] ^= mats[i].row_bits(r);
    if (rank_rows(rows, d) != d) {
      std::string combo;
      for (int i = 0; i < d; ++i)
        if (mask >> i & 1) combo += (combo.empty() ? "A" : "+A") + std::to_string(i + 1);
      return fail("combination " + combo + " is singular");
    }
  }
  if (why) why->clear();
  return true;
}

StandardBasis basis_from_codes(const std::vector<uint32_t>& codes, int dim) {
  check_dim(dim);
  if (int(codes.size()) != dim - 1)
    throw std::invalid_argument("basis_from_codes: expected " + std::to_string(dim - 1) +
                                " codes, got " + std::to_string(codes.size()));
  StandardBasis b;
  b.dim = dim;
  b.mats.push_back(BitMatrix::identity(dim));
  for (int i = 2; i <= dim; ++i) b.mats.push_back(decode_matrix(i, codes[i - 2], dim));
  return b;
}

std::vector<uint32_t> codes_from_basis(const StandardBasis& basis) {
  std::vector<uint32_t> codes;
  for (int i = 2; i <= basis.dim; ++i) codes.push_back(encode_matrix(basis.mats[i - 1], i));
  return codes;
}

namespace {
constexpr std::array<const char*, 6> kPermNames = {"1", "(12)", "(13)", "(123)", "(23)", "(132)"};
constexpr std::array<std::array<int, 3>, 6> kPermMaps = {{
    {0, 1, 2},  // 1
    {1, 0, 2},  // (12)
    {2, 1, 0},  // (13)
    {1, 2, 0},  // (123): 1->2, 2->3, 3->1
    {0, 2, 1},  // (23)
    {2, 0, 1},  // (132): 1->3, 3->2, 2->1
}};
}  // namespace

std::string_view Perm3::name() const {
  for (size_t k = 0; k < kPermMaps.size(); ++k)
    if (kPermMaps[k] == map) return kPermNames[k];
  throw InternalCheckError("Perm3: not a permutation");
}

const std::array<Perm3, 6>& Perm3::all() {
  static const std::array<Perm3, 6> perms = [] {
    std::array<Perm3, 6> a{};
    for (size_t k = 0; k < 6; ++k) a[k] = Perm3{kPermMaps[k]};
    return a;
  }();
  return perms;
}

Perm3 Perm3::by_name(std::string_view name) {
  for (size_t k = 0; k < kPermNames.size(); ++k)
    if (name == kPermNames[k]) return Perm3{kPermMaps[k]};
  throw std::invalid_argument("Perm3: unknown permutation \"" + std::string(name) + "\"");
}

Cube Cube::from_basis(const StandardBasis& basis) {
  Cube c(basis.dim);
  for (int i1 = 0; i1 < basis.dim; ++i1)
    for (int i2 = 0; i2 < basis.dim; ++i2) c.v_[i1][i2] = basis.mats[i1].column_bits(i2);
  return c;
}

Cube Cube::from_table(const SemifieldTable& t) {
  Cube c(t.dim());
  for (int i1 = 0; i1 < t.dim(); ++i1)
    for (int i2 = 0; i2 < t.dim(); ++i2)
      c.v_[i1][i2] = t.mul(uint8_t(1) << i1, uint8_t(1) << i2);
  return c;
}

BitMatrix Cube::slice(int i1) const {
  BitMatrix m(dim_);
  for (int i2 = 1; i2 <= dim_; ++i2)
    for (int i3 = 1; i3 <= dim_; ++i3) m.set(i3, i2, get(i1, i2, i3));
  return m;
}

Cube apply_permutation(const Cube& c, const Perm3& sigma) {
  int d = c.dim();
  Cube out(d);
  std::array<int, 3> idx;
  for (idx[0] = 1; idx[0] <= d; ++idx[0])
    for (idx[1] = 1; idx[1] <= d; ++idx[1])
      for (idx[2] = 1; idx[2] <= d; ++idx[2])
        out.set(idx[0], idx[1], idx[2],
                c.get(idx[sigma.map[0]], idx[sigma.map[1]], idx[sigma.map[2]]));
  return out;
}

namespace {
// Raw bilinear extension of a cube; no loop structure implied.
std::vector<uint8_t> bilinear_table(const Cube& c) {
  int d = c.dim();
  int q = 1 << d;
  std::vector<uint8_t> prod(size_t(q) * q, 0);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      uint8_t acc = 0;
      for (int i1 = 0; i1 < d; ++i1)
        if (x >> i1 & 1)
          for (int i2 = 0; i2 < d; ++i2)
            if (y >> i2 & 1) acc ^= c.pair_bits(i1, i2);
      prod[size_t(x) * q + y] = acc;
    }
  return prod;
}

void validate_loop(int dim, const std::vector<uint8_t>& prod, uint8_t identity) {
  check_dim(dim);
  int q = 1 << dim;
  if (prod.size() != size_t(q) * q)
    throw std::invalid_argument("SemifieldTable: product grid has wrong size");
  if (identity == 0 || identity >= q)
    throw std::invalid_argument("SemifieldTable: identity out of range");
  for (int x = 0; x < q; ++x) {
    uint64_t row_seen = 0, col_seen = 0;
    for (int y = 0; y < q; ++y) {
      row_seen |= uint64_t(1) << prod[size_t(x) * q + y];
      col_seen |= uint64_t(1) << prod[size_t(y) * q + x];
    }
    uint64_t want = (q == 64) ? ~uint64_t(0) : (uint64_t(1) << q) - 1;
    if (x != 0 && (row_seen != want || col_seen != want))
      throw std::invalid_argument("SemifieldTable: row/column of element " + std::to_string(x) +
                                  " is not a permutation");
    if (prod[size_t(identity) * q + x] != x || prod[size_t(x) * q + identity] != x)
      throw std::invalid_argument("SemifieldTable: claimed identity does not fix element " +
                                  std::to_string(x));
  }
}
}  // namespace

SemifieldTable::SemifieldTable(int dim, std::vector<uint8_t> prod, uint8_t identity)
    : dim_(dim), q_(1 << dim), identity_(identity), prod_(std::move(prod)) {
  validate_loop(dim_, prod_, identity_);
}

BitMatrix SemifieldTable::left_mult(uint8_t x) const {
  BitMatrix m(dim_);
  for (int i = 0; i < dim_; ++i) {
    uint8_t img = mul(x, uint8_t(1) << i);
    for (int r = 0; r < dim_; ++r)
      if (img >> r & 1) m.set(r + 1, i + 1, 1);
  }
  return m;
}

BitMatrix SemifieldTable::right_mult(uint8_t y) const {
  BitMatrix m(dim_);
  for (int i = 0; i < dim_; ++i) {
    uint8_t img = mul(uint8_t(1) << i, y);
    for (int r = 0; r < dim_; ++r)
      if (img >> r & 1) m.set(r + 1, i + 1, 1);
  }
  return m;
}

uint8_t SemifieldTable::solve_left(uint8_t a, uint8_t x) const {
  if (a == 0) throw std::invalid_argument("solve_left: a = 0");
  for (int y = 0; y < q_; ++y)
    if (mul(a, uint8_t(y)) == x) return uint8_t(y);
  throw InternalCheckError("solve_left: no solution in a loop");
}

uint8_t SemifieldTable::solve_right(uint8_t b, uint8_t x) const {
  if (b == 0) throw std::invalid_argument("solve_right: b = 0");
  for (int y = 0; y < q_; ++y)
    if (mul(uint8_t(y), b) == x) return uint8_t(y);
  throw InternalCheckError("solve_right: no solution in a loop");
}

SemifieldTable table_from_basis(const StandardBasis& basis) {
  int d = basis.dim;
  int q = 1 << d;
  std::vector<uint8_t> prod(size_t(q) * q, 0);
  for (int x = 0; x < q; ++x) {
    std::array<uint8_t, 6> rows{};
    for (int i = 0; i < d; ++i)
      if (x >> i & 1)
        for (int r = 0; r < d; ++r) rows[r] ^= basis.mats[i].row_bits(r);
    for (int y = 0; y < q; ++y) {
      uint8_t acc = 0;
      for (int r = 0; r < d; ++r) acc |= uint8_t(parity8(rows[r] & y)) << r;
      prod[size_t(x) * q + y] = acc;
    }
  }
  return SemifieldTable(SemifieldTable::Trusted{}, d, std::move(prod), 1);
}

SemifieldTable presemifield_to_semifield(const Cube& c) {
  int d = c.dim();
  int q = 1 << d;
  std::vector<uint8_t> raw = bilinear_table(c);
  auto at = [&](int x, int y) { return raw[size_t(x) * q + y]; };
  for (int x = 1; x < q; ++x)
    for (int y = 1; y < q; ++y)
      if (at(x, y) == 0)
        throw std::invalid_argument("presemifield_to_semifield: zero divisors (" +
                                    std::to_string(x) + " * " + std::to_string(y) + " = 0)");
  const int u = 1;
  // r_of[x]: the r with r*u = x; s_of[y]: the s with u*s = y.
  std::array<uint8_t, 64> r_of{}, s_of{};
  for (int r = 0; r < q; ++r) r_of[at(r, u)] = uint8_t(r);
  for (int s = 0; s < q; ++s) s_of[at(u, s)] = uint8_t(s);
  std::vector<uint8_t> prod(size_t(q) * q, 0);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) prod[size_t(x) * q + y] = at(r_of[x], s_of[y]);
  return SemifieldTable(SemifieldTable::Trusted{}, d, std::move(prod), at(u, u));
}

SemifieldTable table_from_codes(const std::vector<uint32_t>& codes, int dim,
                                MatrixAction action) {
  StandardBasis basis = basis_from_codes(codes, dim);
  SemifieldTable left = table_from_basis(basis);
  if (action == MatrixAction::left) return left;
  int q = left.q();
  std::vector<uint8_t> prod(size_t(q) * q, 0);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) prod[size_t(x) * q + y] = left.mul(uint8_t(y), uint8_t(x));
  return SemifieldTable(SemifieldTable::Trusted{}, dim, std::move(prod), 1);
}

std::string ZNTuple::str() const {
  std::string s = "(";
  for (int k = 0; k < 5; ++k) s += std::to_string(v[k]) + (k < 4 ? ", " : ")");
  return s;
}

ZNTuple nuclei_and_center(const SemifieldTable& t) {
  int q = t.q();
  auto assoc_left = [&](int a) {  // a in N_l: (a*x)*y = a*(x*y) for all x, y
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        if (t.mul(t.mul(a, x), y) != t.mul(a, t.mul(x, y))) return false;
    return true;
  };
  auto assoc_mid = [&](int a) {
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        if (t.mul(t.mul(x, a), y) != t.mul(x, t.mul(a, y))) return false;
    return true;
  };
  auto assoc_right = [&](int a) {
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        if (t.mul(t.mul(x, y), a) != t.mul(x, t.mul(y, a))) return false;
    return true;
  };
  ZNTuple zn;
  for (int a = 0; a < q; ++a) {
    bool l = assoc_left(a), m = assoc_mid(a), r = assoc_right(a);
    bool n = l && m && r;
    bool central = true;
    if (n)
      for (int x = 0; x < q && central; ++x)
        if (t.mul(a, x) != t.mul(x, a)) central = false;
    zn.v[0] += n && central;
    zn.v[1] += n;
    zn.v[2] += l;
    zn.v[3] += m;
    zn.v[4] += r;
  }
  return zn;
}

std::string_view primitivity_name(Primitivity p) {
  switch (p) {
    case Primitivity::two_sided: return "two_sided";
    case Primitivity::left_only: return "left_only";
    case Primitivity::right_only: return "right_only";
    case Primitivity::none: return "none";
  }
  throw InternalCheckError("primitivity_name: bad enum");
}

namespace {
bool has_primitive(const SemifieldTable& t, bool right) {
  int q = t.q();
  for (int a = 1; a < q; ++a) {
    int len = 0;
    uint8_t x = uint8_t(a);
    do {
      x = right ? t.mul(x, uint8_t(a)) : t.mul(uint8_t(a), x);
      ++len;
    } while (x != a && len < q);
    if (len == q - 1) return true;
  }
  return false;
}
}  // namespace

bool has_right_primitive(const SemifieldTable& t) { return has_primitive(t, true); }
bool has_left_primitive(const SemifieldTable& t) { return has_primitive(t, false); }

Primitivity primitivity_class(const SemifieldTable& t) {
  bool r = has_right_primitive(t);
  bool l = has_left_primitive(t);
  if (l && r) return Primitivity::two_sided;
  if (l) return Primitivity::left_only;
  if (r) return Primitivity::right_only;
  return Primitivity::none;
}

}  // namespace semi
