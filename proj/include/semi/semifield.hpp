// semifield.hpp — standard bases, 3-dimensional structure-constant cubes with
// their S3 action, multiplication tables, nuclei and primitivity.
//
// Elements of a dimension-d algebra are coordinate vectors over GF(2) packed
// into integers 0..2^d-1 (bit i-1 = coefficient of the i-th basis vector), so
// element 1 is the first basis vector.  A standard basis lists matrices
// A_1..A_d with A_1 = I, first column of A_i equal to e_i, and every nonzero
// GF(2)-combination invertible; the cube built from it has the A_i as its
// slices, and the induced product is x*y = (sum_i x_i A_i) y, making element
// 1 the two-sided identity.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "semi/bitmatrix.hpp"
#include "semi/common.hpp"

namespace semi {

struct StandardBasis {
  int dim = 0;
  std::vector<BitMatrix> mats;  // mats[0] = A_1 = identity
};

// True iff the mats form a standard basis; on failure *why names the first
// violated condition.  Pre: non-empty, matching dims (else invalid_argument).
bool check_standard_basis(const std::vector<BitMatrix>& mats, std::string* why = nullptr);

// Decode "A2 .. Ad" codes into (I, A2, .., Ad).  Does not run the checker.
StandardBasis basis_from_codes(const std::vector<uint32_t>& codes, int dim);
std::vector<uint32_t> codes_from_basis(const StandardBasis& basis);

// A permutation of the three cube index positions, in cycle notation.
struct Perm3 {
  std::array<int, 3> map{0, 1, 2};  // map[k] = sigma(k+1) - 1

  std::string_view name() const;
  static const std::array<Perm3, 6>& all();  // 1, (12), (13), (123), (23), (132)
  static Perm3 by_name(std::string_view name);
  Perm3 compose(const Perm3& o) const {  // (this∘o)(k) = this(o(k))
    return Perm3{{map[o.map[0]], map[o.map[1]], map[o.map[2]]}};
  }
  bool operator==(const Perm3&) const = default;
};

class SemifieldTable;

// Structure constants c(i1,i2,i3) of a bilinear product on GF(2)^d:
// x_{i1} x_{i2} = sum_{i3} c(i1,i2,i3) x_{i3}.
class Cube {
 public:
  Cube() = default;
  explicit Cube(int dim) : dim_(dim) { check_dim(dim); }
  static Cube from_basis(const StandardBasis& basis);
  static Cube from_table(const SemifieldTable& t);

  int dim() const { return dim_; }
  int get(int i1, int i2, int i3) const {  // 1-indexed
    return (v_[i1 - 1][i2 - 1] >> (i3 - 1)) & 1;
  }
  void set(int i1, int i2, int i3, int b) {
    uint8_t bit = uint8_t(1) << (i3 - 1);
    auto& cell = v_[i1 - 1][i2 - 1];
    cell = b ? (cell | bit) : (cell & ~bit);
  }
  // Packed product of basis vectors: coordinates of x_{i1} x_{i2} (0-indexed args).
  uint8_t pair_bits(int i1, int i2) const { return v_[i1][i2]; }

  BitMatrix slice(int i1) const;  // defining matrix: entry (i3, i2) = c(i1, i2, i3)
  bool operator==(const Cube&) const = default;

 private:
  int dim_ = 0;
  std::array<std::array<uint8_t, 6>, 6> v_{};
};

// Entry (i1,i2,i3) of the result is entry (i_{sigma(1)}, i_{sigma(2)},
// i_{sigma(3)}) of c.  Swapping positions 2,3 transposes the slices; swapping
// 1,3 transposes the right-multiplication family instead.
Cube apply_permutation(const Cube& c, const Perm3& sigma);

class SemifieldTable {
 public:
  SemifieldTable() = default;
  // Validates the loop structure: rows/columns of nonzero elements are
  // permutations and `identity` acts as a two-sided identity.
  SemifieldTable(int dim, std::vector<uint8_t> prod, uint8_t identity);

  struct Trusted {};  // tag: caller guarantees validity (hot paths)
  SemifieldTable(Trusted, int dim, std::vector<uint8_t> prod, uint8_t identity)
      : dim_(dim), q_(1 << dim), identity_(identity), prod_(std::move(prod)) {}

  int dim() const { return dim_; }
  int q() const { return q_; }
  uint8_t identity() const { return identity_; }
  uint8_t mul(uint8_t x, uint8_t y) const { return prod_[size_t(x) * q_ + y]; }
  const std::vector<uint8_t>& raw() const { return prod_; }

  BitMatrix left_mult(uint8_t x) const;   // y -> x*y
  BitMatrix right_mult(uint8_t y) const;  // x -> x*y
  uint8_t solve_left(uint8_t a, uint8_t x) const;   // unique y with a*y = x (a != 0)
  uint8_t solve_right(uint8_t b, uint8_t x) const;  // unique y with y*b = x (b != 0)
  bool operator==(const SemifieldTable&) const = default;

 private:
  int dim_ = 0;
  int q_ = 0;
  uint8_t identity_ = 0;
  std::vector<uint8_t> prod_;
};

// Direct table of a standard basis: x*y = (sum_i x_i A_i) y, identity 1.
SemifieldTable table_from_basis(const StandardBasis& basis);

// Normalize a presemifield cube into a table with a two-sided identity: with
// u the smallest nonzero element, the new product of (x, y) is r*s where
// r*u = x and u*s = y; the identity is u*u.  Throws std::invalid_argument if
// the cube has zero divisors.
SemifieldTable presemifield_to_semifield(const Cube& c);

// How decoded tuples act on coordinates when building their table.  The
// published per-plane data (nucleus columns, line profiles) pins the decoded
// matrices as right multiplications: x*y = (sum_i y_i A_i) x.
enum class MatrixAction { left, right };
inline constexpr MatrixAction kTupleAction = MatrixAction::right;
SemifieldTable table_from_codes(const std::vector<uint32_t>& codes, int dim,
                                MatrixAction action = kTupleAction);

// (|Z|, |N|, |N_l|, |N_m|, |N_r|), zero included in each count.
struct ZNTuple {
  std::array<int, 5> v{};
  bool operator==(const ZNTuple&) const = default;
  std::string str() const;
};
ZNTuple nuclei_and_center(const SemifieldTable& t);

enum class Primitivity { two_sided, left_only, right_only, none };
std::string_view primitivity_name(Primitivity p);
// Right-primitive: some a whose right principal powers a, a*a, (a*a)*a, ...
// run through all q-1 nonzero elements; left uses a^(n+1) = a * a^(n).
bool has_right_primitive(const SemifieldTable& t);
bool has_left_primitive(const SemifieldTable& t);
Primitivity primitivity_class(const SemifieldTable& t);

}  // namespace semi
