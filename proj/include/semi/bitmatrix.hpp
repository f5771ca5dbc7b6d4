// bitmatrix.hpp — dense GF(2) matrices of dimension 2..6, one byte per row,
// plus the integer encoding of standard-basis matrices and tuple-file I/O.
//
// Encoding layout: a matrix whose first column is the basis vector e_i is
// identified by i together with a code c < 2^(d*(d-1)) holding the remaining
// d-1 columns.  Bit j of c is entry (r, c) with r = d - (j % d) and
// col = d - (j / d), both 1-indexed: bits fill the last column bottom-up
// first, then move left.  The code of a sum of right blocks is the XOR of
// the codes, which the search stages lean on heavily.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semi/common.hpp"

namespace semi {

class BitMatrix {
 public:
  BitMatrix() = default;  // dim 0 placeholder, only valid to assign over
  explicit BitMatrix(int dim) : dim_(dim), rows_{} { check_dim(dim); }
  static BitMatrix identity(int dim);

  int dim() const { return dim_; }

  // Entry access is 1-indexed to match the (row, column) conventions of the
  // surrounding mathematics.
  int get(int r, int c) const { return (rows_[r - 1] >> (c - 1)) & 1; }
  void set(int r, int c, int v) {
    uint8_t bit = uint8_t(1) << (c - 1);
    rows_[r - 1] = v ? (rows_[r - 1] | bit) : (rows_[r - 1] & ~bit);
  }

  // Raw row bitmask, 0-indexed row; bit k = column k+1.
  uint8_t row_bits(int r) const { return rows_[r]; }
  void set_row_bits(int r, uint8_t bits) { rows_[r] = bits; }
  // Column as a packed vector, 0-indexed column; bit k = row k+1.
  uint8_t column_bits(int c) const;
  uint8_t first_column() const { return column_bits(0); }

  // Matrix * vector; vectors pack coordinate i (1-indexed) at bit i-1.
  uint8_t apply(uint8_t v) const {
    uint8_t out = 0;
    for (int r = 0; r < dim_; ++r) out |= uint8_t(parity8(rows_[r] & v)) << r;
    return out;
  }

  BitMatrix transposed() const;
  uint64_t key() const;  // dim and rows packed into one word (ordering, hashing)
  bool operator==(const BitMatrix&) const = default;
  bool operator<(const BitMatrix& o) const { return key() < o.key(); }
  std::string to_string() const;  // dim lines of '0'/'1'

 private:
  int dim_ = 0;
  std::array<uint8_t, 6> rows_{};
};

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);
BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
int rank(const BitMatrix& m);
bool is_invertible(const BitMatrix& m);
BitMatrix inverse(const BitMatrix& m);  // throws std::invalid_argument if singular

// Rank of d packed rows without constructing a BitMatrix (hot paths).
int rank_rows(std::array<uint8_t, 6> rows, int d);

uint32_t code_limit(int dim);  // 2^(dim*(dim-1))
BitMatrix decode_matrix(int index, uint32_t code, int dim);
uint32_t encode_matrix(const BitMatrix& m, int index);  // first column must be e_index
// Same bit layout restricted to columns 2..d of any matrix / arbitrary first column.
uint32_t right_block_code(const BitMatrix& m);
BitMatrix matrix_with_first_column(uint8_t col1, uint32_t code, int dim);

// Companion matrix of a monic polynomial: bit k of `poly` is the coefficient
// of x^k; columns are [e2|...|ed|low-order coefficients].
BitMatrix companion_matrix(uint32_t poly, int degree);

// Tuple files: one semifield per line as d-1 base-10 codes "A2 ... Ad"
// (A1 = identity implied), '#' starts a comment line.
std::vector<std::vector<uint32_t>> parse_tuple_lines(std::istream& in, int dim);
std::vector<std::vector<uint32_t>> read_tuple_file(const std::string& path, int dim);
void write_tuple_file(const std::string& path, int dim,
                      const std::vector<std::vector<uint32_t>>& tuples,
                      const std::string& header);

}  // namespace semi
