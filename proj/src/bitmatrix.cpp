#include "semi/bitmatrix.hpp"

#include <fstream>
#include <sstream>

namespace semi {

BitMatrix BitMatrix::identity(int dim) {
  BitMatrix m(dim);
  for (int r = 0; r < dim; ++r) m.rows_[r] = uint8_t(1) << r;
  return m;
}

uint8_t BitMatrix::column_bits(int c) const {
  uint8_t out = 0;
  for (int r = 0; r < dim_; ++r) out |= uint8_t((rows_[r] >> c) & 1) << r;
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(dim_);
  for (int c = 0; c < dim_; ++c) t.rows_[c] = column_bits(c);
  return t;
}

uint64_t BitMatrix::key() const {
  uint64_t k = uint64_t(dim_);
  for (int r = 0; r < 6; ++r) k = (k << 8) | rows_[r];
  return k;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (int r = 1; r <= dim_; ++r) {
    for (int c = 1; c <= dim_; ++c) {
      s += get(r, c) ? '1' : '0';
      if (c < dim_) s += ' ';
    }
    s += '\n';
  }
  return s;
}

static void check_same_dim(const BitMatrix& a, const BitMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("matrix dimensions differ: " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
  check_same_dim(a, b);
  BitMatrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r) out.set_row_bits(r, a.row_bits(r) ^ b.row_bits(r));
  return out;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  check_same_dim(a, b);
  BitMatrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r) {
    uint8_t acc = 0, bits = a.row_bits(r);
    while (bits) {
      int c = __builtin_ctz(bits);
      bits &= bits - 1;
      acc ^= b.row_bits(c);
    }
    out.set_row_bits(r, acc);
  }
  return out;
}

int rank_rows(std::array<uint8_t, 6> rows, int d) {
  int rk = 0;
  for (int c = 0; c < d; ++c) {
    int pivot = -1;
    for (int r = rk; r < d; ++r)
      if ((rows[r] >> c) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rk], rows[pivot]);
    for (int r = pivot + 1; r < d; ++r)
      if ((rows[r] >> c) & 1) rows[r] ^= rows[rk];
    ++rk;
  }
  return rk;
}

int rank(const BitMatrix& m) {
  std::array<uint8_t, 6> rows{};
  for (int r = 0; r < m.dim(); ++r) rows[r] = m.row_bits(r);
  return rank_rows(rows, m.dim());
}

bool is_invertible(const BitMatrix& m) { return rank(m) == m.dim(); }

BitMatrix inverse(const BitMatrix& m) {
  int d = m.dim();
  // Gauss-Jordan on [m | I] with both halves packed side by side.
  std::array<uint16_t, 6> rows{};
  for (int r = 0; r < d; ++r) rows[r] = uint16_t(m.row_bits(r)) | (uint16_t(1) << (d + r));
  for (int c = 0; c < d; ++c) {
    int pivot = -1;
    for (int r = c; r < d; ++r)
      if ((rows[r] >> c) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::invalid_argument("matrix is singular");
    std::swap(rows[c], rows[pivot]);
    for (int r = 0; r < d; ++r)
      if (r != c && ((rows[r] >> c) & 1)) rows[r] ^= rows[c];
  }
  BitMatrix out(d);
  for (int r = 0; r < d; ++r) out.set_row_bits(r, uint8_t(rows[r] >> d));
  return out;
}

uint32_t code_limit(int dim) {
  check_dim(dim);
  return uint32_t(1) << (dim * (dim - 1));
}

BitMatrix decode_matrix(int index, uint32_t code, int dim) {
  check_dim(dim);
  if (index < 1 || index > dim)
    throw std::invalid_argument("matrix index must be in 1..dim, got " + std::to_string(index));
  if (code >= code_limit(dim))
    throw std::invalid_argument("code " + std::to_string(code) + " out of range for dim " +
                                std::to_string(dim));
  BitMatrix m(dim);
  m.set(index, 1, 1);  // first column = e_index
  for (uint32_t bits = code; bits;) {
    int j = __builtin_ctz(bits);
    bits &= bits - 1;
    m.set(dim - j % dim, dim - j / dim, 1);
  }
  return m;
}

uint32_t right_block_code(const BitMatrix& m) {
  int d = m.dim();
  uint32_t code = 0;
  for (int j = 0; j < d * (d - 1); ++j)
    if (m.get(d - j % d, d - j / d)) code |= uint32_t(1) << j;
  return code;
}

uint32_t encode_matrix(const BitMatrix& m, int index) {
  int d = m.dim();
  if (index < 1 || index > d)
    throw std::invalid_argument("matrix index must be in 1..dim, got " + std::to_string(index));
  if (m.first_column() != uint8_t(1) << (index - 1))
    throw std::invalid_argument("first column is not e_" + std::to_string(index));
  return right_block_code(m);
}

BitMatrix matrix_with_first_column(uint8_t col1, uint32_t code, int dim) {
  check_dim(dim);
  if (code >= code_limit(dim))
    throw std::invalid_argument("code out of range for dim " + std::to_string(dim));
  BitMatrix m(dim);
  for (int r = 0; r < dim; ++r)
    if ((col1 >> r) & 1) m.set(r + 1, 1, 1);
  for (uint32_t bits = code; bits;) {
    int j = __builtin_ctz(bits);
    bits &= bits - 1;
    m.set(dim - j % dim, dim - j / dim, 1);
  }
  return m;
}

BitMatrix companion_matrix(uint32_t poly, int degree) {
  check_dim(degree);
  if (!(poly >> degree & 1))
    throw std::invalid_argument("polynomial is not monic of degree " + std::to_string(degree));
  if (poly >> (degree + 1))
    throw std::invalid_argument("polynomial has terms above degree " + std::to_string(degree));
  BitMatrix m(degree);
  for (int i = 1; i < degree; ++i) m.set(i + 1, i, 1);  // column i = e_{i+1}
  for (int k = 0; k < degree; ++k)
    if ((poly >> k) & 1) m.set(k + 1, degree, 1);  // last column = low coefficients
  return m;
}

std::vector<std::vector<uint32_t>> parse_tuple_lines(std::istream& in, int dim) {
  check_dim(dim);
  std::vector<std::vector<uint32_t>> out;
  std::string line;
  int line_no = 0;
  const uint32_t limit = code_limit(dim);
  while (std::getline(in, line)) {
    ++line_no;
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::vector<uint32_t> codes;
    long long v;
    while (ls >> v) {
      if (v < 0 || uint64_t(v) >= limit)
        throw DataError("code " + std::to_string(v) + " out of range for dim " +
                            std::to_string(dim),
                        line_no);
      codes.push_back(uint32_t(v));
    }
    if (!ls.eof()) throw DataError("non-numeric field in tuple line", line_no);
    if (int(codes.size()) != dim - 1)
      throw DataError("expected " + std::to_string(dim - 1) + " codes, got " +
                          std::to_string(codes.size()),
                      line_no);
    out.push_back(std::move(codes));
  }
  return out;
}

std::vector<std::vector<uint32_t>> read_tuple_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tuple file: " + path);
  return parse_tuple_lines(in, dim);
}

void write_tuple_file(const std::string& path, int dim,
                      const std::vector<std::vector<uint32_t>>& tuples,
                      const std::string& header) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  if (!header.empty()) {
    std::istringstream hs(header);
    std::string hline;
    while (std::getline(hs, hline)) out << "# " << hline << "\n";
  }
  for (const auto& t : tuples) {
    if (int(t.size()) != dim - 1) throw InternalCheckError("tuple arity mismatch on write");
    for (size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
    out << "\n";
  }
}

}  // namespace semi
