// search.cpp — candidate lists, canonical partial bases, sieve extension,
// the checkpointed end-to-end run and the exhaustive small-order oracle.
//
// Canonicalization works span-wise: a partial standard basis is the span
// <I, A2, A3> together with the slice conditions (A1 = I, A2 a configured
// companion, first columns e_1, e_2, e_3).  Every basis change carrying one
// standard prefix to another is determined by the span elements M1, M2 sent
// to I and to the target companion C: the change is X -> U X (U M1)^-1 with
// U ranging over the transporter {U : U (M2 M1^-1) U^-1 = C}, which is the
// centralizer of C (the nonzero polynomials in C, as C's minimal polynomial
// is irreducible) times one Krylov conjugator.  The third basis element is
// then forced up to adding multiples of I and C, which the first-column
// condition fixes uniquely.  Composing two such changes is again one, and
// the transpose move commutes into a single application, so the one-step
// image set is the whole class.
#include "semi/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "semi/semifield.hpp"

namespace semi {

// ---------- primitive polynomials ----------

namespace {

// Multiplicative order of an invertible matrix, by brute iteration (the
// group orders involved are at most 63).
int matrix_order(const BitMatrix& m, int limit) {
  BitMatrix p = m;
  BitMatrix id = BitMatrix::identity(m.dim());
  for (int k = 1; k <= limit; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  return 0;
}

}  // namespace

std::vector<uint32_t> primitive_polynomials(int degree) {
  check_dim(degree);
  const int order = (1 << degree) - 1;
  std::vector<uint32_t> out;
  for (uint32_t poly = (1u << degree) | 1u; poly < (2u << degree); poly += 2) {
    if (matrix_order(companion_matrix(poly, degree), order) == order) out.push_back(poly);
  }
  return out;
}

std::vector<uint32_t> default_a2_polys(int dim, bool all_primitive) {
  check_dim(dim);
  if (dim == 6 && !all_primitive) return {0b1000011u, 0b1101101u};  // x^6+x+1, x^6+x^5+x^3+x^2+1
  return primitive_polynomials(dim);
}

// ---------- candidate lists ----------

bool CandidateList::contains(uint32_t code) const {
  return std::binary_search(codes.begin(), codes.end(), code);
}

std::vector<CandidateList> build_lists(const BitMatrix& a2, int dim) {
  check_dim(dim);
  if (a2.dim() != dim) throw std::invalid_argument("build_lists: dimension mismatch");
  const uint32_t limit = code_limit(dim);
  const BitMatrix id = BitMatrix::identity(dim);
  const BitMatrix ia2 = id + a2;
  std::vector<CandidateList> lists;
  for (int sig = 1; sig < (1 << (dim - 2)); ++sig) {
    CandidateList list;
    list.dim = dim;
    list.signature = uint8_t(sig);
    const uint8_t col1 = uint8_t(sig << 2);
    for (uint32_t code = 0; code < limit; ++code) {
      BitMatrix b = matrix_with_first_column(col1, code, dim);
      if (!is_invertible(b)) continue;
      if (!is_invertible(b + id)) continue;
      if (!is_invertible(b + a2)) continue;
      if (!is_invertible(b + ia2)) continue;
      list.codes.push_back(code);
    }
    lists.push_back(std::move(list));
  }
  return lists;
}

// ---------- canonical partial bases ----------

namespace {

struct Slice {
  BitMatrix c;    // target companion
  uint32_t poly;  // its (primitive, hence irreducible) characteristic polynomial
  std::vector<std::pair<BitMatrix, BitMatrix>> cent;  // centralizer elements with inverses
};

uint32_t poly_of_companion(const BitMatrix& c) {
  const int d = c.dim();
  return (1u << d) | c.column_bits(d - 1);
}

std::vector<Slice> build_slices(const std::vector<BitMatrix>& a2s) {
  std::vector<Slice> slices;
  for (const BitMatrix& c : a2s) {
    const int d = c.dim();
    for (int j = 1; j < d; ++j)
      if (c.column_bits(j - 1) != uint8_t(1 << j))
        throw std::invalid_argument("A2 must be in companion form");
    if (matrix_order(c, (1 << d) - 1) != (1 << d) - 1)
      throw std::invalid_argument("A2 polynomial must be primitive");
    Slice s;
    s.c = c;
    s.poly = poly_of_companion(c);
    // The centralizer of a companion matrix with irreducible characteristic
    // polynomial is the field GF(2)[C]: all nonzero polynomials of degree < d.
    std::vector<BitMatrix> powers(static_cast<size_t>(d));
    powers[0] = BitMatrix::identity(d);
    for (int k = 1; k < d; ++k) powers[size_t(k)] = powers[size_t(k - 1)] * c;
    for (int mask = 1; mask < (1 << d); ++mask) {
      BitMatrix u(d);
      for (int k = 0; k < d; ++k)
        if (mask >> k & 1) u = u + powers[size_t(k)];
      s.cent.emplace_back(u, inverse(u));
    }
    slices.push_back(std::move(s));
  }
  return slices;
}

// Characteristic polynomial of z via the Krylov chain of e_1, when e_1 is a
// cyclic vector (equivalently the minimal polynomial has full degree);
// returns 0 otherwise.  On success *k_inv is the inverse Krylov matrix, the
// conjugator with k_inv * z * k = companion(poly).
uint32_t krylov_charpoly(const BitMatrix& z, BitMatrix* k, BitMatrix* k_inv) {
  const int d = z.dim();
  BitMatrix kry(d);
  uint8_t w = 1;  // e_1
  for (int j = 0; j < d; ++j) {
    for (int r = 0; r < d; ++r) kry.set(r + 1, j + 1, w >> r & 1);
    w = z.apply(w);
  }
  if (rank(kry) < d) return 0;
  *k = kry;
  *k_inv = inverse(kry);
  const uint8_t coeffs = k_inv->apply(w);  // z^d e_1 in the chain basis
  return (1u << d) | coeffs;
}

// Enumerates every standard partial basis (I, a2s[j], Y) equivalent to the
// span of {I, m2, m3} on one side (the caller passes transposes for the
// other).  Calls visit(j, code(Y)); stop when it returns false.
template <typename Visit>
bool side_images(const std::vector<Slice>& slices, const BitMatrix& m2, const BitMatrix& m3,
                 Visit&& visit) {
  const int d = m2.dim();
  std::array<BitMatrix, 8> elem, elem_inv;
  for (int mask = 1; mask < 8; ++mask) {
    BitMatrix m(d);
    if (mask & 1) m = m + BitMatrix::identity(d);
    if (mask & 2) m = m + m2;
    if (mask & 4) m = m + m3;
    elem[size_t(mask)] = m;
    elem_inv[size_t(mask)] = inverse(m);
  }
  BitMatrix kry(d), kry_inv(d);
  for (int c1 = 1; c1 < 8; ++c1)
    for (int c2 = 1; c2 < 8; ++c2) {
      if (c2 == c1) continue;
      int c3 = 1;
      while (c3 == c1 || c3 == c2 || c3 == (c1 ^ c2)) ++c3;
      const BitMatrix z = elem[size_t(c2)] * elem_inv[size_t(c1)];
      const uint32_t poly = krylov_charpoly(z, &kry, &kry_inv);
      if (poly == 0) continue;
      for (size_t j = 0; j < slices.size(); ++j) {
        if (slices[j].poly != poly) continue;
        // P = U0 (M3 M1^-1) U0^-1 with U0 the Krylov conjugator; then for a
        // centralizer element c the image's third matrix is c P c^-1 plus
        // the first-column correction by I and the companion.
        const BitMatrix p = kry_inv * (elem[size_t(c3)] * elem_inv[size_t(c1)]) * kry;
        for (const auto& [u, u_inv] : slices[j].cent) {
          const uint8_t fc = u.apply(p.apply(u_inv.apply(1)));
          if ((fc & ~uint8_t(3)) != 4) continue;  // must be e_3 modulo <e_1, e_2>
          BitMatrix y = u * p * u_inv;
          if (fc & 1) y = y + BitMatrix::identity(d);
          if (fc & 2) y = y + slices[j].c;
          if (!visit(int(j), encode_matrix(y, 3))) return false;
        }
      }
    }
  return true;
}

void require_prefix(const std::vector<BitMatrix>& a2s, int a2_index, const BitMatrix& a3) {
  if (a2_index < 0 || size_t(a2_index) >= a2s.size())
    throw std::invalid_argument("prefix: a2 index out of range");
  const BitMatrix& a2 = a2s[size_t(a2_index)];
  const int d = a2.dim();
  if (a3.dim() != d) throw std::invalid_argument("prefix: dimension mismatch");
  if (a2.first_column() != 2 || a3.first_column() != 4)
    throw std::invalid_argument("prefix: first columns must be e_2 and e_3");
  for (int mask = 1; mask < 8; ++mask) {
    BitMatrix m(d);
    if (mask & 1) m = m + BitMatrix::identity(d);
    if (mask & 2) m = m + a2;
    if (mask & 4) m = m + a3;
    if (!is_invertible(m)) throw std::invalid_argument("prefix: singular combination");
  }
}

template <typename Visit>
void all_images(const std::vector<Slice>& slices, const BitMatrix& a2, const BitMatrix& a3,
                Visit&& visit) {
  if (side_images(slices, a2, a3, visit))
    side_images(slices, a2.transposed(), a3.transposed(), visit);
}

bool is_canonical_prefix(const std::vector<Slice>& slices, int a2_index, uint32_t a3_code,
                         const BitMatrix& a2, const BitMatrix& a3) {
  const std::pair<int, uint32_t> self{a2_index, a3_code};
  bool canonical = true;
  all_images(slices, a2, a3, [&](int j, uint32_t code) {
    if (std::pair<int, uint32_t>{j, code} < self) {
      canonical = false;
      return false;
    }
    return true;
  });
  return canonical;
}

}  // namespace

std::pair<int, uint32_t> canonical_prefix(const std::vector<BitMatrix>& a2s, int a2_index,
                                          const BitMatrix& a3) {
  require_prefix(a2s, a2_index, a3);
  std::vector<Slice> slices = build_slices(a2s);
  std::pair<int, uint32_t> best{a2_index, encode_matrix(a3, 3)};
  all_images(slices, a2s[size_t(a2_index)], a3, [&](int j, uint32_t code) {
    best = std::min(best, {j, code});
    return true;
  });
  return best;
}

std::vector<std::pair<int, uint32_t>> prefix_class_images(const std::vector<BitMatrix>& a2s,
                                                          int a2_index, const BitMatrix& a3) {
  require_prefix(a2s, a2_index, a3);
  std::vector<Slice> slices = build_slices(a2s);
  std::vector<std::pair<int, uint32_t>> out;
  all_images(slices, a2s[size_t(a2_index)], a3, [&](int j, uint32_t code) {
    out.emplace_back(j, code);
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PartialBasis> enumerate_partial_bases(const std::vector<BitMatrix>& a2s,
                                                  const std::vector<std::vector<CandidateList>>& lists,
                                                  int dim) {
  check_dim(dim);
  if (dim < 3) throw std::invalid_argument("enumerate_partial_bases: dimension below 3");
  if (a2s.size() != lists.size())
    throw std::invalid_argument("enumerate_partial_bases: one list set per A2 required");
  std::vector<Slice> slices = build_slices(a2s);
  std::vector<PartialBasis> out;
  for (size_t i = 0; i < a2s.size(); ++i) {
    const CandidateList& a3_list = lists[i].at(0);  // signature 1: first column e_3
    for (uint32_t code : a3_list.codes) {
      BitMatrix a3 = decode_matrix(3, code, dim);
      if (is_canonical_prefix(slices, int(i), code, a2s[i], a3))
        out.push_back(PartialBasis{int(i), code});
    }
  }
  return out;
}

// ---------- sieve extension ----------

std::vector<std::vector<uint32_t>> extend_to_full(const BitMatrix& a2, uint32_t a3_code,
                                                  const std::vector<CandidateList>& lists) {
  const int d = a2.dim();
  if (int(lists.size()) != (1 << (d - 2)) - 1)
    throw std::invalid_argument("extend_to_full: wrong number of lists");
  std::vector<std::vector<uint32_t>> out;
  // chosen[k] = code of A_{3+k}; subset XORs maintained on the fly.
  std::vector<uint32_t> chosen{a3_code};
  std::vector<uint32_t> combo_xor(size_t(1) << (d - 2), 0);
  auto emit = [&]() {
    std::vector<uint32_t> tuple;
    tuple.reserve(size_t(d) - 1);
    tuple.push_back(encode_matrix(a2, 2));
    tuple.insert(tuple.end(), chosen.begin(), chosen.end());
    std::string why;
    if (!check_standard_basis(basis_from_codes(tuple, d).mats, &why))
      throw InternalCheckError("extend_to_full emitted a non-basis: " + why);
    out.push_back(std::move(tuple));
  };
  auto recurse = [&](auto&& self, int level) -> void {  // level = index of A_{3+level}
    if (level == d - 2) {
      emit();
      return;
    }
    for (uint32_t t = 1; t < (1u << level); ++t)
      combo_xor[t] = combo_xor[t & (t - 1)] ^ chosen[size_t(std::countr_zero(t))];
    const uint32_t base_sig = 1u << level;
    for (uint32_t cand : lists[base_sig - 1].codes) {
      bool ok = true;
      for (uint32_t t = 1; t < base_sig && ok; ++t)
        ok = lists[(base_sig | t) - 1].contains(combo_xor[t] ^ cand);
      if (!ok) continue;
      chosen.push_back(cand);
      self(self, level + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 1);
  return out;
}

// ---------- end-to-end search ----------

namespace {

std::string prefix_file(const std::string& dir, size_t idx) {
  std::ostringstream os;
  os << dir << "/prefix_" << idx << ".txt";
  return os.str();
}

std::string prefix_header(int dim, uint32_t poly, uint32_t a3_code) {
  std::ostringstream os;
  os << "# prefix d " << dim << " a2poly " << poly << " a3 " << a3_code;
  return os.str();
}

// Reads a finished checkpoint file; returns false unless the header matches
// and the terminating marker is present.
bool read_checkpoint(const std::string& path, const std::string& header, int dim,
                     std::vector<std::vector<uint32_t>>* tuples) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != header) return false;
  std::vector<std::vector<uint32_t>> acc;
  bool done = false;
  while (std::getline(in, line)) {
    if (line == "# done") {
      done = true;
      break;
    }
    std::istringstream ls(line);
    std::vector<uint32_t> tuple;
    uint64_t v;
    while (ls >> v) tuple.push_back(uint32_t(v));
    if (int(tuple.size()) != dim - 1) return false;
    acc.push_back(std::move(tuple));
  }
  if (!done) return false;
  *tuples = std::move(acc);
  return true;
}

void write_checkpoint(const std::string& path, const std::string& header,
                      const std::vector<std::vector<uint32_t>>& tuples) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << header << "\n";
    for (const auto& tuple : tuples) {
      for (size_t k = 0; k < tuple.size(); ++k) out << (k ? " " : "") << tuple[k];
      out << "\n";
    }
    out << "# done\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

SearchResult full_search(const SearchConfig& config) {
  const int dim = config.dim;
  if (dim < 4 || dim > 6) throw std::invalid_argument("full_search: dimension must be 4, 5 or 6");
  std::vector<uint32_t> polys = config.a2_polys.empty() ? default_a2_polys(dim) : config.a2_polys;
  for (uint32_t poly : polys)
    if (poly < (1u << dim) || poly >= (2u << dim) || !(poly & 1))
      throw std::invalid_argument("full_search: A2 polynomial of wrong degree or zero constant");

  SearchResult res;
  std::vector<BitMatrix> a2s;
  std::vector<std::vector<CandidateList>> lists;
  for (uint32_t poly : polys) {
    a2s.push_back(companion_matrix(poly, dim));
    lists.push_back(build_lists(a2s.back(), dim));
    std::vector<size_t> sizes;
    for (const CandidateList& l : lists.back()) sizes.push_back(l.codes.size());
    res.counts.list_sizes.emplace_back(poly, std::move(sizes));
  }

  std::vector<PartialBasis> prefixes = enumerate_partial_bases(a2s, lists, dim);
  for (size_t i = 0; i < polys.size(); ++i) {
    size_t n = size_t(std::count_if(prefixes.begin(), prefixes.end(),
                                    [&](const PartialBasis& p) { return p.a2_index == int(i); }));
    res.counts.partials.emplace_back(polys[i], n);
  }
  res.counts.partial_total = prefixes.size();

  if (!config.checkpoint_dir.empty())
    std::filesystem::create_directories(config.checkpoint_dir);

  std::vector<std::vector<std::vector<uint32_t>>> per_prefix(prefixes.size());
  auto run_one = [&](size_t idx) {
    const PartialBasis& p = prefixes[idx];
    const std::string header = prefix_header(dim, polys[size_t(p.a2_index)], p.a3_code);
    if (!config.checkpoint_dir.empty()) {
      const std::string path = prefix_file(config.checkpoint_dir, idx);
      if (config.resume && read_checkpoint(path, header, dim, &per_prefix[idx])) return;
      per_prefix[idx] =
          extend_to_full(a2s[size_t(p.a2_index)], p.a3_code, lists[size_t(p.a2_index)]);
      write_checkpoint(path, header, per_prefix[idx]);
      return;
    }
    per_prefix[idx] =
        extend_to_full(a2s[size_t(p.a2_index)], p.a3_code, lists[size_t(p.a2_index)]);
  };

  const int workers = std::max(1, config.workers);
  if (workers == 1 || prefixes.size() <= 1) {
    for (size_t idx = 0; idx < prefixes.size(); ++idx) run_one(idx);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (size_t idx = next.fetch_add(1); idx < prefixes.size(); idx = next.fetch_add(1))
          run_one(idx);
      });
    for (std::thread& t : pool) t.join();
  }

  for (auto& block : per_prefix)
    for (auto& tuple : block) res.tuples.push_back(std::move(tuple));
  std::sort(res.tuples.begin(), res.tuples.end());
  res.counts.tuple_count = res.tuples.size();
  return res;
}

// ---------- the exhaustive oracle ----------

SearchResult oracle_search(int dim) {
  check_dim(dim);
  if (dim > 4)
    throw std::invalid_argument("oracle_search: exhaustive enumeration is limited to dimension 4");
  const uint32_t limit = code_limit(dim);

  // Invertible candidates per slot, decoded once into packed rows.
  struct Candidate {
    uint32_t code;
    std::array<uint8_t, 6> rows;
  };
  std::vector<std::vector<Candidate>> singles(size_t(dim) + 1);
  for (int i = 2; i <= dim; ++i)
    for (uint32_t code = 0; code < limit; ++code) {
      BitMatrix m = decode_matrix(i, code, dim);
      std::array<uint8_t, 6> rows{};
      for (int r = 0; r < dim; ++r) rows[size_t(r)] = m.row_bits(r);
      if (rank_rows(rows, dim) == dim) singles[size_t(i)].push_back({code, rows});
    }

  SearchResult res;
  std::vector<uint32_t> chosen;
  // sums[mask] = rows of the sum over {A_1, ..., A_k} selected by mask bits.
  std::vector<std::array<uint8_t, 6>> sums(size_t(1) << dim);
  for (int r = 0; r < dim; ++r) sums[1][size_t(r)] = uint8_t(1 << r);  // A_1 = I

  auto recurse = [&](auto&& self, int slot) -> void {
    const uint32_t half = 1u << (slot - 1);
    for (const Candidate& cand : singles[size_t(slot)]) {
      bool ok = true;
      for (uint32_t mask = 1; mask < half && ok; ++mask) {
        std::array<uint8_t, 6> sum = sums[mask];
        for (int r = 0; r < dim; ++r) sum[size_t(r)] ^= cand.rows[size_t(r)];
        ok = rank_rows(sum, dim) == dim;
      }
      if (!ok) continue;
      chosen.push_back(cand.code);
      if (slot == dim) {
        res.tuples.push_back(chosen);
      } else {
        for (uint32_t mask = 0; mask < half; ++mask) {
          sums[half | mask] = sums[mask];
          for (int r = 0; r < dim; ++r) sums[half | mask][size_t(r)] ^= cand.rows[size_t(r)];
        }
        self(self, slot + 1);
      }
      chosen.pop_back();
    }
  };
  recurse(recurse, 2);
  res.counts.tuple_count = res.tuples.size();
  return res;
}

}  // namespace semi
