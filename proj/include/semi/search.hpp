// search.hpp — the list-driven search for standard bases: per-signature
// candidate lists, canonical partial bases, sieve extension, end-to-end runs
// with checkpoints, and the exhaustive small-dimension oracle.
//
// Everything is keyed by the block encoding of bitmatrix.hpp: the code of a
// sum of matrices with fixed first column is the XOR of their codes, so list
// membership of every combination can be tested by binary search alone.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semi/bitmatrix.hpp"
#include "semi/common.hpp"

namespace semi {

// Monic degree-`degree` polynomial bitmasks (bit i = coefficient of x^i)
// whose companion matrix has multiplicative order 2^degree - 1, ascending.
std::vector<uint32_t> primitive_polynomials(int degree);

// The configured A2 polynomials per dimension: all primitive polynomials for
// d = 4, 5; the standard pair x^6+x+1 and x^6+x^5+x^3+x^2+1 for d = 6
// (all_primitive widens d = 6 to all six).
std::vector<uint32_t> default_a2_polys(int dim, bool all_primitive = false);

// All invertible B with first column (0, 0, lambda_3, ..., lambda_d)^t such
// that B, B+A1, B+A2, B+A1+A2 are invertible, A1 = I.  `signature` packs the
// lambdas: bit k = lambda_{3+k}, so the first column is signature << 2.
struct CandidateList {
  int dim = 0;
  uint8_t signature = 0;
  std::vector<uint32_t> codes;  // sorted block codes
  bool contains(uint32_t code) const;
};

// The 2^(d-2) - 1 lists for all nonzero signatures, ascending.
std::vector<CandidateList> build_lists(const BitMatrix& a2, int dim);

// A partial standard basis (A1 = I, A2 = a2s[a2_index], A3 = decoded a3_code)
// in canonical form.
struct PartialBasis {
  int a2_index = 0;
  uint32_t a3_code = 0;
  bool operator==(const PartialBasis&) const = default;
};

// Canonical key of the class of (I, a2s[a2_index], a3) under every basis
// change that maps it to a partial standard basis whose second matrix again
// lies in a2s, composed with the transpose move; the minimum of the
// concatenated encodings (a2 index, A3 code) over the class.  The identity
// transformation is always included, so the key is <= the input.
std::pair<int, uint32_t> canonical_prefix(const std::vector<BitMatrix>& a2s, int a2_index,
                                          const BitMatrix& a3);

// Every standard partial basis equivalent to (I, a2s[a2_index], a3) whose
// second matrix lies in a2s, as sorted distinct keys (a2 index, A3 code).
// One application of the move set is already the whole class, so the input's
// own key and the canonical key are both members.
std::vector<std::pair<int, uint32_t>> prefix_class_images(const std::vector<BitMatrix>& a2s,
                                                          int a2_index, const BitMatrix& a3);

// One canonical representative per class of partial standard bases, in key
// order.  lists[i] must be build_lists(a2s[i], dim).
std::vector<PartialBasis> enumerate_partial_bases(const std::vector<BitMatrix>& a2s,
                                                  const std::vector<std::vector<CandidateList>>& lists,
                                                  int dim);

// All completions (A4, ..., Ad) of the prefix (I, a2, decoded a3_code) to a
// full standard basis, via list sieving of every combination; returns full
// code tuples (code(A2), code(A3), ..., code(Ad)), sorted.  Every emitted
// tuple is re-checked against the standard-basis conditions directly.
std::vector<std::vector<uint32_t>> extend_to_full(const BitMatrix& a2, uint32_t a3_code,
                                                  const std::vector<CandidateList>& lists);

struct SearchConfig {
  int dim = 6;
  std::vector<uint32_t> a2_polys;  // empty = default_a2_polys(dim)
  std::string checkpoint_dir;     // empty = no checkpointing
  bool resume = false;            // reuse finished per-prefix files
  int workers = 1;                // extension threads; output is independent of this
};

struct StageCounts {
  // Per A2 polynomial: the per-signature list sizes.
  std::vector<std::pair<uint32_t, std::vector<size_t>>> list_sizes;
  // Per A2 polynomial: canonical partial bases with that A2.
  std::vector<std::pair<uint32_t, size_t>> partials;
  size_t partial_total = 0;
  size_t tuple_count = 0;
};

struct SearchResult {
  std::vector<std::vector<uint32_t>> tuples;  // sorted code tuples, d-1 each
  StageCounts counts;
};

// The full pipeline: lists -> canonical prefixes -> sieve extension ->
// checked tuples, deterministic for a fixed config regardless of workers.
SearchResult full_search(const SearchConfig& config);

// Exhaustive enumeration of every standard basis by nested backtracking over
// the free matrices, with no equivalence reduction and no restriction of A2
// to companion form; feasible for dim <= 4 only (throws otherwise).
SearchResult oracle_search(int dim);

}  // namespace semi
