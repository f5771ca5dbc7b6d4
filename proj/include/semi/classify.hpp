// classify.hpp — isomorphism testing, the autotopism group, isotopy and the
// per-plane invariant record.
//
// The central facts used throughout: the isomorphism classes of semifields
// coordinatizing a plane correspond to the orbits of the autotopism group on
// the (q-1)^2 principal isotopes D^(a,b), the stabilizer of a pair being the
// automorphism group of that isotope; and every autotopism of D factors as
// (phi∘R_b, phi∘L_a, phi) with phi an isomorphism D^(a,b) -> D.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semi/common.hpp"
#include "semi/semifield.hpp"

namespace semi {

// Orbit profile "a[b]+..." = a orbits of size b; terms sorted by size, sizes
// distinct, so equal profiles compare equal.
struct OrbitProfile {
  std::vector<std::pair<int, int>> terms;  // (count, size)
  int orbit_count() const;
  int point_count() const;  // sum of count*size
  std::string str() const;
  bool operator==(const OrbitProfile&) const = default;
};

// Sum profile "c/a+..." = c isomorphism classes of semifields with a
// automorphisms each; terms sorted by a, all a distinct.
struct SumProfile {
  std::vector<std::pair<int, int>> terms;  // (count, aut)
  int class_count() const;                 // sum of counts
  // Exact |at_order| * sum(count/aut); throws InternalCheckError if the sum
  // is not an integer after scaling.
  long long scaled_sum(long long at_order) const;
  std::string str() const;
  bool operator==(const SumProfile&) const = default;
};

// Principal isotope: x∘y = R_b^-1(x) * L_a^-1(y), two-sided identity a*b.
SemifieldTable principal_isotope(const SemifieldTable& t, uint8_t a, uint8_t b);

// Exact isomorphism tests (additive bijections preserving products), by
// backtracking over generator images with forced closure propagation.
bool are_isomorphic(const SemifieldTable& a, const SemifieldTable& b);
// All isomorphisms a -> b as permutation tables on 0..q-1.
std::vector<std::array<uint8_t, 64>> all_isomorphisms(const SemifieldTable& a,
                                                      const SemifieldTable& b);
int automorphism_count(const SemifieldTable& t);

// Hash of isomorphism invariants: equal for isomorphic tables, so unequal
// hashes prove non-isomorphism; equal hashes are confirmed exactly.
uint64_t iso_fingerprint(const SemifieldTable& t);

// Fingerprints of all (q-1)^2 principal isotopes.  `by_pair` is indexed by
// (a-1)*(q-1)+(b-1); `sorted` is the isotopy-invariant multiset: isotopic
// tables have equal `sorted` vectors, so unequal vectors prove planes apart.
struct PlaneSignature {
  std::vector<uint64_t> by_pair;
  std::vector<uint64_t> sorted;
  bool same_plane_hint(const PlaneSignature& o) const { return sorted == o.sorted; }
};
PlaneSignature plane_signature(const SemifieldTable& t);

// True iff a and b coordinatize the same plane: scans principal isotopes of
// b for one isomorphic to a (fingerprint-gated, exact confirmation).
bool is_isotopic(const SemifieldTable& a, const SemifieldTable& b);

struct Autotopism {
  std::array<uint8_t, 64> f, g, h;  // f(x)*g(y) = h(x*y)
};

struct IsotopeClass {
  uint8_t a = 1, b = 1;    // representative pair
  int orbit_size = 0;      // pairs in the class = |At| / aut_order
  int aut_order = 0;       // |Aut| of the isotope
  Primitivity primitivity = Primitivity::none;
};

// Classification of all principal isotopes up to isomorphism plus the full
// autotopism group, assembled from the class of the pair (1,1).
struct IsotopeAnalysis {
  int dim = 0;
  long long at_order = 0;
  int aut_order = 0;  // |Aut| of t itself (the class of (1,1))
  std::vector<IsotopeClass> classes;
  std::vector<Autotopism> group;  // all |At| triples
  PlaneSignature signature;
  SumProfile sa() const;
  // True iff some isotope has a one- or two-sided primitive element.
  bool has_primitive_isotope() const;
};
IsotopeAnalysis analyze_isotopes(const SemifieldTable& t);

// Orbit profiles of the autotopism group on the three distinguished lines
// (each has q+1 points: two triangle vertices plus the nonzero elements
// acted on by one component of the triples).
struct LineOrbits {
  OrbitProfile lx, linf, ly;
};
LineOrbits line_orbits(const IsotopeAnalysis& an);

// Semifield table of the image of t under a cube permutation, normalized
// when the permuted cube loses the identity.  The result is isotopic to the
// image presemifield, which is all plane-level work needs.
SemifieldTable sigma_image(const SemifieldTable& t, const Perm3& sigma);

// The distinct planes among the six cube-permutation images, with their
// signatures (reused to test membership of further tables in the class).
struct S3Hexagon {
  std::vector<SemifieldTable> planes;
  std::vector<PlaneSignature> sigs;
  bool contains_plane(const SemifieldTable& t, uint64_t t_fingerprint) const;
};
S3Hexagon s3_hexagon(const SemifieldTable& t);

// Number of distinct planes among the six cube-permutation images.
int hexagon_size(const SemifieldTable& t);

// Partition of a tuple set by plane (isotopy class).
struct PlaneSet {
  std::vector<SemifieldTable> reps;      // first-seen representative per plane
  std::vector<PlaneSignature> sigs;      // signature of each representative
  std::vector<int> membership;           // input index -> rep index
};
PlaneSet group_by_plane(const std::vector<std::vector<uint32_t>>& tuples, int dim);

// Classification census of a tuple set: distinct equivalence classes under
// cube permutations + isotopy, distinct planes their hexagons cover, and
// isomorphism classes of coordinatizing semifields summed over class
// representatives.
struct TupleSetSummary {
  int s3_classes = 0;
  int planes = 0;
  long long iso_classes = 0;
};
TupleSetSummary summarize_tuple_set(const std::vector<std::vector<uint32_t>>& tuples, int dim);

// Everything the pipeline reports about one standard-basis tuple.
struct ClassRecord {
  std::string label;
  int dim = 0;
  std::vector<uint32_t> codes;
  long long at_order = 0;
  int aut_order = 0;
  SumProfile sa;
  OrbitProfile lx, linf, ly;
  ZNTuple zn;
  int hexagon = 0;
  Primitivity primitivity = Primitivity::none;   // of the given representative
  bool plane_has_primitive = false;              // some isotope is primitive
  std::string to_json() const;                   // single line, fixed key order
};
ClassRecord classify_tuple(const std::string& label, const std::vector<uint32_t>& codes,
                           int dim);

}  // namespace semi
