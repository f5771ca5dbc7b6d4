// presentations.hpp — exact arithmetic in the three coordinate fields
// (GF(4), GF(8), GF(64)) and an interpreter for the bundled multiplication
// rules: each rule is parsed into flat biadditive monomials, evaluated on all
// pairs under a fixed GF(2) flattening, and checked against the plane whose
// label it carries.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semi/common.hpp"
#include "semi/fixtures.hpp"
#include "semi/semifield.hpp"

namespace semi {

// GF(2^k) for k in {2, 3, 6} in the presentations j^2 + j + 1 = 0,
// j^3 + j + 1 = 0 and j^6 + j + 1 = 0.  Elements are coefficient bit-vectors
// (bit i = coefficient of j^i); all three moduli are primitive, so j
// generates the multiplicative group.
class FieldOps {
 public:
  explicit FieldOps(int degree);  // 2, 3 or 6, else invalid_argument

  int degree() const { return degree_; }
  uint32_t size() const { return 1u << degree_; }
  uint32_t add(uint32_t a, uint32_t b) const { return a ^ b; }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t frobenius_power(uint32_t a, int times) const;  // a^(2^times)
  uint32_t inverse(uint32_t a) const;  // throws invalid_argument on zero
  uint32_t j_power(long long e) const;

 private:
  int degree_ = 0;
  uint32_t modulus_ = 0;  // defining polynomial bitmask, top bit included
};

// One expanded monomial j^e * xS^(2^p) * aT^(2^r) of an output coordinate.
struct RuleTerm {
  int coeff_pow = 0;  // e; a bare coefficient 1 is e = 0
  int x_slot = 0;     // S, 1-based
  int x_frob = 0;     // p
  int a_slot = 0;     // T, 1-based
  int a_frob = 0;     // r
  bool operator==(const RuleTerm&) const = default;
};

// A parsed rule: per output coordinate, the flat monomial list.  Arity is 2
// for GF(8)^2, 3 for GF(4)^3, 1 for GF(64); every product in the source text
// has been distributed over parenthesized sums, and each monomial carries
// exactly one x and one a factor with power-of-2 exponents, which makes the
// induced product biadditive by construction.
struct MultiplicationRule {
  std::string label;
  int type = 0;          // 1, 2 or 3
  int arity = 0;         // coordinates per element
  int field_degree = 0;  // 3, 2 or 6
  std::vector<std::vector<RuleTerm>> coords;
};

// Parse one fixture record.  Throws DataError naming the label on malformed
// text: unbalanced parentheses, wrong coordinate count for the type, an
// exponent that is not a power of 2, or a monomial without exactly one x and
// one a factor.  Irregular but well-formed source (outer parentheses closing
// early, missing terms, coefficient-1 terms) parses as written.
MultiplicationRule parse_rule(const RuleRecord& rec);

// Evaluate the rule on packed operands.  Packing is coordinate-major, then
// j-power: bit (c*k + i) of the packed value is the coefficient of j^i in
// coordinate c+1, so for GF(8)^2 the GF(2)-basis reads (1,0), (j,0), (j^2,0),
// (0,1), (0,j), (0,j^2).
uint8_t evaluate_rule(const MultiplicationRule& r, uint8_t x, uint8_t a);

// Table of the rule's product over all q^2 pairs: evaluates every pair,
// checks the result is a presemifield (biadditive, no zero divisors), and
// normalizes to a two-sided identity.  A zero divisor means the transcription
// is bad and throws DataError naming the rule.
SemifieldTable rule_to_table(const MultiplicationRule& r);

// True iff the bundled rule for `label` rebuilds the plane of the bundled
// tuple with the same label (isotopy check).  A rule that fails to parse or
// hits a zero divisor counts as false; when `note` is non-null it receives
// the reason for a false result.  Unknown label throws DataError.
bool verify_appendix_entry(const std::string& label, std::string* note = nullptr);

}  // namespace semi
