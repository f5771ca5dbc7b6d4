// presentations.cpp — field arithmetic for the three coordinate fields and
// the multiplication-rule interpreter.
//
// A rule's text is a comma-separated list of output coordinates; most entries
// wrap the whole list in one pair of parentheses, a few close that pair after
// the first coordinate instead.  Splitting therefore first looks for
// top-level commas and only strips an enclosing pair when the direct split
// does not yield one segment per coordinate.  Each coordinate is parsed as a
// GF(2)-sum of products of factors (j^e, xS^E, aT^E, or a parenthesized sum),
// products are distributed, and the flat monomials are validated: exactly one
// x factor, exactly one a factor, exponents powers of 2 below the field size.
#include "semi/presentations.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

#include "semi/classify.hpp"

namespace semi {

namespace {

uint32_t field_modulus(int degree) {
  switch (degree) {
    case 2: return 0b111;        // j^2 + j + 1
    case 3: return 0b1011;       // j^3 + j + 1
    case 6: return 0b1000011;    // j^6 + j + 1
    default: throw std::invalid_argument("FieldOps: degree must be 2, 3 or 6");
  }
}

}  // namespace

FieldOps::FieldOps(int degree) : degree_(degree), modulus_(field_modulus(degree)) {}

uint32_t FieldOps::mul(uint32_t a, uint32_t b) const {
  if (a >= size() || b >= size()) throw std::invalid_argument("FieldOps::mul: element out of range");
  uint32_t prod = 0;
  for (uint32_t bb = b; bb; bb &= bb - 1) prod ^= a << std::countr_zero(bb);
  for (int bit = 2 * degree_ - 2; bit >= degree_; --bit)
    if (prod >> bit & 1u) prod ^= modulus_ << (bit - degree_);
  return prod;
}

uint32_t FieldOps::frobenius_power(uint32_t a, int times) const {
  if (a >= size()) throw std::invalid_argument("FieldOps::frobenius_power: element out of range");
  if (times < 0) throw std::invalid_argument("FieldOps::frobenius_power: negative power");
  uint32_t r = a;
  for (int i = 0; i < times % degree_; ++i) r = mul(r, r);
  return r;
}

uint32_t FieldOps::inverse(uint32_t a) const {
  if (a >= size()) throw std::invalid_argument("FieldOps::inverse: element out of range");
  if (a == 0) throw std::invalid_argument("FieldOps::inverse: zero has no inverse");
  // a^(2^k - 2) = a^2 * a^4 * ... * a^(2^(k-1)).
  uint32_t r = 1;
  for (int i = 1; i < degree_; ++i) r = mul(r, frobenius_power(a, i));
  return r;
}

uint32_t FieldOps::j_power(long long e) const {
  long long order = (1 << degree_) - 1;
  long long r = e % order;
  if (r < 0) r += order;
  uint32_t v = 1;
  for (long long i = 0; i < r; ++i) v = mul(v, 2);
  return v;
}

namespace {

// -------- rule text parsing --------

// A monomial under construction: power of j plus the collected (slot,
// literal exponent) factors of each kind.
struct Mono {
  long long jpow = 0;
  std::vector<std::pair<int, int>> xs, as;
};
using Poly = std::vector<Mono>;

struct ParseCtx {
  std::string_view text;
  size_t pos = 0;
  const std::string* label = nullptr;
  int coord = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("rule " + *label + ", coordinate " + std::to_string(coord) + ": " + what);
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  int parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a number at offset " + std::to_string(start));
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
};

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  out.reserve(a.size() * b.size());
  for (const Mono& ma : a)
    for (const Mono& mb : b) {
      Mono m = ma;
      m.jpow += mb.jpow;
      m.xs.insert(m.xs.end(), mb.xs.begin(), mb.xs.end());
      m.as.insert(m.as.end(), mb.as.begin(), mb.as.end());
      out.push_back(std::move(m));
    }
  return out;
}

Poly parse_sum(ParseCtx& ctx);

Poly parse_factor(ParseCtx& ctx) {
  char c = ctx.peek();
  if (c == '(') {
    ++ctx.pos;
    Poly inner = parse_sum(ctx);
    if (ctx.peek() != ')') ctx.fail("missing closing parenthesis");
    ++ctx.pos;
    return inner;
  }
  if (c == 'j') {
    ++ctx.pos;
    Mono m;
    m.jpow = 1;
    if (ctx.peek() == '^') {
      ++ctx.pos;
      m.jpow = ctx.parse_int();
    }
    return {m};
  }
  if (c == 'x' || c == 'a') {
    ++ctx.pos;
    int slot = ctx.parse_int();
    int exp = 1;
    if (ctx.peek() == '^') {
      ++ctx.pos;
      exp = ctx.parse_int();
    }
    Mono m;
    (c == 'x' ? m.xs : m.as).push_back({slot, exp});
    return {m};
  }
  ctx.fail(std::string("unexpected character '") + c + "'");
}

Poly parse_product(ParseCtx& ctx) {
  Poly acc{Mono{}};  // empty product = 1
  bool any = false;
  while (true) {
    char c = ctx.peek();
    if (c != '(' && c != 'j' && c != 'x' && c != 'a') break;
    acc = poly_mul(acc, parse_factor(ctx));
    any = true;
  }
  if (!any) ctx.fail("empty term");
  return acc;
}

Poly parse_sum(ParseCtx& ctx) {
  Poly acc = parse_product(ctx);
  while (ctx.peek() == '+') {
    ++ctx.pos;
    Poly next = parse_product(ctx);
    acc.insert(acc.end(), next.begin(), next.end());
  }
  return acc;
}

// Split at top-level commas; strip one enclosing parenthesis pair and retry
// when the direct split does not produce `arity` segments.
std::vector<std::string> split_coordinates(const std::string& text, int arity,
                                           const std::string& label) {
  auto split = [&](std::string_view s) {
    std::vector<std::string> segs;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      else if (s[i] == ')') {
        if (--depth < 0) throw DataError("rule " + label + ": unbalanced parentheses");
      } else if (s[i] == ',' && depth == 0) {
        segs.emplace_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    if (depth != 0) throw DataError("rule " + label + ": unbalanced parentheses");
    segs.emplace_back(s.substr(start));
    return segs;
  };

  auto segs = split(text);
  if (int(segs.size()) != arity) {
    std::string_view t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    if (t.size() >= 2 && t.front() == '(') {
      int depth = 0;
      size_t close = std::string_view::npos;
      for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] == '(') ++depth;
        else if (t[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == t.size() - 1) segs = split(t.substr(1, t.size() - 2));
    }
  }
  if (int(segs.size()) != arity)
    throw DataError("rule " + label + ": expected " + std::to_string(arity) +
                    " coordinates, found " + std::to_string(segs.size()));
  return segs;
}

int frobenius_exponent(int literal, int degree, ParseCtx& ctx, const char* what) {
  if (literal < 1 || (literal & (literal - 1)) != 0)
    ctx.fail(std::string(what) + " exponent " + std::to_string(literal) + " is not a power of 2");
  int p = std::countr_zero(unsigned(literal));
  if (p >= degree)
    ctx.fail(std::string(what) + " exponent " + std::to_string(literal) +
             " exceeds the field degree");
  return p;
}

// Shared evaluator; `coords` splits a packed element into field coordinates.
uint8_t evaluate_with(const FieldOps& f, const MultiplicationRule& r, uint8_t x, uint8_t a) {
  const int k = r.field_degree;
  const uint32_t mask = (1u << k) - 1;
  uint32_t out = 0;
  for (int c = 0; c < r.arity; ++c) {
    uint32_t acc = 0;
    for (const RuleTerm& t : r.coords[size_t(c)]) {
      uint32_t xv = (uint32_t(x) >> ((t.x_slot - 1) * k)) & mask;
      uint32_t av = (uint32_t(a) >> ((t.a_slot - 1) * k)) & mask;
      uint32_t term = f.mul(f.frobenius_power(xv, t.x_frob), f.frobenius_power(av, t.a_frob));
      acc ^= f.mul(f.j_power(t.coeff_pow), term);
    }
    out |= acc << (c * k);
  }
  return uint8_t(out);
}

}  // namespace

MultiplicationRule parse_rule(const RuleRecord& rec) {
  MultiplicationRule r;
  r.label = rec.label;
  r.type = rec.type;
  switch (rec.type) {
    case 1: r.arity = 2; r.field_degree = 3; break;
    case 2: r.arity = 3; r.field_degree = 2; break;
    case 3: r.arity = 1; r.field_degree = 6; break;
    default: throw DataError("rule " + rec.label + ": unknown type " + std::to_string(rec.type));
  }
  const char* want_field = rec.type == 1 ? "GF8" : rec.type == 2 ? "GF4" : "GF64";
  if (rec.field != want_field)
    throw DataError("rule " + rec.label + ": type " + std::to_string(rec.type) +
                    " requires field " + want_field + ", got " + rec.field);

  auto segs = split_coordinates(rec.rule, r.arity, rec.label);
  const long long group_order = (1 << r.field_degree) - 1;
  for (int c = 0; c < r.arity; ++c) {
    ParseCtx ctx{segs[size_t(c)], 0, &rec.label, c + 1};
    Poly poly = parse_sum(ctx);
    if (!ctx.at_end()) ctx.fail("trailing text after the expression");
    std::vector<RuleTerm> terms;
    terms.reserve(poly.size());
    for (const Mono& m : poly) {
      if (m.xs.size() != 1 || m.as.size() != 1)
        ctx.fail("a monomial needs exactly one x and one a factor (got " +
                 std::to_string(m.xs.size()) + " and " + std::to_string(m.as.size()) + ")");
      RuleTerm t;
      t.coeff_pow = int(((m.jpow % group_order) + group_order) % group_order);
      t.x_slot = m.xs[0].first;
      t.a_slot = m.as[0].first;
      if (t.x_slot < 1 || t.x_slot > r.arity || t.a_slot < 1 || t.a_slot > r.arity)
        ctx.fail("coordinate index out of range");
      t.x_frob = frobenius_exponent(m.xs[0].second, r.field_degree, ctx, "x");
      t.a_frob = frobenius_exponent(m.as[0].second, r.field_degree, ctx, "a");
      terms.push_back(t);
    }
    r.coords.push_back(std::move(terms));
  }
  return r;
}

uint8_t evaluate_rule(const MultiplicationRule& r, uint8_t x, uint8_t a) {
  if (r.arity * r.field_degree != 6 || int(r.coords.size()) != r.arity)
    throw std::invalid_argument("evaluate_rule: malformed rule");
  FieldOps f(r.field_degree);
  return evaluate_with(f, r, x, a);
}

SemifieldTable rule_to_table(const MultiplicationRule& r) {
  if (r.arity * r.field_degree != 6 || int(r.coords.size()) != r.arity)
    throw std::invalid_argument("rule_to_table: malformed rule");
  FieldOps f(r.field_degree);

  std::array<std::array<uint8_t, 64>, 64> raw{};
  for (int x = 0; x < 64; ++x)
    for (int a = 0; a < 64; ++a) raw[size_t(x)][size_t(a)] = evaluate_with(f, r, uint8_t(x), uint8_t(a));

  Cube cube(6);
  for (int i1 = 1; i1 <= 6; ++i1)
    for (int i2 = 1; i2 <= 6; ++i2) {
      uint8_t bits = raw[size_t(1 << (i1 - 1))][size_t(1 << (i2 - 1))];
      for (int i3 = 1; i3 <= 6; ++i3) cube.set(i1, i2, i3, (bits >> (i3 - 1)) & 1);
    }

  // The parser only admits biadditive monomials, so the full table must be
  // the bilinear extension of the basis products.
  for (int x = 0; x < 64; ++x)
    for (int a = 0; a < 64; ++a) {
      uint8_t ext = 0;
      for (int i = 0; i < 6; ++i)
        if (x >> i & 1)
          for (int j = 0; j < 6; ++j)
            if (a >> j & 1) ext ^= cube.pair_bits(i, j);
      if (ext != raw[size_t(x)][size_t(a)])
        throw InternalCheckError("rule " + r.label + ": evaluation is not biadditive");
    }

  try {
    return presemifield_to_semifield(cube);
  } catch (const std::invalid_argument&) {
    throw DataError("rule " + r.label + ": zero divisor (transcription error)");
  }
}

bool verify_appendix_entry(const std::string& label, std::string* note) {
  const RuleRecord* rec = nullptr;
  for (const RuleRecord& r : mult_rules())
    if (r.label == label) {
      rec = &r;
      break;
    }
  if (!rec) throw DataError("no multiplication rule for label " + label);
  const LabeledTuple& tup = tuple_for(label);

  try {
    SemifieldTable from_rule = rule_to_table(parse_rule(*rec));
    SemifieldTable from_tuple = table_from_codes(tup.codes, 6);
    if (is_isotopic(from_rule, from_tuple)) return true;
    if (note) *note = "table not isotopic to the decoded tuple";
    return false;
  } catch (const DataError& e) {
    if (note) *note = e.what();
    return false;
  }
}

}  // namespace semi
