// Cubes, S3 action, tables, nuclei, primitivity — checked against field
// oracles built independently from companion matrices.
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "semi/semifield.hpp"

using namespace semi;

namespace {

// Power basis (I, C, C^2, ..., C^{d-1}) of GF(2)[x]/(p): a standard basis
// because C^k e1 = e_{k+1} and polynomials in C are invertible unless zero.
StandardBasis power_basis(uint32_t poly, int degree) {
  StandardBasis b;
  b.dim = degree;
  BitMatrix c = companion_matrix(poly, degree);
  BitMatrix p = BitMatrix::identity(degree);
  for (int k = 0; k < degree; ++k) {
    b.mats.push_back(p);
    p = c * p;
  }
  return b;
}

bool is_associative(const SemifieldTable& t) {
  for (int x = 0; x < t.q(); ++x)
    for (int y = 0; y < t.q(); ++y)
      for (int z = 0; z < t.q(); ++z)
        if (t.mul(t.mul(uint8_t(x), uint8_t(y)), uint8_t(z)) !=
            t.mul(uint8_t(x), t.mul(uint8_t(y), uint8_t(z))))
          return false;
  return true;
}

bool is_commutative(const SemifieldTable& t) {
  for (int x = 0; x < t.q(); ++x)
    for (int y = 0; y < t.q(); ++y)
      if (t.mul(uint8_t(x), uint8_t(y)) != t.mul(uint8_t(y), uint8_t(x))) return false;
  return true;
}

// Right-multiplication matrix of basis vector e_j read straight off a cube.
BitMatrix cube_right_mult(const Cube& c, int j) {
  BitMatrix m(c.dim());
  for (int i1 = 1; i1 <= c.dim(); ++i1)
    for (int i3 = 1; i3 <= c.dim(); ++i3) m.set(i3, i1, c.get(i1, j, i3));
  return m;
}

Cube random_cube(int dim, std::mt19937_64& rng) {
  Cube c(dim);
  for (int i1 = 1; i1 <= dim; ++i1)
    for (int i2 = 1; i2 <= dim; ++i2)
      for (int i3 = 1; i3 <= dim; ++i3) c.set(i1, i2, i3, int(rng() & 1));
  return c;
}

}  // namespace

TEST_CASE("check_standard_basis accepts power bases and reports failures") {
  std::string why;
  CHECK(check_standard_basis(power_basis(0b111, 2).mats, &why));
  CHECK(check_standard_basis(power_basis(0b1011, 3).mats, &why));
  CHECK(check_standard_basis(power_basis(0b1000011, 6).mats, &why));

  // A1 not the identity.
  auto mats = power_basis(0b1011, 3).mats;
  std::swap(mats[0], mats[1]);
  CHECK_FALSE(check_standard_basis(mats, &why));
  CHECK(why == "A1 is not the identity");

  // Wrong first column.
  mats = power_basis(0b1011, 3).mats;
  std::swap(mats[1], mats[2]);
  CHECK_FALSE(check_standard_basis(mats, &why));
  CHECK(why.find("first column of A2") != std::string::npos);

  // Singular combination: d=2, A2 invertible with col1 = e2 but I + A2 singular.
  BitMatrix bad(2);
  bad.set(2, 1, 1);
  bad.set(1, 2, 1);  // [[0,1],[1,0]]
  CHECK_FALSE(check_standard_basis({BitMatrix::identity(2), bad}, &why));
  CHECK(why == "combination A1+A2 is singular");

  // Wrong count is a checkable failure; mixed dims are a precondition error.
  CHECK_FALSE(check_standard_basis({BitMatrix::identity(3)}, &why));
  CHECK(why == "expected 3 matrices, got 1");
  CHECK_THROWS_AS(
      check_standard_basis({BitMatrix::identity(2), BitMatrix::identity(3)}, nullptr),
      std::invalid_argument);
}

TEST_CASE("basis codes roundtrip") {
  std::vector<uint32_t> codes = {135274593, 67639409, 33954937, 25632381, 566730623};
  StandardBasis b = basis_from_codes(codes, 6);
  CHECK(b.mats.size() == 6);
  CHECK(b.mats[0] == BitMatrix::identity(6));
  CHECK(codes_from_basis(b) == codes);
  CHECK_THROWS_AS(basis_from_codes({1, 2}, 6), std::invalid_argument);
}

TEST_CASE("power-basis tables are the finite fields") {
  // GF(4): x^2 = x + 1 on the power basis, so 2*2 = 3, 2*3 = 1.
  auto gf4 = table_from_basis(power_basis(0b111, 2));
  CHECK(gf4.mul(2, 2) == 3);
  CHECK(gf4.mul(2, 3) == 1);
  CHECK(gf4.mul(3, 3) == 2);
  CHECK(is_associative(gf4));
  CHECK(is_commutative(gf4));

  auto gf8 = table_from_basis(power_basis(0b1011, 3));
  CHECK(is_associative(gf8));
  CHECK(is_commutative(gf8));
  CHECK(nuclei_and_center(gf8) == ZNTuple{{8, 8, 8, 8, 8}});
  CHECK(primitivity_class(gf8) == Primitivity::two_sided);

  auto gf64 = table_from_basis(power_basis(0b1000011, 6));
  CHECK(is_associative(gf64));
  CHECK(is_commutative(gf64));
  CHECK(nuclei_and_center(gf64) == ZNTuple{{64, 64, 64, 64, 64}});
  CHECK(primitivity_class(gf64) == Primitivity::two_sided);
  // x (= element 2) is a root of a primitive polynomial: its powers cycle
  // through all 63 nonzero elements and x^63 = 1.
  uint8_t p = 2;
  int steps = 1;
  while (p != 1) {
    p = gf64.mul(p, 2);
    ++steps;
  }
  CHECK(steps == 63);
}

TEST_CASE("table validation rejects broken grids") {
  auto gf4 = table_from_basis(power_basis(0b111, 2));
  std::vector<uint8_t> prod = gf4.raw();
  CHECK_NOTHROW(SemifieldTable(2, prod, 1));
  CHECK_THROWS_AS(SemifieldTable(2, prod, 2), std::invalid_argument);  // wrong identity
  prod[size_t(2) * 4 + 2] = 0;                                        // 2*2 := 0
  CHECK_THROWS_AS(SemifieldTable(2, prod, 1), std::invalid_argument);
  CHECK_THROWS_AS(SemifieldTable(3, gf4.raw(), 1), std::invalid_argument);  // wrong size
}

TEST_CASE("left/right multiplication matrices and solves") {
  auto t = table_from_basis(power_basis(0b1011, 3));
  for (int x = 0; x < t.q(); ++x) {
    BitMatrix lx = t.left_mult(uint8_t(x));
    BitMatrix rx = t.right_mult(uint8_t(x));
    for (int y = 0; y < t.q(); ++y) {
      CHECK(lx.apply(uint8_t(y)) == t.mul(uint8_t(x), uint8_t(y)));
      CHECK(rx.apply(uint8_t(y)) == t.mul(uint8_t(y), uint8_t(x)));
    }
  }
  for (int a = 1; a < t.q(); ++a)
    for (int x = 0; x < t.q(); ++x) {
      CHECK(t.mul(uint8_t(a), t.solve_left(uint8_t(a), uint8_t(x))) == x);
      CHECK(t.mul(t.solve_right(uint8_t(a), uint8_t(x)), uint8_t(a)) == x);
    }
  CHECK_THROWS_AS(t.solve_left(0, 1), std::invalid_argument);
}

TEST_CASE("cube slices reproduce the basis and tables roundtrip") {
  StandardBasis b = basis_from_codes({135274593, 67639409, 33954937, 25632381, 566730623}, 6);
  Cube c = Cube::from_basis(b);
  for (int i = 1; i <= 6; ++i) CHECK(c.slice(i) == b.mats[i - 1]);
  SemifieldTable t = table_from_basis(b);
  CHECK(Cube::from_table(t) == c);
  // Bilinearity: products of basis vectors determine the whole table.
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(c.pair_bits(i, j) == t.mul(uint8_t(1) << i, uint8_t(1) << j));
}

TEST_CASE("permutation names, composition, and cube action") {
  CHECK(Perm3::all().size() == 6);
  for (const Perm3& s : Perm3::all()) CHECK(Perm3::by_name(s.name()) == s);
  CHECK_THROWS_AS(Perm3::by_name("(21)"), std::invalid_argument);
  // (12)∘(13) applies (13) first: 1->3->3, 3->1->2, 2->2->1, i.e. (132).
  CHECK(Perm3::by_name("(12)").compose(Perm3::by_name("(13)")) == Perm3::by_name("(132)"));

  std::mt19937_64 rng(0x5eedULL);
  Cube c = random_cube(5, rng);
  CHECK(apply_permutation(c, Perm3::by_name("1")) == c);
  // Acting by sigma then tau equals acting by tau∘sigma.
  for (const Perm3& s : Perm3::all())
    for (const Perm3& t : Perm3::all())
      CHECK(apply_permutation(apply_permutation(c, s), t) ==
            apply_permutation(c, t.compose(s)));
  // Each non-identity permutation changes a generic cube.
  for (const Perm3& s : Perm3::all())
    if (!(s == Perm3{}))
      CHECK_FALSE(apply_permutation(c, s) == c);
}

TEST_CASE("transposition actions on cubes") {
  StandardBasis b = basis_from_codes({135274594, 70580276, 37685996, 25345988, 584237329}, 6);
  Cube c = Cube::from_basis(b);
  // (23) transposes every defining matrix.
  Cube c23 = apply_permutation(c, Perm3::by_name("(23)"));
  for (int i = 1; i <= 6; ++i) CHECK(c23.slice(i) == c.slice(i).transposed());
  // (13) transposes the right-multiplication family instead.
  Cube c13 = apply_permutation(c, Perm3::by_name("(13)"));
  for (int j = 1; j <= 6; ++j) CHECK(cube_right_mult(c13, j) == cube_right_mult(c, j).transposed());
  // (12) swaps the roles of the two factors; on a commutative cube it fixes it.
  Cube field = Cube::from_basis(power_basis(0b1000011, 6));
  CHECK(apply_permutation(field, Perm3::by_name("(12)")) == field);
}

TEST_CASE("presemifield normalization") {
  // A cube that already carries an identity is returned unchanged.
  StandardBasis b = basis_from_codes({135274600, 518296613, 253216863, 778190320, 47879003}, 6);
  Cube c = Cube::from_basis(b);
  SemifieldTable direct = table_from_basis(b);
  CHECK(presemifield_to_semifield(c) == direct);

  // Normalizing any S3 image of the order-8 field gives a loop table that is
  // again the field (all semifields of order 8 are associative).
  Cube f8 = Cube::from_basis(power_basis(0b1011, 3));
  for (const Perm3& s : Perm3::all()) {
    SemifieldTable t = presemifield_to_semifield(apply_permutation(f8, s));
    CHECK(is_associative(t));
    CHECK(is_commutative(t));
    uint8_t e = t.identity();
    for (int x = 0; x < t.q(); ++x) {
      CHECK(t.mul(e, uint8_t(x)) == x);
      CHECK(t.mul(uint8_t(x), e) == x);
    }
  }

  // Zero divisors are rejected: e2*e2 = 0 below.
  Cube z(2);
  z.set(1, 1, 1, 1);
  z.set(1, 2, 2, 1);
  z.set(2, 1, 2, 1);  // slice1 = I, slice2 = [[0,0],[1,0]]
  CHECK_THROWS_AS(presemifield_to_semifield(z), std::invalid_argument);
}

TEST_CASE("tuple tables: the first known plane is the field") {
  // This tuple presents GF(64) on a standard basis; both actions give
  // isomorphic (here literally equal) commutative tables.
  std::vector<uint32_t> codes = {135274593, 67639409, 33954937, 25632381, 566730623};
  SemifieldTable t = table_from_codes(codes, 6);
  CHECK(is_associative(t));
  CHECK(is_commutative(t));
  CHECK(nuclei_and_center(t) == ZNTuple{{64, 64, 64, 64, 64}});
  CHECK(primitivity_class(t) == Primitivity::two_sided);
  CHECK(table_from_codes(codes, 6, MatrixAction::left) == t);
  CHECK(ZNTuple{{64, 64, 64, 64, 64}}.str() == "(64, 64, 64, 64, 64)");
}
