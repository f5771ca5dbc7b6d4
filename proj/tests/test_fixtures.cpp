// Fixture loaders: the bundled data files parse, decode to valid bases, and
// satisfy the arithmetic identities tying the tables together.
#include "semi/fixtures.hpp"

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "semi/bitmatrix.hpp"
#include "semi/semifield.hpp"

namespace {

// Writes `content` to a throwaway file and returns its path.
std::string temp_file(const std::string& content) {
  static int counter = 0;
  std::string path = "fixture_test_tmp_" + std::to_string(counter++) + ".txt";
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("bundled tuples decode to valid standard bases") {
  CHECK(semi::known_tuples().size() == 13);
  CHECK(semi::new_tuples().size() == 67);
  const auto& all = semi::all_tuples();
  REQUIRE(all.size() == 80);
  CHECK(all.front().label == "I");
  CHECK(all[12].label == "XIII");
  CHECK(all[13].label == "XIV");
  CHECK(all.back().label == "LXXX");

  for (const auto& t : all) {
    REQUIRE(t.codes.size() == 5);
    semi::StandardBasis basis = semi::basis_from_codes(t.codes, 6);
    std::string why;
    bool ok = semi::check_standard_basis(basis.mats, &why);
    CHECK_MESSAGE(ok, t.label, ": ", why);
    CHECK(semi::codes_from_basis(basis) == t.codes);
  }
}

TEST_CASE("property rows carry the plane labels in tuple order") {
  const auto& props = semi::plane_properties();
  const auto& all = semi::all_tuples();
  REQUIRE(props.size() == 80);
  for (size_t i = 0; i < props.size(); ++i) CHECK(props[i].label == all[i].label);
  CHECK(semi::properties_for("I").at_order == 23814);
  CHECK(semi::tuple_for("XIV").codes[0] == 135274594);
  CHECK_THROWS_AS(semi::properties_for("XCIX"), semi::DataError);
  CHECK_THROWS_AS(semi::tuple_for("nope"), semi::DataError);
}

TEST_CASE("every property row satisfies the isotope-counting identity") {
  // The isomorphism classes of semifields coordinatizing a plane are the
  // autotopism-group orbits on (q-1)^2 principal isotopes, so the per-row
  // class decomposition scaled by |At| must give exactly (q-1)^2 = 3969.
  for (const auto& p : semi::plane_properties())
    CHECK_MESSAGE(p.sa.scaled_sum(p.at_order) == 3969, p.label);
}

TEST_CASE("class counts aggregate to the published classification totals") {
  const auto& props = semi::plane_properties();
  long long known = 0, total = 0;
  for (size_t i = 0; i < props.size(); ++i) {
    long long c = props[i].sa.class_count();
    if (i < 13) known += c;
    total += c;
  }
  CHECK(known == 3058);
  CHECK(total == 87714);
}

TEST_CASE("line profiles cover the 65 points of a line (one printed exception)") {
  for (const auto& p : semi::plane_properties()) {
    for (const auto* prof : {&p.lx, &p.linf, &p.ly}) {
      if (p.label == "I") {
        CHECK(prof->point_count() == 82);  // reproduced as printed upstream
      } else {
        CHECK_MESSAGE(prof->point_count() == 65, p.label, " ", prof->str());
      }
    }
  }
}

TEST_CASE("nucleus orders are nested powers of two") {
  for (const auto& p : semi::plane_properties()) {
    const auto& v = p.zn.v;
    for (int n : v) {
      CHECK(n >= 2);
      CHECK((n & (n - 1)) == 0);
      CHECK(n <= 64);
    }
    CHECK(v[0] <= v[1]);  // Z inside N
    for (int k = 2; k < 5; ++k) CHECK(v[1] <= v[k]);  // N inside each nucleus
  }
}

TEST_CASE("profile strings round-trip through parse") {
  auto orb = semi::parse_orbit_profile("3[1]+1[2]+2[3]+9[6]");
  CHECK(orb.str() == "3[1]+1[2]+2[3]+9[6]");
  CHECK(orb.orbit_count() == 15);
  CHECK(orb.point_count() == 65);
  CHECK(semi::parse_orbit_profile("1[63] + 2[1]").str() == "2[1]+1[63]");

  auto sum = semi::parse_sum_profile("92/1+2/2+4/3+1/6");
  CHECK(sum.str() == "92/1+2/2+4/3+1/6");
  CHECK(sum.class_count() == 99);
  CHECK(sum.scaled_sum(42) == 3969);

  CHECK(semi::parse_zn("(2, 2, 8, 4, 8)").v == std::array<int, 5>{2, 2, 8, 4, 8});
  CHECK(semi::parse_zn("(64,64,64,64,64)").str() == "(64, 64, 64, 64, 64)");

  CHECK_THROWS_AS(semi::parse_orbit_profile("3["), semi::DataError);
  CHECK_THROWS_AS(semi::parse_orbit_profile("1[2]+2[2]"), semi::DataError);
  CHECK_THROWS_AS(semi::parse_orbit_profile("0[5]"), semi::DataError);
  CHECK_THROWS_AS(semi::parse_sum_profile("5"), semi::DataError);
  CHECK_THROWS_AS(semi::parse_sum_profile("1/2+3/2"), semi::DataError);
  CHECK_THROWS_AS(semi::parse_zn("(1,2,3)"), semi::DataError);
  CHECK_THROWS_AS(semi::parse_zn("2,2,2,2,2"), semi::DataError);
}

TEST_CASE("construction grid has the fixed column order and known tags") {
  const auto& grid = semi::constructions();
  REQUIRE(grid.size() == 13);
  CHECK(grid[0].label == "I");
  CHECK(grid[0].tags == std::array<std::string, 6>{"FF", "-", "-", "-", "-", "-"});
  CHECK(grid[3].label == "IV");
  CHECK(grid[3].tags == std::array<std::string, 6>{"K5", "-", "K3/JJ8", "-", "K4", "-"});
  CHECK(grid[12].label == "XIII");
  CHECK(grid[12].tags[0] == "NP1");
  CHECK(grid[12].tags[1] == "NP1");
}

TEST_CASE("rule records split by type as expected") {
  const auto& rules = semi::mult_rules();
  REQUIRE(rules.size() == 67);
  int by_type[4] = {0, 0, 0, 0};
  for (const auto& r : rules) {
    REQUIRE(r.type >= 1);
    REQUIRE(r.type <= 3);
    ++by_type[r.type];
  }
  CHECK(by_type[1] == 5);
  CHECK(by_type[2] == 53);
  CHECK(by_type[3] == 9);
  CHECK(rules[0].label == "XIV");
  CHECK(rules[0].type == 1);
  CHECK(rules[0].field == "GF8");
  CHECK(rules[5].label == "XIX");
  CHECK(rules[5].type == 3);
  CHECK(rules[5].field == "GF64");
  CHECK(rules.back().label == "LXXX");
}

TEST_CASE("loaders reject malformed rows with line numbers") {
  std::string bad_tuple = temp_file("# header\nI\t1 2 3\n");
  CHECK_THROWS_AS(semi::load_tuple_file(bad_tuple), semi::DataError);
  std::string out_of_range = temp_file("I\t1\t2\t3\t4\t1073741824\n");
  try {
    semi::load_tuple_file(out_of_range);
    FAIL("expected DataError");
  } catch (const semi::DataError& e) {
    CHECK(e.line == 1);
  }
  std::string bad_props = temp_file("# ok\nI | 6 | 1[65] | 1[65]\n");
  try {
    semi::load_plane_properties(bad_props);
    FAIL("expected DataError");
  } catch (const semi::DataError& e) {
    CHECK(e.line == 2);
  }
  std::string bad_rule = temp_file("XIV\t1\tGF64\tx1 a1\n");
  CHECK_THROWS_AS(semi::load_rules(bad_rule), semi::DataError);
  CHECK_THROWS_AS(semi::load_tuple_file("no_such_file.txt"), semi::DataError);
  for (const auto& p : {bad_tuple, out_of_range, bad_props, bad_rule}) std::remove(p.c_str());
}
