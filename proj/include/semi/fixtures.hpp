// fixtures.hpp — loaders for the bundled reference data: labeled basis
// tuples, the per-plane invariant table, the construction grid and the
// coordinate multiplication rules.  All loaders throw DataError with the
// 1-based line number on malformed rows.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semi/classify.hpp"
#include "semi/common.hpp"
#include "semi/semifield.hpp"

namespace semi {

// Directory holding the bundled data files: $SEMITOOL_FIXTURES when set,
// else the build-time default, else "fixtures".
std::string fixture_dir();

struct LabeledTuple {
  std::string label;
  std::vector<uint32_t> codes;  // A2..Ad, so dim = codes.size() + 1
};
std::vector<LabeledTuple> load_tuple_file(const std::string& path);

OrbitProfile parse_orbit_profile(const std::string& text, int line_no = 0);
SumProfile parse_sum_profile(const std::string& text, int line_no = 0);

ZNTuple parse_zn(const std::string& text, int line_no = 0);

struct PlaneProperties {
  std::string label;
  long long at_order = 0;
  OrbitProfile lx, linf, ly;  // orbit profiles on the three triangle lines
  SumProfile sa;
  ZNTuple zn;
};
std::vector<PlaneProperties> load_plane_properties(const std::string& path);

struct ConstructionRow {
  std::string label;
  std::array<std::string, 6> tags;  // one per S3 element, in Perm3::all() order
};
std::vector<ConstructionRow> load_constructions(const std::string& path);

struct RuleRecord {
  std::string label;
  int type = 0;        // 1 = GF(8)^2, 2 = GF(4)^3, 3 = GF(64)
  std::string field;   // "GF8", "GF4" or "GF64", forced by type
  std::string rule;    // raw coordinate expressions, comma separated
};
std::vector<RuleRecord> load_rules(const std::string& path);

// The bundled files, loaded from fixture_dir() and cached.
const std::vector<LabeledTuple>& known_tuples();        // planes I..XIII
const std::vector<LabeledTuple>& new_tuples();          // planes XIV..LXXX
const std::vector<LabeledTuple>& all_tuples();          // both, in order
const std::vector<PlaneProperties>& plane_properties(); // all 80
const std::vector<ConstructionRow>& constructions();
const std::vector<RuleRecord>& mult_rules();

// Property row / tuple for one plane label; throws DataError if unknown.
const PlaneProperties& properties_for(const std::string& label);
const LabeledTuple& tuple_for(const std::string& label);

}  // namespace semi
