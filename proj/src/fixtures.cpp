// fixtures.cpp — see fixtures.hpp.
#include "semi/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>

#include "semi/bitmatrix.hpp"

#ifndef SEMI_FIXTURE_DIR
#define SEMI_FIXTURE_DIR "fixtures"
#endif

namespace semi {
namespace {

// Strip comments/blank lines and hand the rest to `row` with line numbers.
template <typename Fn>
void for_each_row(const std::string& path, Fn row) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open fixture file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    if (sv.empty() || sv.front() == '#') continue;
    row(std::string(sv), line_no);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

long long parse_ll(const std::string& s, const char* what, int line_no) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw DataError(std::string("expected integer for ") + what + ", got \"" + s + "\"", line_no);
  }
  if (pos != s.size() || v < 0)
    throw DataError(std::string("expected nonnegative integer for ") + what + ", got \"" + s + "\"",
                    line_no);
  return v;
}

}  // namespace

std::string fixture_dir() {
  if (const char* env = std::getenv("SEMITOOL_FIXTURES"); env && *env) return env;
  return SEMI_FIXTURE_DIR;
}

std::vector<LabeledTuple> load_tuple_file(const std::string& path) {
  std::vector<LabeledTuple> out;
  for_each_row(path, [&](const std::string& line, int line_no) {
    auto cols = split(line, '\t');
    if (cols.size() < 2)
      throw DataError("tuple row needs a label and at least one code", line_no);
    LabeledTuple t;
    t.label = trim(cols[0]);
    if (t.label.empty()) throw DataError("empty tuple label", line_no);
    for (size_t i = 1; i < cols.size(); ++i) {
      long long v = parse_ll(trim(cols[i]), "matrix code", line_no);
      t.codes.push_back(uint32_t(v));
    }
    int dim = int(t.codes.size()) + 1;
    if (dim < kMinDim || dim > kMaxDim)
      throw DataError("tuple has " + std::to_string(t.codes.size()) +
                          " codes; expected 1..5 (dimensions 2..6)",
                      line_no);
    for (uint32_t c : t.codes)
      if (c >= code_limit(dim))
        throw DataError("matrix code " + std::to_string(c) + " out of range for dimension " +
                            std::to_string(dim),
                        line_no);
    out.push_back(std::move(t));
  });
  return out;
}

OrbitProfile parse_orbit_profile(const std::string& text, int line_no) {
  OrbitProfile p;
  for (const std::string& raw : split(text, '+')) {
    std::string term = trim(raw);
    size_t lb = term.find('[');
    if (lb == std::string::npos || term.back() != ']')
      throw DataError("orbit term must look like count[size], got \"" + term + "\"", line_no);
    int count = int(parse_ll(term.substr(0, lb), "orbit count", line_no));
    int size = int(parse_ll(term.substr(lb + 1, term.size() - lb - 2), "orbit size", line_no));
    if (count <= 0 || size <= 0)
      throw DataError("orbit term must be positive, got \"" + term + "\"", line_no);
    p.terms.emplace_back(count, size);
  }
  std::sort(p.terms.begin(), p.terms.end(),
            [](auto& a, auto& b) { return a.second < b.second; });
  for (size_t i = 1; i < p.terms.size(); ++i)
    if (p.terms[i - 1].second == p.terms[i].second)
      throw DataError("orbit profile repeats size " + std::to_string(p.terms[i].second), line_no);
  return p;
}

SumProfile parse_sum_profile(const std::string& text, int line_no) {
  SumProfile p;
  for (const std::string& raw : split(text, '+')) {
    std::string term = trim(raw);
    size_t sl = term.find('/');
    if (sl == std::string::npos)
      throw DataError("sum term must look like count/aut, got \"" + term + "\"", line_no);
    int count = int(parse_ll(term.substr(0, sl), "class count", line_no));
    int aut = int(parse_ll(term.substr(sl + 1), "automorphism count", line_no));
    if (count <= 0 || aut <= 0)
      throw DataError("sum term must be positive, got \"" + term + "\"", line_no);
    p.terms.emplace_back(count, aut);
  }
  std::sort(p.terms.begin(), p.terms.end(),
            [](auto& a, auto& b) { return a.second < b.second; });
  for (size_t i = 1; i < p.terms.size(); ++i)
    if (p.terms[i - 1].second == p.terms[i].second)
      throw DataError("sum profile repeats automorphism count " +
                          std::to_string(p.terms[i].second),
                      line_no);
  return p;
}

ZNTuple parse_zn(const std::string& text, int line_no) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw DataError("nucleus tuple must be parenthesized, got \"" + text + "\"", line_no);
  auto parts = split(t.substr(1, t.size() - 2), ',');
  if (parts.size() != 5)
    throw DataError("nucleus tuple needs 5 entries, got " + std::to_string(parts.size()), line_no);
  ZNTuple zn;
  for (int i = 0; i < 5; ++i)
    zn.v[i] = int(parse_ll(trim(parts[i]), "nucleus order", line_no));
  return zn;
}

std::vector<PlaneProperties> load_plane_properties(const std::string& path) {
  std::vector<PlaneProperties> out;
  for_each_row(path, [&](const std::string& line, int line_no) {
    auto cols = split(line, '|');
    if (cols.size() != 7)
      throw DataError("property row needs 7 '|'-separated fields, got " +
                          std::to_string(cols.size()),
                      line_no);
    PlaneProperties p;
    p.label = trim(cols[0]);
    if (p.label.empty()) throw DataError("empty plane label", line_no);
    p.at_order = parse_ll(trim(cols[1]), "autotopism group order", line_no);
    p.lx = parse_orbit_profile(trim(cols[2]), line_no);
    p.linf = parse_orbit_profile(trim(cols[3]), line_no);
    p.ly = parse_orbit_profile(trim(cols[4]), line_no);
    p.sa = parse_sum_profile(trim(cols[5]), line_no);
    p.zn = parse_zn(cols[6], line_no);
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<ConstructionRow> load_constructions(const std::string& path) {
  std::vector<ConstructionRow> out;
  bool saw_header = false;
  for_each_row(path, [&](const std::string& line, int line_no) {
    auto cols = split(line, '\t');
    if (!saw_header) {
      saw_header = true;
      if (cols.size() != 7 || trim(cols[0]) != "plane")
        throw DataError("construction grid must start with its header row", line_no);
      for (int k = 0; k < 6; ++k)
        if (trim(cols[k + 1]) != std::string(Perm3::all()[k].name()))
          throw DataError("construction grid columns must follow the fixed S3 order", line_no);
      return;
    }
    if (cols.size() != 7)
      throw DataError("construction row needs 7 tab-separated fields, got " +
                          std::to_string(cols.size()),
                      line_no);
    ConstructionRow row;
    row.label = trim(cols[0]);
    if (row.label.empty()) throw DataError("empty plane label", line_no);
    for (int k = 0; k < 6; ++k) {
      row.tags[k] = trim(cols[k + 1]);
      if (row.tags[k].empty()) throw DataError("empty construction tag", line_no);
    }
    out.push_back(std::move(row));
  });
  if (!saw_header) throw DataError("construction grid is empty: " + path);
  return out;
}

std::vector<RuleRecord> load_rules(const std::string& path) {
  std::vector<RuleRecord> out;
  for_each_row(path, [&](const std::string& line, int line_no) {
    auto cols = split(line, '\t');
    if (cols.size() != 4)
      throw DataError("rule row needs 4 tab-separated fields, got " +
                          std::to_string(cols.size()),
                      line_no);
    RuleRecord r;
    r.label = trim(cols[0]);
    r.type = int(parse_ll(trim(cols[1]), "rule type", line_no));
    r.field = trim(cols[2]);
    r.rule = trim(cols[3]);
    if (r.label.empty()) throw DataError("empty rule label", line_no);
    if (r.rule.empty()) throw DataError("empty rule text", line_no);
    static const std::array<std::pair<int, const char*>, 3> kPairs{
        {{1, "GF8"}, {2, "GF4"}, {3, "GF64"}}};
    bool ok = false;
    for (auto& [ty, field] : kPairs)
      if (r.type == ty && r.field == field) ok = true;
    if (!ok)
      throw DataError("rule type " + std::to_string(r.type) + " does not match field " + r.field,
                      line_no);
    out.push_back(std::move(r));
  });
  return out;
}

namespace {

// Per-path cache with stable references (map nodes never move).
template <typename T>
const T& cached(const char* file, T (*loader)(const std::string&)) {
  static std::map<std::string, T> cache;
  std::string path = fixture_dir() + "/" + file;
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, loader(path)).first;
  return it->second;
}

}  // namespace

const std::vector<LabeledTuple>& known_tuples() {
  return cached<std::vector<LabeledTuple>>("tuples_known.txt", load_tuple_file);
}
const std::vector<LabeledTuple>& new_tuples() {
  return cached<std::vector<LabeledTuple>>("tuples_new.txt", load_tuple_file);
}
const std::vector<LabeledTuple>& all_tuples() {
  static std::vector<LabeledTuple> all = [] {
    std::vector<LabeledTuple> v = known_tuples();
    const auto& n = new_tuples();
    v.insert(v.end(), n.begin(), n.end());
    return v;
  }();
  return all;
}
const std::vector<PlaneProperties>& plane_properties() {
  return cached<std::vector<PlaneProperties>>("plane_properties.txt", load_plane_properties);
}
const std::vector<ConstructionRow>& constructions() {
  return cached<std::vector<ConstructionRow>>("constructions.txt", load_constructions);
}
const std::vector<RuleRecord>& mult_rules() {
  return cached<std::vector<RuleRecord>>("mult_rules.txt", load_rules);
}

const PlaneProperties& properties_for(const std::string& label) {
  for (const auto& p : plane_properties())
    if (p.label == label) return p;
  throw DataError("no property row for plane " + label);
}

const LabeledTuple& tuple_for(const std::string& label) {
  for (const auto& t : all_tuples())
    if (t.label == label) return t;
  throw DataError("no basis tuple for plane " + label);
}

}  // namespace semi
