// Acceptance gate: one PASS/FAIL line per numbered criterion, exit nonzero if
// any line fails.  Timing and progress go to stderr; stdout is the verdict.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semi/bitmatrix.hpp"
#include "semi/classify.hpp"
#include "semi/common.hpp"
#include "semi/fixtures.hpp"
#include "semi/presentations.hpp"
#include "semi/search.hpp"
#include "semi/semifield.hpp"

namespace {

bool g_any_fail = false;

void report(int num, const std::string& status, const std::string& detail) {
  if (status == "FAIL") g_any_fail = true;
  std::cout << "criterion " << num << ": " << status;
  if (!detail.empty()) std::cout << "  " << detail;
  std::cout << "\n" << std::flush;
}

void verdict(int num, bool ok, const std::string& detail) {
  report(num, ok ? "PASS" : "FAIL", detail);
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ------------------------------------------------------------- criterion 1
// Every bundled tuple decodes to a standard basis, in under a second total.

void criterion_standard_bases(const std::vector<semi::LabeledTuple>& all) {
  Timer t;
  int ok = 0;
  std::string first_bad;
  for (const auto& lt : all) {
    semi::StandardBasis b = semi::basis_from_codes(lt.codes, 6);
    std::string why;
    if (semi::check_standard_basis(b.mats, &why))
      ++ok;
    else if (first_bad.empty())
      first_bad = lt.label + ": " + why;
  }
  double el = t.seconds();
  std::ostringstream d;
  d << ok << "/" << all.size() << " tuples are standard bases in " << el << " s";
  if (!first_bad.empty()) d << "; first failure " << first_bad;
  verdict(1, ok == int(all.size()) && el < 1.0, d.str());
}

// ------------------------------------------------------------- criterion 2
// Automorphism group orders of the thirteen previously known planes.

void criterion_automorphisms(const std::map<std::string, semi::ClassRecord>& rec) {
  const std::vector<std::pair<std::string, int>> want = {
      {"I", 6},    {"II", 1}, {"III", 1}, {"IV", 1}, {"V", 3},   {"VI", 3}, {"VII", 1},
      {"VIII", 2}, {"IX", 1}, {"X", 1},   {"XI", 6}, {"XII", 6}, {"XIII", 1}};
  int ok = 0;
  std::string bad;
  for (const auto& [label, aut] : want) {
    if (rec.at(label).aut_order == aut)
      ++ok;
    else if (bad.empty())
      bad = label + ": got " + std::to_string(rec.at(label).aut_order) + ", want " +
            std::to_string(aut);
  }
  std::ostringstream d;
  d << ok << "/13 automorphism group orders match";
  if (!bad.empty()) d << "; first mismatch " << bad;
  verdict(2, ok == 13, d.str());
}

// ------------------------------------------------------------- criterion 3
// S/A decompositions match all 80 printed rows, and the exact identity
// (q-1)^2 = |At| * sum(count/|Aut|) holds for each.

void criterion_sa(const std::map<std::string, semi::ClassRecord>& rec,
                  const std::vector<semi::LabeledTuple>& all) {
  int match = 0, identity = 0;
  std::string bad;
  for (const auto& lt : all) {
    const semi::ClassRecord& r = rec.at(lt.label);
    const semi::PlaneProperties& row = semi::properties_for(lt.label);
    if (r.sa == row.sa)
      ++match;
    else if (bad.empty())
      bad = lt.label + ": got " + r.sa.str() + ", want " + row.sa.str();
    try {
      if (r.sa.scaled_sum(r.at_order) == 63 * 63) ++identity;
    } catch (const semi::InternalCheckError&) {
    }
  }
  std::ostringstream d;
  d << match << "/" << all.size() << " S/A rows match, " << identity << "/" << all.size()
    << " satisfy 3969 = |At|*sum(count/aut)";
  if (!bad.empty()) d << "; first mismatch " << bad;
  verdict(3, match == int(all.size()) && identity == int(all.size()), d.str());
}

// ------------------------------------------------------- criteria 4 and 5
// Autotopism group orders and nuclei/center tuples, all 80 rows.

void criterion_column(int num, const std::map<std::string, semi::ClassRecord>& rec,
                      const std::vector<semi::LabeledTuple>& all, bool at_column) {
  int ok = 0;
  std::string bad;
  for (const auto& lt : all) {
    const semi::ClassRecord& r = rec.at(lt.label);
    const semi::PlaneProperties& row = semi::properties_for(lt.label);
    bool match = at_column ? r.at_order == row.at_order : r.zn == row.zn;
    if (match)
      ++ok;
    else if (bad.empty())
      bad = lt.label + ": got " + (at_column ? std::to_string(r.at_order) : r.zn.str()) +
            ", want " + (at_column ? std::to_string(row.at_order) : row.zn.str());
  }
  std::ostringstream d;
  d << ok << "/" << all.size() << (at_column ? " autotopism orders" : " nuclei/center tuples")
    << " match";
  if (!bad.empty()) d << "; first mismatch " << bad;
  verdict(num, ok == int(all.size()), d.str());
}

// ------------------------------------------------------------- criterion 6
// Line-orbit profiles match everywhere except the plane whose printed row is
// internally inconsistent; that one gets structural checks and a log line.

void criterion_orbits(const std::map<std::string, semi::ClassRecord>& rec,
                      const std::vector<semi::LabeledTuple>& all) {
  int ok = 0, comparable = 0;
  std::string bad;
  for (const auto& lt : all) {
    if (lt.label == "I") continue;
    ++comparable;
    const semi::ClassRecord& r = rec.at(lt.label);
    const semi::PlaneProperties& row = semi::properties_for(lt.label);
    if (r.lx == row.lx && r.linf == row.linf && r.ly == row.ly)
      ++ok;
    else if (bad.empty())
      bad = lt.label + ": got " + r.lx.str() + " / " + r.linf.str() + " / " + r.ly.str();
  }

  const semi::ClassRecord& one = rec.at("I");
  auto structural = [&](const semi::OrbitProfile& p) {
    if (p.point_count() != 65) return false;
    for (const auto& [count, size] : p.terms)
      if (size <= 0 || 23814 % size != 0) return false;
    return true;
  };
  bool plane1 = one.at_order == 23814 && structural(one.lx) && structural(one.linf) &&
                structural(one.ly);

  std::ostringstream d;
  d << ok << "/" << comparable << " orbit rows match; plane I printed row is inconsistent, "
    << "structural checks " << (plane1 ? "hold" : "FAIL") << " (computed lx=" << one.lx.str()
    << " linf=" << one.linf.str() << " ly=" << one.ly.str() << ", |At|=" << one.at_order << ")";
  if (!bad.empty()) d << "; first mismatch " << bad;
  verdict(6, ok == comparable && plane1, d.str());
}

// ------------------------------------------------------------- criterion 7
// Primitive elements: one plane has none either side, one is exactly
// one-sided, and every other plane admits a primitive coordinatizer.

void criterion_primitivity(const std::map<std::string, semi::ClassRecord>& rec,
                           const std::vector<semi::LabeledTuple>& all) {
  bool xii = rec.at("XII").primitivity == semi::Primitivity::none;
  semi::Primitivity p13 = rec.at("XIII").primitivity;
  bool xiii =
      p13 == semi::Primitivity::left_only || p13 == semi::Primitivity::right_only;
  int others = 0, others_ok = 0;
  std::string bad;
  for (const auto& lt : all) {
    if (lt.label == "XII" || lt.label == "XIII") continue;
    ++others;
    if (rec.at(lt.label).plane_has_primitive)
      ++others_ok;
    else if (bad.empty())
      bad = lt.label;
  }
  std::ostringstream d;
  d << "XII representative: " << semi::primitivity_name(rec.at("XII").primitivity)
    << "; XIII representative: " << semi::primitivity_name(p13) << "; " << others_ok << "/"
    << others << " remaining planes have a primitive coordinatizer";
  if (!bad.empty()) d << "; first without: " << bad;
  verdict(7, xii && xiii && others_ok == others, d.str());
}

// ------------------------------------------------------------- criterion 8
// Census of the thirteen previously known planes.

void criterion_known_census(const std::vector<semi::LabeledTuple>& known) {
  Timer t;
  std::vector<std::vector<uint32_t>> tuples;
  for (const auto& lt : known) tuples.push_back(lt.codes);
  semi::TupleSetSummary s = semi::summarize_tuple_set(tuples, 6);
  std::ostringstream d;
  d << "(" << s.s3_classes << ", " << s.planes << ", " << s.iso_classes << ") vs (13, 35, 3058) in "
    << t.seconds() << " s";
  verdict(8, s.s3_classes == 13 && s.planes == 35 && s.iso_classes == 3058, d.str());
}

// ------------------------------------------------------------- criterion 9
// The d=4 sieve against the exhaustive reference enumeration: identical
// isotopy content, every emitted tuple a standard basis.

void criterion_oracle_equivalence() {
  Timer t;
  semi::SearchConfig cfg;
  cfg.dim = 4;
  semi::SearchResult run = semi::full_search(cfg);
  semi::SearchResult oracle = semi::oracle_search(4);

  auto all_bases = [](const std::vector<std::vector<uint32_t>>& tuples) {
    for (const auto& codes : tuples) {
      semi::StandardBasis b = semi::basis_from_codes(codes, 4);
      if (!semi::check_standard_basis(b.mats, nullptr)) return false;
    }
    return true;
  };
  bool prop1 = all_bases(run.tuples) && all_bases(oracle.tuples);

  // Distinct planes among the sieve output, with autotopism orders.
  std::vector<semi::SemifieldTable> reps;
  std::vector<long long> at;
  for (const auto& codes : run.tuples) {
    semi::SemifieldTable table = semi::table_from_codes(codes, 4);
    bool found = false;
    for (const auto& r : reps)
      if (semi::is_isotopic(table, r)) {
        found = true;
        break;
      }
    if (!found) {
      reps.push_back(table);
      at.push_back(semi::analyze_isotopes(table).at_order);
    }
  }

  // Orbit counting: each plane contributes |GL(4,2)|*(q-1)/|At| standard
  // bases, so the plane list accounts for the whole reference enumeration
  // exactly or not at all.
  const long long gl = 20160, scale = 15;
  long long accounted = 0;
  bool divides = true;
  for (long long a : at) {
    divides = divides && (gl * scale) % a == 0;
    accounted += gl * scale / a;
  }
  bool counts_match = divides && accounted == (long long)oracle.tuples.size();

  // Search output is literally a subset of the reference enumeration.
  std::set<std::vector<uint32_t>> oracle_set(oracle.tuples.begin(), oracle.tuples.end());
  bool subset = true;
  for (const auto& codes : run.tuples) subset = subset && oracle_set.count(codes) > 0;

  // Spot-check: a deterministic stride of reference tuples lands on the
  // sieve's planes by exact isotopy test.
  int sampled = 0, placed = 0;
  for (size_t i = 0; i < oracle.tuples.size(); i += 997) {
    ++sampled;
    semi::SemifieldTable table = semi::table_from_codes(oracle.tuples[i], 4);
    for (const auto& r : reps)
      if (semi::is_isotopic(table, r)) {
        ++placed;
        break;
      }
  }

  std::ostringstream d;
  d << run.tuples.size() << " sieve tuples on " << reps.size() << " planes (|At|";
  for (long long a : at) d << " " << a;
  d << "), accounting for " << accounted << "/" << oracle.tuples.size()
    << " reference tuples; subset " << (subset ? "yes" : "NO") << "; " << placed << "/" << sampled
    << " sampled reference tuples isotopic to a sieve plane; Prop-1 "
    << (prop1 ? "clean" : "VIOLATED") << " (" << t.seconds() << " s)";
  verdict(9, prop1 && counts_match && subset && placed == sampled && reps.size() == 3, d.str());
}

// ------------------------------------------------------------ criterion 10
// Appendix rules: a fixed subset spanning all three types rebuilds its plane
// and the derived record matches the printed row.

void criterion_appendix_subset(const std::map<std::string, semi::ClassRecord>& rec) {
  const std::vector<std::string> subset = {"XIV", "XV",  "XVI",  "XXV",  "XXXIII", "XVII",
                                           "XVIII", "LIII", "LXX", "XIX", "LXXI",   "LXXVIII"};
  std::set<int> types;
  for (const auto& r : semi::mult_rules())
    if (std::find(subset.begin(), subset.end(), r.label) != subset.end()) types.insert(r.type);

  int ok = 0;
  std::string bad;
  for (const auto& label : subset) {
    std::string note;
    if (!semi::verify_appendix_entry(label, &note)) {
      if (bad.empty()) bad = label + ": " + note;
      continue;
    }
    const semi::ClassRecord& r = rec.at(label);
    const semi::PlaneProperties& row = semi::properties_for(label);
    if (r.at_order == row.at_order && r.sa == row.sa && r.zn == row.zn && r.lx == row.lx &&
        r.linf == row.linf && r.ly == row.ly)
      ++ok;
    else if (bad.empty())
      bad = label + ": record/row mismatch";
  }
  std::ostringstream d;
  d << ok << "/" << subset.size() << " rules rebuild their planes and match the printed rows ("
    << types.size() << " rule types covered)";
  if (!bad.empty()) d << "; first failure " << bad;
  verdict(10, ok == int(subset.size()) && types.size() == 3, d.str());
}

// ------------------------------------------------------------ criterion 11
// The full d=6 run, optional and gated: declared NOT RUN unless asked for.

void criterion_long_run() {
  const char* gate = std::getenv("SEMI_ACCEPT_LONG_RUN");
  if (!gate || !*gate) {
    report(11, "NOT RUN",
           "enable with SEMI_ACCEPT_LONG_RUN=1; would run full_search(6) with A2 polynomials "
           "{67, 109} and checkpoint dir acceptance_d6.ckpt, expecting 399866 partial bases "
           "(377675 + 22191 by A2), 95877 tuples, census (80, 332, 87714); multi-day on one core");
    return;
  }
  Timer t;
  semi::SearchConfig cfg;
  cfg.dim = 6;
  cfg.checkpoint_dir = "acceptance_d6.ckpt";
  cfg.resume = true;
  semi::SearchResult run = semi::full_search(cfg);
  std::map<uint32_t, size_t> partials(run.counts.partials.begin(), run.counts.partials.end());
  bool counts = run.counts.partial_total == 399866 && partials[67] == 377675 &&
                partials[109] == 22191 && run.tuples.size() == 95877;
  semi::TupleSetSummary s = semi::summarize_tuple_set(run.tuples, 6);
  bool census = s.s3_classes == 80 && s.planes == 332 && s.iso_classes == 87714;
  std::ostringstream d;
  d << run.counts.partial_total << " partials (67: " << partials[67] << ", 109: " << partials[109]
    << "), " << run.tuples.size() << " tuples, census (" << s.s3_classes << ", " << s.planes
    << ", " << s.iso_classes << ") in " << t.seconds() << " s";
  verdict(11, counts && census, d.str());
}

// ------------------------------------------------------------ criterion 12
// Byte determinism of the data files a run produces.

void criterion_determinism() {
  namespace fs = std::filesystem;
  fs::path work = "acceptance_work";
  fs::remove_all(work);
  fs::create_directories(work);

  semi::SearchConfig cfg;
  cfg.dim = 4;
  std::vector<std::string> streams;
  for (int pass = 0; pass < 2; ++pass) {
    semi::SearchResult run = semi::full_search(cfg);
    fs::path tuples = work / ("tuples_" + std::to_string(pass) + ".txt");
    semi::write_tuple_file(tuples.string(), 4, run.tuples,
                           "dimension 4 standard bases, one per line as codes A2..A4");
    std::ostringstream records;
    int n = 0;
    for (const auto& codes : run.tuples)
      records << semi::classify_tuple("t" + std::to_string(++n), codes, 4).to_json() << "\n";
    streams.push_back(read_bytes(tuples) + "\x1e" + records.str());
  }
  bool same = streams[0] == streams[1];
  verdict(12, same,
          same ? "two search+classify passes produced byte-identical tuple files and records"
               : "byte difference between two identical passes");
  fs::remove_all(work);
}

}  // namespace

int main() {
  Timer total;
  try {
    const std::vector<semi::LabeledTuple>& all = semi::all_tuples();
    const std::vector<semi::LabeledTuple>& known = semi::known_tuples();

    criterion_standard_bases(all);

    // One classification pass over all 80 representatives feeds criteria 2-7
    // and the record side of 10.
    Timer tc;
    std::map<std::string, semi::ClassRecord> rec;
    for (const auto& lt : all) {
      rec[lt.label] = semi::classify_tuple(lt.label, lt.codes, 6);
      std::cerr << "." << std::flush;
    }
    std::cerr << " classified " << all.size() << " representatives in " << tc.seconds() << " s\n";

    criterion_automorphisms(rec);
    criterion_sa(rec, all);
    criterion_column(4, rec, all, true);
    criterion_column(5, rec, all, false);
    criterion_orbits(rec, all);
    criterion_primitivity(rec, all);
    criterion_known_census(known);
    criterion_oracle_equivalence();
    criterion_appendix_subset(rec);
    criterion_long_run();
    criterion_determinism();
  } catch (const std::exception& e) {
    std::cout << "acceptance: aborted by exception: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "acceptance total " << total.seconds() << " s\n";
  return g_any_fail ? 1 : 0;
}
