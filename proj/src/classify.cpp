// classify.cpp — see classify.hpp.
#include "semi/classify.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace semi {

// ---------- profiles ----------

int OrbitProfile::orbit_count() const {
  int n = 0;
  for (auto& [count, size] : terms) n += count;
  return n;
}

int OrbitProfile::point_count() const {
  int n = 0;
  for (auto& [count, size] : terms) n += count * size;
  return n;
}

std::string OrbitProfile::str() const {
  std::string out;
  for (auto& [count, size] : terms) {
    if (!out.empty()) out += '+';
    out += std::to_string(count) + '[' + std::to_string(size) + ']';
  }
  return out;
}

int SumProfile::class_count() const {
  int n = 0;
  for (auto& [count, aut] : terms) n += count;
  return n;
}

long long SumProfile::scaled_sum(long long at_order) const {
  long long num = 0, den = 1;
  for (auto& [count, aut] : terms) {
    num = num * aut + den * count;
    den *= aut;
    long long g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  num *= at_order;
  if (num % den != 0)
    throw InternalCheckError("sum profile " + str() + " times " + std::to_string(at_order) +
                             " is not an integer");
  return num / den;
}

std::string SumProfile::str() const {
  std::string out;
  for (auto& [count, aut] : terms) {
    if (!out.empty()) out += '+';
    out += std::to_string(count) + '/' + std::to_string(aut);
  }
  return out;
}

// ---------- principal isotopes ----------

SemifieldTable principal_isotope(const SemifieldTable& t, uint8_t a, uint8_t b) {
  if (a == 0 || b == 0 || a >= t.q() || b >= t.q())
    throw std::invalid_argument("principal isotope needs a nonzero pair");
  const int q = t.q();
  std::array<uint8_t, 64> rinv{}, linv{};
  for (int x = 0; x < q; ++x) rinv[t.mul(uint8_t(x), b)] = uint8_t(x);
  for (int y = 0; y < q; ++y) linv[t.mul(a, uint8_t(y))] = uint8_t(y);
  std::vector<uint8_t> prod(size_t(q) * q);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) prod[size_t(x) * q + y] = t.mul(rinv[x], linv[y]);
  return SemifieldTable(SemifieldTable::Trusted{}, t.dim(), std::move(prod), t.mul(a, b));
}

// ---------- per-element invariants and fingerprints ----------

namespace {

constexpr uint64_t kFnvBasis = 14695981039346656037ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

inline void fnv_add(uint64_t& h, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

// Hash of (tail, period) of both power walks of each element: preserved by
// any isomorphism, so unequal values forbid mapping one onto the other.
void element_invariants(const SemifieldTable& t, std::array<uint32_t, 64>& inv) {
  const int q = t.q();
  std::array<int8_t, 64> pos;
  inv[0] = 0;
  for (int x = 1; x < q; ++x) {
    uint64_t h = kFnvBasis;
    for (int side = 0; side < 2; ++side) {
      pos.fill(-1);
      uint8_t y = uint8_t(x);
      int step = 0;
      while (pos[y] < 0) {
        pos[y] = int8_t(step++);
        y = side == 0 ? t.mul(y, uint8_t(x)) : t.mul(uint8_t(x), y);
      }
      fnv_add(h, uint64_t(pos[y]));          // tail length
      fnv_add(h, uint64_t(step - pos[y]));   // period
    }
    inv[x] = uint32_t(h ^ (h >> 32));
  }
}

uint64_t fingerprint_from(const SemifieldTable& t, const std::array<uint32_t, 64>& inv) {
  const int q = t.q();
  std::array<uint32_t, 64> s = inv;
  std::sort(s.begin() + 1, s.begin() + q);
  uint64_t h = kFnvBasis;
  fnv_add(h, uint64_t(q));
  for (int i = 1; i < q; ++i) fnv_add(h, s[i]);
  int commuting = 0;
  for (int x = 1; x < q; ++x)
    for (int y = 1; y < x; ++y) commuting += t.mul(uint8_t(x), uint8_t(y)) == t.mul(uint8_t(y), uint8_t(x));
  fnv_add(h, uint64_t(commuting));
  return h;
}

// Additive+multiplicative closure of the element set `mask`.
uint64_t closure_mask(const SemifieldTable& t, uint64_t mask) {
  const int q = t.q();
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x = 0; x < q; ++x) {
      if (!(mask >> x & 1)) continue;
      for (int y = 0; y <= x; ++y) {
        if (!(mask >> y & 1)) continue;
        uint64_t next = mask | (1ull << (x ^ y)) | (1ull << t.mul(uint8_t(x), uint8_t(y))) |
                        (1ull << t.mul(uint8_t(y), uint8_t(x)));
        if (next != mask) {
          mask = next;
          grew = true;
        }
      }
    }
  }
  return mask;
}

// Smallest elements that extend the closure of {0, identity} to everything.
std::vector<uint8_t> generating_sequence(const SemifieldTable& t) {
  const int q = t.q();
  const uint64_t full = q == 64 ? ~0ull : (1ull << q) - 1;
  std::vector<uint8_t> gens;
  uint64_t mask = closure_mask(t, 1ull | (1ull << t.identity()));
  for (int x = 1; x < q && mask != full; ++x) {
    if (mask >> x & 1) continue;
    gens.push_back(uint8_t(x));
    mask = closure_mask(t, mask | (1ull << x));
  }
  if (mask != full) throw InternalCheckError("generating sequence did not close");
  return gens;
}

// Backtracking search for additive multiplicative bijections src -> dst.
// Images of the generators are guessed; everything else is forced by
// propagating closure constraints, checking consistency on every pair.
struct IsoSearch {
  const SemifieldTable* src = nullptr;
  const SemifieldTable* dst = nullptr;
  const std::array<uint32_t, 64>* inv_src = nullptr;
  const std::array<uint32_t, 64>* inv_dst = nullptr;
  const std::vector<uint8_t>* gens = nullptr;
  int q = 0;
  bool collect_all = false;

  std::array<int16_t, 64> img;
  std::array<int16_t, 64> pre;
  std::array<uint8_t, 64> known{};
  int known_n = 0;
  std::array<uint16_t, 16384> queue;
  bool stop = false;
  std::vector<std::array<uint8_t, 64>> found;

  bool run() {
    img.fill(-1);
    pre.fill(-1);
    known_n = 0;
    stop = false;
    found.clear();
    if (!propagate(0, 0)) return false;
    if (!propagate(src->identity(), dst->identity())) return false;
    dfs(0);
    return !found.empty();
  }

  bool propagate(uint8_t s0, uint8_t d0) {
    int head = 0, tail = 0;
    queue[tail++] = uint16_t(s0 << 8 | d0);
    while (head < tail) {
      uint8_t s = uint8_t(queue[head] >> 8), d = uint8_t(queue[head] & 0xff);
      ++head;
      if (img[s] >= 0) {
        if (img[s] != d) return false;
        continue;
      }
      if (pre[d] >= 0) return false;
      if ((*inv_src)[s] != (*inv_dst)[d]) return false;
      img[s] = d;
      pre[d] = s;
      known[known_n++] = s;
      if (tail + 3 * known_n > int(queue.size()))
        throw InternalCheckError("isomorphism propagation queue overflow");
      for (int i = 0; i < known_n; ++i) {
        uint8_t x = known[i], dx = uint8_t(img[x]);
        queue[tail++] = uint16_t((x ^ s) << 8 | (dx ^ d));
        queue[tail++] = uint16_t(src->mul(x, s) << 8 | dst->mul(dx, d));
        queue[tail++] = uint16_t(src->mul(s, x) << 8 | dst->mul(d, dx));
      }
    }
    return true;
  }

  void rollback(int snap) {
    while (known_n > snap) {
      uint8_t s = known[--known_n];
      pre[img[s]] = -1;
      img[s] = -1;
    }
  }

  void dfs(size_t level) {
    if (stop) return;
    if (level == gens->size()) {
      if (known_n != q) throw InternalCheckError("isomorphism map incomplete at leaf");
      std::array<uint8_t, 64> m{};
      for (int i = 0; i < q; ++i) m[i] = uint8_t(img[i]);
      found.push_back(m);
      if (!collect_all) stop = true;
      return;
    }
    uint8_t g = (*gens)[level];
    int snap = known_n;
    for (int d = 1; d < q; ++d) {
      if (pre[d] >= 0 || (*inv_dst)[d] != (*inv_src)[g]) continue;
      if (propagate(g, uint8_t(d))) dfs(level + 1);
      rollback(snap);
      if (stop) return;
    }
  }
};

// Reusable source-side context so repeated tests against one table only pay
// for the target side.
struct IsoSource {
  const SemifieldTable* table;
  std::array<uint32_t, 64> inv;
  std::vector<uint8_t> gens;

  explicit IsoSource(const SemifieldTable& t) : table(&t) {
    element_invariants(t, inv);
    gens = generating_sequence(t);
  }

  bool matches(const SemifieldTable& target, const std::array<uint32_t, 64>& target_inv,
               IsoSearch& scratch) const {
    scratch.src = table;
    scratch.dst = &target;
    scratch.inv_src = &inv;
    scratch.inv_dst = &target_inv;
    scratch.gens = &gens;
    scratch.q = table->q();
    scratch.collect_all = false;
    return scratch.run();
  }
};

}  // namespace

uint64_t iso_fingerprint(const SemifieldTable& t) {
  std::array<uint32_t, 64> inv;
  element_invariants(t, inv);
  return fingerprint_from(t, inv);
}

bool are_isomorphic(const SemifieldTable& a, const SemifieldTable& b) {
  if (a.dim() != b.dim()) return false;
  std::array<uint32_t, 64> inv_b;
  element_invariants(b, inv_b);
  IsoSource src(a);
  // Sorted invariant multisets must agree before any search is worth it.
  std::array<uint32_t, 64> sa = src.inv, sb = inv_b;
  std::sort(sa.begin(), sa.begin() + a.q());
  std::sort(sb.begin(), sb.begin() + b.q());
  if (!std::equal(sa.begin(), sa.begin() + a.q(), sb.begin())) return false;
  IsoSearch search;
  return src.matches(b, inv_b, search);
}

std::vector<std::array<uint8_t, 64>> all_isomorphisms(const SemifieldTable& a,
                                                      const SemifieldTable& b) {
  if (a.dim() != b.dim()) return {};
  std::array<uint32_t, 64> inv_a, inv_b;
  element_invariants(a, inv_a);
  element_invariants(b, inv_b);
  std::vector<uint8_t> gens = generating_sequence(a);
  IsoSearch search;
  search.src = &a;
  search.dst = &b;
  search.inv_src = &inv_a;
  search.inv_dst = &inv_b;
  search.gens = &gens;
  search.q = a.q();
  search.collect_all = true;
  search.run();
  return std::move(search.found);
}

int automorphism_count(const SemifieldTable& t) { return int(all_isomorphisms(t, t).size()); }

// ---------- plane signatures and isotopy ----------

PlaneSignature plane_signature(const SemifieldTable& t) {
  const int n = t.q() - 1;
  PlaneSignature sig;
  sig.by_pair.resize(size_t(n) * n);
  std::array<uint32_t, 64> inv;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      SemifieldTable iso = principal_isotope(t, uint8_t(a), uint8_t(b));
      element_invariants(iso, inv);
      sig.by_pair[size_t(a - 1) * n + (b - 1)] = fingerprint_from(iso, inv);
    }
  sig.sorted = sig.by_pair;
  std::sort(sig.sorted.begin(), sig.sorted.end());
  return sig;
}

namespace {

// a coordinatizes the same plane as b iff a is isomorphic to some principal
// isotope of b; `sig` must be b's signature.
bool isotopic_with_signature(const SemifieldTable& a, const SemifieldTable& b,
                             const PlaneSignature& sig) {
  if (a.dim() != b.dim()) return false;
  const int n = b.q() - 1;
  const uint64_t fp_a = iso_fingerprint(a);
  IsoSource src(a);
  IsoSearch search;
  std::array<uint32_t, 64> inv;
  for (int idx = 0; idx < n * n; ++idx) {
    if (sig.by_pair[idx] != fp_a) continue;
    SemifieldTable iso = principal_isotope(b, uint8_t(idx / n + 1), uint8_t(idx % n + 1));
    element_invariants(iso, inv);
    if (src.matches(iso, inv, search)) return true;
  }
  return false;
}

}  // namespace

bool is_isotopic(const SemifieldTable& a, const SemifieldTable& b) {
  if (a.dim() != b.dim()) return false;
  return isotopic_with_signature(a, b, plane_signature(b));
}

// ---------- full isotope analysis ----------

IsotopeAnalysis analyze_isotopes(const SemifieldTable& t) {
  const int q = t.q(), n = q - 1;
  IsotopeAnalysis an;
  an.dim = t.dim();

  struct Rep {
    SemifieldTable table;
    IsoSource src;
    uint64_t fp;
    uint8_t a, b;
    int count = 0;
    explicit Rep(SemifieldTable&& tab, uint64_t fp_, uint8_t a_, uint8_t b_)
        : table(std::move(tab)), src(table), fp(fp_), a(a_), b(b_) {}
  };
  std::vector<std::unique_ptr<Rep>> reps;
  std::vector<int> class_of(size_t(n) * n, -1);
  an.signature.by_pair.resize(size_t(n) * n);

  IsoSearch search;
  std::array<uint32_t, 64> inv;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      size_t idx = size_t(a - 1) * n + (b - 1);
      SemifieldTable iso = principal_isotope(t, uint8_t(a), uint8_t(b));
      element_invariants(iso, inv);
      uint64_t fp = fingerprint_from(iso, inv);
      an.signature.by_pair[idx] = fp;
      int found = -1;
      for (size_t ri = 0; ri < reps.size(); ++ri) {
        if (reps[ri]->fp != fp) continue;
        if (reps[ri]->src.matches(iso, inv, search)) {
          found = int(ri);
          break;
        }
      }
      if (found < 0) {
        reps.push_back(std::make_unique<Rep>(std::move(iso), fp, uint8_t(a), uint8_t(b)));
        found = int(reps.size()) - 1;
      }
      reps[size_t(found)]->count++;
      class_of[idx] = found;
    }

  an.signature.sorted = an.signature.by_pair;
  std::sort(an.signature.sorted.begin(), an.signature.sorted.end());

  // The class of (1,1) is the class of t itself: every pair in it yields the
  // autotopisms (phi∘R_b, phi∘L_a, phi) with phi ranging over the
  // isomorphisms from that isotope onto t.
  const int self_class = class_of[0];
  long long total = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if (class_of[size_t(a - 1) * n + (b - 1)] != self_class) continue;
      SemifieldTable iso = principal_isotope(t, uint8_t(a), uint8_t(b));
      auto phis = all_isomorphisms(iso, t);
      if (phis.empty()) throw InternalCheckError("isotope class of (1,1) lost its isomorphism");
      for (const auto& phi : phis) {
        Autotopism at;
        for (int x = 0; x < q; ++x) {
          at.f[x] = phi[t.mul(uint8_t(x), uint8_t(b))];
          at.g[x] = phi[t.mul(uint8_t(a), uint8_t(x))];
          at.h[x] = phi[x];
        }
        an.group.push_back(at);
      }
      total += static_cast<long long>(phis.size());
      if (a == 1 && b == 1) an.aut_order = int(phis.size());
    }
  an.at_order = total;
  if (an.at_order != static_cast<long long>(reps[size_t(self_class)]->count) * an.aut_order)
    throw InternalCheckError("autotopism count disagrees with orbit of (1,1)");

  long long orbit_total = 0;
  for (const auto& rep : reps) {
    if (an.at_order % rep->count != 0)
      throw InternalCheckError("orbit size does not divide the autotopism order");
    IsotopeClass c;
    c.a = rep->a;
    c.b = rep->b;
    c.orbit_size = rep->count;
    c.aut_order = int(an.at_order / rep->count);
    c.primitivity = primitivity_class(rep->table);
    an.classes.push_back(c);
    orbit_total += rep->count;
  }
  if (orbit_total != static_cast<long long>(n) * n)
    throw InternalCheckError("isotope classes do not cover all pairs");
  return an;
}

SumProfile IsotopeAnalysis::sa() const {
  std::map<int, int> by_aut;
  for (const auto& c : classes) by_aut[c.aut_order]++;
  SumProfile p;
  for (auto& [aut, count] : by_aut) p.terms.emplace_back(count, aut);
  return p;
}

bool IsotopeAnalysis::has_primitive_isotope() const {
  for (const auto& c : classes)
    if (c.primitivity != Primitivity::none) return true;
  return false;
}

// ---------- line orbits ----------

namespace {

struct Dsu {
  std::array<int, 64> parent;
  Dsu(int n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

template <typename Component>
OrbitProfile component_orbits(const std::vector<Autotopism>& group, int q, Component comp) {
  Dsu dsu(q);
  for (const Autotopism& at : group)
    for (int x = 1; x < q; ++x) dsu.unite(x, comp(at)[x]);
  std::array<int, 64> size{};
  for (int x = 1; x < q; ++x) size[dsu.find(x)]++;
  std::map<int, int> by_size;
  by_size[1] += 2;  // the two triangle vertices on the line are always fixed
  for (int x = 1; x < q; ++x)
    if (dsu.find(x) == x) by_size[size[x]]++;
  OrbitProfile p;
  for (auto& [sz, count] : by_size) p.terms.emplace_back(count, sz);
  return p;
}

}  // namespace

LineOrbits line_orbits(const IsotopeAnalysis& an) {
  // Which component moves which line is fixed by the published asymmetric
  // rows: the middle components act on L_x, the first on L_inf.
  const int q = 1 << an.dim;
  LineOrbits lo;
  lo.lx = component_orbits(an.group, q, [](const Autotopism& a) { return a.g.data(); });
  lo.linf = component_orbits(an.group, q, [](const Autotopism& a) { return a.f.data(); });
  lo.ly = component_orbits(an.group, q, [](const Autotopism& a) { return a.h.data(); });
  return lo;
}

// ---------- cube permutations and the hexagon ----------

SemifieldTable sigma_image(const SemifieldTable& t, const Perm3& sigma) {
  if (sigma == Perm3{}) return t;
  Cube c = apply_permutation(Cube::from_table(t), sigma);
  return presemifield_to_semifield(c);
}

bool S3Hexagon::contains_plane(const SemifieldTable& t, uint64_t t_fingerprint) const {
  for (size_t i = 0; i < planes.size(); ++i) {
    // If t coordinatizes planes[i] it is isomorphic to one of its principal
    // isotopes, so its fingerprint must occur in the signature multiset.
    if (!std::binary_search(sigs[i].sorted.begin(), sigs[i].sorted.end(), t_fingerprint))
      continue;
    if (isotopic_with_signature(t, planes[i], sigs[i])) return true;
  }
  return false;
}

S3Hexagon s3_hexagon(const SemifieldTable& t) {
  S3Hexagon h;
  for (const Perm3& sigma : Perm3::all()) {
    SemifieldTable img = sigma_image(t, sigma);
    if (h.contains_plane(img, iso_fingerprint(img))) continue;
    h.sigs.push_back(plane_signature(img));
    h.planes.push_back(std::move(img));
  }
  return h;
}

int hexagon_size(const SemifieldTable& t) { return int(s3_hexagon(t).planes.size()); }

// ---------- grouping tuple sets ----------

PlaneSet group_by_plane(const std::vector<std::vector<uint32_t>>& tuples, int dim) {
  PlaneSet ps;
  ps.membership.reserve(tuples.size());
  for (const auto& codes : tuples) {
    SemifieldTable table = table_from_codes(codes, dim);
    const uint64_t fp = iso_fingerprint(table);
    int found = -1;
    for (size_t r = 0; r < ps.reps.size() && found < 0; ++r) {
      if (!std::binary_search(ps.sigs[r].sorted.begin(), ps.sigs[r].sorted.end(), fp)) continue;
      if (isotopic_with_signature(table, ps.reps[r], ps.sigs[r])) found = int(r);
    }
    if (found < 0) {
      found = int(ps.reps.size());
      ps.sigs.push_back(plane_signature(table));
      ps.reps.push_back(std::move(table));
    }
    ps.membership.push_back(found);
  }
  return ps;
}

TupleSetSummary summarize_tuple_set(const std::vector<std::vector<uint32_t>>& tuples, int dim) {
  PlaneSet ps = group_by_plane(tuples, dim);
  std::vector<S3Hexagon> classes;
  std::vector<size_t> founders;
  for (size_t r = 0; r < ps.reps.size(); ++r) {
    const uint64_t fp = iso_fingerprint(ps.reps[r]);
    bool matched = false;
    for (const S3Hexagon& h : classes)
      if (h.contains_plane(ps.reps[r], fp)) {
        matched = true;
        break;
      }
    if (!matched) {
      classes.push_back(s3_hexagon(ps.reps[r]));
      founders.push_back(r);
    }
  }
  TupleSetSummary s;
  s.s3_classes = int(classes.size());
  for (const S3Hexagon& h : classes) s.planes += int(h.planes.size());
  for (size_t r : founders) s.iso_classes += analyze_isotopes(ps.reps[r]).sa().class_count();
  return s;
}

// ---------- full record ----------

std::string ClassRecord::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["dim"] = dim;
  j["codes"] = codes;
  j["at"] = at_order;
  j["aut"] = aut_order;
  j["sa"] = sa.str();
  j["orbits"] = {{"lx", lx.str()}, {"linf", linf.str()}, {"ly", ly.str()}};
  j["zn"] = zn.v;
  j["hexagon"] = hexagon;
  j["primitivity"] = std::string(primitivity_name(primitivity));
  j["plane_has_primitive"] = plane_has_primitive;
  return j.dump();
}

ClassRecord classify_tuple(const std::string& label, const std::vector<uint32_t>& codes,
                           int dim) {
  SemifieldTable table = table_from_codes(codes, dim);
  IsotopeAnalysis an = analyze_isotopes(table);
  LineOrbits lo = line_orbits(an);
  ClassRecord rec;
  rec.label = label;
  rec.dim = dim;
  rec.codes = codes;
  rec.at_order = an.at_order;
  rec.aut_order = an.aut_order;
  rec.sa = an.sa();
  rec.lx = lo.lx;
  rec.linf = lo.linf;
  rec.ly = lo.ly;
  rec.zn = nuclei_and_center(table);
  rec.hexagon = hexagon_size(table);
  rec.primitivity = primitivity_class(table);
  rec.plane_has_primitive = an.has_primitive_isotope();
  return rec;
}

}  // namespace semi
