#include "hbc/genus.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "hbc/tree.hpp"

namespace hbc::genus {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(u128(r) * b % m);
    b = static_cast<u64>(u128(b) * b % m);
    e >>= 1;
  }
  return r;
}

u64 least_root(u64 m) {
  const auto f = eis::factor(m - 1);
  for (u64 g = 2;; ++g) {
    bool primitive = true;
    for (const auto& [p, e] : f)
      if (powmod(g, (m - 1) / p, m) == 1) {
        primitive = false;
        break;
      }
    if (primitive) return g;
  }
}

// Image of the least primitive root under x -> x^((q-1)/3); 0 for q = 9.
u64 cube_root_of_unity(long long q) {
  if (q == 9) return 0;
  const u64 m = static_cast<u64>(q);
  return powmod(least_root(m), (m - 1) / 3, m);
}

int character_with(long long q, u64 zeta, long long x) {
  if (q == 9) {
    static constexpr int log2mod9[9] = {-1, 0, 1, -1, 2, 5, -1, 4, 3};
    const int r = static_cast<int>(((x % 9) + 9) % 9);
    if (log2mod9[r] < 0) throw InputError("3 divides " + std::to_string(x));
    return log2mod9[r] % 3;
  }
  const u64 m = static_cast<u64>(q);
  const u64 xr = static_cast<u64>(((x % q) + q) % q);
  if (xr == 0) throw InputError(std::to_string(q) + " divides " + std::to_string(x));
  const u64 v = powmod(xr, (m - 1) / 3, m);
  if (v == 1) return 0;
  if (v == zeta) return 1;
  if (v == static_cast<u64>(u128(zeta) * zeta % m)) return 2;
  throw std::logic_error("cubic character outside F3");
}

int norm_scalar(const f3::Row& v) { return v.get(v.lead()); }

f3::Row normalized(const f3::Row& v) { return v.is_zero() ? v : v.scaled(norm_scalar(v)); }

f3::Row vec(int x, int y, int z) {
  f3::Row r;
  r.set(0, x);
  r.set(1, y);
  r.set(2, z);
  return r;
}

f3::Row cross(const f3::Row& u, const f3::Row& v) {
  return normalized(vec(u.get(1) * v.get(2) - u.get(2) * v.get(1), u.get(2) * v.get(0) - u.get(0) * v.get(2),
                        u.get(0) * v.get(1) - u.get(1) * v.get(0)));
}

// Line of the plane span(u, v) with all three coordinates nonzero; the plane
// through two doublet members of distinct doublets holds exactly one.
f3::Row full_line(const f3::Row& u, const f3::Row& v) {
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const f3::Row w = u.scaled(x) + v.scaled(y);
      if (w.get(0) && w.get(1) && w.get(2)) return normalized(w);
    }
  throw std::logic_error("plane without a full-conductor line");
}

std::string component_text(long long q) { return q == 9 ? "3^2" : std::to_string(q); }

// Components are ordered by their prime, so 9 comes first.
long long prime_of(long long q) { return q == 9 ? 3 : q; }

}  // namespace

bool admissible_component(long long q) {
  if (q == 9) return true;
  return q > 3 && q % 3 == 1 && eis::is_prime(static_cast<u64>(q));
}

long long least_primitive_root(long long q) {
  if (q < 3 || !eis::is_prime(static_cast<u64>(q))) throw InputError(std::to_string(q) + " is not an odd prime");
  return static_cast<long long>(least_root(static_cast<u64>(q)));
}

int character_value(long long q, long long x) {
  if (!admissible_component(q)) throw InputError(std::to_string(q) + " is not a conductor component");
  return character_with(q, cube_root_of_unity(q), x);
}

bool arrow(long long a, long long b) { return character_value(b, a) == 0; }

std::string ConductorTriple::factors() const {
  return component_text(q[0]) + "*" + component_text(q[1]) + "*" + component_text(q[2]);
}

ConductorTriple make_triple(long long q1, long long q2, long long q3) {
  for (long long q : {q1, q2, q3})
    if (!admissible_component(q))
      throw InputError(std::to_string(q) + " is not a conductor component (prime = 1 mod 3, or 9)");
  if (q1 == q2 || q1 == q3 || q2 == q3) throw InputError("conductor components must be distinct");
  return ConductorTriple{{q1, q2, q3}};
}

ConductorTriple triple_of_conductor(long long c) {
  if (c < 2) throw InputError("conductor must be positive");
  std::vector<long long> comps;
  for (const auto& [p, e] : eis::factor(static_cast<u64>(c))) {
    if (p == 3 && e == 2) comps.push_back(9);
    else if (p != 3 && e == 1 && p % 3 == 1) comps.push_back(static_cast<long long>(p));
    else throw InputError(std::to_string(c) + " is not a product of admissible components (factor " +
                          std::to_string(p) + "^" + std::to_string(e) + ")");
  }
  if (comps.size() != 3) throw InputError(std::to_string(c) + " does not have exactly three components");
  return make_triple(comps[0], comps[1], comps[2]);
}

std::string GraphClass::arrow_text() const {
  std::string s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && arrows[i][j])
        s += (s.empty() ? "" : " ") + component_text(triple.q[i]) + "->" + component_text(triple.q[j]);
  return s;
}

namespace {

GraphClass classify_with(const ConductorTriple& t, const std::array<u64, 3>& zeta) {
  GraphClass g;
  std::array<std::array<bool, 3>, 3> a{};
  int trivial = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        a[i][j] = character_with(t.q[j], zeta[j], t.q[i]) == 0;
        trivial += a[i][j];
      }
  g.trivial = trivial;
  int centre = -1;
  for (int i = 0; i < 3 && trivial == 2; ++i)
    if (a[i][(i + 1) % 3] && a[i][(i + 2) % 3]) centre = i;
  std::array<int, 3> order{0, 1, 2};
  if (centre >= 0) {
    g.cat1_graph2 = true;
    g.centre = t.q[centre];
    int o1 = (centre + 1) % 3, o2 = (centre + 2) % 3;
    if (prime_of(t.q[o1]) > prime_of(t.q[o2])) std::swap(o1, o2);
    order = {centre, o1, o2};
  } else {
    std::sort(order.begin(), order.end(), [&](int x, int y) { return prime_of(t.q[x]) < prime_of(t.q[y]); });
  }
  for (int i = 0; i < 3; ++i) {
    g.triple.q[i] = t.q[order[i]];
    for (int j = 0; j < 3; ++j) g.arrows[i][j] = a[order[i]][order[j]];
  }
  return g;
}

std::array<u64, 3> zetas(const ConductorTriple& t) {
  return {cube_root_of_unity(t.q[0]), cube_root_of_unity(t.q[1]), cube_root_of_unity(t.q[2])};
}

int line_value(const ConductorTriple& t, const std::array<u64, 3>& zeta, const f3::Row& v, long long x) {
  int s = 0;
  for (int i = 0; i < 3; ++i)
    if (v.get(i)) s += v.get(i) * character_with(t.q[i], zeta[i], x);
  return s % 3;
}

Normalization adapted_with(const ConductorTriple& t, const std::array<u64, 3>& zeta) {
  for (const auto& n : normalizations()) {
    const int b = ((-n.a * n.c) % 3 + 3) % 3;
    if (line_value(t, zeta, vec(1, 0, b), t.q[1]) == 0 && line_value(t, zeta, vec(1, n.a, 0), t.q[2]) == 0) return n;
  }
  return {};
}

}  // namespace

GraphClass classify_graph(const ConductorTriple& t) {
  make_triple(t.q[0], t.q[1], t.q[2]);
  return classify_with(t, zetas(t));
}

std::vector<Normalization> normalizations() { return {{1, 1}, {1, 2}, {2, 1}, {2, 2}}; }

int GenusLattice::line(const std::string& label) const {
  for (std::size_t k = 0; k < lines.size(); ++k)
    if (lines[k].label == label) return static_cast<int>(k);
  throw InputError("unknown field label " + label);
}

int GenusLattice::plane(const std::string& label) const {
  for (std::size_t k = 0; k < planes.size(); ++k)
    if (planes[k].label == label) return static_cast<int>(k);
  throw InputError("unknown plane label " + label);
}

bool GenusLattice::contains(int p, int l) const { return f3::dot(planes[p].normal, lines[l].v) == 0; }

int GenusLattice::degree_L() const {
  int d = 1;
  for (int r = f3::rank({lines[3].v, lines[5].v, lines[7].v}, 3); r > 0; --r) d *= 3;
  return d;
}

int GenusLattice::degree_L_tilde() const {
  int d = 1;
  for (int r = f3::rank({lines[4].v, lines[6].v, lines[8].v}, 3); r > 0; --r) d *= 3;
  return d;
}

std::string GenusLattice::to_dot() const {
  std::ostringstream os;
  os << "graph genus_field {\n  node [fontsize=10];\n  Kstar [label=\"K* (" << triple.conductor() << ")\"];\n";
  for (std::size_t p = 0; p < planes.size(); ++p) os << "  " << planes[p].label << " [shape=box];\n";
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::string label = lines[l].label;
    os << "  L" << l << " [label=\"" << label << " (" << lines[l].conductor << ")\"];\n";
  }
  for (std::size_t p = 0; p < planes.size(); ++p) {
    os << "  Kstar -- " << planes[p].label << ";\n";
    for (int l : planes[p].lines) os << "  " << planes[p].label << " -- L" << l << ";\n";
  }
  for (std::size_t l = 0; l < lines.size(); ++l) os << "  L" << l << " -- Q;\n";
  os << "}\n";
  return os.str();
}

Normalization adapted_normalization(const ConductorTriple& oriented) {
  make_triple(oriented.q[0], oriented.q[1], oriented.q[2]);
  return adapted_with(oriented, zetas(oriented));
}

GenusLattice build_lattice(const ConductorTriple& t, Normalization n) {
  make_triple(t.q[0], t.q[1], t.q[2]);
  if (n.a % 3 == 0 || n.c % 3 == 0) throw InputError("normalization exponents must be nonzero mod 3");
  GenusLattice lat;
  lat.triple = t;
  lat.norm = {((n.a % 3) + 3) % 3, ((n.c % 3) + 3) % 3};
  const int a = lat.norm.a, c = lat.norm.c, b = ((-a * c) % 3 + 3) % 3;
  const f3::Row v12 = vec(1, a, 0), v13 = vec(1, 0, b), v23 = vec(0, 1, c);
  const f3::Row t12 = vec(1, -a, 0), t13 = vec(1, 0, -b), t23 = vec(0, 1, -c);
  const f3::Row K1 = full_line(v12, v13), K2 = full_line(t13, t23), K3 = full_line(t12, t13), K4 = full_line(t12, t23);

  const std::pair<f3::Row, std::string> defs[] = {
      {vec(1, 0, 0), "k_q1"}, {vec(0, 1, 0), "k_q2"},   {vec(0, 0, 1), "k_q3"}, {v12, "k_q1q2"}, {t12, "~k_q1q2"},
      {v13, "k_q1q3"},        {t13, "~k_q1q3"},         {v23, "k_q2q3"},        {t23, "~k_q2q3"}, {K1, "K1"},
      {K2, "K2"},             {K3, "K3"},               {K4, "K4"}};
  for (const auto& [v, label] : defs) {
    Line l;
    l.v = normalized(v);
    l.label = label;
    l.conductor = 1;
    for (int i = 0; i < 3; ++i)
      if (v.get(i)) l.conductor *= t.q[i];
    lat.lines.push_back(l);
  }

  const std::pair<f3::Row, f3::Row> spans[] = {{v12, v13}, {t13, t23}, {t12, t13}, {t12, t23}, {K1, K3},
                                               {K1, K4},   {K1, K2},   {K2, K4},   {K2, K3},   {K3, K4},
                                               {v12, t12}, {v13, t13}, {v23, t23}};
  for (int j = 0; j < 13; ++j) {
    Plane p;
    p.normal = cross(spans[j].first, spans[j].second);
    p.label = "B" + std::to_string(j + 1);
    int k = 0;
    for (int l = 0; l < 13; ++l)
      if (f3::dot(p.normal, lat.lines[l].v) == 0) {
        if (k == 4) throw std::logic_error("plane with more than four lines");
        p.lines[k++] = l;
      }
    if (k != 4) throw std::logic_error("plane with fewer than four lines");
    lat.planes.push_back(p);
  }
  return lat;
}

GenusLattice build_lattice(const ConductorTriple& t) {
  const GraphClass g = classify_graph(t);
  if (g.cat1_graph2) return build_lattice(g.triple, adapted_normalization(g.triple));
  return build_lattice(t, Normalization{});
}

std::map<std::string, std::vector<std::string>> unramified_assignment(const GenusLattice& lat) {
  std::map<std::string, std::vector<std::string>> out;
  for (int i = 1; i <= 4; ++i) {
    const std::string K = "K" + std::to_string(i);
    const int l = lat.line(K);
    auto& v = out[K];
    for (std::size_t p = 0; p < lat.planes.size(); ++p)
      if (lat.contains(static_cast<int>(p), l)) v.push_back(lat.planes[p].label);
  }
  return out;
}

int character_value(const ConductorTriple& t, const f3::Row& v, long long x) { return line_value(t, zetas(t), v, x); }

bool splits(const GenusLattice& lat, int line, long long p) {
  return character_value(lat.triple, lat.lines[line].v, p) == 0;
}

// ---------------------------------------------------------------------------

std::string class_text(const ClassLine& c) {
  std::string s = "[";
  if (c[0]) s += "Q";
  if (c[1] == 1) s += "R";
  if (c[1] == 2) s += "R^2";
  return s + "]";
}

namespace {

ClassLine normalized_class(int x, int y) {
  x = ((x % 3) + 3) % 3;
  y = ((y % 3) + 3) % 3;
  if (x) return {1, (y * x) % 3};
  return {0, y ? 1 : 0};
}

struct KernelRow {
  int plane;  // 1-based
  ClassLine kernel;
};

// Transfer kernels of the rank-2 quartet members over the planes through
// them, in the basis ([Q],[R]) of the classes of the primes above q2, q3.
const std::vector<std::pair<std::string, std::vector<KernelRow>>>& kernel_table() {
  static const std::vector<std::pair<std::string, std::vector<KernelRow>>> table = {
      {"K2", {{2, {1, 2}}, {7, {0, 1}}, {8, {1, 1}}, {9, {1, 0}}}},
      {"K3", {{3, {1, 1}}, {5, {1, 2}}, {9, {1, 0}}, {10, {0, 1}}}},
      {"K4", {{4, {1, 2}}, {6, {1, 0}}, {8, {1, 1}}, {10, {0, 1}}}},
  };
  return table;
}

// Value at the Frobenius of the prime above q_m of a character of the plane
// that is nontrivial on the relative group over the field of line ki.
int frobenius_value(const GenusLattice& lat, const std::array<u64, 3>& zeta, const Plane& p, int ki, int m) {
  const f3::Row K = lat.lines[ki].v;
  f3::Row mu;
  for (int l : p.lines)
    if (l != ki) {
      mu = lat.lines[l].v;
      break;
    }
  // The line of the plane unramified at q_m.
  f3::Row ell;
  for (int l : p.lines)
    if (lat.lines[l].v.get(m) == 0) ell = lat.lines[l].v;
  if (ell.is_zero()) throw std::logic_error("plane without a line unramified at the component");
  for (int al = 0; al < 3; ++al)
    for (int be = 1; be < 3; ++be) {
      const f3::Row w = K.scaled(al) + mu.scaled(be);
      if (w == ell || w == ell.scaled(2)) {
        const int s = w == ell ? 1 : 2;
        return (be * s * line_value(lat.triple, zeta, ell, lat.triple.q[m])) % 3;
      }
    }
  throw std::logic_error("line not in the plane");
}

}  // namespace

CapitulationReport predict_capitulation(const ConductorTriple& t, std::optional<Normalization> n) {
  CapitulationReport rep;
  const GraphClass g = classify_graph(t);
  rep.triple = g.triple;
  if (!g.cat1_graph2) {
    rep.reason = "triple is not of graph 2 of category I (trivial symbols: " +
                 (g.arrow_text().empty() ? std::string("none") : g.arrow_text()) + ")";
    return rep;
  }
  const auto zeta = zetas(rep.triple);
  rep.norm = n ? *n : adapted_with(rep.triple, zeta);
  const GenusLattice lat = build_lattice(rep.triple, rep.norm);
  rep.q2_splits_in_k13 = line_value(rep.triple, zeta, lat.lines[lat.line("k_q1q3")].v, rep.triple.q[1]) == 0;
  rep.q3_splits_in_k12 = line_value(rep.triple, zeta, lat.lines[lat.line("k_q1q2")].v, rep.triple.q[2]) == 0;
  if (!rep.q2_splits_in_k13 || !rep.q3_splits_in_k12) {
    rep.reason = "splitting conditions fail for this normalization";
    return rep;
  }
  rep.rank3_member = "K1";
  rep.parry_invariant = rep.triple.q[0];

  // Norm classes of the planes, in our basis ([Q],[R]).
  std::vector<std::vector<ClassLine>> norms;
  for (const auto& [field, rows] : kernel_table()) {
    const int ki = lat.line(field);
    std::vector<ClassLine> v;
    for (const auto& r : rows) {
      const Plane& p = lat.planes[r.plane - 1];
      const int fQ = frobenius_value(lat, zeta, p, ki, 1), fR = frobenius_value(lat, zeta, p, ki, 2);
      if (fQ == 0 && fR == 0) {
        rep.reason = "degenerate Artin map on " + p.label + " over " + field;
        return rep;
      }
      v.push_back(normalized_class(fR, -fQ));
    }
    norms.push_back(v);
  }

  // Either [R] or its inverse plays the role of the second basis class.
  auto oriented = [&](int orientation, bool& all) {
    std::vector<FieldCapitulation> fields;
    all = true;
    for (std::size_t f = 0; f < kernel_table().size(); ++f) {
      const auto& [field, rows] = kernel_table()[f];
      FieldCapitulation fc;
      fc.field = field;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const ClassLine nm = norms[f][r];
        fc.entries.push_back({"B" + std::to_string(rows[r].plane), rows[r].kernel,
                              normalized_class(nm[0], orientation == 1 ? nm[1] : -nm[1])});
      }
      std::vector<int> moved;
      for (std::size_t r = 0; r < fc.entries.size(); ++r) {
        if (fc.entries[r].kernel == fc.entries[r].norm) ++fc.fixed_points;
        else moved.push_back(static_cast<int>(r));
      }
      fc.transposition = moved.size() == 2 && fc.entries[moved[0]].kernel == fc.entries[moved[1]].norm &&
                         fc.entries[moved[1]].kernel == fc.entries[moved[0]].norm;
      all = all && fc.fixed_points == 2 && fc.transposition;
      fields.push_back(std::move(fc));
    }
    return fields;
  };
  bool all = false;
  rep.orientation = 1;
  rep.fields = oriented(1, all);
  if (!all) {
    auto other = oriented(2, all);
    if (all) {
      rep.orientation = 2;
      rep.fields = std::move(other);
    }
  }
  rep.g16_signature = all;
  rep.predicted = true;
  rep.tkt_label = rep.g16_signature ? "G.16 (1243)" : "";
  if (!rep.g16_signature) rep.reason = "norm classes do not give two fixed points and a transposition";
  return rep;
}

// ---------------------------------------------------------------------------

ScanResult scan_conductors(long long max_c, int threads) {
  if (max_c < 9 * 7 * 13) throw InputError("max_c must be at least 819");
  ScanResult res;
  res.max_c = max_c;
  const long long top = max_c / 63;
  std::vector<long long> comps;
  {
    std::vector<bool> composite(static_cast<std::size_t>(top) + 1, false);
    for (long long p = 2; p <= top; ++p) {
      if (composite[p]) continue;
      for (long long m = p * p; m <= top; m += p) composite[m] = true;
      if (p % 3 == 1) comps.push_back(p);
    }
    if (top >= 9) comps.insert(std::upper_bound(comps.begin(), comps.end(), 9LL), 9);
  }
  std::vector<u64> zeta(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) zeta[i] = cube_root_of_unity(comps[i]);

  std::vector<std::vector<ScanEntry>> per(comps.size());
  std::vector<std::size_t> counts(comps.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < comps.size(); i = next++) {
      const long long a = comps[i];
      for (std::size_t j = i + 1; j < comps.size() && a * comps[j] <= max_c; ++j) {
        const long long ab = a * comps[j];
        for (std::size_t k = j + 1; k < comps.size() && ab * comps[k] <= max_c; ++k) {
          ++counts[i];
          const ConductorTriple t{{a, comps[j], comps[k]}};
          ScanEntry e;
          e.graph = classify_with(t, {zeta[i], zeta[j], zeta[k]});
          if (!e.graph.cat1_graph2) continue;
          const auto& o = e.graph.triple;
          std::array<u64, 3> oz{};
          for (int r = 0; r < 3; ++r)
            oz[r] = o.q[r] == a ? zeta[i] : (o.q[r] == comps[j] ? zeta[j] : zeta[k]);
          const Normalization n = adapted_with(o, oz);
          const int b = ((-n.a * n.c) % 3 + 3) % 3;
          e.q2_splits_in_k13 = line_value(o, oz, vec(1, 0, b), o.q[1]) == 0;
          e.q3_splits_in_k12 = line_value(o, oz, vec(1, n.a, 0), o.q[2]) == 0;
          e.candidate = e.q2_splits_in_k13 && e.q3_splits_in_k12;
          per[i].push_back(e);
        }
      }
    }
  };
  const int w = std::max(1, worker_count(threads));
  std::vector<std::thread> pool;
  for (int k = 1; k < w; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < comps.size(); ++i) {
    res.triples += counts[i];
    for (auto& e : per[i])
      if (e.candidate) res.candidates.push_back(std::move(e));
  }
  std::stable_sort(res.candidates.begin(), res.candidates.end(), [](const ScanEntry& x, const ScanEntry& y) {
    return x.graph.triple.conductor() < y.graph.triple.conductor();
  });
  return res;
}

}  // namespace hbc::genus
