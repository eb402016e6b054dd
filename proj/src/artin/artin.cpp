#include "hbc/artin.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace hbc {

namespace {

void require_rank(int d) {
  if (d != 2 && d != 3) throw InputError("Artin patterns need generator rank 2 or 3, got " + std::to_string(d));
}

f3::Row normalize(f3::Row v, int d) {
  for (int k = 0; k < d; ++k)
    if (v.get(k)) return v.get(k) == 1 ? v : v.scaled(2);
  throw std::logic_error("zero vector has no line");
}

Element element_of(const std::vector<Element>& basis, const PcPresentation& g, const f3::Row& x) {
  Element r;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (x.get(static_cast<int>(k))) r = g.multiply(r, g.pow(basis[k], x.get(static_cast<int>(k))));
  return r;
}

// Display order of partitions: larger order first, then more parts, then
// lexicographically larger.
bool display_before(const Partition& a, const Partition& b) {
  int sa = 0, sb = 0;
  for (int x : a) sa += x;
  for (int x : b) sb += x;
  if (sa != sb) return sa > sb;
  if (a.size() != b.size()) return a.size() > b.size();
  return a > b;
}

bool entry_before(const SecondOrderEntry& a, const SecondOrderEntry& b) {
  if (a.top != b.top) return display_before(a.top, b.top);
  for (std::size_t k = 0; k < std::min(a.below.size(), b.below.size()); ++k)
    if (a.below[k] != b.below[k]) return display_before(a.below[k], b.below[k]);
  return a.below.size() > b.below.size();
}

void check_elementary(const Subgroup& whole) {
  for (int e : abelian_invariants(whole))
    if (e != 1) throw InputError("commutator quotient is not elementary abelian");
}

}  // namespace

const std::vector<f3::Row>& normal_vectors(int d) {
  static std::once_flag once;
  static std::vector<std::vector<f3::Row>> cache;
  std::call_once(once, [] {
    cache.resize(6);
    for (int dim = 1; dim <= 5; ++dim) {
      int total = 1;
      for (int k = 0; k < dim; ++k) total *= 3;
      std::vector<std::vector<int>> tuples;
      for (int x = 1; x < total; ++x) {
        std::vector<int> t(dim);
        int y = x;
        for (int k = dim - 1; k >= 0; --k) {
          t[k] = y % 3;
          y /= 3;
        }
        const auto first = std::find_if(t.begin(), t.end(), [](int v) { return v != 0; });
        if (*first == 1) tuples.push_back(t);
      }
      std::sort(tuples.begin(), tuples.end());
      for (const auto& t : tuples) {
        f3::Row r;
        for (int k = 0; k < dim; ++k) r.set(k, t[k]);
        cache[dim].push_back(r);
      }
    }
  });
  if (d < 1 || d > 5) throw InputError("unsupported rank " + std::to_string(d));
  return cache[d];
}

int line_index(f3::Row v, int d) {
  v = normalize(v, d);
  const auto& nv = normal_vectors(d);
  for (std::size_t k = 0; k < nv.size(); ++k)
    if (nv[k] == v) return static_cast<int>(k) + 1;
  throw std::logic_error("vector outside F3^d");
}

f3::Row frattini_coordinates(const PcPresentation& g, const Element& x) {
  f3::Row r;
  for (int k = 0; k < g.d(); ++k) r.set(k, x.e[k]);
  return r;
}

std::vector<Subgroup> maximal_subgroups(GroupPtr g) {
  if (!is_standard(*g)) throw InputError("maximal_subgroups expects a standard presentation");
  const int d = g->d();
  std::vector<Element> phi, basis;
  for (int k = d; k < g->n(); ++k) phi.push_back(Element::gen(k));
  for (int k = 0; k < d; ++k) basis.push_back(Element::gen(k));
  std::vector<Subgroup> out;
  for (const auto& v : normal_vectors(d)) {
    auto gens = phi;
    for (const auto& x : f3::annihilator({v}, d)) gens.push_back(element_of(basis, *g, x));
    out.push_back(Subgroup::generated(g, gens));
  }
  return out;
}

std::vector<Subgroup> maximal_subgroups_of(const Subgroup& h) {
  const auto& G = h.group();
  Subgroup span = frattini_subgroup(h);
  const auto phi = span.igs();
  std::vector<Element> basis;
  for (const auto& x : h.igs())
    if (!span.contains(x)) {
      basis.push_back(x);
      span.add({x});
    }
  const int r = static_cast<int>(basis.size());
  std::vector<Subgroup> out;
  if (r == 0) return out;
  for (const auto& v : normal_vectors(r)) {
    auto gens = phi;
    for (const auto& x : f3::annihilator({v}, r)) gens.push_back(element_of(basis, G, x));
    out.push_back(Subgroup::generated(h.parent(), gens));
  }
  return out;
}

std::vector<Element> default_transversal(const Subgroup& m) {
  const auto& G = m.group();
  for (int k = 0; k < G.n(); ++k) {
    const Element h = Element::gen(k);
    if (!m.contains(h)) return {Element{}, h, G.multiply(h, h)};
  }
  throw InputError("subgroup is not proper");
}

Element transfer(const Subgroup& m, const Element& g, const std::vector<Element>& t) {
  const auto& G = m.group();
  if (m.log_order() + 1 != G.n() || t.size() != 3) throw InputError("transfer needs a subgroup of index 3");
  std::vector<Element> tinv(3);
  for (int i = 0; i < 3; ++i) tinv[i] = G.inverse(t[i]);
  Element v;
  for (int i = 0; i < 3; ++i) {
    const Element tg = G.multiply(t[i], g);
    int found = -1;
    Element mi;
    for (int j = 0; j < 3 && found < 0; ++j) {
      mi = G.multiply(tg, tinv[j]);
      if (m.contains(mi)) found = j;
    }
    if (found < 0) throw InputError("not a transversal");
    v = G.multiply(v, mi);
  }
  return v;
}

std::vector<f3::Row> transfer_kernel(const Subgroup& m) {
  const auto& G = m.group();
  const int d = G.d();
  const Subgroup md = derived_subgroup(m);
  const auto t = default_transversal(m);
  std::vector<f3::Row> ker;
  int total = 1;
  for (int k = 0; k < d; ++k) total *= 3;
  for (int x = 1; x < total; ++x) {
    Element a;
    f3::Row v;
    int y = x;
    for (int k = 0; k < d; ++k) {
      a.e[k] = static_cast<std::uint8_t>(y % 3);
      v.set(k, y % 3);
      y /= 3;
    }
    if (md.contains(transfer(m, a, t))) ker.push_back(v);
  }
  f3::rref(ker, d);
  return ker;
}

std::vector<SecondOrderEntry> second_order_pattern(GroupPtr g) { return *artin_pattern(g, true).alpha2; }

ArtinPattern artin_pattern(GroupPtr g0, bool second_order) {
  GroupPtr g = standard_form(g0);
  const int d = g->d();
  require_rank(d);
  check_elementary(Subgroup::whole(g));
  ArtinPattern p;
  p.d = d;
  const auto maxes = maximal_subgroups(g);
  const auto& nv = normal_vectors(d);
  if (second_order) p.alpha2.emplace();
  for (std::size_t j = 0; j < maxes.size(); ++j) {
    const auto ker = transfer_kernel(maxes[j]);
    p.kappa.push_back(ker.size() == 1 ? line_index(ker[0], d) : 0);
    bool meets = ker.size() > 1;
    if (ker.size() == 1) meets = f3::dot(nv[j], ker[0]) == 0;
    p.taussky.push_back(meets ? 'A' : 'B');
    p.alpha.push_back(abelian_invariants(maxes[j]));
    if (second_order) {
      SecondOrderEntry e;
      e.top = p.alpha.back();
      for (const auto& h : maximal_subgroups_of(maxes[j])) e.below.push_back(abelian_invariants(h));
      std::sort(e.below.begin(), e.below.end(), display_before);
      p.alpha2->push_back(e);
    }
  }
  return p;
}

std::vector<int> transfer_kernel_type(GroupPtr g) { return artin_pattern(g).kappa; }
std::vector<char> taussky_types(GroupPtr g) { return artin_pattern(g).taussky; }

bool is_hbc(const ArtinPattern& p) {
  std::vector<int> seen(p.kappa.size() + 1, 0);
  for (int k : p.kappa) {
    if (k == 0 || seen[k]) return false;
    seen[k] = 1;
  }
  return true;
}

bool kernels_allow_hbc(const ArtinPattern& p) {
  std::vector<int> seen(p.kappa.size() + 1, 0);
  for (int k : p.kappa) {
    if (k == 0) continue;
    if (seen[k]) return false;
    seen[k] = 1;
  }
  return true;
}

std::string RankDistribution::label() const {
  return "3^" + std::to_string(rank3) + ",2^" + std::to_string(rank2);
}

RankDistribution rank_distribution(const std::vector<Partition>& alpha) {
  RankDistribution r;
  for (const auto& a : alpha) {
    if (a.size() == 3) ++r.rank3;
    if (a.size() == 2) ++r.rank2;
  }
  if (r.rank3 + r.rank2 == 13) {
    if (r.rank3 == 1) r.scenario = 1;
    if (r.rank3 == 4) r.scenario = 2;
    if (r.rank3 == 7) r.scenario = 3;
  }
  return r;
}

int second_order_total(const std::vector<SecondOrderEntry>& a2) {
  int t = 0;
  for (const auto& e : a2) t += static_cast<int>(e.below.size());
  return t;
}

namespace {

struct Relabeling {
  std::vector<int> plane;  // old plane (0-based) -> new plane
  std::vector<int> line;   // old line (1-based, 0 kept) -> new line
};

Relabeling relabeling_of(const f3::Matrix& g, int d) {
  const auto& nv = normal_vectors(d);
  const f3::Matrix gi = f3::inverse(g);
  Relabeling r;
  r.line.assign(nv.size() + 1, 0);
  for (std::size_t k = 0; k < nv.size(); ++k) {
    r.plane.push_back(line_index(gi.apply_left(nv[k]), d) - 1);
    r.line[k + 1] = line_index(g.apply(nv[k]), d);
  }
  return r;
}

ArtinPattern apply(const ArtinPattern& p, const Relabeling& r) {
  ArtinPattern q = p;
  for (std::size_t j = 0; j < p.kappa.size(); ++j) {
    const int t = r.plane[j];
    q.kappa[t] = r.line[p.kappa[j]];
    q.alpha[t] = p.alpha[j];
    q.taussky[t] = p.taussky[j];
    if (p.alpha2) (*q.alpha2)[t] = (*p.alpha2)[j];
  }
  return q;
}

}  // namespace

ArtinPattern relabel(const ArtinPattern& p, const f3::Matrix& g) { return apply(p, relabeling_of(g, p.d)); }

std::vector<f3::Matrix> general_linear_elements(int d) {
  require_rank(d);
  static std::once_flag once;
  static std::vector<f3::Matrix> gl2, gl3;
  std::call_once(once, [] {
    for (int dim : {2, 3}) {
      int total = 1;
      for (int k = 0; k < dim * dim; ++k) total *= 3;
      auto& out = dim == 2 ? gl2 : gl3;
      for (int x = 0; x < total; ++x) {
        f3::Matrix m(dim, dim);
        int y = x;
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            m.set(i, j, y % 3);
            y /= 3;
          }
        if (f3::rank(m.r, dim) == dim) out.push_back(m);
      }
    }
  });
  return d == 2 ? gl2 : gl3;
}

ArtinPattern canonical_pattern(const ArtinPattern& p) {
  require_rank(p.d);
  static std::once_flag once;
  static std::vector<Relabeling> rel2, rel3;
  std::call_once(once, [] {
    for (const auto& g : general_linear_elements(2)) rel2.push_back(relabeling_of(g, 2));
    for (const auto& g : general_linear_elements(3)) rel3.push_back(relabeling_of(g, 3));
  });
  const auto& rels = p.d == 2 ? rel2 : rel3;
  // Dictionary codes for the values present; invariant under relabeling.
  std::vector<Partition> alphas(p.alpha.begin(), p.alpha.end());
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  std::vector<SecondOrderEntry> entries;
  if (p.alpha2) {
    entries = *p.alpha2;
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  }
  const std::size_t m = p.kappa.size();
  std::vector<int> acode(m), ecode(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    acode[j] = static_cast<int>(std::lower_bound(alphas.begin(), alphas.end(), p.alpha[j]) - alphas.begin());
    if (p.alpha2)
      ecode[j] = static_cast<int>(std::lower_bound(entries.begin(), entries.end(), (*p.alpha2)[j]) - entries.begin());
  }
  std::vector<int> best, key(3 * m);
  std::size_t best_index = 0;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const auto& rl = rels[r];
    for (std::size_t j = 0; j < m; ++j) {
      const int t = rl.plane[j];
      key[t] = rl.line[p.kappa[j]];
      key[m + t] = acode[j];
      key[2 * m + t] = ecode[j];
    }
    if (best.empty() || key < best) {
      best = key;
      best_index = r;
    }
  }
  return apply(p, rels[best_index]);
}

ShafarevichBounds shafarevich_bounds(int rho, int r, int theta) {
  if (rho < 0 || r < 0 || theta < 0 || theta > 1) throw InputError("invalid Shafarevich input");
  return {rho, rho + r + theta};
}

std::string format_kappa(const std::vector<int>& kappa) {
  std::string s = "(";
  for (std::size_t k = 0; k < kappa.size(); ++k) s += (k ? "," : "") + std::to_string(kappa[k]);
  return s + ")";
}

std::string format_alpha(const std::vector<Partition>& alpha) {
  std::string s;
  for (std::size_t k = 0; k < alpha.size(); ++k) s += (k ? " " : "") + partition_digits(alpha[k]);
  return s;
}

std::string format_alpha2(const std::vector<SecondOrderEntry>& a2) {
  std::vector<SecondOrderEntry> sorted = a2;
  std::sort(sorted.begin(), sorted.end(), entry_before);
  auto power = [](const std::string& body, int k) { return k == 1 ? body : body + "^" + std::to_string(k); };
  std::string out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    std::string body = "[(" + partition_shorthand(sorted[i].top) + ");";
    const auto& b = sorted[i].below;
    for (std::size_t x = 0; x < b.size();) {
      std::size_t y = x;
      while (y < b.size() && b[y] == b[x]) ++y;
      body += power("(" + partition_shorthand(b[x]) + ")", static_cast<int>(y - x));
      x = y;
    }
    out += body + "]^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Partition parse_partition(const std::string& s) {
  Partition p;
  for (std::size_t i = 0; i < s.size();) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InputError("bad partition '" + s + "'");
    const int part = s[i] - '0';
    ++i;
    int rep = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      if (i < s.size() && s[i] == '{') {
        const auto close = s.find('}', i);
        if (close == std::string::npos) throw InputError("bad partition '" + s + "'");
        rep = std::stoi(s.substr(i + 1, close - i - 1));
        i = close + 1;
      } else if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        rep = s[i] - '0';
        ++i;
      } else {
        throw InputError("bad partition '" + s + "'");
      }
    }
    for (int k = 0; k < rep; ++k) p.push_back(part);
  }
  std::sort(p.rbegin(), p.rend());
  return p;
}

std::vector<SecondOrderEntry> parse_alpha2(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') s += c;
  std::size_t i = 0;
  auto multiplicity = [&]() {
    if (i >= s.size() || s[i] != '^') return 1;
    ++i;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw InputError("missing multiplicity in '" + text + "'");
    const int k = std::stoi(s.substr(i, j - i));
    i = j;
    return k;
  };
  auto group = [&]() {
    if (s[i] != '(') throw InputError("expected '(' in '" + text + "'");
    const auto close = s.find(')', i);
    if (close == std::string::npos) throw InputError("unbalanced '(' in '" + text + "'");
    // Inside a partition the exponents are single digits.
    std::string inner = s.substr(i + 1, close - i - 1);
    i = close + 1;
    return parse_partition(inner);
  };
  std::vector<SecondOrderEntry> out;
  while (i < s.size()) {
    if (s[i] != '[') throw InputError("expected '[' in '" + text + "'");
    ++i;
    SecondOrderEntry e;
    e.top = group();
    if (s[i] != ';') throw InputError("expected ';' in '" + text + "'");
    ++i;
    while (i < s.size() && s[i] != ']') {
      const Partition p = group();
      const int k = multiplicity();
      for (int x = 0; x < k; ++x) e.below.push_back(p);
    }
    if (i >= s.size()) throw InputError("unbalanced '[' in '" + text + "'");
    ++i;
    std::sort(e.below.begin(), e.below.end(), display_before);
    const int k = multiplicity();
    for (int x = 0; x < k; ++x) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hbc
