#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

using hbc::Element;
using hbc::PcPresentation;

ConcreteGroup matrices_mod(int dim, int mod) {
  ConcreteGroup g;
  g.id.assign(dim * dim, 0);
  for (int i = 0; i < dim; ++i) g.id[i * dim + i] = 1;
  g.mul = [dim, mod](const Vec& a, const Vec& b) {
    Vec c(dim * dim, 0);
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k)
        for (int j = 0; j < dim; ++j) c[i * dim + j] = (c[i * dim + j] + a[i * dim + k] * b[k * dim + j]) % mod;
    return c;
  };
  return g;
}

ConcreteGroup permutations(int degree) {
  ConcreteGroup g;
  g.id.resize(degree);
  for (int i = 0; i < degree; ++i) g.id[i] = i;
  // x*y: apply x, then y.
  g.mul = [degree](const Vec& x, const Vec& y) {
    Vec z(degree);
    for (int i = 0; i < degree; ++i) z[i] = y[x[i]];
    return z;
  };
  return g;
}

ConcreteGroup additive_mod(std::vector<int> moduli) {
  ConcreteGroup g;
  g.id.assign(moduli.size(), 0);
  g.mul = [moduli](const Vec& a, const Vec& b) {
    Vec c(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = (a[i] + b[i]) % moduli[i];
    return c;
  };
  return g;
}

Vec mat(int dim, std::vector<int> entries) {
  if (static_cast<int>(entries.size()) != dim * dim) throw std::logic_error("mat size");
  return entries;
}

Vec perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Vec p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  for (const auto& c : cycles)
    for (std::size_t t = 0; t < c.size(); ++t) p[c[t] - 1] = c[(t + 1) % c.size()] - 1;
  return p;
}

Vec power(const ConcreteGroup& g, const Vec& x, int k) {
  Vec r = g.id;
  for (int i = 0; i < k; ++i) r = g.mul(r, x);
  return r;
}

Vec inverse(const ConcreteGroup& g, const Vec& x) {
  Vec p = x, prev = g.id;
  while (p != g.id) {
    prev = p;
    p = g.mul(p, x);
  }
  return prev;  // x^(ord-1)
}

Vec commutator(const ConcreteGroup& g, const Vec& x, const Vec& y) {
  return g.mul(g.mul(inverse(g, x), inverse(g, y)), g.mul(x, y));
}

Vec evaluate(const ConcreteGroup& g, const std::vector<Vec>& seq, const Element& x) {
  Vec r = g.id;
  for (std::size_t k = 0; k < seq.size(); ++k)
    for (int e = 0; e < x.e[k]; ++e) r = g.mul(r, seq[k]);
  return r;
}

Realization realize(const ConcreteGroup& g, const std::vector<Vec>& seq, std::vector<int> weights) {
  const int n = static_cast<int>(seq.size());
  std::map<Vec, Element> lookup;
  std::uint64_t total = 1;
  for (int k = 0; k < n; ++k) total *= 3;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Element x;
    std::uint64_t t = idx;
    for (int k = 0; k < n; ++k) {
      x.e[k] = static_cast<std::uint8_t>(t % 3);
      t /= 3;
    }
    if (!lookup.emplace(evaluate(g, seq, x), x).second)
      throw std::logic_error("sequence is not polycyclic: repeated normal word value");
  }
  auto find = [&](const Vec& v) {
    auto it = lookup.find(v);
    if (it == lookup.end()) throw std::logic_error("relation value outside the normal words");
    return it->second;
  };
  std::vector<Element> pw(n), cm(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    pw[i] = find(power(g, seq[i], 3));
    for (int j = i + 1; j < n; ++j) cm[static_cast<std::size_t>(j) * n + i] = find(commutator(g, seq[j], seq[i]));
  }
  return Realization{PcPresentation(std::move(weights), pw, cm), seq, std::move(lookup)};
}

Table table_of(const PcPresentation& g) {
  Table t;
  t.order = static_cast<int>(g.order());
  t.mul.resize(static_cast<std::size_t>(t.order) * t.order);
  for (int a = 0; a < t.order; ++a) {
    const Element x = g.from_index(a);
    for (int b = 0; b < t.order; ++b) t.mul[a * t.order + b] = static_cast<int>(g.index(g.multiply(x, g.from_index(b))));
  }
  t.identity = 0;
  return t;
}

Table table_of(const ConcreteGroup& g, const std::vector<Vec>& elements, std::map<Vec, int>& index) {
  Table t;
  t.order = static_cast<int>(elements.size());
  index.clear();
  for (int i = 0; i < t.order; ++i) index[elements[i]] = i;
  t.mul.resize(static_cast<std::size_t>(t.order) * t.order);
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b) t.mul[a * t.order + b] = index.at(g.mul(elements[a], elements[b]));
  t.identity = index.at(g.id);
  return t;
}

bool associative(const Table& t) {
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b) {
      const int ab = t.at(a, b);
      for (int c = 0; c < t.order; ++c)
        if (t.at(ab, c) != t.at(a, t.at(b, c))) return false;
    }
  return true;
}

std::set<int> generated(const Table& t, const std::set<int>& gens) {
  std::set<int> s{t.identity};
  std::vector<int> frontier{t.identity};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int g : gens) {
        const int y = t.at(x, g);
        if (s.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return s;
}

namespace {
std::vector<int> inverses(const Table& t) {
  std::vector<int> inv(t.order);
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b)
      if (t.at(a, b) == t.identity) inv[a] = b;
  return inv;
}
int tcomm(const Table& t, const std::vector<int>& inv, int a, int b) {
  return t.at(t.at(inv[a], inv[b]), t.at(a, b));
}
}  // namespace

int table_class(const Table& t) {
  const auto inv = inverses(t);
  std::set<int> all;
  for (int a = 0; a < t.order; ++a) all.insert(a);
  std::set<int> cur = all;
  int c = 0;
  while (cur.size() > 1) {
    std::set<int> gens;
    for (int x : cur)
      for (int g = 0; g < t.order; ++g) gens.insert(tcomm(t, inv, x, g));
    cur = generated(t, gens);
    ++c;
  }
  return c;
}

int table_derived_length(const Table& t) {
  const auto inv = inverses(t);
  std::set<int> cur;
  for (int a = 0; a < t.order; ++a) cur.insert(a);
  int l = 0;
  while (cur.size() > 1) {
    std::set<int> gens;
    for (int x : cur)
      for (int y : cur) gens.insert(tcomm(t, inv, x, y));
    cur = generated(t, gens);
    ++l;
  }
  return l;
}

namespace {

// Images of all pc generators of `a` determined by images of its defining
// generators inside the group with table `tb`; returns false if a relation fails.
bool extend_map(const PcPresentation& a, const Table& tb, const std::vector<int>& inv,
                const PcPresentation& b, std::vector<int>& img) {
  const int n = a.n();
  auto pw = [&](int x, int k) {
    int r = tb.identity;
    for (int i = 0; i < k; ++i) r = tb.at(r, x);
    return r;
  };
  for (int k = a.d(); k < n; ++k) {
    const auto& def = a.definitions()[k];
    if (def.kind == hbc::Definition::Kind::Power)
      img[k] = pw(img[def.j], 3);
    else
      img[k] = tcomm(tb, inv, img[def.j], img[def.i]);
  }
  auto eval = [&](const Element& x) {
    int r = tb.identity;
    for (int k = 0; k < n; ++k) r = tb.at(r, pw(img[k], x.e[k]));
    return r;
  };
  (void)b;
  for (int i = 0; i < n; ++i) {
    if (pw(img[i], 3) != eval(a.power(i))) return false;
    for (int j = i + 1; j < n; ++j)
      if (tcomm(tb, inv, img[j], img[i]) != eval(a.commutator(j, i))) return false;
  }
  return true;
}

std::uint64_t count_homs(const PcPresentation& a, const PcPresentation& b, bool stop_at_first) {
  if (!a.labelled()) throw std::logic_error("brute force needs a labelled presentation");
  const Table tb = table_of(b);
  const auto inv = inverses(tb);
  const int d = a.d();
  std::vector<int> img(a.n());
  std::vector<int> choice(d, 0);
  std::uint64_t count = 0;
  const std::uint64_t N = tb.order;
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= N;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    std::set<int> gens;
    for (int i = 0; i < d; ++i) {
      img[i] = static_cast<int>(t % N);
      t /= N;
      gens.insert(img[i]);
    }
    if (!extend_map(a, tb, inv, b, img)) continue;
    if (static_cast<int>(generated(tb, gens).size()) != tb.order) continue;
    ++count;
    if (stop_at_first) return count;
  }
  return count;
}

}  // namespace

std::uint64_t brute_force_aut_order(const PcPresentation& g) { return count_homs(g, g, false); }

bool brute_force_isomorphic(const PcPresentation& a, const PcPresentation& b) {
  if (a.n() != b.n()) return false;
  return count_homs(a, b, true) > 0;
}

Realization heisenberg27() {
  auto G = matrices_mod(3, 3);
  Vec x = mat(3, {1, 1, 0, 0, 1, 0, 0, 0, 1});
  Vec y = mat(3, {1, 0, 0, 0, 1, 1, 0, 0, 1});
  return realize(G, {x, y, commutator(G, y, x)}, {1, 1, 2});
}

Realization extraspecial27_exp9() {
  auto G = matrices_mod(2, 9);
  Vec x = mat(2, {1, 1, 0, 1});
  Vec y = mat(2, {4, 0, 0, 1});
  return realize(G, {x, y, power(G, x, 3)}, {1, 1, 2});
}

Realization cyclic9() { return realize(additive_mod({9}), {{1}, {3}}, {1, 2}); }

Realization wreath81() {
  auto G = permutations(9);
  Vec t = perm_from_cycles(9, {{1, 4, 7}, {2, 5, 8}, {3, 6, 9}});
  Vec b = perm_from_cycles(9, {{1, 2, 3}});
  Vec c = commutator(G, b, t);
  Vec e = commutator(G, c, t);
  return realize(G, {t, b, c, e}, {1, 1, 2, 3});
}

Realization wreath81_times_c3() {
  auto G = permutations(12);
  Vec t = perm_from_cycles(12, {{1, 4, 7}, {2, 5, 8}, {3, 6, 9}});
  Vec b = perm_from_cycles(12, {{1, 2, 3}});
  Vec f = perm_from_cycles(12, {{10, 11, 12}});
  Vec c = commutator(G, b, t);
  Vec e = commutator(G, c, t);
  return realize(G, {t, b, f, c, e}, {1, 1, 1, 2, 3});
}

Realization unitriangular4() {
  auto G = matrices_mod(4, 3);
  auto E = [](int i, int j) {
    Vec m(16, 0);
    for (int k = 0; k < 4; ++k) m[k * 4 + k] = 1;
    m[i * 4 + j] = 1;
    return m;
  };
  Vec x1 = E(0, 1), x2 = E(1, 2), x3 = E(2, 3);
  Vec x4 = commutator(G, x2, x1), x5 = commutator(G, x3, x2);
  Vec x6 = commutator(G, x5, x1);
  return realize(G, {x1, x2, x3, x4, x5, x6}, {1, 1, 1, 2, 2, 3});
}

Realization abelian_9_3_3() {
  return realize(additive_mod({9, 3, 3}), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {3, 0, 0}}, {1, 1, 1, 2});
}

}  // namespace oracle
