#include <deque>
#include <unordered_set>

#include "hbc/pcover.hpp"

namespace hbc {

std::vector<Element> extend_images(const PcPresentation& g, const Images& img) {
  if (!g.labelled()) throw InputError("automorphisms need a labelled presentation");
  if (static_cast<int>(img.size()) != g.d()) throw std::logic_error("wrong number of generator images");
  std::vector<Element> all(g.n());
  for (int k = 0; k < g.n(); ++k) {
    if (k < g.d()) {
      all[k] = img[k];
      continue;
    }
    const auto& def = g.definitions()[k];
    all[k] = def.kind == Definition::Kind::Power ? g.pow(all[def.j], 3) : g.comm(all[def.j], all[def.i]);
  }
  return all;
}

Element apply_images(const PcPresentation& g, const std::vector<Element>& all, const Element& x) {
  Element r;
  for (std::size_t k = 0; k < all.size(); ++k)
    for (int e = 0; e < x.e[k]; ++e) r = g.multiply(r, all[k]);
  return r;
}

f3::Matrix induced_matrix(const PcPresentation& g, const Images& img) {
  const int d = g.d();
  f3::Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int r = 0; r < d; ++r) m.set(r, i, img[i].e[r]);
  return m;
}

bool is_automorphism(const PcPresentation& g, const Images& img) {
  if (f3::rank(induced_matrix(g, img).r, g.d()) != g.d()) return false;
  const auto all = extend_images(g, img);
  for (int i = 0; i < g.n(); ++i) {
    if (!(g.pow(all[i], 3) == apply_images(g, all, g.power(i)))) return false;
    for (int j = i + 1; j < g.n(); ++j)
      if (!(g.comm(all[j], all[i]) == apply_images(g, all, g.commutator(j, i)))) return false;
  }
  return true;
}

f3::Matrix multiplicator_action(const CoverData& cd, const Images& img) {
  const auto& G = *cd.group;
  const auto& C = *cd.cover;
  const int n = G.n();
  // Images of a_1..a_n in G*, with trivial multiplicator part on a_1..a_d.
  std::vector<Element> all(n);
  for (int k = 0; k < n; ++k) {
    if (k < G.d()) {
      all[k] = img[k];
      continue;
    }
    const auto& def = G.definitions()[k];
    all[k] = def.kind == Definition::Kind::Power ? C.pow(all[def.j], 3) : C.comm(all[def.j], all[def.i]);
  }
  f3::Matrix a(cd.mu, cd.mu);
  for (int p = 0; p < cd.mu; ++p) {
    const auto& r = cd.relations[cd.basis_relation[p]];
    const Element lhs = r.is_power() ? C.pow(all[r.j], 3) : C.comm(all[r.j], all[r.i]);
    const Element rhs = apply_images(C, all, r.is_power() ? G.power(r.j) : G.commutator(r.j, r.i));
    const Element t = C.multiply(C.inverse(rhs), lhs);
    for (int k = 0; k < n; ++k)
      if (t.e[k]) throw std::logic_error("multiplicator action left the multiplicator");
    for (int q = 0; q < cd.mu; ++q) a.set(q, p, t.e[n + q]);
  }
  return a;
}

std::vector<f3::Matrix> AutGroup::induced_generators() const {
  std::vector<f3::Matrix> out;
  for (const auto& img : gens) out.push_back(induced_matrix(*group, img));
  return out;
}

std::uint64_t gl_order(int d) {
  std::uint64_t q = 1, o = 1;
  for (int i = 0; i < d; ++i) q *= 3;
  std::uint64_t p = 1;
  for (int i = 0; i < d; ++i) {
    o *= q - p;
    p *= 3;
  }
  return o;
}

AutGroup general_linear(GroupPtr g) {
  const int d = g->d();
  if (g->n() != d || g->pclass() > 1) throw std::logic_error("general_linear expects an elementary abelian group");
  AutGroup a;
  a.group = g;
  a.order = gl_order(d);
  auto add = [&](const f3::Matrix& m) {
    Images img(d);
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < d; ++r) img[i].e[r] = static_cast<std::uint8_t>(m.get(r, i));
    a.gens.push_back(img);
  };
  if (d == 0) return a;
  f3::Matrix diag = f3::Matrix::identity(d);
  diag.set(0, 0, 2);
  add(diag);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) {
        f3::Matrix t = f3::Matrix::identity(d);
        t.set(i, j, 1);
        add(t);
      }
  return a;
}

namespace {

std::uint64_t encode(const f3::Matrix& m) {
  std::uint64_t k = 0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) k = k * 3 + m.get(i, j);
  return k;
}

}  // namespace

std::vector<f3::Matrix> induced_image(const AutGroup& a) {
  const int d = a.group->d();
  if (d > 5) throw InputError("induced image only supported for d <= 5");
  const auto gens = a.induced_generators();
  std::vector<f3::Matrix> elems{f3::Matrix::identity(d)};
  std::unordered_set<std::uint64_t> seen{encode(elems[0])};
  for (std::size_t q = 0; q < elems.size(); ++q)
    for (const auto& g : gens) {
      f3::Matrix x = g * elems[q];
      if (seen.insert(encode(x)).second) elems.push_back(std::move(x));
    }
  return elems;
}

bool has_sigma_automorphism(const AutGroup& a) {
  const int d = a.group->d();
  f3::Matrix minus = f3::Matrix::identity(d);
  for (int i = 0; i < d; ++i) minus.set(i, i, 2);
  const auto key = encode(minus);
  for (const auto& m : induced_image(a))
    if (encode(m) == key) return true;
  return false;
}

// ---------------------------------------------------------------------------

Perm perm_of(const PcPresentation& g, const Images& img) {
  const std::uint64_t N = g.order();
  if (N > 65536) throw InputError("permutation representation limited to |G| <= 3^10");
  const auto all = extend_images(g, img);
  std::vector<Element> val(N);
  Perm p(N);
  std::vector<std::uint64_t> pw(g.n() + 1, 1);
  for (int k = 1; k <= g.n(); ++k) pw[k] = pw[k - 1] * 3;
  int top = 0;
  for (std::uint64_t idx = 1; idx < N; ++idx) {
    while (top + 1 < g.n() && idx >= pw[top + 1]) ++top;
    const std::uint64_t prev = idx - pw[top];
    val[idx] = g.multiply(val[prev], all[top]);
    p[idx] = static_cast<std::uint16_t>(g.index(val[idx]));
  }
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
  return c;
}

Perm invert(const Perm& a) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[a[x]] = static_cast<std::uint16_t>(x);
  return c;
}

Bsgs::Bsgs(std::size_t degree, std::vector<std::uint32_t> base)
    : degree_(degree), base_(std::move(base)), levels_(base_.size()) {
  for (std::size_t l = 0; l < levels_.size(); ++l) rebuild(static_cast<int>(l));
}

void Bsgs::rebuild(int level) {
  Level& L = levels_[level];
  L.gens.clear();
  for (std::size_t g = 0; g < gens_.size(); ++g)
    if (gen_level_[g] >= level) L.gens.push_back(static_cast<int>(g));
  L.via.assign(degree_, -2);
  L.points.clear();
  const std::uint32_t b = base_[level];
  L.via[b] = -1;
  L.points.push_back(b);
  for (std::size_t q = 0; q < L.points.size(); ++q) {
    const std::uint32_t x = L.points[q];
    for (int g : L.gens) {
      const std::uint32_t y = gens_[g][x];
      if (L.via[y] != -2) continue;
      L.via[y] = g;
      L.points.push_back(y);
    }
  }
}

std::pair<int, Perm> Bsgs::sift(Perm p) const {
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const Level& L = levels_[l];
    std::uint32_t b = p[base_[l]];
    if (L.via[b] == -2) return {static_cast<int>(l), p};
    while (L.via[b] >= 0) {
      p = compose(gens_inv_[L.via[b]], p);
      b = p[base_[l]];
    }
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] != x) throw std::logic_error("base does not determine the permutation");
  return {static_cast<int>(levels_.size()), p};
}

bool Bsgs::add(const Perm& p) {
  auto [level, r] = sift(p);
  if (level == static_cast<int>(levels_.size())) return false;
  gens_.push_back(r);
  gens_inv_.push_back(invert(r));
  gen_level_.push_back(level);
  for (int l = 0; l <= level; ++l) rebuild(l);
  return true;
}

bool Bsgs::contains(const Perm& p) const { return sift(p).first == static_cast<int>(levels_.size()); }

std::uint64_t Bsgs::order() const {
  std::uint64_t o = 1;
  for (const auto& L : levels_) o *= L.points.size();
  return o;
}

}  // namespace hbc
