#include <random>
#include <unordered_map>

#include "hbc/pcover.hpp"

namespace hbc {

namespace {

// Automorphism of G as a permutation of its elements together with the
// row actions (B and B^-1) on annihilators of multiplicator subgroups.
struct Elt {
  Perm p;
  f3::Matrix b, bi;
};

Elt mul(const Elt& x, const Elt& y) { return {compose(x.p, y.p), y.b * x.b, x.bi * y.bi}; }
Elt inv(const Elt& x) { return {invert(x.p), x.bi, x.b}; }

// Product replacement with an accumulator.
class RandomElements {
 public:
  RandomElements(const std::vector<Elt>& gens, std::uint64_t seed) : rng_(seed) {
    for (std::size_t k = 0; k < std::max<std::size_t>(10, gens.size()); ++k) slots_.push_back(gens[k % gens.size()]);
    acc_ = gens[0];
    for (int t = 0; t < 60; ++t) next();
  }
  const Elt& next() {
    std::uniform_int_distribution<std::size_t> pick(0, slots_.size() - 1);
    const std::size_t i = pick(rng_);
    std::size_t j = pick(rng_);
    while (j == i) j = pick(rng_);
    slots_[i] = (rng_() & 1) ? mul(slots_[i], slots_[j]) : mul(slots_[i], inv(slots_[j]));
    acc_ = mul(acc_, slots_[i]);
    return acc_;
  }

 private:
  std::mt19937_64 rng_;
  std::vector<Elt> slots_;
  Elt acc_;
};

std::vector<f3::Row> times(const std::vector<f3::Row>& rows, const f3::Matrix& m) {
  std::vector<f3::Row> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = m.apply_left(rows[i]);
  return out;
}

// Stabilizer of the allowable subgroup with the given annihilator, lifted to
// automorphisms of `child` (which must be G*/U with the generators of G first).
AutGroup lift_stabilizer(const ParentContext& pc, const std::vector<f3::Row>& ann, GroupPtr child,
                         const AutOptions& opt) {
  const auto& G = *pc.cover.group;
  const int d = G.d(), n = G.n();
  const int s = static_cast<int>(ann.size());
  const AllowableSpace space(pc.cover, s);
  const auto adapted = times(ann, space.from_adapted());
  const std::uint64_t start = space.rank(adapted);

  std::vector<f3::Matrix> b;
  for (const auto& a : pc.actions) b.push_back(space.row_action(a));

  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, int>> parent;
  parent.emplace(start, std::make_pair(start, -1));
  std::vector<std::uint64_t> queue{start};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto rows = space.unrank(queue[q]);
    for (std::size_t g = 0; g < b.size(); ++g) {
      const std::uint64_t y = space.rank(times(rows, b[g]));
      if (parent.emplace(y, std::make_pair(queue[q], static_cast<int>(g))).second) {
        queue.push_back(y);
        if (queue.size() > opt.max_orbit) throw BudgetExceeded("orbit of allowable subgroup too large");
      }
    }
  }
  const std::uint64_t orbit = queue.size();
  if (pc.aut.order % orbit) throw std::logic_error("orbit length does not divide |Aut|");
  const std::uint64_t target = pc.aut.order / orbit;

  std::vector<Images> stab;
  if (orbit == 1) {
    stab = pc.aut.gens;
  } else {
    std::vector<std::uint32_t> base;
    for (int i = 0; i < d; ++i) base.push_back(static_cast<std::uint32_t>(G.index(Element::gen(i))));
    Bsgs bs(G.order(), base);
    std::vector<Elt> gens;
    for (std::size_t g = 0; g < b.size(); ++g) gens.push_back({pc.perms[g], b[g], f3::inverse(b[g])});
    RandomElements re(gens, opt.seed ^ start);
    int fails = 0;
    while (bs.order() < target) {
      const Elt& r = re.next();
      std::uint64_t x = space.rank(times(adapted, r.b));
      Perm t(G.order());
      for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<std::uint16_t>(k);
      while (x != start) {
        const auto& [par, g] = parent.at(x);
        t = compose(t, pc.perms[g]);
        x = par;
      }
      if (bs.add(compose(invert(t), r.p)))
        fails = 0;
      else if (++fails > 5000)
        throw std::logic_error("stabilizer computation did not reach the expected order");
    }
    if (bs.order() != target) throw std::logic_error("stabilizer larger than expected");
    for (const auto& q : bs.strong_generators()) {
      Images img(d);
      for (int i = 0; i < d; ++i) img[i] = G.from_index(q[G.index(Element::gen(i))]);
      stab.push_back(img);
    }
  }

  AutGroup out;
  out.group = child;
  out.gens = stab;
  const int layer = child->n() - n;
  std::uint64_t central = 1;
  for (int i = 0; i < d; ++i)
    for (int r = 0; r < layer; ++r) {
      Images img(d);
      for (int k = 0; k < d; ++k) img[k] = Element::gen(k);
      img[i].e[n + r] = 1;
      out.gens.push_back(img);
      central *= 3;
    }
  out.order = target * central;
  return out;
}

}  // namespace

ParentContext make_parent_context(const AutGroup& aut) {
  ParentContext pc;
  pc.cover = p_cover(aut.group);
  if (pc.cover.group != aut.group) throw std::logic_error("automorphism group of a non-standard presentation");
  pc.aut = aut;
  for (const auto& img : aut.gens) {
    pc.perms.push_back(perm_of(*aut.group, img));
    pc.actions.push_back(multiplicator_action(pc.cover, img));
  }
  pc.derived = pc.cover.derived_part();
  return pc;
}

PcPresentation quotient_of_cover(const CoverData& cd, const std::vector<f3::Row>& ann) {
  const auto& G = *cd.group;
  const int n = G.n(), c = G.pclass(), s = static_cast<int>(ann.size());
  auto image = [&](const f3::Row& tail) {
    f3::Row v;
    for (int q = 0; q < s; ++q) v.set(q, f3::dot(ann[q], tail));
    return v;
  };
  // Candidate defining relations in the order used when reading definitions.
  std::vector<const CoverRelation*> cand;
  for (const auto& r : cd.relations)
    if (!r.definition && r.weight == c + 1 && !r.is_power() && G.weight(r.j) == c && G.weight(r.i) == 1)
      cand.push_back(&r);
  for (const auto& r : cd.relations)
    if (!r.definition && r.weight == c + 1 && r.is_power()) cand.push_back(&r);
  for (const auto& r : cd.relations)
    if (!r.definition && r.weight == c + 1 && !r.is_power() && !(G.weight(r.j) == c && G.weight(r.i) == 1))
      cand.push_back(&r);
  std::vector<f3::Row> echelon, chosen;
  for (const auto* r : cand) {
    if (static_cast<int>(chosen.size()) == s) break;
    const f3::Row v = image(r->tail);
    std::vector<f3::Row> trial = echelon;
    trial.push_back(v);
    if (static_cast<int>(f3::rref(trial, s).size()) == static_cast<int>(echelon.size())) continue;
    echelon = trial;
    chosen.push_back(v);
  }
  if (static_cast<int>(chosen.size()) != s) throw std::logic_error("subgroup does not supplement the nucleus");
  f3::Matrix t(s, s);
  for (int a = 0; a < s; ++a)
    for (int q = 0; q < s; ++q) t.set(q, a, chosen[a].get(q));
  const f3::Matrix tinv = f3::inverse(t);

  const int N = n + s;
  std::vector<int> w = G.weights();
  w.resize(N, c + 1);
  std::vector<Element> pw(N), cm(static_cast<std::size_t>(N) * N);
  for (const auto& r : cd.relations) {
    Element x = r.is_power() ? G.power(r.j) : G.commutator(r.j, r.i);
    const f3::Row y = tinv.apply(image(r.tail));
    for (int q = 0; q < s; ++q) x.e[n + q] = static_cast<std::uint8_t>(y.get(q));
    if (r.is_power())
      pw[r.j] = x;
    else
      cm[static_cast<std::size_t>(r.j) * N + r.i] = x;
  }
  return PcPresentation(w, pw, cm);
}

bool keeps_elementary_abelianization(const ParentContext& pc, const std::vector<f3::Row>& ann) {
  std::vector<f3::Row> restricted(ann.size());
  for (std::size_t q = 0; q < ann.size(); ++q)
    for (std::size_t k = 0; k < pc.derived.size(); ++k) restricted[q].set(static_cast<int>(k), f3::dot(ann[q], pc.derived[k]));
  return f3::rank(restricted, static_cast<int>(pc.derived.size())) == static_cast<int>(ann.size());
}

std::vector<Descendant> immediate_descendants(const ParentContext& pc, int step, const AutOptions& opt) {
  std::vector<Descendant> out;
  if (step < 1 || step > pc.cover.nu) return out;
  const AllowableSpace space(pc.cover, step);
  std::vector<f3::Matrix> b;
  for (const auto& a : pc.actions) b.push_back(space.row_action(a));
  const auto orbits = allowable_orbits(space, b, opt.max_orbit);
  int k = 0;
  for (const auto& o : orbits) {
    Descendant dsc;
    dsc.step = step;
    dsc.orbit_index = ++k;
    dsc.orbit_size = o.size;
    dsc.annihilator = space.original_annihilator(o.rank);
    dsc.group = std::make_shared<const PcPresentation>(quotient_of_cover(pc.cover, dsc.annihilator));
    dsc.elementary_abelianization = keeps_elementary_abelianization(pc, dsc.annihilator);
    out.push_back(std::move(dsc));
  }
  return out;
}

AutGroup descendant_aut(const ParentContext& pc, const Descendant& child, const AutOptions& opt) {
  return lift_stabilizer(pc, child.annihilator, child.group, opt);
}

AutGroup aut_group(GroupPtr g0, const AutOptions& opt) {
  GroupPtr g = standard_form(g0);
  const auto& G = *g;
  const int c = G.pclass();
  if (G.n() == 0) {
    AutGroup a;
    a.group = g;
    a.order = 1;
    return a;
  }
  AutGroup a = general_linear(c == 1 ? g : std::make_shared<const PcPresentation>(G.truncate(1)));
  for (int k = 1; k < c; ++k) {
    const ParentContext pc = make_parent_context(a);
    const auto& Q = *a.group;
    GroupPtr R = k + 1 == c ? g : std::make_shared<const PcPresentation>(G.truncate(k + 1));
    // Images in R of the generators of Q under the map fixing a_1..a_d.
    std::vector<Element> psi(Q.n());
    for (int m = 0; m < Q.n(); ++m) {
      if (m < Q.d()) {
        psi[m] = Element::gen(m);
        continue;
      }
      const auto& def = Q.definitions()[m];
      psi[m] = def.kind == Definition::Kind::Power ? R->pow(psi[def.j], 3) : R->comm(psi[def.j], psi[def.i]);
    }
    const int s = R->n() - Q.n();
    std::vector<f3::Row> ann(s);
    for (int p = 0; p < pc.cover.mu; ++p) {
      const auto& r = pc.cover.relations[pc.cover.basis_relation[p]];
      const Element lhs = r.is_power() ? R->pow(psi[r.j], 3) : R->comm(psi[r.j], psi[r.i]);
      const Element rhs = apply_images(*R, psi, r.is_power() ? Q.power(r.j) : Q.commutator(r.j, r.i));
      const Element t = R->multiply(R->inverse(rhs), lhs);
      for (int m = 0; m < Q.n(); ++m)
        if (t.e[m]) throw std::logic_error("layer map leaves the last layer");
      for (int q = 0; q < s; ++q) ann[q].set(p, t.e[Q.n() + q]);
    }
    a = lift_stabilizer(pc, ann, R, opt);
  }
  a.group = g;
  return a;
}

}  // namespace hbc
