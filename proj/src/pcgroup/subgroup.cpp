#include <algorithm>

#include "hbc/pcgroup.hpp"

namespace hbc {

Subgroup::Subgroup(GroupPtr g) : g_(std::move(g)) { slot_.fill(-1); }

Subgroup Subgroup::generated(GroupPtr g, const std::vector<Element>& gens) {
  Subgroup s(std::move(g));
  s.add(gens);
  return s;
}

Subgroup Subgroup::whole(GroupPtr g) {
  Subgroup s(g);
  std::vector<Element> gens;
  for (int k = 0; k < g->n(); ++k) gens.push_back(Element::gen(k));
  s.add(gens);
  return s;
}

std::vector<int> Subgroup::leading_indices() const {
  std::vector<int> out;
  for (const auto& x : igs_) out.push_back(x.lead());
  return out;
}

Element Subgroup::sift(Element x) const {
  const auto& G = *g_;
  for (int k = 0; k < G.n(); ++k) {
    if (!x.e[k]) continue;
    const int s = slot_[k];
    if (s < 0) return x;
    const int e = 3 - x.e[k];
    for (int r = 0; r < e; ++r) x = G.multiply(x, igs_[s]);
  }
  return x;
}

bool Subgroup::add(const std::vector<Element>& gens) {
  const bool grew = insert_closed(gens);
  if (grew) reduce();
  return grew;
}

bool Subgroup::insert_closed(std::vector<Element> queue) {
  const auto& G = *g_;
  bool grew = false;
  while (!queue.empty()) {
    Element x = sift(queue.back());
    queue.pop_back();
    if (x.is_identity()) continue;
    const int k = x.lead();
    if (x.e[k] == 2) x = G.pow(x, 2);
    for (const auto& y : igs_) queue.push_back(G.comm(x, y));
    queue.push_back(G.pow(x, 3));
    slot_[k] = static_cast<int>(igs_.size());
    igs_.push_back(x);
    grew = true;
  }
  return grew;
}

void Subgroup::reduce() {
  const auto& G = *g_;
  std::sort(igs_.begin(), igs_.end(),
            [](const Element& a, const Element& b) { return a.lead() < b.lead(); });
  slot_.fill(-1);
  for (std::size_t s = 0; s < igs_.size(); ++s) slot_[igs_[s].lead()] = static_cast<int>(s);
  for (std::size_t a = igs_.size(); a-- > 0;) {
    for (std::size_t b = a + 1; b < igs_.size(); ++b) {
      const int l = igs_[b].lead();
      const int e = igs_[a].e[l];
      if (!e) continue;
      for (int r = 0; r < 3 - e; ++r) igs_[a] = G.multiply(igs_[a], igs_[b]);
    }
  }
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  for (const auto& x : igs_)
    if (!o.contains(x)) return false;
  return true;
}

bool Subgroup::operator==(const Subgroup& o) const { return igs_ == o.igs_; }

std::vector<Element> Subgroup::elements() const {
  std::vector<Element> out{Element{}};
  const auto& G = *g_;
  for (auto it = igs_.rbegin(); it != igs_.rend(); ++it) {
    const std::size_t m = out.size();
    Element p = *it;
    for (int e = 1; e < 3; ++e) {
      for (std::size_t t = 0; t < m; ++t) out.push_back(G.multiply(p, out[t]));
      p = G.multiply(p, *it);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup normal_closure(const Subgroup& h, const Subgroup& in) {
  Subgroup s = h;
  const auto& G = h.group();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& y : in.igs()) {
      const auto cur = s.igs();
      for (const auto& x : cur) {
        Element c = G.conj(x, y);
        if (!s.contains(c)) {
          s.add({c});
          changed = true;
        }
      }
    }
  }
  return s;
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  const auto& G = a.group();
  std::vector<Element> gens;
  for (const auto& x : a.igs())
    for (const auto& y : b.igs()) gens.push_back(G.comm(x, y));
  Subgroup s = Subgroup::generated(a.parent(), gens);
  Subgroup ab = a;
  ab.add(b.igs());
  return normal_closure(s, ab);
}

Subgroup derived_subgroup(const Subgroup& h) { return commutator_subgroup(h, h); }

Subgroup frattini_subgroup(const Subgroup& h) {
  Subgroup s = derived_subgroup(h);
  std::vector<Element> cubes;
  for (const auto& x : h.igs()) cubes.push_back(h.group().pow(x, 3));
  s.add(cubes);
  return s;
}

Partition abelian_invariants(const Subgroup& h) {
  const Subgroup d = derived_subgroup(h);
  const auto& G = h.group();
  std::vector<int> ell;
  long long q = 1;
  while (true) {
    Subgroup s = d;
    std::vector<Element> pw;
    for (const auto& x : h.igs()) pw.push_back(G.pow(x, q));
    s.add(pw);
    ell.push_back(s.log_order() - d.log_order());
    if (ell.back() == 0) break;
    q *= 3;
  }
  // ell[k] - ell[k+1] = number of parts >= k+1.
  std::vector<int> ge;
  for (std::size_t k = 0; k + 1 < ell.size(); ++k) ge.push_back(ell[k] - ell[k + 1]);
  Partition p;
  const int parts = ge.empty() ? 0 : ge[0];
  for (int i = 1; i <= parts; ++i) {
    int len = 0;
    for (int c : ge)
      if (c >= i) ++len;
    p.push_back(len);
  }
  return p;
}

std::string partition_digits(const Partition& p) {
  std::string s;
  for (int v : p) s += std::to_string(v);
  return s;
}

std::string partition_shorthand(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    s += std::to_string(p[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s.empty() ? "0" : s;
}

std::vector<Subgroup> series(GroupPtr g, SeriesKind kind) {
  std::vector<Subgroup> out{Subgroup::whole(g)};
  const Subgroup whole = out.front();
  const auto& G = *g;
  while (out.back().log_order() > 0) {
    const Subgroup& cur = out.back();
    Subgroup next(g);
    switch (kind) {
      case SeriesKind::LowerCentral:
        next = commutator_subgroup(cur, whole);
        break;
      case SeriesKind::LowerExponentCentral: {
        next = commutator_subgroup(cur, whole);
        std::vector<Element> cubes;
        for (const auto& x : cur.igs()) cubes.push_back(G.pow(x, 3));
        next.add(cubes);
        break;
      }
      case SeriesKind::Derived:
        next = derived_subgroup(cur);
        break;
    }
    if (next.log_order() == cur.log_order()) break;  // not nilpotent / not soluble (impossible here)
    out.push_back(next);
  }
  return out;
}

int nilpotency_class(GroupPtr g) {
  return static_cast<int>(series(std::move(g), SeriesKind::LowerCentral).size()) - 1;
}

int derived_length(GroupPtr g) {
  return static_cast<int>(series(std::move(g), SeriesKind::Derived).size()) - 1;
}

int generator_rank(GroupPtr g) {
  const Subgroup w = Subgroup::whole(g);
  return w.log_order() - frattini_subgroup(w).log_order();
}

}  // namespace hbc
