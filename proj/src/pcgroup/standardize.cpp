#include <map>

#include "hbc/f3.hpp"
#include "hbc/pcgroup.hpp"

namespace hbc {

namespace {

// Coordinates on the layer P_{w-1}/P_w: an induced sequence of P_{w-1}
// whose members at the leading positions of P_w are those of P_w itself.
struct LayerCoords {
  std::array<int, kMaxGens> slot{};
  std::vector<Element> elems;
  std::vector<int> coord;  // coordinate index of each element, -1 for P_w members
  int dim = 0;

  LayerCoords(const Subgroup& upper, const Subgroup& lower) {
    const auto& G = upper.group();
    slot.fill(-1);
    for (const auto& t : lower.igs()) {
      slot[t.lead()] = static_cast<int>(elems.size());
      elems.push_back(t);
      coord.push_back(-1);
    }
    for (const auto& s0 : upper.igs()) {
      if (slot[s0.lead()] >= 0) continue;
      // Clear the P_w leading positions; they all lie beyond s0's lead.
      Element s = s0;
      for (int k = s.lead() + 1; k < G.n(); ++k) {
        const int p = slot[k];
        if (!s.e[k] || p < 0 || coord[p] >= 0) continue;
        const int e = 3 - s.e[k];
        for (int r = 0; r < e; ++r) s = G.multiply(s, elems[p]);
      }
      slot[s.lead()] = static_cast<int>(elems.size());
      elems.push_back(s);
      coord.push_back(dim++);
    }
  }

  f3::Row operator()(Element x, const PcPresentation& G) const {
    f3::Row v;
    for (int k = 0; k < G.n(); ++k) {
      if (!x.e[k]) continue;
      const int p = slot[k];
      if (p < 0) throw std::logic_error("element outside layer subgroup");
      if (coord[p] >= 0) v.set(coord[p], x.e[k]);
      const int e = 3 - x.e[k];
      for (int r = 0; r < e; ++r) x = G.multiply(x, elems[p]);
    }
    return v;
  }
};

}  // namespace

PcPresentation standardize(const PcPresentation& g0) {
  auto G = std::make_shared<const PcPresentation>(g0);
  const auto P = series(G, SeriesKind::LowerExponentCentral);
  const int c = static_cast<int>(P.size()) - 1;
  if (P.back().log_order() != 0) throw InputError("group is not a finite 3-group");

  std::vector<LayerCoords> layers;
  for (int w = 1; w <= c; ++w) layers.emplace_back(P[w - 1], P[w]);

  struct NewGen {
    Element value;
    int weight;
    Definition def;
  };
  std::vector<NewGen> gens;
  std::vector<std::vector<int>> by_weight(c + 1);
  std::vector<f3::Matrix> basis_inv(c + 1);

  for (int w = 1; w <= c; ++w) {
    const auto& L = layers[w - 1];
    std::vector<std::pair<Element, Definition>> cand;
    if (w == 1) {
      for (int k = 0; k < G->n(); ++k) cand.push_back({Element::gen(k), Definition{}});
    } else {
      for (int j : by_weight[w - 1])
        for (int i : by_weight[1])
          if (i < j)
            cand.push_back({G->comm(gens[j].value, gens[i].value),
                            Definition{Definition::Kind::Commutator, j, i}});
      for (int j : by_weight[w - 1])
        cand.push_back({G->pow(gens[j].value, 3), Definition{Definition::Kind::Power, j, -1}});
    }
    std::vector<f3::Row> echelon, cols;
    std::vector<int> piv;
    for (auto& [x, def] : cand) {
      if (static_cast<int>(cols.size()) == L.dim) break;
      const f3::Row v = L(x, *G);
      std::vector<f3::Row> trial = echelon;
      trial.push_back(v);
      auto p = f3::rref(trial, L.dim);
      if (p.size() == echelon.size()) continue;
      echelon = trial;
      by_weight[w].push_back(static_cast<int>(gens.size()));
      gens.push_back({x, w, def});
      cols.push_back(v);
    }
    if (static_cast<int>(cols.size()) != L.dim) throw std::logic_error("layer not spanned");
    f3::Matrix B(L.dim, L.dim);  // columns = coordinates of the chosen generators
    for (int a = 0; a < L.dim; ++a)
      for (int b = 0; b < L.dim; ++b) B.set(b, a, cols[a].get(b));
    basis_inv[w] = f3::inverse(B);
  }

  const int n = static_cast<int>(gens.size());
  auto express = [&](Element x) {
    Element out;
    for (int w = 1; w <= c; ++w) {
      const f3::Row v = layers[w - 1](x, *G);
      const f3::Row e = basis_inv[w].apply(v);
      Element prod;
      for (std::size_t t = 0; t < by_weight[w].size(); ++t) {
        const int k = by_weight[w][t];
        const int ek = e.get(static_cast<int>(t));
        out.e[k] = static_cast<std::uint8_t>(ek);
        if (ek) prod = G->multiply(prod, G->pow(gens[k].value, ek));
      }
      x = G->multiply(G->inverse(prod), x);
    }
    if (!x.is_identity()) throw std::logic_error("standardize: residue not trivial");
    return out;
  };

  std::vector<int> weights(n);
  std::vector<Element> pw(n), cm(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) weights[k] = gens[k].weight;
  for (int i = 0; i < n; ++i) {
    pw[i] = express(G->pow(gens[i].value, 3));
    for (int j = i + 1; j < n; ++j)
      cm[static_cast<std::size_t>(j) * n + i] = express(G->comm(gens[j].value, gens[i].value));
  }
  PcPresentation out(weights, pw, cm);
  if (!out.labelled()) throw std::logic_error("standardize produced an unlabelled presentation");
  return out;
}

bool is_standard(const PcPresentation& g) {
  if (!g.labelled()) return false;
  auto G = std::make_shared<const PcPresentation>(g);
  const auto P = series(G, SeriesKind::LowerExponentCentral);
  if (static_cast<int>(P.size()) - 1 != g.pclass()) return false;
  for (int w = 1; w < static_cast<int>(P.size()); ++w) {
    int above = 0;
    for (int k = 0; k < g.n(); ++k)
      if (g.weight(k) > w) {
        ++above;
        if (!P[w].contains(Element::gen(k))) return false;
      }
    if (P[w].log_order() != above) return false;
  }
  return true;
}

GroupPtr standard_form(GroupPtr g) {
  if (is_standard(*g)) return g;
  return std::make_shared<const PcPresentation>(standardize(*g));
}

}  // namespace hbc
