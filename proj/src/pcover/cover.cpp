#include <algorithm>

#include "hbc/pcover.hpp"

namespace hbc {

namespace {

using DenseRow = std::vector<std::uint8_t>;

// Reduced row echelon form over F3 for rows of arbitrary length.
std::vector<int> dense_rref(std::vector<DenseRow>& rows, int ncols) {
  std::vector<int> pivots;
  std::size_t top = 0;
  for (int c = 0; c < ncols && top < rows.size(); ++c) {
    std::size_t p = top;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[top], rows[p]);
    if (rows[top][c] == 2)
      for (auto& v : rows[top]) v = static_cast<std::uint8_t>((v * 2) % 3);
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == top || rows[q][c] == 0) continue;
      const int f = 3 - rows[q][c];
      for (int k = 0; k < ncols; ++k)
        rows[q][k] = static_cast<std::uint8_t>((rows[q][k] + f * rows[top][k]) % 3);
    }
    pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  return pivots;
}

}  // namespace

std::string CoverRelation::label() const {
  if (is_power()) return "a" + std::to_string(j + 1) + "^3";
  return "[a" + std::to_string(j + 1) + ",a" + std::to_string(i + 1) + "]";
}

CoverData p_cover(GroupPtr g0) {
  GroupPtr g = standard_form(g0);
  const auto& G = *g;
  if (!G.consistency_check().empty()) throw InputError("presentation is inconsistent");
  const int n = G.n(), c = G.pclass();

  CoverData cd;
  cd.group = g;
  // Relation list: powers, then commutators by (j, i).
  for (int j = 0; j < n; ++j) {
    CoverRelation r;
    r.j = j;
    r.weight = G.weight(j) + 1;
    cd.relations.push_back(r);
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      CoverRelation r;
      r.j = j;
      r.i = i;
      r.weight = G.weight(j) + G.weight(i);
      cd.relations.push_back(r);
    }
  for (int k = 0; k < n; ++k) {
    const auto& def = G.definitions()[k];
    if (def.kind == Definition::Kind::None) continue;
    for (auto& r : cd.relations)
      if (r.j == def.j && r.i == (def.kind == Definition::Kind::Power ? -1 : def.i)) r.definition = true;
  }
  // One raw tail per non-defining relation.
  std::vector<int> raw_of(cd.relations.size(), -1);
  int m = 0;
  for (std::size_t r = 0; r < cd.relations.size(); ++r)
    if (!cd.relations[r].definition) raw_of[r] = m++;
  if (m > detail::TailVec::kMaxLen) throw InputError("presentation too large for the p-cover");

  auto rel_index = [n](int j, int i) {
    return i < 0 ? static_cast<std::size_t>(j) : static_cast<std::size_t>(n + j * (j - 1) / 2 + i);
  };
  std::vector<Element> pw(n), cm(static_cast<std::size_t>(n) * n);
  std::vector<detail::TailVec> pwt(n), cmt(cm.size());
  for (int j = 0; j < n; ++j) {
    pw[j] = G.power(j);
    if (raw_of[rel_index(j, -1)] >= 0) pwt[j].set(raw_of[rel_index(j, -1)], 1);
    for (int i = 0; i < j; ++i) {
      const std::size_t f = static_cast<std::size_t>(j) * n + i;
      cm[f] = G.commutator(j, i);
      if (raw_of[rel_index(j, i)] >= 0) cmt[f].set(raw_of[rel_index(j, i)], 1);
    }
  }
  detail::Collector<detail::TailVec> col;
  col.init(n, pw, pwt, cm, cmt);

  std::vector<DenseRow> eqs;
  for (const auto& dsc : col.check()) {
    if (!(dsc.lhs == dsc.rhs)) throw InputError("presentation is inconsistent at " + dsc.test_word);
    DenseRow row(m);
    for (int k = 0; k < m; ++k) row[k] = static_cast<std::uint8_t>((dsc.lhs_tail.get(k) - dsc.rhs_tail.get(k) + 3) % 3);
    eqs.push_back(std::move(row));
  }
  const auto piv = dense_rref(eqs, m);
  std::vector<int> pos(m, -1);
  std::vector<int> free_cols;
  {
    std::vector<bool> is_piv(m, false);
    for (int p : piv) is_piv[p] = true;
    for (int k = 0; k < m; ++k)
      if (!is_piv[k]) {
        pos[k] = static_cast<int>(free_cols.size());
        free_cols.push_back(k);
      }
  }
  cd.mu = static_cast<int>(free_cols.size());
  if (cd.mu > f3::Row::kMaxLen || n + cd.mu > kMaxGens)
    throw InputError("p-cover exceeds the supported number of generators");
  // e_k = -(sum over free f of row_k[f] e_f) for pivot k.
  std::vector<f3::Row> raw_to_m(m);
  for (int k : free_cols) raw_to_m[k].set(pos[k], 1);
  for (std::size_t q = 0; q < piv.size(); ++q) {
    f3::Row v;
    for (int f : free_cols)
      if (eqs[q][f]) v.set(pos[f], 3 - eqs[q][f]);
    raw_to_m[piv[q]] = v;
  }
  cd.basis_relation.assign(cd.mu, -1);
  for (std::size_t r = 0; r < cd.relations.size(); ++r) {
    if (raw_of[r] < 0) continue;
    cd.relations[r].tail = raw_to_m[raw_of[r]];
    if (pos[raw_of[r]] >= 0) cd.basis_relation[pos[raw_of[r]]] = static_cast<int>(r);
  }

  std::vector<f3::Row> nuc;
  for (const auto& r : cd.relations)
    if (!r.definition && r.weight == c + 1) nuc.push_back(r.tail);
  f3::rref(nuc, cd.mu);
  cd.nucleus = nuc;
  cd.nu = static_cast<int>(nuc.size());

  // G* as a pc presentation on n + mu generators.
  const int N = n + cd.mu;
  std::vector<int> w = G.weights();
  w.resize(N, c + 1);
  std::vector<Element> cpw(N), ccm(static_cast<std::size_t>(N) * N);
  auto with_tail = [n](Element x, const f3::Row& t) {
    std::uint64_t s = t.support();
    while (s) {
      const int k = std::countr_zero(s);
      s &= s - 1;
      x.e[n + k] = static_cast<std::uint8_t>(t.get(k));
    }
    return x;
  };
  for (const auto& r : cd.relations) {
    if (r.is_power())
      cpw[r.j] = with_tail(G.power(r.j), r.tail);
    else
      ccm[static_cast<std::size_t>(r.j) * N + r.i] = with_tail(G.commutator(r.j, r.i), r.tail);
  }
  cd.cover = std::make_shared<const PcPresentation>(w, cpw, ccm);
  return cd;
}

Element CoverData::multiplicator_element(const f3::Row& v) const {
  Element x;
  for (int k = 0; k < mu; ++k) x.e[group->n() + k] = static_cast<std::uint8_t>(v.get(k));
  return x;
}

Subgroup CoverData::multiplicator() const {
  std::vector<Element> gens;
  for (int k = 0; k < mu; ++k) gens.push_back(Element::gen(group->n() + k));
  return Subgroup::generated(cover, gens);
}

Subgroup CoverData::nucleus_subgroup() const {
  std::vector<Element> gens;
  for (const auto& v : nucleus) gens.push_back(multiplicator_element(v));
  return Subgroup::generated(cover, gens);
}

std::vector<f3::Row> CoverData::derived_part() const {
  const auto D = derived_subgroup(Subgroup::whole(cover));
  const int n = group->n();
  std::vector<f3::Row> rows;
  for (const auto& x : D.igs()) {
    if (x.lead() < n) continue;
    f3::Row v;
    for (int k = 0; k < mu; ++k) v.set(k, x.e[n + k]);
    rows.push_back(v);
  }
  f3::rref(rows, mu);
  return rows;
}

int relation_rank(GroupPtr g) { return p_cover(g).mu; }

bool is_closed(GroupPtr g) {
  const auto cd = p_cover(g);
  return cd.mu == cd.group->d();
}

int schur_multiplier_rank(GroupPtr g) {
  const auto cd = p_cover(g);
  return cd.mu - cd.group->d();
}

}  // namespace hbc
