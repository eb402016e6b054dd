#include "hbc/tree.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <cstdio>
#include <sstream>
#include <thread>

namespace hbc {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct ChildRecord {
  Descendant desc;
  int mu = 0;
  int nu = 0;
};

struct Expansion {
  std::shared_ptr<const ParentContext> context;
  std::vector<std::pair<int, int>> counts, kept_counts;
  std::vector<ChildRecord> kept;
  std::string error;
};

Expansion expand(const Tree& t, int idx, const TreeOptions& opt) {
  const TreeNode& node = t.nodes[idx];
  Expansion ex;
  try {
    AutGroup aut = node_aut(t, idx, opt.aut);
    ex.context = std::make_shared<const ParentContext>(make_parent_context(aut));
    const int top = std::min(node.nu, opt.max_log_order - node.log_order);
    for (int s = 1; s <= top; ++s) {
      int n = 0, c = 0, kn = 0, kc = 0;
      for (auto& d : immediate_descendants(*ex.context, s, opt.aut)) {
        const auto cd = p_cover(d.group);
        ++n;
        c += cd.nu > 0;
        if (opt.keep && !opt.keep(d)) continue;
        ++kn;
        kc += cd.nu > 0;
        ex.kept.push_back({std::move(d), cd.mu, cd.nu});
      }
      ex.counts.push_back({n, c});
      ex.kept_counts.push_back({kn, kc});
    }
  } catch (const BudgetExceeded& e) {
    ex.error = e.what();
    ex.kept.clear();
    ex.counts.clear();
    ex.kept_counts.clear();
  }
  return ex;
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& f) {
  const int w = std::max(1, std::min<int>(worker_count(threads), static_cast<int>(count)));
  if (w == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex m;
  for (int k = 0; k < w; ++k)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HBC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string Fingerprint::canonical_text() const {
  std::ostringstream os;
  os << "lo=" << log_order << " cl=" << pclass << " cc=" << coclass << " dl=" << derived_length << " d1=" << d1
     << " mu=" << mu << " nu=" << nu << " lcs=";
  for (const auto& p : lower_central_aqi) os << "(" << partition_digits(p) << ")";
  if (pattern) {
    os << " kappa=" << format_kappa(pattern->kappa) << " alpha=" << format_alpha(pattern->alpha);
    if (pattern->alpha2) os << " alpha2=" << format_alpha2(*pattern->alpha2);
  }
  return os.str();
}

std::string Fingerprint::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_text())));
  return buf;
}

Fingerprint fingerprint(GroupPtr g0) {
  GroupPtr g = standard_form(g0);
  Fingerprint f;
  f.log_order = g->n();
  f.pclass = nilpotency_class(g);
  f.coclass = f.log_order - f.pclass;
  f.derived_length = derived_length(g);
  f.d1 = g->d();
  const auto cd = p_cover(g);
  f.mu = cd.mu;
  f.nu = cd.nu;
  for (const auto& term : series(g, SeriesKind::LowerCentral))
    if (term.log_order() > 0) f.lower_central_aqi.push_back(abelian_invariants(term));
  const auto ab = abelian_invariants(Subgroup::whole(g));
  const bool elementary = std::all_of(ab.begin(), ab.end(), [](int e) { return e == 1; });
  if (elementary && (f.d1 == 2 || f.d1 == 3)) f.pattern = canonical_pattern(artin_pattern(g, true));
  return f;
}

std::string TreeNode::relative_id() const {
  if (parent < 0) return "";
  return "#" + std::to_string(step) + ";" + std::to_string(orbit_index);
}

std::string Tree::path(int node) const {
  std::vector<std::string> parts;
  for (int k = node; k >= 0 && nodes[k].parent >= 0; k = nodes[k].parent) parts.push_back(nodes[k].relative_id());
  std::string s;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) s += (s.empty() ? "" : "-") + *it;
  return s;
}

std::vector<std::string> Tree::errors() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (!nodes[k].error.empty()) out.push_back(path(static_cast<int>(k)) + ": " + nodes[k].error);
  return out;
}

AutGroup node_aut(const Tree& t, int node, const AutOptions& opt) {
  const TreeNode& n = t.nodes[node];
  if (n.parent < 0) return aut_group(n.group, opt);
  const auto& ctx = t.nodes[n.parent].context;
  if (!ctx) throw std::logic_error("parent of node was not expanded");
  Descendant d;
  d.group = n.group;
  d.step = n.step;
  d.orbit_index = n.orbit_index;
  d.annihilator = n.annihilator;
  return descendant_aut(*ctx, d, opt);
}

Tree grow_tree(GroupPtr root, const TreeOptions& opt) {
  Tree t;
  {
    TreeNode r;
    r.group = standard_form(root);
    r.log_order = r.group->n();
    const auto cd = p_cover(r.group);
    r.mu = cd.mu;
    r.nu = cd.nu;
    t.nodes.push_back(std::move(r));
  }
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> todo;
    for (int k : frontier) {
      const auto& n = t.nodes[k];
      if (n.nu == 0 || n.log_order >= opt.max_log_order) continue;
      if (k != 0 && opt.expand && !opt.expand(n)) continue;
      todo.push_back(k);
    }
    std::vector<Expansion> results(todo.size());
    parallel_for(todo.size(), opt.threads, [&](std::size_t i) { results[i] = expand(t, todo[i], opt); });
    std::vector<int> next;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      auto& ex = results[i];
      const int k = todo[i];
      t.nodes[k].context = ex.context;
      t.nodes[k].counts = ex.counts;
      t.nodes[k].kept_counts = ex.kept_counts;
      t.nodes[k].error = ex.error;
      t.nodes[k].expanded = ex.error.empty();
      for (auto& c : ex.kept) {
        TreeNode child;
        child.group = c.desc.group;
        child.parent = k;
        child.step = c.desc.step;
        child.orbit_index = c.desc.orbit_index;
        child.log_order = child.group->n();
        child.mu = c.mu;
        child.nu = c.nu;
        child.annihilator = std::move(c.desc.annihilator);
        const int id = static_cast<int>(t.nodes.size());
        t.nodes[k].children.push_back(id);
        t.nodes.push_back(std::move(child));
        next.push_back(id);
      }
    }
    frontier = std::move(next);
  }
  return t;
}

bool keep_elementary_abelianization(const Descendant& d) { return d.elementary_abelianization; }

std::function<bool(const TreeNode&)> may_reach_closed_hbc(int max_log_order) {
  return [max_log_order](const TreeNode& n) {
    if (n.log_order + n.mu - n.group->d() > max_log_order) return false;
    return kernels_allow_hbc(artin_pattern(n.group));
  };
}

std::vector<int> kernel_permutation(GroupPtr g0) {
  GroupPtr g = standard_form(g0);
  if (g->d() != 2) throw InputError("kernel permutation needs a two-generator group");
  const auto maxes = maximal_subgroups(g);
  const auto& vs = normal_vectors(2);
  std::vector<int> perm;
  for (const auto& m : maxes) {
    const auto ker = transfer_kernel(m);
    int target = -1;
    if (ker.size() == 1)
      for (std::size_t k = 0; k < vs.size(); ++k)
        if (f3::dot(vs[k], ker[0]) == 0) target = static_cast<int>(k);
    perm.push_back(target);
  }
  return perm;
}

bool is_g16(const std::vector<int>& perm) {
  std::vector<int> seen(perm.size(), 0);
  int fixed = 0;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (perm[j] < 0 || seen[perm[j]]++) return false;
    fixed += perm[j] == static_cast<int>(j);
  }
  if (fixed != 2) return false;
  for (std::size_t j = 0; j < perm.size(); ++j)
    if (perm[j] != static_cast<int>(j) && perm[perm[j]] != static_cast<int>(j)) return false;
  return true;
}

std::vector<TowerMatch> g16_tower_groups(int log_order, const AutOptions& aut) {
  TreeOptions opt;
  opt.max_log_order = log_order;
  opt.keep = keep_elementary_abelianization;
  opt.aut = aut;
  const Tree t = grow_tree(std::make_shared<const PcPresentation>(PcPresentation::elementary_abelian(2)), opt);
  std::vector<TowerMatch> out;
  for (std::size_t k = 0; k < t.nodes.size(); ++k) {
    const auto& n = t.nodes[k];
    if (n.log_order != log_order) continue;
    if (log_order - nilpotency_class(n.group) != 2) continue;
    auto perm = kernel_permutation(n.group);
    if (!is_g16(perm)) continue;
    out.push_back({t.path(static_cast<int>(k)), fingerprint(n.group), std::move(perm)});
  }
  return out;
}

HbcSearch closed_hbc_search(int max_log_order, int threads, const AutOptions& aut) {
  const auto start = std::chrono::steady_clock::now();
  TreeOptions opt;
  opt.max_log_order = max_log_order;
  opt.keep = keep_elementary_abelianization;
  opt.expand = may_reach_closed_hbc(max_log_order);
  opt.aut = aut;
  opt.threads = threads;
  HbcSearch out;
  out.tree = grow_tree(std::make_shared<const PcPresentation>(PcPresentation::elementary_abelian(3)), opt);
  const Tree& t = out.tree;
  for (std::size_t k = 0; k < t.nodes.size(); ++k) {
    const auto& n = t.nodes[k];
    if (n.mu != n.group->d()) continue;
    const ArtinPattern p = artin_pattern(n.group);
    if (!is_hbc(p)) continue;
    ClosedHbcGroup c;
    c.node = static_cast<int>(k);
    c.path = t.path(c.node);
    c.group = n.group;
    c.fingerprint = fingerprint(n.group);
    c.pattern = canonical_pattern(p);
    int a = c.node;
    while (a >= 0 && t.nodes[a].log_order > 6) a = t.nodes[a].parent;
    if (a >= 0 && t.nodes[a].log_order == 6) {
      c.ancestor = a;
      c.ancestor_pattern = canonical_pattern(artin_pattern(t.nodes[a].group));
    }
    c.sigma = has_sigma_automorphism(node_aut(t, c.node, aut));
    out.groups.push_back(std::move(c));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string to_dot(const Tree& t, const DotStyle& style) {
  std::ostringstream os;
  os << "digraph descendants {\n  rankdir=TB;\n  node [fontsize=10];\n";
  for (std::size_t k = 0; k < t.nodes.size(); ++k) {
    const int i = static_cast<int>(k);
    const bool box = style.boxed && style.boxed(i);
    const bool fill = style.filled && style.filled(i);
    os << "  n" << k << " [label=\"" << (style.label ? style.label(i) : t.path(i)) << "\", shape="
       << (box ? "box" : "circle");
    if (fill) os << ", style=filled, fillcolor=black, fontcolor=white";
    os << "];\n";
  }
  for (std::size_t k = 0; k < t.nodes.size(); ++k)
    for (int c : t.nodes[k].children)
      os << "  n" << k << " -> n" << c << " [label=\"" << t.nodes[c].relative_id() << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace hbc
