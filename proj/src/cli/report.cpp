#include "hbc/report.hpp"

#include <sstream>

#include "hbc/fixtures.hpp"

namespace hbc::report {

namespace {

json envelope(const std::string& command, json parameters, json references, json result) {
  json prov;
  prov["tool"] = "hbc";
  prov["version"] = kVersion;
  prov["parameters"] = std::move(parameters);
  prov["compared_against"] = std::move(references);
  return json{{"command", command}, {"provenance", std::move(prov)}, {"result", std::move(result)}};
}

json reference(const std::string& quantity, const std::string& source, json expected = nullptr) {
  json r{{"quantity", quantity}, {"source", source}};
  if (!expected.is_null()) r["expected"] = std::move(expected);
  return r;
}

json partition_json(const Partition& p) { return json(p); }

json alpha2_json(const std::vector<SecondOrderEntry>& a2) {
  json out = json::array();
  for (const auto& e : a2) {
    json below = json::array();
    for (const auto& b : e.below) below.push_back(partition_json(b));
    out.push_back(json::array({partition_json(e.top), below}));
  }
  return out;
}

json fixture_json(const std::optional<fixtures::FixtureMatch>& m) {
  if (!m) return nullptr;
  json out{{"label", m->label}, {"ambiguous", m->ambiguous}, {"candidates", m->candidates}};
  if (m->substitutions) out["second_order_substitutions"] = m->substitutions;
  return out;
}

std::string triple_text(const genus::ConductorTriple& t) {
  return "(" + std::to_string(t.q[0]) + "," + std::to_string(t.q[1]) + "," + std::to_string(t.q[2]) + ")";
}

json row_json(const f3::Row& v, int d) {
  json a = json::array();
  for (int i = 0; i < d; ++i) a.push_back(v.get(i));
  return a;
}

json group_summary(GroupPtr g, const Fingerprint& fp) {
  return json{{"order", "3^" + std::to_string(fp.log_order)},
              {"log_order", fp.log_order},
              {"generators", fp.d1},
              {"class", fp.pclass},
              {"coclass", fp.coclass},
              {"derived_length", fp.derived_length},
              {"metabelian", fp.derived_length <= 2},
              {"mu", fp.mu},
              {"nu", fp.nu},
              {"closed", fp.mu == g->d()},
              {"schur_multiplier_rank", fp.mu - fp.d1},
              {"digest", fp.digest()}};
}

std::vector<int> kernel_dimensions(GroupPtr g) {
  std::vector<int> out;
  for (const auto& m : maximal_subgroups(g)) out.push_back(static_cast<int>(transfer_kernel(m).size()));
  return out;
}

json census_layer(const genus::LayerCensus& l) {
  json rows = json::array();
  for (const auto& r : l.rows) {
    json row{{"kind", r.kind},
             {"bucket", r.bucket},
             {"classes", r.classes},
             {"conjugates", r.members},
             {"appearances", r.appearances},
             {"closure_order", r.closure_order}};
    if (!r.aqi.empty()) row["aqi"] = r.aqi;
    rows.push_back(row);
  }
  return json{{"rows", rows},
              {"representatives", l.representatives()},
              {"total", l.total()},
              {"representatives_text", l.representatives_text()},
              {"total_text", l.total_text()}};
}

json polynomial_json(const genus::PolynomialResult& r, const std::vector<long long>& comps, const std::vector<int>& exps) {
  json coeffs = json::array();
  for (int i = 2; i >= 0; --i) coeffs.push_back(r.poly.c[i].str());
  return json{{"components", comps},
              {"exponents", exps},
              {"conductor", r.conductor},
              {"polynomial", r.poly.to_string()},
              {"coefficients", coeffs},
              {"polynomial_discriminant", r.poly_discriminant.str()},
              {"field_discriminant", r.field_discriminant.str()},
              {"conductor_squared", r.field_discriminant == eis::Int(r.conductor) * r.conductor},
              {"irreducible", r.irreducible},
              {"cyclic", r.cyclic},
              {"digits", r.digits}};
}

}  // namespace

json pattern_json(const ArtinPattern& p, bool canonical) {
  json alpha = json::array();
  for (const auto& a : p.alpha) alpha.push_back(partition_json(a));
  json out{{"d", p.d},
           {"kappa", p.kappa},
           {"kappa_text", format_kappa(p.kappa)},
           {"alpha", alpha},
           {"alpha_text", format_alpha(p.alpha)},
           {"taussky", std::string(p.taussky.begin(), p.taussky.end())},
           {"canonical", canonical}};
  if (p.alpha2) {
    out["alpha2"] = alpha2_json(*p.alpha2);
    out["alpha2_text"] = format_alpha2(*p.alpha2);
    out["alpha2_total"] = second_order_total(*p.alpha2);
  }
  if (p.d == 3) {
    const auto r = rank_distribution(p.alpha);
    out["rank_distribution"] = json{{"rank3", r.rank3}, {"rank2", r.rank2}, {"label", r.label()}, {"scenario", r.scenario}};
  }
  return out;
}

json fingerprint_json(const Fingerprint& fp) {
  json lc = json::array();
  for (const auto& p : fp.lower_central_aqi) lc.push_back(partition_json(p));
  json out{{"log_order", fp.log_order}, {"class", fp.pclass},         {"coclass", fp.coclass},
           {"derived_length", fp.derived_length}, {"d1", fp.d1},     {"mu", fp.mu},
           {"nu", fp.nu},                {"lower_central_aqi", lc}, {"digest", fp.digest()}};
  if (fp.pattern) out["pattern"] = pattern_json(*fp.pattern, true);
  return out;
}

json pattern(GroupPtr g0, bool second_order) {
  const GroupPtr g = standard_form(g0);
  if (g->d() != 2 && g->d() != 3) throw InputError("Artin patterns need G/Phi(G) of rank 2 or 3");
  const ArtinPattern p = artin_pattern(g, second_order);
  const Fingerprint fp = fingerprint(g);
  json result;
  result["group"] = group_summary(g, fp);
  result["group"]["fixture"] = fixture_json(fixtures::match_fixture(fp));
  result["pattern"] = pattern_json(p, false);
  result["pattern"]["kernel_dimensions"] = kernel_dimensions(g);
  ArtinPattern c = canonical_pattern(p);
  result["canonical"] = pattern_json(c, true);
  result["hbc"] = p.d == 3 && is_hbc(p);
  json refs = json::array({reference("kappa, alpha, rank distribution of order 3^6 ancestors", "data/table1.csv"),
                           reference("alpha2, mu, nu, descendant counts", "data/table2.csv")});
  return envelope("pattern", json{{"second_order", second_order}}, refs, result);
}

json tree(const TreeRequest& req, std::string* dot) {
  TreeOptions opt;
  opt.max_log_order = req.max_log_order;
  if (!req.all_descendants) opt.keep = keep_elementary_abelianization;
  else opt.keep = [](const Descendant&) { return true; };
  if (req.closed_hbc_pruning) opt.expand = may_reach_closed_hbc(req.max_log_order);
  opt.aut = req.aut;
  opt.threads = req.threads;
  const Tree t = grow_tree(standard_form(req.root), opt);

  json nodes = json::array();
  std::vector<bool> closed(t.nodes.size()), metabelian(t.nodes.size());
  std::vector<std::string> labels(t.nodes.size());
  for (std::size_t k = 0; k < t.nodes.size(); ++k) {
    const auto& n = t.nodes[k];
    const int dl = derived_length(n.group);
    closed[k] = n.mu == n.group->d();
    metabelian[k] = dl <= 2;
    json node{{"index", k},
              {"path", t.path(static_cast<int>(k))},
              {"parent", n.parent},
              {"log_order", n.log_order},
              {"class", nilpotency_class(n.group)},
              {"derived_length", dl},
              {"mu", n.mu},
              {"nu", n.nu},
              {"closed", closed[k]},
              {"expanded", n.expanded}};
    json counts = json::array(), kept = json::array();
    for (const auto& [a, b] : n.counts) counts.push_back(std::to_string(a) + "/" + std::to_string(b));
    for (const auto& [a, b] : n.kept_counts) kept.push_back(std::to_string(a) + "/" + std::to_string(b));
    node["counts"] = counts;
    node["kept_counts"] = kept;
    const int d = n.group->d();
    // Artin patterns are defined when G/G' is elementary abelian.
    if ((d == 2 || d == 3) && abelian_invariants(Subgroup::whole(n.group)) == Partition(d, 1)) {
      const ArtinPattern p = artin_pattern(n.group);
      node["kappa"] = format_kappa(p.kappa);
      node["hbc"] = d == 3 && is_hbc(p);
    }
    labels[k] = t.path(static_cast<int>(k));
    if (req.fingerprints) {
      const Fingerprint fp = fingerprint(n.group);
      node["digest"] = fp.digest();
      const auto m = fixtures::match_fixture(fp, n.expanded ? &n.counts : nullptr);
      node["fixture"] = fixture_json(m);
      labels[k] = fp.digest() + (m ? "\\n" + m->label : "");
    }
    if (!n.error.empty()) node["error"] = n.error;
    nodes.push_back(node);
  }
  if (dot) {
    DotStyle style;
    style.label = [&](int i) { return labels[i]; };
    style.filled = [&](int i) { return closed[i]; };
    style.boxed = [&](int i) { return !metabelian[i]; };
    *dot = to_dot(t, style);
  }
  json result{{"nodes", nodes}, {"errors", t.errors()}, {"node_count", t.nodes.size()}};
  json params{{"root_order", "3^" + std::to_string(req.root->n())},
              {"max_log_order", req.max_log_order},
              {"filter", req.all_descendants ? "all" : "elementary-abelianization"},
              {"closed_hbc_pruning", req.closed_hbc_pruning}};
  json refs = json::array({reference("descendant counts N_s/C_s", "data/table2.csv")});
  return envelope("tree", params, refs, result);
}

json hbc_search(int max_log_order, int threads, const AutOptions& aut, std::string* dot) {
  if (max_log_order < 6 || max_log_order > 9) throw InputError("--max-lo must be between 6 and 9");
  const HbcSearch s = closed_hbc_search(max_log_order, threads, aut);
  const Tree& t = s.tree;
  json groups = json::array();
  int metabelian = 0, non_metabelian = 0, non_sigma = 0, same = 0;
  for (const auto& g : s.groups) {
    const bool meta = g.fingerprint.derived_length <= 2;
    (meta ? metabelian : non_metabelian)++;
    non_sigma += !g.sigma;
    const bool shares = g.ancestor >= 0 && g.pattern.kappa == g.ancestor_pattern.kappa &&
                        g.pattern.alpha == g.ancestor_pattern.alpha;
    same += shares;
    json entry = group_summary(g.group, g.fingerprint);
    entry["path"] = g.path;
    entry["kappa"] = format_kappa(g.pattern.kappa);
    entry["alpha"] = format_alpha(g.pattern.alpha);
    entry["rank_distribution"] = rank_distribution(g.pattern.alpha).label();
    if (g.fingerprint.pattern && g.fingerprint.pattern->alpha2)
      entry["alpha2"] = format_alpha2(*g.fingerprint.pattern->alpha2);
    entry["sigma_group"] = g.sigma;
    entry["fixture"] = fixture_json(fixtures::match_fixture(g.fingerprint, &t.nodes[g.node].counts));
    if (g.ancestor >= 0) {
      const auto& a = t.nodes[g.ancestor];
      const Fingerprint afp = fingerprint(a.group);
      entry["ancestor"] = json{{"path", t.path(g.ancestor)},
                               {"kappa", format_kappa(g.ancestor_pattern.kappa)},
                               {"fixture", fixture_json(fixtures::match_fixture(afp, a.expanded ? &a.counts : nullptr))}};
      entry["shares_ancestor_pattern"] = shares;
    }
    groups.push_back(entry);
  }
  if (dot) {
    std::vector<bool> closed_hbc(t.nodes.size(), false), boxed(t.nodes.size(), false);
    for (const auto& g : s.groups) {
      closed_hbc[g.node] = true;
      boxed[g.node] = g.fingerprint.derived_length > 2;
    }
    DotStyle style;
    style.label = [&](int i) { return i == 0 ? std::string("root") : t.nodes[i].relative_id(); };
    style.filled = [&](int i) { return closed_hbc[i]; };
    style.boxed = [&](int i) { return boxed[i]; };
    *dot = to_dot(t, style);
  }
  json summary{{"closed_hbc", s.groups.size()},
               {"metabelian", metabelian},
               {"non_metabelian", non_metabelian},
               {"non_sigma", non_sigma},
               {"sharing_ancestor_pattern", same},
               {"nodes_visited", t.nodes.size()}};
  json result{{"groups", groups}, {"summary", summary}, {"errors", t.errors()}};
  json refs = json::array(
      {reference("closed HBC groups up to order 3^8", "expected value", json{{"metabelian", 14}}),
       reference("additional closed HBC groups of order 3^9", "expected value", json{{"non_metabelian", 3}}),
       reference("alpha2 identification of the closed groups", "data/table2.csv")});
  return envelope("hbc-search", json{{"max_log_order", max_log_order}}, refs, result);
}

json classify(long long c) {
  const auto t = genus::triple_of_conductor(c);
  const auto g = genus::classify_graph(t);
  json arrows = json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (g.arrows[i][j]) arrows.push_back(json::array({g.triple.q[i], g.triple.q[j]}));
  json result{{"conductor", c},
              {"factors", t.factors()},
              {"components", t.q},
              {"oriented_triple", g.triple.q},
              {"trivial_symbols", g.trivial},
              {"arrows", arrows},
              {"arrow_text", g.arrow_text()},
              {"category_I_graph_2", g.cat1_graph2}};
  if (g.cat1_graph2) result["centre"] = g.centre;
  json refs = json::array({reference("conductors with harmonically balanced capitulation", "data/table3.csv")});
  return envelope("classify", json{{"c", c}}, refs, result);
}

json scan(long long max_c, int threads) {
  const auto s = genus::scan_conductors(max_c, threads);
  json cands = json::array();
  for (const auto& e : s.candidates)
    cands.push_back(json{{"c", e.graph.triple.conductor()},
                         {"factors", genus::triple_of_conductor(e.graph.triple.conductor()).factors()},
                         {"oriented_triple", e.graph.triple.q},
                         {"arrows", e.graph.arrow_text()}});
  std::vector<long long> missing;
  try {
    std::set<long long> found;
    for (const auto& e : s.candidates) found.insert(e.graph.triple.conductor());
    for (const auto& r : fixtures::load_table3())
      if (r.c <= max_c && !found.count(r.c)) missing.push_back(r.c);
  } catch (const InputError&) {
  }
  json result{{"max_c", max_c},
              {"triples", s.triples},
              {"candidate_count", s.candidates.size()},
              {"candidates", cands},
              {"fixture_conductors_missing", missing}};
  json refs = json::array({reference("fixture conductors below the bound are among the candidates", "data/table3.csv")});
  return envelope("scan", json{{"max_c", max_c}}, refs, result);
}

std::string scan_csv(const json& rep) {
  std::ostringstream os;
  os << "c,factors,q1,q2,q3,arrows\n";
  for (const auto& e : rep.at("result").at("candidates")) {
    const auto& q = e.at("oriented_triple");
    os << e.at("c").get<long long>() << "," << e.at("factors").get<std::string>() << "," << q[0].get<long long>() << ","
       << q[1].get<long long>() << "," << q[2].get<long long>() << ",\"" << e.at("arrows").get<std::string>() << "\"\n";
  }
  return os.str();
}

json lattice(const genus::ConductorTriple& t, std::optional<genus::Normalization> n, std::string* dot) {
  const auto lat = n ? genus::build_lattice(t, *n) : genus::build_lattice(t);
  json lines = json::array(), planes = json::array();
  for (const auto& l : lat.lines)
    lines.push_back(json{{"label", l.label}, {"character", row_json(l.v, 3)}, {"conductor", l.conductor}});
  for (const auto& p : lat.planes) {
    json members = json::array();
    for (int l : p.lines) members.push_back(lat.lines[l].label);
    planes.push_back(json{{"label", p.label}, {"normal", row_json(p.normal, 3)}, {"lines", members}});
  }
  if (dot) *dot = lat.to_dot();
  json result{{"triple", lat.triple.q},
              {"conductor", lat.triple.conductor()},
              {"normalization", json{{"a", lat.norm.a}, {"c", lat.norm.c}}},
              {"lines", lines},
              {"planes", planes},
              {"unramified_assignment", genus::unramified_assignment(lat)},
              {"degree_L", lat.degree_L()},
              {"degree_L_tilde", lat.degree_L_tilde()}};
  json refs = json::array({reference("degree of L times degree of L~", "expected value", 243)});
  return envelope("lattice", json{{"triple", triple_text(t)}}, refs, result);
}

json predict(long long c, std::optional<genus::Normalization> n, bool tower) {
  auto rep = genus::predict_capitulation(genus::triple_of_conductor(c), n);
  json fields = json::array();
  for (const auto& f : rep.fields) {
    json entries = json::array();
    for (const auto& e : f.entries)
      entries.push_back(json{{"plane", e.plane},
                             {"kernel", genus::class_text(e.kernel)},
                             {"norm", genus::class_text(e.norm)},
                             {"fixed", e.kernel == e.norm}});
    fields.push_back(json{{"field", f.field},
                          {"entries", entries},
                          {"fixed_points", f.fixed_points},
                          {"transposition", f.transposition}});
  }
  json tower_json = nullptr;
  if (tower && rep.g16_signature) {
    json matches = json::array();
    for (const auto& m : g16_tower_groups(6)) {
      if (rep.tower_fingerprint.empty()) rep.tower_fingerprint = m.fingerprint.digest();
      matches.push_back(json{{"path", m.path},
                             {"digest", m.fingerprint.digest()},
                             {"log_order", m.fingerprint.log_order},
                             {"coclass", m.fingerprint.coclass},
                             {"relation_rank", m.fingerprint.mu},
                             {"permutation", m.permutation}});
    }
    tower_json = json{{"search", "coclass 2, order 3^6, below the (3,3) root"}, {"groups", matches}};
  }
  json result{{"predicted", rep.predicted},
              {"reason", rep.reason},
              {"oriented_triple", rep.triple.q},
              {"factors", rep.triple.factors()},
              {"normalization", json{{"a", rep.norm.a}, {"c", rep.norm.c}}},
              {"q2_splits_in_k_q1q3", rep.q2_splits_in_k13},
              {"q3_splits_in_k_q1q2", rep.q3_splits_in_k12},
              {"rank3_member", rep.rank3_member},
              {"parry_invariant", rep.parry_invariant},
              {"orientation", rep.orientation},
              {"fields", fields},
              {"tkt", rep.tkt_label},
              {"g16_signature", rep.g16_signature},
              {"tower_fingerprint", rep.tower_fingerprint},
              {"tower", tower_json}};
  json refs = json::array({reference("capitulation of the rank-2 quartet members", "expected value",
                                     "two fixed points and one transposition per field")});
  json params{{"c", c}, {"tower", tower}};
  if (n) params["normalization"] = json{{"a", n->a}, {"c", n->c}};
  return envelope("predict", params, refs, result);
}

json census(const std::optional<std::string>& scenario, std::uint64_t seed) {
  std::vector<RankDistribution> scenarios;
  if (scenario) scenarios.push_back(genus::parse_scenario(*scenario));
  else
    for (const char* s : {"1", "2", "3"}) scenarios.push_back(genus::parse_scenario(s));
  json rows = json::array();
  for (const auto& sc : scenarios) {
    const auto rec = genus::census(sc, seed);
    rows.push_back(json{{"scenario", rec.scenario.scenario},
                        {"rank_distribution", rec.scenario.label()},
                        {"group_digest", rec.group},
                        {"relative_id", rec.relative_id},
                        {"sum_nj", rec.sum_nj},
                        {"layer1", census_layer(rec.layer1)},
                        {"layer2", census_layer(rec.layer2)}});
  }
  json refs = json::array({reference("first layer representatives and totals", "expected value",
                                     json::array({"1+3+3=7 / 1+3+9=13", "1+1+3+2=7 / 1+3+3+6=13", "1+2+3+1=7 / 1+6+3+3=13"})),
                           reference("second layer representatives and totals", "expected value",
                                     json::array({"1+3+4=8 / 4+12+45=61", "1+3+7=11 / 4+12+72=88", "1+3+10=14 / 4+12+99=115"}))});
  json params{{"seed", seed}};
  if (scenario) params["scenario"] = *scenario;
  return envelope("census", params, refs, json{{"scenarios", rows}});
}

json polynomial(long long c) {
  if (c < 2) throw InputError("conductor must be at least 7");
  std::vector<long long> comps;
  for (const auto& [p, e] : eis::factor(static_cast<std::uint64_t>(c))) {
    if (p == 3 && e == 2) comps.push_back(9);
    else if (p != 3 && e == 1 && p % 3 == 1) comps.push_back(static_cast<long long>(p));
    else throw InputError(std::to_string(c) + " is not the conductor of a cyclic cubic field");
  }
  // One field per character up to inversion: first exponent 1.
  json fields = json::array();
  const std::size_t k = comps.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << (k - 1)); ++mask) {
    std::vector<int> exps{1};
    for (std::size_t i = 1; i < k; ++i) exps.push_back(mask >> (i - 1) & 1 ? 2 : 1);
    fields.push_back(polynomial_json(genus::defining_polynomial(comps, exps), comps, exps));
  }
  json refs = json::array({reference("field discriminant", "conductor squared")});
  return envelope("polynomial", json{{"c", c}}, refs, json{{"conductor", c}, {"fields", fields}});
}

json validate_fixtures(const std::string& dir) {
  json problems = json::array();
  json tables;
  auto guard = [&](const std::string& name, auto&& load) {
    try {
      tables[name] = load();
    } catch (const std::exception& e) {
      problems.push_back(json{{"table", name}, {"message", e.what()}});
      tables[name] = 0;
    }
  };
  guard("table1.csv", [&] { return fixtures::load_table1(dir).size(); });
  guard("table2.csv", [&] { return fixtures::load_table2(dir).size(); });
  std::vector<fixtures::Table3Row> t3;
  guard("table3.csv", [&] {
    t3 = fixtures::load_table3(dir);
    return t3.size();
  });
  for (const auto& p : fixtures::validate_table3(t3))
    problems.push_back(json{{"table", "table3.csv"}, {"no", p.no}, {"c", p.c}, {"message", p.message}});
  int graph2 = 0;
  for (const auto& r : t3) {
    try {
      graph2 += genus::classify_graph(genus::triple_of_conductor(r.c)).cat1_graph2;
    } catch (const InputError&) {
    }
  }
  json result{{"rows", tables}, {"table3_graph2", graph2}, {"problems", problems}, {"ok", problems.empty()}};
  json refs = json::array({reference("rows of the conductor table", "data/table3.csv", 41)});
  return envelope("validate-fixtures", json{{"dir", dir}}, refs, result);
}

bool budget_exhausted(const json& r) {
  const auto& res = r.at("result");
  return res.contains("errors") && !res.at("errors").empty();
}

bool validation_failed(const json& r) {
  const auto& res = r.at("result");
  return res.contains("ok") && !res.at("ok").get<bool>();
}

std::string text(const json& r) {
  const std::string cmd = r.at("command");
  const auto& res = r.at("result");
  std::ostringstream os;
  if (cmd == "classify") {
    os << "c = " << res["conductor"] << " = " << res["factors"].get<std::string>() << "\n"
       << "trivial symbols: " << res["trivial_symbols"] << " (" << res["arrow_text"].get<std::string>() << ")\n"
       << "category I graph 2: " << (res["category_I_graph_2"].get<bool>() ? "yes" : "no") << "\n";
  } else if (cmd == "hbc-search") {
    for (const auto& g : res["groups"])
      os << g["path"].get<std::string>() << "  order " << g["order"].get<std::string>() << "  class " << g["class"]
         << (g["metabelian"].get<bool>() ? "  metabelian" : "  non-metabelian") << "  "
         << (g["fixture"].is_null() ? std::string("-") : g["fixture"]["label"].get<std::string>()) << "\n";
    const auto& s = res["summary"];
    os << s["closed_hbc"] << " closed HBC groups: " << s["metabelian"] << " metabelian, " << s["non_metabelian"]
       << " non-metabelian\n";
  } else if (cmd == "predict") {
    os << res["factors"].get<std::string>() << ": ";
    if (!res["predicted"].get<bool>()) {
      os << "no prediction (" << res["reason"].get<std::string>() << ")\n";
    } else {
      os << (res["g16_signature"].get<bool>() ? res["tkt"].get<std::string>() : std::string("no G.16 signature")) << "\n";
      for (const auto& f : res["fields"]) {
        os << "  " << f["field"].get<std::string>() << ":";
        for (const auto& e : f["entries"])
          os << "  " << e["plane"].get<std::string>() << " " << e["kernel"].get<std::string>() << "->"
             << e["norm"].get<std::string>();
        os << "\n";
      }
    }
  } else if (cmd == "census") {
    for (const auto& s : res["scenarios"])
      os << s["rank_distribution"].get<std::string>() << "  layer 1: " << s["layer1"]["representatives_text"].get<std::string>()
         << " / " << s["layer1"]["total_text"].get<std::string>()
         << "  layer 2: " << s["layer2"]["representatives_text"].get<std::string>() << " / "
         << s["layer2"]["total_text"].get<std::string>() << "\n";
  } else if (cmd == "polynomial") {
    for (const auto& f : res["fields"])
      os << f["polynomial"].get<std::string>() << "  disc " << f["polynomial_discriminant"].get<std::string>()
         << "  field disc " << f["field_discriminant"].get<std::string>() << "\n";
  } else if (cmd == "validate-fixtures") {
    for (const auto& p : res["problems"]) os << "problem: " << p.dump() << "\n";
    os << (res["ok"].get<bool>() ? "fixtures ok" : "fixtures FAILED") << "\n";
  } else if (cmd == "scan") {
    for (const auto& e : res["candidates"]) os << e["c"] << " " << e["factors"].get<std::string>() << "\n";
    os << res["candidate_count"] << " candidates among " << res["triples"] << " triples\n";
  } else if (cmd == "pattern") {
    const auto& p = res["pattern"];
    os << "kappa " << p["kappa_text"].get<std::string>() << "\nalpha " << p["alpha_text"].get<std::string>()
       << "\ntaussky " << p["taussky"].get<std::string>() << "\n";
    if (p.contains("alpha2_text")) os << "alpha2 " << p["alpha2_text"].get<std::string>() << "\n";
  } else if (cmd == "lattice") {
    for (const auto& p : res["planes"]) {
      os << p["label"].get<std::string>() << ":";
      for (const auto& l : p["lines"]) os << " " << l.get<std::string>();
      os << "\n";
    }
  } else {
    os << res.dump(2) << "\n";
  }
  return os.str();
}

}  // namespace hbc::report
