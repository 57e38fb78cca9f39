#include "pic/catalogue.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pic/feasibility.hpp"
#include "pic/oracle.hpp"
#include "pic/verifier.hpp"
#include "json.hpp"

namespace pic {

namespace {

using nlohmann::json;

uint32_t pattern_mask(const std::string& bits) { return KeyPattern::from_string(bits).mask(); }

/// Scheme shorthand: transmissions split by '|', terms by '+'; "x2" is a
/// message, "k110" a key symbol, "k'110" the second independent symbol of
/// the same key. Produces a single-block GF(2) scheme.
LinearScheme scheme_dsl(int n_users, const std::string& text) {
  struct Use {
    int row;
    int copy;
  };
  std::vector<std::string> trans;
  {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '|')) trans.push_back(part);
  }
  const int r = static_cast<int>(trans.size());
  LinearScheme s;
  s.q = 2;
  s.n = 1;
  s.r = r;
  s.G.assign(n_users, GFMatrix(2, r, 1));
  std::map<uint32_t, std::vector<Use>> key_uses;
  std::map<uint32_t, int> widths;
  for (int row = 0; row < r; ++row) {
    std::stringstream ts(trans[row]);
    std::string term;
    while (std::getline(ts, term, '+')) {
      term.erase(std::remove_if(term.begin(), term.end(), ::isspace), term.end());
      if (term.empty()) continue;
      if (term[0] == 'x') {
        const int user = std::stoi(term.substr(1));
        s.G[user - 1].set(row, 0, 1);
      } else if (term[0] == 'k') {
        size_t p = 1;
        int copy = 1;
        while (p < term.size() && term[p] == '\'') {
          ++copy;
          ++p;
        }
        const uint32_t mask = pattern_mask(term.substr(p));
        key_uses[mask].push_back({row, copy});
        widths[mask] = std::max(widths[mask], copy);
      } else {
        throw ModelError("scheme dsl: bad term '" + term + "'");
      }
    }
  }
  for (const auto& [mask, uses] : key_uses) {
    GFMatrix h(2, r, widths[mask]);
    for (const Use& u : uses) h.set(u.row, u.copy - 1, 1);
    s.keys.push_back({KeyPattern(n_users, mask), h});
  }
  std::sort(s.keys.begin(), s.keys.end(), [](const KeyBlock& a, const KeyBlock& b) {
    return a.pattern.mask() < b.pattern.mask();
  });
  s.validate();
  return s;
}

/// Region shorthand: rows split by ';', each "R+110>=3" style with '+'
/// separated variables (R or a pattern string) and an integer right side.
lp::Problem region_dsl(int n_users, const std::string& text) {
  lp::Problem p;
  p.add_var("R");
  for (const auto& pat : all_key_patterns(n_users)) p.add_var(pat.str());
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    row.erase(std::remove_if(row.begin(), row.end(), ::isspace), row.end());
    if (row.empty()) continue;
    const size_t ge = row.find(">=");
    if (ge == std::string::npos) throw ModelError("region dsl: missing >= in " + row);
    std::vector<lp::Term> terms;
    std::stringstream ts(row.substr(0, ge));
    std::string name;
    std::string label;
    while (std::getline(ts, name, '+')) {
      const int var = name == "R" ? 0 : static_cast<int>(pattern_mask(name));
      terms.push_back({var, 1});
      label += (label.empty() ? "" : "+") + (name == "R" ? name : "R" + name);
    }
    const Rat rhs = rat_from_string(row.substr(ge + 2));
    label += ">=" + rat_to_string(rhs);
    p.add_constraint(std::move(terms), lp::Rel::Ge, rhs, label);
  }
  return p;
}

RateTuple tuple_of(int n_users, const std::vector<Rat>& values) {
  RateTuple t;
  t.n_users = n_users;
  t.transmission_rate = values.at(0);
  const auto pats = all_key_patterns(n_users);
  for (size_t k = 0; k < pats.size(); ++k)
    if (sgn(values.at(k + 1)) != 0) t.key_rates[pats[k].mask()] = values[k + 1];
  return t;
}

struct VertexSpec {
  std::vector<int> tuple;  // R then key rates in ascending mask order
  const char* scheme;
};

struct EntrySpec {
  const char* name;
  std::vector<std::vector<int>> side_info;
  const char* region;
  std::vector<VertexSpec> vertices;
};

CatalogueEntry build_entry(const EntrySpec& spec) {
  const int n = static_cast<int>(spec.side_info.size());
  CatalogueEntry e{spec.name, SideInfoGraph(n, spec.side_info), region_dsl(n, spec.region), {}};
  for (const auto& v : spec.vertices) {
    std::vector<Rat> vals(v.tuple.begin(), v.tuple.end());
    e.vertices.push_back({tuple_of(n, vals), scheme_dsl(n, v.scheme)});
  }
  return e;
}

std::vector<CatalogueEntry> build_catalogue() {
  std::vector<EntrySpec> specs = {
      // ---- two users ----
      {"n2-empty",
       {{}, {}},
       "10>=1; 01>=1; R>=2",
       {{{2, 1, 1}, "x1+k10|x2+k01"}}},
      {"n2-arc12",
       {{2}, {}},
       "10>=1; R>=2",
       {{{2, 1, 0}, "x1+k10|x2"}}},
      {"n2-clique",
       {{2}, {1}},
       "R>=1",
       {{{1, 0, 0}, "x1+x2"}}},
      // ---- three users: the directed cycle, spelled out as the showcase ----
      {"n3-cycle",
       {{2}, {3}, {1}},
       "100+101>=1; 010+110>=1; 001+011>=1; R>=2; R+011>=3; R+101>=3; R+110>=3",
       {{{2, 0, 0, 1, 0, 1, 1}, "x1+x2+k101+k110|x2+x3+k110+k011"},
        {{3, 0, 0, 1, 1, 1, 0}, "x1+k101|x2+k110|x3+k001"},
        {{3, 0, 1, 0, 0, 1, 1}, "x1+k101|x2+k010|x3+k011"},
        {{3, 0, 1, 0, 1, 1, 0}, "x1+k101|x2+k010|x3+k001"},
        {{3, 1, 0, 1, 0, 0, 1}, "x1+k100|x2+k110|x3+k011"},
        {{3, 1, 0, 1, 1, 0, 0}, "x1+k100|x2+k110|x3+k001"},
        {{3, 1, 1, 0, 0, 0, 1}, "x1+k100|x2+k010|x3+k011"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      // ---- all sixteen three-user graphs ----
      {"n3-01-empty",
       {{}, {}, {}},
       "100+101>=1; 100+110>=1; 010+110>=1; 010+011>=1; 001+011>=1; 001+101>=1; "
       "001+101+100>=2; 001+011+010>=2; 100+110+010>=2; R>=3",
       {{{3, 0, 0, 2, 0, 2, 2}, "x1+k101+k110|x2+k'110+k011|x3+k'011+k'101"},
        {{3, 0, 0, 2, 1, 1, 1}, "x1+k101+k110|x2+k'110+k011|x3+k001"},
        {{3, 0, 1, 1, 0, 2, 1}, "x1+k101+k110|x2+k010|x3+k011+k'101"},
        {{3, 0, 1, 1, 1, 1, 0}, "x1+k101+k110|x2+k010|x3+k001"},
        {{3, 1, 0, 1, 0, 1, 2}, "x1+k100|x2+k110+k011|x3+k'011+k101"},
        {{3, 1, 0, 1, 1, 0, 1}, "x1+k100|x2+k110+k011|x3+k001"},
        {{3, 1, 1, 0, 0, 1, 1}, "x1+k100|x2+k010|x3+k011+k101"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      {"n3-02-arc12",
       {{2}, {}, {}},
       "100+101>=1; 100+110>=1; 010+110>=1; 001+011>=1; 001+101>=1; "
       "001+101+100>=2; 100+110+010>=2; R>=3",
       {{{3, 0, 0, 2, 0, 2, 1}, "x1+k101+k110|x2+k'110|x3+k011+k'101"},
        {{3, 0, 0, 2, 1, 1, 0}, "x1+k101+k110|x2+k'110|x3+k001"},
        {{3, 0, 1, 1, 0, 2, 1}, "x1+k101+k110|x2+k010|x3+k011+k'101"},
        {{3, 0, 1, 1, 1, 1, 0}, "x1+k101+k110|x2+k010|x3+k001"},
        {{3, 1, 0, 1, 0, 1, 1}, "x1+k100|x2+k110|x3+k011+k101"},
        {{3, 1, 0, 1, 1, 0, 0}, "x1+k100|x2+k110|x3+k001"},
        {{3, 1, 1, 0, 0, 1, 1}, "x1+k100|x2+k010|x3+k011+k101"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      {"n3-03-arc12-arc13",
       {{2, 3}, {}, {}},
       "100+101>=1; 100+110>=1; 010+110>=1; 001+101>=1; "
       "001+101+100>=2; 100+110+010>=2; R>=3",
       {{{3, 0, 0, 2, 0, 2, 0}, "x1+k101+k110|x2+k'110|x3+k'101"},
        {{3, 0, 0, 2, 1, 1, 0}, "x1+k101+k110|x2+k'110|x3+k001"},
        {{3, 0, 1, 1, 0, 2, 0}, "x1+k101+k110|x2+k010|x3+k'101"},
        {{3, 0, 1, 1, 1, 1, 0}, "x1+k101+k110|x2+k010|x3+k001"},
        {{3, 1, 0, 1, 0, 1, 0}, "x1+k100|x2+k110|x3+k101"},
        {{3, 1, 0, 1, 1, 0, 0}, "x1+k100|x2+k110|x3+k001"},
        {{3, 1, 1, 0, 0, 1, 0}, "x1+k100|x2+k010|x3+k101"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      {"n3-04-clique12",
       {{2}, {1}, {}},
       "100+110>=1; 010+110>=1; 001+011>=1; 001+101>=1; R>=2; R+110>=3",
       {{{2, 0, 0, 1, 0, 1, 1}, "x1+x2+k110|x3+k011+k101"},
        {{2, 0, 0, 1, 1, 0, 0}, "x1+x2+k110|x3+k001"},
        {{3, 1, 1, 0, 0, 1, 1}, "x1+k100|x2+k010|x3+k011+k101"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      {"n3-05-path123",
       {{2}, {3}, {}},
       "100+101>=1; 100+110>=1; 010+110>=1; 001+011>=1; 100+110+010>=2; R>=3",
       {{{3, 0, 0, 2, 0, 1, 1}, "x1+k101+k110|x2+k'110|x3+k011"},
        {{3, 0, 0, 2, 1, 1, 0}, "x1+k101+k110|x2+k'110|x3+k001"},
        {{3, 0, 1, 1, 0, 1, 1}, "x1+k101+k110|x2+k010|x3+k011"},
        {{3, 0, 1, 1, 1, 1, 0}, "x1+k101+k110|x2+k010|x3+k001"},
        {{3, 1, 0, 1, 0, 0, 1}, "x1+k100|x2+k110|x3+k011"},
        {{3, 1, 0, 1, 1, 0, 0}, "x1+k100|x2+k110|x3+k001"},
        {{3, 1, 1, 0, 0, 0, 1}, "x1+k100|x2+k010|x3+k011"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      {"n3-06-clique12-arc23",
       {{2}, {1, 3}, {}},
       "100+110>=1; 010+110>=1; 001+011>=1; R>=2; R+110>=3",
       {{{2, 0, 0, 1, 0, 0, 1}, "x1+x2+k110|x3+k011"},
        {{2, 0, 0, 1, 1, 0, 0}, "x1+x2+k110|x3+k001"},
        {{3, 1, 1, 0, 0, 0, 1}, "x1+k100|x2+k010|x3+k011"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      {"n3-07-arc12-arc32",
       {{2}, {}, {2}},
       "100+101>=1; 100+110>=1; 001+011>=1; 001+101>=1; 001+101+100>=2; R>=3",
       {{{3, 0, 0, 1, 0, 2, 1}, "x1+k101+k110|x2|x3+k011+k'101"},
        {{3, 0, 0, 1, 1, 1, 0}, "x1+k101+k110|x2|x3+k001"},
        {{3, 1, 0, 0, 0, 1, 1}, "x1+k100|x2|x3+k101+k011"},
        {{3, 1, 0, 0, 1, 0, 0}, "x1+k100|x2|x3+k001"}}},
      {"n3-08-arc12-arc32-arc13",
       {{2, 3}, {}, {2}},
       "100+101>=1; 100+110>=1; 001+101>=1; 001+101+100>=2; R>=3",
       {{{3, 0, 0, 1, 0, 2, 0}, "x1+k101+k110|x2|x3+k'101"},
        {{3, 0, 0, 1, 1, 1, 0}, "x1+k101+k110|x2|x3+k001"},
        {{3, 1, 0, 0, 0, 1, 0}, "x1+k100|x2|x3+k101"},
        {{3, 1, 0, 0, 1, 0, 0}, "x1+k100|x2|x3+k001"}}},
      {"n3-09-clique12-arc13-arc23",
       {{2, 3}, {1, 3}, {}},
       "100+110>=1; 010+110>=1; R>=2; R+110>=3",
       {{{2, 0, 0, 1, 0, 0, 0}, "x1+x2+k110|x3"},
        {{3, 1, 1, 0, 0, 0, 0}, "x1+k100|x2+k010|x3"}}},
      {"n3-10-clique12-arc31",
       {{2}, {1}, {1}},
       "010+110>=1; 001+011>=1; 001+101>=1; R>=2; R+110>=3",
       {{{2, 0, 0, 1, 0, 1, 1}, "x1+x2+k110|x3+k101+k011"},
        {{2, 0, 0, 1, 1, 0, 0}, "x1+x2+k110|x3+k001"},
        {{3, 0, 1, 0, 0, 1, 1}, "x1|x2+k010|x3+k011+k101"},
        {{3, 0, 1, 0, 1, 0, 0}, "x1|x2+k010|x3+k001"}}},
      {"n3-11-clique13-clique23",
       {{3}, {3}, {1, 2}},
       "100+101>=1; 010+011>=1; R>=2; R+101+011>=3",
       {{{2, 0, 0, 0, 0, 1, 1}, "x1+k101|x2+x3+k011"},
        {{2, 1, 0, 0, 0, 0, 1}, "x1+k100|x2+x3+k011"},
        {{2, 0, 1, 0, 0, 1, 0}, "x2+k010|x1+x3+k101"},
        {{3, 1, 1, 0, 0, 0, 0}, "x1+k100|x2+k010|x3"}}},
      {"n3-12-cycle",
       {{2}, {3}, {1}},
       "100+101>=1; 010+110>=1; 001+011>=1; R>=2; R+110>=3; R+101>=3; R+011>=3",
       {{{2, 0, 0, 1, 0, 1, 1}, "x1+x2+k110+k101|x2+x3+k110+k011"},
        {{3, 0, 0, 1, 1, 1, 0}, "x1+k101|x2+k110|x3+k001"},
        {{3, 0, 1, 0, 0, 1, 1}, "x1+k101|x2+k010|x3+k011"},
        {{3, 0, 1, 0, 1, 1, 0}, "x1+k101|x2+k010|x3+k001"},
        {{3, 1, 0, 1, 0, 0, 1}, "x1+k100|x2+k110|x3+k011"},
        {{3, 1, 0, 1, 1, 0, 0}, "x1+k100|x2+k110|x3+k001"},
        {{3, 1, 1, 0, 0, 0, 1}, "x1+k100|x2+k010|x3+k011"},
        {{3, 1, 1, 0, 1, 0, 0}, "x1+k100|x2+k010|x3+k001"}}},
      {"n3-13-clique12-arc23-arc31",
       {{2}, {1, 3}, {1}},
       "010+110>=1; 001+011>=1; R>=2; R+110>=3",
       {{{2, 0, 0, 1, 0, 0, 1}, "x1+x2+k110|x3+k011"},
        {{2, 0, 0, 1, 1, 0, 0}, "x1+x2+k110|x3+k001"},
        {{3, 0, 1, 0, 0, 0, 1}, "x1|x2+k010|x3+k011"},
        {{3, 0, 1, 0, 1, 0, 0}, "x1|x2+k010|x3+k001"}}},
      {"n3-14-clique12-arc31-arc32",
       {{2}, {1}, {1, 2}},
       "001+011>=1; 001+101>=1; R>=2",
       {{{2, 0, 0, 0, 0, 1, 1}, "x1+x2|x3+k101+k011"},
        {{2, 0, 0, 0, 1, 0, 0}, "x1+x2|x3+k001"}}},
      {"n3-15-clique12-clique13-arc23",
       {{2, 3}, {1, 3}, {1}},
       "010+110>=1; R>=2",
       {{{2, 0, 0, 1, 0, 0, 0}, "x1+x2+k110|x3"},
        {{2, 0, 1, 0, 0, 0, 0}, "x1+x3|x2+k010"}}},
      {"n3-16-clique",
       {{2, 3}, {1, 3}, {1, 2}},
       "R>=1",
       {{{1, 0, 0, 0, 0, 0, 0}, "x1+x2+x3"}}},
  };
  std::vector<CatalogueEntry> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) out.push_back(build_entry(spec));
  return out;
}

}  // namespace

const std::vector<CatalogueEntry>& catalogue_entries() {
  static const std::vector<CatalogueEntry> entries = build_catalogue();
  return entries;
}

CatalogueReport verify_entries(const std::vector<CatalogueEntry>& entries) {
  CatalogueReport rep;
  rep.entries = static_cast<int>(entries.size());
  for (const auto& e : entries) {
    for (size_t vi = 0; vi < e.vertices.size(); ++vi) {
      ++rep.vertices;
      const auto& v = e.vertices[vi];
      auto fail = [&](const std::string& what) {
        rep.failures.push_back({e.name, static_cast<int>(vi), what});
      };
      const Verdict verdict = verify_private(v.scheme, e.graph);
      if (!verdict.ok()) fail("verifier: " + verdict.reason);
      const OracleReport oracle = oracle_check_private(v.scheme, e.graph);
      if (!oracle.decodable)
        fail("oracle: decoding fails at user " + std::to_string(oracle.decode_failure_user));
      if (!oracle.leaks.empty()) fail("oracle: " + oracle.leaks.front().witness);
      if (!(scheme_rate(v.scheme) == v.tuple)) fail("scheme rate differs from vertex tuple");
      std::vector<Rat> point{v.tuple.transmission_rate};
      for (const auto& pat : all_key_patterns(e.graph.n()))
        point.push_back(v.tuple.key_rate(pat.mask()));
      const lp::PointCheck pc = lp::check_point(e.region, point);
      if (!pc.satisfied) fail("vertex tuple violates the region");
      if (pc.satisfied && !lp::vertex_rank_check(e.region, point, e.dim()))
        fail("tight constraints do not have full rank");
    }
  }
  return rep;
}

CatalogueReport verify_catalogue() { return verify_entries(catalogue_entries()); }

std::string serialize_region(const lp::Problem& region, int n_users) {
  json j;
  json vars = json::array();
  for (int v = 0; v < region.num_vars(); ++v) vars.push_back(region.name(v));
  j["vars"] = std::move(vars);
  json cons = json::array();
  for (const auto& c : region.constraints()) {
    json terms = json::object();
    for (const auto& t : c.terms) terms[region.name(t.var)] = rat_to_string(t.coeff);
    cons.push_back({{"terms", std::move(terms)},
                    {"rel", c.rel == lp::Rel::Ge ? ">=" : c.rel == lp::Rel::Le ? "<=" : "="},
                    {"rhs", rat_to_string(c.rhs)}});
  }
  j["constraints"] = std::move(cons);
  (void)n_users;
  return j.dump();
}

lp::Problem parse_region(const std::string& text, int n_users) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ModelError("region: malformed JSON");
  lp::Problem p;
  p.add_var("R");
  for (const auto& pat : all_key_patterns(n_users)) p.add_var(pat.str());
  for (const auto& cj : j.at("constraints")) {
    std::vector<lp::Term> terms;
    for (auto it = cj.at("terms").begin(); it != cj.at("terms").end(); ++it) {
      const int var = p.var_by_name(it.key());
      if (var < 0) throw ModelError("region: unknown variable " + it.key());
      terms.push_back({var, rat_from_string(it.value().get<std::string>())});
    }
    const std::string rel = cj.at("rel").get<std::string>();
    p.add_constraint(std::move(terms),
                     rel == ">=" ? lp::Rel::Ge : rel == "<=" ? lp::Rel::Le : lp::Rel::Eq,
                     rat_from_string(cj.at("rhs").get<std::string>()));
  }
  return p;
}

std::vector<KeyAccessStructure> feasible_structures_of_size(const SideInfoGraph& g,
                                                            int size) {
  const auto pats = all_key_patterns(g.n());
  const int m = static_cast<int>(pats.size());
  if (size < 0 || size > m) return {};
  double space = 1;
  for (int k = 0; k < size; ++k) space *= double(m - k) / (k + 1);
  if (space > 5e6) throw ModelError("feasible_structures_of_size: enumeration too large");

  std::vector<KeyAccessStructure> out;
  std::vector<int> idx(size);
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (depth == size) {
      std::vector<KeyPattern> sel;
      for (int k : idx) sel.push_back(pats[k]);
      KeyAccessStructure ks(std::move(sel));
      if (is_feasible(g, ks).feasible) out.push_back(std::move(ks));
      return;
    }
    for (int k = from; k < m; ++k) {
      idx[depth] = k;
      self(self, k + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// --------------------------------------------------------- scalar search

namespace {

std::vector<int> code_to_column(int code, int q, int r) {
  std::vector<int> col(r);
  for (int k = 0; k < r; ++k) {
    col[k] = code % q;
    code /= q;
  }
  return col;
}

}  // namespace

ScalarSearchResult scalar_search(const SideInfoGraph& g, int q, int r,
                                 const std::map<uint32_t, int>& key_caps,
                                 bool canonical_pruning) {
  if (!is_prime(q)) throw ModelError("scalar_search: q must be prime");
  if (r < 1) throw ModelError("scalar_search: need at least one transmission");
  double colspace = std::pow(double(q), r);
  if (colspace > double(1 << 20)) throw ModelError("scalar_search: q^r too large");
  const int ncodes = static_cast<int>(colspace);  // column codes 0 .. q^r-1

  struct Block {
    uint32_t mask;
    int cap;
    std::vector<std::vector<int>> options;  // strictly increasing code tuples
  };
  std::vector<Block> blocks;
  double block_space = 1;
  for (const auto& [mask, cap] : key_caps) {
    if (cap < 0) throw ModelError("scalar_search: negative cap");
    Block b{mask, cap, {}};
    std::vector<int> cur;
    auto gen = [&](auto&& self, int from, int remaining) -> void {
      b.options.push_back(cur);
      if (remaining == 0) return;
      for (int code = from; code < ncodes; ++code) {
        cur.push_back(code);
        self(self, code + 1, remaining - 1);
        cur.pop_back();
      }
    };
    gen(gen, 1, std::min(cap, ncodes - 1));
    // order: by width, then lexicographically (generation order is DFS; fix it)
    std::sort(b.options.begin(), b.options.end(),
              [](const std::vector<int>& a, const std::vector<int>& c) {
                if (a.size() != c.size()) return a.size() < c.size();
                return a < c;
              });
    block_space *= static_cast<double>(b.options.size());
    blocks.push_back(std::move(b));
  }
  if (block_space > 4294967296.0) throw ModelError("scalar_search: search space too large");

  const int N = g.n();
  std::vector<int> g_code(N, 0);
  std::vector<int> block_choice(blocks.size(), -1);
  ScalarSearchResult result;

  auto build_scheme = [&]() {
    LinearScheme s;
    s.q = q;
    s.n = 1;
    s.r = r;
    for (int i = 0; i < N; ++i)
      s.G.push_back(GFMatrix::from_columns(q, r, {code_to_column(g_code[i], q, r)}));
    for (size_t b = 0; b < blocks.size(); ++b) {
      const auto& opt = blocks[b].options[block_choice[b]];
      if (opt.empty()) continue;
      std::vector<std::vector<int>> cols;
      for (int code : opt) cols.push_back(code_to_column(code, q, r));
      s.keys.push_back({KeyPattern(N, blocks[b].mask), GFMatrix::from_columns(q, r, cols)});
    }
    std::sort(s.keys.begin(), s.keys.end(), [](const KeyBlock& a, const KeyBlock& b) {
      return a.pattern.mask() < b.pattern.mask();
    });
    return s;
  };

  // prefix prune: a message column already inside the span of assigned
  // unknown columns can never satisfy the decode condition (spans only grow)
  auto prefix_dead = [&](int users_set, int blocks_set) {
    if (!canonical_pruning) return false;
    for (int i = 1; i <= users_set; ++i) {
      GFMatrix outside(q, r, 0);
      for (int j = 1; j <= users_set; ++j)
        if (!((g.a_mask(i) >> (j - 1)) & 1u))
          outside.append_column(code_to_column(g_code[j - 1], q, r));
      for (int b = 0; b < blocks_set; ++b) {
        if ((blocks[b].mask >> (i - 1)) & 1u) continue;
        for (int code : blocks[b].options[block_choice[b]])
          outside.append_column(code_to_column(code, q, r));
      }
      if (in_span(code_to_column(g_code[i - 1], q, r), outside)) return true;
    }
    return false;
  };

  auto dfs = [&](auto&& self, int slot) -> bool {
    ++result.nodes;
    const int user_slots = N;
    if (slot == user_slots + static_cast<int>(blocks.size())) {
      LinearScheme s = build_scheme();
      if (verify_private(s, g).ok()) {
        result.scheme = std::move(s);
        return true;
      }
      return false;
    }
    if (slot < user_slots) {
      for (int code = 1; code < ncodes; ++code) {  // zero columns cannot decode
        g_code[slot] = code;
        if (prefix_dead(slot + 1, 0)) continue;
        if (self(self, slot + 1)) return true;
      }
      g_code[slot] = 0;
      return false;
    }
    const int b = slot - user_slots;
    for (size_t opt = 0; opt < blocks[b].options.size(); ++opt) {
      block_choice[b] = static_cast<int>(opt);
      if (prefix_dead(N, b + 1)) continue;
      if (self(self, slot + 1)) return true;
    }
    block_choice[b] = -1;
    return false;
  };
  dfs(dfs, 0);
  return result;
}

// ------------------------------------------------------- named instances

SideInfoGraph circulant5_graph() {
  return SideInfoGraph(5, {{2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 2}});
}

LinearScheme circulant5_code() {
  // three transmissions masking consecutive message triples with chained keys
  return scheme_dsl(5, "x1+x2+x3+k10010+k11001|x2+x3+x4+k11001+k01110|x3+x4+x5+k01110+k00101");
}

SideInfoGraph cycle5_graph() {
  return SideInfoGraph(5, {{2, 5}, {1, 3}, {2, 4}, {3, 5}, {4, 1}});
}

LinearScheme cycle5_block2_code() {
  LinearScheme s;
  s.q = 2;
  s.n = 2;
  s.r = 5;
  auto col = [&](int row) {
    std::vector<int> c(5, 0);
    c[row] = 1;
    return c;
  };
  auto mat = [&](int c1, int c2) {
    return GFMatrix::from_columns(2, 5, {col(c1), col(c2)});
  };
  s.G = {mat(0, 2), mat(0, 3), mat(1, 3), mat(1, 4), mat(2, 4)};
  auto key = [&](const char* pat, int row) {
    s.keys.push_back({KeyPattern::from_string(pat), GFMatrix::from_columns(2, 5, {col(row)})});
  };
  key("11000", 0);
  key("00110", 1);
  key("10001", 2);
  key("01100", 3);
  key("00011", 4);
  std::sort(s.keys.begin(), s.keys.end(), [](const KeyBlock& a, const KeyBlock& b) {
    return a.pattern.mask() < b.pattern.mask();
  });
  s.validate();
  return s;
}

SideInfoGraph secure_cover_demo_graph() {
  return SideInfoGraph(5, {{2, 3, 4, 5}, {1, 3, 4, 5}, {1, 5}, {1, 2, 3, 5}, {2, 3}});
}

LinearScheme secure_cover_demo_scheme() {
  return scheme_dsl(5, "x1+x2+x4|x3+x5");
}

SideInfoGraph no_cover_demo_graph() {
  return SideInfoGraph(
      7, {{2, 3, 7}, {3, 4, 6}, {4, 5, 7}, {1, 6, 7}, {1, 2, 4}, {1, 3, 5}, {2, 5, 6}});
}

LinearScheme no_cover_demo_scheme() {
  const std::vector<std::vector<int>> rows = {
      {1, 1, 1, 0, 0, 0, 1}, {0, 1, 1, 1, 0, 1, 0}, {0, 0, 1, 1, 1, 0, 1},
      {1, 0, 0, 1, 0, 1, 1}, {1, 1, 0, 1, 1, 0, 0}, {1, 0, 1, 0, 1, 1, 0},
      {0, 1, 0, 0, 1, 1, 1}};
  LinearScheme s;
  s.q = 2;
  s.n = 1;
  s.r = 7;
  for (int i = 0; i < 7; ++i) {
    GFMatrix gi(2, 7, 1);
    for (int row = 0; row < 7; ++row) gi.set(row, 0, rows[row][i]);
    s.G.push_back(std::move(gi));
  }
  s.validate();
  return s;
}

SideInfoGraph four_user_gap_graph() {
  return SideInfoGraph(4, {{2, 3}, {4}, {1, 2}, {1, 3}});
}

LinearScheme four_user_gap_scheme() {
  LinearScheme s;
  s.q = 2;
  s.n = 2;
  s.r = 5;
  auto col = [](std::initializer_list<int> ones) {
    std::vector<int> c(5, 0);
    for (int r : ones) c[r] = 1;
    return c;
  };
  auto mat = [&](std::initializer_list<int> a, std::initializer_list<int> b) {
    return GFMatrix::from_columns(2, 5, {col(a), col(b)});
  };
  s.G = {mat({0}, {4}), mat({0, 1}, {2}), mat({3}, {4}), mat({1}, {2, 3})};
  auto key = [&](const char* pat, std::vector<std::vector<int>> cols) {
    s.keys.push_back({KeyPattern::from_string(pat), GFMatrix::from_columns(2, 5, cols)});
  };
  key("1100", {col({0, 1})});
  key("1001", {col({0})});
  key("0101", {col({1}), col({2, 3})});
  key("0110", {col({2})});
  key("0011", {col({3})});
  key("1010", {col({4})});
  std::sort(s.keys.begin(), s.keys.end(), [](const KeyBlock& a, const KeyBlock& b) {
    return a.pattern.mask() < b.pattern.mask();
  });
  s.validate();
  return s;
}

std::map<uint32_t, int> four_user_gap_caps() {
  return {{pattern_mask("1001"), 1}, {pattern_mask("1010"), 1}, {pattern_mask("1100"), 1},
          {pattern_mask("0101"), 2}, {pattern_mask("0110"), 1}, {pattern_mask("0011"), 1}};
}

std::vector<KeyAccessStructure> cycle5_size3_structures() {
  auto rot_set = [](const std::vector<int>& users, int shift) {
    uint32_t mask = 0;
    for (int u : users) mask |= 1u << ((u - 1 + shift) % 5);
    return mask;
  };
  const std::vector<std::vector<std::vector<int>>> families = {
      {{1}, {2, 3}, {4, 5}},          {{5, 1}, {1, 2}, {3, 4}},
      {{5, 1, 2}, {2, 3}, {5, 4}},    {{1, 2}, {2, 3, 4}, {1, 5, 4}},
      {{5, 1, 2}, {2, 3, 4}, {5, 4, 3}}, {{1, 2, 3}, {1, 5, 4}, {5, 4, 2, 3}}};
  std::vector<std::vector<uint32_t>> seen;
  for (int shift = 0; shift < 5; ++shift)
    for (const auto& fam : families) {
      std::vector<uint32_t> masks;
      for (const auto& setof : fam) masks.push_back(rot_set(setof, shift));
      std::sort(masks.begin(), masks.end());
      seen.push_back(std::move(masks));
    }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  std::vector<KeyAccessStructure> out;
  for (const auto& masks : seen) {
    std::vector<KeyPattern> pats;
    for (uint32_t m : masks) pats.emplace_back(5, m);
    out.emplace_back(std::move(pats));
  }
  return out;
}

FourUserGapReport four_user_gap_demo(bool include_q3) {
  FourUserGapReport rep;
  const SideInfoGraph g = four_user_gap_graph();
  const LinearScheme s = four_user_gap_scheme();
  rep.scheme_valid = verify_private(s, g).ok();
  rep.rate = scheme_rate(s);
  RateTuple expected;
  expected.n_users = 4;
  expected.transmission_rate = Rat(5, 2);
  expected.key_rates = {{pattern_mask("1001"), Rat(1, 2)}, {pattern_mask("1010"), Rat(1, 2)},
                        {pattern_mask("1100"), Rat(1, 2)}, {pattern_mask("0101"), Rat(1)},
                        {pattern_mask("0110"), Rat(1, 2)}, {pattern_mask("0011"), Rat(1, 2)}};
  rep.rate_matches = rep.rate == expected;
  rep.scalar_none_q2 = !scalar_search(g, 2, 2, four_user_gap_caps()).scheme.has_value();
  if (include_q3)
    rep.scalar_none_q3 = !scalar_search(g, 3, 2, four_user_gap_caps()).scheme.has_value();
  return rep;
}

}  // namespace pic
