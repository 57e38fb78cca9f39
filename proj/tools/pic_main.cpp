// pic: command-line front end for the private index coding toolkit.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pic/bounds.hpp"
#include "pic/catalogue.hpp"
#include "pic/coloring.hpp"
#include "pic/feasibility.hpp"
#include "pic/oracle.hpp"
#include "pic/verifier.hpp"
#include "pic/weak_privacy.hpp"

using namespace pic;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitError = 2;

struct Output {
  bool as_json = false;
  bool approx = false;
  json report;
  std::ostringstream human;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string rat(const Rat& r) const {
    std::string s = rat_to_string(r);
    if (approx && r.get_den() != 1) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4g", rat_to_double(r));
      s += " (~" + std::string(buf) + ")";
    }
    return s;
  }

  int finish(int code) {
    report["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["exit_code"] = code;
    if (as_json)
      std::cout << report.dump(2) << "\n";
    else
      std::cout << human.str();
    return code;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SideInfoGraph load_graph(const std::string& path) { return parse_graph(slurp(path)); }

uint64_t state_limit_from_env() {
  if (const char* env = std::getenv("PIC_STATE_LIMIT")) {
    const long long v = std::atoll(env);
    if (v > 0) return static_cast<uint64_t>(v);
  }
  return kDefaultStateLimit;
}

json verdict_json(const Verdict& v) {
  json j;
  switch (v.status) {
    case Verdict::Status::Ok: j["status"] = "ok"; break;
    case Verdict::Status::DecodeViolation:
      j["status"] = "decode_violation";
      j["user"] = v.user;
      j["coordinate"] = v.coordinate;
      break;
    case Verdict::Status::PrivacyViolation:
      j["status"] = "privacy_violation";
      j["user"] = v.user;
      break;
  }
  j["reason"] = v.reason;
  return j;
}

json rate_tuple_json(const RateTuple& t) { return json::parse(serialize_rate_tuple(t)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis toolkit for private index coding"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.as_json, "emit a JSON report on stdout");
  app.add_flag("--approx", out.approx, "append decimal renderings to exact rationals");

  std::string graph_path, scheme_path, rates_path, ks_csv, ks_file, mode = "private";
  std::string caps_csv, emit_path, dump_dir, support_csv, catalogue_cmd;
  uint64_t state_limit = 0;
  int fold_b = 1, size_k = 0, search_q = 2, search_r = 1;
  bool triples = false, exhaustive = false, with_q3 = false;

  auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("--graph", graph_path, "graph JSON file")->required();
  };

  auto* c_feasible = app.add_subcommand("feasible", "decide whether a key access structure suffices");
  add_graph(c_feasible);
  c_feasible->add_option("--ks", ks_csv, "comma-separated key patterns, e.g. 110,101");
  c_feasible->add_option("--ks-file", ks_file, "file with one pattern per line");

  auto* c_canon = app.add_subcommand("canonical-scheme", "emit the one-time-pad construction");
  add_graph(c_canon);
  c_canon->add_option("--ks", ks_csv, "comma-separated key patterns");
  c_canon->add_option("--ks-file", ks_file, "file with one pattern per line");
  c_canon->add_option("-o,--output", emit_path, "write the scheme JSON here");

  auto* c_verify = app.add_subcommand("verify", "check a keyed linear scheme");
  add_graph(c_verify);
  c_verify->add_option("--scheme", scheme_path, "scheme JSON file")->required();

  auto* c_vweak = app.add_subcommand("verify-weak", "check a keyless scheme per-message");
  add_graph(c_vweak);
  c_vweak->add_option("--scheme", scheme_path, "scheme JSON file")->required();

  auto* c_oracle = app.add_subcommand("oracle-check", "exhaustive ground-truth check");
  add_graph(c_oracle);
  c_oracle->add_option("--scheme", scheme_path, "scheme (or multicast scheme) JSON file")->required();
  c_oracle->add_option("--mode", mode, "private|weak|multicast")->default_val("private");
  c_oracle->add_option("--state-limit", state_limit, "cap on enumerated states");

  auto* c_mais = app.add_subcommand("mais", "maximum acyclic induced subgraph");
  add_graph(c_mais);

  auto* c_krlp = app.add_subcommand("keyrate-lp", "minimum total key rate LP");
  add_graph(c_krlp);
  c_krlp->add_flag("--triples", triples, "include the triple covering constraints");

  auto* c_bracket = app.add_subcommand("sum-key-bracket", "bracket the minimum total key rate");
  add_graph(c_bracket);

  auto* c_pm = app.add_subcommand("polymatroid-check", "outer-bound feasibility of a rate tuple");
  add_graph(c_pm);
  c_pm->add_option("--rates", rates_path, "rate tuple JSON file")->required();
  c_pm->add_flag("--exhaustive-pm4", exhaustive, "use the full disjoint-extension family");
  c_pm->add_option("--key-support", support_csv, "restrict key patterns, comma separated");

  auto* c_chif = app.add_subcommand("chi-f", "fractional chromatic number of the conflict graph");
  add_graph(c_chif);

  auto* c_bfold = app.add_subcommand("b-fold", "b-fold chromatic number of the conflict graph");
  add_graph(c_bfold);
  c_bfold->add_option("--b", fold_b, "fold")->required();

  auto* c_multi = app.add_subcommand("multicast", "minimum multicast sessions");
  add_graph(c_multi);
  c_multi->add_option("--emit-scheme", emit_path, "write the constructed scheme JSON here");

  auto* c_cover = app.add_subcommand("secure-clique-cover", "search for a secure clique cover");
  add_graph(c_cover);
  c_cover->add_option("--emit-scheme", emit_path, "write the cover scheme JSON here");

  auto* c_wsub = app.add_subcommand("weak-subset", "pairwise keyless-privacy obstruction");
  add_graph(c_wsub);

  auto* c_wnec = app.add_subcommand("weak-necessary", "strengthened keyless-privacy obstruction");
  add_graph(c_wnec);

  auto* c_cat = app.add_subcommand("catalogue", "catalogue operations: verify, list, dump");
  c_cat->add_option("action", catalogue_cmd, "verify|list|dump")->required();
  c_cat->add_option("--dir", dump_dir, "output directory for dump");

  auto* c_search = app.add_subcommand("scalar-search", "exhaustive single-block code search");
  add_graph(c_search);
  c_search->add_option("--q", search_q, "field size (prime)")->default_val(2);
  c_search->add_option("--r", search_r, "number of transmissions")->required();
  c_search->add_option("--caps", caps_csv, "width caps, e.g. 110=1,101=2")->required();
  c_search->add_option("-o,--output", emit_path, "write any found scheme JSON here");

  auto* c_four = app.add_subcommand("four-user-demo", "block-coding gap demonstration");
  c_four->add_flag("--q3", with_q3, "also certify absence over GF(3)");

  auto* c_structs = app.add_subcommand("structures", "feasible key access structures of a size");
  add_graph(c_structs);
  c_structs->add_option("--size", size_k, "structure size")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    out.report["command"] = app.get_subcommands().front()->get_name();
    if (!graph_path.empty()) out.report["graph"] = graph_path;

    auto load_ks = [&](int n_users) {
      std::string csv = ks_csv;
      if (!ks_file.empty()) {
        std::istringstream lines(slurp(ks_file));
        std::string line;
        while (std::getline(lines, line))
          if (!line.empty()) csv += (csv.empty() ? "" : ",") + line;
      }
      return parse_key_structure(csv, n_users);
    };

    if (app.got_subcommand(c_feasible)) {
      const SideInfoGraph g = load_graph(graph_path);
      const FeasibilityResult r = is_feasible(g, load_ks(g.n()));
      out.report["feasible"] = r.feasible;
      if (r.witness) out.report["witness"] = {r.witness->first, r.witness->second};
      out.human << (r.feasible ? "feasible\n" : "infeasible") ;
      if (!r.feasible)
        out.human << ", uncovered pair (" << r.witness->first << "," << r.witness->second
                  << ")\n";
      return out.finish(r.feasible ? kExitOk : kExitProperty);
    }

    if (app.got_subcommand(c_canon)) {
      const SideInfoGraph g = load_graph(graph_path);
      const LinearScheme s = canonical_scheme(g, load_ks(g.n()));
      const std::string text = serialize_scheme(s);
      out.report["scheme"] = json::parse(text);
      out.report["rate"] = rate_tuple_json(scheme_rate(s));
      if (!emit_path.empty()) std::ofstream(emit_path) << text << "\n";
      out.human << "canonical scheme with " << s.r << " transmissions";
      if (!emit_path.empty()) out.human << " written to " << emit_path;
      out.human << "\n";
      return out.finish(kExitOk);
    }

    if (app.got_subcommand(c_verify) || app.got_subcommand(c_vweak)) {
      const SideInfoGraph g = load_graph(graph_path);
      const LinearScheme s = parse_scheme(slurp(scheme_path));
      const Verdict v = app.got_subcommand(c_verify) ? verify_private(s, g)
                                                     : verify_weak_private(s, g);
      out.report["verdict"] = verdict_json(v);
      out.report["rate"] = rate_tuple_json(scheme_rate(s));
      out.human << v.reason << "\n";
      return out.finish(v.ok() ? kExitOk : kExitProperty);
    }

    if (app.got_subcommand(c_oracle)) {
      const SideInfoGraph g = load_graph(graph_path);
      const uint64_t limit = state_limit ? state_limit : state_limit_from_env();
      bool clean = false;
      if (mode == "weak") {
        const WeakOracleReport rep = oracle_check_weak(parse_scheme(slurp(scheme_path)), g, limit);
        clean = rep.clean();
        out.report["decodable"] = rep.decodable;
        out.report["enumerated_states"] = rep.enumerated_states;
        json pairs = json::array();
        for (const auto& p : rep.pairs)
          pairs.push_back({{"observer", p.i}, {"message", p.j}, {"leaks", p.leaks},
                           {"witness", p.witness}});
        out.report["pairs"] = std::move(pairs);
        out.human << (clean ? "clean" : "violations found") << " over "
                  << rep.enumerated_states << " states\n";
      } else {
        OracleReport rep;
        if (mode == "multicast")
          rep = oracle_check_multicast(parse_multicast(slurp(scheme_path)), g, limit);
        else if (mode == "private")
          rep = oracle_check_private(parse_scheme(slurp(scheme_path)), g, limit);
        else
          throw ModelError("unknown oracle mode: " + mode);
        clean = rep.clean();
        out.report["decodable"] = rep.decodable;
        if (!rep.decodable) out.report["decode_failure_user"] = rep.decode_failure_user;
        json leaks = json::array();
        for (const auto& l : rep.leaks) leaks.push_back({{"user", l.user}, {"witness", l.witness}});
        out.report["leaks"] = std::move(leaks);
        out.report["enumerated_states"] = rep.enumerated_states;
        out.human << (clean ? "clean" : "violations found") << " over "
                  << rep.enumerated_states << " states\n";
      }
      return out.finish(clean ? kExitOk : kExitProperty);
    }

    if (app.got_subcommand(c_mais)) {
      const MaisResult r = mais(load_graph(graph_path));
      out.report["size"] = r.size;
      out.report["witness"] = r.witness;
      out.human << "maximum acyclic induced subgraph: " << r.size << "\n";
      return out.finish(kExitOk);
    }

    if (app.got_subcommand(c_krlp)) {
      const lp::Result r = keyrate_lp(load_graph(graph_path), triples);
      if (r.status != lp::Status::Optimal) throw ModelError("key-rate LP did not solve");
      out.report["value"] = rat_to_string(r.value);
      out.human << "minimum total key rate: " << out.rat(r.value) << "\n";
      return out.finish(kExitOk);
    }

    if (app.got_subcommand(c_bracket)) {
      const SumKeyBracket b = sum_keyrate_bracket(load_graph(graph_path));
      out.report["lower"] = rat_to_string(b.lower);
      out.report["lower_source"] =
          b.lower_tag == SumKeyLowerTag::KeyrateLp ? "keyrate_lp" : "mais-1";
      out.report["upper"] = rat_to_string(b.upper);
      out.human << "total key rate in [" << out.rat(b.lower) << ", " << out.rat(b.upper)
                << "] (lower from " << out.report["lower_source"].get<std::string>() << ")\n";
      return out.finish(kExitOk);
    }

    if (app.got_subcommand(c_pm)) {
      const SideInfoGraph g = load_graph(graph_path);
      const RateTuple t = parse_rate_tuple(slurp(rates_path));
      std::optional<std::vector<KeyPattern>> support;
      if (!support_csv.empty()) {
        std::vector<KeyPattern> pats;
        for (const auto& p : parse_key_structure(support_csv, g.n()).patterns())
          pats.push_back(p);
        support = pats;
      }
      auto inst = PolymatroidInstance::make(g, t, support,
                                            exhaustive ? PmMode::Exhaustive : PmMode::Elemental);
      const PolymatroidVerdict v = polymatroid_check(inst);
      out.report["passes"] = v.passes;
      out.human << (v.passes ? "passes the outer bound\n"
                             : "outer bound violated: the tuple is not achievable\n");
      return out.finish(v.passes ? kExitOk : kExitProperty);
    }

    if (app.got_subcommand(c_chif)) {
      const FractionalChromatic r =
          fractional_chromatic(conflict_graph(load_graph(graph_path)));
      out.report["value"] = rat_to_string(r.value);
      json w = json::object();
      for (const auto& [mask, weight] : r.weights)
        w[std::to_string(mask)] = rat_to_string(weight);
      out.report["weights"] = std::move(w);
      out.human << "fractional chromatic number (conflict graph): " << out.rat(r.value) << "\n";
      return out.finish(kExitOk);
    }

    if (app.got_subcommand(c_bfold)) {
      const BFoldResult r = b_fold_chromatic(conflict_graph(load_graph(graph_path)), fold_b);
      out.report["palette"] = r.palette;
      out.report["fold"] = fold_b;
      out.human << fold_b << "-fold chromatic number (conflict graph): " << r.palette << "\n";
      return out.finish(kExitOk);
    }

    if (app.got_subcommand(c_multi)) {
      const SideInfoGraph g = load_graph(graph_path);
      const MulticastPlan plan = multicast_min_sessions(g);
      out.report["kappa"] = rat_to_string(plan.kappa);
      out.report["fold"] = plan.fold;
      out.report["palette"] = plan.palette;
      out.human << "minimum sessions per block: " << out.rat(plan.kappa) << " (palette "
                << plan.palette << " over " << plan.fold << " blocks)\n";
      if (!emit_path.empty()) {
        const MulticastScheme ms = multicast_scheme_from_coloring(g, plan.coloring);
        std::ofstream(emit_path) << serialize_multicast(ms) << "\n";
        out.human << "scheme written to " << emit_path << "\n";
      }
      return out.finish(kExitOk);
    }

    if (app.got_subcommand(c_cover)) {
      const SideInfoGraph g = load_graph(graph_path);
      const auto cover = secure_clique_cover(g);
      out.report["found"] = cover.has_value();
      if (cover) {
        out.report["blocks"] = cover->blocks;
        out.human << "secure clique cover:";
        for (const auto& b : cover->blocks) {
          out.human << " {";
          for (size_t i = 0; i < b.size(); ++i) out.human << (i ? "," : "") << b[i];
          out.human << "}";
        }
        out.human << "\n";
        if (!emit_path.empty()) {
          std::ofstream(emit_path) << serialize_scheme(scheme_from_secure_cover(g, *cover))
                                   << "\n";
          out.human << "scheme written to " << emit_path << "\n";
        }
      } else {
        out.human << "no secure clique cover exists\n";
      }
      return out.finish(cover ? kExitOk : kExitProperty);
    }

    if (app.got_subcommand(c_wsub)) {
      const auto w = subset_condition_violation(load_graph(graph_path));
      out.report["violation"] = w.has_value();
      if (w) {
        out.report["witness"] = {w->first, w->second};
        out.human << "keyless per-message privacy impossible: witness pair (" << w->first
                  << "," << w->second << ")\n";
      } else {
        out.human << "no pairwise obstruction\n";
      }
      return out.finish(w ? kExitProperty : kExitOk);
    }

    if (app.got_subcommand(c_wnec)) {
      const auto cert = necessary_condition_infeasible(load_graph(graph_path));
      out.report["infeasible"] = cert.has_value();
      if (cert) {
        out.report["user"] = cert->user;
        json per = json::object();
        for (const auto& [mask, jk] : cert->per_subset)
          per[std::to_string(mask)] = {jk.first, jk.second};
        out.report["certificates"] = std::move(per);
        out.human << "keyless per-message privacy impossible: every covering subset of user "
                  << cert->user << " is blocked\n";
      } else {
        out.human << "inconclusive\n";
      }
      return out.finish(cert ? kExitProperty : kExitOk);
    }

    if (app.got_subcommand(c_cat)) {
      if (catalogue_cmd == "verify") {
        const CatalogueReport rep = verify_catalogue();
        out.report["entries"] = rep.entries;
        out.report["vertices"] = rep.vertices;
        json fails = json::array();
        for (const auto& f : rep.failures)
          fails.push_back({{"entry", f.entry}, {"vertex", f.vertex_index}, {"what", f.what}});
        out.report["failures"] = std::move(fails);
        out.human << rep.entries << " entries, " << rep.vertices << " vertices, "
                  << rep.failures.size() << " failures\n";
        for (const auto& f : rep.failures)
          out.human << "  " << f.entry << " vertex " << f.vertex_index << ": " << f.what << "\n";
        return out.finish(rep.ok() ? kExitOk : kExitProperty);
      }
      if (catalogue_cmd == "list") {
        json list = json::array();
        for (const auto& e : catalogue_entries()) {
          list.push_back({{"name", e.name},
                          {"users", e.graph.n()},
                          {"inequalities", e.region.num_constraints()},
                          {"vertices", e.vertices.size()}});
          out.human << e.name << ": " << e.graph.n() << " users, "
                    << e.region.num_constraints() << " inequalities, " << e.vertices.size()
                    << " vertices\n";
        }
        out.report["entries"] = std::move(list);
        return out.finish(kExitOk);
      }
      if (catalogue_cmd == "dump") {
        if (dump_dir.empty()) throw ModelError("catalogue dump needs --dir");
        namespace fs = std::filesystem;
        for (const auto& e : catalogue_entries()) {
          const fs::path dir = fs::path(dump_dir) / e.name;
          fs::create_directories(dir);
          std::ofstream(dir / "graph.json") << serialize_graph(e.graph) << "\n";
          std::ofstream(dir / "region.json") << serialize_region(e.region, e.graph.n()) << "\n";
          for (size_t vi = 0; vi < e.vertices.size(); ++vi) {
            char stem[32];
            std::snprintf(stem, sizeof(stem), "vertex%02zu", vi);
            std::ofstream(dir / (std::string(stem) + "-rate.json"))
                << serialize_rate_tuple(e.vertices[vi].tuple) << "\n";
            std::ofstream(dir / (std::string(stem) + "-scheme.json"))
                << serialize_scheme(e.vertices[vi].scheme) << "\n";
          }
        }
        out.human << "catalogue written under " << dump_dir << "\n";
        return out.finish(kExitOk);
      }
      throw ModelError("unknown catalogue action: " + catalogue_cmd);
    }

    if (app.got_subcommand(c_search)) {
      const SideInfoGraph g = load_graph(graph_path);
      std::map<uint32_t, int> caps;
      std::stringstream ss(caps_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const size_t eq = item.find('=');
        if (eq == std::string::npos) throw ModelError("caps must look like 110=1");
        const KeyPattern p = KeyPattern::from_string(item.substr(0, eq));
        if (p.n() != g.n()) throw ModelError("cap pattern length mismatch");
        caps[p.mask()] = std::stoi(item.substr(eq + 1));
      }
      const ScalarSearchResult r = scalar_search(g, search_q, search_r, caps);
      out.report["found"] = r.scheme.has_value();
      out.report["nodes"] = r.nodes;
      if (r.scheme) {
        out.report["scheme"] = json::parse(serialize_scheme(*r.scheme));
        if (!emit_path.empty()) std::ofstream(emit_path) << serialize_scheme(*r.scheme) << "\n";
        out.human << "found a valid single-block code (" << r.nodes << " nodes)\n";
      } else {
        out.human << "no valid single-block code exists under the caps (" << r.nodes
                  << " nodes)\n";
      }
      return out.finish(r.scheme ? kExitOk : kExitProperty);
    }

    if (app.got_subcommand(c_four)) {
      const FourUserGapReport rep = four_user_gap_demo(with_q3);
      out.report["scheme_valid"] = rep.scheme_valid;
      out.report["rate"] = rate_tuple_json(rep.rate);
      out.report["rate_matches"] = rep.rate_matches;
      out.report["scalar_none_q2"] = rep.scalar_none_q2;
      if (rep.scalar_none_q3) out.report["scalar_none_q3"] = *rep.scalar_none_q3;
      out.human << "block-2 code valid: " << (rep.scheme_valid ? "yes" : "no")
                << ", rate matches: " << (rep.rate_matches ? "yes" : "no")
                << ", no r=2 GF(2) code: " << (rep.scalar_none_q2 ? "yes" : "no") << "\n";
      return out.finish(rep.ok() ? kExitOk : kExitProperty);
    }

    if (app.got_subcommand(c_structs)) {
      const SideInfoGraph g = load_graph(graph_path);
      const auto found = feasible_structures_of_size(g, size_k);
      out.report["count"] = found.size();
      json list = json::array();
      for (const auto& ks : found) {
        json pats = json::array();
        for (const auto& p : ks.patterns()) pats.push_back(p.str());
        list.push_back(std::move(pats));
      }
      out.report["structures"] = std::move(list);
      out.human << found.size() << " feasible structures of size " << size_k << "\n";
      return out.finish(kExitOk);
    }

    throw ModelError("unhandled subcommand");
  } catch (const std::exception& e) {
    if (out.as_json) {
      out.report["error"] = e.what();
      return out.finish(kExitError);
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
