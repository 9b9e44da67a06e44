#pragma once

// Command-line surface.  Every command assembles a RunReport: inputs echoed,
// results, cross-check verdicts and wall time; --json emits it as JSON.
// Exit codes: 0 success / relation holds, 1 checked and fails, 2 resource
// bound exceeded, 3 invalid input.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ramsey/degrees.hpp"
#include "ramsey/devlin.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/pstruct.hpp"
#include "ramsey/tangent.hpp"
#include "ramsey/tournament.hpp"
#include "ramsey/trees.hpp"

namespace ramsey::cli {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFails = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInvalid = 3;

struct Report {
  json body;
  std::vector<json> cross_checks;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Report(const std::string& command) { body["command"] = command; }

  void check(const std::string& name, bool ok, const std::string& detail) {
    cross_checks.push_back(json{{"name", name}, {"ok", ok}, {"detail", detail}});
  }

  bool all_ok() const {
    for (const json& c : cross_checks)
      if (!c["ok"].get<bool>()) return false;
    return true;
  }

  json finish() {
    body["crossChecks"] = cross_checks;
    body["wallMs"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return body;
  }
};

inline Tournament load_tournament(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tournament file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tournament(buf.str());
}

inline json subtree_json(const StrongSubtree& s) {
  json j;
  j["levels"] = s.ambient_levels();
  j["nodes"] = json::array();
  for (const std::vector<Node>& lvl : s.levels) j["nodes"].push_back(lvl);
  return j;
}

struct Options {
  bool json_out = false;
  bool csv_out = false;
  bool no_oracle = false;
  int threads = 1;
  std::uint64_t budget = std::uint64_t{1} << 24;
};

inline void emit(Report& rep, const Options& opt, std::ostream& out,
                 const std::string& human) {
  if (opt.json_out) {
    out << rep.finish().dump(2) << "\n";
  } else {
    out << human;
    for (const json& c : rep.cross_checks)
      out << "check " << c["name"].get<std::string>() << ": "
          << (c["ok"].get<bool>() ? "ok" : "FAIL") << " (" << c["detail"].get<std::string>()
          << ")\n";
  }
}

inline int cmd_enum(int n, const Options& opt, std::ostream& out) {
  Report rep("enum");
  rep.body["inputs"] = json{{"n", n}};
  if (n < 1 || n > 6)
    throw budget_error("enum: n outside the supported range", std::to_string(n), "6");
  std::ostringstream human;
  json rows = json::array();
  long sum_t = 0;
  if (opt.csv_out)
    human << "canonical,aut,t,T\n";
  else
    human << "local orders on " << n << " vertices\n";
  for (const Tournament& t : enumerate_tournaments(n)) {
    if (!is_local_order(t)) continue;
    const long aut = automorphism_count(t);
    const long small = small_ramsey_degree(t);
    const BigInt big = big_ramsey_degree(t);
    sum_t += small;
    rows.push_back(json{{"canonical", tournament_signature(t)},
                        {"aut", aut},
                        {"t", small},
                        {"T", big.str()}});
    if (opt.csv_out)
      human << tournament_signature(t) << ',' << aut << ',' << small << ',' << big.str() << "\n";
    else
      human << "  " << tournament_signature(t) << "  |Aut|=" << aut << "  t=" << small
            << "  T=" << big.str() << "\n";
  }
  const long expect = 1L << n;
  rep.body["results"] = json{{"rows", rows}, {"sumT", sum_t}};
  rep.check("identity sum t = 2^n", sum_t == expect,
            std::to_string(sum_t) + " vs " + std::to_string(expect));
  human << "sum t = " << sum_t << " (2^" << n << " = " << expect << ")\n";
  emit(rep, opt, out, human.str());
  return rep.all_ok() ? kExitOk : kExitFails;
}

inline int cmd_degree(const std::string& path, const Options& opt, std::ostream& out) {
  Report rep("degree");
  rep.body["inputs"] = json{{"file", path}};
  const Tournament t = load_tournament(path);
  if (!is_local_order(t)) throw std::invalid_argument("degree: input is not a local order");
  const long small = small_ramsey_degree(t);
  const int ext = enumerate_extensions(t).count();
  rep.body["results"] = json{{"t", small}, {"extensions", ext}};
  rep.check("formula vs extension enumeration", small == ext,
            std::to_string(small) + " vs " + std::to_string(ext));
  emit(rep, opt, out, "t = " + std::to_string(small) + "\n");
  return rep.all_ok() ? kExitOk : kExitFails;
}

inline int cmd_big_degree(const std::string& path, const Options& opt, std::ostream& out) {
  Report rep("big-degree");
  rep.body["inputs"] = json{{"file", path}};
  const Tournament t = load_tournament(path);
  if (!is_local_order(t)) throw std::invalid_argument("big-degree: input is not a local order");
  const long small = small_ramsey_degree(t);
  const BigInt tan = tangent_derivative(2 * static_cast<unsigned>(t.size()) - 1, !opt.no_oracle);
  const BigInt big = BigInt(small) * tan;
  rep.body["results"] =
      json{{"t", small}, {"tangent", tan.str()}, {"T", big.str()}};
  if (!opt.no_oracle)
    rep.check("tangent dual route", true, "Bernoulli and zigzag agree at order " +
                                              std::to_string(2 * t.size() - 1));
  emit(rep, opt, out, "T = " + big.str() + "\n");
  return rep.all_ok() ? kExitOk : kExitFails;
}

inline int cmd_extensions(const std::string& path, const Options& opt, std::ostream& out) {
  Report rep("extensions");
  rep.body["inputs"] = json{{"file", path}};
  const Tournament t = load_tournament(path);
  const ExtensionSet ext = enumerate_extensions(t);
  json words = json::array();
  std::ostringstream human;
  human << ext.count() << " extensions\n";
  for (const PnStructure& w : ext.representatives) {
    words.push_back(to_word(w));
    human << "  " << to_word(w) << "\n";
  }
  rep.body["results"] = json{{"count", ext.count()}, {"words", words}};
  if (!ext.representatives.empty()) {
    const long aut = automorphism_count(t);
    rep.check("count = 2n/|Aut|", ext.count() * aut == 2L * t.size(),
              std::to_string(ext.count()) + " * " + std::to_string(aut) + " vs " +
                  std::to_string(2 * t.size()));
  }
  emit(rep, opt, out, human.str());
  return rep.all_ok() ? kExitOk : kExitFails;
}

inline int cmd_arrow(const std::string& path, bool prune, const Options& opt, std::ostream& out) {
  Report rep("arrow");
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open query file: " + path);
  json q = json::parse(in, nullptr, true, true);
  const auto dir = [&path]() {
    const std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string() : path.substr(0, slash + 1);
  }();
  auto load_ref = [&dir](const json& v) {
    const std::string ref = v.get<std::string>();
    return load_tournament(ref.empty() || ref[0] == '/' ? ref : dir + ref);
  };
  ArrowQuery query{load_ref(q.at("Z")), load_ref(q.at("Y")), load_ref(q.at("X")),
                   q.at("k").get<int>(), q.at("l").get<int>()};
  rep.body["inputs"] = json{{"file", path}, {"k", query.k}, {"l", query.l}};
  ArrowOptions aopt;
  aopt.budget = opt.budget;
  aopt.threads = opt.threads;
  aopt.symmetry_pruning = prune;
  const ArrowResult res = arrow_check(query, aopt);
  rep.body["results"] = json{{"holds", res.holds},
                             {"coloringsExamined", res.colorings_examined}};
  std::ostringstream human;
  if (res.holds) {
    human << "holds (" << res.colorings_examined << " colorings examined)\n";
  } else {
    const Coloring& c = *res.counterexample;
    json cx;
    cx["copies"] = json::array();
    for (const std::vector<int>& cp : c.domain.copies) cx["copies"].push_back(cp);
    cx["colors"] = c.values;
    rep.body["results"]["counterexample"] = cx;
    rep.check("counterexample verified", verify_coloring_is_witness(query, c),
              "every Y-copy sees more than l colors");
    human << "fails; least counterexample after " << res.colorings_examined << " colorings\n";
  }
  emit(rep, opt, out, human.str());
  return res.holds ? kExitOk : kExitFails;
}

inline int cmd_tangent(unsigned max_m, const Options& opt, std::ostream& out) {
  Report rep("tangent");
  rep.body["inputs"] = json{{"maxM", max_m}};
  std::ostringstream human;
  human << "m,order,value\n";
  json rows = json::array();
  if (opt.no_oracle) {
    for (unsigned m = 1; m <= max_m; ++m) {
      const BigInt v = tangent_derivative(2 * m - 1, false);
      rows.push_back(json{{"m", m}, {"order", 2 * m - 1}, {"value", v.str()}});
      human << m << ',' << 2 * m - 1 << ',' << v.str() << "\n";
    }
  } else {
    const TangentTable table = make_tangent_table(max_m);
    for (unsigned m = 1; m <= max_m; ++m) {
      rows.push_back(json{{"m", m}, {"order", 2 * m - 1}, {"value", table.at(m).str()}});
      human << m << ',' << 2 * m - 1 << ',' << table.at(m).str() << "\n";
    }
    rep.check("Bernoulli vs zigzag", true, "both routes agree through m = " +
                                               std::to_string(max_m));
  }
  rep.body["results"] = json{{"rows", rows}};
  emit(rep, opt, out, human.str());
  return kExitOk;
}

inline int cmd_devlin(int size, int n_parts, const std::string& pattern, int height_bound,
                      bool codes, const Options& opt, std::ostream& out) {
  Report rep("devlin");
  PnStructure x;
  if (pattern.empty()) {
    x.n_parts = n_parts;
    for (int i = 0; i < size; ++i) x.parts.push_back((i % n_parts) + 1);
  } else {
    x = parse_pnstructure(pattern, n_parts);
    if (x.size() != size) throw std::invalid_argument("devlin: pattern length differs from size");
  }
  rep.body["inputs"] = json{{"size", size}, {"nParts", n_parts}, {"pattern", to_word(x)}};
  const int bound = height_bound > 0 ? height_bound : 2 * size * n_parts;
  const long count = count_devlin_types(x, bound);
  rep.body["results"] = json{{"count", count}};
  std::ostringstream human;
  human << "devlin types: " << count << "\n";
  if (!opt.no_oracle) {
    const BigInt tan = tangent_derivative(2 * static_cast<unsigned>(size) - 1);
    rep.check("count = tan^(2n-1)(0)", BigInt(count) == tan,
              std::to_string(count) + " vs " + tan.str());
  }
  if (codes) {
    json inv = json::array();
    for (const EmCode& c : devlin_type_inventory(x, 4 * size * n_parts + 4)) {
      inv.push_back(json::parse(c.to_json()));
      human << c.to_json() << "\n";
    }
    rep.body["results"]["codes"] = inv;
  }
  emit(rep, opt, out, human.str());
  return rep.all_ok() ? kExitOk : kExitFails;
}

inline int cmd_tree(int height, int colors, const std::vector<int>& sigma, std::uint64_t limit,
                    const Options& opt, std::ostream& out) {
  Report rep("tree");
  rep.body["inputs"] = json{{"height", height}, {"colors", colors}, {"sigma", sigma}};
  const ColoredTree t = ColoredTree::milliken(height, colors);
  const std::vector<StrongSubtree> subtrees = filter_by_sequence(t, sigma, limit);
  rep.body["results"] = json{{"count", subtrees.size()}};
  std::ostringstream human;
  human << subtrees.size() << " subtrees\n";
  json list = json::array();
  for (const StrongSubtree& s : subtrees) list.push_back(subtree_json(s));
  rep.body["results"]["subtrees"] = list;
  if (!opt.json_out)
    for (const StrongSubtree& s : subtrees) human << "  " << subtree_json(s).dump() << "\n";
  emit(rep, opt, out, human.str());
  return kExitOk;
}

inline int cmd_antichain(int n, int count, const Options& opt, std::ostream& out) {
  Report rep("antichain");
  rep.body["inputs"] = json{{"n", n}, {"count", count}};
  const AntichainModel model = build_antichain(n, count);
  const std::vector<std::pair<int, int>> bad = antichain_violations(model);
  json rows = json::array();
  std::ostringstream human;
  for (const AntichainEntry& e : model.entries) {
    rows.push_back(json{{"f", e.address}, {"w", e.w}, {"x", e.x}});
    human << "f=" << (e.address.empty() ? "(root)" : e.address) << " w=" << (e.w.empty() ? "(root)" : e.w)
          << " x=" << e.x << "\n";
  }
  rep.body["results"] = json{{"entries", rows}, {"violations", bad.size()}};
  rep.check("W clauses", true, "verified on the generated prefix");
  rep.check("x antichain", bad.empty(),
            bad.empty() ? "pairwise incomparable"
                        : std::to_string(bad.size()) + " comparable pairs");
  emit(rep, opt, out, human.str());
  return rep.all_ok() ? kExitOk : kExitFails;
}

inline int cmd_identity(int max_n, const Options& opt, std::ostream& out) {
  Report rep("identity");
  rep.body["inputs"] = json{{"maxN", max_n}};
  if (max_n < 1 || max_n > 6)
    throw budget_error("identity: n outside the supported range", std::to_string(max_n), "6");
  std::ostringstream human;
  json rows = json::array();
  bool all = true;
  for (int n = 1; n <= max_n; ++n) {
    long sum = 0;
    for (const Tournament& t : enumerate_tournaments(n))
      if (is_local_order(t)) sum += small_ramsey_degree(t);
    const long expect = 1L << n;
    all = all && sum == expect;
    rows.push_back(json{{"n", n}, {"sumT", sum}, {"expected", expect}});
    human << "n=" << n << ": sum t = " << sum << ", 2^n = " << expect
          << (sum == expect ? " ok" : " MISMATCH") << "\n";
  }
  rep.body["results"] = json{{"rows", rows}};
  rep.check("sum t = 2^n for all n", all, "n = 1.." + std::to_string(max_n));
  emit(rep, opt, out, human.str());
  return all ? kExitOk : kExitFails;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"partition calculus of the dense local order and the partitioned rationals"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json_out, "emit a JSON run report");
  app.add_flag("--csv", opt.csv_out, "CSV tables where applicable");
  app.add_option("--threads", opt.threads, "worker cap for search commands");
  app.add_option("--budget", opt.budget, "search budget (max colorings examined)")
      ->envname("RAMSEY_BUDGET");

  int enum_n = 1;
  CLI::App* c_enum = app.add_subcommand("enum", "local orders of a given size with t and T");
  c_enum->add_option("n", enum_n)->required();

  std::string degree_file;
  CLI::App* c_degree = app.add_subcommand("degree", "Ramsey degree of a tournament");
  c_degree->add_option("file", degree_file)->required();
  CLI::App* c_big = app.add_subcommand("big-degree", "big Ramsey degree of a tournament");
  std::string big_file;
  c_big->add_option("file", big_file)->required();

  std::string ext_file;
  CLI::App* c_ext = app.add_subcommand("extensions", "2-partitioned extensions of a tournament");
  c_ext->add_option("file", ext_file)->required();

  std::string arrow_file;
  bool arrow_prune = false;
  CLI::App* c_arrow = app.add_subcommand("arrow", "exhaustive arrow-relation check");
  c_arrow->add_option("query", arrow_file)->required();
  c_arrow->add_flag("--prune", arrow_prune, "quotient colorings by Aut(Z)");

  unsigned tangent_m = 4;
  CLI::App* c_tan = app.add_subcommand("tangent", "odd tangent derivatives as CSV");
  c_tan->add_option("m", tangent_m)->required();

  int dev_size = 1, dev_n = 1, dev_height = 0;
  bool dev_codes = false;
  std::string dev_pattern;
  CLI::App* c_dev = app.add_subcommand("devlin", "Devlin embedding-type count");
  c_dev->add_option("size", dev_size)->required();
  c_dev->add_option("n", dev_n)->required();
  c_dev->add_option("--pattern", dev_pattern, "parts word; cyclic by default");
  c_dev->add_option("--height", dev_height, "starting height bound");
  c_dev->add_flag("--codes", dev_codes, "print one canonical code per type");

  int tree_h = 3, tree_colors = 1;
  std::string tree_sigma;
  std::uint64_t tree_limit = 0;
  CLI::App* c_tree = app.add_subcommand("tree", "strong subtrees with a coloring sequence");
  c_tree->add_option("height", tree_h)->required();
  c_tree->add_option("colors", tree_colors)->required();
  c_tree->add_option("sigma", tree_sigma, "comma-separated colors, e.g. 0,0")->required();
  c_tree->add_option("--limit", tree_limit, "enumeration cap (0 = unlimited)");

  int anti_n = 2, anti_count = 15;
  CLI::App* c_anti = app.add_subcommand("antichain", "generate the Devlin antichain prefix");
  c_anti->add_option("n", anti_n)->required();
  c_anti->add_option("count", anti_count)->required();

  int ident_n = 6;
  CLI::App* c_ident = app.add_subcommand("identity", "sum of degrees identity for n = 1..N");
  c_ident->add_option("n", ident_n)->required();

  std::vector<const char*> argv;
  argv.push_back("ramsey");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (c_enum->parsed()) return cmd_enum(enum_n, opt, out);
    if (c_degree->parsed()) return cmd_degree(degree_file, opt, out);
    if (c_big->parsed()) return cmd_big_degree(big_file, opt, out);
    if (c_ext->parsed()) return cmd_extensions(ext_file, opt, out);
    if (c_arrow->parsed()) return cmd_arrow(arrow_file, arrow_prune, opt, out);
    if (c_tan->parsed()) return cmd_tangent(tangent_m, opt, out);
    if (c_dev->parsed())
      return cmd_devlin(dev_size, dev_n, dev_pattern, dev_height, dev_codes, opt, out);
    if (c_tree->parsed()) {
      std::vector<int> sigma;
      std::stringstream ss(tree_sigma);
      std::string tok;
      while (std::getline(ss, tok, ',')) sigma.push_back(std::stoi(tok));
      return cmd_tree(tree_h, tree_colors, sigma, tree_limit, opt, out);
    }
    if (c_anti->parsed()) return cmd_antichain(anti_n, anti_count, opt, out);
    if (c_ident->parsed()) return cmd_identity(ident_n, opt, out);
  } catch (const budget_error& e) {
    err << "budget exceeded: " << e.what() << " (required " << e.required() << ", limit "
        << e.limit() << ")\n";
    return kExitBudget;
  } catch (const devlin_cap_error& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  err << "error: no subcommand\n";
  return kExitInvalid;
}

}  // namespace ramsey::cli
