// loopkit command line: identifiability checks, enumeration, simulation,
// recovery, counterexamples and the rank-oracle crosscheck, all with
// deterministic JSON output.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loopkit/loopkit.hpp"

namespace {

using loopkit::Json;

std::vector<int> parse_node_list(const std::string& s, const char* flag) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw loopkit::InputError(std::string(flag) + ": '" + tok + "' is not an integer");
    }
  }
  return out;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw loopkit::InputError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw loopkit::InputError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_output(const Json& j, const std::string& path) {
  const std::string text = loopkit::canonical_dump(j);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw loopkit::InputError("cannot write file: " + path);
  out << text;
}

Json classification_json(const loopkit::Emp& emp) {
  Json j = loopkit::emp_to_json(emp);
  const Json cls = loopkit::classification_to_json(loopkit::nsc_check(emp));
  j["pattern"] = emp.pattern();
  for (const auto& [key, value] : cls.items()) j[key] = value;
  return j;
}

void print_human_table(const loopkit::TableReport& rep) {
  std::cout << std::setw(4) << "n" << std::setw(12) << "minimal" << std::setw(12) << "valid"
            << std::setw(12) << "invalid" << "  flags\n";
  for (const auto& row : rep.rows) {
    std::cout << std::setw(4) << row.n << std::setw(12) << row.enumerated.minimal.get_str()
              << std::setw(12) << row.enumerated.valid.get_str() << std::setw(12)
              << row.enumerated.invalid.get_str() << "  ";
    for (std::size_t i = 0; i < row.flags.size(); ++i)
      std::cout << (i ? "; " : "") << row.flags[i];
    std::cout << "\n";
  }
}

struct EmpCheckArgs {
  int n = 0;
  std::string excited, measured, pattern;
};

struct EnumerateArgs {
  int n = 0;
  std::string cls;
  bool count_only = false;
};

int run(CLI::App& app, int argc, char** argv) {
  app.require_subcommand(1);

  // ---- emp ----------------------------------------------------------------
  auto* emp_cmd = app.add_subcommand("emp", "classify, enumerate and count patterns");
  emp_cmd->require_subcommand(1);

  auto check_args = std::make_shared<EmpCheckArgs>();
  auto* check = emp_cmd->add_subcommand("check", "classify one excitation/measurement pattern");
  check->add_option("--n", check_args->n, "node count")->required();
  check->add_option("--excited", check_args->excited, "comma-separated excited nodes, e.g. 1,3");
  check->add_option("--measured", check_args->measured, "comma-separated measured nodes");
  check->add_option("--pattern", check_args->pattern, "one character per node: E, M or B (both)");
  check->callback([check_args] {
    const bool lists = !check_args->excited.empty() || !check_args->measured.empty();
    if (!check_args->pattern.empty() && lists)
      throw loopkit::InputError("give either --pattern or --excited/--measured, not both");
    const loopkit::Emp emp =
        !check_args->pattern.empty()
            ? loopkit::Emp::from_pattern(check_args->n, check_args->pattern)
            : loopkit::Emp(check_args->n, parse_node_list(check_args->excited, "--excited"),
                           parse_node_list(check_args->measured, "--measured"));
    write_output(classification_json(emp), "");
  });

  auto enum_args = std::make_shared<EnumerateArgs>();
  auto* enumerate = emp_cmd->add_subcommand("enumerate", "stream all 3^n covering patterns");
  enumerate->add_option("--n", enum_args->n, "node count (2..16)")->required();
  enumerate->add_option("--class", enum_args->cls, "filter: minimal, valid or invalid");
  enumerate->add_flag("--count-only", enum_args->count_only, "print counts instead of patterns");
  enumerate->callback([enum_args] {
    std::optional<loopkit::ClassFilter> filter;
    if (!enum_args->cls.empty()) {
      if (enum_args->cls == "minimal") filter = loopkit::ClassFilter::Minimal;
      else if (enum_args->cls == "valid") filter = loopkit::ClassFilter::Valid;
      else if (enum_args->cls == "invalid") filter = loopkit::ClassFilter::Invalid;
      else throw loopkit::InputError("--class must be one of minimal, valid, invalid");
    }
    if (enum_args->count_only) {
      const loopkit::Counts c = loopkit::enumerate_counts(enum_args->n);
      Json j = Json::object();
      j["n"] = enum_args->n;
      if (filter) {
        const mpz_class& v = *filter == loopkit::ClassFilter::Minimal ? c.minimal
                             : *filter == loopkit::ClassFilter::Valid ? c.valid
                                                                      : c.invalid;
        j["class"] = enum_args->cls;
        j["count"] = v.get_ui();
      } else {
        j["minimal"] = c.minimal.get_ui();
        j["valid"] = c.valid.get_ui();
        j["invalid"] = c.invalid.get_ui();
      }
      write_output(j, "");
      return;
    }
    loopkit::enumerate(enum_args->n, filter, [](const loopkit::Emp& e, const loopkit::EmpClass& cls) {
      Json j = Json::object();
      j["pattern"] = e.pattern();
      j["excited"] = e.excited_nodes();
      j["measured"] = e.measured_nodes();
      j["verdict"] = loopkit::verdict_name(cls.verdict);
      j["cardinality"] = cls.cardinality;
      std::cout << j.dump() << "\n";
    });
  });

  auto table_max = std::make_shared<int>(10);
  auto table_human = std::make_shared<bool>(false);
  auto table_out = std::make_shared<std::string>();
  auto* table = emp_cmd->add_subcommand("table", "compare enumeration, closed forms and reference counts");
  table->add_option("--max-n", *table_max, "largest node count (2..16)")->required();
  table->add_flag("--human", *table_human, "plain-text table instead of JSON");
  table->add_option("-o,--output", *table_out, "write JSON to this file");
  table->callback([table_max, table_human, table_out] {
    const loopkit::TableReport rep = loopkit::table(*table_max);
    if (*table_human) print_human_table(rep);
    else write_output(loopkit::table_to_json(rep), *table_out);
  });

  // ---- net ----------------------------------------------------------------
  auto* net_cmd = app.add_subcommand("net", "generate, simulate and recover loop networks");
  net_cmd->require_subcommand(1);

  auto rnd_n = std::make_shared<int>(0);
  auto rnd_seed = std::make_shared<std::uint64_t>(0);
  auto rnd_bound = std::make_shared<int>(1);
  auto rnd_out = std::make_shared<std::string>();
  auto* rnd = net_cmd->add_subcommand("random", "deterministic random network");
  rnd->add_option("--n", *rnd_n, "node count")->required();
  rnd->add_option("--seed", *rnd_seed, "RNG seed")->required();
  rnd->add_option("--degree-bound", *rnd_bound, "edge numerator/denominator degree bound");
  rnd->add_option("-o,--output", *rnd_out, "output network JSON")->required();
  rnd->callback([rnd_n, rnd_seed, rnd_bound, rnd_out] {
    write_output(loopkit::network_to_json(loopkit::random_network(*rnd_n, *rnd_seed, *rnd_bound)),
                 *rnd_out);
  });

  auto sim_net = std::make_shared<std::string>();
  auto sim_emp = std::make_shared<std::string>();
  auto sim_out = std::make_shared<std::string>();
  auto* sim = net_cmd->add_subcommand("simulate", "input-output map of a network under a pattern");
  sim->add_option("--net", *sim_net, "network JSON file")->required();
  sim->add_option("--emp", *sim_emp, "pattern JSON file")->required();
  sim->add_option("-o,--output", *sim_out, "output map JSON")->required();
  sim->callback([sim_net, sim_emp, sim_out] {
    const loopkit::LoopNetwork net = loopkit::network_from_json(load_json(*sim_net));
    const loopkit::Emp emp = loopkit::emp_from_json(load_json(*sim_emp));
    write_output(loopkit::iomap_to_json(loopkit::io_map(net, emp)), *sim_out);
  });

  auto rec_m = std::make_shared<std::string>();
  auto rec_emp = std::make_shared<std::string>();
  auto rec_out = std::make_shared<std::string>();
  auto rec_verify = std::make_shared<std::string>();
  auto rec_exit = std::make_shared<int>(0);
  auto* rec = net_cmd->add_subcommand("recover", "reconstruct all edges from an input-output map");
  rec->add_option("--m", *rec_m, "map JSON file")->required();
  rec->add_option("--emp", *rec_emp, "pattern JSON file")->required();
  rec->add_option("-o,--output", *rec_out, "output network JSON")->required();
  rec->add_option("--verify-against", *rec_verify, "compare the result with this network JSON");
  rec->callback([rec_m, rec_emp, rec_out, rec_verify, rec_exit] {
    const loopkit::IoMap m = loopkit::iomap_from_json(load_json(*rec_m));
    const loopkit::Emp emp = loopkit::emp_from_json(load_json(*rec_emp));
    const loopkit::LoopNetwork got = loopkit::recover_edges(m, emp);
    write_output(loopkit::network_to_json(got), *rec_out);
    if (!rec_verify->empty()) {
      const loopkit::LoopNetwork want = loopkit::network_from_json(load_json(*rec_verify));
      Json j = Json::object();
      j["matches"] = (got == want);
      Json edges = Json::array();
      for (int i = 1; i <= got.size() && want.size() == got.size(); ++i) {
        Json e = Json::object();
        e["from"] = i;
        e["to"] = got.succ(i);
        e["equal"] = (got.edge_from(i) == want.edge_from(i));
        edges.push_back(std::move(e));
      }
      j["edges"] = std::move(edges);
      write_output(j, "");
      if (!(got == want)) *rec_exit = 1;
    }
  });

  auto cex_net = std::make_shared<std::string>();
  auto cex_emp = std::make_shared<std::string>();
  auto cex_lambda = std::make_shared<std::string>("2");
  auto cex_out = std::make_shared<std::string>();
  auto* cex = net_cmd->add_subcommand("counterexample",
                                      "indistinguishable network for a contiguous invalid pattern");
  cex->add_option("--net", *cex_net, "network JSON file")->required();
  cex->add_option("--emp", *cex_emp, "pattern JSON file")->required();
  cex->add_option("--lambda", *cex_lambda, "nonzero rational scale, e.g. 2 or 3/5");
  cex->add_option("-o,--output", *cex_out, "output JSON with both networks")->required();
  cex->callback([cex_net, cex_emp, cex_lambda, cex_out] {
    const loopkit::LoopNetwork net = loopkit::network_from_json(load_json(*cex_net));
    const loopkit::Emp emp = loopkit::emp_from_json(load_json(*cex_emp));
    const loopkit::Rat lambda = loopkit::Rat::from_string(*cex_lambda);
    const loopkit::LoopNetwork alt = loopkit::indistinguishable_family(net, emp, lambda);
    const loopkit::CounterexampleReport rep = loopkit::verify_counterexample(net, alt, emp);
    Json j = Json::object();
    j["emp"] = loopkit::emp_to_json(emp);
    j["lambda"] = lambda.str();
    Json scales = Json::array();
    for (const auto& [from, to] : rep.differing_edges) {
      Json s = Json::object();
      s["from"] = from;
      s["to"] = to;
      s["scale"] = loopkit::rf_to_json(alt.edge_from(from) / net.edge_from(from));
      scales.push_back(std::move(s));
    }
    j["edge_scales"] = std::move(scales);
    j["original"] = loopkit::network_to_json(net);
    j["alternative"] = loopkit::network_to_json(alt);
    j["verification"] = loopkit::counterexample_to_json(rep);
    write_output(j, *cex_out);
  });

  // ---- oracle ---------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "exact Jacobian-rank validation");
  oracle_cmd->require_subcommand(1);

  auto cc_n = std::make_shared<int>(0);
  auto cc_trials = std::make_shared<int>(3);
  auto cc_seed = std::make_shared<std::uint64_t>(0);
  auto cc_out = std::make_shared<std::string>();
  auto* cc = oracle_cmd->add_subcommand("crosscheck",
                                        "rank oracle vs structural test over all 3^n patterns");
  cc->add_option("--n", *cc_n, "node count (2..7)")->required();
  cc->add_option("--trials", *cc_trials, "random points per pattern");
  cc->add_option("--seed", *cc_seed, "base RNG seed");
  cc->add_option("-o,--output", *cc_out, "write the report to this file");
  cc->callback([cc_n, cc_trials, cc_seed, cc_out] {
    write_output(loopkit::crosscheck_to_json(loopkit::crosscheck(*cc_n, *cc_trials, *cc_seed)),
                 *cc_out);
  });

  app.parse(argc, argv);
  return *rec_exit;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    CLI::App app{"loopkit: exact identifiability toolkit for isolated loop networks"};
    try {
      return run(app, argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 2;
    }
  } catch (const loopkit::NotIdentifiableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const loopkit::NonGenericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (...) {
    std::cerr << "error: unexpected failure\n";
    return 2;
  }
}
