// soclelab: analyze, scan, construct and verify groups from the command line.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "soclelab/catalog.hpp"
#include "soclelab/report.hpp"

namespace fs = std::filesystem;
using namespace soclelab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConsistency = 2;
constexpr int kExitUnsupported = 3;

struct Common {
  std::optional<std::uint32_t> p;
  std::string format = "table";
  std::size_t max_order = kDefaultMaxOrder;
  std::string theorems = "auto";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--p", c.p, "prime (default: smallest prime dividing |G'|, else |G|)");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--max-order", c.max_order, "largest accepted group order")->capture_default_str();
  cmd->add_option("--theorems", c.theorems, "which theorem checks to run")->check(CLI::IsMember({"all", "none", "auto"}));
}

std::size_t thread_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SOCLELAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring SOCLELAB_THREADS=" << env << "\n";
    }
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

GroupSource load(const std::string& input, std::size_t max_order) {
  GroupOptions opts{max_order};
  if (fs::is_regular_file(input)) return load_group_file(input, opts);
  return parse_group_spec(input, opts);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_table(const Analysis& a) {
  const auto& r = a.report;
  std::cout << "group:            " << r["group"]["descriptor"].get<std::string>() << "\n"
            << "order:            " << r["group"]["order"] << "\n"
            << "p:                " << r["p"] << "\n"
            << "classes:          " << r["algebra"]["class_count"] << "\n"
            << "dims (Z, J, soc): (" << r["algebra"]["dim_center"] << ", " << r["algebra"]["dim_jacobson"] << ", "
            << r["algebra"]["dim_socle"] << ")\n"
            << "socle ideal:      " << yes_no(r["ideal"]["direct"]) << " (criterion " << yes_no(r["ideal"]["criterion"])
            << ")\n"
            << "standing form:    " << yes_no(r["standing_form"]["holds"]) << "\n";
  if (r.contains("coset_decomposition")) std::cout << "coset dims:       " << r["coset_decomposition"]["dims"].dump() << "\n";
  if (r.contains("theorem_a"))
    std::cout << "D decomposition:  n = " << r["theorem_a"]["n"] << ", |T| = " << r["theorem_a"]["t_order"]
              << ", |Z_D| = " << r["theorem_a"]["z_d_order"] << "\n";
  if (r.contains("theorem_b")) std::cout << "components:       " << r["theorem_b"]["components"].size() << "\n";
  if (r.contains("theorem_c")) {
    const auto& c = r["theorem_c"];
    if (c["applicable"]) {
      std::cout << "AGL(1,|D'|):      " << yes_no(c["agl"]) << "\n"
                << "C_H(G'') != 1:    " << yes_no(c["centralizer_of_gsecond_nontrivial"]) << "\n"
                << "G' Camina:        " << yes_no(c["camina"]) << "\n"
                << "predicted ideal:  " << yes_no(c["predicted"]) << "\n";
    } else {
      std::cout << "criterion:        not applicable (" << c["reason"].get<std::string>() << ")\n";
    }
    if (c.contains("witness")) {
      const auto& w = c["witness"];
      if (w["computed"])
        std::cout << "witness:          " << w["nonzero_coefficients"] << " nonzero coefficients, in socle "
                  << yes_no(w["in_socle"]) << ", outside (G')^+FG " << yes_no(w["outside_gprime_fg"]) << "\n";
      else
        std::cout << "witness:          none (" << w["reason"].get<std::string>() << ")\n";
    }
  }
  std::size_t passed = 0, total = 0;
  for (const auto& c : r["checks"]) {
    ++total;
    if (c["passed"]) ++passed;
  }
  std::cout << "checks:           " << passed << "/" << total << " passed, " << a.consistency_failures
            << " consistency failures\n";
  for (const auto& c : r["checks"])
    if (c["asserted"] && !c["passed"]) std::cout << "  FAILED " << c["name"].get<std::string>() << "\n";
  std::cout << "time:             " << std::fixed << std::setprecision(1) << a.millis << " ms\n";
}

int run_analyze(const std::string& input, const Common& c, bool force_all) {
  GroupSource src = load(input, c.max_order);
  const std::uint32_t p = c.p ? *c.p : src.suggested_p ? *src.suggested_p : default_prime(src.group);
  const TheoremMode mode = force_all ? TheoremMode::all : parse_theorem_mode(c.theorems);
  Analysis a = analyze(src, p, mode);
  if (c.format == "json")
    std::cout << a.report.dump(2) << "\n";
  else
    print_table(a);
  return a.consistency_failures ? kExitConsistency : kExitOk;
}

struct ScanRow {
  std::string input;
  std::uint32_t p = 0;
  std::optional<Analysis> analysis;
  std::string error;
};

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs, bool extended) {
  std::vector<std::string> out;
  if (inputs.empty()) {
    for (const auto& e : default_catalog()) out.push_back(e.spec);
    if (extended)
      for (const auto& e : extended_catalog()) out.push_back(e.spec);
    return out;
  }
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(in))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

int run_scan(const std::vector<std::string>& inputs, const Common& c, const std::string& primes, bool extended) {
  const TheoremMode mode = parse_theorem_mode(c.theorems);
  // Load sequentially (cheap), then fan out the analyses.
  std::vector<ScanRow> rows;
  std::vector<GroupSource> sources;
  std::vector<std::size_t> source_of;
  for (const auto& in : expand_inputs(inputs, extended)) {
    try {
      GroupSource src = load(in, c.max_order);
      std::vector<std::uint32_t> ps;
      if (c.p)
        ps = {*c.p};
      else if (primes == "all")
        ps = src.group.order() > 1 ? prime_divisors(src.group.order()) : std::vector<std::uint32_t>{};
      else
        ps = {src.suggested_p ? *src.suggested_p : default_prime(src.group)};
      sources.push_back(std::move(src));
      for (auto p : ps) {
        rows.push_back({in, p, std::nullopt, {}});
        source_of.push_back(sources.size() - 1);
      }
    } catch (const std::exception& e) {
      rows.push_back({in, 0, std::nullopt, e.what()});
      source_of.push_back(std::size_t(-1));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      if (source_of[i] == std::size_t(-1)) continue;
      try {
        rows[i].analysis = analyze(sources[source_of[i]], rows[i].p, mode);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t nt = thread_count(rows.size());
  for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::size_t ideal = 0, non_ideal = 0, inapplicable = 0, errors = 0, failures = 0, witnesses = 0;
  for (const auto& r : rows) {
    if (!r.analysis) {
      ++errors;
      continue;
    }
    (r.analysis->ideal ? ideal : non_ideal)++;
    if (!r.analysis->standing_form) ++inapplicable;
    if (r.analysis->witness_computed) ++witnesses;
    failures += r.analysis->consistency_failures;
  }

  if (c.format == "json") {
    nlohmann::json out;
    out["schema_version"] = kSchemaVersion;
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json row{{"input", r.input}};
      if (r.analysis)
        row["report"] = r.analysis->report;
      else
        row["error"] = r.error;
      jr.push_back(std::move(row));
    }
    out["rows"] = jr;
    out["summary"] = {{"rows", rows.size()},         {"ideal", ideal},       {"non_ideal", non_ideal},
                      {"outside_standing_form", inapplicable}, {"errors", errors}, {"witnesses", witnesses},
                      {"consistency_failures", failures}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(34) << "group" << std::setw(7) << "order" << std::setw(4) << "p"
              << std::setw(7) << "ideal" << std::setw(10) << "standing" << std::setw(14) << "criterion"
              << std::setw(9) << "witness" << std::setw(9) << "failures" << "ms\n";
    for (const auto& r : rows) {
      std::cout << std::setw(34) << r.input;
      if (!r.analysis) {
        std::cout << "error: " << r.error << "\n";
        continue;
      }
      const auto& rep = r.analysis->report;
      std::string crit = "-";
      if (rep.contains("theorem_c"))
        crit = rep["theorem_c"]["applicable"] ? (rep["theorem_c"]["predicted"] ? "ideal" : "not ideal") : "n/a";
      std::string wit = "-";
      if (rep.contains("theorem_c") && rep["theorem_c"].contains("witness"))
        wit = rep["theorem_c"]["witness"]["computed"] ? "found" : "none";
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(1) << r.analysis->millis;
      std::cout << std::setw(7) << rep["group"]["order"].get<std::size_t>() << std::setw(4) << r.p << std::setw(7)
                << yes_no(r.analysis->ideal) << std::setw(10) << yes_no(r.analysis->standing_form) << std::setw(14)
                << crit << std::setw(9) << wit << std::setw(9) << r.analysis->consistency_failures << ms.str()
                << "\n";
    }
    std::cout << "\nrows " << rows.size() << ", ideal " << ideal << ", non-ideal " << non_ideal
              << ", outside standing form " << inapplicable << ", errors " << errors << ", witnesses " << witnesses
              << ", consistency failures " << failures << "\n";
    if (witnesses == 0) std::cout << "no witness instances at the scanned orders\n";
  }
  return failures ? kExitConsistency : kExitOk;
}

int run_construct(const std::string& spec, const std::string& out_path, const Common& c) {
  GroupSource src = parse_group_spec(spec, GroupOptions{c.max_order});
  if (out_path.empty() || out_path == "-") {
    write_cayley(std::cout, src.group, c.p);
  } else {
    std::ofstream f(out_path);
    if (!f) throw invalid_input(out_path + ": cannot write file");
    write_cayley(f, src.group, c.p);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Socles of centers of group algebras over F_p"};
  app.require_subcommand(1);

  Common analyze_opts, verify_opts, scan_opts, construct_opts;
  std::string analyze_input, verify_input, construct_spec, construct_out;
  std::vector<std::string> scan_inputs;
  std::string scan_primes = "all";
  bool scan_extended = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze one group");
  analyze_cmd->add_option("group", analyze_input, "family spec or group file")->required();
  add_common(analyze_cmd, analyze_opts);

  auto* verify_cmd = app.add_subcommand("verify", "analyze with every theorem check forced");
  verify_cmd->add_option("group", verify_input, "family spec or group file")->required();
  add_common(verify_cmd, verify_opts);

  auto* scan_cmd = app.add_subcommand("scan", "analyze a list of groups (default: the built-in catalog)");
  scan_cmd->add_option("inputs", scan_inputs, "family specs, group files or directories");
  scan_cmd->add_option("--primes", scan_primes, "every prime dividing |G|, or the default prime only")
      ->check(CLI::IsMember({"all", "natural"}))
      ->capture_default_str();
  scan_cmd->add_flag("--extended", scan_extended, "include the larger class-two examples");
  add_common(scan_cmd, scan_opts);

  auto* construct_cmd = app.add_subcommand("construct", "write a constructed group as a Cayley table");
  construct_cmd->add_option("spec", construct_spec, "family spec")->required();
  construct_cmd->add_option("-o,--out", construct_out, "output file (default: standard output)");
  add_common(construct_cmd, construct_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) return run_analyze(analyze_input, analyze_opts, false);
    if (verify_cmd->parsed()) return run_analyze(verify_input, verify_opts, true);
    if (scan_cmd->parsed()) return run_scan(scan_inputs, scan_opts, scan_primes, scan_extended);
    if (construct_cmd->parsed()) return run_construct(construct_spec, construct_out, construct_opts);
  } catch (const consistency_failure& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  }
  return kExitOk;
}
