#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "leafchar/leafchar.h"

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string format = "json";
  std::string output;
  std::string csv_output;
  std::string config_file;
  bool timing = false;
};

/// Options only enter the config when given on the command line; the
/// library fills in the rest and echoes it back.
struct Builder {
  json config = json::object();
  std::vector<std::function<void()>> setters;

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    setters.push_back([this, opt, value, key] {
      if (opt->count()) config[key] = *value;
    });
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    auto value = std::make_shared<bool>(false);
    CLI::Option* opt = app->add_flag(name, *value, help);
    setters.push_back([this, opt, value, key] {
      if (opt->count()) config[key] = *value;
    });
    return opt;
  }

  /// A string that is either a preset name or a path to a JSON file.
  CLI::Option* name_or_file(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<std::string>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    setters.push_back([this, opt, value, key] {
      if (!opt->count()) return;
      bool is_file = value->find('/') != std::string::npos ||
                     (value->size() > 5 && value->compare(value->size() - 5, 5, ".json") == 0);
      if (!is_file) {
        config[key] = *value;
        return;
      }
      std::ifstream in(*value);
      if (!in) throw std::runtime_error("cannot read " + *value);
      config[key] = json::parse(in);
    });
    return opt;
  }
};

int write(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "leafchar: cannot write " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and high-precision checks for characteristic classes of foliations"};
  app.set_version_flag("--version", lc_version());
  app.require_subcommand(1);
  Common common;
  Builder b;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("-o,--output", common.output, "Write the report here instead of stdout");
    sub->add_option("--csv-output", common.csv_output, "Also write the CSV table here");
    sub->add_option("--config", common.config_file, "JSON config file; command-line flags override it");
    sub->add_flag("--timing", common.timing, "Add wall-clock timing to the JSON report");
  };

  auto* jet = app.add_subcommand("jet", "Jet group laws and the jet extension of alpha = -f(t)");
  b.add<long>(jet, "--order", "order", "Truncation order");
  b.add<long>(jet, "--samples", "samples", "Random jets per group-law check");
  b.add<long>(jet, "--extension-order", "extension_order", "Order of the extension check");
  b.add<long>(jet, "--seed", "seed", "Random seed");
  add_common(jet);

  auto* wn = app.add_subcommand("wn", "Cochains on formal vector fields: d^2, Chern cocycles, cohomology");
  b.add<long>(wn, "--n", "n", "Dimension n of W_n");
  b.add<long>(wn, "--weight", "weight", "Weight of the graded piece");
  b.add<long>(wn, "--max-degree", "max_degree", "Largest cochain degree");
  b.flag(wn, "--relative", "relative", "Use the complex relative to gl_n");
  b.add<long>(wn, "--budget", "budget", "Largest basis size");
  b.add<long>(wn, "--d2-max-weight", "d2_max_weight", "Largest generator weight for the d^2 check");
  add_common(wn);

  auto* gk = app.add_subcommand("gk", "Gelfand-Kazhdan form, chain map, Chern-Weil and reduction");
  b.add<long>(gk, "--order", "order", "Truncation order N");
  b.add<std::string>(gk, "--check", "check", "all, forms, chain-map, chern-weil or reduce");
  add_common(gk);

  auto* reeb = app.add_subcommand("reeb", "Profile conditions and boundary limits of the Reeb profile");
  b.add<std::string>(reeb, "--profile", "profile", "default or expr:<text>");
  b.add<long>(reeb, "--orders", "orders", "Largest n in f^(n)/f'^n");
  b.add<long>(reeb, "--grid", "grid", "Grid size k_max, t_k = 1 - 10^-k");
  b.add<long>(reeb, "--precision", "precision", "Working precision in bits");
  add_common(reeb);

  auto* cech = app.add_subcommand("cech", "Cech-de Rham complex of an atlas presentation");
  b.name_or_file(cech, "--presentation", "presentation", "reeb or a JSON presentation file");
  b.add<long>(cech, "--order", "order", "Jet order of the Reeb presentation");
  b.add<long>(cech, "--max-k", "max_k", "Largest Cech degree of the random cochains");
  b.add<long>(cech, "--word-bound", "word_bound", "Largest word length of string arrows");
  b.add<long>(cech, "--cochains", "cochains", "Number of random cochains");
  b.add<long>(cech, "--seed", "seed", "Random seed");
  add_common(cech);

  auto* site = app.add_subcommand("site", "Grothendieck topology axioms on a finite site");
  b.name_or_file(site, "--presentation", "presentation", "reeb, trivial or a JSON presentation file");
  b.add<long>(site, "--period", "period", "Order of T in the finite surrogate");
  b.add<long>(site, "--mutation", "mutation", "Break axiom 1, 2 or 3 (0 keeps the site)");
  add_common(site);

  auto* probe = app.add_subcommand("probe", "Nontriviality probe for a candidate lambda");
  b.name_or_file(probe, "--candidate", "candidate", "Preset name or a JSON candidate file");
  b.add<std::string>(probe, "--c", "c", "Constant of the dbeta2 preset");
  b.add<std::string>(probe, "--profile", "profile", "default or expr:<text>");
  b.add<long>(probe, "--grid", "grid", "Grid size k_max");
  b.add<long>(probe, "--precision", "precision", "Base precision in bits");
  b.add<long>(probe, "--tau-multiple", "tau_multiple", "tau = 2 pi m");
  add_common(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  json config = json::object();
  try {
    if (!common.config_file.empty()) {
      std::ifstream in(common.config_file);
      if (!in) {
        std::cerr << "leafchar: cannot read " << common.config_file << "\n";
        return 2;
      }
      config = json::parse(in);
    }
    for (auto& set : b.setters) set();
  } catch (const std::exception& e) {
    std::cerr << "leafchar: bad input: " << e.what() << "\n";
    return 2;
  }
  for (auto& [k, v] : b.config.items()) config[k] = v;

  const std::string name = app.get_subcommands().front()->get_name();
  auto start = std::chrono::steady_clock::now();
  lc_report* report = nullptr;
  if (lc_run(name.c_str(), config.dump().c_str(), &report) != LC_OK) {
    std::cerr << "leafchar: " << lc_last_error() << "\n";
    return 2;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int code = lc_report_exit_code(report);

  std::string body;
  if (common.format == "csv") {
    body = lc_report_csv(report);
    if (body.empty()) std::cerr << "leafchar: " << name << " has no CSV table\n";
  } else if (common.format == "text") {
    body = lc_report_text(report);
  } else if (common.timing) {
    json j = json::parse(lc_report_json(report));
    j["timing"] = {{"seconds", seconds}};
    body = j.dump(2) + "\n";
  } else {
    body = lc_report_json(report);
  }
  int io = write(common.output, body);
  if (!io && !common.csv_output.empty()) io = write(common.csv_output, lc_report_csv(report));
  if (code != 0 && common.format != "text") std::cerr << lc_report_text(report);
  lc_report_free(report);
  return io ? io : code;
}
