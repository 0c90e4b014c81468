// Command-line front end: single benchmark runs and convergence ladders,
// with CSV artifacts and an optional per-step constraint audit.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eedg/runner.hpp"

namespace {

struct Options {
  std::string problem = "tov";
  int order = 4;
  int cells = 100;
  double cfl = -1.0;
  double t_final = std::numeric_limits<double>::quiet_NaN();
  std::string precision = "double";
  std::string oe = "compact";
  std::string limiter = "on";
  std::string convergence;  // comma-separated cell counts
  std::string out_dir;
  bool audit = false;
};

std::vector<int> parse_ladder(const std::string& spec) {
  std::vector<int> ladder;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    ladder.push_back(std::stoi(tok));
  }
  return ladder;
}

// key = value lines, or a JSON object; unknown keys are rejected.
void apply_config_file(const std::string& path, CLI::App& app, Options& opt) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  auto setter = [&](const std::string& key, const std::string& value) {
    auto assign = [&](auto& field) {
      std::istringstream is(value);
      is >> field;
      if (is.fail()) throw CLI::ValidationError("--config", "bad value for " + key);
    };
    // flags given on the command line take precedence over the file
    if (app.count("--" + key) > 0) return;
    if (key == "problem") opt.problem = value;
    else if (key == "order") assign(opt.order);
    else if (key == "cells") assign(opt.cells);
    else if (key == "cfl") assign(opt.cfl);
    else if (key == "t-final") assign(opt.t_final);
    else if (key == "precision") opt.precision = value;
    else if (key == "oe") opt.oe = value;
    else if (key == "limiter") opt.limiter = value;
    else if (key == "convergence") opt.convergence = value;
    else if (key == "out") opt.out_dir = value;
    else if (key == "audit") opt.audit = (value == "true" || value == "1" || value == "on");
    else throw CLI::ValidationError("--config", "unknown key " + key);
  };
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto j = nlohmann::json::parse(text);
    for (auto& [key, val] : j.items()) {
      if (val.is_string()) setter(key, val.get<std::string>());
      else setter(key, val.dump());
    }
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
      };
      setter(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }
}

template <class Real>
int run_with(const Options& opt) {
  eedg::RunConfig<Real> cfg;
  cfg.problem = opt.problem;
  cfg.order = opt.order;
  cfg.cells = opt.cells;
  cfg.cfl = Real(opt.cfl);
  cfg.t_final = Real(opt.t_final);
  if (opt.oe == "compact") {
    cfg.oe = eedg::OeMode::componentwise;
  } else if (opt.oe == "conventional") {
    cfg.oe = eedg::OeMode::uniform;
    cfg.conventional = true;
  } else {
    cfg.oe = eedg::OeMode::off;
  }
  cfg.limiter = (opt.limiter == "on");

  namespace fs = std::filesystem;
  if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);
  auto out_path = [&](const std::string& name) {
    return (fs::path(opt.out_dir) / name).string();
  };
  auto tag = [&](int cells) {
    std::ostringstream os;
    os << cfg.problem << "_o" << cfg.order << "_N" << cells;
    return os.str();
  };

  auto problem = eedg::make_problem<Real>(cfg.problem);
  eedg::LinearEos<Real> eos(problem.sigma2);

  if (!opt.convergence.empty()) {
    auto ladder = parse_ladder(opt.convergence);
    if (ladder.size() < 2)
      throw CLI::ValidationError("--convergence", "need at least two mesh sizes");
    auto rows = eedg::convergence_study(cfg, ladder);
    eedg::emit_convergence_table(std::cout, rows);
    if (!opt.out_dir.empty()) {
      std::ofstream csv(out_path("convergence_" + tag(0) + ".csv"));
      eedg::emit_convergence_csv(csv, rows);
      std::ofstream txt(out_path("convergence_" + tag(0) + ".txt"));
      eedg::emit_convergence_table(txt, rows);
      std::cout << "wrote " << out_path("convergence_" + tag(0) + ".{csv,txt}") << "\n";
    }
    return 0;
  }

  std::ofstream audit_file;
  std::ostream* audit_stream = nullptr;
  if (opt.audit) {
    if (!opt.out_dir.empty()) {
      audit_file.open(out_path("audit_" + tag(cfg.cells) + ".csv"));
      audit_stream = &audit_file;
    } else {
      audit_stream = &std::cerr;
    }
  }

  auto res = eedg::run_problem(cfg, audit_stream);
  std::cout << cfg.problem << ": " << res.steps << " steps to t=" << double(res.state.time)
            << "\n";
  std::cout << "  min cell admissibility " << double(res.min_admissibility)
            << ", limiter activations " << res.theta_activations << "\n";
  std::cout << "  metric range: A in [" << double(res.min_a) << ", " << double(res.max_a)
            << "], min B " << double(res.min_b) << " (no clipping applied)\n";
  std::cout << "  weak-CP dt bound at t0: " << double(res.weak_cp_dt_first) << "\n";
  if (problem.has_exact) {
    auto& e = res.errors;
    std::cout << "  errors (L1, L2, Linf):\n";
    auto line = [&](const char* nm, const eedg::ErrorTriple<Real>& t) {
      std::printf("    %-4s %.6e  %.6e  %.6e\n", nm, double(t.l1), double(t.l2),
                  double(t.linf));
    };
    line("rho", e.rho);
    line("v", e.v);
    line("A", e.a);
    line("B", e.b);
  }
  if (!opt.out_dir.empty()) {
    std::ofstream csv(out_path("profile_" + tag(cfg.cells) + ".csv"));
    eedg::write_profile_csv(csv, res.state, eos, problem);
    std::cout << "wrote " << out_path("profile_" + tag(cfg.cells) + ".csv") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherically symmetric Einstein-Euler CPcOEDG solver"};
  Options opt;
  std::string config_path;
  app.add_option("--problem", opt.problem, "frw1|frw2|tov|accretion|shock|reversal")
      ->check(CLI::IsMember({"frw1", "frw2", "tov", "accretion", "shock", "reversal"}));
  app.add_option("--order", opt.order, "scheme order 2..4 (1 = first-order FV reference)")
      ->check(CLI::Range(1, 4));
  app.add_option("--cells", opt.cells, "number of mesh cells")->check(CLI::Range(4, 1000000));
  app.add_option("--cfl", opt.cfl, "CFL number (default per order: 0.317/0.169/0.05)");
  app.add_option("--t-final", opt.t_final, "override the problem's final time");
  app.add_option("--precision", opt.precision, "double|extended")
      ->check(CLI::IsMember({"double", "extended"}));
  app.add_option("--oe", opt.oe, "compact|conventional|off")
      ->check(CLI::IsMember({"compact", "conventional", "off"}));
  app.add_option("--limiter", opt.limiter, "on|off")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--convergence", opt.convergence, "comma-separated mesh ladder");
  app.add_option("--out", opt.out_dir, "output directory for CSV artifacts");
  app.add_flag("--audit", opt.audit, "emit the per-step constraint audit CSV");
  app.add_option("--config", config_path, "config file (key = value, or JSON)");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) apply_config_file(config_path, app, opt);
    if (opt.precision == "extended") return run_with<long double>(opt);
    return run_with<double>(opt);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
