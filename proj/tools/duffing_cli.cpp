#include "duffing/checks.hpp"
#include "duffing/integrate.hpp"
#include "duffing/portrait.hpp"
#include "duffing/render.hpp"
#include "duffing/report.hpp"
#include "duffing/return_map.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

constexpr int kExitInvalidArgs = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitIntegrationFailed = 4;

struct ParamFlags {
  double alpha = 0.0;
  double epsilon = 1.0;
  double sigma = 1.0;
  int m = 3;
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
  cmd->add_option("--alpha", flags.alpha, "damping coefficient")->required();
  cmd->add_option("--epsilon", flags.epsilon, "nonlinear stiffness (nonzero)")->required();
  cmd->add_option("--sigma", flags.sigma, "linear stiffness")->required();
  cmd->add_option("--m", flags.m, "degree of the nonlinear term (>= 1)")->required();
}

duffing::Parameters make_params(const ParamFlags& f) {
  return duffing::Parameters(f.alpha, f.epsilon, f.sigma, f.m);
}

std::vector<duffing::PlaneState> parse_seed_list(const std::string& text) {
  std::vector<duffing::PlaneState> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos)
      throw duffing::InvalidParameters("seed list must look like \"x,y;x,y\"");
    seeds.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
  }
  return seeds;
}

int run(int argc, char** argv) {
  CLI::App app{"generalized Duffing oscillator atlas: classification, simulation, "
               "verification, and phase-portrait rendering"};
  app.require_subcommand(1);

  // classify
  auto* classify = app.add_subcommand("classify", "portrait panel and qualitative census");
  ParamFlags cf;
  add_param_flags(classify, cf);
  bool classify_json = false;
  classify->add_flag("--json", classify_json, "emit the JSON report");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "integrate one orbit");
  ParamFlags sf;
  add_param_flags(simulate, sf);
  double x0 = 1.0, y0 = 0.0, tmax = 100.0, tol = 1e-10;
  std::string csv_path;
  bool simulate_json = false;
  std::string method = "rk45";
  simulate->add_option("--x0", x0, "initial position")->required();
  simulate->add_option("--y0", y0, "initial velocity")->required();
  simulate->add_option("--tmax", tmax, "integration time (negative runs backward)")->required();
  simulate->add_option("--tol", tol, "relative tolerance");
  simulate->add_option("--csv", csv_path, "write samples as CSV to this file");
  simulate->add_option("--method", method, "rk45 | leapfrog (leapfrog needs alpha = 0)");
  simulate->add_flag("--json", simulate_json, "emit the JSON report");

  // portrait
  auto* portrait = app.add_subcommand("portrait", "render the disc portrait as SVG");
  ParamFlags pf;
  add_param_flags(portrait, pf);
  std::string out_path, seeds_text = "auto";
  int size_px = 360;
  double arrows = 0.15;
  bool no_circle = false;
  portrait->add_option("--out", out_path, "output SVG file")->required();
  portrait->add_option("--seeds", seeds_text, "auto or \"x,y;x,y;...\"");
  portrait->add_option("--size", size_px, "disc radius in pixels");
  portrait->add_option("--arrows", arrows, "arrowhead density");
  portrait->add_flag("--no-circle", no_circle, "omit the circle at infinity");

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::string suite = "all", grid = "default";
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  bool verify_json = false;
  verify->add_option("--suite", suite, "tables|centers|infinity|cycles|limitcycles|all")
      ->required();
  verify->add_option("--grid", grid, "verification grid (only \"default\" is defined)");
  verify->add_option("--workers", workers, "worker threads for grid criteria");
  verify->add_flag("--json", verify_json, "emit results as JSON");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "panel boundaries along a parameter line");
  ParamFlags wf;
  add_param_flags(sweep, wf);
  std::string sweep_param = "alpha";
  double sweep_from = -1.0, sweep_to = 1.0;
  int sweep_steps = 50;
  bool sweep_json = false;
  sweep->add_option("--param", sweep_param, "alpha | epsilon | sigma")->required();
  sweep->add_option("--from", sweep_from, "start value")->required();
  sweep->add_option("--to", sweep_to, "end value")->required();
  sweep->add_option("--steps", sweep_steps, "number of steps")->required();
  sweep->add_flag("--json", sweep_json, "emit the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInvalidArgs;
  }

  try {
    if (*classify) {
      const duffing::Parameters p = make_params(cf);
      const nlohmann::json report = duffing::classification_report(p);
      if (classify_json) {
        std::cout << report.dump(2) << "\n";
      } else {
        std::cout << "figure:  " << report["figure"].get<std::string>() << "\n";
        if (!report["panel"].is_null())
          std::cout << "panel:   (" << report["panel"].get<std::string>() << ")  "
                    << report["conditions"].get<std::string>() << "\n";
        if (!report["boundary"].is_null())
          std::cout << "boundary: " << report["boundary"].get<std::string>() << "\n";
        std::cout << "global center: "
                  << (report["global_center"].get<bool>() ? "yes" : "no") << "\n";
        std::cout << "finite equilibria:\n";
        for (const auto& e : report["census"]["finite"])
          std::cout << "  " << e["label"].get<std::string>() << " at ("
                    << e["x"].get<double>() << ", " << e["y"].get<double>() << "): "
                    << e["kind"].get<std::string>() << "\n";
        for (const auto& e : report["census"]["infinite"]) {
          std::cout << "infinite: " << e["kind"].get<std::string>() << " in "
                    << e["chart"].get<std::string>() << " at u=" << e["u"].get<double>();
          if (e.contains("sectors"))
            std::cout << "  sectors h" << e["sectors"]["hyperbolic"].get<int>() << " p"
                      << e["sectors"]["parabolic"].get<int>() << " e"
                      << e["sectors"]["elliptic"].get<int>();
          std::cout << "\n";
        }
        if (!report["census"]["cycles"].is_null() &&
            report["census"]["cycles"]["kind"].get<std::string>() != "none")
          std::cout << "cycle: " << report["census"]["cycles"]["kind"].get<std::string>()
                    << " at level " << report["census"]["cycles"]["level"].get<double>()
                    << "\n";
      }
      return 0;
    }

    if (*simulate) {
      const duffing::Parameters p = make_params(sf);
      duffing::IntegrationOptions opts;
      opts.rel_tol = tol;
      opts.abs_tol = tol * 1e-2;
      opts.max_time = tmax;
      if (method == "leapfrog") opts.method = duffing::Method::SymplecticLeapfrog;
      else if (method != "rk45")
        throw duffing::InvalidParameters("method must be rk45 or leapfrog");
      const duffing::Trajectory traj = duffing::integrate(p, duffing::PlaneState(x0, y0), opts);
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw duffing::InvalidParameters("cannot open " + csv_path);
        out << duffing::trajectory_csv(traj);
      }
      if (simulate_json) {
        std::cout << duffing::trajectory_report(p, traj).dump(2) << "\n";
      } else {
        const auto& last = traj.samples.back();
        std::cout << traj.samples.size() << " samples";
        switch (traj.termination) {
          case duffing::Termination::TimeExhausted:
            std::cout << ", reached t=" << traj.time_direction * last.t;
            break;
          case duffing::Termination::Escaped:
            std::cout << ", escaped at t=" << traj.time_direction * traj.escape_time;
            break;
          case duffing::Termination::SectionEvent:
            std::cout << ", stopped on section event";
            break;
        }
        std::cout << ", final state (" << last.state.x() << ", " << last.state.y() << ")\n";
      }
      return 0;
    }

    if (*portrait) {
      const duffing::Parameters p = make_params(pf);
      duffing::RenderSpec spec;
      spec.disc_radius_px = size_px;
      spec.arrow_density = arrows;
      spec.draw_infinite_circle = !no_circle;
      if (seeds_text != "auto") spec.orbit_seeds = parse_seed_list(seeds_text);
      const std::string svg = duffing::render_disc(p, spec);
      std::ofstream out(out_path);
      if (!out) throw duffing::InvalidParameters("cannot open " + out_path);
      out << svg;
      std::cout << "wrote " << out_path << " (" << svg.size() << " bytes)\n";
      return 0;
    }

    if (*verify) {
      if (grid != "default")
        throw duffing::InvalidParameters("only the default grid is defined");
      if (workers < 1) workers = 1;
      const auto results = duffing::checks::run_suite(suite, workers);
      bool all_ok = true;
      if (verify_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
          arr.push_back({{"id", r.id},
                         {"name", r.name},
                         {"passed", r.passed},
                         {"detail", r.detail},
                         {"seconds", r.seconds}});
          all_ok = all_ok && r.passed;
        }
        std::cout << nlohmann::json{{"schema", duffing::kSchemaName}, {"suite", suite},
                                    {"criteria", arr}}
                         .dump(2)
                  << "\n";
      } else {
        for (const auto& r : results) {
          std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": "
                    << r.name << " (" << r.seconds << " s)\n";
          if (!r.passed) std::cout << "       " << r.detail << "\n";
          all_ok = all_ok && r.passed;
        }
      }
      return all_ok ? 0 : kExitVerifyFailed;
    }

    if (*sweep) {
      const duffing::Parameters base = make_params(wf);
      const nlohmann::json rep =
          duffing::sweep_report(base, sweep_param, sweep_from, sweep_to, sweep_steps);
      if (sweep_json) {
        std::cout << rep.dump(2) << "\n";
      } else {
        for (const auto& b : rep["boundaries"])
          std::cout << "boundary near " << sweep_param << " = "
                    << b["location"].get<double>() << " between "
                    << b["between"][0].get<std::string>() << " and "
                    << b["between"][1].get<std::string>() << "\n";
        if (rep["boundaries"].empty()) std::cout << "no panel change on this segment\n";
      }
      return 0;
    }
  } catch (const duffing::IntegrationFailure& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return kExitIntegrationFailed;
  } catch (const duffing::InvalidParameters& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
