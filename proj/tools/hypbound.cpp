// hypbound: distances, degrees, bound-verification campaigns and the
// half-plane / counterexample / convergence demos.
//
// Exit status: 0 when no violation is found (counterexample: 0 when the
// expected violation occurs), 1 otherwise, 2 on usage or runtime errors.

#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hypbound/bounds.hpp"
#include "hypbound/covering.hpp"
#include "hypbound/errors.hpp"
#include "hypbound/harness.hpp"
#include "hypbound/holomaps.hpp"
#include "hypbound/models.hpp"

using namespace hypbound;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + item + "'");
    }
  }
  return values;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic-metric bounds for holomorphic self-maps of the disc and punctured disc"};
  app.require_subcommand(1);

  std::string model_arg, u_arg, v_arg;
  auto* dist_cmd = app.add_subcommand("dist", "Hyperbolic distance between two points of a model");
  dist_cmd->add_option("model", model_arg, "disc | uhp | rhp | punctured")->required();
  dist_cmd->add_option("u", u_arg, "first point, e.g. 0.3+0.5i")->required();
  dist_cmd->add_option("v", v_arg, "second point")->required();

  std::string map_arg;
  auto* degree_cmd = app.add_subcommand("degree", "Degree of a punctured-disc self-map by contour integral");
  degree_cmd->add_option("map", map_arg, "map JSON or shorthand such as power:m=3 or exp:m=2,c=0.5")->required();

  std::string theorem_arg = "two_point", family_arg = "mixed:max_degree=5", out_arg;
  CampaignConfig config;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* verify_cmd = app.add_subcommand("verify", "Sampled verification campaign");
  verify_cmd->add_option("--theorem", theorem_arg, "two_point | two_point_sharp | xjb | fixed_point | punctured")
      ->capture_default_str();
  verify_cmd->add_option("--family", family_arg, "sampling family, e.g. blaschke:max_degree=5")->capture_default_str();
  verify_cmd->add_option("--samples", config.samples)->capture_default_str();
  verify_cmd->add_option("--seed", config.seed)->capture_default_str();
  verify_cmd->add_option("--min-sep", config.min_sep)->capture_default_str();
  verify_cmd->add_option("--max-radius", config.max_radius)->capture_default_str();
  verify_cmd->add_option("--tolerance", config.tolerance)->capture_default_str();
  verify_cmd->add_option("--threads", threads)->capture_default_str();
  verify_cmd->add_option("--out", out_arg, "report path (.json or .csv); stdout when omitted");

  std::string n_list = "10,100,1000,10000", half_out;
  auto* half_cmd = app.add_subcommand("halfplane", "Displacement growth of w -> w + 1/n^2 on the right half-plane");
  half_cmd->add_option("--n", n_list, "comma-separated n >= 2")->capture_default_str();
  half_cmd->add_option("--out", half_out, "CSV path; stdout when omitted");

  std::string counter_out;
  auto* counter_cmd = app.add_subcommand("counterexample", "Re(w) contracts the metric but breaks the two-point bound");
  counter_cmd->add_option("--out", counter_out, "JSON path; stdout when omitted");

  std::string budget_arg = "inv_square", z_arg = "0.5i", a_arg = "0.3", b_arg = "-0.3", conv_out;
  int n_max = 100;
  auto* conv_cmd = app.add_subcommand("convergence", "Transfer of a summable two-point budget to any z");
  conv_cmd->add_option("--budget", budget_arg, "inv_square | inv_cube | geometric:r=R")->capture_default_str();
  conv_cmd->add_option("--z", z_arg)->capture_default_str();
  conv_cmd->add_option("--a", a_arg)->capture_default_str();
  conv_cmd->add_option("--b", b_arg)->capture_default_str();
  conv_cmd->add_option("--n-max", n_max)->capture_default_str();
  conv_cmd->add_option("--out", conv_out, "CSV path; stdout when omitted");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dist_cmd) {
      const Model model = parse_model(model_arg);
      const double d = dist(ModelPoint(parse_complex(u_arg), model), ModelPoint(parse_complex(v_arg), model));
      std::cout << format_real(d) << '\n';
      return 0;
    }
    if (*degree_cmd) {
      const DegreeResult result = degree_contour(parse_map_spec(map_arg));
      nlohmann::json j = {{"value", result.value}, {"residual", format_real(result.residual)}, {"panels", result.panels}};
      std::cout << j.dump() << '\n';
      return 0;
    }
    if (*verify_cmd) {
      config.theorem = parse_theorem(theorem_arg);
      config.family = parse_family(family_arg);
      config.threads = threads;
      const CampaignReport report = run_campaign(config);
      if (out_arg.empty() || out_arg == "-") {
        std::cout << to_json(report).dump(2) << '\n';
      } else {
        write_campaign(report, out_arg);
      }
      std::cerr << report.samples_evaluated << " samples, " << report.violations.size()
                << " violations, min margin " << format_real(report.margins.min) << '\n';
      return report.violations.empty() ? 0 : 1;
    }
    if (*half_cmd) {
      const auto rows = halfplane_growth(parse_int_list(n_list));
      emit(half_out, halfplane_csv(rows));
      for (const HalfplaneRow& row : rows) {
        if (!row.within_bound) return 1;
      }
      return 0;
    }
    if (*counter_cmd) {
      const CampaignReport report = counterexample_demo();
      emit(counter_out, to_json(report).dump(2) + "\n");
      const bool expected = !report.violations.empty() && report.findings.at("contraction_holds").get<bool>();
      return expected ? 0 : 1;
    }
    if (*conv_cmd) {
      const auto rows = convergence_demo(parse_budget(budget_arg), disc_point(parse_complex(z_arg)),
                                         disc_point(parse_complex(a_arg)), disc_point(parse_complex(b_arg)), n_max);
      emit(conv_out, convergence_csv(rows));
      for (const ConvergenceRow& row : rows) {
        if (!row.within_bound) return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "hypbound: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
