#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stochord/json_io.hpp"
#include "stochord/lattice.hpp"
#include "stochord/maxitive.hpp"
#include "stochord/orders.hpp"
#include "stochord/piecewise_linear.hpp"
#include "stochord/step_quantile.hpp"
#include "stochord/verify.hpp"

namespace {

using stochord::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw stochord::ParseError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw stochord::ParseError(path + ": " + e.what());
  }
  return j;
}

// Inline JSON is accepted wherever a file path is expected.
json load_json_or_inline(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::exception& e) {
      throw stochord::ParseError(std::string("inline JSON: ") + e.what());
    }
  }
  return load_json(arg);
}

stochord::StepQuantile load_distribution(const std::string& path, double tol) {
  return stochord::distribution_from_json(load_json(path), tol);
}

// --set accepts files or directories; directories contribute their *.json
// entries in sorted order.
std::vector<stochord::StepQuantile> load_set(const std::vector<std::string>& args,
                                             double tol) {
  std::vector<std::string> files;
  for (const auto& a : args) {
    if (std::filesystem::is_directory(a)) {
      std::vector<std::string> found;
      for (const auto& e : std::filesystem::directory_iterator(a))
        if (e.path().extension() == ".json") found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(a);
    }
  }
  if (files.empty()) throw stochord::ParseError("empty distribution set");
  std::vector<stochord::StepQuantile> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_distribution(f, tol));
  return out;
}

void emit(const json& j, const std::string& out_path = {}) {
  const std::string text = j.dump();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw stochord::ParseError("cannot write file: " + out_path);
    out << text << "\n";
  }
  std::cout << text << "\n";
}

json suites_to_json(const std::vector<stochord::verify::SuiteReport>& reports,
                    int trials, std::uint64_t seed) {
  json suites = json::array();
  double max_dev = 0.0;
  for (const auto& r : reports) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      json jc{{"name", c.name},
              {"trials", c.trials},
              {"violations", c.violations},
              {"max_deviation", stochord::number_to_json(c.max_deviation)}};
      if (!c.note.empty()) jc["note"] = c.note;
      checks.push_back(jc);
      if (std::isfinite(c.max_deviation))
        max_dev = std::max(max_dev, c.max_deviation);
    }
    suites.push_back(json{{"suite", r.suite},
                          {"violations", r.violations()},
                          {"checks", checks}});
  }
  return json{{"trials", trials},
              {"seed", seed},
              {"violations", stochord::verify::total_violations(reports)},
              {"max_deviation", stochord::number_to_json(max_dev)},
              {"suites", suites}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochord: stochastic orders, lattice suprema and maxitive "
               "functionals on finitely supported distributions"};
  app.require_subcommand(1);

  double tol = stochord::kDefaultTol;
  std::uint64_t seed = 0;
  app.add_option("--tol", tol, "absolute tolerance for order predicates");
  app.add_option("--seed", seed, "seed for randomized commands");

  // check
  auto* check = app.add_subcommand("check", "decide a stochastic order");
  std::string check_rel;
  std::vector<std::string> check_files;
  check->add_option("--relation", check_rel, "st|icx|cx|icv|disp")->required();
  check->add_option("files", check_files, "two distribution files")
      ->expected(2);

  // sup
  auto* sup = app.add_subcommand("sup", "supremum of a family");
  std::string sup_rel, sup_out;
  std::vector<std::string> sup_files;
  sup->add_option("--relation", sup_rel, "st|icx|cx|icv|disp")->required();
  sup->add_option("--out", sup_out, "write the result here as well");
  sup->add_option("files", sup_files, "distribution files")->expected(-1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a maxitive functional");
  std::string eval_spec, eval_dist;
  eval->add_option("--spec", eval_spec, "functional spec (file or inline JSON)")
      ->required();
  eval->add_option("distribution", eval_dist, "distribution file")->required();

  // alpha-min
  auto* amin = app.add_subcommand("alpha-min",
                                  "minimal penalty of an acceptance family");
  std::string amin_rel, amin_out;
  std::vector<std::string> amin_set;
  amin->add_option("--relation", amin_rel, "st|icx|icv|disp")->required();
  amin->add_option("--set", amin_set, "distribution files or directories")
      ->required();
  amin->add_option("--out", amin_out, "write the curve here as well");

  // tv
  auto* tv = app.add_subcommand("tv", "total variation of a family");
  std::vector<std::string> tv_set;
  double tv_from = 0.0, tv_to = 1.0;
  tv->add_option("--set", tv_set, "distribution files or directories")
      ->required();
  tv->add_option("--from", tv_from, "left endpoint")->required();
  tv->add_option("--to", tv_to, "right endpoint")->required();

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the oracle-backed property suites");
  std::string verify_suite = "all";
  int verify_trials = 100;
  verify_cmd->add_option("--suite", verify_suite,
                         "quantile|orders|lattice|maxitive|all|selfcheck");
  verify_cmd->add_option("--trials", verify_trials, "trials per check");

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "emit CSV samples");
  std::string plot_dist, plot_what = "q";
  int plot_points = 101;
  plot->add_option("distribution", plot_dist, "distribution file")->required();
  plot->add_option("--what", plot_what, "q|qplus|Q|Qbar");
  plot->add_option("--points", plot_points, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (!(tol > 0.0)) throw stochord::ParseError("tolerance must be positive");

    if (*check) {
      const auto rel = stochord::order_relation_from_string(check_rel);
      const auto a = load_distribution(check_files[0], tol);
      const auto b = load_distribution(check_files[1], tol);
      emit(stochord::verdict_to_json(rel, stochord::check_order(rel, a, b, tol)));
      return kExitOk;
    }

    if (*sup) {
      const auto rel = stochord::order_relation_from_string(sup_rel);
      const stochord::QuantileFamily fam(load_set(sup_files, tol));
      emit(stochord::distribution_to_json(stochord::sup_order(rel, fam, tol)),
           sup_out);
      return kExitOk;
    }

    if (*eval) {
      const auto spec =
          stochord::functional_from_json(load_json_or_inline(eval_spec));
      const auto q = load_distribution(eval_dist, tol);
      emit(json{{"value",
                 stochord::number_to_json(stochord::evaluate(spec, q, tol))}});
      return kExitOk;
    }

    if (*amin) {
      const auto rel = stochord::order_relation_from_string(amin_rel);
      const stochord::QuantileFamily fam(load_set(amin_set, tol));
      emit(stochord::curve_to_json(stochord::alpha_min_from_set(rel, fam, tol)),
           amin_out);
      return kExitOk;
    }

    if (*tv) {
      const stochord::QuantileFamily fam(load_set(tv_set, tol));
      emit(json{{"interval", json::array({tv_from, tv_to})},
                {"tv", stochord::total_variation(fam, tv_from, tv_to)}});
      return kExitOk;
    }

    if (*verify_cmd) {
      const auto reports =
          stochord::verify::run_suites(verify_suite, verify_trials, seed, tol);
      emit(suites_to_json(reports, verify_trials, seed));
      return stochord::verify::total_violations(reports) > 0 ? kExitViolation
                                                             : kExitOk;
    }

    if (*plot) {
      if (plot_points < 2) throw stochord::ParseError("need at least 2 points");
      const auto q = load_distribution(plot_dist, tol);
      const auto Q = stochord::integrated_quantile(q);
      const auto R = stochord::reflected_integrated(q);
      std::printf("u,value\n");
      for (int i = 1; i <= plot_points; ++i) {
        const double u = static_cast<double>(i) /
                         static_cast<double>(plot_points + 1);
        double y;
        if (plot_what == "q") y = q.value(u);
        else if (plot_what == "qplus") y = q.upper_value(u);
        else if (plot_what == "Q") y = Q.value(u);
        else if (plot_what == "Qbar") y = R.value(u);
        else throw stochord::ParseError("unknown --what: " + plot_what);
        std::printf("%.17g,%.17g\n", u, y);
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
