#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"
#include "fcv/fcv.h"

namespace fcv::cli {

namespace {

namespace fs = std::filesystem;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(fcv_status s) {
  return s == FCV_DIVERGENCE ? kDiverged : kUsageError;
}

void check(fcv_status s, const std::string& context) {
  if (s == FCV_OK) return;
  throw Failure{exit_code_for(s),
                context + ": " + fcv_status_name(s) + ": " + fcv_last_error_message()};
}

struct GridDeleter {
  void operator()(fcv_grid* g) const { fcv_grid_destroy(g); }
};
struct ProblemDeleter {
  void operator()(fcv_problem* p) const { fcv_problem_destroy(p); }
};
struct StringDeleter {
  void operator()(char* s) const { fcv_string_free(s); }
};
using Grid = std::unique_ptr<fcv_grid, GridDeleter>;
using Problem = std::unique_ptr<fcv_problem, ProblemDeleter>;
using Text = std::unique_ptr<char, StringDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsageError, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Grid load_grid(const std::string& path) {
  const std::string text = read_file(path);
  fcv_grid* g = nullptr;
  check(fcv_grid_from_csv(text.c_str(), &g), path);
  return Grid(g);
}

Problem load_problem(const std::string& path) {
  const std::string text = read_file(path);
  fcv_problem* p = nullptr;
  check(fcv_problem_from_json(text.c_str(), &p), path);
  return Problem(p);
}

std::string grid_csv(const fcv_grid* g) {
  char* s = nullptr;
  check(fcv_grid_to_csv(g, &s), "csv output");
  return Text(s).get();
}

std::vector<std::size_t> parse_ladder(const std::string& text) {
  std::vector<std::size_t> out;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    std::size_t v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw Failure{kUsageError, "--ladder: '" + std::string(item) +
                                     "' is not a grid size"};
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

// Outputs are staged next to their destination and renamed into place only
// when the whole command has succeeded. Staged files left behind by an
// error are removed.
class OutputTransaction {
 public:
  OutputTransaction(std::ostream& out, const RunHooks& hooks)
      : out_(out), hooks_(hooks) {}
  OutputTransaction(const OutputTransaction&) = delete;
  OutputTransaction& operator=(const OutputTransaction&) = delete;

  ~OutputTransaction() {
    std::error_code ec;
    for (const auto& s : staged_) fs::remove(s.temp, ec);
  }

  // An empty path or "-" means standard output, written at commit.
  void stage(const std::string& path, std::string content) {
    if (path.empty() || path == "-") {
      stdout_.push_back(std::move(content));
      return;
    }
    const std::string temp =
        path + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(staged_.size());
    {
      std::ofstream f(temp, std::ios::binary | std::ios::trunc);
      if (!f) throw Failure{kUsageError, "cannot write '" + path + "'"};
      staged_.push_back({temp, path});
      f << content;
      f.flush();
      if (!f) throw Failure{kUsageError, "cannot write '" + path + "'"};
    }
    if (hooks_.after_stage) hooks_.after_stage(path);
  }

  void commit() {
    for (auto& s : staged_) {
      std::error_code ec;
      fs::rename(s.temp, s.final, ec);
      if (ec) {
        throw Failure{kUsageError, "cannot move output into '" + s.final +
                                       "': " + ec.message()};
      }
    }
    staged_.clear();
    for (const auto& text : stdout_) out_ << text;
    out_.flush();
  }

 private:
  struct Staged {
    std::string temp;
    std::string final;
  };
  std::ostream& out_;
  const RunHooks& hooks_;
  std::vector<Staged> staged_;
  std::vector<std::string> stdout_;
};

struct SolverFlags {
  std::optional<std::size_t> max_iterations;
  std::optional<double> tolerance;
  std::string step = "backtracking";

  fcv_solver_options options() const {
    fcv_solver_options o;
    fcv_solver_options_default(&o);
    if (max_iterations) o.max_iterations = *max_iterations;
    if (tolerance) o.gradient_tolerance = *tolerance;
    if (step == "backtracking") {
      o.line_search = 1;
    } else if (step.starts_with("fixed:")) {
      o.line_search = 0;
      const std::string v = step.substr(6);
      char* end = nullptr;
      o.fixed_step = std::strtod(v.c_str(), &end);
      if (v.empty() || *end != '\0') {
        throw Failure{kUsageError, "--step: bad fixed step '" + v + "'"};
      }
    } else {
      throw Failure{kUsageError,
                    "--step: expected 'backtracking' or 'fixed:<step>'"};
    }
    return o;
  }

  void add_to(CLI::App* app) {
    app->add_option("--max-iterations", max_iterations, "Iteration limit");
    app->add_option("--tolerance", tolerance,
                    "Stop when the discrete gradient max-norm is this small");
    app->add_option("--step", step, "backtracking or fixed:<step>");
  }
};

struct Options {
  // deriv / witness
  std::string op;
  double alpha = 0.0;
  std::string in;
  std::string out;
  // laws / converge
  std::string fixtures = "default";
  std::string ladder = "64,128,256,512";
  std::optional<double> min_order;
  std::optional<double> ceiling;
  // residual / solve / converge
  std::string problem;
  std::string candidate;
  std::string form = "caputo";
  std::string forms = "all";
  std::string residual_out;
  std::string report;
  std::string initial;
  SolverFlags solver;
};

int cmd_deriv(const Options& o, OutputTransaction& tx) {
  const Grid f = load_grid(o.in);
  fcv_grid* d = nullptr;
  check(fcv_apply_operator(f.get(), o.op.c_str(), o.alpha, &d), o.op);
  const Grid result(d);
  tx.stage(o.out, grid_csv(result.get()));
  tx.commit();
  return kOk;
}

int cmd_laws(const Options& o, OutputTransaction& tx) {
  if (o.fixtures != "default") {
    throw Failure{kUsageError, "--fixtures: only 'default' is available"};
  }
  const auto ladder = parse_ladder(o.ladder);
  fcv_thresholds t{1.0, 1e-2};
  if (o.min_order) t.min_order = *o.min_order;
  if (o.ceiling) t.error_ceiling = *o.ceiling;
  char* json = nullptr;
  int passed = 0;
  check(fcv_run_laws(ladder.data(), ladder.size(), &t, &json, &passed), "laws");
  tx.stage(o.out, Text(json).get());
  tx.commit();
  return passed ? kOk : kCheckFailed;
}

int cmd_residual(const Options& o, OutputTransaction& tx) {
  const Problem p = load_problem(o.problem);
  const Grid y = load_grid(o.candidate);
  char* json = nullptr;
  fcv_grid* r = nullptr;
  check(fcv_residual(p.get(), y.get(), o.form.c_str(), &json,
                     o.residual_out.empty() ? nullptr : &r),
        "residual");
  const Text text(json);
  const Grid residual(r);
  tx.stage(o.out, text.get());
  if (residual) tx.stage(o.residual_out, grid_csv(residual.get()));
  tx.commit();
  return kOk;
}

int cmd_witness(const Options& o, OutputTransaction& tx) {
  const Grid f = load_grid(o.in);
  char* json = nullptr;
  check(fcv_witness(f.get(), o.alpha, &json), "witness");
  tx.stage(o.out, Text(json).get());
  tx.commit();
  return kOk;
}

int cmd_solve(const Options& o, OutputTransaction& tx) {
  const Problem p = load_problem(o.problem);
  const fcv_solver_options opts = o.solver.options();
  Grid initial;
  if (!o.initial.empty()) initial = load_grid(o.initial);
  fcv_grid* y = nullptr;
  char* json = nullptr;
  const fcv_status s = fcv_solve(p.get(), &opts, initial.get(), &y, &json);
  const Grid solution(y);
  const Text text(json);
  check(s, "solve");
  tx.stage(o.out, grid_csv(solution.get()));
  if (!o.report.empty()) tx.stage(o.report, text.get());
  tx.commit();
  return kOk;
}

int cmd_converge(const Options& o, OutputTransaction& tx) {
  const Problem p = load_problem(o.problem);
  const auto ladder = parse_ladder(o.ladder);
  fcv_thresholds t{0.5, 1e-2};
  if (o.min_order) t.min_order = *o.min_order;
  if (o.ceiling) t.error_ceiling = *o.ceiling;
  const fcv_solver_options opts = o.solver.options();
  const std::string candidate = o.candidate.empty() ? "solve" : o.candidate;
  const char* forms = o.forms == "all" ? nullptr : o.forms.c_str();
  char* json = nullptr;
  int passed = 0;
  check(fcv_run_convergence(p.get(), ladder.data(), ladder.size(),
                            candidate.c_str(), forms, &t, &opts, &json, &passed),
        "converge");
  tx.stage(o.out, Text(json).get());
  tx.commit();
  return passed ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const RunHooks& hooks) {
  CLI::App app{"Fractional calculus of variations toolkit", "fcv"};
  app.require_subcommand(1);
  Options o;

  auto* deriv = app.add_subcommand("deriv", "Apply a fractional operator to a CSV grid");
  deriv->add_option("--op", o.op,
                    "integral-left, integral-right, caputo-left, caputo-right, "
                    "rl-left, rl-right or nfold")
      ->required();
  deriv->add_option("--alpha", o.alpha, "Order (the integer n for nfold)")->required();
  deriv->add_option("--in", o.in, "Input CSV")->required();
  deriv->add_option("--out", o.out, "Output CSV (default: stdout)");

  auto* laws = app.add_subcommand("laws", "Run the identity suite");
  laws->add_option("--fixtures", o.fixtures, "Fixture set")->capture_default_str();
  laws->add_option("--ladder", o.ladder, "Grid levels")->capture_default_str();
  laws->add_option("--min-order", o.min_order, "Required order (default 1)");
  laws->add_option("--ceiling-factor", o.ceiling,
                   "Finest error bound as a factor of max|f| (default 1e-2)");
  laws->add_option("--out", o.out, "Output JSON (default: stdout)");

  auto* residual = app.add_subcommand("residual", "Euler-Lagrange residual of a candidate");
  residual->add_option("--problem", o.problem, "Problem JSON")->required();
  residual->add_option("--candidate", o.candidate, "Candidate CSV")->required();
  residual->add_option("--form", o.form, "integral, rl or caputo")->capture_default_str();
  residual->add_option("--out", o.out, "Output JSON (default: stdout)");
  residual->add_option("--residual-out", o.residual_out, "Residual CSV");

  auto* witness = app.add_subcommand("witness", "DuBois-Reymond witness of a CSV grid");
  witness->add_option("--alpha", o.alpha, "Order")->required();
  witness->add_option("--in", o.in, "Input CSV")->required();
  witness->add_option("--out", o.out, "Output JSON (default: stdout)");

  auto* solve = app.add_subcommand("solve", "Minimize the discretized functional");
  solve->add_option("--problem", o.problem, "Problem JSON")->required();
  solve->add_option("--out", o.out, "Minimizer CSV (default: stdout)");
  solve->add_option("--report", o.report, "Solver report JSON");
  solve->add_option("--initial", o.initial, "Initial guess CSV");
  o.solver.add_to(solve);

  auto* converge = app.add_subcommand("converge", "Residual refinement study");
  converge->add_option("--problem", o.problem, "Problem JSON")->required();
  converge->add_option("--ladder", o.ladder, "Grid levels (at least 3)")
      ->capture_default_str();
  converge->add_option("--candidate", o.candidate,
                       "solve, solve:<initial f(x)>, expr:<f(x)> or el-profile:<K> (default solve)");
  converge->add_option("--form", o.forms,
                       "all or a comma list of integral, rl, caputo")
      ->capture_default_str();
  converge->add_option("--min-order", o.min_order, "Required order (default 0.5)");
  converge->add_option("--ceiling", o.ceiling, "Finest residual bound (default 1e-2)");
  converge->add_option("--out", o.out, "Output JSON (default: stdout)");
  o.solver.add_to(converge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "fcv: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    OutputTransaction tx(out, hooks);
    if (deriv->parsed()) return cmd_deriv(o, tx);
    if (laws->parsed()) return cmd_laws(o, tx);
    if (residual->parsed()) return cmd_residual(o, tx);
    if (witness->parsed()) return cmd_witness(o, tx);
    if (solve->parsed()) return cmd_solve(o, tx);
    return cmd_converge(o, tx);
  } catch (const Failure& f) {
    err << "fcv: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    err << "fcv: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace fcv::cli
