#include "fcv/fcv.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <string_view>

#include "core/convergence.hpp"
#include "core/error.hpp"
#include "core/expr.hpp"
#include "core/fracops.hpp"
#include "core/laws.hpp"
#include "core/serialize.hpp"
#include "core/solver.hpp"
#include "core/varcalc.hpp"

struct fcv_grid {
  fcv::GridFunction f;
  std::optional<std::size_t> singular_node;
  int singular_sign = 0;
};

struct fcv_problem {
  fcv::VariationalProblem p;
};

struct fcv_expr {
  fcv::Expr e;
};

namespace {

thread_local std::string last_error;

fcv_status fail(fcv_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

fcv_status status_of(fcv::ErrorKind kind) {
  switch (kind) {
    case fcv::ErrorKind::Domain:
      return FCV_DOMAIN;
    case fcv::ErrorKind::Order:
      return FCV_ORDER;
    case fcv::ErrorKind::Parse:
      return FCV_PARSE;
    case fcv::ErrorKind::ExpressionDomain:
      return FCV_EXPRESSION;
    case fcv::ErrorKind::Constraint:
      return FCV_CONSTRAINT;
    case fcv::ErrorKind::Hypothesis:
      return FCV_HYPOTHESIS;
    case fcv::ErrorKind::Divergence:
      return FCV_DIVERGENCE;
    case fcv::ErrorKind::Format:
      return FCV_FORMAT;
  }
  return FCV_INTERNAL;
}

// Runs body, translating exceptions into status codes.
template <class F>
fcv_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const fcv::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FCV_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FCV_INTERNAL, e.what());
  } catch (...) {
    return fail(FCV_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define FCV_REQUIRE(ptr)                                                   \
  do {                                                                     \
    if ((ptr) == nullptr) return fail(FCV_INVALID_ARGUMENT, #ptr " is null"); \
  } while (0)

fcv::SolverConfig to_config(const fcv_solver_options* o) {
  fcv::SolverConfig cfg;
  if (o == nullptr) return cfg;
  cfg.max_iterations = o->max_iterations;
  cfg.gradient_tolerance = o->gradient_tolerance;
  if (o->line_search) {
    cfg.step_control = fcv::BacktrackingLineSearch{o->shrink, o->sufficient_decrease};
  } else {
    cfg.step_control = fcv::FixedStep{o->fixed_step};
  }
  return cfg;
}

fcv::Ladder to_ladder(const size_t* ladder, size_t levels) {
  if (ladder == nullptr) return fcv::default_ladder();
  return fcv::Ladder(ladder, ladder + levels);
}

std::vector<fcv::ELForm> parse_forms(const char* forms) {
  if (forms == nullptr) {
    return {fcv::ELForm::Integral, fcv::ELForm::RL, fcv::ELForm::Caputo};
  }
  std::vector<fcv::ELForm> out;
  std::string_view rest(forms);
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(fcv::parse_el_form(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

extern "C" {

const char* fcv_last_error_message(void) { return last_error.c_str(); }

const char* fcv_status_name(fcv_status status) {
  switch (status) {
    case FCV_OK:
      return "ok";
    case FCV_INVALID_ARGUMENT:
      return "invalid argument";
    case FCV_DOMAIN:
      return "domain error";
    case FCV_ORDER:
      return "order error";
    case FCV_PARSE:
      return "parse error";
    case FCV_EXPRESSION:
      return "expression domain error";
    case FCV_CONSTRAINT:
      return "constraint violation";
    case FCV_HYPOTHESIS:
      return "hypothesis violation";
    case FCV_DIVERGENCE:
      return "divergence";
    case FCV_FORMAT:
      return "format error";
    case FCV_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void fcv_string_free(char* s) { std::free(s); }

fcv_status fcv_grid_create(double a, double b, const double* values,
                           size_t count, fcv_grid** out) {
  FCV_REQUIRE(values);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = new fcv_grid{fcv::GridFunction(a, b, std::vector<double>(values, values + count)),
                        std::nullopt, 0};
    return FCV_OK;
  });
}

fcv_status fcv_grid_from_csv(const char* text, fcv_grid** out) {
  FCV_REQUIRE(text);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = new fcv_grid{fcv::grid_from_csv(text), std::nullopt, 0};
    return FCV_OK;
  });
}

fcv_status fcv_grid_to_csv(const fcv_grid* grid, char** out) {
  FCV_REQUIRE(grid);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(fcv::grid_to_csv(grid->f, grid->singular_node, grid->singular_sign));
    return FCV_OK;
  });
}

void fcv_grid_destroy(fcv_grid* grid) { delete grid; }

size_t fcv_grid_size(const fcv_grid* grid) { return grid ? grid->f.size() : 0; }
double fcv_grid_a(const fcv_grid* grid) { return grid ? grid->f.a() : 0.0; }
double fcv_grid_b(const fcv_grid* grid) { return grid ? grid->f.b() : 0.0; }
const double* fcv_grid_values(const fcv_grid* grid) {
  return grid ? grid->f.values().data() : nullptr;
}

int fcv_grid_singular_node(const fcv_grid* grid, size_t* node, int* sign) {
  if (grid == nullptr || !grid->singular_node) return 0;
  if (node) *node = *grid->singular_node;
  if (sign) *sign = grid->singular_sign;
  return 1;
}

fcv_status fcv_apply_operator(const fcv_grid* f, const char* op, double order,
                              fcv_grid** out) {
  FCV_REQUIRE(f);
  FCV_REQUIRE(op);
  FCV_REQUIRE(out);
  return guarded([&]() -> fcv_status {
    const std::string_view name(op);
    const auto& g = f->f;
    if (name == "nfold") {
      if (!(order >= 1.0) || order != static_cast<double>(static_cast<unsigned>(order))) {
        return fail(FCV_DOMAIN, "nfold needs a positive integer order");
      }
      *out = new fcv_grid{fcv::nfold_integral(g, static_cast<unsigned>(order)),
                          std::nullopt, 0};
      return FCV_OK;
    }
    const fcv::FractionalOrder ord(order, g.a(), g.b());
    if (name == "integral-left") {
      *out = new fcv_grid{fcv::left_rl_integral(g, ord), std::nullopt, 0};
    } else if (name == "integral-right") {
      *out = new fcv_grid{fcv::right_rl_integral(g, ord), std::nullopt, 0};
    } else if (name == "caputo-left") {
      *out = new fcv_grid{fcv::left_caputo_derivative(g, ord), std::nullopt, 0};
    } else if (name == "caputo-right") {
      *out = new fcv_grid{fcv::right_caputo_derivative(g, ord), std::nullopt, 0};
    } else if (name == "rl-left" || name == "rl-right") {
      auto d = name == "rl-left" ? fcv::left_rl_derivative(g, ord)
                                 : fcv::right_rl_derivative(g, ord);
      *out = new fcv_grid{std::move(d.value), d.singular_node, d.singular_sign};
    } else {
      return fail(FCV_INVALID_ARGUMENT,
                  "unknown operator '" + std::string(name) +
                      "' (expected integral-left, integral-right, caputo-left, "
                      "caputo-right, rl-left, rl-right or nfold)");
    }
    return FCV_OK;
  });
}

fcv_status fcv_expr_parse(const char* text, fcv_expr** out,
                          size_t* error_position) {
  FCV_REQUIRE(text);
  FCV_REQUIRE(out);
  try {
    last_error.clear();
    *out = new fcv_expr{fcv::parse(text)};
    return FCV_OK;
  } catch (const fcv::ParseError& e) {
    if (error_position) *error_position = e.position();
    return fail(FCV_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FCV_INTERNAL, "out of memory");
  }
}

void fcv_expr_destroy(fcv_expr* e) { delete e; }

fcv_status fcv_expr_print(const fcv_expr* e, char** out) {
  FCV_REQUIRE(e);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(fcv::print(e->e));
    return FCV_OK;
  });
}

fcv_status fcv_expr_eval(const fcv_expr* e, double x, double y, double dy,
                         double* out) {
  FCV_REQUIRE(e);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = fcv::evaluate(e->e, fcv::Point{x, y, dy});
    return FCV_OK;
  });
}

fcv_status fcv_expr_diff(const fcv_expr* e, const char* var, fcv_expr** out) {
  FCV_REQUIRE(e);
  FCV_REQUIRE(var);
  FCV_REQUIRE(out);
  return guarded([&]() -> fcv_status {
    const std::string_view v(var);
    fcv::Variable which;
    if (v == "x") {
      which = fcv::Variable::X;
    } else if (v == "y") {
      which = fcv::Variable::Y;
    } else if (v == "dy") {
      which = fcv::Variable::Dy;
    } else {
      return fail(FCV_INVALID_ARGUMENT, "unknown variable '" + std::string(v) + "'");
    }
    *out = new fcv_expr{fcv::differentiate(e->e, which)};
    return FCV_OK;
  });
}

fcv_status fcv_expr_simplify(const fcv_expr* e, fcv_expr** out) {
  FCV_REQUIRE(e);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = new fcv_expr{fcv::simplify(e->e)};
    return FCV_OK;
  });
}

int fcv_expr_is_c2(const fcv_expr* e) { return e && fcv::is_c2(e->e) ? 1 : 0; }

fcv_status fcv_problem_from_json(const char* text, fcv_problem** out) {
  FCV_REQUIRE(text);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = new fcv_problem{fcv::problem_from_json(text)};
    return FCV_OK;
  });
}

void fcv_problem_destroy(fcv_problem* p) { delete p; }

size_t fcv_problem_n_grid(const fcv_problem* p) { return p ? p->p.n_grid() : 0; }

fcv_status fcv_witness(const fcv_grid* f, double alpha, char** json) {
  FCV_REQUIRE(f);
  FCV_REQUIRE(json);
  return guarded([&] {
    const fcv::FractionalOrder ord(alpha, f->f.a(), f->f.b());
    ord.require_derivative_order();
    *json = dup_string(fcv::to_json(fcv::dubois_reymond_witness(f->f, ord)));
    return FCV_OK;
  });
}

fcv_status fcv_residual(const fcv_problem* p, const fcv_grid* y,
                        const char* form, char** json, fcv_grid** residual) {
  FCV_REQUIRE(p);
  FCV_REQUIRE(y);
  FCV_REQUIRE(form);
  FCV_REQUIRE(json);
  return guarded([&] {
    const auto r = fcv::el_residual(fcv::parse_el_form(form), p->p, y->f);
    const double tr = fcv::transversality_check(p->p, y->f);
    char* text = dup_string(fcv::to_json(r, tr));
    if (residual) {
      try {
        *residual = new fcv_grid{r.residual, std::nullopt, 0};
      } catch (...) {
        std::free(text);
        throw;
      }
    }
    *json = text;
    return FCV_OK;
  });
}

fcv_status fcv_functional(const fcv_problem* p, const fcv_grid* y, double* out) {
  FCV_REQUIRE(p);
  FCV_REQUIRE(y);
  FCV_REQUIRE(out);
  return guarded([&] {
    *out = fcv::eval_functional(p->p, y->f);
    return FCV_OK;
  });
}

void fcv_solver_options_default(fcv_solver_options* options) {
  if (options == nullptr) return;
  const fcv::SolverConfig cfg;
  const fcv::BacktrackingLineSearch ls;
  options->max_iterations = cfg.max_iterations;
  options->gradient_tolerance = cfg.gradient_tolerance;
  options->line_search = 1;
  options->fixed_step = fcv::FixedStep{}.step;
  options->shrink = ls.shrink;
  options->sufficient_decrease = ls.sufficient_decrease;
}

fcv_status fcv_solve(const fcv_problem* p, const fcv_solver_options* options,
                     const fcv_grid* initial, fcv_grid** y, char** json) {
  FCV_REQUIRE(p);
  FCV_REQUIRE(y);
  *y = nullptr;
  return guarded([&] {
    fcv::SolverConfig cfg = to_config(options);
    if (initial) cfg.initial_guess = initial->f;
    try {
      const auto s = fcv::solve_direct(p->p, cfg);
      const double tr = fcv::transversality_check(p->p, s.y);
      if (json) *json = dup_string(fcv::to_json(s, tr));
      *y = new fcv_grid{s.y, std::nullopt, 0};
    } catch (const fcv::DivergenceError& e) {
      *y = new fcv_grid{e.last_iterate(), std::nullopt, 0};
      throw;
    }
    return FCV_OK;
  });
}

fcv_status fcv_run_laws(const size_t* ladder, size_t levels,
                        const fcv_thresholds* thresholds, char** json,
                        int* all_passed) {
  FCV_REQUIRE(json);
  return guarded([&] {
    fcv::LawOptions options;
    options.ladder = to_ladder(ladder, levels);
    if (thresholds) {
      options.min_order = thresholds->min_order;
      options.ceiling_factor = thresholds->error_ceiling;
    }
    const auto reports = fcv::run_law_suite(options);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed;
    *json = dup_string(fcv::to_json(reports));
    if (all_passed) *all_passed = ok ? 1 : 0;
    return FCV_OK;
  });
}

fcv_status fcv_run_convergence(const fcv_problem* p, const size_t* ladder,
                               size_t levels, const char* candidate,
                               const char* forms,
                               const fcv_thresholds* thresholds,
                               const fcv_solver_options* options, char** json,
                               int* all_passed) {
  FCV_REQUIRE(p);
  FCV_REQUIRE(json);
  return guarded([&] {
    fcv::ConvergenceOptions opts;
    opts.ladder = to_ladder(ladder, levels);
    opts.forms = parse_forms(forms);
    if (thresholds) {
      opts.min_order = thresholds->min_order;
      opts.error_ceiling = thresholds->error_ceiling;
    }
    if (options) opts.solver = to_config(options);
    const auto c = fcv::Candidate::parse(candidate ? candidate : "solve");
    const auto reports = fcv::run_convergence(p->p, c, opts);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed;
    *json = dup_string(fcv::to_json(reports));
    if (all_passed) *all_passed = ok ? 1 : 0;
    return FCV_OK;
  });
}

}  // extern "C"
