#include "core/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "core/error.hpp"

namespace fcv {

namespace {

using json = nlohmann::json;

[[noreturn]] void format_error(const std::string& what) {
  throw Error(ErrorKind::Format, what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    format_error("line " + std::to_string(line) + ": '" + std::string(s) +
                 "' is not a number");
  }
  if (!std::isfinite(v)) {
    format_error("line " + std::to_string(line) + ": non-finite value");
  }
  return v;
}

std::string number17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json numbers(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(number(x));
  return arr;
}

json numbers(std::span<const double> v) {
  return numbers(std::vector<double>(v.begin(), v.end()));
}

json report_json(const Report& r) {
  json j;
  j["name"] = r.name;
  j["grid_levels"] = r.grid_levels;
  j["errors"] = numbers(r.errors);
  j["estimated_order"] =
      r.estimated_order ? number(*r.estimated_order) : json(nullptr);
  j["passed"] = r.passed;
  j["constraints_ok"] = r.constraints_ok;
  j["thresholds"] = {{"min_order", number(r.thresholds.min_order)},
                     {"error_ceiling", number(r.thresholds.error_ceiling)},
                     {"roundoff_floor", number(r.thresholds.roundoff_floor)}};
  json series = json::object();
  for (const auto& s : r.series) series[s.name] = numbers(s.values);
  j["series"] = series;
  return j;
}

json el_json(const ELReport& r, double transversality) {
  return {{"form", to_string(r.form)},
          {"K_hat", number(r.K_hat)},
          {"residual_norm", number(r.residual_norm)},
          {"evaluated_range", {r.first, r.last}},
          {"intervals", r.residual.intervals()},
          {"transversality", number(transversality)}};
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) format_error(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    format_error(std::string("field '") + name + "' has the wrong type");
  }
}

}  // namespace

GridFunction grid_from_csv(std::string_view text) {
  std::vector<double> xs, values;
  std::size_t line_no = 0;
  bool header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "x,value") {
        format_error("expected header 'x,value', found '" + std::string(line) + "'");
      }
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos ||
        line.find(',', comma + 1) != std::string_view::npos) {
      format_error("line " + std::to_string(line_no) + ": expected two columns");
    }
    xs.push_back(parse_number(line.substr(0, comma), line_no));
    values.push_back(parse_number(line.substr(comma + 1), line_no));
  }
  if (!header) format_error("empty grid file");
  if (xs.size() < 3) format_error("a grid needs at least 3 nodes");
  const double a = xs.front(), b = xs.back();
  if (!(a < b)) format_error("nodes must be strictly increasing");
  const double n = static_cast<double>(xs.size() - 1);
  const double h = (b - a) / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      format_error("nodes must be strictly increasing (row " +
                   std::to_string(i + 1) + ")");
    }
    const double expected = a + static_cast<double>(i) * h;
    if (std::abs(xs[i] - expected) > 1e-9 * h) {
      format_error("nodes are not uniform (row " + std::to_string(i + 1) + ")");
    }
  }
  return GridFunction(a, b, std::move(values));
}

std::string grid_to_csv(const GridFunction& f,
                        std::optional<std::size_t> singular_node,
                        int singular_sign) {
  std::string out = "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += number17(f.node(i));
    out += ',';
    if (singular_node && *singular_node == i) {
      out += singular_sign < 0 ? "-inf" : "inf";
    } else {
      out += number17(f[i]);
    }
    out += '\n';
  }
  return out;
}

VariationalProblem problem_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    format_error(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) format_error("problem file must hold a JSON object");
  const auto lagrangian = field<std::string>(j, "lagrangian");
  const auto alpha = field<double>(j, "alpha");
  const auto a = field<double>(j, "a");
  const auto b = field<double>(j, "b");
  const auto ya = field<double>(j, "ya");
  const auto yb = field<double>(j, "yb");
  if (!j.contains("n_grid") || !j["n_grid"].is_number_integer() ||
      j["n_grid"].get<long long>() < 2) {
    format_error("field 'n_grid' must be an integer >= 2");
  }
  const auto n = j["n_grid"].get<std::size_t>();
  return VariationalProblem(parse(lagrangian), FractionalOrder(alpha, a, b),
                            BoundaryConditions{ya, yb}, n);
}

std::string problem_to_json(const VariationalProblem& p) {
  const json j = {{"lagrangian", print(p.lagrangian())},
                  {"alpha", p.order().alpha()},
                  {"a", p.order().a()},
                  {"b", p.order().b()},
                  {"ya", p.bc().ya},
                  {"yb", p.bc().yb},
                  {"n_grid", p.n_grid()}};
  return j.dump(2) + "\n";
}

std::string to_json(const Report& r) { return report_json(r).dump(2) + "\n"; }

std::string to_json(const std::vector<Report>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

std::string to_json(const ELReport& r, double transversality) {
  return el_json(r, transversality).dump(2) + "\n";
}

std::string to_json(const WitnessReport& w) {
  const json j = {{"K", number(w.K)},
                  {"g_a", number(w.g_a)},
                  {"g_b", number(w.g_b)},
                  {"witness_value", number(w.witness_value)},
                  {"fitted_beta", number(w.fitted_beta)},
                  {"g", numbers(w.g.values())}};
  return j.dump(2) + "\n";
}

std::string to_json(const SolveResult& s, double transversality) {
  const json j = {{"objective", number(s.objective)},
                  {"gradient_norm", number(s.gradient_norm)},
                  {"iterations", s.iterations},
                  {"converged", s.converged},
                  {"residual", el_json(s.report, transversality)}};
  return j.dump(2) + "\n";
}

}  // namespace fcv
