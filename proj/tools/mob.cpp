#include "mob/continuation.hpp"
#include "mob/error.hpp"
#include "mob/orchestrator.hpp"
#include "mob/quadrature.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mob::Error("orchestrator", mob::ErrorKind::bad_value, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

// "a,b" with each entry a real number or (re,im).
std::vector<mob::cplx> parse_complex_list(const std::string& text) {
  std::vector<mob::cplx> out;
  if (text.empty()) return out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '(') {
      const std::size_t close = text.find(')', i);
      if (close == std::string::npos) throw std::invalid_argument("unbalanced parenthesis in " + text);
      const std::string inner = text.substr(i + 1, close - i - 1);
      const std::size_t comma = inner.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("complex value needs (re,im)");
      out.emplace_back(std::stod(inner.substr(0, comma)), std::stod(inner.substr(comma + 1)));
      i = close + 1;
    } else {
      const std::size_t comma = text.find(',', i);
      const std::string item = text.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
      const std::size_t slash = item.find('/');
      const double re = slash == std::string::npos ? std::stod(item)
                                                   : std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1));
      out.emplace_back(re, -0.0);
      i = comma == std::string::npos ? text.size() : comma;
    }
    if (i < text.size() && text[i] == ',') ++i;
  }
  return out;
}

std::string format(mob::cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.16g%+.16gi", z.real(), z.imag());
  return buf;
}

void report_error(const mob::Error& e) {
  std::cerr << "error [" << e.module() << "/" << mob::to_string(e.kind()) << "]: " << e.what();
  std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Method of brackets evaluator"};
  app.require_subcommand(1);

  mob::NumericConfig cfg;
  if (const char* p = std::getenv("MOB_SEED_PRECISION")) cfg.precision = p;

  std::string spec_path, assign_text, json_path, eps_ladder, a_ladder;
  std::vector<std::string> regulate, split;
  bool trace = false;
  auto* eval = app.add_subcommand("eval", "evaluate an integral spec");
  eval->add_option("--spec", spec_path, "spec file")->required();
  eval->add_option("--assign", assign_text, "parameter values, e.g. alpha=2,beta=1");
  eval->add_option("--regulate", regulate, "var=NAME: multiply the integrand by var^NAME");
  eval->add_option("--split-summand", split, "INDEX[=NAME]: NAME^n on summand INDEX (1-based) of the first sum");
  eval->add_option("--tol", cfg.tol, "target tolerance");
  eval->add_option("--max-terms", cfg.max_terms, "maximum series terms");
  eval->add_option("--eps-ladder", eps_ladder, "comma-separated regulator ladder");
  eval->add_option("--a-ladder", a_ladder, "comma-separated A ladder");
  eval->add_option("--json", json_path, "write the JSON report here (- for stdout)");
  eval->add_flag("--trace", trace, "include the expansion trace");

  std::string upper, lower, xtext;
  auto* pfq = app.add_subcommand("pfq", "hypergeometric function with continuation to |x| > 1");
  pfq->add_option("--upper", upper, "upper parameters")->required();
  pfq->add_option("--lower", lower, "lower parameters");
  pfq->add_option("--x", xtext, "argument, real or (re,im)")->required();
  pfq->add_option("--tol", cfg.tol, "target tolerance");

  std::string oracle_spec, oracle_assign;
  auto* oracle = app.add_subcommand("oracle", "brute-force quadrature of a spec");
  oracle->add_option("--spec", oracle_spec, "spec file")->required();
  oracle->add_option("--assign", oracle_assign, "parameter values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      mob::RunRequest req;
      req.spec_path = spec_path;
      req.spec_text = read_file(spec_path);
      req.assignments = mob::parse_assignments(assign_text);
      for (const auto& r : regulate) {
        const auto eq = r.find('=');
        if (eq == std::string::npos) throw mob::Error("orchestrator", mob::ErrorKind::bad_value, "--regulate needs var=NAME");
        req.regulate.push_back({r.substr(0, eq), r.substr(eq + 1)});
      }
      if (split.size() > 1) throw mob::Error("orchestrator", mob::ErrorKind::unsupported, "one --split-summand only");
      if (!split.empty()) {
        const auto eq = split[0].find('=');
        mob::SummandSplit s;
        s.position = std::stoi(split[0].substr(0, eq));
        if (eq != std::string::npos) s.symbol = split[0].substr(eq + 1);
        req.split = s;
      }
      if (!eps_ladder.empty()) cfg.eps_ladder = parse_ladder(eps_ladder);
      if (!a_ladder.empty()) cfg.a_ladder = parse_ladder(a_ladder);
      req.config = cfg;
      req.trace = trace;
      const mob::RunResult result = mob::run(req);
      if (json_path == "-") {
        std::cout << result.report.dump(2) << "\n";
        return result.exit_code;
      }
      if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << result.report.dump(2) << "\n";
      }
      std::cout << mob::render_human(result.report);
      return result.exit_code;
    }
    if (*pfq) {
      const auto up = parse_complex_list(upper);
      const auto lo = parse_complex_list(lower);
      const auto xs = parse_complex_list(xtext);
      if (xs.size() != 1) throw mob::Error("orchestrator", mob::ErrorKind::bad_value, "--x needs one value");
      const mob::cplx x = xs[0];
      if (up.size() == lo.size() + 1 && std::abs(x) > 1) {
        const mob::Continuation c = mob::continue_pfq(up, lo, x, cfg);
        std::cout << "value: " << format(c.value.value) << " +- " << c.value.error << "\n";
        for (const auto& e : c.certificate) {
          std::cout << "  " << e.label << ": " << e.series << " = " << format(e.value) << "  [" << e.region << ", "
                    << e.sum.terms << " terms]\n";
        }
        return c.value.status == mob::SumStatus::converged ? 0 : 2;
      }
      const mob::NumericValue v = mob::direct_pfq(up, lo, x, cfg);
      std::cout << "value: " << format(v.value) << " +- " << v.error << "\n  direct series, " << v.terms << " terms\n";
      return v.status == mob::SumStatus::converged ? 0 : 2;
    }
    if (*oracle) {
      const mob::IntegrandSpec spec = mob::parse_spec(read_file(oracle_spec));
      mob::Values values;
      for (const auto& [name, v] : mob::parse_assignments(oracle_assign)) values[name] = v.value;
      const mob::NumericValue v = mob::quadrature_oracle(spec, values);
      std::cout << "value: " << format(v.value) << " +- " << v.error << "\n";
      return 0;
    }
  } catch (const mob::Error& e) {
    report_error(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
