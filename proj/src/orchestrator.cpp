#include "mob/orchestrator.hpp"

#include "mob/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mob {

using json = nlohmann::json;

namespace {

const char* kModule = "orchestrator";

json error_json(const Error& e) {
  json j{{"module", e.module()}, {"kind", to_string(e.kind())}, {"message", e.what()}};
  j["position"] = e.position() ? json(*e.position()) : json(nullptr);
  return j;
}

json numeric_json(const NumericValue& v) {
  return json{{"value", to_json(v.value)}, {"error", v.error}, {"terms", v.terms}, {"status", to_string(v.status)}};
}

json strings(const std::vector<AffineForm>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

json complex_list(const std::vector<cplx>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

std::string part_status(const HypergeometricPart& p) {
  if (p.vanishing) return "vanishing";
  if (p.singular) return "singular";
  if (!p.classified) return "unclassified";
  return "hypergeometric";
}

json rep_json(const SeriesRepresentation& rep, const HypergeometricData& h, const Region& region) {
  json parts = json::array();
  for (const auto& p : h.parts) {
    parts.push_back(json{{"residue", p.residue},
                         {"status", part_status(p)},
                         {"prefactor", format_coefficient(p.prefactor, p.prefactor_scale)},
                         {"upper", strings(p.upper)},
                         {"lower", strings(p.lower)}});
  }
  json pfq{{"upper", json::array()}, {"lower", json::array()}, {"argument", h.argument.str()}, {"region", region.str()}};
  for (const auto& p : h.parts) {
    if (p.vanishing) continue;
    pfq["upper"] = strings(p.upper);
    pfq["lower"] = strings(p.lower);
    break;
  }
  json merged = json::array();
  for (const auto& m : rep.merged) merged.push_back(m);
  return json{{"label", rep.label()},
              {"merged", merged},
              {"determinant", to_string(rep.origin.det_abs)},
              {"term", rep.canonical_text()},
              {"classification", h.str()},
              {"step", h.step},
              {"parts", parts},
              {"pfq", pfq}};
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

bool holds(const Region& r, const Values& v) {
  switch (r.kind) {
    case RegionKind::everywhere:
      return true;
    case RegionKind::nowhere:
      return false;
    case RegionKind::inside:
      return std::abs(evaluate(r.expr, v)) < 1;
    case RegionKind::outside:
      return std::abs(evaluate(r.expr, v)) > 1;
  }
  return false;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(const json& z) {
  if (z.is_null()) return "n/a";
  const double re = z["re"].is_number() ? z["re"].get<double>() : NAN;
  const double im = z["im"].is_number() ? z["im"].get<double>() : NAN;
  if (im == 0) return format_number(re);
  return format_number(re) + (im < 0 ? " - " : " + ") + format_number(std::abs(im)) + "i";
}

}  // namespace

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

ExpandOptions insert_regulators(IntegrandSpec& spec, const RunRequest& req) {
  for (const auto& r : req.regulate) {
    if (!spec.is_variable(r.target)) {
      throw Error(kModule, ErrorKind::unresolvable_target, "regulator target " + r.target + " is not a variable");
    }
    if (spec.is_variable(r.symbol) || spec.is_parameter(r.symbol)) {
      throw Error(kModule, ErrorKind::unresolvable_target, "regulator symbol " + r.symbol + " is already in use");
    }
    spec.regulators.push_back(r);
  }
  ExpandOptions options;
  if (req.split) {
    if (spec.is_variable(req.split->symbol) || spec.is_parameter(req.split->symbol)) {
      throw Error(kModule, ErrorKind::unresolvable_target, "split symbol " + req.split->symbol + " is already in use");
    }
    options.split = req.split;
  }
  return options;
}

EpsilonPairing pair_epsilon_representations(const std::vector<SeriesRepresentation>& reps,
                                            const std::vector<HypergeometricData>& data, const std::string& eps) {
  const Substitution flip{{eps, -AffineForm::symbol(eps)}};
  auto signature = [&](const HypergeometricData& h, bool mirrored) {
    std::string out = h.argument.str();
    for (const auto& p : h.parts) {
      out += "|" + part_status(p) + ":";
      for (const auto* list : {&p.upper, &p.lower}) {
        std::vector<std::string> xs;
        for (const auto& a : *list) xs.push_back((mirrored ? affine_substitute(a, flip) : a).str());
        std::sort(xs.begin(), xs.end());
        out += join(xs, ",") + ";";
      }
    }
    return out;
  };
  EpsilonPairing out;
  std::vector<bool> used(reps.size(), false);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    // eps confined to the prefactor counts as free.
    if (signature(data[i], false) == signature(data[i], true)) {
      out.free.push_back(i);
      used[i] = true;
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (used[i]) continue;
    const std::string mirrored = signature(data[i], true);
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (!used[j] && signature(data[j], false) == mirrored) {
        out.pairs.emplace_back(i, j);
        used[i] = used[j] = true;
        break;
      }
    }
    if (!used[i]) out.unpaired.push_back(i);
  }
  return out;
}

RunResult run(const RunRequest& req) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  json& report = result.report;
  report["schema"] = 1;
  report["spec"] = json{{"path", req.spec_path}, {"text", req.spec_text}};
  json assigned = json::object();
  for (const auto& [name, v] : req.assignments) assigned[name] = format_value(v);
  report["assignments"] = assigned;
  report["config"] = json{{"tol", req.config.tol},
                          {"max_terms", req.config.max_terms},
                          {"eps_ladder", req.config.eps_ladder},
                          {"a_ladder", req.config.a_ladder},
                          {"precision", req.config.precision}};
  json regs = json::array();
  for (const auto& r : req.regulate) regs.push_back(json{{"target", r.target}, {"symbol", r.symbol}});
  report["regulators"] = regs;
  report["split"] = req.split ? json{{"summand", req.split->position}, {"symbol", req.split->symbol}} : json(nullptr);

  auto finish = [&](int code) {
    report["exit_code"] = code;
    result.exit_code = code;
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = json{{"seconds", seconds}};
    return result;
  };

  try {
    req.config.validate();
    IntegrandSpec spec = parse_spec(req.spec_text);
    report["spec"]["canonical"] = spec.str();
    const ExpandOptions options = insert_regulators(spec, req);

    std::set<std::string> known;
    for (const auto& p : spec.parameters) known.insert(p.name);
    for (const auto& r : req.regulate) known.insert(r.symbol);
    if (req.split) known.insert(req.split->symbol);
    check_assignment_names(req.assignments, known);

    Values values;
    for (const auto& [name, v] : req.assignments) values[name] = v.value;

    // Unassigned regulator and split symbols become limits.
    std::optional<std::string> eps;
    for (const auto& r : req.regulate) {
      if (values.count(r.symbol)) continue;
      if (eps && *eps != r.symbol) {
        throw Error(kModule, ErrorKind::unsupported, "more than one unassigned regulator symbol");
      }
      eps = r.symbol;
    }
    std::optional<std::string> a_symbol;
    if (req.split && !values.count(req.split->symbol)) a_symbol = req.split->symbol;

    const ExpansionResult expansion = expand(spec, options);
    report["bracket_series"] = expansion.series.str();
    if (req.trace) {
      json steps = json::array();
      for (const auto& s : expansion.trace.steps) {
        steps.push_back(json{{"rule", s.rule}, {"created", s.created}, {"text", s.text}});
      }
      report["trace"] = steps;
    }

    const AssignmentSet set = enumerate_assignments(expansion.series);
    std::vector<SeriesRepresentation> all;
    json dispositions = json::array();
    std::vector<std::string> failed;
    for (const auto& a : set.assignments) {
      try {
        all.push_back(evaluate_assignment(expansion.series, a));
      } catch (const Error& e) {
        dispositions.push_back(json{{"free", a.free_indices},
                                    {"determinant", to_string(a.det_abs)},
                                    {"disposition", "skipped"},
                                    {"reason", e.what()}});
      }
    }
    const std::vector<SeriesRepresentation> reps = dedupe(all);
    for (const auto& rep : all) {
      json d{{"free", rep.origin.free_indices}, {"determinant", to_string(rep.origin.det_abs)}};
      const std::string label = rep.label();
      for (const auto& kept : reps) {
        if (kept.label() == label) {
          d["disposition"] = "representation";
          d["representation"] = label;
        } else if (std::find(kept.merged.begin(), kept.merged.end(), label) != kept.merged.end()) {
          d["disposition"] = "duplicate";
          d["representation"] = kept.label();
        }
      }
      dispositions.push_back(d);
    }
    for (const auto& s : set.singular) {
      dispositions.push_back(json{{"free", s.free_indices}, {"determinant", "0"}, {"disposition", "singular_system"}});
    }
    report["assignment_dispositions"] = dispositions;
    report["assignments_enumerated"] = set.assignments.size() + set.singular.size();

    std::vector<HypergeometricData> data;
    std::vector<Region> regions;
    for (const auto& rep : reps) {
      data.push_back(classify(rep));
      regions.push_back(convergence_region(data.back()));
    }

    // Every remaining symbol needs a value or a limit.
    for (const auto& rep : reps) {
      for (const auto& s : rep.term.symbols()) {
        if (rep.free_index && s == *rep.free_index) continue;
        if ((eps && s == *eps) || (a_symbol && s == *a_symbol) || values.count(s)) continue;
        throw Error(kModule, ErrorKind::unknown_parameter, "no value assigned to parameter " + s);
      }
    }

    // Region membership: eps at 0, A at every ladder point.
    std::vector<Values> probes;
    if (a_symbol) {
      for (double a : req.config.a_ladder) {
        Values w = values;
        w[*a_symbol] = a;
        probes.push_back(w);
      }
    } else {
      probes.push_back(values);
    }
    if (eps) {
      for (auto& w : probes) w[*eps] = 0.0;
    }
    auto region_holds = [&](const Region& r) {
      return std::all_of(probes.begin(), probes.end(), [&](const Values& w) { return holds(r, w); });
    };

    json rep_list = json::array();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      json r = rep_json(reps[i], data[i], regions[i]);
      r["status"] = regions[i].kind == RegionKind::nowhere ? "excluded"
                    : region_holds(regions[i])              ? "in_region"
                                                            : "out_of_region";
      rep_list.push_back(r);
    }
    report["representations"] = rep_list;

    if (eps) {
      const EpsilonPairing pairing = pair_epsilon_representations(reps, data, *eps);
      json pairs = json::array();
      for (const auto& [i, j] : pairing.pairs) pairs.push_back(json::array({reps[i].label(), reps[j].label()}));
      json unpaired = json::array(), free = json::array();
      for (auto i : pairing.unpaired) unpaired.push_back(reps[i].label());
      for (auto i : pairing.free) free.push_back(reps[i].label());
      report["epsilon_pairing"] = json{{"symbol", *eps}, {"pairs", pairs}, {"unpaired", unpaired}, {"free", free}};
    }

    json groups = json::array();
    json final_values = json::array();
    std::vector<cplx> converged_values;
    double worst_error = 0;
    for (const auto& g : group_by_region(regions)) {
      json gj{{"region", g.region.str()}};
      std::vector<std::string> labels;
      std::vector<const SeriesRepresentation*> members;
      std::vector<const HypergeometricData*> member_data;
      for (auto i : g.members) {
        labels.push_back(reps[i].label());
        members.push_back(&reps[i]);
        member_data.push_back(&data[i]);
      }
      gj["members"] = labels;
      if (g.region.kind == RegionKind::nowhere) {
        gj["status"] = "excluded";
        gj["reason"] = "no convergent series";
        groups.push_back(gj);
        continue;
      }
      if (!region_holds(g.region)) {
        gj["status"] = "out_of_region";
        groups.push_back(gj);
        continue;
      }
      try {
        const NumericConfig& cfg = req.config;
        NumericValue value;
        json limits = json::object();
        auto eps_json = [&](const EpsilonLimit& L) {
          return json{{"symbol", *eps},
                      {"analytic", numeric_json(L.analytic)},
                      {"numeric", numeric_json(L.numeric)},
                      {"ladder", L.ladder},
                      {"symmetric_values", complex_list(L.symmetric_values)},
                      {"agree", L.agree}};
        };
        auto a_json = [&](const ParameterLimit& P) {
          return json{{"symbol", *a_symbol},
                      {"value", numeric_json(P.value)},
                      {"ladder", P.ladder},
                      {"samples", complex_list(P.samples)}};
        };
        if (!a_symbol) {
          if (eps) {
            const EpsilonLimit L = epsilon_pair_limit(members, member_data, *eps, values, cfg);
            value = L.analytic;
            limits["eps"] = eps_json(L);
          } else {
            value = sum_group(members, member_data, values, cfg);
          }
        } else {
          auto at = [&](double a) {
            Values w = values;
            w[*a_symbol] = a;
            return w;
          };
          const ParameterLimit P = a_parameter_limit(
              [&](double a) {
                return eps ? epsilon_limit_analytic(members, *eps, at(a), cfg) : sum_group(members, member_data, at(a), cfg);
              },
              cfg);
          value = P.value;
          limits["A"] = a_json(P);
          if (eps) {
            limits["A"]["eps_route"] = "analytic";
            const ParameterLimit Q = a_parameter_limit(
                [&](double a) { return epsilon_pair_limit(members, member_data, *eps, at(a), cfg).numeric; }, cfg);
            json alt = a_json(Q);
            alt["eps_route"] = "numeric";
            limits["A_numeric_eps"] = alt;
            limits["orderings_agree"] = std::abs(P.value.value - Q.value.value) <= 2e-6;
          }
        }
        gj["status"] = to_string(value.status);
        gj["sum"] = numeric_json(value);
        if (!limits.empty()) gj["limits"] = limits;
        if (value.status == SumStatus::converged) {
          final_values.push_back(json{{"region", g.region.str()}, {"value", to_json(value.value)}, {"error", value.error}});
          converged_values.push_back(value.value);
          worst_error = std::max(worst_error, value.error);
        }
      } catch (const Error& e) {
        gj["status"] = "error";
        gj["error"] = error_json(e);
      }
      groups.push_back(gj);
    }
    report["groups"] = groups;
    report["final"] = final_values;
    if (converged_values.size() > 1) {
      bool agree = true;
      for (const auto& v : converged_values) {
        const double tol = std::max(1e-8, 10 * worst_error) * (1 + std::abs(converged_values.front()));
        agree = agree && std::abs(v - converged_values.front()) <= tol;
      }
      report["groups_agree"] = agree;
    }
    report["value"] = converged_values.empty() ? json(nullptr) : to_json(converged_values.front());
    return finish(converged_values.empty() ? exit_no_group : exit_converged);
  } catch (const Error& e) {
    report["error"] = error_json(e);
    return finish(exit_structural);
  }
}

std::string render_human(const json& r) {
  std::ostringstream out;
  out << "spec: " << r["spec"].value("canonical", r["spec"].value("text", "")) << "\n";
  if (r.contains("error")) {
    const auto& e = r["error"];
    out << "error [" << e["module"].get<std::string>() << "/" << e["kind"].get<std::string>() << "]: "
        << e["message"].get<std::string>();
    out << "\n";
    return out.str();
  }
  out << "series: " << r["bracket_series"].get<std::string>() << "\n";
  out << "assignments (" << r["assignments_enumerated"].get<std::size_t>() << "):\n";
  for (const auto& d : r["assignment_dispositions"]) {
    out << "  free {" << join(d["free"].get<std::vector<std::string>>(), ",") << "} det "
        << d["determinant"].get<std::string>() << ": " << d["disposition"].get<std::string>();
    if (d.contains("representation")) out << " " << d["representation"].get<std::string>();
    if (d.contains("reason")) out << " (" << d["reason"].get<std::string>() << ")";
    out << "\n";
  }
  out << "representations:\n";
  for (const auto& rep : r["representations"]) {
    out << "  " << rep["label"].get<std::string>() << ": " << rep["classification"].get<std::string>() << "  ["
        << rep["pfq"]["region"].get<std::string>() << ", " << rep["status"].get<std::string>() << "]\n";
  }
  if (r.contains("epsilon_pairing")) {
    out << "eps pairs:";
    for (const auto& p : r["epsilon_pairing"]["pairs"]) {
      out << " (" << p[0].get<std::string>() << "," << p[1].get<std::string>() << ")";
    }
    out << "\n";
  }
  out << "groups:\n";
  for (const auto& g : r["groups"]) {
    out << "  " << g["region"].get<std::string>() << " {" << join(g["members"].get<std::vector<std::string>>(), ",")
        << "}: " << g["status"].get<std::string>();
    if (g.contains("sum")) {
      out << " " << format_complex(g["sum"]["value"]) << " +- " << format_number(g["sum"]["error"].get<double>());
    }
    if (g.contains("error")) out << " (" << g["error"]["message"].get<std::string>() << ")";
    out << "\n";
    if (g.contains("limits")) {
      const auto& l = g["limits"];
      if (l.contains("eps")) {
        out << "    eps->0: analytic " << format_complex(l["eps"]["analytic"]["value"]) << ", extrapolated "
            << format_complex(l["eps"]["numeric"]["value"]) << (l["eps"]["agree"].get<bool>() ? "" : " (disagree)")
            << "\n";
      }
      if (l.contains("A")) {
        out << "    A->1: " << format_complex(l["A"]["value"]["value"]) << " +- "
            << format_number(l["A"]["value"]["error"].get<double>()) << "\n";
      }
      if (l.contains("A_numeric_eps")) {
        out << "    A->1 with extrapolated eps: " << format_complex(l["A_numeric_eps"]["value"]["value"]) << "\n";
      }
    }
  }
  if (r["final"].empty()) {
    out << "no convergent group\n";
  } else {
    for (const auto& f : r["final"]) {
      out << "value: " << format_complex(f["value"]) << " +- " << format_number(f["error"].get<double>()) << "  ("
          << f["region"].get<std::string>() << ")\n";
    }
    if (r.contains("groups_agree") && !r["groups_agree"].get<bool>()) out << "warning: groups disagree\n";
  }
  return out.str();
}

}  // namespace mob
