#pragma once

// Command-line front end. `run` is kept in the header so tests can drive it
// with in-memory streams; tools/pentail.cpp only forwards argv.
//
// Exit codes: 0 holds / true / success, 1 does not hold / false,
// 2 usage or parse error, 3 resource cap exceeded.

#include "pentail/decide.hpp"
#include "pentail/errors.hpp"
#include "pentail/gamma_star.hpp"
#include "pentail/homogeneity.hpp"
#include "pentail/rules_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace pentail::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kUsage = 2, kResource = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json fractions(const std::vector<Rational>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& q : v) arr.push_back(to_fraction_string(q));
  return arr;
}

inline nlohmann::json multiplicity(const Integer& m) {
  if (m <= std::numeric_limits<std::int64_t>::max()) return m.convert_to<std::int64_t>();
  return m.str();
}

inline nlohmann::json dataset_json(const Dataset& d, const AttributeUniverse& u) {
  auto obj = nlohmann::json::object();
  for (const auto& [z, m] : d.transactions()) obj[u.format(z)] = multiplicity(m);
  return obj;
}

inline void print_dataset(std::ostream& out, const Dataset& d, const AttributeUniverse& u) {
  for (const auto& [z, m] : d.transactions()) out << "  " << m << " x {" << u.format(z) << "}\n";
}

inline std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& q : v) s += (s.empty() ? "" : " ") + to_fraction_string(q);
  return s;
}

inline Method parse_method(const std::string& m) {
  if (m == "auto") return Method::Auto;
  if (m == "lp") return Method::Lp;
  if (m == "charact") return Method::Characterization;
  throw UsageError("unknown method '" + m + "'");
}

struct Inputs {
  ImplicationSet premises;
  PartialImplication conclusion;
};

inline Inputs load_query(const std::string& premises_path, const std::string& conclusion_text) {
  Inputs in;
  in.premises = parse_rules(read_file(premises_path));
  AttributeUniverse u = in.premises.universe;
  in.conclusion = parse_implication(conclusion_text, u);
  in.premises = ImplicationSet(std::move(u), std::move(in.premises.rules));
  return in;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entailment among partial implications at a confidence threshold", "pentail"};
  app.require_subcommand(1);

  std::size_t max_attrs = kDefaultAttributeCap;
  app.add_option("--max-attrs", max_attrs, "Cap on attributes occurring in one query")
      ->check(CLI::Range(std::size_t{1}, kMaxAttributes));

  std::string gamma_text, premises_path, conclusion_text, method_text = "auto", antecedent_text, tol_text = "1e-5",
                                                             rules_path;
  bool json = false;

  auto* entail = app.add_subcommand("entail", "Decide whether the premises entail the conclusion");
  entail->add_option("--gamma", gamma_text)->required();
  entail->add_option("--premises", premises_path)->required();
  entail->add_option("--conclusion", conclusion_text)->required();
  entail->add_option("--method", method_text)->check(CLI::IsMember({"auto", "lp", "charact"}));
  entail->add_flag("--json", json);

  auto* gstar = app.add_subcommand("gamma-star", "Bracket the critical confidence threshold");
  gstar->add_option("--premises", premises_path)->required();
  gstar->add_option("--antecedent", antecedent_text)->required();
  gstar->add_option("--tol", tol_text);
  gstar->add_flag("--json", json);

  auto* nice = app.add_subcommand("nice", "Check whether the premises enforce homogeneity");
  nice->add_option("--premises", premises_path)->required();
  nice->add_flag("--json", json);

  auto* prune_cmd = app.add_subcommand("prune", "Drop rules entailed by the others");
  prune_cmd->add_option("--gamma", gamma_text)->required();
  prune_cmd->add_option("--rules", rules_path)->required();
  prune_cmd->add_option("--method", method_text)->check(CLI::IsMember({"auto", "lp", "charact"}));
  prune_cmd->add_flag("--json", json);

  auto* cex = app.add_subcommand("counterexample", "Produce a dataset refuting the entailment");
  cex->add_option("--gamma", gamma_text)->required();
  cex->add_option("--premises", premises_path)->required();
  cex->add_option("--conclusion", conclusion_text)->required();
  cex->add_flag("--json", json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  Limits limits;
  limits.attribute_cap = max_attrs;

  try {
    if (entail->parsed()) {
      auto in = detail::load_query(premises_path, conclusion_text);
      EntailmentQuery q{in.premises.rules, in.conclusion, parse_gamma(gamma_text)};
      auto v = decide(q, detail::parse_method(method_text), limits);
      const auto& u = in.premises.universe;
      if (json) {
        nlohmann::json j;
        j["holds"] = v.holds;
        j["regime"] = std::string(to_string(v.regime));
        j["lambda"] = v.certificate ? detail::fractions(*v.certificate) : nlohmann::json(nullptr);
        j["counterexample"] = v.counterexample ? detail::dataset_json(*v.counterexample, u) : nlohmann::json(nullptr);
        j["gamma_star_lower"] =
            v.gamma_star_bracket ? nlohmann::json(to_fraction_string(v.gamma_star_bracket->first)) : nullptr;
        j["gamma_star_upper"] =
            v.gamma_star_bracket ? nlohmann::json(to_fraction_string(v.gamma_star_bracket->second)) : nullptr;
        out << j.dump() << "\n";
      } else {
        out << (v.holds ? "holds" : "does not hold") << " (regime: " << to_string(v.regime) << ")\n";
        if (v.certificate) out << "lambda: " << detail::join(*v.certificate) << "\n";
        if (v.gamma_star_bracket)
          out << "gamma*: [" << to_fraction_string(v.gamma_star_bracket->first) << ", "
              << to_fraction_string(v.gamma_star_bracket->second) << "]\n";
        if (v.counterexample) {
          out << "counterexample:\n";
          detail::print_dataset(out, *v.counterexample, u);
        }
      }
      return v.holds ? kHolds : kFails;
    }

    if (gstar->parsed()) {
      auto premises = parse_rules(detail::read_file(premises_path));
      AttributeUniverse u = premises.universe;
      AttrSet x = parse_attrs(antecedent_text, u);
      auto tol = parse_rational(tol_text);
      if (!tol || *tol <= 0) throw UsageError("tolerance must be a positive number");
      if (premises.empty()) throw UsageError("gamma-star needs at least one premise");
      auto r = gamma_star(premises.rules, x, *tol, limits);
      const double mid = to_double((r.lower + r.upper) / 2);
      if (json) {
        nlohmann::json j;
        j["gamma_star_lower"] = to_fraction_string(r.lower);
        j["gamma_star_upper"] = to_fraction_string(r.upper);
        j["gamma_star_midpoint_approx"] = mid;
        j["lambda"] = detail::fractions(r.lambda_at_upper);
        out << j.dump() << "\n";
      } else {
        out << "gamma* in [" << to_double(r.lower) << ", " << to_double(r.upper) << "]  (~" << mid << ")\n";
        out << "lower: " << to_fraction_string(r.lower) << "\n";
        out << "upper: " << to_fraction_string(r.upper) << "\n";
        out << "lambda at upper: " << detail::join(r.lambda_at_upper) << "\n";
      }
      return kHolds;
    }

    if (nice->parsed()) {
      auto premises = parse_rules(detail::read_file(premises_path));
      const bool result = enforces_homogeneity(premises.rules);
      if (json)
        out << nlohmann::json{{"holds", result}}.dump() << "\n";
      else
        out << (result ? "enforces homogeneity" : "does not enforce homogeneity") << "\n";
      return result ? kHolds : kFails;
    }

    if (prune_cmd->parsed()) {
      auto rules = parse_rules(detail::read_file(rules_path));
      auto kept = prune(rules, parse_gamma(gamma_text), detail::parse_method(method_text), limits);
      if (json) {
        auto arr = nlohmann::json::array();
        for (const auto& r : kept.rules) arr.push_back(kept.format(r));
        out << nlohmann::json{{"rules", arr}, {"dropped", rules.size() - kept.size()}}.dump() << "\n";
      } else {
        out << format_rules(kept);
      }
      return kHolds;
    }

    if (cex->parsed()) {
      auto in = detail::load_query(premises_path, conclusion_text);
      EntailmentQuery q{in.premises.rules, in.conclusion, parse_gamma(gamma_text)};
      require_attribute_cap(q.attributes(), limits);
      auto d = lp_counterexample(q, limits);
      if (json) {
        nlohmann::json j;
        j["holds"] = !d.has_value();
        j["counterexample"] = d ? detail::dataset_json(*d, in.premises.universe) : nlohmann::json(nullptr);
        out << j.dump() << "\n";
      } else if (d) {
        out << "counterexample:\n";
        detail::print_dataset(out, *d, in.premises.universe);
      } else {
        out << "no counterexample: the entailment holds\n";
      }
      return d ? kHolds : kFails;
    }
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace pentail::cli
