#pragma once

// Command-line driver: loads instance files, runs checkers and renders the
// reports as sorted JSON or as a table.
//
// Exit codes: 0 when no counted check fails, 2 when one does, 1 on input
// errors. For `all` only cross-checks count; criterion verdicts such as a
// failing singular-equivalence criterion are facts about the instance and
// are reported without changing the exit code.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqrec/instance.hpp"
#include "eqrec/recollement.hpp"
#include "eqrec/report.hpp"
#include "eqrec/skew_group.hpp"
#include "eqrec/triangular.hpp"

namespace eqrec::cli {

inline constexpr const char* kVersion = "0.1.0";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "skew",          "recollement",  "singular-equiv", "gldim",
                                          "hom-embedding", "tor-transfer", "peirce", "all"};
  return c;
}

struct Options {
  std::string command;
  std::vector<std::string> paths;
  std::optional<std::size_t> bound;
  std::optional<std::size_t> ext_k;
  std::string format = "table";
  std::string out;
  std::uint64_t seed = 0x5eed;
};

struct Outcome {
  CheckReport report;
  bool cross_check = true;  // false for verdicts that describe the instance
};

namespace detail {

inline void need(bool ok, const std::string& command, const std::string& what) {
  if (!ok) throw UsageError(command + " needs " + what);
}

inline CriterionOptions criterion_options(const Instance& inst, const Options& opt) {
  CriterionOptions c;
  c.bound = opt.bound.value_or(inst.bounds.pd_bound);
  c.seed = opt.seed;
  return c;
}

inline bool equivariant(const Instance& inst) {
  return inst.action && inst.idempotent && order_invertible(*inst.action);
}

inline void validate(const Instance& inst, std::vector<Outcome>& out) {
  CheckReport r;
  r.name = "validate";
  r.instance = inst.name;
  r.measurements["field"] = inst.field.name();
  r.measurements["dim"] = inst.algebra.dim();
  const Field& f = inst.field;
  if (f.is_rational() || f.characteristic() > inst.algebra.dim())
    r.measurements["dim_radical"] = inst.algebra.radical().dim();
  if (inst.action) r.measurements["group_order"] = inst.action->order();
  if (inst.idempotent) r.measurements["idempotent"] = true;
  if (inst.triangular) {
    r.measurements["dim_R"] = inst.triangular->r.dim();
    r.measurements["dim_N"] = inst.triangular->n.dim();
    r.measurements["dim_S"] = inst.triangular->s.dim();
  }
  nlohmann::json mods = nlohmann::json::object();
  for (const auto& m : inst.modules) mods[m.name] = m.module.dim();
  r.measurements["modules"] = mods;
  r.measurements["linearizations"] = inst.linearizations.size();
  out.push_back({r, true});
}

inline void skew(const Instance& inst, std::vector<Outcome>& out) {
  SkewAlgebra s = *inst.skew();
  out.push_back({skew_structure_check(s, inst.name), true});
  if (inst.idempotent) out.push_back({corner_compat_check(s, *inst.idempotent, inst.name), true});
}

inline void recollement(const Instance& inst, bool with_corner, std::vector<Outcome>& out) {
  RecollementData d = recollement_data(inst.algebra, *inst.idempotent);
  CheckReport r;
  r.name = "recollement";
  r.instance = inst.name;
  r.measurements["dim_middle"] = d.middle.dim();
  r.measurements["dim_corner"] = d.corner.algebra.dim();
  r.measurements["dim_ideal"] = d.ideal.dim();
  r.measurements["dim_quotient"] = d.quotient.algebra.dim();
  Subspace square = subspace_product(d.middle, d.ideal, d.ideal);
  r.measurements["ideal_idempotent"] = square.dim() == d.ideal.dim();
  if (square.dim() != d.ideal.dim()) r.fail("LeL is not idempotent");
  out.push_back({r, true});
  if (inst.action && with_corner)
    out.push_back({corner_compat_check(*inst.skew(), *inst.idempotent, inst.name), true});
}

inline void singular_equiv(const Instance& inst, const Options& opt, std::vector<Outcome>& out) {
  CriterionOptions c = criterion_options(inst, opt);
  out.push_back({singular_equivalence_criterion(recollement_data(inst.algebra, *inst.idempotent), c, inst.name), false});
  if (equivariant(inst))
    out.push_back({equivariant_cross_check(inst.algebra, *inst.idempotent, *inst.action, c, inst.name), true});
}

inline void gldim(const Instance& inst, const Options& opt, std::vector<Outcome>& out) {
  const std::size_t bound = opt.bound.value_or(inst.bounds.pd_bound);
  if (inst.action && order_invertible(*inst.action)) {
    out.push_back({gldim_cross_check(inst.algebra, *inst.action, bound, inst.name), true});
    return;
  }
  CheckReport r;
  r.name = "global_dimension";
  r.instance = inst.name;
  r.bound = bound;
  r.measurements["gldim"] = to_json(global_dimension_upper(inst.algebra, bound));
  out.push_back({r, true});
}

inline void hom_embedding(const Instance& inst, const Options& opt, std::vector<Outcome>& out) {
  EmbeddingOptions e;
  e.kmax = opt.ext_k.value_or(inst.bounds.ext_k);
  std::optional<GroupAction> act;
  if (equivariant(inst)) act = inst.action;
  out.push_back({homological_embedding_check(inst.algebra, *inst.idempotent, act, e, inst.name), act.has_value()});
}

inline void tor_transfer(const Instance& inst, std::vector<Outcome>& out) {
  SkewAlgebra s = *inst.skew();
  SubAlgebra corner = corner_algebra(inst.algebra, *inst.idempotent);
  if (corner.algebra.dim() == 0) return;
  for (const auto& [label, x] : {std::pair{"top", top_of_algebra(corner.algebra)},
                                 std::pair{"regular", regular_module(corner.algebra)}}) {
    CheckReport r = tor_vanishing_transfer(s, *inst.idempotent, x, std::nullopt, inst.bounds.tor_i, inst.name);
    r.measurements["X"] = label;
    out.push_back({r, true});
  }
}

inline void peirce(const Instance& inst, const Options& opt, std::vector<Outcome>& out) {
  out.push_back({peirce_triangular_check(*inst.triangular, *inst.action, inst.name).report, true});
  if (order_invertible(*inst.action))
    out.push_back({gldim_corollary_check(*inst.triangular, *inst.action, criterion_options(inst, opt), inst.name), true});
}

}  // namespace detail

/// Runs one command on a built instance. Missing ingredients are an input
/// error for single commands; `all` skips the commands that do not apply.
inline std::vector<Outcome> run_command(const std::string& command, const Instance& inst, const Options& opt) {
  using namespace detail;
  std::vector<Outcome> out;
  const bool all = command == "all";
  auto applies = [&](const std::string& name, bool ok, const std::string& what) {
    if (!all && command != name) return false;
    if (!all) need(ok, name, what);
    return ok;
  };
  bool known = std::find(commands().begin(), commands().end(), command) != commands().end();
  if (!known) throw UsageError("unknown command '" + command + "'");
  if (applies("validate", true, "")) validate(inst, out);
  if (applies("skew", inst.action.has_value(), "a group action")) skew(inst, out);
  if (applies("recollement", inst.idempotent.has_value(), "an idempotent")) recollement(inst, !all, out);
  if (applies("singular-equiv", inst.idempotent.has_value(), "an idempotent")) singular_equiv(inst, opt, out);
  if (applies("gldim", true, "")) gldim(inst, opt, out);
  if (applies("hom-embedding", inst.idempotent.has_value(), "an idempotent")) hom_embedding(inst, opt, out);
  if (applies("tor-transfer", equivariant(inst), "an invariant idempotent and a group of invertible order"))
    tor_transfer(inst, out);
  if (applies("peirce", inst.triangular && inst.action, "triangular data and a group action")) peirce(inst, opt, out);
  return out;
}

inline nlohmann::json report_json(const std::string& instance, const std::vector<Outcome>& outcomes) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& o : outcomes) {
    nlohmann::json c = o.report.to_json();
    c.erase("instance");
    checks.push_back(std::move(c));
  }
  return {{"instance", instance}, {"checks", std::move(checks)}, {"version", kVersion}};
}

inline std::string render_table(const std::vector<std::pair<std::string, std::vector<Outcome>>>& runs) {
  std::size_t wi = 8, wc = 5;
  for (const auto& [name, outs] : runs) {
    wi = std::max(wi, name.size());
    for (const auto& o : outs) wc = std::max(wc, o.report.name.size());
  }
  std::ostringstream s;
  s << std::left << std::setw(static_cast<int>(wi + 2)) << "instance" << std::setw(static_cast<int>(wc + 2)) << "check"
    << "verdict\n";
  for (const auto& [name, outs] : runs)
    for (const auto& o : outs) {
      std::string verdict = o.report.to_json()["verdict"].get<std::string>();
      if (!o.cross_check) verdict += " (criterion)";
      s << std::setw(static_cast<int>(wi + 2)) << name << std::setw(static_cast<int>(wc + 2)) << o.report.name
        << verdict;
      if (o.report.verdict == Verdict::Fail && !o.report.witnesses.empty())
        s << "  " << o.report.witnesses.back().get<std::string>();
      s << "\n";
    }
  return s.str();
}

/// Instance files named by the paths; directories contribute their *.json
/// entries in name order.
inline std::vector<std::filesystem::path> expand_paths(const std::vector<std::string>& paths) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.emplace_back(p);
    }
  }
  return out;
}

inline int run(const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::vector<Outcome>>> runs;
  for (const auto& path : expand_paths(opt.paths)) {
    std::string label = path.stem().string();
    try {
      InstanceSpec spec = load_spec(path);
      label = spec.name;
      Instance inst = build_instance(spec);
      runs.emplace_back(inst.name, run_command(opt.command, inst, opt));
    } catch (const Error& e) {
      err << "error: " << label << ": " << e.what();
      if (!e.witness().empty()) {
        err << " [witness";
        for (auto w : e.witness()) err << " " << w;
        err << "]";
      }
      err << "\n";
      return 1;
    } catch (const std::exception& e) {
      err << "error: " << label << ": " << e.what() << "\n";
      return 1;
    }
  }
  if (runs.empty()) {
    err << "error: no instance files\n";
    return 1;
  }
  std::stable_sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  nlohmann::json doc;
  if (runs.size() == 1) {
    doc = report_json(runs[0].first, runs[0].second);
  } else {
    doc = nlohmann::json::array();
    for (const auto& [name, outs] : runs) doc.push_back(report_json(name, outs));
  }
  const std::string text = doc.dump(2) + "\n";
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) {
      err << "error: cannot write " << opt.out << "\n";
      return 1;
    }
    f << text;
  }
  out << (opt.format == "json" ? text : render_table(runs));
  std::size_t fails = 0, inconclusive = 0;
  for (const auto& [name, outs] : runs)
    for (const auto& o : outs) {
      if (o.report.verdict == Verdict::Inconclusive) ++inconclusive;
      if (o.report.verdict == Verdict::Fail && (o.cross_check || opt.command != "all")) ++fails;
    }
  if (inconclusive > 0) err << "warning: " << inconclusive << " inconclusive check(s)\n";
  return fails > 0 ? 2 : 0;
}

/// Parses argv and runs; the return value is the exit code.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Checks skew group algebras and recollements on instance files"};
  app.set_version_flag("--version", kVersion);
  Options opt;
  std::size_t bound = 0, ext_k = 0;
  app.add_option("command", opt.command, "Command to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("paths", opt.paths, "Instance files or directories")->required();
  auto* bound_opt = app.add_option("--bound", bound, "Projective dimension bound");
  auto* ext_opt = app.add_option("--ext-k", ext_k, "Largest Ext degree compared");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", opt.out, "Write the JSON report to this file");
  app.add_option("--seed", opt.seed, "Seed for the syzygy isomorphism search");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  if (*bound_opt) opt.bound = bound;
  if (*ext_opt) opt.ext_k = ext_k;
  return run(opt, out, err);
}

}  // namespace eqrec::cli
