#pragma once

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "eqrec/homology.hpp"

namespace eqrec {

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "Pass";
    case Verdict::Fail:
      return "Fail";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

inline nlohmann::json to_json(const PdResult& r) {
  return nlohmann::json{{"outcome", r.is_finite() ? "Finite" : "ExceedsBound"}, {"value", r.value}};
}

/// Outcome of one checker. Keys in every map are sorted on serialization.
struct CheckReport {
  std::string name;
  std::string instance;
  nlohmann::json hypotheses = nlohmann::json::object();
  nlohmann::json measurements = nlohmann::json::object();
  Verdict verdict = Verdict::Pass;
  std::size_t bound = 0;  // meaningful for Inconclusive
  nlohmann::json witnesses = nlohmann::json::array();

  bool passed() const { return verdict == Verdict::Pass; }

  void fail(const std::string& why) {
    verdict = Verdict::Fail;
    witnesses.push_back(why);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["instance"] = instance;
    j["hypotheses"] = hypotheses;
    j["measurements"] = measurements;
    j["verdict"] = verdict == Verdict::Inconclusive ? "Inconclusive(" + std::to_string(bound) + ")" : eqrec::to_string(verdict);
    j["witnesses"] = witnesses;
    return j;
  }
};

}  // namespace eqrec
