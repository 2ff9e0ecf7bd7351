#pragma once

// Recomputes corpus expectations through the main pipeline.

#include "laurentia/corpus.hpp"

#include <map>
#include <memory>
#include <sstream>

namespace laurentia::testing {

class Evaluator {
 public:
  explicit Evaluator(const Problem& p) : built_(build(p)), strat_(built_.algebra, built_.order) {}

  const Built& built() const { return built_; }
  const Stratification& strat() const { return strat_; }

  std::string operator()(const std::string& key) {
    auto parts = split(key);
    const std::string& kind = parts[0];
    auto cls_of = [&](const std::string& l) { return strat_.order().index(l); };
    if (kind == "verdict") return report(parts[1]).verdict;
    if (kind == "class") {
      for (int pi = 0; pi < strat_.size(); ++pi)
        if (!class_membership(strat_.at(pi).B, parts[1]).verdict.pass) return "fail";
      return "pass";
    }
    if (kind == "dim_q_delta") return strat_.at(cls_of(parts[1])).delta.dim_q().str();
    if (kind == "dim_q_bar_delta") return strat_.at(cls_of(parts[1])).bar_delta.dim_q().str();
    if (kind == "dim_q_B") return strat_.at(cls_of(parts[1])).B.dim_q().str();
    if (kind == "decomposition")
      return graded_multiplicity(strat_.at(cls_of(parts[1])).delta, cls_of(parts[2])).str();
    if (kind == "p_delta") {
      Filtration f = delta_filtration(strat_.at(cls_of(parts[1])).P, strat_);
      if (!f.ok) return "no filtration: " + f.witness;
      return f.multiplicity[static_cast<size_t>(cls_of(parts[2]))].str();
    }
    if (kind == "cartan") {
      auto pd = peirce_dims(strat_.alg());
      return pd[static_cast<size_t>(strat_.alg().class_index(parts[1]))][static_cast<size_t>(strat_.alg().class_index(parts[2]))].str();
    }
    if (kind == "chain_length") {
      HeredityChain c = heredity_chain(built_.algebra, built_.order, "any");
      return c.pass ? std::to_string(c.layers.size()) : "fail: " + c.witness;
    }
    if (kind == "generators") {
      auto cr = class_membership(strat_.at(cls_of(parts[1])).B, "polynomial");
      std::string s;
      for (int d : cr.generator_degrees) s += (s.empty() ? "" : " ") + std::to_string(d);
      return s;
    }
    if (kind == "rank") {
      int pi = cls_of(parts[1]);
      return right_rank(delta_module(strat_, pi), strat_.at(pi).B).rank.str();
    }
    return "unknown key " + key;
  }

  const StratReport& report(const std::string& cls) {
    auto it = reports_.find(cls);
    if (it == reports_.end()) it = reports_.emplace(cls, check_axioms(strat_, cls)).first;
    return it->second;
  }

 private:
  static std::vector<std::string> split(const std::string& key) {
    std::vector<std::string> out;
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, ':')) out.push_back(item);
    return out;
  }

  Built built_;
  Stratification strat_;
  std::map<std::string, StratReport> reports_;
};

}  // namespace laurentia::testing
