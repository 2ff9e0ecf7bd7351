#pragma once

#include "laurentia/input.hpp"

#include <string>
#include <vector>

namespace laurentia {

struct UnknownExample : std::invalid_argument {
  explicit UnknownExample(const std::string& name) : std::invalid_argument("unknown example '" + name + "'") {}
};

/// An expected value, keyed by what the pipeline computes.
///
/// Keys: `verdict:<class>`, `dim_q_delta:<pi>`, `dim_q_bar_delta:<pi>`, `dim_q_B:<pi>`,
/// `decomposition:<pi>:<sigma>`, `p_delta:<pi>:<sigma>`, `cartan:<sigma>:<pi>`,
/// `chain_length`, `class:<cls>` (pass/fail). Laurent values use LaurentPoly::str().
struct Expectation {
  std::string key;
  std::string value;
  std::string provenance;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  Problem problem;
  std::vector<Expectation> expected;
};

/// a2_path, poly_line, skew_c2, nilhecke2, dual_numbers.
CorpusEntry load_example(const std::string& name);
std::vector<std::string> example_names();

/// skew_c2 with the order reversed (+ < -).
CorpusEntry skew_c2_badorder();

}  // namespace laurentia
