#pragma once

// Single-field mutations of a certificate's JSON body, for soundness fuzzing.

#include "hypcert/hypcert.hpp"

#include <cctype>
#include <random>
#include <string>
#include <vector>

namespace mutation {

using nlohmann::json;

/// JSON pointers to every numeric-looking leaf: numbers, booleans, and
/// strings holding an integer, a fraction or a decimal.
inline void numeric_leaves(const json& j, const std::string& path, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) numeric_leaves(it.value(), path + "/" + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) numeric_leaves(j[i], path + "/" + std::to_string(i), out);
  } else if (j.is_number() || j.is_boolean()) {
    out.push_back(path);
  } else if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s.back())) != 0) &&
        s.find_first_not_of("-0123456789/.") == std::string::npos) {
      out.push_back(path);
    }
  }
}

/// Bumps the leaf: integers +1, fractions' numerators +1, decimals' last
/// digit, booleans flipped.
inline void bump(json& leaf) {
  if (leaf.is_boolean()) {
    leaf = !leaf.get<bool>();
  } else if (leaf.is_number_unsigned()) {
    leaf = leaf.get<std::uint64_t>() + 1;
  } else if (leaf.is_number_integer()) {
    leaf = leaf.get<std::int64_t>() + 1;
  } else {
    std::string s = leaf.get<std::string>();
    const auto slash = s.find('/');
    if (s.find('.') != std::string::npos) {
      char& last = s.back();
      last = last == '9' ? '0' : static_cast<char>(last + 1);
    } else if (slash != std::string::npos) {
      s = (hypcert::parse_bigint(s.substr(0, slash)) + 1).str() + s.substr(slash);
    } else {
      s = (hypcert::parse_bigint(s) + 1).str();
    }
    leaf = s;
  }
}

struct Outcome {
  std::string pointer;
  bool overall = false;
  bool skipped_any = false;
  std::vector<std::string> failed;
};

/// Mutates one leaf chosen by rng and re-verifies.
inline Outcome mutate_and_verify(const json& cert, std::mt19937_64& rng) {
  std::vector<std::string> leaves;
  numeric_leaves(cert, "", leaves);
  std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
  const std::string ptr = leaves[pick(rng)];
  json m = cert;
  bump(m[json::json_pointer(ptr)]);
  const auto rep = hypcert::verify_json(m);
  return {ptr, rep.overall(), rep.skipped_any(), rep.failed()};
}

}  // namespace mutation
