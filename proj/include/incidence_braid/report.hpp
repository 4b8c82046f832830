#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace incidence_braid {

/// Outcome of one verification pass. Mathematical failures are reported, not
/// thrown: `pass` flips to false, `counterexample` records the first failing
/// instance in deterministic enumeration order, `failures` counts all of
/// them.
struct CheckReport {
  std::string check;
  bool pass = true;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  nlohmann::json counterexample;           // null when passing
  nlohmann::json details = nlohmann::json::object();

  void fail(nlohmann::json witness) {
    ++failures;
    if (pass) {
      pass = false;
      counterexample = std::move(witness);
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"check", check},
                     {"pass", pass},
                     {"checked", checked},
                     {"failures", failures},
                     {"counterexample", counterexample.is_null() ? nlohmann::json() : counterexample}};
    for (const auto& [key, value] : details.items()) {
      if (!j.contains(key)) j[key] = value;
    }
    return j;
  }
};

}  // namespace incidence_braid
