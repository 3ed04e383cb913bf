#ifndef PRETRANS_TABLEAU_HPP
#define PRETRANS_TABLEAU_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "pretrans/kripke.hpp"

namespace pretrans {

enum class NamedLogic { K, T, K4, S4, S5 };

std::string to_string(NamedLogic l);
// Accepts k, t, k4, s4, s5 (case-insensitive).
NamedLogic named_logic_from_string(const std::string& s);

struct TableauOptions {
  // Saturation steps before giving up with budget_error.
  std::uint64_t max_steps = 20'000'000;
};

struct TableauResult {
  bool valid = false;
  // Present iff !valid: a finite model of the logic refuting f at `world`.
  std::optional<Model> countermodel;
  World world = 0;
  std::uint64_t steps = 0;
};

// Signed tableau for unimodal K, T, K4 and S4 with ancestor loop checking
// for the transitive logics. S5 is decided by searching for a single refuting
// cluster: a guess of the truth values of the <>-subformulas (global in a
// cluster) together with the set of valuations consistent with it.
TableauResult tableau_decide(NamedLogic logic, const Formula& f, TableauOptions opt = {});

}  // namespace pretrans

#endif  // PRETRANS_TABLEAU_HPP
