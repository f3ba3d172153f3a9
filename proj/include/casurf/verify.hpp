#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casurf/generators.hpp"
#include "json.hpp"

namespace casurf {

// One verified law: its measured worst-case residual against the tolerance it
// was held to. `value` carries a headline quantity when there is one (the
// measured angle, say) so reports stay meaningful on their own.
struct CheckRecord {
  std::string name;
  std::string law;
  int nu = 0, nv = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<double> value;
};

struct VerificationReport {
  std::string suite;
  std::string subject;  // family name, or "immersion" for ad-hoc input
  std::string mode;     // "analytic" | "finite_difference"
  int nu = 0, nv = 0;
  bool pass = false;
  std::vector<CheckRecord> checks;

  nlohmann::ordered_json to_json() const;
};

struct SuiteOptions {
  Grid grid{};                    // sample resolution (64 x 64)
  double tol_exact = 1e-8;        // closed-form laws, analytic jets
  double tol_fd = 1e-5;           // anything resting on numerical derivatives
  double tol_quadrature = 1e-4;   // anything resting on adaptive quadrature
  std::uint64_t seed = 0x5eed5eedULL;  // sampling seed for random planes
};

// Suites: constant_angle, principal_direction, frame_connection,
// gauss_codazzi, umbilical, flat_cone, minimal, harmonic,
// classification_roundtrip, compare_oracles — or "all" for every suite that
// applies to the subject. Unknown suite names raise ConfigError; a suite the
// subject genuinely fails produces pass = false, never a throw.
VerificationReport run_suite(std::string_view suite, const GeneratorSpec& spec,
                             const SuiteOptions& opt = {});
VerificationReport run_suite(std::string_view suite, const Immersion& im,
                             const SuiteOptions& opt = {});

}  // namespace casurf
