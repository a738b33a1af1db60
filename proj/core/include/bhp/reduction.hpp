#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bhp/boolean_function.hpp"
#include "bhp/instances.hpp"
#include "bhp/rng.hpp"

namespace bhp {

/// Pair (a, b) embedding PARITY on 2 bits into f_s through |x| = a|x'| + b:
/// f_s(b) = +1, f_s(a + b) = -1, f_s(2a + b) = +1, after negating f_s when
/// `flipped` is set.
struct ReductionGadget {
  int a = 1;
  int b = 0;
  int t = 2;
  SymmetricSpec spec;
  bool flipped = false;

  /// True when the three weight conditions hold.
  [[nodiscard]] bool satisfies_conditions() const;
};

/// t odd and theta_2 - theta_1 = t - 1: the family with no gadget.
bool is_nae_odd(const SymmetricSpec& spec);

/// Exhaustive search: a ascending, then b ascending, with 2a + b <= t;
/// unflipped before flipped. Throws InvalidArgument for s < 2 and NoGadget
/// for the NAE-odd family.
ReductionGadget find_gadget(const SymmetricSpec& spec);

/// Constructive choice from the threshold gaps: the first odd internal gap
/// theta_k..theta_{k+1} gives a = (gap + 1) / 2, b = theta_k; otherwise
/// a = (theta_2 - theta_1 + 2) / 2, b = theta_1 - [theta_1 != 0].
/// Returns nullopt for s < 2 or NAE-odd. Not checked against the conditions.
std::optional<ReductionGadget> closed_form_gadget(const SymmetricSpec& spec);

/// Maps a PARITY_2 instance of length n to an f_s instance of length n t / 2.
/// x_f = x^a, then b n / 2 copies of -1, then +1 padding; block j of sigma_f
/// collects the a copies of B_{j,1}, B_{j,2} followed by padding positions
/// a n + j + k n / 2. w is negated when the gadget is flipped.
PartitionInstance reduce_instance(const PartitionInstance& bhm, const ReductionGadget& gadget);

struct ReductionReport {
  enum class Status { kPass, kFail, kNoGadget };

  Status status = Status::kPass;
  std::optional<ReductionGadget> gadget;
  long cases = 0;
  long counterexamples = 0;
  /// First failing input, if any.
  std::optional<PartitionInstance> counterexample;
  std::string message;
};

const char* to_string(ReductionReport::Status status);

/// For every x in {-1,1}^n_small and `sigma_samples` random sigma, checks
/// f_s(sigma_f(x_f)^(j)) = +-PARITY(sigma(x)^(j)) on every block and that
/// the promise bit survives. Requires even n_small <= 20.
ReductionReport verify_reduction(const SymmetricSpec& spec, int n_small, int sigma_samples, Rng& rng);
/// Same check with a caller-supplied gadget (used for negative controls).
ReductionReport verify_reduction(const ReductionGadget& gadget, int n_small, int sigma_samples, Rng& rng);

nlohmann::json gadget_json(const ReductionGadget& gadget);
nlohmann::json to_json(const ReductionReport& report);

}  // namespace bhp
