#include "bhp/reduction.hpp"

#include "bhp/error.hpp"

namespace bhp {

namespace {

void require_gadget_domain(const SymmetricSpec& spec) {
  spec.validate();
  if (spec.s() < 2) throw InvalidArgument("reduction needs at least two sign changes (s >= 2)");
}

}  // namespace

bool ReductionGadget::satisfies_conditions() const {
  if (a < 1 || b < 0 || 2 * a + b > t) return false;
  const int sign = flipped ? -1 : 1;
  return sign * spec.value_at_weight(b) == 1 && sign * spec.value_at_weight(a + b) == -1 &&
         sign * spec.value_at_weight(2 * a + b) == 1;
}

bool is_nae_odd(const SymmetricSpec& spec) {
  return spec.t % 2 == 1 && spec.s() >= 2 && spec.thresholds[1] - spec.thresholds[0] == spec.t - 1;
}

ReductionGadget find_gadget(const SymmetricSpec& spec) {
  require_gadget_domain(spec);
  if (is_nae_odd(spec)) throw NoGadget("NAE-odd: no gadget");
  for (bool flipped : {false, true}) {
    for (int a = 1; 2 * a <= spec.t; ++a) {
      for (int b = 0; 2 * a + b <= spec.t; ++b) {
        ReductionGadget g{a, b, spec.t, spec, flipped};
        if (g.satisfies_conditions()) return g;
      }
    }
  }
  throw NoGadget("no gadget found");
}

std::optional<ReductionGadget> closed_form_gadget(const SymmetricSpec& spec) {
  spec.validate();
  if (spec.s() < 2 || is_nae_odd(spec)) return std::nullopt;
  const auto& th = spec.thresholds;
  for (int k = 0; k + 1 < spec.s(); ++k) {
    const int gap = th[k + 1] - th[k];
    if (gap % 2 == 1) {
      // The interval (theta_k, theta_{k+1}] carries leading_sign * (-1)^(k+1).
      const int value = spec.leading_sign * ((k + 1) % 2 ? -1 : 1);
      return ReductionGadget{(gap + 1) / 2, th[k], spec.t, spec, value == 1};
    }
  }
  const int delta = th[0] != 0 ? 1 : 0;
  return ReductionGadget{(th[1] - th[0] + 2) / 2, th[0] - delta, spec.t, spec, spec.leading_sign == -1};
}

PartitionInstance reduce_instance(const PartitionInstance& bhm, const ReductionGadget& gadget) {
  bhm.validate();
  if (bhm.params.t != 2) throw InvalidArgument("reduce_instance: source instance must have block size 2");
  const int n = bhm.params.n;
  const int t = gadget.t;
  const int a = gadget.a;
  const int b = gadget.b;
  if (a < 1 || b < 0 || 2 * a + b > t) throw InvalidArgument("reduce_instance: gadget violates 2a + b <= t");

  PartitionInstance out;
  out.params = PartitionParams{n * t / 2, t, bhm.params.alpha};
  out.params.validate();

  out.x.reserve(static_cast<std::size_t>(out.params.n));
  for (int c = 0; c < a; ++c) out.x.insert(out.x.end(), bhm.x.begin(), bhm.x.end());
  out.x.insert(out.x.end(), static_cast<std::size_t>(b * n / 2), Pm{-1});
  out.x.insert(out.x.end(), static_cast<std::size_t>((t - 2 * a - b) * n / 2), Pm{1});

  // inv[(j-1)t + r] = sigma_f^-1 of that slot, everything 0-based.
  const Permutation sigma_inv = bhm.sigma.inverse();
  std::vector<int> inv(static_cast<std::size_t>(out.params.n));
  for (int j = 0; j < n / 2; ++j) {
    const int first = sigma_inv(2 * j);
    const int second = sigma_inv(2 * j + 1);
    std::size_t slot = static_cast<std::size_t>(j) * static_cast<std::size_t>(t);
    for (int c = 0; c < a; ++c) {
      inv[slot++] = c * n + first;
      inv[slot++] = c * n + second;
    }
    for (int k = 0; k < t - 2 * a; ++k) inv[slot++] = a * n + j + k * (n / 2);
  }
  out.sigma = Permutation(std::move(inv)).inverse();

  out.w = bhm.w;
  if (gadget.flipped) {
    for (Pm& v : out.w) v = static_cast<Pm>(-v);
  }
  out.b = bhm.b;
  return out;
}

const char* to_string(ReductionReport::Status status) {
  switch (status) {
    case ReductionReport::Status::kPass:
      return "pass";
    case ReductionReport::Status::kFail:
      return "fail";
    case ReductionReport::Status::kNoGadget:
      return "no_gadget";
  }
  return "unknown";
}

ReductionReport verify_reduction(const SymmetricSpec& spec, int n_small, int sigma_samples, Rng& rng) {
  require_gadget_domain(spec);
  if (is_nae_odd(spec)) {
    ReductionReport report;
    report.status = ReductionReport::Status::kNoGadget;
    report.message = "NAE-odd: no gadget";
    return report;
  }
  return verify_reduction(find_gadget(spec), n_small, sigma_samples, rng);
}

ReductionReport verify_reduction(const ReductionGadget& gadget, int n_small, int sigma_samples, Rng& rng) {
  if (n_small < 2 || n_small % 2 != 0 || n_small > 20) {
    throw InvalidArgument("verify_reduction: n must be even and at most 20");
  }
  if (sigma_samples < 1) throw InvalidArgument("verify_reduction: need at least one sigma");
  const BooleanFunction par = parity(2);
  const BooleanFunction fs = make_symmetric(gadget.spec);
  const PartitionParams small{n_small, 2, Rational(1, 1)};
  const int sign = gadget.flipped ? -1 : 1;

  ReductionReport report;
  report.gadget = gadget;
  for (int s = 0; s < sigma_samples; ++s) {
    const Permutation sigma = Permutation::random(n_small, rng);
    for (std::uint32_t row = 0; row < (std::uint32_t{1} << n_small); ++row) {
      PartitionInstance bhm;
      bhm.params = small;
      bhm.x = point_of(row, n_small);
      bhm.sigma = sigma;
      bhm.w = b_map(par, bhm.x, sigma, small);
      bhm.b = Pm{1};
      const PartitionInstance reduced = reduce_instance(bhm, gadget);
      const PmVector z = b_map(fs, reduced.x, reduced.sigma, reduced.params);

      bool ok = verify_promise(fs, reduced) == Pm{1};
      for (std::size_t j = 0; j < z.size(); ++j) ok = ok && z[j] == sign * bhm.w[j];
      ++report.cases;
      if (!ok) {
        ++report.counterexamples;
        if (!report.counterexample) report.counterexample = bhm;
      }
    }
  }
  report.status = report.counterexamples == 0 ? ReductionReport::Status::kPass : ReductionReport::Status::kFail;
  report.message = std::to_string(report.counterexamples) + " counterexamples";
  return report;
}

nlohmann::json gadget_json(const ReductionGadget& gadget) {
  return {{"a", gadget.a}, {"b", gadget.b}, {"flipped", gadget.flipped}};
}

nlohmann::json to_json(const ReductionReport& report) {
  nlohmann::json doc = {{"status", to_string(report.status)},
                        {"cases", report.cases},
                        {"counterexamples", report.counterexamples},
                        {"message", report.message}};
  if (report.gadget) doc["gadget"] = gadget_json(*report.gadget);
  if (report.counterexample) doc["counterexample"] = to_json(*report.counterexample);
  return doc;
}

}  // namespace bhp
