#include "bhp/instances.hpp"

#include <numeric>
#include <string>

#include "bhp/error.hpp"

namespace bhp {

void PartitionParams::validate() const {
  if (n <= 0 || t <= 0) throw InvalidArgument("n and t must be positive");
  if (n % t != 0) throw InvalidArgument("t must divide n");
  if (alpha.num() <= 0 || alpha.num() > alpha.den()) throw InvalidArgument("alpha must lie in (0, 1]");
  const std::int64_t blocks_total = n / t;
  if ((blocks_total * alpha.num()) % alpha.den() != 0) {
    throw InvalidArgument("alpha * n / t must be an integer (alpha = " + alpha.str() + ")");
  }
}

int PartitionParams::active_blocks() const {
  return static_cast<int>((std::int64_t{n / t} * alpha.num()) / alpha.den());
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("sigma is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::random(int n, Rng& rng) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<int> zero(images.begin(), images.end());
  for (int& v : zero) --v;
  return Permutation(std::move(zero));
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out(images_);
  for (int& v : out) ++v;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) throw InvalidArgument("compose: size mismatch");
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = images_[static_cast<std::size_t>(inner.images_[i])];
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

PmVector apply_permutation(const Permutation& sigma, std::span<const Pm> x) {
  if (static_cast<int>(x.size()) != sigma.size()) throw InvalidArgument("apply_permutation: length mismatch");
  PmVector out(x.size());
  for (int i = 0; i < sigma.size(); ++i) out[static_cast<std::size_t>(sigma(i))] = x[static_cast<std::size_t>(i)];
  return out;
}

PmVector b_map(const BooleanFunction& f, std::span<const Pm> x, const Permutation& sigma,
               const PartitionParams& params) {
  params.validate();
  if (f.arity() != params.t) throw InvalidArgument("b_map: function arity differs from t");
  if (static_cast<int>(x.size()) != params.n) throw InvalidArgument("b_map: x has wrong length");
  const PmVector y = apply_permutation(sigma, x);
  const auto t = static_cast<std::size_t>(params.t);
  PmVector z(static_cast<std::size_t>(params.active_blocks()));
  for (std::size_t j = 0; j < z.size(); ++j) {
    z[j] = f.at_row(row_of(std::span<const Pm>(y).subspan(j * t, t)));
  }
  return z;
}

void PartitionInstance::validate() const {
  params.validate();
  if (static_cast<int>(x.size()) != params.n) throw InvalidArgument("instance: x has wrong length");
  if (sigma.size() != params.n) throw InvalidArgument("instance: sigma has wrong length");
  if (static_cast<int>(w.size()) != params.active_blocks()) throw InvalidArgument("instance: w has wrong length");
  for (Pm v : x) {
    if (!is_pm(v)) throw InvalidArgument("instance: x entries must be +-1");
  }
  for (Pm v : w) {
    if (!is_pm(v)) throw InvalidArgument("instance: w entries must be +-1");
  }
  if (b && !is_pm(*b)) throw InvalidArgument("instance: b must be +-1");
}

PartitionInstance generate_instance(const BooleanFunction& f, const PartitionParams& params, Pm b,
                                    Rng& rng) {
  params.validate();
  if (!is_pm(b)) throw InvalidArgument("generate_instance: b must be +-1");
  PartitionInstance inst;
  inst.params = params;
  inst.x.resize(static_cast<std::size_t>(params.n));
  for (Pm& v : inst.x) v = rng.coin();
  inst.sigma = Permutation::random(params.n, rng);
  inst.w = b_map(f, inst.x, inst.sigma, params);
  for (Pm& v : inst.w) v = static_cast<Pm>(v * b);
  inst.b = b;
  return inst;
}

std::optional<Pm> verify_promise(const BooleanFunction& f, const PartitionInstance& instance) {
  const PmVector z = b_map(f, instance.x, instance.sigma, instance.params);
  if (z.size() != instance.w.size()) return std::nullopt;
  const Pm first = static_cast<Pm>(z[0] * instance.w[0]);
  for (std::size_t j = 1; j < z.size(); ++j) {
    if (z[j] * instance.w[j] != first) return std::nullopt;
  }
  return first;
}

nlohmann::json to_json(const PartitionInstance& instance) {
  nlohmann::json doc = {
      {"n", instance.params.n},
      {"t", instance.params.t},
      {"alpha_num", instance.params.alpha.num()},
      {"alpha_den", instance.params.alpha.den()},
      {"x", std::vector<int>(instance.x.begin(), instance.x.end())},
      {"sigma", instance.sigma.one_based()},
      {"w", std::vector<int>(instance.w.begin(), instance.w.end())},
  };
  if (instance.b) doc["b"] = static_cast<int>(*instance.b);
  return doc;
}

PartitionInstance instance_from_json(const nlohmann::json& doc) {
  PartitionInstance inst;
  try {
    inst.params.n = doc.at("n").get<int>();
    inst.params.t = doc.at("t").get<int>();
    inst.params.alpha = Rational(doc.value("alpha_num", std::int64_t{1}), doc.value("alpha_den", std::int64_t{1}));
    const auto x = doc.at("x").get<std::vector<int>>();
    const auto w = doc.at("w").get<std::vector<int>>();
    inst.x.assign(x.begin(), x.end());
    inst.w.assign(w.begin(), w.end());
    inst.sigma = Permutation::from_one_based(doc.at("sigma").get<std::vector<int>>());
    if (doc.contains("b") && !doc["b"].is_null()) inst.b = static_cast<Pm>(doc["b"].get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

}  // namespace bhp
