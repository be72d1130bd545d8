#include "rparvi/target.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace rparvi {

namespace {

using nlohmann::json;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

void validate_mixture_spec(const MixtureSpec& spec) {
  if (spec.components.empty())
    throw std::invalid_argument("mixture needs at least one component");
  const std::size_t dim = spec.components.front().mean.size();
  if (dim == 0) throw std::invalid_argument("mixture component mean is empty");
  for (const auto& c : spec.components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      throw std::invalid_argument("mixture weights must be positive");
    if (!(c.std > 0.0) || !std::isfinite(c.std))
      throw std::invalid_argument("mixture stds must be positive");
    if (c.mean.size() != dim)
      throw std::invalid_argument("mixture components disagree on dimension");
  }
}

double density_gaussian_iso(std::span<const double> x,
                            std::span<const double> mean, double std) {
  if (x.size() != mean.size())
    throw std::invalid_argument("gaussian: dimension mismatch");
  if (!(std > 0.0)) throw std::invalid_argument("gaussian: std must be positive");
  return std::exp(-squared_distance(x, mean) / (2.0 * std * std));
}

double density_mixture(std::span<const double> x, const MixtureSpec& spec) {
  validate_mixture_spec(spec);
  if (x.size() != spec.components.front().mean.size())
    throw std::invalid_argument("mixture: dimension mismatch");
  double sum = 0.0;
  for (const auto& c : spec.components) {
    sum += c.weight *
           std::exp(-squared_distance(x, c.mean) / (2.0 * c.std * c.std));
  }
  return sum;
}

double density_banana(std::span<const double> x, double curvature,
                      double scale) {
  if (x.size() != 2) throw std::invalid_argument("banana: requires dim 2");
  if (!(scale > 0.0)) throw std::invalid_argument("banana: scale must be positive");
  const double ridge = x[1] - curvature * (x[0] * x[0] - scale * scale);
  return std::exp(-x[0] * x[0] / (2.0 * scale * scale) - ridge * ridge / 2.0);
}

double density_ring(std::span<const double> x, double radius, double width) {
  if (x.size() != 2) throw std::invalid_argument("ring: requires dim 2");
  if (!(radius > 0.0)) throw std::invalid_argument("ring: radius must be positive");
  if (!(width > 0.0)) throw std::invalid_argument("ring: width must be positive");
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
  const double dev = r - radius;
  return std::exp(-dev * dev / (2.0 * width * width));
}

TargetDensity::TargetDensity(int dim, std::string kind, json descriptor,
                             EvalFn eval)
    : dim_(dim),
      kind_(std::move(kind)),
      descriptor_(std::move(descriptor)),
      eval_(std::move(eval)) {
  if (dim_ <= 0) throw std::invalid_argument("target dim must be positive");
  if (!eval_) throw std::invalid_argument("target needs an evaluation function");
}

TargetDensity make_gaussian_target(std::vector<double> mean, double std) {
  if (mean.empty()) throw std::invalid_argument("gaussian: mean is empty");
  if (!(std > 0.0)) throw std::invalid_argument("gaussian: std must be positive");
  const int dim = static_cast<int>(mean.size());
  json descriptor{{"kind", "gaussian"}, {"mean", mean}, {"std", std}};
  return TargetDensity(
      dim, "gaussian", std::move(descriptor),
      [mean = std::move(mean), std](std::span<const double> x) {
        return density_gaussian_iso(x, mean, std);
      });
}

TargetDensity make_mixture_target(MixtureSpec spec) {
  validate_mixture_spec(spec);
  const int dim = static_cast<int>(spec.components.front().mean.size());
  json components = json::array();
  for (const auto& c : spec.components) {
    components.push_back(
        {{"weight", c.weight}, {"mean", c.mean}, {"std", c.std}});
  }
  json descriptor{{"kind", "mixture"}, {"components", components}};
  return TargetDensity(dim, "mixture", std::move(descriptor),
                       [spec = std::move(spec)](std::span<const double> x) {
                         return density_mixture(x, spec);
                       });
}

TargetDensity make_banana_target(double curvature, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("banana: scale must be positive");
  json descriptor{{"kind", "banana"}, {"curvature", curvature}, {"scale", scale}};
  return TargetDensity(2, "banana", std::move(descriptor),
                       [curvature, scale](std::span<const double> x) {
                         return density_banana(x, curvature, scale);
                       });
}

TargetDensity make_ring_target(double radius, double width) {
  json descriptor{{"kind", "ring"}, {"radius", radius}, {"width", width}};
  return TargetDensity(2, "ring", std::move(descriptor),
                       [radius, width](std::span<const double> x) {
                         return density_ring(x, radius, width);
                       });
}

namespace {

[[noreturn]] void fail_target(const std::string& message) {
  throw std::invalid_argument("target: " + message);
}

void reject_unknown(const json& obj,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail_target("unknown key: " + key);
  }
}

double number_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail_target(std::string(key) + ": expected a number");
  return obj[key].get<double>();
}

std::vector<double> vector_field(const json& value, const char* key) {
  if (!value.is_array()) fail_target(std::string(key) + ": expected an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_number()) fail_target(std::string(key) + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

TargetDensity target_from_json(const json& spec, int expected_dim) {
  if (!spec.is_object()) fail_target("expected an object");
  if (!spec.contains("kind")) fail_target("missing key: kind");
  if (!spec["kind"].is_string()) fail_target("kind: expected a string");
  const std::string kind = spec["kind"].get<std::string>();

  TargetDensity target = [&]() -> TargetDensity {
    if (kind == "gaussian") {
      reject_unknown(spec, {"kind", "mean", "std"});
      std::vector<double> mean(static_cast<std::size_t>(expected_dim), 0.0);
      if (spec.contains("mean")) mean = vector_field(spec["mean"], "mean");
      return make_gaussian_target(std::move(mean),
                                  number_or(spec, "std", 1.0));
    }
    if (kind == "mixture") {
      reject_unknown(spec, {"kind", "components"});
      if (!spec.contains("components")) fail_target("missing key: components");
      if (!spec["components"].is_array())
        fail_target("components: expected an array");
      MixtureSpec mix;
      for (const auto& c : spec["components"]) {
        if (!c.is_object()) fail_target("components: expected objects");
        reject_unknown(c, {"weight", "mean", "std"});
        MixtureComponent comp;
        comp.weight = number_or(c, "weight", 1.0);
        if (!c.contains("mean")) fail_target("component missing key: mean");
        comp.mean = vector_field(c["mean"], "mean");
        comp.std = number_or(c, "std", 1.0);
        mix.components.push_back(std::move(comp));
      }
      return make_mixture_target(std::move(mix));
    }
    if (kind == "banana") {
      reject_unknown(spec, {"kind", "curvature", "scale"});
      return make_banana_target(number_or(spec, "curvature", 0.3),
                                number_or(spec, "scale", 2.0));
    }
    if (kind == "ring") {
      reject_unknown(spec, {"kind", "radius", "width"});
      return make_ring_target(number_or(spec, "radius", 2.0),
                              number_or(spec, "width", 0.5));
    }
    fail_target("unknown kind: " + kind);
  }();

  if (target.dim() != expected_dim) {
    fail_target("dimension " + std::to_string(target.dim()) +
                " does not match dim " + std::to_string(expected_dim));
  }
  return target;
}

std::optional<std::function<double(double)>> marginal_cdf(
    const TargetDensity& target, int axis) {
  if (axis < 0 || axis >= target.dim()) return std::nullopt;
  const json& d = target.descriptor();
  if (target.kind() == "gaussian") {
    const double mean = d["mean"][axis].get<double>();
    const double std = d["std"].get<double>();
    return [mean, std](double x) { return normal_cdf((x - mean) / std); };
  }
  if (target.kind() == "mixture") {
    // Component k of the peak-normalized mixture has total mass
    // w_k * (sqrt(2*pi) * s_k)^d, so the marginal CDF is the mass-weighted
    // combination of the per-component 1-d normal CDFs.
    struct Part {
      double weight, mean, std;
    };
    std::vector<Part> parts;
    double total = 0.0;
    const int dim = target.dim();
    for (const auto& c : d["components"]) {
      Part p;
      p.std = c["std"].get<double>();
      p.mean = c["mean"][axis].get<double>();
      p.weight = c["weight"].get<double>() *
                 std::pow(std::sqrt(2.0 * std::numbers::pi) * p.std, dim);
      total += p.weight;
      parts.push_back(p);
    }
    return [parts = std::move(parts), total](double x) {
      double acc = 0.0;
      for (const auto& p : parts)
        acc += p.weight * normal_cdf((x - p.mean) / p.std);
      return acc / total;
    };
  }
  return std::nullopt;
}

}  // namespace rparvi
