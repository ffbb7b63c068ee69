#include "hopcut/schedules.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hopcut {

namespace {

void check_amplitude(double a0) {
  if (!(a0 >= 0.0))
    throw std::invalid_argument("NoiseSchedule: amplitude must be >= 0");
}

// splits "name:x:y" into name and numeric args
std::vector<std::string> split_spec(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    if (colon == std::string_view::npos) {
      parts.emplace_back(spec.substr(start));
      return parts;
    }
    parts.emplace_back(spec.substr(start, colon - start));
    start = colon + 1;
  }
}

double parse_number(const std::string& s, std::string_view spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad schedule spec: " + std::string(spec));
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_time(int t, int horizon, bool decaying) {
  if (t < 0) throw std::invalid_argument("schedule: sweep index must be >= 0");
  if (t > horizon)
    throw std::invalid_argument("schedule: sweep index exceeds horizon");
  if (decaying && horizon < 1)
    throw std::invalid_argument("schedule: decaying kinds need horizon >= 1");
}

}  // namespace

NoiseSchedule NoiseSchedule::fixed(double a) {
  check_amplitude(a);
  return {NoiseKind::Fixed, a};
}

NoiseSchedule NoiseSchedule::linear(double a0) {
  check_amplitude(a0);
  return {NoiseKind::Linear, a0};
}

NoiseSchedule NoiseSchedule::quad_superlinear(double a0) {
  check_amplitude(a0);
  return {NoiseKind::QuadSuperlinear, a0};
}

NoiseSchedule NoiseSchedule::quad_sublinear(double a0) {
  check_amplitude(a0);
  return {NoiseKind::QuadSublinear, a0};
}

NoiseSchedule NoiseSchedule::exponential(double a0, double k) {
  check_amplitude(a0);
  if (!(k > 0.0))
    throw std::invalid_argument("NoiseSchedule: exponential rate must be > 0");
  return {NoiseKind::Exponential, a0, k};
}

NoiseSchedule NoiseSchedule::parse(std::string_view spec) {
  const auto parts = split_spec(spec);
  const std::string& name = parts[0];
  const std::size_t args = parts.size() - 1;
  if (name == "none" && args == 0) return none();
  if (name == "fixed" && args == 1) return fixed(parse_number(parts[1], spec));
  if (name == "lin" && args == 1) return linear(parse_number(parts[1], spec));
  if (name == "quad-super" && args == 1)
    return quad_superlinear(parse_number(parts[1], spec));
  if (name == "quad-sub" && args == 1)
    return quad_sublinear(parse_number(parts[1], spec));
  if (name == "exp" && (args == 1 || args == 2)) {
    const double a0 = parse_number(parts[1], spec);
    const double k = args == 2 ? parse_number(parts[2], spec) : 5.0;
    return exponential(a0, k);
  }
  throw std::invalid_argument("bad noise schedule spec: " + std::string(spec));
}

std::string NoiseSchedule::spec() const {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::Fixed: return "fixed:" + format_number(a0);
    case NoiseKind::Linear: return "lin:" + format_number(a0);
    case NoiseKind::QuadSuperlinear: return "quad-super:" + format_number(a0);
    case NoiseKind::QuadSublinear: return "quad-sub:" + format_number(a0);
    case NoiseKind::Exponential:
      return "exp:" + format_number(a0) + ":" + format_number(rate);
  }
  return "none";
}

double amplitude(const NoiseSchedule& s, int t, int horizon) {
  const bool decaying =
      s.kind != NoiseKind::None && s.kind != NoiseKind::Fixed;
  check_time(t, horizon, decaying);
  const double r = decaying ? static_cast<double>(t) / horizon : 0.0;
  switch (s.kind) {
    case NoiseKind::None: return 0.0;
    case NoiseKind::Fixed: return s.a0;
    case NoiseKind::Linear: return s.a0 * (1.0 - r);
    case NoiseKind::QuadSuperlinear: return s.a0 * (1.0 - r) * (1.0 - r);
    case NoiseKind::QuadSublinear: return s.a0 * (1.0 - r * r);
    case NoiseKind::Exponential: return s.a0 * std::exp(-s.rate * r);
  }
  return 0.0;
}

ThresholdSchedule ThresholdSchedule::linear_ramp(double theta_max) {
  if (!(theta_max >= 0.0))
    throw std::invalid_argument("ThresholdSchedule: theta_max must be >= 0");
  return {ThresholdKind::LinearRamp, theta_max};
}

ThresholdSchedule ThresholdSchedule::parse(std::string_view spec) {
  const auto parts = split_spec(spec);
  if (parts[0] == "zero" && parts.size() == 1) return zero();
  if (parts[0] == "theta-ramp" && parts.size() == 2)
    return linear_ramp(parse_number(parts[1], spec));
  throw std::invalid_argument("bad threshold schedule spec: " + std::string(spec));
}

std::string ThresholdSchedule::spec() const {
  if (kind == ThresholdKind::Zero) return "zero";
  return "theta-ramp:" + format_number(theta_max);
}

double threshold_at(const ThresholdSchedule& s, int t, int horizon) {
  check_time(t, horizon, s.kind == ThresholdKind::LinearRamp);
  if (s.kind == ThresholdKind::Zero) return 0.0;
  return s.theta_max * static_cast<double>(t) / horizon;
}

std::vector<double> sample_noise(double amplitude, int count, Rng& rng) {
  std::vector<double> out(count);
  sample_noise(amplitude, rng, out);
  return out;
}

void sample_noise(double amplitude, Rng& rng, std::vector<double>& out) {
  if (!(amplitude >= 0.0))
    throw std::invalid_argument("sample_noise: amplitude must be >= 0");
  for (auto& v : out) v = rng.symmetric(amplitude);
}

}  // namespace hopcut
