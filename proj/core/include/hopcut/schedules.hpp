#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hopcut/rng.hpp"

namespace hopcut {

enum class NoiseKind {
  None,
  Fixed,           // constant amplitude
  Linear,          // a0 * (1 - t/T)
  QuadSuperlinear, // a0 * (1 - t/T)^2
  QuadSublinear,   // a0 * (1 - (t/T)^2)
  Exponential,     // a0 * exp(-k * t/T)
};

// Noise-amplitude control law over an annealing horizon. Decaying kinds start
// at a0 and (except Exponential, which ends at a0*exp(-k)) reach zero at the
// final sweep.
struct NoiseSchedule {
  NoiseKind kind = NoiseKind::None;
  double a0 = 0.0;   // amplitude (Fixed) or initial amplitude (decaying kinds)
  double rate = 5.0; // Exponential only

  static NoiseSchedule none() { return {}; }
  static NoiseSchedule fixed(double a);
  static NoiseSchedule linear(double a0);
  static NoiseSchedule quad_superlinear(double a0);
  static NoiseSchedule quad_sublinear(double a0);
  static NoiseSchedule exponential(double a0, double k = 5.0);

  // spec strings: "none", "fixed:1.5", "lin:5", "quad-super:5",
  // "quad-sub:5", "exp:5:5"
  static NoiseSchedule parse(std::string_view spec);
  std::string spec() const;
};

// amplitude at sweep t of horizon T; valid for 0 <= t <= T
double amplitude(const NoiseSchedule& s, int t, int horizon);

enum class ThresholdKind { Zero, LinearRamp };

// Threshold control law, uniform across nodes: zero, or a ramp from 0 at the
// start of the run to theta_max at the final sweep.
struct ThresholdSchedule {
  ThresholdKind kind = ThresholdKind::Zero;
  double theta_max = 0.0;

  static ThresholdSchedule zero() { return {}; }
  static ThresholdSchedule linear_ramp(double theta_max);

  // spec strings: "zero", "theta-ramp:2"
  static ThresholdSchedule parse(std::string_view spec);
  std::string spec() const;
};

double threshold_at(const ThresholdSchedule& s, int t, int horizon);

// `count` independent draws uniform on [-amplitude, +amplitude]
std::vector<double> sample_noise(double amplitude, int count, Rng& rng);
void sample_noise(double amplitude, Rng& rng, std::vector<double>& out);

}  // namespace hopcut
