#include "smaneck/sma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smaneck/errors.hpp"

namespace smaneck {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& path, const char* message) {
  if (!ok) throw ValidationError(path, message);
}

bool finite(double v) { return std::isfinite(v); }

// Cosine phase of the reverse arc, clamped to [0, pi].
double reverse_phase(const SmaMaterial& m, double temperature, double stress) {
  const double a_a = kPi / (m.austenite_finish - m.austenite_start);
  const double b_a = -a_a / m.stress_influence_reverse;
  return std::clamp(a_a * (temperature - m.austenite_start) + b_a * stress,
                    0.0, kPi);
}

double forward_phase(const SmaMaterial& m, double temperature, double stress) {
  const double a_m = kPi / (m.martensite_start - m.martensite_finish);
  const double b_m = -a_m / m.stress_influence_forward;
  return std::clamp(a_m * (temperature - m.martensite_finish) + b_m * stress,
                    0.0, kPi);
}

// Finds x in [lo, hi] with x == map(x). `map` must satisfy map(lo) >= lo and
// map(hi) <= hi, which the branch clamps guarantee.
template <typename Map>
double fixed_point(double lo, double hi, Map map) {
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid - map(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::Idle: return "idle";
    case Branch::Reverse: return "reverse";
    case Branch::Forward: return "forward";
  }
  return "unknown";
}

void SmaMaterial::validate(const std::string& prefix) const {
  const auto p = [&](const char* f) { return prefix + "." + f; };
  const double all[] = {young_martensite, young_austenite, poisson,
                        phase_transform_tensor, thermal_expansion_factor,
                        austenite_start, austenite_finish, martensite_start,
                        martensite_finish, stress_influence_reverse,
                        stress_influence_forward, resistance_martensite,
                        resistance_austenite, specific_heat, latent_heat};
  for (double v : all) require(finite(v), prefix, "non-finite value");
  require(young_martensite > 0.0, p("young_martensite"), "must be > 0");
  require(young_austenite > young_martensite, p("young_austenite"),
          "must exceed young_martensite");
  require(poisson > -1.0 && poisson < 0.5, p("poisson"),
          "must lie in (-1, 0.5)");
  require(martensite_finish > 0.0, p("martensite_finish"), "must be > 0 K");
  require(martensite_start > martensite_finish, p("martensite_start"),
          "must exceed martensite_finish");
  require(austenite_start >= martensite_start, p("austenite_start"),
          "must be >= martensite_start");
  require(austenite_finish > austenite_start, p("austenite_finish"),
          "must exceed austenite_start");
  require(stress_influence_reverse > 0.0, p("stress_influence_reverse"),
          "must be > 0");
  require(stress_influence_forward > 0.0, p("stress_influence_forward"),
          "must be > 0");
  require(resistance_martensite > 0.0, p("resistance_martensite"),
          "must be > 0");
  require(resistance_austenite > 0.0, p("resistance_austenite"), "must be > 0");
  require(specific_heat > 0.0, p("specific_heat"), "must be > 0");
  require(latent_heat >= 0.0, p("latent_heat"), "must be >= 0");
}

void SpringGeometry::validate(const std::string& prefix) const {
  const auto p = [&](const char* f) { return prefix + "." + f; };
  require(finite(wire_diameter) && wire_diameter > 0.0, p("wire_diameter"),
          "must be > 0");
  require(finite(coil_diameter) && coil_diameter > wire_diameter,
          p("coil_diameter"), "must exceed wire_diameter");
  require(finite(active_coils) && active_coils >= 1.0, p("active_coils"),
          "must be >= 1");
  require(finite(mass) && mass > 0.0, p("mass"), "must be > 0");
  require(finite(surface_area) && surface_area > 0.0, p("surface_area"),
          "must be > 0");
  require(finite(rest_length) && rest_length > 0.0, p("rest_length"),
          "must be > 0");
}

void ThermalEnvironment::validate(const std::string& ambient_prefix,
                                  const std::string& convection_prefix) const {
  require(finite(ambient_temperature) && ambient_temperature > 0.0,
          ambient_prefix + ".ambient_temperature", "must be > 0 K");
  require(finite(convection_coefficient) && convection_coefficient > 0.0,
          convection_prefix + ".convection_coefficient", "must be > 0");
}

SpringState initial_spring_state(const ThermalEnvironment& env,
                                 double initial_force) {
  SpringState s;
  s.temperature = env.ambient_temperature;
  s.martensite_fraction = 1.0;
  s.force = std::max(initial_force, 0.0);
  s.fraction_at_reverse_start = 1.0;
  s.fraction_at_forward_start = 1.0;
  return s;
}

Moduli effective_modulus(const SmaMaterial& material, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::domain_error("martensite fraction outside [0, 1]");
  }
  const double young = material.young_martensite * fraction +
                       material.young_austenite * (1.0 - fraction);
  return {young, young / (2.0 * (1.0 + material.poisson))};
}

double shear_stress(const SpringGeometry& geometry, double force) {
  const double d = geometry.wire_diameter;
  return 8.0 * force * geometry.coil_diameter / (kPi * d * d * d);
}

TransitionTemperatures stress_shifted(const SmaMaterial& material,
                                      double stress) {
  const double rev = stress / material.stress_influence_reverse;
  const double fwd = stress / material.stress_influence_forward;
  return {material.austenite_start + rev, material.austenite_finish + rev,
          material.martensite_start + fwd, material.martensite_finish + fwd};
}

double reverse_fraction(const SmaMaterial& material, double temperature,
                        double stress, double latched) {
  const double phase = reverse_phase(material, temperature, stress);
  const double xi = 0.5 * latched * (std::cos(phase) + 1.0);
  return std::clamp(xi, 0.0, latched);
}

double forward_fraction(const SmaMaterial& material, double temperature,
                        double stress, double latched) {
  const double phase = forward_phase(material, temperature, stress);
  const double xi =
      0.5 * (1.0 - latched) * std::cos(phase) + 0.5 * (1.0 + latched);
  return std::clamp(xi, latched, 1.0);
}

double reverse_fraction_slope(const SmaMaterial& material, double temperature,
                              double stress, double latched) {
  const auto t = stress_shifted(material, stress);
  if (temperature <= t.austenite_start || temperature >= t.austenite_finish) {
    return 0.0;
  }
  const double a_a = kPi / (material.austenite_finish - material.austenite_start);
  return -0.5 * latched * a_a *
         std::sin(reverse_phase(material, temperature, stress));
}

double forward_fraction_slope(const SmaMaterial& material, double temperature,
                              double stress, double latched) {
  const auto t = stress_shifted(material, stress);
  if (temperature <= t.martensite_finish || temperature >= t.martensite_start) {
    return 0.0;
  }
  const double a_m =
      kPi / (material.martensite_start - material.martensite_finish);
  return -0.5 * (1.0 - latched) * a_m *
         std::sin(forward_phase(material, temperature, stress));
}

double spring_stiffness(const SmaMaterial& material,
                        const SpringGeometry& geometry, double fraction) {
  const double g = effective_modulus(material, fraction).shear;
  const double d = geometry.wire_diameter;
  const double coil = geometry.coil_diameter;
  return g * d * d * d * d / (8.0 * geometry.active_coils * coil * coil * coil);
}

double transformation_coefficient(const SmaMaterial& material,
                                  const SpringGeometry& geometry) {
  const double d = geometry.wire_diameter;
  return kPi * d * d * d * material.phase_transform_tensor /
         (8.0 * std::sqrt(3.0) * geometry.coil_diameter);
}

double thermal_coefficient(const SmaMaterial& material,
                           const SpringGeometry& geometry) {
  const double d = geometry.wire_diameter;
  return kPi * d * d * d * material.thermal_expansion_factor /
         (8.0 * std::sqrt(3.0) * geometry.coil_diameter);
}

double phase_resistance(const SmaMaterial& material, double fraction) {
  return material.resistance_martensite * fraction +
         material.resistance_austenite * (1.0 - fraction);
}

double heating_rate(const SmaMaterial& material, const SpringGeometry& geometry,
                    const ThermalEnvironment& env, const SpringState& state,
                    double current, double fraction_rate) {
  const double joule =
      current * current * phase_resistance(material, state.martensite_fraction);
  const double convection = geometry.surface_area * env.convection_coefficient *
                            (state.temperature - env.ambient_temperature);
  const double latent = geometry.mass * material.latent_heat * fraction_rate;
  return (joule - convection + latent) / (geometry.mass * material.specific_heat);
}

double force_rate(const SmaMaterial& material, const SpringGeometry& geometry,
                  const SpringState& state, double deflection_rate,
                  double fraction_rate, double temperature_rate) {
  return spring_stiffness(material, geometry, state.martensite_fraction) *
             deflection_rate +
         transformation_coefficient(material, geometry) * fraction_rate +
         thermal_coefficient(material, geometry) * temperature_rate;
}

SpringState step_spring(const SmaMaterial& material,
                        const SpringGeometry& geometry,
                        const ThermalEnvironment& env, const SpringState& state,
                        double current, double deflection_rate, double dt,
                        const StepOptions& options) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");

  const double xi0 = state.martensite_fraction;
  const double stress0 = shear_stress(geometry, state.force);
  const auto shifted = stress_shifted(material, stress0);
  const double coeff_b = transformation_coefficient(material, geometry);
  const double dstress_dforce = shear_stress(geometry, 1.0);

  SpringState probe = state;
  probe.fraction_rate = 0.0;
  const bool heating =
      heating_rate(material, geometry, env, probe, current, 0.0) > 0.0;
  const double reverse_latch = state.branch == Branch::Reverse
                                   ? state.fraction_at_reverse_start
                                   : xi0;
  const double forward_latch = state.branch == Branch::Forward
                                   ? state.fraction_at_forward_start
                                   : xi0;

  // Temperature rate at T with the latent heat of the active arc folded into
  // an effective heat capacity. The arc slope is reduced by the stress it
  // generates through the force coupling.
  const auto temperature_rate = [&](double temperature) {
    double xi = xi0;
    double slope = 0.0;
    double stress_gain = 0.0;
    if (!options.freeze_kinetics) {
      if (heating && temperature > shifted.austenite_start) {
        const double arc =
            reverse_fraction(material, temperature, stress0, reverse_latch);
        if (arc < xi0) {
          xi = arc;
          slope = reverse_fraction_slope(material, temperature, stress0,
                                         reverse_latch);
          stress_gain = 1.0 / material.stress_influence_reverse;
        }
      } else if (!heating && temperature < shifted.martensite_start) {
        const double arc =
            forward_fraction(material, temperature, stress0, forward_latch);
        if (arc > xi0) {
          xi = arc;
          slope = forward_fraction_slope(material, temperature, stress0,
                                         forward_latch);
          stress_gain = 1.0 / material.stress_influence_forward;
        }
      }
    }
    const double feedback =
        std::max(1.0, 1.0 + slope * stress_gain * dstress_dforce * coeff_b);
    const double effective_slope = slope / feedback;
    SpringState s = state;
    s.temperature = temperature;
    s.martensite_fraction = xi;
    const double sensible = heating_rate(material, geometry, env, s, current, 0.0);
    return sensible * material.specific_heat /
           (material.specific_heat - material.latent_heat * effective_slope);
  };

  const double t0 = state.temperature;
  const double k1 = temperature_rate(t0);
  const double k2 = temperature_rate(t0 + 0.5 * dt * k1);
  const double k3 = temperature_rate(t0 + 0.5 * dt * k2);
  const double k4 = temperature_rate(t0 + dt * k3);
  const double t1 = t0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  const double delta_t = t1 - t0;
  if (!(std::abs(delta_t) <= options.max_temperature_step) || !(t1 > 0.0)) {
    throw StepTooLarge(delta_t, options.max_temperature_step);
  }

  SpringState next = state;
  next.temperature = t1;
  next.deflection = state.deflection + deflection_rate * dt;

  const auto force_at = [&](double xi) {
    const double rate = force_rate(material, geometry, state, deflection_rate,
                                   (xi - xi0) / dt, delta_t / dt);
    return std::max(0.0, state.force + rate * dt);
  };

  double xi1 = xi0;
  if (!options.freeze_kinetics) {
    const bool warming = t1 > t0;
    const bool cooling = t1 < t0;
    if (t1 > shifted.austenite_start &&
        (warming || state.branch == Branch::Reverse)) {
      if (state.branch != Branch::Reverse) {
        next.fraction_at_reverse_start = xi0;
      }
      next.branch = Branch::Reverse;
      const double latch = next.fraction_at_reverse_start;
      const auto map = [&](double xi) {
        return std::min(xi0, reverse_fraction(material, t1,
                                              shear_stress(geometry, force_at(xi)),
                                              latch));
      };
      if (map(xi0) < xi0) xi1 = fixed_point(0.0, xi0, map);
    } else if (t1 < shifted.martensite_start &&
               (cooling || state.branch == Branch::Forward)) {
      if (state.branch != Branch::Forward) {
        next.fraction_at_forward_start = xi0;
      }
      next.branch = Branch::Forward;
      const double latch = next.fraction_at_forward_start;
      const auto map = [&](double xi) {
        return std::max(xi0, forward_fraction(material, t1,
                                              shear_stress(geometry, force_at(xi)),
                                              latch));
      };
      if (map(xi0) > xi0) xi1 = fixed_point(xi0, 1.0, map);
    } else {
      next.branch = Branch::Idle;
    }
  }

  xi1 = std::clamp(xi1, 0.0, 1.0);
  next.martensite_fraction = xi1;
  next.fraction_rate = (xi1 - xi0) / dt;
  next.force = force_at(xi1);
  return next;
}

}  // namespace smaneck
