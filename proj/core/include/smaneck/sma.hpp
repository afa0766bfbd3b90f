#pragma once

#include <string>

namespace smaneck {

// Material constants for one shape memory alloy. Temperatures in kelvin,
// everything else SI.
struct SmaMaterial {
  double young_martensite = 28e9;           // E_m, Pa
  double young_austenite = 75e9;            // E_a, Pa
  double poisson = 0.33;                    // nu
  double phase_transform_tensor = -1e9;     // Omega, Pa
  double thermal_expansion_factor = 0.55e6; // theta_T, Pa/K
  double austenite_start = 361.15;          // A_s, K
  double austenite_finish = 371.15;         // A_f, K
  double martensite_start = 345.15;         // M_s, K
  double martensite_finish = 335.15;        // M_f, K
  double stress_influence_reverse = 10.3e6; // C_a, Pa/K
  double stress_influence_forward = 10.3e6; // C_m, Pa/K
  double resistance_martensite = 1.0;       // R_m, ohm
  double resistance_austenite = 1.1;        // R_a, ohm
  double specific_heat = 322.0;             // C_p, J/(kg K)
  double latent_heat = 24.2e3;              // Delta H, J/kg

  // Throws ValidationError naming "<prefix>.<field>" on the first violated
  // invariant.
  void validate(const std::string& prefix = "material") const;

  bool operator==(const SmaMaterial&) const = default;
};

struct SpringGeometry {
  double wire_diameter = 0.75e-3; // d, m
  double coil_diameter = 5e-3;    // D, m
  double active_coils = 48;       // n
  double mass = 2.15e-3;          // m_sp, kg
  double surface_area = 1.78e-3;  // A_c, m^2
  double rest_length = 0.03;      // m

  void validate(const std::string& prefix = "geometry.spring") const;

  bool operator==(const SpringGeometry&) const = default;
};

struct ThermalEnvironment {
  double ambient_temperature = 298.15;  // T_inf, K
  double convection_coefficient = 80.0; // h_T, W/(m^2 K)

  void validate(const std::string& ambient_prefix = "environment",
                const std::string& convection_prefix = "environment") const;

  bool operator==(const ThermalEnvironment&) const = default;
};

enum class Branch { Idle, Reverse, Forward };

const char* to_string(Branch branch);

struct SpringState {
  double temperature = 298.15;            // K
  double martensite_fraction = 1.0;       // xi
  double force = 0.0;                     // F_f, N
  double deflection = 0.0;                // x, m (elongation from rest)
  double fraction_at_reverse_start = 1.0; // xi_m latch
  double fraction_at_forward_start = 0.0; // xi_a latch
  Branch branch = Branch::Idle;
  double fraction_rate = 0.0;             // last step's delta xi / dt, 1/s

  bool operator==(const SpringState&) const = default;
};

SpringState initial_spring_state(const ThermalEnvironment& env,
                                 double initial_force = 0.0);

struct Moduli {
  double young; // Pa
  double shear; // Pa
};

// Phase-weighted Young's modulus and the matching shear modulus.
Moduli effective_modulus(const SmaMaterial& material, double fraction);

// Shear stress at the wire surface of a helical spring carrying `force`.
double shear_stress(const SpringGeometry& geometry, double force);

// Transformation temperatures raised by the applied stress.
struct TransitionTemperatures {
  double austenite_start;
  double austenite_finish;
  double martensite_start;
  double martensite_finish;
};

TransitionTemperatures stress_shifted(const SmaMaterial& material,
                                      double stress);

// Martensite fraction while heating through the austenite band. `latched`
// is the fraction held when the band was entered.
double reverse_fraction(const SmaMaterial& material, double temperature,
                        double stress, double latched);

// Martensite fraction while cooling through the martensite band. `latched`
// is the fraction held when the band was entered.
double forward_fraction(const SmaMaterial& material, double temperature,
                        double stress, double latched);

// Partial derivatives of the branch fractions with respect to temperature
// at fixed stress (zero outside the band).
double reverse_fraction_slope(const SmaMaterial& material, double temperature,
                              double stress, double latched);
double forward_fraction_slope(const SmaMaterial& material, double temperature,
                              double stress, double latched);

// Constitutive coefficients of the rate law dF = A dx + B dxi + C dT.
double spring_stiffness(const SmaMaterial& material,
                        const SpringGeometry& geometry, double fraction);
double transformation_coefficient(const SmaMaterial& material,
                                  const SpringGeometry& geometry);
double thermal_coefficient(const SmaMaterial& material,
                           const SpringGeometry& geometry);

double phase_resistance(const SmaMaterial& material, double fraction);

// Joule heating energy balance. `fraction_rate` is supplied by the caller
// (zero when no transformation is active).
double heating_rate(const SmaMaterial& material, const SpringGeometry& geometry,
                    const ThermalEnvironment& env, const SpringState& state,
                    double current, double fraction_rate);

double force_rate(const SmaMaterial& material, const SpringGeometry& geometry,
                  const SpringState& state, double deflection_rate,
                  double fraction_rate, double temperature_rate);

struct StepOptions {
  double max_temperature_step = 1.0; // K
  bool freeze_kinetics = false;      // hold xi fixed (thermal tests)

  bool operator==(const StepOptions&) const = default;
};

// One explicit step of the coupled spring equations.
// Throws StepTooLarge when |dT| exceeds options.max_temperature_step.
SpringState step_spring(const SmaMaterial& material,
                        const SpringGeometry& geometry,
                        const ThermalEnvironment& env, const SpringState& state,
                        double current, double deflection_rate, double dt,
                        const StepOptions& options = {});

}  // namespace smaneck
