#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "epinet/epidemic.hpp"

namespace epinet {

struct FractionState {
  double s = 1.0;
  double i = 0.0;
  double r = 0.0;

  // Each component in [0, 1] and s + i + r = 1 within 1e-9; throws ParameterError.
  void validate() const;
};

struct OdeSolution {
  RateParams params;
  double dt = 0.0;
  std::vector<double> t;  // t[k] = k * dt (last point clipped to t_max)
  std::vector<FractionState> states;
};

inline constexpr double kDefaultOdeStep = 0.01;

// dS/dt = -beta S I, dI/dt = beta S I - gamma I, dR/dt = gamma I
// (S, I, R as population fractions), classical fixed-step RK4.
OdeSolution ode_sir(const RateParams& p, const FractionState& init, double t_max,
                    double dt = kDefaultOdeStep);

// Adds waning: dS/dt += alpha R, dR/dt -= alpha R.
OdeSolution ode_sirs(const RateParams& p, const FractionState& init, double t_max,
                     double dt = kDefaultOdeStep);

// Right-hand side of the SIRS system (SIR when alpha = 0).
FractionState sirs_derivative(const RateParams& p, const FractionState& x);

// beta / gamma, or beta * k_avg / gamma. Throws std::domain_error for gamma = 0.
double r0(const RateParams& p, std::optional<double> k_avg = std::nullopt);

// Endemic fixed point of the SIRS system, or nullopt (disease-free) when
// beta <= gamma or alpha = 0. Throws std::domain_error for gamma = 0.
std::optional<FractionState> endemic_equilibrium(const RateParams& p);

// Linear interpolation of the solution at time t (clamped to the grid).
FractionState ode_value_at(const OdeSolution& sol, double t);

// "t,S,I,R" with fractions.
void write_ode_csv(std::ostream& out, const OdeSolution& sol);

}  // namespace epinet
