#include "epinet/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epinet/errors.hpp"
#include "format.hpp"

namespace epinet {
namespace {

FractionState axpy(const FractionState& x, double h, const FractionState& k) {
  return {x.s + h * k.s, x.i + h * k.i, x.r + h * k.r};
}

OdeSolution integrate(const RateParams& p, const FractionState& init, double t_max, double dt) {
  p.validate();
  init.validate();
  if (!(dt > 0.0)) throw ParameterError("dt must be > 0");
  if (!(t_max >= 0.0)) throw ParameterError("t_max must be >= 0");

  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  OdeSolution sol;
  sol.params = p;
  sol.dt = dt;
  sol.t.reserve(steps + 1);
  sol.states.reserve(steps + 1);
  sol.t.push_back(0.0);
  sol.states.push_back(init);

  FractionState x = init;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = sol.t.back();
    const double t_next = std::min(static_cast<double>(k) * dt, t_max);
    const double h = t_next - t_prev;
    const auto k1 = sirs_derivative(p, x);
    const auto k2 = sirs_derivative(p, axpy(x, h / 2, k1));
    const auto k3 = sirs_derivative(p, axpy(x, h / 2, k2));
    const auto k4 = sirs_derivative(p, axpy(x, h, k3));
    x.s += h / 6 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s);
    x.i += h / 6 * (k1.i + 2 * k2.i + 2 * k3.i + k4.i);
    x.r += h / 6 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r);
    sol.t.push_back(t_next);
    sol.states.push_back(x);
  }
  return sol;
}

void require_recovery(const RateParams& p) {
  if (p.gamma == 0.0) throw std::domain_error("reproduction number undefined for gamma = 0");
}

}  // namespace

void FractionState::validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(s) || !in_unit(i) || !in_unit(r)) {
    throw ParameterError("fractions must each lie in [0, 1]");
  }
  if (std::abs(s + i + r - 1.0) > 1e-9) throw ParameterError("fractions must sum to 1");
}

FractionState sirs_derivative(const RateParams& p, const FractionState& x) {
  const double infection = p.beta * x.s * x.i;
  const double recovery = p.gamma * x.i;
  const double waning = p.alpha * x.r;
  return {-infection + waning, infection - recovery, recovery - waning};
}

OdeSolution ode_sir(const RateParams& p, const FractionState& init, double t_max, double dt) {
  RateParams sir = p;
  sir.alpha = 0.0;
  return integrate(sir, init, t_max, dt);
}

OdeSolution ode_sirs(const RateParams& p, const FractionState& init, double t_max, double dt) {
  return integrate(p, init, t_max, dt);
}

double r0(const RateParams& p, std::optional<double> k_avg) {
  require_recovery(p);
  return p.beta * k_avg.value_or(1.0) / p.gamma;
}

std::optional<FractionState> endemic_equilibrium(const RateParams& p) {
  require_recovery(p);
  if (p.beta <= p.gamma || p.alpha == 0.0) return std::nullopt;
  const double s = p.gamma / p.beta;
  const double i = (1.0 - s) / (1.0 + p.gamma / p.alpha);
  return FractionState{s, i, p.gamma / p.alpha * i};
}

FractionState ode_value_at(const OdeSolution& sol, double t) {
  if (t <= sol.t.front()) return sol.states.front();
  if (t >= sol.t.back()) return sol.states.back();
  const auto it = std::upper_bound(sol.t.begin(), sol.t.end(), t);
  const auto hi = static_cast<std::size_t>(it - sol.t.begin());
  const auto lo = hi - 1;
  const double w = (t - sol.t[lo]) / (sol.t[hi] - sol.t[lo]);
  const auto& a = sol.states[lo];
  const auto& b = sol.states[hi];
  return {a.s + w * (b.s - a.s), a.i + w * (b.i - a.i), a.r + w * (b.r - a.r)};
}

void write_ode_csv(std::ostream& out, const OdeSolution& sol) {
  out << "t,S,I,R\n";
  for (std::size_t k = 0; k < sol.t.size(); ++k) {
    const auto& x = sol.states[k];
    out << format_double(sol.t[k]) << ',' << format_double(x.s) << ',' << format_double(x.i) << ','
        << format_double(x.r) << '\n';
  }
}

}  // namespace epinet
