#pragma once

// Closed-form MOSFET and gate-delay models used by the power-gating flow:
// subthreshold conduction (weak inversion with DIBL and linearized body
// effect), alpha-power-law propagation delay, the delay inflation caused by
// a series sleep transistor, and the resistive-region sleep transistor
// sizing rule.

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "pglab/errors.hpp"
#include "pglab/text_util.hpp"

namespace pglab {

struct DeviceParams {
  double mu0_cox;      // transconductance factor mu0*Cox (A/V^2)
  double vth0;         // zero-bias threshold voltage (V)
  double dvth;         // threshold adjustment delta-vth (V)
  double m;            // subthreshold swing coefficient
  double gamma_prime;  // linearized body-effect coefficient
  double eta;          // DIBL coefficient
  double v_t;          // thermal voltage (V)
  double alpha;        // velocity-saturation index, 1 <= alpha <= 2
  double vdd;          // supply voltage (V)
};

struct Geometry {
  double w;  // channel width (m)
  double l;  // effective channel length (m)
};

struct BiasPoint {
  double vg;   // gate voltage (V)
  double vs;   // source voltage (V)
  double vds;  // drain-source voltage (V), >= 0 for the NMOS footer convention
};

// Throws DomainError when a field violates its allowed range.
inline void validate_device_params(const DeviceParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw DomainError(std::string("device parameter ") + name + " must be > 0");
  };
  positive(p.mu0_cox, "mu0_cox");
  positive(p.vth0, "vth0");
  positive(p.m, "m");
  positive(p.v_t, "v_t");
  positive(p.vdd, "vdd");
  if (p.dvth < 0.0) throw DomainError("device parameter dvth must be >= 0");
  if (p.gamma_prime < 0.0) throw DomainError("device parameter gamma_prime must be >= 0");
  if (p.eta < 0.0) throw DomainError("device parameter eta must be >= 0");
  if (!(p.alpha >= 1.0 && p.alpha <= 2.0))
    throw DomainError("device parameter alpha must lie in [1, 2]");
  if (!(p.vth0 < p.vdd)) throw DomainError("device parameter vth0 must be below vdd");
}

namespace detail {

// exp() overflows a double just above 709; treat that as a modeling error
// rather than returning inf.
inline double checked_exp(double arg, const char* term) {
  if (arg > 709.0)
    throw DomainError(std::string("exponent overflow in ") + term);
  return std::exp(arg);
}

}  // namespace detail

// Subthreshold channel current of a single NMOS device:
//   I = A * exp((Vg - Vs - vth0 - gamma'*Vs + eta*Vds) / (m*vT))
//         * (1 - exp(-Vds/vT))
//   A = mu0*Cox * (W/Leff) * vT^2 * e^1.8 * exp(-dvth/(eta*vT))
inline double subthreshold_current(const DeviceParams& p, const Geometry& g,
                                   const BiasPoint& b) {
  if (!(g.w > 0.0) || !(g.l > 0.0)) throw DomainError("geometry must be positive");
  if (b.vds < 0.0) throw DomainError("vds must be >= 0 for the NMOS footer model");

  double shift = 1.0;
  if (p.dvth != 0.0) {
    if (p.eta <= 0.0)
      throw DomainError("dvth shift requires eta > 0 in exp(-dvth/(eta*v_t))");
    shift = detail::checked_exp(-p.dvth / (p.eta * p.v_t), "exp(-dvth/(eta*v_t))");
  }
  const double a =
      p.mu0_cox * (g.w / g.l) * p.v_t * p.v_t * std::exp(1.8) * shift;
  const double drive =
      (b.vg - b.vs - p.vth0 - p.gamma_prime * b.vs + p.eta * b.vds) / (p.m * p.v_t);
  const double i = a * detail::checked_exp(drive, "gate-drive exponent") *
                   (1.0 - std::exp(-b.vds / p.v_t));
  if (!std::isfinite(i))
    throw DomainError("subthreshold current is non-finite (prefactor overflow)");
  return i;
}

// Alpha-power-law propagation delay: d = CL*Vdd / (K * (Vdd - Vth)^alpha).
inline double gate_delay(double cl, double k, const DeviceParams& p, double vth) {
  if (cl < 0.0) throw DomainError("load capacitance must be >= 0");
  if (!(k > 0.0)) throw DomainError("drive factor must be > 0");
  if (!(vth < p.vdd)) throw DomainError("vth must be below vdd");
  return cl * p.vdd / (k * std::pow(p.vdd - vth, p.alpha));
}

// Delay of a gated logic stage whose virtual-ground rail sits at vst:
//   d' = d * ((Vdd - vth) / (Vdd - vst - vth))^alpha, d' >= d.
inline double gated_delay(double d, double vst, const DeviceParams& p, double vth) {
  if (vst < 0.0) throw DomainError("sleep transistor drop must be >= 0");
  if (!(vst + vth < p.vdd))
    throw DomainError("cluster starved: vst + vth >= vdd leaves no gate overdrive");
  return d * std::pow((p.vdd - vth) / (p.vdd - vst - vth), p.alpha);
}

// First-order delay degradation: delta_d = d * vst / (Vdd - vth).
inline double delay_degradation_linear(double d, double vst, const DeviceParams& p,
                                       double vth) {
  if (vst < 0.0) throw DomainError("sleep transistor drop must be >= 0");
  if (!(vst + vth < p.vdd))
    throw DomainError("cluster starved: vst + vth >= vdd leaves no gate overdrive");
  return d * vst / (p.vdd - vth);
}

namespace detail {

// 1/beta = mu0*Cox * (Vdd - vth - Vdd*alpha_drop); the linear-region
// channel-resistance factor evaluated at the allowed drop.
inline double resistive_beta(const DeviceParams& p, double alpha_drop, double vth) {
  const double overdrive = p.vdd - vth - p.vdd * alpha_drop;
  if (!(overdrive > 0.0))
    throw DomainError("degenerate beta: vth + vdd*alpha_drop must stay below vdd");
  return 1.0 / (p.mu0_cox * overdrive);
}

}  // namespace detail

// Minimum sleep-transistor width for a peak cluster current i_st and a drop
// budget of alpha_drop*Vdd:
//   R_ST = Vdd*alpha_drop / I_ST,  W/L = beta / R_ST,  W = (W/L) * l.
inline double size_sleep_transistor(double i_st, double alpha_drop,
                                    const DeviceParams& p, double vth, double l) {
  if (!(i_st > 0.0)) throw DomainError("peak current must be > 0");
  if (!(alpha_drop > 0.0 && alpha_drop < 1.0))
    throw DomainError("alpha_drop must lie in (0, 1)");
  if (!(l > 0.0)) throw DomainError("channel length must be > 0");
  const double r_st = p.vdd * alpha_drop / i_st;
  const double beta = detail::resistive_beta(p, alpha_drop, vth);
  return (beta / r_st) * l;
}

// Linear-region ON resistance of a sleep transistor: R_ON = beta / (W/L).
inline double on_resistance(const Geometry& g, const DeviceParams& p,
                            double alpha_drop, double vth) {
  if (!(g.w > 0.0) || !(g.l > 0.0)) throw DomainError("geometry must be positive");
  const double beta = detail::resistive_beta(p, alpha_drop, vth);
  return beta / (g.w / g.l);
}

// ---------------------------------------------------------------------------
// Device parameter file: one `key=value` per line, '#' comments, all nine
// keys required exactly once, unknown keys rejected.

inline const char* const kDeviceParamKeys[] = {
    "mu0_cox", "vth0", "dvth", "m", "gamma_prime", "eta", "v_t", "alpha", "vdd"};

inline DeviceParams parse_device_params(std::string_view text) {
  std::map<std::string, double, std::less<>> seen;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++lineno;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    if (toks.size() != 1)
      throw ParseError(lineno, "expected a single key=value entry");
    std::string_view key, val;
    if (!split_kv(toks[0], key, val))
      throw ParseError(lineno, "expected key=value, got '" + std::string(toks[0]) + "'");
    bool known = false;
    for (const char* k : kDeviceParamKeys) known = known || key == k;
    if (!known) throw ParseError(lineno, "unknown device parameter '" + std::string(key) + "'");
    if (seen.count(key))
      throw ParseError(lineno, "duplicate device parameter '" + std::string(key) + "'");
    seen.emplace(std::string(key), parse_double(val, lineno, std::string(key)));
  }
  for (const char* k : kDeviceParamKeys)
    if (!seen.count(std::string_view(k)))
      throw ParseError(0, std::string("missing device parameter '") + k + "'");

  DeviceParams p{seen["mu0_cox"], seen["vth0"], seen["dvth"],
                 seen["m"],       seen["gamma_prime"], seen["eta"],
                 seen["v_t"],     seen["alpha"], seen["vdd"]};
  validate_device_params(p);
  return p;
}

inline std::string write_device_params(const DeviceParams& p) {
  std::ostringstream os;
  os << "mu0_cox=" << format_double(p.mu0_cox) << '\n'
     << "vth0=" << format_double(p.vth0) << '\n'
     << "dvth=" << format_double(p.dvth) << '\n'
     << "m=" << format_double(p.m) << '\n'
     << "gamma_prime=" << format_double(p.gamma_prime) << '\n'
     << "eta=" << format_double(p.eta) << '\n'
     << "v_t=" << format_double(p.v_t) << '\n'
     << "alpha=" << format_double(p.alpha) << '\n'
     << "vdd=" << format_double(p.vdd) << '\n';
  return os.str();
}

// Calibrated 45 nm defaults. vth0/alpha are frozen from fit_delay_model run
// on the conventional-gating sizing data (see timing.hpp); dvth positions the
// sleep transistors' standby leakage; the rest are generic bulk-NMOS values.
inline DeviceParams default_device_params() {
  DeviceParams p;
  p.mu0_cox = 2.0e-4;
  p.vth0 = 0.1240667250797466;
  p.dvth = 0.01;
  p.m = 1.5;
  p.gamma_prime = 0.2;
  p.eta = 0.05;
  p.v_t = 0.0259;
  p.alpha = 1.0;
  p.vdd = 1.0;
  return p;
}

}  // namespace pglab
