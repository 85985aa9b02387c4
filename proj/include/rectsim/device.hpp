#pragma once

// MOSFET evaluation: square law with body effect, THETA mobility degradation,
// linear overlap capacitances and first-order temperature scaling.
//
// Card parameters read here: VTO, GAMMA, PHI, KP, UO, TOX, THETA, LD, CGDO,
// CGSO, CGBO. Everything else on a LEVEL=3 card (NSUB, DELTA, ETA, VMAX, KAPPA,
// RSH, NFS, TPG, XJ, WD, CJ, PB, MJ, CJSW, MJSW) is parsed and kept on the
// ModelCard but has no effect on the evaluated device.

#include <cmath>
#include <stdexcept>
#include <string>

#include "rectsim/netlist.hpp"

namespace rectsim {

/// Permittivity of SiO2 in F/m.
inline constexpr double kEpsOx = 3.45313e-11;
inline constexpr double kTnomCelsius = 27.0;
inline constexpr double kKelvinOffset = 273.15;
/// Threshold drift magnitude per degree Celsius.
inline constexpr double kVthTempCoeff = 2.0e-3;
inline constexpr double kMobilityTempExp = -1.5;

class DeviceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MosfetParams {
  Polarity polarity = Polarity::Nmos;
  double vth0 = 0.0;    // signed as on the card (negative for PMOS)
  double gamma = 0.0;   // V^0.5
  double phi = 0.6;     // V
  double kp_eff = 0.0;  // A/V^2
  double theta = 0.0;   // 1/V
  double w = 0.0;       // m
  double leff = 0.0;    // m
  double cgdo_f = 0.0;  // F
  double cgso_f = 0.0;
  double cgbo_f = 0.0;
  double temp = kTnomCelsius;  // Celsius
};

enum class Region { Cutoff, Triode, Saturation };

struct DeviceEval {
  double id = 0.0;    // drain to source, A
  double gm = 0.0;    // d id / d vgs
  double gds = 0.0;   // d id / d vds
  double gmbs = 0.0;  // d id / d vbs
  Region region = Region::Cutoff;
};

struct OverlapCaps {
  double cgd = 0.0;
  double cgs = 0.0;
  double cgb = 0.0;
};

inline MosfetParams derive_params(const ModelCard& card, double w, double l, double temp) {
  if (!(temp >= -50.0 && temp <= 150.0)) {
    throw DeviceError("temperature " + std::to_string(temp) + " C outside [-50, 150]");
  }
  if (!(w >= 0.0) || !(l > 0.0)) throw DeviceError("model " + card.name + ": W must be >= 0 and L > 0");
  auto vto = card.get("VTO");
  if (!vto) throw DeviceError("model " + card.name + " is missing VTO");

  MosfetParams p;
  p.polarity = card.polarity;
  p.temp = temp;
  p.w = w;
  p.gamma = card.get("GAMMA").value_or(0.0);
  p.phi = card.get("PHI").value_or(0.6);
  p.theta = card.get("THETA").value_or(0.0);
  const double ld = card.get("LD").value_or(0.0);
  p.leff = l - 2.0 * ld;
  if (!(p.leff > 0.0)) throw DeviceError("model " + card.name + ": effective length L - 2*LD is not positive");
  if (!(p.phi > 0.0)) throw DeviceError("model " + card.name + ": PHI must be positive");

  double kp = 0.0;
  if (auto k = card.get("KP")) {
    kp = *k;
  } else {
    auto uo = card.get("UO");
    auto tox = card.get("TOX");
    if (!uo || !tox) throw DeviceError("model " + card.name + " needs KP, or UO together with TOX");
    // UO is in cm^2/(V s).
    kp = *uo * 1e-4 * kEpsOx / *tox;
  }
  const double t_ratio = (temp + kKelvinOffset) / (kTnomCelsius + kKelvinOffset);
  p.kp_eff = kp * std::pow(t_ratio, kMobilityTempExp);
  if (!(p.kp_eff > 0.0)) throw DeviceError("model " + card.name + ": transconductance must be positive");

  const double drift = kVthTempCoeff * (temp - kTnomCelsius);
  p.vth0 = card.polarity == Polarity::Nmos ? *vto - drift : *vto + drift;

  if (w > 0.0) {
    p.cgdo_f = card.get("CGDO").value_or(0.0) * w;
    p.cgso_f = card.get("CGSO").value_or(0.0) * w;
    p.cgbo_f = card.get("CGBO").value_or(0.0) * p.leff;
  }
  return p;
}

inline OverlapCaps overlap_caps(const MosfetParams& p) { return {p.cgdo_f, p.cgso_f, p.cgbo_f}; }

namespace detail {

// Forward-mode n-channel equations with vds >= 0.
inline DeviceEval eval_forward(const MosfetParams& p, double vth_n, double vgs, double vds, double vbs) {
  DeviceEval r;
  const double vbs_max = p.phi - 1e-6;
  const bool clamped = vbs > vbs_max;
  const double sq = std::sqrt(p.phi - (clamped ? vbs_max : vbs));
  const double vth = vth_n + p.gamma * (sq - std::sqrt(p.phi));
  const double dvth_dvbs = clamped ? 0.0 : -p.gamma / (2.0 * sq);

  const double vov = vgs - vth;
  if (vov <= 0.0) return r;

  const double beta = p.kp_eff * p.w / p.leff;
  const double u = 1.0 / (1.0 + p.theta * vov);
  const double du = -p.theta * u * u;

  double did_dvov = 0.0;
  if (vds < vov) {
    const double f = vov * vds - 0.5 * vds * vds;
    r.id = beta * u * f;
    did_dvov = beta * (u * vds + du * f);
    r.gds = beta * u * (vov - vds);
    r.region = Region::Triode;
  } else {
    const double f = 0.5 * vov * vov;
    r.id = beta * u * f;
    did_dvov = beta * (u * vov + du * f);
    r.gds = 0.0;
    r.region = Region::Saturation;
  }
  r.gm = did_dvov;
  r.gmbs = -did_dvov * dvth_dvbs;
  return r;
}

}  // namespace detail

/// Drain current and small-signal partials at a bias point. Voltages are
/// terminal voltages relative to the source, as seen by the device (PMOS
/// biases are passed unmodified).
inline DeviceEval eval_mosfet(const MosfetParams& p, double vgs, double vds, double vbs) {
  if (!std::isfinite(vgs) || !std::isfinite(vds) || !std::isfinite(vbs)) {
    throw DeviceError("non-finite terminal voltage");
  }
  const double sign = p.polarity == Polarity::Nmos ? 1.0 : -1.0;
  const double vth_n = sign * p.vth0;
  vgs *= sign;
  vds *= sign;
  vbs *= sign;

  DeviceEval r;
  if (vds >= 0.0) {
    r = detail::eval_forward(p, vth_n, vgs, vds, vbs);
  } else {
    // Drain and source exchange roles: id(vgs,vds,vbs) = -f(vgs-vds, -vds, vbs-vds).
    DeviceEval f = detail::eval_forward(p, vth_n, vgs - vds, -vds, vbs - vds);
    r.region = f.region;
    r.id = -f.id;
    r.gm = -f.gm;
    r.gmbs = -f.gmbs;
    r.gds = f.gm + f.gds + f.gmbs;
  }
  // The p-channel mapping negates both the current and the voltages, so the
  // partials carry over unchanged.
  r.id *= sign;
  return r;
}

}  // namespace rectsim
