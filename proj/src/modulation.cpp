#include "wavemod/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wavemod/error.hpp"

namespace wavemod {

namespace {

double sinc_t(double om, double h) {  // sin(om h)/om
  double x = om * h;
  if (std::abs(x) < 1e-8) return h * (1.0 - x * x / 6.0);
  return std::sin(x) / om;
}

bool finite(const SpectralField& f) {
  for (const auto& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField zero_like(const SpectralField& f, bool real) { return SpectralField(f.grid(), real); }

}  // namespace

SpectralField step_transport_exact(const SpectralField& u, double dt, const Vec2& v) {
  SpectralField out = u;
  const Grid& g = u.grid();
  auto& c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    double om = dot(v, g.wavenumber(i));
    c[i] *= std::polar(1.0, -om * dt);
  }
  // the Nyquist phase is not conjugate-symmetric; keep it only for complex fields
  if (u.is_real())
    for (std::size_t i = 0; i < c.size(); ++i)
      if (g.is_nyquist(i)) c[i] = u.coeffs()[i] * std::cos(dot(v, g.wavenumber(i)) * dt);
  return out;
}

WavePair step_wave(const WavePair& w, double h, const PhysicalParams& p, const SpectralField& s0,
                   const SpectralField& sh, const SpectralField& s1) {
  const Grid& g = w.u.grid();
  const double c = std::sqrt(p.sqrt_mu());  // mu^(1/4)
  WavePair out{zero_like(w.u, w.u.is_real()), zero_like(w.u_t, w.u_t.is_real())};
  auto& u = out.u.coeffs();
  auto& ut = out.u_t.coeffs();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double om = c * std::sqrt(norm2(g.wavenumber(i)));
    double co = std::cos(om * h), si = sinc_t(om, h);
    double coh = std::cos(om * h / 2.0), sih = sinc_t(om, h / 2.0);
    cplx u0 = w.u.coeffs()[i], v0 = w.u_t.coeffs()[i];
    // Simpson on int_0^h K(h-s) S(s) ds with K = sin(om .)/om and cos(om .)
    cplx du = h / 6.0 * (si * s0.coeffs()[i] + 4.0 * sih * sh.coeffs()[i]);
    cplx dv = h / 6.0 * (co * s0.coeffs()[i] + 4.0 * coh * sh.coeffs()[i] + s1.coeffs()[i]);
    u[i] = co * u0 + si * v0 + du;
    ut[i] = -om * om * si * u0 + co * v0 + dv;
  }
  return out;
}

WavePair step_wave(const WavePair& w, double dt, const PhysicalParams& p,
                   const FieldProvider& source, double t0) {
  return step_wave(w, dt, p, source(t0), source(t0 + dt / 2.0), source(t0 + dt));
}

SpectralField step_transport_forced(const SpectralField& u, double h, const Vec2& v,
                                    const SpectralField& e0, const SpectralField& eh,
                                    const SpectralField& e1) {
  SpectralField out = step_transport_exact(u, h, v);
  const Grid& g = u.grid();
  auto& c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    double om = dot(v, g.wavenumber(i));
    c[i] += h / 6.0 *
            (std::polar(1.0, -om * h) * e0.coeffs()[i] + 4.0 * std::polar(1.0, -om * h / 2.0) * eh.coeffs()[i] +
             e1.coeffs()[i]);
  }
  return out;
}

SpectralField step_transport_forced(const SpectralField& u, double dt, const Vec2& v,
                                    const FieldProvider& forcing, double t0) {
  return step_transport_forced(u, dt, v, forcing(t0), forcing(t0 + dt / 2.0), forcing(t0 + dt));
}

double wave_energy(const WavePair& w, const PhysicalParams& p) {
  const Grid& g = w.u.grid();
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    e += std::norm(w.u_t.coeffs()[i]) + p.sqrt_mu() * norm2(g.wavenumber(i)) * std::norm(w.u.coeffs()[i]);
  return e * g.measure();
}

// ---------------------------------------------------------------- solver

ModulationSolver::ModulationSolver(WaveTriple triple, MacroState initial, CoeffOptions opt)
    : triple_(std::move(triple)), plan_(HarmonicPlan::build(triple_)), init_(std::move(initial)),
      opt_(opt) {
  const Grid& g = init_.psi0[0].grid();
  for (int j = 0; j < 3; ++j) {
    if (init_.psi0[j].empty() || init_.psi0[j].grid() != g)
      throw DependencyError("initial psi0j missing or on a different grid");
    if (init_.psi1[j].empty()) init_.psi1[j] = SpectralField(g, false);
  }
  if (init_.psi00.empty()) init_.psi00 = SpectralField(g, true);
  if (init_.psi00_t.empty()) init_.psi00_t = SpectralField(g, true);
}

std::array<SpectralField, 3> ModulationSolver::psi0_at(double t) const {
  std::array<SpectralField, 3> out;
  for (int j = 0; j < 3; ++j)
    out[j] = step_transport_exact(init_.psi0[j], t - init_.t, triple_.wave(j).group_velocity);
  return out;
}

SpectralField ModulationSolver::wave_source(double t) const {
  auto psi0 = psi0_at(t);
  auto dpsi0 = transport_derivative(psi0, triple_);
  SpectralField s(psi0[0].grid(), true);
  for (int j = 0; j < 3; ++j) {
    const auto& w = triple_.wave(j);
    SpectralField q = multiply(conj(psi0[j]), dpsi0[j]);
    SpectralField dt_abs = q + conj(q);
    SpectralField abs2 = multiply(conj(psi0[j]), psi0[j]);
    s += (w.g * w.g - norm2(w.xi)) * dt_abs;
    s += (2.0 * w.omega / w.b) * directional_derivative(w.xi, abs2);
  }
  s.enforce_reality();
  return s;
}

std::array<SpectralField, 3> ModulationSolver::forcing_at(double t, const SpectralField& psi00,
                                                          const SpectralField& psi00_t) const {
  MacroFields m;
  m.psi0 = psi0_at(t);
  for (int j = 0; j < 3; ++j) m.psi1[j] = SpectralField(m.psi0[0].grid(), false);
  m.psi00 = psi00;
  m.psi00_t = psi00_t;
  Expansion ex = expand(triple_, m, plan_, Stage::Forcing, opt_);
  return ex.forcing->E;
}

MacroState ModulationSolver::step_cached(const MacroState& s, double h,
                                         std::array<SpectralField, 3>& e0) const {
  const PhysicalParams& p = triple_.params();
  if (e0[0].empty()) e0 = forcing_at(s.t, s.psi00, s.psi00_t);
  WavePair w{s.psi00, s.psi00_t};
  SpectralField s0 = wave_source(s.t), s1 = wave_source(s.t + h / 4.0), s2 = wave_source(s.t + h / 2.0),
                s3 = wave_source(s.t + 3.0 * h / 4.0), s4 = wave_source(s.t + h);
  WavePair wh = step_wave(w, h / 2.0, p, s0, s1, s2);
  WavePair w1 = step_wave(wh, h / 2.0, p, s2, s3, s4);
  auto eh = forcing_at(s.t + h / 2.0, wh.u, wh.u_t);
  auto e1 = forcing_at(s.t + h, w1.u, w1.u_t);

  MacroState out;
  out.t = s.t + h;
  out.psi0 = psi0_at(out.t);
  out.psi00 = w1.u;
  out.psi00_t = w1.u_t;
  out.psi00.enforce_reality();
  out.psi00_t.enforce_reality();
  for (int j = 0; j < 3; ++j)
    out.psi1[j] = step_transport_forced(s.psi1[j], h, triple_.wave(j).group_velocity, e0[j], eh[j], e1[j]);
  e0 = e1;

  bool ok = finite(out.psi00) && finite(out.psi00_t);
  for (int j = 0; j < 3; ++j) ok = ok && finite(out.psi1[j]);
  if (!ok) {
    std::ostringstream os;
    os << "non-finite macroscopic state at t' = " << out.t;
    throw NumericalAbort(os.str(), out.t);
  }
  return out;
}

MacroState ModulationSolver::step(const MacroState& s, double dt) const {
  std::array<SpectralField, 3> e0;
  return step_cached(s, dt, e0);
}

MacroState ModulationSolver::advance(const MacroState& s, double T, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("macroscopic time step must be positive");
  MacroState cur = s;
  std::array<SpectralField, 3> e0;
  double span = T - s.t;
  if (span <= 0.0) return cur;
  long steps = std::max(1L, long(std::ceil(span / dt - 1e-9)));
  double h = span / double(steps);
  for (long k = 0; k < steps; ++k) cur = step_cached(cur, h, e0);
  cur.t = T;
  return cur;
}

std::vector<MacroState> ModulationSolver::integrate(double T0, double dt,
                                                    const std::vector<double>& samples) const {
  if (!(dt > 0.0)) throw std::invalid_argument("macroscopic time step must be positive");
  std::vector<double> ts = samples;
  std::sort(ts.begin(), ts.end());
  std::vector<MacroState> out;
  MacroState cur = init_;
  std::array<SpectralField, 3> e0;
  for (double ts_k : ts) {
    if (ts_k < init_.t - 1e-12 || ts_k > T0 + 1e-12)
      throw std::invalid_argument("sample time outside [0, T0]");
    double span = ts_k - cur.t;
    if (span > 1e-14) {
      long steps = std::max(1L, long(std::ceil(span / dt - 1e-9)));
      double h = span / double(steps);
      for (long k = 0; k < steps; ++k) cur = step_cached(cur, h, e0);
    }
    cur.t = ts_k;
    out.push_back(cur);
  }
  return out;
}

MacroFields ModulationSolver::fields(const MacroState& s) const {
  MacroFields m;
  m.psi0 = s.psi0[0].empty() ? psi0_at(s.t) : s.psi0;
  m.psi00 = s.psi00;
  m.psi00_t = s.psi00_t;
  m.psi1 = s.psi1;
  return m;
}

Expansion ModulationSolver::expansion(const MacroState& s, Stage stage) const {
  return expand(triple_, fields(s), plan_, stage, opt_);
}

// ---------------------------------------------------------------- envelopes

SpectralField make_envelope(const Grid& macro, const EnvelopeSpec& e) {
  if (e.family == "zero") return SpectralField(macro, false);
  if (e.family == "mode") {
    if (!macro.resolves({e.mode[0], e.mode[1]})) throw std::invalid_argument("envelope mode not resolved");
    return SpectralField::mode_field(macro, {e.mode[0], e.mode[1]}, e.amplitude);
  }
  if (e.family == "bump") {
    if (!(e.width > 0.0)) throw std::invalid_argument("bump width must be positive");
    auto f = [&](const Vec2& x) {
      double s = 1.0 - std::cos(x[0] - e.center);
      if (macro.dim() == 2) s += 1.0 - std::cos(x[1] - e.center);
      return cplx(e.amplitude * std::exp(-s / (e.width * e.width)), 0.0);
    };
    SpectralField u = SpectralField::from_function(macro, f, false);
    return dealias(u, 0.5);
  }
  if (e.family == "random") {
    std::mt19937_64 rng(e.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    SpectralField u(macro, false);
    const int band = std::max(1, e.mode[0]);
    for (std::size_t i = 0; i < macro.size(); ++i) {
      Mode m = macro.mode(i);
      int r = std::max(std::abs(m[0]), std::abs(m[1]));
      double a = e.amplitude * std::exp(-double(r * r) / double(band * band));
      double re = nd(rng), im = nd(rng);
      if (r <= band) u.coeffs()[i] = a * cplx(re, im);
    }
    return dealias(u, 0.5);
  }
  throw std::invalid_argument("unknown envelope family '" + e.family + "'");
}

MacroState initial_state(const Grid& macro, const std::array<EnvelopeSpec, 3>& env) {
  MacroState s;
  for (int j = 0; j < 3; ++j) {
    s.psi0[j] = make_envelope(macro, env[j]);
    s.psi1[j] = SpectralField(macro, false);
  }
  s.psi00 = SpectralField(macro, true);
  s.psi00_t = SpectralField(macro, true);
  return s;
}

}  // namespace wavemod
