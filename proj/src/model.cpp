#include "dcoul/model.hpp"

#include "dcoul/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <set>

namespace dcoul::model {

void PhysicalParams::validate() const {
  if (!std::isfinite(Z) || !std::isfinite(compton) || !std::isfinite(omega))
    throw InvalidParameterError("PhysicalParams: non-finite field");
  if (kappa == 0)
    throw InvalidParameterError("PhysicalParams: kappa must be nonzero");
  if (!(compton > 0.0))
    throw InvalidParameterError("PhysicalParams: compton must be > 0");
  if (!(omega > 0.0))
    throw InvalidParameterError("PhysicalParams: omega must be > 0");
  if (std::abs(compton * Z / kappa) >= 1.0)
    throw SupercriticalError(fmt::format(
        "|compton Z / kappa| = {} >= 1, gamma would be imaginary",
        std::abs(compton * Z / kappa)));
}

double DerivedParams::xi() const { return std::atan2(sin_xi, cos_xi); }

DerivedParams derive(const PhysicalParams &params) {
  params.validate();
  DerivedParams d;
  d.physical = params;
  const double k = params.kappa;
  const double t = params.compton * params.Z / k;
  d.gamma = k * std::sqrt((1.0 - t) * (1.0 + t));
  d.effective_gamma = params.kappa > 0 ? d.gamma : -d.gamma - 1.0;
  d.alpha = params.compton * params.compton * params.omega * params.Z;
  d.beta = 0.5 * params.compton * params.omega;
  d.ell = params.kappa > 0 ? params.kappa - 1 : -params.kappa;
  d.sin_xi = t;
  d.cos_xi = d.gamma / k;
  return d;
}

const char *to_string(Regime r) {
  switch (r) {
  case Regime::bound:
    return "bound";
  case Regime::scattering:
    return "scattering";
  case Regime::threshold:
    return "threshold";
  }
  return "?";
}

EnergyPoint EnergyPoint::at(double eps) {
  if (!std::isfinite(eps))
    throw InvalidParameterError("EnergyPoint: non-finite energy");
  EnergyPoint e;
  e.eps = eps;
  const double dist = std::abs(std::abs(eps) - 1.0);
  if (dist <= 2.0 * std::numeric_limits<double>::epsilon())
    e.regime = Regime::threshold;
  else
    e.regime = std::abs(eps) < 1.0 ? Regime::bound : Regime::scattering;
  return e;
}

namespace {

// eps^2 - 1 without cancellation near threshold.
double eps2_minus_one(double eps) { return (eps - 1.0) * (eps + 1.0); }

} // namespace

PollaczekPoint map_to_pollaczek(const DerivedParams &d, const EnergyPoint &e) {
  if (e.regime == Regime::threshold)
    throw ThresholdError(
        fmt::format("energy map undefined at threshold eps = {}", e.eps));
  const double q2 = eps2_minus_one(e.eps);
  const double b2 = d.beta * d.beta;
  const double den = q2 + b2;
  // relative cutoff plus the rounding of eps^2 itself
  const double eps_ulp = std::numeric_limits<double>::epsilon() * e.eps * e.eps;
  if (std::abs(den) <= 1e-14 * (std::abs(q2) + b2) + 4.0 * eps_ulp)
    throw SingularMapError(fmt::format(
        "eps^2 - 1 + beta^2 vanishes at eps = {} (beta = {})", e.eps, d.beta));
  PollaczekPoint out;
  out.params.lam = d.pollaczek_lambda();
  out.params.a = 0.0;
  out.params.b = -d.alpha * e.eps / den;
  out.x = (q2 - b2) / den;
  return out;
}

ThetaPhi theta_phi(const DerivedParams &d, const EnergyPoint &e) {
  if (e.regime == Regime::threshold)
    throw ThresholdError(
        fmt::format("theta/Phi undefined at threshold eps = {}", e.eps));
  const PollaczekPoint pp = map_to_pollaczek(d, e);
  const double beta = d.beta;
  ThetaPhi out;
  out.regime = e.regime;
  if (e.regime == Regime::scattering) {
    const double q = std::sqrt(eps2_minus_one(e.eps));
    const double theta = std::atan2(2.0 * q * beta, (q - beta) * (q + beta));
    out.theta = theta;
    out.exp_i_theta = std::polar(1.0, theta);
    out.Phi = pp.params.b * (q * q + beta * beta) / (2.0 * q * beta);
    return out;
  }
  const double s = std::sqrt((1.0 - e.eps) * (1.0 + e.eps));
  double exp_i_theta = 0.0;
  if (s > beta) {
    exp_i_theta = (s + beta) / (s - beta);
    out.branch = pollaczek::BoundBranch::upper;
  } else {
    exp_i_theta = (s - beta) / (s + beta);
    out.branch = pollaczek::BoundBranch::lower;
  }
  out.exp_i_theta = exp_i_theta;
  out.theta = complex(0.0, -1.0) * std::log(complex(exp_i_theta, 0.0));
  // sin theta = (E - 1/E) / (2i)
  const complex sin_theta =
      (exp_i_theta - 1.0 / exp_i_theta) / complex(0.0, 2.0);
  out.Phi = pp.params.b / sin_theta;
  return out;
}

RecursionCoefficients recursion_coefficients(const DerivedParams &d) {
  const double g = d.effective_gamma;
  if (!(g > -1.0))
    throw InvalidParameterError("recursion_coefficients: gamma must exceed -1");
  RecursionCoefficients c;
  c.diag_fn = [g](int n) { return n + g + 1.0; };
  c.offdiag_fn = [g](int n) {
    return 0.5 * std::sqrt((n + 1.0) * (n + 2.0 * g + 2.0));
  };
  c.label = "laguerre-basis";
  return c;
}

std::pair<double, double> spinor_rotation(double xi, double upper,
                                          double lower) {
  const double c = std::cos(0.5 * xi);
  const double s = std::sin(0.5 * xi);
  return {c * upper + s * lower, -s * upper + c * lower};
}

std::pair<double, double> inverse_spinor_rotation(double xi, double upper,
                                                  double lower) {
  return spinor_rotation(-xi, upper, lower);
}

NegativeEnergyImage negative_energy_map(const PhysicalParams &p,
                                        const EnergyPoint &e) {
  NegativeEnergyImage out;
  out.params = p;
  out.params.Z = -p.Z;
  out.params.kappa = -p.kappa;
  out.energy = EnergyPoint::at(-e.eps);
  out.swap_components = true;
  return out;
}

std::string to_config(const PhysicalParams &p) {
  return fmt::format("z = {}\nkappa = {}\ncompton = {}\nomega = {}\n", p.Z,
                     p.kappa, p.compton, p.omega);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T> T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto *end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(fmt::format("config: bad value '{}' for key '{}'", v, key));
  return out;
}

} // namespace

PhysicalParams from_config(std::string_view text) {
  PhysicalParams p;
  std::set<std::string, std::less<>> seen;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("config line {}: expected key = value",
                                    line_no));
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.emplace(key).second)
      throw ConfigError(fmt::format("config: duplicate key '{}'", key));
    if (key == "z")
      p.Z = parse_number<double>(key, value);
    else if (key == "kappa")
      p.kappa = parse_number<int>(key, value);
    else if (key == "compton")
      p.compton = parse_number<double>(key, value);
    else if (key == "omega")
      p.omega = parse_number<double>(key, value);
    else
      throw ConfigError(fmt::format("config: unknown key '{}'", key));
  }
  return p;
}

} // namespace dcoul::model
