#include "tunnelshift/potential.hpp"

#include <cmath>
#include <limits>
#include <regex>

#include "tunnelshift/expr.hpp"

namespace tunnelshift {

namespace {

constexpr double kCurvatureStep = 1e-3;

double second_difference(const RealFunction& v, double step) {
  return (v(step) - 2.0 * v(0.0) + v(-step)) / (step * step);
}

// Central second difference with two Richardson levels (h, h/2, h/4).
double richardson_second_derivative(const RealFunction& v) {
  const double d0 = second_difference(v, kCurvatureStep);
  const double d1 = second_difference(v, kCurvatureStep / 2);
  const double d2 = second_difference(v, kCurvatureStep / 4);
  const double r1a = (4.0 * d1 - d0) / 3.0;
  const double r1b = (4.0 * d2 - d1) / 3.0;
  return (16.0 * r1b - r1a) / 15.0;
}

double raw_second_derivative_at_zero(const PotentialSpec& p) {
  if (p.derivative2) return p.derivative2(0.0);
  return richardson_second_derivative(p.evaluate);
}

double safe_call(const RealFunction& f, double x) {
  try {
    return f(x);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

double PotentialSpec::d1(double x) const {
  if (derivative1) return derivative1(x);
  const double step = 1e-5 * (1.0 + std::fabs(x));
  return (evaluate(x + step) - evaluate(x - step)) / (2.0 * step);
}

double PotentialSpec::d2(double x) const {
  if (derivative2) return derivative2(x);
  const double step = 1e-4 * (1.0 + std::fabs(x));
  return (evaluate(x + step) - 2.0 * evaluate(x) + evaluate(x - step)) / (step * step);
}

ConfinementDomain ConfinementDomain::line(double lower, double upper) { return {lower, upper, false}; }

ConfinementDomain ConfinementDomain::box(double length) { return {0.0, length, true}; }

bool ConfinementDomain::well_formed() const {
  if (!std::isfinite(lower) || !std::isfinite(upper)) return false;
  return radial ? (lower == 0.0 && upper > 0.0) : (lower < 0.0 && upper > 0.0);
}

PotentialSpec make_potential(PotentialKind kind, std::string description, RealFunction value,
                             RealFunction d1, RealFunction d2,
                             std::function<std::vector<double>(int)> taylor) {
  PotentialSpec p;
  p.kind = kind;
  p.description = std::move(description);
  p.evaluate = std::move(value);
  p.derivative1 = std::move(d1);
  p.derivative2 = std::move(d2);
  p.taylor = std::move(taylor);
  double curvature = std::numeric_limits<double>::quiet_NaN();
  try {
    curvature = raw_second_derivative_at_zero(p);
  } catch (const std::exception&) {
  }
  p.omega = (std::isfinite(curvature) && curvature > 0.0) ? std::sqrt(curvature / 2.0)
                                                          : std::numeric_limits<double>::quiet_NaN();
  return p;
}

PotentialSpec harmonic_potential(PotentialKind kind, double stiffness) {
  auto p = make_potential(
      kind, stiffness == 1.0 ? "harmonic" : "harmonic(" + std::to_string(stiffness) + ")",
      [k = stiffness](double x) { return k * x * x; }, [k = stiffness](double x) { return 2.0 * k * x; },
      [k = stiffness](double) { return 2.0 * k; },
      [k = stiffness](int order) {
        std::vector<double> c(order + 1, 0.0);
        if (order >= 2) c[2] = k;
        return c;
      });
  p.harmonic_stiffness = stiffness;
  return p;
}

PotentialSpec quartic_potential(double c, PotentialKind kind) {
  return make_potential(
      kind, "quartic(" + std::to_string(c) + ")", [c](double x) { return x * x + c * x * x * x * x; },
      [c](double x) { return 2.0 * x + 4.0 * c * x * x * x; }, [c](double x) { return 2.0 + 12.0 * c * x * x; },
      [c](int order) {
        std::vector<double> t(order + 1, 0.0);
        if (order >= 2) t[2] = 1.0;
        if (order >= 4) t[4] = c;
        return t;
      });
}

PotentialSpec expression_potential(const std::string& text, PotentialKind kind) {
  const expr::Expr ast = expr::parse(text);
  const expr::Expr d1 = expr::differentiate(ast);
  const expr::Expr d2 = expr::differentiate(d1);
  return make_potential(
      kind, text, [ast](double x) { return expr::evaluate(ast, x); },
      [d1](double x) { return expr::evaluate(d1, x); }, [d2](double x) { return expr::evaluate(d2, x); },
      [ast](int order) { return expr::taylor_at_zero(ast, order); });
}

PotentialSpec potential_from_text(const std::string& text, PotentialKind kind) {
  static const std::regex kHarmonic(R"(\s*harmonic\s*(\(\s*([^)]+)\s*\))?\s*)");
  static const std::regex kQuartic(R"(\s*quartic\s*\(\s*([^)]+)\s*\)\s*)");
  std::smatch m;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size() || !std::isfinite(v)) throw ValidationError("bad numeric parameter '" + s + "'");
    return v;
  };
  if (std::regex_match(text, m, kHarmonic))
    return harmonic_potential(kind, m[2].matched ? number(m[2].str()) : 1.0);
  if (std::regex_match(text, m, kQuartic)) return quartic_potential(number(m[1].str()), kind);
  return expression_potential(text, kind);
}

ValidationReport validate_potential(const PotentialSpec& p, const ConfinementDomain& domain, int samples) {
  if (samples < 16) throw ValidationError("validate_potential needs at least 16 samples");
  if (!domain.well_formed()) throw ValidationError("malformed confinement domain");

  ValidationReport report;
  const bool radial = p.kind == PotentialKind::radial;
  const int origin_id = radial ? 7 : 2;
  auto add = [&](int id, std::string check, double x, double observed) {
    report.violations.push_back({id, std::move(check), x, observed});
  };

  const double v0 = safe_call(p.evaluate, 0.0);
  if (!std::isfinite(v0))
    add(1, "V finite", 0.0, v0);
  else if (std::fabs(v0) > 1e-10)
    add(origin_id, "V(0) = 0", 0.0, v0);

  double dv0 = std::numeric_limits<double>::quiet_NaN();
  try {
    dv0 = p.d1(0.0);
  } catch (const std::exception&) {
  }
  if (!std::isfinite(dv0))
    add(1, "V'(0) finite", 0.0, dv0);
  else if (std::fabs(dv0) > 1e-10)
    add(origin_id, "V'(0) = 0", 0.0, dv0);

  double curvature = std::numeric_limits<double>::quiet_NaN();
  try {
    curvature = raw_second_derivative_at_zero(p);
  } catch (const std::exception&) {
  }
  if (!(curvature > 0.0)) add(origin_id, "V''(0) > 0", 0.0, curvature);

  const double lo = radial ? 0.0 : 1.5 * domain.lower;
  const double hi = 1.5 * domain.upper;
  for (int i = 0; i < samples; ++i) {
    const double x = radial ? hi * double(i + 1) / double(samples) : lo + (hi - lo) * double(i) / double(samples - 1);
    if (std::fabs(x) < 1e-14 * (hi - lo)) continue;
    const double v = safe_call(p.evaluate, x);
    if (!std::isfinite(v))
      add(1, "V finite", x, v);
    else if (!(v > 0.0))
      add(origin_id, "V(x) > 0 for x != 0", x, v);
  }

  if (radial) {
    for (int i = 1; i <= 16; ++i) {
      const double x = hi * double(i) / 16.0;
      const double a = safe_call(p.evaluate, x);
      const double b = safe_call(p.evaluate, -x);
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      if (std::fabs(a - b) > 1e-9 * (1.0 + std::fabs(a))) add(9, "W even (odd derivatives vanish at 0)", x, a - b);
    }
  }

  report.passed = report.violations.empty();
  return report;
}

double curvature_at_minimum(const PotentialSpec& p) {
  const double c = raw_second_derivative_at_zero(p);
  if (!std::isfinite(c) || c <= 0.0) throw ValidationError("degenerate minimum: V''(0) = " + std::to_string(c));
  return std::sqrt(c / 2.0);
}

NormalizedProblem normalize_to_unit_curvature(const PotentialSpec& p, const ConfinementDomain& domain, double h) {
  if (!(p.omega > 0.0)) throw ValidationError("degenerate minimum: cannot normalize curvature");
  if (!(h > 0.0)) throw ValidationError("semiclassical parameter must be positive");
  const double w = p.omega;
  if (w == 1.0) return {p, domain, h};

  PotentialSpec q = p;
  q.description = p.description + " [unit curvature]";
  q.evaluate = [v = p.evaluate, w](double x) { return v(x / w); };
  if (p.derivative1) q.derivative1 = [d = p.derivative1, w](double x) { return d(x / w) / w; };
  if (p.derivative2) q.derivative2 = [d = p.derivative2, w](double x) { return d(x / w) / (w * w); };
  if (p.taylor)
    q.taylor = [t = p.taylor, w](int order) {
      auto c = t(order);
      double s = 1.0;
      for (double& ck : c) ck /= s, s *= w;
      return c;
    };
  if (p.harmonic_stiffness) q.harmonic_stiffness = *p.harmonic_stiffness / (w * w);
  q.omega = 1.0;

  ConfinementDomain d = domain;
  d.lower *= w;
  d.upper *= w;
  return {q, d, w * h};
}

}  // namespace tunnelshift
