#include "offmoo/problems.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace offmoo {
namespace {

constexpr Real kPi = 3.14159265358979323846;

void check_in_bounds(const Problem& p, const DecisionVector& x) {
  if (x.size() != p.dim) {
    throw std::invalid_argument("evaluate_true(" + p.name +
                                "): decision vector has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(p.dim));
  }
  for (int i = 0; i < p.dim; ++i) {
    if (!(x[i] >= p.lower[i] && x[i] <= p.upper[i])) {
      throw std::invalid_argument("evaluate_true(" + p.name + "): x[" +
                                  std::to_string(i) + "] out of bounds");
    }
  }
}

Evaluation make_eval(Real f1, Real f2, Vec violations = Vec{}) {
  Evaluation e;
  e.objectives = Vec(2);
  e.objectives << f1, f2;
  e.constraint_violations = std::move(violations);
  return e;
}

// ---- DTLZ suite, 2-objective reduction with D = 10 and k = D - K + 1 = 9
// distance variables x_2..x_10.

Real dtlz_g_rastrigin(const Vec& x) {
  const int k = static_cast<int>(x.size()) - 1;
  Real s = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const Real d = x[i] - 0.5;
    s += d * d - std::cos(20.0 * kPi * d);
  }
  return 100.0 * (static_cast<Real>(k) + s);
}

Real dtlz_g_sphere(const Vec& x) {
  Real s = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const Real d = x[i] - 0.5;
    s += d * d;
  }
  return s;
}

Evaluation dtlz1_eval(const Vec& x) {
  const Real g = dtlz_g_rastrigin(x);
  return make_eval(0.5 * x[0] * (1.0 + g), 0.5 * (1.0 - x[0]) * (1.0 + g));
}

Evaluation dtlz2_shape(Real angle_var, Real g) {
  const Real theta = 0.5 * kPi * angle_var;
  return make_eval((1.0 + g) * std::cos(theta), (1.0 + g) * std::sin(theta));
}

Evaluation dtlz2_eval(const Vec& x) { return dtlz2_shape(x[0], dtlz_g_sphere(x)); }

Evaluation dtlz3_eval(const Vec& x) {
  return dtlz2_shape(x[0], dtlz_g_rastrigin(x));
}

Evaluation dtlz4_eval(const Vec& x) {
  // Position variable raised to alpha = 100, the value fixed by the
  // standard DTLZ4 definition.
  return dtlz2_shape(std::pow(x[0], 100.0), dtlz_g_sphere(x));
}

// With two objectives DTLZ5 has no bent angle variables left, so it
// coincides with DTLZ2; DTLZ6 differs only in g.
Evaluation dtlz5_eval(const Vec& x) { return dtlz2_eval(x); }

Evaluation dtlz6_eval(const Vec& x) {
  Real g = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) g += std::pow(x[i], 0.1);
  return dtlz2_shape(x[0], g);
}

Evaluation dtlz7_eval(const Vec& x) {
  const int k = static_cast<int>(x.size()) - 1;
  Real s = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) s += x[i];
  const Real g = 1.0 + 9.0 * s / static_cast<Real>(k);
  const Real f1 = x[0];
  const Real h = 2.0 - f1 / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * f1));
  return make_eval(f1, (1.0 + g) * h);
}

// ---- Kursawe, D = 3 on [-5, 5]^3.

Evaluation kursawe_eval(const Vec& x) {
  Real f1 = 0;
  for (int i = 0; i < 2; ++i) {
    f1 += -10.0 * std::exp(-0.2 * std::sqrt(x[i] * x[i] + x[i + 1] * x[i + 1]));
  }
  Real f2 = 0;
  for (int i = 0; i < 3; ++i) {
    f2 += std::pow(std::abs(x[i]), 0.8) + 5.0 * std::sin(x[i] * x[i] * x[i]);
  }
  return make_eval(f1, f2);
}

// ---- BNH (Binh and Korn), D = 2, two constraints.

Vec bnh_violations(const Vec& x) {
  Vec v(2);
  v[0] = std::max(0.0, (x[0] - 5.0) * (x[0] - 5.0) + x[1] * x[1] - 25.0);
  v[1] = std::max(0.0, 7.7 - ((x[0] - 8.0) * (x[0] - 8.0) +
                              (x[1] + 3.0) * (x[1] + 3.0)));
  return v;
}

Evaluation bnh_eval(const Vec& x) {
  return make_eval(4.0 * x[0] * x[0] + 4.0 * x[1] * x[1],
                   (x[0] - 5.0) * (x[0] - 5.0) + (x[1] - 5.0) * (x[1] - 5.0),
                   bnh_violations(x));
}

// ---- Welded beam, bi-objective form: minimize fabrication cost and end
// deflection of a welded cantilever, subject to shear stress, normal
// stress, geometry, and buckling constraints. Variables are weld height h,
// weld length l, beam thickness t, beam breadth b.

Vec welded_beam_violations(const Vec& x) {
  const Real h = x[0], l = x[1], t = x[2], b = x[3];
  const Real q = 0.25 * (l * l + (h + t) * (h + t));
  const Real tau1 = 6000.0 / (std::sqrt(2.0) * h * l);
  const Real tau2 = 6000.0 * (14.0 + 0.5 * l) * std::sqrt(q) /
                    (2.0 * (0.707 * h * l * (l * l / 12.0 + q)));
  const Real tau =
      std::sqrt(tau1 * tau1 + tau2 * tau2 + l * tau1 * tau2 / std::sqrt(q));
  const Real sigma = 504000.0 / (t * t * b);
  const Real p_c = 64746.022 * (1.0 - 0.0282346 * t) * t * b * b * b;
  Vec v(4);
  v[0] = std::max(0.0, tau - 13600.0);
  v[1] = std::max(0.0, sigma - 30000.0);
  v[2] = std::max(0.0, h - b);
  v[3] = std::max(0.0, 6000.0 - p_c);
  return v;
}

Evaluation welded_beam_eval(const Vec& x) {
  const Real h = x[0], l = x[1], t = x[2], b = x[3];
  return make_eval(1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l),
                   2.1952 / (t * t * t * b), welded_beam_violations(x));
}

// ---- Two-bar truss, bi-objective form: minimize structural volume and
// the larger member stress, with the stress capped at 1e5. Variables are
// the two cross-section areas and the vertical joint position y.

Vec truss2d_violations(const Vec& x) {
  const Real a1 = x[0], a2 = x[1], y = x[2];
  const Real s_ac = 20.0 * std::sqrt(16.0 + y * y) / (y * a1);
  const Real s_bc = 80.0 * std::sqrt(1.0 + y * y) / (y * a2);
  Vec v(1);
  v[0] = std::max(0.0, std::max(s_ac, s_bc) - 1e5);
  return v;
}

Evaluation truss2d_eval(const Vec& x) {
  const Real a1 = x[0], a2 = x[1], y = x[2];
  const Real s_ac = 20.0 * std::sqrt(16.0 + y * y) / (y * a1);
  const Real s_bc = 80.0 * std::sqrt(1.0 + y * y) / (y * a2);
  return make_eval(a1 * std::sqrt(16.0 + y * y) + a2 * std::sqrt(1.0 + y * y),
                   std::max(s_ac, s_bc), truss2d_violations(x));
}

Problem make_problem(std::string name, Vec lower, Vec upper, int n_constraints,
                     Evaluation (*eval)(const Vec&),
                     Vec (*violations)(const Vec&)) {
  Problem p;
  p.name = std::move(name);
  p.dim = static_cast<int>(lower.size());
  p.n_objectives = 2;
  p.n_constraints = n_constraints;
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  p.evaluate_true = [p_copy = p, eval](const DecisionVector& x) {
    check_in_bounds(p_copy, x);
    return eval(x);
  };
  if (violations != nullptr) {
    p.constraint_violations = [violations](const DecisionVector& x) {
      return violations(x);
    };
  } else {
    p.constraint_violations = [](const DecisionVector&) { return Vec{}; };
  }
  return p;
}

Vec constant_vec(int n, Real v) { return Vec::Constant(n, v); }

}  // namespace

std::vector<std::string> catalog_names() {
  return {"dtlz1", "dtlz2", "dtlz3",       "dtlz4",       "dtlz5", "dtlz6",
          "dtlz7", "kursawe", "bnh", "welded_beam", "truss2d"};
}

Problem catalog_lookup(const std::string& name) {
  const Vec unit_lo = constant_vec(10, 0.0);
  const Vec unit_hi = constant_vec(10, 1.0);
  if (name == "dtlz1") return make_problem(name, unit_lo, unit_hi, 0, dtlz1_eval, nullptr);
  if (name == "dtlz2") return make_problem(name, unit_lo, unit_hi, 0, dtlz2_eval, nullptr);
  if (name == "dtlz3") return make_problem(name, unit_lo, unit_hi, 0, dtlz3_eval, nullptr);
  if (name == "dtlz4") return make_problem(name, unit_lo, unit_hi, 0, dtlz4_eval, nullptr);
  if (name == "dtlz5") return make_problem(name, unit_lo, unit_hi, 0, dtlz5_eval, nullptr);
  if (name == "dtlz6") return make_problem(name, unit_lo, unit_hi, 0, dtlz6_eval, nullptr);
  if (name == "dtlz7") return make_problem(name, unit_lo, unit_hi, 0, dtlz7_eval, nullptr);
  if (name == "kursawe") {
    return make_problem(name, constant_vec(3, -5.0), constant_vec(3, 5.0), 0,
                        kursawe_eval, nullptr);
  }
  if (name == "bnh") {
    Vec lo(2), hi(2);
    lo << 0.0, 0.0;
    hi << 5.0, 3.0;
    return make_problem(name, lo, hi, 2, bnh_eval, bnh_violations);
  }
  if (name == "welded_beam") {
    Vec lo(4), hi(4);
    lo << 0.125, 0.1, 0.1, 0.125;
    hi << 5.0, 10.0, 10.0, 5.0;
    return make_problem(name, lo, hi, 4, welded_beam_eval,
                        welded_beam_violations);
  }
  if (name == "truss2d") {
    // Area lower bounds are 1e-6 rather than 0 so member stress stays
    // finite everywhere in the box.
    Vec lo(3), hi(3);
    lo << 1e-6, 1e-6, 1.0;
    hi << 0.01, 0.01, 3.0;
    return make_problem(name, lo, hi, 1, truss2d_eval, truss2d_violations);
  }
  std::ostringstream msg;
  msg << "unknown problem '" << name << "'; valid names:";
  for (const auto& n : catalog_names()) msg << ' ' << n;
  throw std::invalid_argument(msg.str());
}

Evaluation evaluate_true(const Problem& problem, const DecisionVector& x) {
  check_in_bounds(problem, x);
  return problem.evaluate_true(x);
}

}  // namespace offmoo
