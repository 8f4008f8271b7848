/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Large deviations at speed n^2 for the log-determinant processes: limiting
// cgfs, instantaneous and marginal rate functions, optimal paths, pathwise
// rate functionals and the spectral (log-gas) rate at Marchenko-Pastur laws.
//
// Throughout, a = 1 + 2 theta and the Gram / Wishart cgf domain is
// theta > -(1 - T)/2.

#include <functional>
#include <optional>
#include <vector>

#include "rdet/theory.hpp"

namespace rdet::rates {

/// Relative entropy H(x|p) = x log(x/p) + (1-x) log((1-x)/(1-p)), with
/// 0 log 0 = 0. Returns +inf when p is 0 or 1 and x does not match it.
double entropy_H(double x, double p);

/// g(t, theta) = (J(1-t+2theta) - J(1-t) - J(1+2theta)) / 2.
double g(double t, double theta);

struct GStar {
  double value;   ///< +inf for y >= 0
  double lambda;  ///< maximizing theta; NaN when value is infinite
};

/// Convex conjugate of g(t, .) at y: H(1-t | e^y)/2 for y < 0.
GStar g_star(double t, double y);

enum class Part { AC, Singular };

/// Instantaneous rate of the absolutely continuous (AC) or singular part of a
/// path derivative, at time t and slope y. May be +inf.
double instantaneous_rate(EnsembleKind kind, Part part, double t, double y);

/// Limiting normalized cgf at the constant test function theta on [0, T].
double L_T(EnsembleKind kind, double T, double theta);

/// Lower end of the theta domain of L_T.
double theta_lower(EnsembleKind kind, double T);

/// phi(theta; T): the endpoint value of the optimal path with parameter theta
/// (Gram: J(a) - J(a-T) - T log a ; Wishart: J(a) - J(a-T)). Accepts the
/// closed domain theta >= theta_lower.
double phi(EnsembleKind kind, double T, double theta);

/// d phi / d theta.
double phi_theta_derivative(EnsembleKind kind, double T, double theta);

enum class Branch { Interior, AffineTail, Zero, Infinite };

const char* to_string(Branch branch) noexcept;

struct RateResult {
  double value = 0.0;
  std::optional<double> theta;
  Branch branch = Branch::Interior;
};

/// Marginal rate I_T(xi) of path(T) for Gram or Wishart, 0 < T < 1.
/// Gram values xi >= 0 are unreachable (every Gram path is <= 0) and return
/// +inf with branch Infinite.
RateResult marginal_rate(EnsembleKind kind, double T, double xi);

/// Slope xi at which the affine tail takes over: -T (Gram), J(T) - 1
/// (Wishart).
double affine_junction(EnsembleKind kind, double T);

struct SmoothPath {
  std::vector<double> t;
  std::vector<double> value;
  std::vector<double> derivative;
};

/// t -> phi(theta; t) and its t-derivative on `points` uniform nodes of [0, T].
SmoothPath optimal_path(EnsembleKind kind, double T, double theta,
                        int points = 201);

/// Derivative in t of the optimal path.
double optimal_path_derivative(EnsembleKind kind, double t, double theta);

struct Atom {
  double location;
  double mass;
};

/// Path whose derivative measure has a piecewise-constant density on the
/// cells [grid[i], grid[i+1]) plus finitely many atoms.
struct StepPath {
  std::vector<double> grid;
  std::vector<double> density;
  std::vector<Atom> atoms;
};

/// Pathwise rate functional on [0, T]: the integral of the AC instantaneous
/// rate plus the singular rate priced at every atom. +inf when any atom is
/// positive or the AC rate is infinite on a set of positive measure.
double path_rate(EnsembleKind kind, const StepPath& path, double T);

/// Same functional for a general density t -> d(t) on [0, T].
double path_rate(EnsembleKind kind, const std::function<double(double)>& density,
                 const std::vector<Atom>& atoms, double T);

struct InfConvolution {
  double numeric;
  double closed_form;
  double argmin;
};

/// inf_v { L_a^Gram(t, v) + L_a^Radial(u - v) } by scan plus golden section,
/// next to the Wishart AC rate L_a^Wishart(t, u).
InfConvolution inf_convolution_check(double t, double u);

struct LegendreSup {
  double value;
  double theta;
};

/// Numerical sup over theta of theta xi - L_T(theta), by scan plus golden
/// section. Independent of the root finder behind marginal_rate.
LegendreSup legendre_sup(EnsembleKind kind, double T, double xi);

/// B(c) = -(3c - c^2 log c + (1-c)^2 log(1-c)) / 4.
double hiai_petz_B(double c);

/// Logarithmic energy of the unit-scale Marchenko-Pastur law with ratio c,
/// -1 + (1/c + log c + (1/c - 1)^2 log(1-c)) / 2.
double mp_log_energy(double c);

/// Spectral rate of the log-gas at the Marchenko-Pastur law with ratio
/// T / sigma2 and scale sigma2; requires T / sigma2 in (0, 1).
double spectral_rate_mp(double T, double sigma2);

}  // namespace rdet::rates
