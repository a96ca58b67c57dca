#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "graphdim/process.hpp"

namespace graphdim {

struct DimensionEstimate {
    double value = 0.0;      // slope clamped into [1, 2]
    double slope = 0.0;      // raw OLS slope
    double intercept = 0.0;
    std::vector<int> scales_used;
    double r_squared = 0.0;
    std::vector<double> per_scale_counts;
};

// Oscillation (max minus min of the path values) over each dyadic box
// I_{n,k}; shared boundary grid points count toward both neighbors so a
// linear path oscillates by exactly the box width. Needs >= 4 samples
// per box.
std::vector<double> oscillation(const SamplePath& path, int level);

// Vertical-column box count: sum_k (floor(Osc_k / 2^-n) + 1).
long long box_count_graph(const SamplePath& path, int level);

// OLS fit of log2(count) against the level over [n_min, n_max].
DimensionEstimate box_dim_fit(const SamplePath& path, int n_min, int n_max);

// Per-level estimates of the oscillation L^q spectrum:
//   log(sum_k Osc_k^q) / (-n log 2), zero-oscillation boxes excluded.
std::vector<std::pair<int, double>> empirical_lq(const SamplePath& path, double q,
                                                 const std::vector<int>& levels);

// Measure carried along the graph: Lebesgue on the time grid (trapezoid
// weights) or an explicit quadrature (points in the time domain, path
// values interpolated).
struct BaseMeasure {
    enum class Kind { LebesgueOnGrid, Quadrature };
    Kind kind = Kind::LebesgueOnGrid;
    std::vector<double> points;
    std::vector<double> weights;

    static BaseMeasure lebesgue() { return {}; }
    static BaseMeasure quadrature(std::vector<double> points, std::vector<double> weights);
};

struct EnergyResult {
    double value = 0.0;
    bool coincident_pairs = false;  // pairs floored to one grid spacing
};

// Discretized s-energy of the graph measure, 1 < s < 2:
//   sum_{i != j} w_i w_j / ((t_i-t_j)^2 + (X_i-X_j)^2)^(s/2).
EnergyResult energy_integral(const SamplePath& path, const BaseMeasure& base, double s);

// sum_i w_i exp(-2 pi i (xi1 t_i + xi2 X_i)).
std::complex<double> empirical_ft(const SamplePath& path, const BaseMeasure& base, double xi1,
                                  double xi2);

enum class Cone { Horizontal, Vertical };

// Angle decomposition at |xi| > 1: horizontal iff the angle lies within
// theta_u = min(u^-rho, pi/4) of {0, pi}; boundary angles are horizontal.
Cone cone_classify(double xi1, double xi2, double rho);

struct FourierScanSample {
    double xi1 = 0.0, xi2 = 0.0;
    double magnitude_u = 0.0;
    Cone cone = Cone::Horizontal;
    double rho = 0.5;
    double ft_abs = 0.0;
};

struct FourierDecayFit {
    double alpha_hat = 0.0;             // -2 * slope of the max-over-angles envelope
    double worst_direction_alpha = 0.0; // min over fixed directions
    double horizontal_slope = 0.0;      // pooled per-cone log-log slopes
    double vertical_slope = 0.0;
    bool clamped = false;               // negative alpha clamped to 0
    std::vector<FourierScanSample> samples;
};

// Evaluates |empirical_ft| on a (u, theta) lattice with angles_per_level
// directions over [0, pi) and fits the decay exponent. The per-level
// maximum over angles drives alpha_hat, because Fourier dimension
// requires decay in every direction.
FourierDecayFit fourier_decay_fit(const SamplePath& path, const BaseMeasure& base,
                                  const std::vector<double>& u_levels, int angles_per_level,
                                  double rho);

// Scan dump: header `xi1,xi2,u,cone,ft_abs`, one row per lattice point.
void write_fourier_scan_csv(const std::vector<FourierScanSample>& samples,
                            const std::string& file);

} // namespace graphdim
