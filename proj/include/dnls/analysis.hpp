#pragma once

#include <array>
#include <string>
#include <vector>

namespace dnls {

// Power-law fit <m2(t)> = D t^alpha from unweighted least squares of
// log m2 on log t over a time window.
struct FitResult {
    double alpha = 0.0;
    double D = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    int n_points = 0;
    double rms_residual = 0.0;               // in log m2
    std::array<std::array<double, 2>, 2> covariance{};  // of (log D, alpha)

    double alpha_stderr() const;
    std::string to_json() const;
};

FitResult fit_alpha(const std::vector<double>& times, const std::vector<double>& m2,
                    double t_lo, double t_hi);

// One fit per window; per-window errors are recorded as failed entries.
struct WindowFit {
    double t_lo = 0.0;
    double t_hi = 0.0;
    bool ok = false;
    FitResult fit;
    std::string error;
};

struct StabilityTable {
    std::vector<WindowFit> fits;
    double alpha_spread() const;  // max - min over successful windows
};

StabilityTable fit_stability(const std::vector<double>& times, const std::vector<double>& m2,
                             const std::vector<std::pair<double, double>>& windows);

struct AlphaPoint {
    double p = 0.0;
    double alpha = 0.0;
    double alpha_stderr = 0.0;
};

// alpha(p) at fixed beta; points strictly increasing in p.
struct AlphaCurve {
    double beta = 0.0;
    std::vector<AlphaPoint> points;

    void validate() const;
    double interpolate(double p) const;  // linear in p, inside the point range
};

struct CurveCollapse {
    double beta = 0.0;
    double c1 = 1.0;
    double c2 = 0.0;
    int n_points = 0;
    double residual_before = 0.0;  // rms vs the reference curve
    double residual_after = 0.0;
};

// Affine rescaling alpha_bar = c1 alpha + c2 aligning each curve with the
// reference curve; coefficients depend only on beta.
struct CollapseResult {
    double reference_beta = 0.0;
    std::vector<CurveCollapse> curves;  // reference first, with c1 = 1, c2 = 0
    double residual_before = 0.0;       // pooled rms over non-reference curves
    double residual_after = 0.0;

    std::string to_json() const;
};

CollapseResult scaling_collapse(const std::vector<AlphaCurve>& curves, double reference_beta);

// Closed-form estimate of the nonlinear level shift against the linear
// level spacing once the packet covers delta_n sites:
// beta * delta_n^(-(p-2)/2).
double heuristic_ratio(double delta_n, double beta, double p);

struct LocalSlope {
    double t = 0.0;      // geometric midpoint of the window
    double alpha = 0.0;  // local log-log slope
};

// Sliding log-log slope over windows of fixed width in log10 t.
std::vector<LocalSlope> running_alpha(const std::vector<double>& times,
                                      const std::vector<double>& m2,
                                      double window_width_decades);

}  // namespace dnls
