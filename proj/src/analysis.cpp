#include "dnls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

struct Ols {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    double var_slope = 0.0;
    double var_intercept = 0.0;
    double cov_si = 0.0;
};

Ols ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double xm = 0.0, ym = 0.0;
    for (int i = 0; i < n; ++i) {
        xm += x[static_cast<std::size_t>(i)];
        ym += y[static_cast<std::size_t>(i)];
    }
    xm /= n;
    ym /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = x[static_cast<std::size_t>(i)] - xm;
        sxx += dx * dx;
        sxy += dx * (y[static_cast<std::size_t>(i)] - ym);
    }
    if (sxx <= 0.0) throw FitError("fit: degenerate abscissa (zero spread)");
    Ols r;
    r.slope = sxy / sxx;
    r.intercept = ym - r.slope * xm;
    double ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = y[static_cast<std::size_t>(i)] -
                         (r.intercept + r.slope * x[static_cast<std::size_t>(i)]);
        ssr += e * e;
    }
    r.rms_residual = std::sqrt(ssr / n);
    const double sigma2 = n > 2 ? ssr / (n - 2) : 0.0;
    r.var_slope = sigma2 / sxx;
    r.var_intercept = sigma2 * (1.0 / n + xm * xm / sxx);
    r.cov_si = -sigma2 * xm / sxx;
    return r;
}

}  // namespace

double FitResult::alpha_stderr() const { return std::sqrt(covariance[1][1]); }

std::string FitResult::to_json() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["D"] = D;
    j["window"] = {t_lo, t_hi};
    j["n_points"] = n_points;
    j["rms_residual"] = rms_residual;
    j["covariance"] = {{covariance[0][0], covariance[0][1]},
                       {covariance[1][0], covariance[1][1]}};
    j["alpha_stderr"] = alpha_stderr();
    return j.dump();
}

FitResult fit_alpha(const std::vector<double>& times, const std::vector<double>& m2,
                    double t_lo, double t_hi) {
    if (times.size() != m2.size()) throw FitError("fit_alpha: series lengths differ");
    if (!(t_lo < t_hi)) throw FitError("fit_alpha: window must satisfy t_lo < t_hi");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        if (m2[i] <= 0.0)
            throw FitError("fit_alpha: nonpositive m2 at t = " + std::to_string(times[i]));
        lx.push_back(std::log(times[i]));
        ly.push_back(std::log(m2[i]));
    }
    if (lx.size() < 3)
        throw FitError("fit_alpha: need at least 3 samples in window, have " +
                       std::to_string(lx.size()));
    const Ols ols = ols_fit(lx, ly);
    FitResult r;
    r.alpha = ols.slope;
    r.D = std::exp(ols.intercept);
    r.t_lo = t_lo;
    r.t_hi = t_hi;
    r.n_points = static_cast<int>(lx.size());
    r.rms_residual = ols.rms_residual;
    r.covariance[0][0] = ols.var_intercept;
    r.covariance[0][1] = ols.cov_si;
    r.covariance[1][0] = ols.cov_si;
    r.covariance[1][1] = ols.var_slope;
    return r;
}

double StabilityTable::alpha_spread() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& w : fits) {
        if (!w.ok) continue;
        lo = std::min(lo, w.fit.alpha);
        hi = std::max(hi, w.fit.alpha);
    }
    return hi >= lo ? hi - lo : std::numeric_limits<double>::quiet_NaN();
}

StabilityTable fit_stability(const std::vector<double>& times, const std::vector<double>& m2,
                             const std::vector<std::pair<double, double>>& windows) {
    StabilityTable table;
    for (const auto& [lo, hi] : windows) {
        WindowFit wf;
        wf.t_lo = lo;
        wf.t_hi = hi;
        try {
            wf.fit = fit_alpha(times, m2, lo, hi);
            wf.ok = true;
        } catch (const std::exception& e) {
            wf.error = e.what();
        }
        table.fits.push_back(std::move(wf));
    }
    return table;
}

void AlphaCurve::validate() const {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i - 1].p < points[i].p))
            throw FitError("alpha curve: p values must be strictly increasing");
}

double AlphaCurve::interpolate(double p) const {
    if (points.empty()) throw FitError("alpha curve: empty");
    if (p < points.front().p || p > points.back().p)
        throw FitError("alpha curve: p outside the tabulated range");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (p <= points[i].p) {
            const auto& a = points[i - 1];
            const auto& b = points[i];
            const double w = (p - a.p) / (b.p - a.p);
            return a.alpha + w * (b.alpha - a.alpha);
        }
    }
    return points.back().alpha;
}

std::string CollapseResult::to_json() const {
    nlohmann::json j;
    j["reference_beta"] = reference_beta;
    j["residual_before"] = residual_before;
    j["residual_after"] = residual_after;
    auto arr = nlohmann::json::array();
    for (const auto& c : curves)
        arr.push_back({{"beta", c.beta},
                       {"c1", c.c1},
                       {"c2", c.c2},
                       {"n_points", c.n_points},
                       {"residual_before", c.residual_before},
                       {"residual_after", c.residual_after}});
    j["curves"] = arr;
    return j.dump();
}

CollapseResult scaling_collapse(const std::vector<AlphaCurve>& curves, double reference_beta) {
    if (curves.size() < 2) throw FitError("collapse: need at least two curves");
    const AlphaCurve* ref = nullptr;
    for (const auto& c : curves) {
        c.validate();
        if (c.beta == reference_beta) ref = &c;
    }
    if (!ref) throw FitError("collapse: reference beta not among the curves");

    CollapseResult out;
    out.reference_beta = reference_beta;
    out.curves.push_back(CurveCollapse{reference_beta, 1.0, 0.0,
                                       static_cast<int>(ref->points.size()), 0.0, 0.0});

    double pooled_before = 0.0, pooled_after = 0.0;
    int pooled_n = 0;
    for (const auto& curve : curves) {
        if (&curve == ref) continue;
        // Evaluate both curves on the reference p grid restricted to the
        // curve's range; off-grid p is linearly interpolated.
        std::vector<double> a, y;
        for (const auto& pt : ref->points) {
            if (pt.p < curve.points.front().p || pt.p > curve.points.back().p) continue;
            a.push_back(curve.interpolate(pt.p));
            y.push_back(pt.alpha);
        }
        if (a.size() < 3)
            throw FitError("collapse: curves share fewer than 3 common p values");

        const int n = static_cast<int>(a.size());
        double am = 0.0, ym = 0.0;
        for (int i = 0; i < n; ++i) {
            am += a[static_cast<std::size_t>(i)];
            ym += y[static_cast<std::size_t>(i)];
        }
        am /= n;
        ym /= n;
        double saa = 0.0, say = 0.0;
        for (int i = 0; i < n; ++i) {
            const double da = a[static_cast<std::size_t>(i)] - am;
            saa += da * da;
            say += da * (y[static_cast<std::size_t>(i)] - ym);
        }
        if (saa <= 0.0)
            throw FitError("collapse: curve at beta = " + std::to_string(curve.beta) +
                           " has zero alpha variance (c1 unidentifiable)");
        CurveCollapse cc;
        cc.beta = curve.beta;
        cc.c1 = say / saa;
        cc.c2 = ym - cc.c1 * am;
        cc.n_points = n;
        double sb = 0.0, sa = 0.0;
        for (int i = 0; i < n; ++i) {
            const double eb = a[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)];
            const double ea =
                cc.c1 * a[static_cast<std::size_t>(i)] + cc.c2 - y[static_cast<std::size_t>(i)];
            sb += eb * eb;
            sa += ea * ea;
        }
        cc.residual_before = std::sqrt(sb / n);
        cc.residual_after = std::sqrt(sa / n);
        pooled_before += sb;
        pooled_after += sa;
        pooled_n += n;
        out.curves.push_back(cc);
    }
    out.residual_before = std::sqrt(pooled_before / pooled_n);
    out.residual_after = std::sqrt(pooled_after / pooled_n);
    return out;
}

double heuristic_ratio(double delta_n, double beta, double p) {
    if (delta_n <= 0.0) throw ConfigError("heuristic_ratio: delta_n must be > 0");
    return beta * std::pow(delta_n, -0.5 * (p - 2.0));
}

std::vector<LocalSlope> running_alpha(const std::vector<double>& times,
                                      const std::vector<double>& m2,
                                      double window_width_decades) {
    if (times.size() != m2.size()) throw FitError("running_alpha: series lengths differ");
    if (window_width_decades <= 0.0)
        throw FitError("running_alpha: window width must be > 0");
    std::vector<double> lt, lm;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= 0.0 || m2[i] <= 0.0) continue;
        lt.push_back(std::log10(times[i]));
        lm.push_back(std::log(m2[i]));
    }
    if (lt.size() < 3 || lt.back() - lt.front() < window_width_decades)
        throw FitError("running_alpha: series does not span the window width");

    const double ln10 = std::log(10.0);
    std::vector<LocalSlope> out;
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < lt.size(); ++hi) {
        while (lt[hi] - lt[lo] > window_width_decades) ++lo;
        if (hi - lo + 1 < 3) continue;
        std::vector<double> x(lt.begin() + static_cast<std::ptrdiff_t>(lo),
                              lt.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        std::vector<double> y(lm.begin() + static_cast<std::ptrdiff_t>(lo),
                              lm.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        const Ols ols = ols_fit(x, y);
        LocalSlope s;
        s.t = std::pow(10.0, 0.5 * (lt[lo] + lt[hi]));
        s.alpha = ols.slope / ln10;  // d ln m2 / d log10 t -> d ln m2 / d ln t
        out.push_back(s);
    }
    if (out.empty()) throw FitError("running_alpha: no window had 3 samples");
    return out;
}

}  // namespace dnls
