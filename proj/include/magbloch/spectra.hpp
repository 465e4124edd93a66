#pragma once

#include <vector>

namespace magbloch {

struct Interval {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
};

// Sorts, then merges intervals whose overlap exceeds tol. Touching intervals stay separate.
std::vector<Interval> merge_intervals(std::vector<Interval> v, double tol);
double total_measure(const std::vector<Interval>& v);

// Hausdorff distance between two finite unions of closed intervals.
double hausdorff_interval_sets(const std::vector<Interval>& a, const std::vector<Interval>& b);
// Max |a_i - b_i| of the two lists sorted and truncated to the shorter length.
double sorted_list_distance(std::vector<double> a, std::vector<double> b);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS of log residuals
    int points_used = 0;
};

// Least-squares slope of log(y) against log(x); y below floor is censored.
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-12);

} // namespace magbloch
