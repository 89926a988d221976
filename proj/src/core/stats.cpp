#include "sketchkit/core/stats.hpp"

#include "sketchkit/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sketchkit {

double mean(const std::vector<double>& x) {
    if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0;
    for (double v : x) s += v;
    return s / double(x.size());
}

double std_error(const std::vector<double>& x) {
    if (x.size() < 2) return std::numeric_limits<double>::infinity();
    const double m = mean(x);
    double s = 0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / double(x.size() - 1) / double(x.size()));
}

double quantile(std::vector<double> x, double q) {
    if (x.empty()) throw PreconditionError("quantile of an empty sample");
    if (!(q >= 0 && q <= 1)) throw PreconditionError("quantile level outside [0, 1]");
    std::sort(x.begin(), x.end());
    const double h = q * double(x.size() - 1);
    const auto lo = std::size_t(std::floor(h));
    const auto hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (h - double(lo)) * (x[hi] - x[lo]);
}

double median(std::vector<double> x) { return quantile(std::move(x), 0.5); }

}  // namespace sketchkit
