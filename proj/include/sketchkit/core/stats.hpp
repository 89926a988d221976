#pragma once

#include <vector>

namespace sketchkit {

double mean(const std::vector<double>& x);
// Standard error of the mean (sample standard deviation over sqrt(n)).
double std_error(const std::vector<double>& x);
// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile(std::vector<double> x, double q);
double median(std::vector<double> x);

}  // namespace sketchkit
