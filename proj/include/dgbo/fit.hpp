#pragma once

#include <vector>

namespace dgbo {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
// fit of log y against log x; all entries must be positive
LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dgbo
