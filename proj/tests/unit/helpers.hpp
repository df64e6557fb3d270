#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "dgbo/grid.hpp"

namespace dgbo::testing {

inline constexpr double kPi = std::numbers::pi;

inline Field sample(const Grid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = f(g.x(j));
    return Field::from_values(g, std::move(v));
}

inline double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.value(j) - b.value(j)));
    return m;
}

}  // namespace dgbo::testing
