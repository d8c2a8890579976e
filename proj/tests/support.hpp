#ifndef PRODPLAN_TESTS_SUPPORT_HPP
#define PRODPLAN_TESTS_SUPPORT_HPP

#include "prodplan/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

inline prodplan::ScenarioSpec scenario(prodplan::ScenarioId id) { return prodplan::paper_scenario(id); }

inline const prodplan::ScenarioId kAllScenarios[] = {prodplan::ScenarioId::kS1, prodplan::ScenarioId::kS2,
                                                     prodplan::ScenarioId::kS3, prodplan::ScenarioId::kS4};

} // namespace testing

#endif
