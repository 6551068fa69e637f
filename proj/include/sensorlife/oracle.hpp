#pragma once

#include <cstdint>

#include "sensorlife/units.hpp"

namespace sensorlife {

enum class Spacing { linear, log };

// Constellation sizes span [2, m_max]; compressed sizes span [d_min, D].
struct GridSpec {
    int m_points = 2000;
    int dcp_points = 2000;
    Spacing m_spacing = Spacing::log;
    Spacing dcp_spacing = Spacing::linear;
    int workers = 1;
};

struct GridMinimum {
    double m = 0.0;
    double d_cp = 0.0;
    double p_t = 0.0;
    double psi = 0.0;
    std::int64_t feasible_points = 0;
    std::int64_t total_points = 0;
};

// Exhaustive search with the error target met exactly at gain h2.
// Throws EmptyFeasibleSetError when no grid point meets delay and power caps.
GridMinimum grid_minimize_s1(double h2, const SystemParams& params, const DerivedConstants& derived,
                             const GridSpec& grid);

// Exhaustive search with the error target met with probability vartheta.
GridMinimum grid_minimize_s3(const SystemParams& params, const DerivedConstants& derived, const GridSpec& grid);

}  // namespace sensorlife
