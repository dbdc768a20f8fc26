#pragma once

#include <iosfwd>
#include <string>

#include "volest/estimate.hpp"
#include "volest/simulate.hpp"

namespace volest {

// `%.17g` formatting used by every numeric CSV column.
std::string format_fixed17(double v);

// Header `t,x,y,dw`, one row per node; the last node (and every node of an
// observed path) leaves dw empty.
void write_path_csv(std::ostream& os, const PathPair& path);

// Reads the path dump format; '#' lines are skipped. The step is taken from
// the first two nodes and every node must sit on the uniform grid. Throws
// ConfigError on malformed input.
PathPair read_path_csv(std::istream& is);

inline constexpr std::string_view kEstimateHeader = "T,theta_hat,numerator,denominator,n_used";

std::string estimate_csv_row(const EstimateResult& r);

}  // namespace volest
