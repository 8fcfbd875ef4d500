#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "halo/halo_lab.hpp"

namespace halo {

// Shortest round-trip decimal form, identical across runs.
std::string format_double(double v);

// CSV with the fixed header alpha,lower_ratio,upper_bound,family,grid,seed;
// a missing upper bound serializes as an empty field.
std::string sweep_records_csv(std::span<const SweepRecord> records);
std::vector<SweepRecord> parse_sweep_csv(const std::string& text);

// (alpha, column) points for fitting; column is "lower_ratio" or
// "upper_bound". Records without the requested value are skipped.
std::vector<std::pair<double, double>> sweep_column(std::span<const SweepRecord> records,
                                                    const std::string& column);

}  // namespace halo
