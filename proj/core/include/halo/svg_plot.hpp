#pragma once

#include <optional>
#include <span>
#include <string>

#include "halo/halo_lab.hpp"

namespace halo {

// Deterministic 800x600 log-log scatter of (1/alpha - 1, value - 1) with the
// fitted line overlaid and its slope annotated. Byte-identical output for
// identical inputs. Throws std::domain_error when no point is plottable.
std::string render_loglog_svg(std::span<const std::pair<double, double>> alpha_value,
                              const std::optional<ExponentFit>& fit, const std::string& title);

// Convenience overload plotting a sweep's lower_ratio column (and fitting it
// when `fit` is present).
std::string render_records_svg(std::span<const SweepRecord> records,
                               const std::optional<ExponentFit>& fit, const std::string& title);

}  // namespace halo
