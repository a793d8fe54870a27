#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psindex/index.hpp"

namespace psindex {

/// Numbers as JSON; +inf is written as the string "inf" and NaN as null.
nlohmann::json json_number(double v);

nlohmann::json report_json(const IndexReport& r);

/// re(z1),im(z1),...,rho_residual
void write_samples_csv(std::ostream& os, const std::vector<BoundaryPoint>& pts);
/// re(z1),im(z1),...,min_eigenvalue,null_dim
void write_weak_csv(std::ostream& os, const std::vector<BoundaryPoint>& pts, const std::vector<LeviScan>& scans);
/// One row per t.
void write_sweep_csv(std::ostream& os, const std::vector<IndexReport>& reports);

/// %.17g, or "inf" / "-inf" / "nan".
std::string format_double(double v);

}  // namespace psindex
