#pragma once

#include "netmosaic/mosaic.hpp"
#include "netmosaic/netseries.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace netmosaic {

// Edge-list series format (UTF-8, ASCII spaces, '\n' line ends):
//   line 1:   "n T"
//   others:   "t i j"   0-based, 0 <= t < T, 0 <= i < j < n
// Each line declares x_ij = 1 at time t; unlisted pairs are 0.

/// Throws DataError naming the offending line (1-based, header is line 1).
NetSeries parse_series(std::istream& in, const std::string& source = "<stream>");
NetSeries parse_series(const std::filesystem::path& path);

void write_series(std::ostream& out, const NetSeries& series);
void write_series(const std::filesystem::path& path, const NetSeries& series);

/// Report fields under their own names plus a "config" object.
nlohmann::json report_to_json(const TestReport& report, const nlohmann::json& config);

}  // namespace netmosaic
