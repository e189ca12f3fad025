#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pinterp {

/// Named verdict with signed margin (positive = slack), the tolerance used,
/// the worst-case location, and input provenance. pass <=> margin >= -tol.
struct CheckReport {
    std::string name;
    bool pass = false;
    double margin = 0.0;
    double tolerance = 0.0;
    std::string location;
    std::string provenance;

    static CheckReport make(std::string name, double margin, double tolerance,
                            std::string location, std::string provenance);
};

/// Fixed 12-significant-digit float formatting used by all reports.
std::string format_g12(double v);

/// Deterministic JSON array of reports (sorted keys, fixed float format).
std::string reports_to_json(std::span<const CheckReport> reports,
                            std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace pinterp
