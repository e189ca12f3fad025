#include "pinterp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pinterp {

CheckReport CheckReport::make(std::string name, double margin, double tolerance,
                              std::string location, std::string provenance) {
    CheckReport r;
    r.name = std::move(name);
    r.margin = margin;
    r.tolerance = tolerance;
    r.pass = margin >= -tolerance;
    r.location = std::move(location);
    r.provenance = std::move(provenance);
    return r;
}

std::string format_g12(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e308" : "-1e308";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string reports_to_json(std::span<const CheckReport> reports,
                            std::optional<std::uint64_t> seed) {
    // Keys emitted in sorted order for byte-stable output.
    std::ostringstream os;
    os << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const CheckReport& r = reports[i];
        os << "  {";
        os << "\"location\": \"" << escape(r.location) << "\", ";
        os << "\"margin\": " << format_g12(r.margin) << ", ";
        os << "\"name\": \"" << escape(r.name) << "\", ";
        os << "\"pass\": " << (r.pass ? "true" : "false") << ", ";
        os << "\"provenance\": \"" << escape(r.provenance) << "\", ";
        if (seed) os << "\"seed\": " << *seed << ", ";
        os << "\"tol\": " << format_g12(r.tolerance);
        os << "}";
        if (i + 1 < reports.size()) os << ",";
        os << "\n";
    }
    os << "]\n";
    return os.str();
}

}  // namespace pinterp
