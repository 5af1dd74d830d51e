#include "mdist/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "mdist/profile.hpp"

namespace mdist {

void Report::sort() {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.mechanism, a.objective, a.setting, a.alpha, a.n, a.m) <
               std::tie(b.mechanism, b.objective, b.setting, b.alpha, b.n, b.m);
    });
}

ReportFormat parse_format(const std::string& text) {
    if (text == "table") return ReportFormat::Table;
    if (text == "jsonl") return ReportFormat::JsonLines;
    throw ValidationError("unknown format '" + text + "'");
}

std::string format_value(double value) {
    if (std::isinf(value)) return "inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << value;
    return os.str();
}

void render_report(const Report& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::JsonLines) {
        for (const auto& r : report.rows) {
            nlohmann::ordered_json row;
            row["mechanism"] = r.mechanism;
            row["objective"] = r.objective;
            row["setting"] = r.setting;
            row["alpha"] = r.alpha;
            row["n"] = r.n;
            row["m"] = r.m;
            const bool infinite = std::isinf(r.value);
            row["distortion"] = infinite ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.value);
            row["infinite"] = infinite;
            row["witness"] = r.witness;
            out << row.dump() << '\n';
        }
        return;
    }
    out << std::left << std::setw(12) << "mechanism" << std::setw(10) << "objective" << std::setw(13) << "setting"
        << std::right << std::setw(8) << "alpha" << std::setw(5) << "n" << std::setw(5) << "m" << std::setw(12)
        << "distortion" << "  " << "witness" << '\n';
    for (const auto& r : report.rows) {
        std::ostringstream alpha;
        alpha << std::fixed << std::setprecision(4) << r.alpha;
        out << std::left << std::setw(12) << r.mechanism << std::setw(10) << r.objective << std::setw(13) << r.setting
            << std::right << std::setw(8) << alpha.str() << std::setw(5) << r.n << std::setw(5) << r.m
            << std::setw(12) << format_value(r.value) << "  " << r.witness << '\n';
    }
}

}  // namespace mdist
