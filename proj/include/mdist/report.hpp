#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mdist {

struct ReportRow {
    std::string mechanism;
    std::string objective;
    std::string setting;
    double alpha = 1.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double value = 1.0;  // +inf renders as "inf" / null
    std::string witness;  // how to replay the row, e.g. "profile:A>B;B>A"
};

struct Report {
    std::vector<ReportRow> rows;

    /// Orders rows by (mechanism, objective, setting, alpha, n, m).
    void sort();
};

enum class ReportFormat { Table, JsonLines };

ReportFormat parse_format(const std::string& text);

/// Table: a header plus fixed-width rows, 4 decimals. JSON lines: one object per row.
void render_report(const Report& report, ReportFormat format, std::ostream& out);

/// Fixed 4-decimal rendering, "inf" for infinity.
std::string format_value(double value);

}  // namespace mdist
