#include "xcharge/table.hpp"

#include <cstdio>
#include <stdexcept>

namespace xcharge {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void Table::add_row(std::vector<double> row, std::string row_status) {
    if (row.size() != columns.size())
        throw std::invalid_argument("Table: row width does not match columns");
    rows.push_back(std::move(row));
    status.push_back(std::move(row_status));
}

void Table::write_csv(std::ostream& os) const {
    bool any_status = false;
    for (const auto& s : status)
        if (!s.empty()) any_status = true;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) os << ',';
        os << columns[c];
    }
    if (any_status) os << ",status";
    os << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c) os << ',';
            os << format_number(rows[r][c]);
        }
        if (any_status) os << ',' << (r < status.size() && !status[r].empty() ? status[r] : "ok");
        os << '\n';
    }
}

}  // namespace xcharge
