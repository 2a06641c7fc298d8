#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xcharge {

/// Numeric output table. Values print as full-precision scientific notation
/// (17 significant digits) so CSV output is byte-identical across runs; a
/// per-row status column appears when any row carries one.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;  // optional; "" rows print as "ok"

    void add_row(std::vector<double> row, std::string row_status = "");
    void write_csv(std::ostream& os) const;
};

/// "%.16e" formatting used for every emitted number.
std::string format_number(double v);

}  // namespace xcharge
