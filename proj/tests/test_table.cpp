#include <doctest.h>

#include <sstream>

#include "xcharge/table.hpp"

using namespace xcharge;

TEST_CASE("format_number: full-precision scientific notation") {
    CHECK(format_number(0.0) == "0.0000000000000000e+00");
    CHECK(format_number(1.0 / 3.0) == "3.3333333333333331e-01");
    CHECK(format_number(-2.5e-300) == "-2.5000000000000000e-300");
}

TEST_CASE("Table: csv layout, determinism, status column") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({1.0, 2.0});
    t.add_row({0.5, -1.0});
    std::ostringstream s1, s2;
    t.write_csv(s1);
    t.write_csv(s2);
    CHECK(s1.str() == s2.str());  // byte-identical across runs
    CHECK(s1.str().substr(0, 4) == "a,b\n");
    CHECK(s1.str().find("5.0000000000000000e-01") != std::string::npos);
    CHECK(s1.str().find("status") == std::string::npos);

    Table u;
    u.columns = {"x"};
    u.add_row({1.0});
    u.add_row({0.0}, "quadrature failed");
    std::ostringstream s3;
    u.write_csv(s3);
    CHECK(s3.str().find("x,status") == 0);
    CHECK(s3.str().find(",ok") != std::string::npos);
    CHECK(s3.str().find(",quadrature failed") != std::string::npos);

    CHECK_THROWS_AS(u.add_row({1.0, 2.0}), std::invalid_argument);
}
