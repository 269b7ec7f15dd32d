#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "weakkam/io.hpp"

using namespace weakkam;

TEST_CASE("format_number round trips") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 20000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        const auto s = io::format_number(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == x);
    }
}

TEST_CASE("format_number shape") {
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(100.0) == "100");
    CHECK(io::format_number(-2.5) == "-2.5");
    CHECK(io::format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("csv table") {
    io::CsvTable t({"a", "b", "c"});
    t.cell(1.5).cell(true).cell(std::string("x,y"));
    t.end_row();
    CHECK(t.str() == "a,b,c\n1.5,true,\"x,y\"\n");
    t.cell(1.0);
    CHECK_THROWS(t.end_row());
}

TEST_CASE("json NaN becomes null") {
    nlohmann::json j;
    j["x"] = std::numeric_limits<double>::quiet_NaN();
    CHECK(j.dump() == "{\"x\":null}");
}
