#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "bakerlab/config.hpp"
#include "bakerlab/csv.hpp"

using namespace bakerlab;

TEST_SUITE("io") {

TEST_CASE("numbers round trip exactly") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mant(rng), expo(rng));
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv round trip is byte identical") {
  CsvTable t;
  t.header = {"param", "value", "label"};
  t.rows.push_back({format_number(0.5), format_number(1.0 / 3.0), "direct"});
  t.rows.push_back({format_number(-1e-300), format_number(std::nan("")), "failed"});
  const std::string text = to_csv(t);
  CHECK(text.substr(0, 17) == "param,value,label");
  CHECK(reserialize_csv(text) == text);
  const CsvTable back = parse_csv(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
}

TEST_CASE("csv width mismatch") {
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), std::invalid_argument);
}

TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::from_text(
      "# experiment\n"
      "command = render\n"
      "width = 300   # pixels\n"
      "x_min=-2.5\n"
      "s = 5, 10, 20\n"
      "\n");
  CHECK(c.command() == "render");
  CHECK(c.get_int("width", 0) == 300);
  CHECK(c.get_double("x_min", 0.0) == -2.5);
  CHECK(c.get_list("s", {}) == std::vector<double>{5.0, 10.0, 20.0});
  CHECK(c.get_double("missing", 7.0) == 7.0);
  CHECK_FALSE(c.has("missing"));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(ExperimentConfig::from_text("no equals sign\n"), ConfigError);
  auto c = ExperimentConfig::from_text("w = abc\nn = 2.5\nx = inf\nr = -1\n");
  CHECK_THROWS_AS(c.get_int("w", 0), ConfigError);
  CHECK_THROWS_AS(c.get_int("n", 0), ConfigError);
  CHECK_THROWS_AS(c.get_double("x", 0.0), ConfigError);
  CHECK_THROWS_AS(c.get_positive("r", 1.0), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/config.cfg"), ConfigError);
}

}
