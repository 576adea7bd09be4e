#include <doctest.h>

#include <sstream>

#include "wxfleet/error.hpp"
#include "wxfleet/weather.hpp"

using namespace wxfleet;

TEST_CASE("classify examples") {
  WeatherState s;
  s.rain_mm_per_hour = 6.0;
  CHECK(classify(s).heavy_rain);

  WeatherState calm;
  calm.temperature_c = 20;
  calm.rain_mm_per_hour = 0;
  calm.visibility_km = 10;
  CHECK_FALSE(classify(calm).any());

  WeatherState fog;
  fog.visibility_km = 4.9;
  CHECK(classify(fog).low_visibility);
}

TEST_CASE("thresholds are strict") {
  WeatherState s;
  s.rain_mm_per_hour = 5.0;
  s.visibility_km = 5.0;
  s.temperature_c = 5.0;
  s.wind_mps = 10.0;
  CHECK_FALSE(classify(s).any());
  s.temperature_c = 35.0;
  CHECK_FALSE(classify(s).extreme_temperature);
  s.temperature_c = std::nextafter(35.0, 100.0);
  CHECK(classify(s).extreme_temperature);
  s.temperature_c = std::nextafter(5.0, 0.0);
  CHECK(classify(s).extreme_temperature);
  s.rain_mm_per_hour = std::nextafter(5.0, 10.0);
  CHECK(classify(s).heavy_rain);
  s.wind_mps = 10.5;
  CHECK(classify(s).high_wind);
  CHECK_FALSE(classify(s, 11.0).high_wind);
}

TEST_CASE("series shape and physical bounds") {
  SimConfig c;
  Rng r(c.seed, "weather");
  const auto s = generate_weather_series(c, 30, r);
  REQUIRE(s.hours() == 30u * 24u);
  for (std::size_t h = 0; h < s.hours(); ++h) {
    const auto& w = s.at(h);
    REQUIRE(w.rain_mm_per_hour >= 0.0);
    REQUIRE(w.visibility_km > 0.0);
    REQUIRE(w.wind_mps >= 0.0);
    REQUIRE(w.hour_of_day == static_cast<int>(h % 24));
    REQUIRE(w.day == static_cast<int>(h / 24) + 1);
  }
}

TEST_CASE("series is deterministic") {
  SimConfig c;
  Rng a(c.seed, "weather"), b(c.seed, "weather");
  CHECK(generate_weather_series(c, 10, a) == generate_weather_series(c, 10, b));
}

TEST_CASE("zero rain probability means no rain") {
  SimConfig c;
  c.rain_probability = 0.0;
  Rng r(c.seed, "weather");
  const auto s = generate_weather_series(c, 40, r);
  for (const auto& w : s.states()) REQUIRE(w.rain_mm_per_hour == 0.0);
}

TEST_CASE("long-run rainy share matches the configured probability") {
  SimConfig c;
  Rng r(c.seed, "weather");
  const auto s = generate_weather_series(c, 100000 / 24 + 1, r);
  std::size_t wet = 0;
  for (const auto& w : s.states()) wet += w.rain_mm_per_hour > 0.0;
  CHECK(std::abs(wet / double(s.hours()) - c.rain_probability) < 0.01);
}

TEST_CASE("mean temperature sits near the configured mean") {
  SimConfig c;
  Rng r(c.seed, "weather");
  const auto s = generate_weather_series(c, 365, r);
  double sum = 0.0;
  for (const auto& w : s.states()) sum += w.temperature_c;
  CHECK(std::abs(sum / double(s.hours()) - c.temp_mean_c) < 1.0);
}

TEST_CASE("forecast accuracy curve") {
  SimConfig c;
  CHECK(forecast_accuracy(0, c) == 1.0);
  CHECK(forecast_accuracy(60, c) == doctest::Approx(0.94));
  CHECK(forecast_accuracy(180, c) == doctest::Approx(0.87));
  CHECK(forecast_accuracy(100000, c) == doctest::Approx(0.75));
  double prev = 1.0;
  for (int h = 0; h <= 2000; h += 7) {
    const double a = forecast_accuracy(h, c);
    CHECK(a <= prev + 1e-15);
    prev = a;
  }
}

TEST_CASE("forecast hit rates") {
  SimConfig c;
  Rng wr(c.seed, "weather");
  const auto s = generate_weather_series(c, 30, wr);
  for (int horizon : {60, 180}) {
    Rng fr(c.seed, "forecast");
    int hits = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const std::int64_t now = (i % 600) * 60;
      hits += forecast(s, now, horizon, fr, c).correct;
    }
    CHECK(std::abs(hits / double(n) - forecast_accuracy(horizon, c)) < 0.02);
  }
}

TEST_CASE("zero horizon returns the truth") {
  SimConfig c;
  Rng wr(c.seed, "weather");
  const auto s = generate_weather_series(c, 3, wr);
  Rng fr(c.seed, "forecast");
  for (int h = 0; h < 72; ++h) {
    const auto f = forecast(s, h * 60, 0, fr, c);
    CHECK(f.correct);
    CHECK(f.predicted == s.at(static_cast<std::size_t>(h)));
  }
}

TEST_CASE("forecast beyond the series") {
  SimConfig c;
  Rng wr(c.seed, "weather");
  const auto s = generate_weather_series(c, 1, wr);
  Rng fr(c.seed, "forecast");
  CHECK_THROWS_AS(forecast(s, 23 * 60, 120, fr, c), ValidationError);
}

TEST_CASE("weather csv header") {
  SimConfig c;
  Rng wr(c.seed, "weather");
  std::ostringstream out;
  write_weather_csv(generate_weather_series(c, 1, wr), out);
  CHECK(out.str().rfind("day,hour,rain_mm,temp_c,wind_mps,visibility_km\n", 0) == 0);
}
