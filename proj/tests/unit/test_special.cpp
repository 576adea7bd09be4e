#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "wxfleet/special.hpp"

namespace sp = wxfleet::special;
namespace bm = boost::math;

TEST_CASE("incomplete beta against boost") {
  for (double a : {0.5, 1.0, 2.5, 10.0, 150.0})
    for (double b : {0.5, 1.0, 3.0, 40.0, 4000.0})
      for (double x : {0.001, 0.1, 0.37, 0.5, 0.9, 0.999})
        CHECK(sp::incomplete_beta(a, b, x) == doctest::Approx(bm::ibeta(a, b, x)).epsilon(1e-10));
  CHECK(sp::incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(sp::incomplete_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("student t against boost") {
  for (double df : {1.0, 2.0, 5.0, 29.0, 89.0, 1000.0, 1e5}) {
    const bm::students_t dist(df);
    for (double t : {-40.0, -3.0, -1.96, -0.5, 0.0, 0.7, 2.0, 5.0}) {
      CHECK(sp::student_t_cdf(t, df) == doctest::Approx(bm::cdf(dist, t)).epsilon(1e-9));
      const double p = 2.0 * bm::cdf(bm::complement(dist, std::abs(t)));
      CHECK(sp::student_t_two_sided_p(t, df) == doctest::Approx(p).epsilon(1e-8).scale(1e-300));
    }
    for (double p : {0.001, 0.025, 0.5, 0.9, 0.975})
      CHECK(sp::student_t_quantile(p, df) == doctest::Approx(bm::quantile(dist, p)).epsilon(1e-8));
  }
}

TEST_CASE("F and chi-square tails against boost") {
  for (double d1 : {1.0, 5.0, 19.0, 29.0})
    for (double d2 : {10.0, 89.0, 8976.0})
      for (double f : {0.1, 1.0, 1.24, 3.5, 26.0}) {
        const bm::fisher_f dist(d1, d2);
        CHECK(sp::f_cdf(f, d1, d2) == doctest::Approx(bm::cdf(dist, f)).epsilon(1e-9));
        CHECK(sp::f_upper_p(f, d1, d2) ==
              doctest::Approx(bm::cdf(bm::complement(dist, f))).epsilon(1e-8).scale(1e-300));
      }
  for (double df : {1.0, 4.0, 30.0})
    for (double x : {0.5, 3.0, 40.0}) {
      const bm::chi_squared dist(df);
      CHECK(sp::chi_square_upper_p(x, df) ==
            doctest::Approx(bm::cdf(bm::complement(dist, x))).epsilon(1e-8).scale(1e-300));
    }
}

TEST_CASE("normal") {
  const bm::normal n;
  for (double z : {-6.0, -1.96, 0.0, 0.3, 2.5})
    CHECK(sp::normal_cdf(z) == doctest::Approx(bm::cdf(n, z)).epsilon(1e-12));
  CHECK(sp::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  for (double p : {1e-6, 0.01, 0.3, 0.5, 0.8, 0.999})
    CHECK(sp::normal_quantile(p) == doctest::Approx(bm::quantile(n, p)).epsilon(1e-9));
}
