#include "doctest.h"

#include <cmath>
#include <functional>

#include "framelab/error.hpp"
#include "framelab/piecewise.hpp"
#include "test_support.hpp"

using namespace framelab;

namespace {

bool throws_code(const std::function<void()>& fn, errc expect) {
  try {
    fn();
  } catch (const error& e) {
    return e.code() == expect;
  }
  return false;
}

}  // namespace

TEST_CASE("window evaluation uses half-open pieces (lo, hi]") {
  const piecewise_window w = ts::ramp_window();
  CHECK(eval(w, 0.5) == doctest::Approx(1.5));
  CHECK(eval(w, 1.0) == doctest::Approx(2.0));   // right endpoint of the first piece
  CHECK(eval(w, 1.5) == doctest::Approx(1.5));
  CHECK(eval(w, 2.0) == doctest::Approx(2.0));   // right endpoint of support
  CHECK(eval(w, 0.0) == 0.0);                    // left endpoint excluded
  CHECK(eval(w, 3.0) == 0.0);
  CHECK(eval(w, -1.0) == 0.0);

  CHECK(support_lo(w) == doctest::Approx(0.0));
  CHECK(support_hi(w) == doctest::Approx(2.0));
  CHECK(support_length(w) == doctest::Approx(2.0));
  CHECK(support_length(ts::half_ramp_window()) == doctest::Approx(2.0));
  CHECK(support_length(ts::box_window()) == doctest::Approx(1.0));
}

TEST_CASE("make_window rejects malformed descriptions") {
  CHECK(throws_code([] { make_window("empty", {}); }, errc::invalid_window));
  CHECK(throws_code(
      [] {
        make_window("overlap", {{0.0, 1.5, polynomial({1.0})}, {1.0, 2.0, polynomial({1.0})}});
      },
      errc::invalid_window));
  CHECK(throws_code([] { make_window("inverted", {{1.0, 0.5, polynomial({1.0})}}); },
                    errc::invalid_window));
  CHECK(throws_code(
      [] {
        make_window("high-degree",
                    {{0.0, 1.0, polynomial({1, 1, 1, 1, 1, 1, 1, 1, 1, 1})}});
      },
      errc::invalid_window));
  CHECK(throws_code([] { make_window("null", {{0.0, 1.0, polynomial({0.0})}}); },
                    errc::invalid_window));
  // gaps between pieces are allowed
  const piecewise_window gap =
      make_window("gap", {{0.0, 1.0, polynomial({1.0})}, {2.0, 3.0, polynomial({1.0})}});
  CHECK(eval(gap, 1.5) == 0.0);
  CHECK(support_length(gap) == doctest::Approx(3.0));
}

TEST_CASE("piecewise polynomial algebra") {
  piecewise_poly p({{0.0, 1.0, polynomial({1.0, 1.0})}});  // 1+x on (0,1]

  SUBCASE("shifted moves the support") {
    piecewise_poly s = p.shifted(2.0);  // 1+(x-2) on (2,3]
    CHECK(s(2.5) == doctest::Approx(1.5));
    CHECK(s(0.5) == 0.0);
  }
  SUBCASE("squared squares values") {
    CHECK(p.squared()(0.5) == doctest::Approx(2.25));
  }
  SUBCASE("restriction clips the support") {
    piecewise_poly r = p.restricted(0.25, 0.5);
    CHECK(r(0.4) == doctest::Approx(1.4));
    CHECK(r(0.75) == 0.0);
    CHECK(p.restricted(5.0, 6.0).empty());
  }
  SUBCASE("sum refines breakpoints") {
    piecewise_poly q({{0.5, 1.5, polynomial({2.0})}});
    piecewise_poly s = p + q;
    CHECK(s(0.25) == doctest::Approx(1.25));
    CHECK(s(0.75) == doctest::Approx(3.75));
    CHECK(s(1.25) == doctest::Approx(2.0));
  }
  SUBCASE("scalar multiple") {
    CHECK((3.0 * p)(0.5) == doctest::Approx(4.5));
  }
}

TEST_CASE("translation power sums of the ramp window") {
  const piecewise_window w = ts::ramp_window();
  // sum_n w(x - n)^2 at x = 0.5: contributions 1.5^2 from two translates
  CHECK(translation_power_sum(w, 1.0, 0.5) == doctest::Approx(4.5).epsilon(1e-12));
  // at x = sqrt(3.5) both contributing translates square to 3.5
  CHECK(translation_power_sum(w, 1.0, std::sqrt(3.5)) == doctest::Approx(7.0).epsilon(1e-9));
  // periodicity in the translation step
  for (double x : {0.125, 0.6, 0.99}) {
    CHECK(translation_power_sum(w, 1.0, x) ==
          doctest::Approx(translation_power_sum(w, 1.0, x + 3.0)).epsilon(1e-12));
  }
  CHECK(throws_code([&] { translation_power_sum(w, -1.0, 0.5); }, errc::validation_error));
}

TEST_CASE("correlation sums") {
  const piecewise_window w = ts::ramp_window();
  // step equal to the support length: every shifted overlap is empty
  CHECK(correlation_sum(w, 1.0, 2.0, 0.3) == doctest::Approx(0.0));
  // box window, half-support step: exactly one overlapping shift contributes
  CHECK(correlation_sum(ts::box_window(), 1.0, 0.5, 0.25) == doctest::Approx(1.0).epsilon(1e-12));
  // ramp window with unit step reproduces 2(1+x)^2 inside (0,1]
  for (double x : {0.2, 0.5, 0.8}) {
    CHECK(correlation_sum(w, 1.0, 1.0, x) ==
          doctest::Approx(2.0 * (1.0 + x) * (1.0 + x)).epsilon(1e-12));
  }
}

TEST_CASE("power sum polynomials and exact extrema") {
  const piecewise_window ramp = ts::ramp_window();
  const piecewise_window half = ts::half_ramp_window();

  SUBCASE("ramp translate-square sum spans (2, 8]") {
    piecewise_poly g0 = power_sum_poly(ramp, 1.0, 0.0, 1.0);
    auto e = piecewise_extrema(g0, 0.0, 1.0);
    CHECK(e.min_value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.max_value == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(e.argmin == doctest::Approx(0.0));
    CHECK(e.argmax == doctest::Approx(1.0));
    // agrees with the pointwise sum
    for (double x : {0.1, 0.35, 0.99})
      CHECK(g0(x) == doctest::Approx(translation_power_sum(ramp, 1.0, x)).epsilon(1e-12));
  }
  SUBCASE("half-ramp translate-square sum spans (5/4, 5]") {
    piecewise_poly g0 = power_sum_poly(half, 1.0, 0.0, 1.0);
    auto e = piecewise_extrema(g0, 0.0, 1.0);
    CHECK(e.min_value == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(e.max_value == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("correlation polynomials match the pointwise sum") {
    auto terms = correlation_poly(ramp, 1.0, 1.0, 0.0, 1.0);
    for (double x : {0.2, 0.5, 0.8}) {
      double acc = 0.0;
      for (const auto& t : terms) acc += std::fabs(t.f(x));
      CHECK(acc == doctest::Approx(correlation_sum(ramp, 1.0, 1.0, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact extrema agree with a dense scan") {
  // smooth interior piece: both methods see the same quadratic
  piecewise_poly d = 6.5 * power_sum_poly(ts::ramp_window(), 1.0, 0.0, 1.0);
  auto exact = piecewise_extrema(d, 0.1, 0.9);
  auto scan = grid_extrema([&](double x) { return d(x); }, 0.1, 0.9, 100000);
  CHECK(exact.min_value == doctest::Approx(scan.min_value).epsilon(1e-6));
  CHECK(exact.max_value == doctest::Approx(scan.max_value).epsilon(1e-6));

  // interior maximum of x(2-x) on (0,2]
  piecewise_poly bump({{0.0, 2.0, polynomial({0.0, 2.0, -1.0})}});
  auto be = piecewise_extrema(bump, 0.0, 2.0);
  auto bs = grid_extrema([&](double x) { return bump(x); }, 0.0, 2.0, 100000);
  CHECK(be.max_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(be.argmax == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(be.min_value == doctest::Approx(0.0));
  CHECK(be.max_value == doctest::Approx(bs.max_value).epsilon(1e-6));
  CHECK(std::fabs(be.min_value - bs.min_value) < 1e-6);
}

TEST_CASE("uncovered stretches count as zero in extrema") {
  piecewise_poly p({{0.0, 1.0, polynomial({5.0})}, {2.0, 3.0, polynomial({7.0})}});
  auto e = piecewise_extrema(p, 0.0, 3.0);
  CHECK(e.min_value == doctest::Approx(0.0));  // the gap (1,2]
  CHECK(e.max_value == doctest::Approx(7.0));
  auto inner = piecewise_extrema(p, 0.25, 0.75);
  CHECK(inner.min_value == doctest::Approx(5.0));
  CHECK(inner.max_value == doctest::Approx(5.0));
}
