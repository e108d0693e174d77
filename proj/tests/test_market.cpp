#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "otl/errors.h"
#include "otl/market.h"

using namespace otl;
using Catch::Approx;

namespace {

MarketModel model_with(double p) {
  MarketModel model;
  model.p_up = p;
  return model;
}

}  // namespace

TEST_CASE("degenerate probabilities", "[market]") {
  const auto ups = sample_path(model_with(1.0), 5, 123).moves;
  CHECK(ups == std::vector<Move>(5, Move::Up));
  const auto downs = sample_path(model_with(0.0), 3, 123).moves;
  CHECK(downs == std::vector<Move>(3, Move::Down));
  CHECK(sample_path(model_with(0.4), 0, 1).moves.empty());
}

TEST_CASE("sampling frequency within three standard errors", "[market]") {
  const int n = 100000;
  const PricePath path = sample_path(model_with(0.4), n, 42);
  const double fraction =
      static_cast<double>(std::count(path.moves.begin(), path.moves.end(), Move::Up)) / n;
  CHECK(std::abs(fraction - 0.4) <= 3.0 * std::sqrt(0.4 * 0.6 / n));
}

TEST_CASE("per-path seeds give a chi-square-sane T=3 path distribution", "[market]") {
  const MarketModel model = model_with(0.6);
  const int n = 100000;
  const auto paths = enumerate_paths(model, 3);
  std::vector<int> counts(paths.size(), 0);
  for (int i = 0; i < n; ++i) {
    const auto moves = sample_path(model, 3, derive_path_seed(77, static_cast<std::uint64_t>(i))).moves;
    int index = 0;
    for (Move m : moves) index = index * 2 + (m == Move::Down ? 1 : 0);
    ++counts[static_cast<std::size_t>(index)];
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const double expected = n * *paths[k].probability;
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  }
  // 7 degrees of freedom: mean 7, sd sqrt(14); 3-sigma bound.
  CHECK(chi2 < 7.0 + 3.0 * std::sqrt(14.0));
}

TEST_CASE("sampling is a pure function of the seed", "[market]") {
  const MarketModel model = model_with(0.37);
  CHECK(sample_path(model, 50, 9).moves == sample_path(model, 50, 9).moves);
  CHECK(sample_path(model, 50, 9).moves != sample_path(model, 50, 10).moves);
  CHECK(derive_path_seed(1, 0) != derive_path_seed(1, 1));
  CHECK(derive_path_seed(1, 0) == derive_path_seed(1, 0));
}

TEST_CASE("enumeration", "[market]") {
  const auto two = enumerate_paths(model_with(0.3), 2);
  CHECK(two.size() == 4);

  const auto three = enumerate_paths(model_with(0.6), 3);
  REQUIRE(three.front().moves == std::vector<Move>{Move::Up, Move::Up, Move::Up});
  CHECK(*three.front().probability == Approx(0.216).margin(1e-15));

  const auto empty = enumerate_paths(model_with(0.6), 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty.front().moves.empty());
  CHECK(*empty.front().probability == 1.0);

  for (double p : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    for (int horizon = 0; horizon <= 20; horizon += 4) {
      // Neumaier summation; 2^20 naive additions alone drift by ~1e-12.
      double total = 0.0;
      double compensation = 0.0;
      for (const auto& path : enumerate_paths(model_with(p), horizon)) {
        const double x = *path.probability;
        const double next = total + x;
        compensation += std::abs(total) >= std::abs(x) ? (total - next) + x : (x - next) + total;
        total = next;
      }
      CHECK(std::abs(total + compensation - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("enumeration bound", "[market]") {
  CHECK_THROWS_AS(enumerate_paths(model_with(0.5), 21), ResourceLimitError);
  ::setenv("OTL_MAX_ENUM_HORIZON", "4", 1);
  CHECK(max_enum_horizon() == 4);
  CHECK_THROWS_AS(enumerate_paths(model_with(0.5), 5), ResourceLimitError);
  ::setenv("OTL_MAX_ENUM_HORIZON", "junk", 1);
  CHECK(max_enum_horizon() == 20);
  ::unsetenv("OTL_MAX_ENUM_HORIZON");
}

TEST_CASE("price process", "[market]") {
  MarketModel model{1.0, -1.0, 0.5, 100.0};
  DividendSpec spec;
  spec.terminal_payoff = [](double level) { return level; };
  spec.initial_level = 100.0;
  for (int horizon = 0; horizon <= 12; ++horizon) CHECK(price_process(model, spec, horizon) == 100.0);

  model.p_up = 0.6;
  CHECK(price_process(model, spec, 1) == Approx(100.2).margin(1e-12));

  DividendSpec zero;
  zero.terminal_payoff = [](double) { return 0.0; };
  CHECK(price_process(model, zero, 7) == 0.0);

  // Action-independent dividends reduce to the plain expected sum.
  DividendSpec coupons = spec;
  coupons.per_step_dividend = [](int, const Action&, double level) { return 0.5 * level; };
  coupons.actions = {Action::neutral(), Action::long_()};
  double expected = 0.0;
  for (const auto& path : enumerate_paths(model, 6)) {
    double level = 100.0;
    double total = 0.0;
    for (Move m : path.moves) {
      level += m == Move::Up ? 1.0 : -1.0;
      total += 0.5 * level;
    }
    expected += *path.probability * (total + level);
  }
  CHECK(price_process(model, coupons, 6) == Approx(expected).margin(1e-9));

  CHECK_THROWS_AS(price_process(model, spec, 21), ResourceLimitError);
}

TEST_CASE("price process maximizes over action-dependent dividends", "[market]") {
  MarketModel model{1.0, -1.0, 0.5, 100.0};
  DividendSpec spec;
  spec.terminal_payoff = [](double) { return 0.0; };
  spec.actions = {Action::neutral(), Action::long_(), Action::short_()};
  // Long earns the up tick, short the down tick; at p = 0.5 both are worth 0.5 per step.
  spec.per_step_dividend = [](int, const Action& a, double level) {
    if (a.direction() == Direction::Long) return level > 100.0 ? 1.0 : 0.0;
    if (a.direction() == Direction::Short) return level < 100.0 ? 1.0 : 0.0;
    return 0.0;
  };
  CHECK(price_process(model, spec, 1) == Approx(0.5).margin(1e-15));
}

TEST_CASE("market validation", "[market]") {
  CHECK_THROWS_AS(validate(MarketModel{10.0, -10.0, 1.5, 1000.0}), ValidationError);
  CHECK_THROWS_AS(validate(MarketModel{-1.0, -10.0, 0.5, 1000.0}), ValidationError);
  CHECK_NOTHROW(validate(MarketModel{10.0, -10.0, 0.0, 1000.0}));
}
