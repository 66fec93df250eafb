#include <cmath>
#include <vector>

#include "common.hpp"
#include "hlab/capacity.hpp"

using namespace hlab;
using testing::code_of;
using testing::family;
using testing::rel;

TEST_CASE("concentric capacity closed forms") {
  CHECK(rel(cap_concentric({HessianDim(4, 2), std::exp(-1.0), 1.0}), 3.0 * M_PI * M_PI) <= 1e-14);
  for (double rho : {0.1, 0.5, 0.9})
    CHECK(rel(cap_concentric({HessianDim(3, 1), rho, 1.0}), 4.0 * M_PI / (1.0 / rho - 1.0)) <= 1e-13);
  CHECK(cap_concentric({HessianDim(2, 1), 1.0 - 1e-12, 1.0}) > 1e12);
  CHECK(code_of([] { cap_concentric({HessianDim(3, 2), 0.5, 1.0}); }) == Errc::unsupported_dimension);
  CHECK(code_of([] { cap_concentric({HessianDim(2, 1), 1.5, 1.0}); }) == Errc::invalid_argument);
  CHECK(code_of([] { cap_concentric({HessianDim(2, 1), 0.0, 1.0}); }) == Errc::invalid_argument);
}

TEST_CASE("capacity is monotone in both radii") {
  for (auto d : {HessianDim(2, 1), HessianDim(4, 2), HessianDim(3, 1), HessianDim(5, 2)}) {
    double prev = 0.0;
    for (double rho = 0.05; rho < 1.0; rho += 0.05) {
      const double c = cap_concentric({d, rho, 1.0});
      CHECK(c >= prev);
      prev = c;
    }
    prev = std::numeric_limits<double>::infinity();
    for (double R = 0.6; R < 5.0; R += 0.4) {
      const double c = cap_concentric({d, 0.5, R});
      CHECK(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("extremal profile boundary values and mass") {
  for (auto d : {HessianDim(2, 1), HessianDim(4, 2), HessianDim(3, 1), HessianDim(6, 2)}) {
    const CapacityConfig cfg{d, 0.3, 1.0};
    const auto u = extremal_profile(cfg);
    CHECK(u.value_at(0.3) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(u.value_at(0.1) == -1.0);
    CHECK(u.value_at(1.0) == 0.0);
    CHECK(rel(hessian_mass(u), cap_concentric(cfg)) <= 1e-6);
  }
  const CapacityConfig e{HessianDim(4, 2), std::exp(-1.0), 1.0};
  const auto u = extremal_profile(e);
  for (double r : {0.4, 0.6, 0.9}) CHECK(std::abs(u.value_at(r) - std::log(r)) <= 1e-12);
  const double small = cap_concentric({HessianDim(4, 2), 1e-6, 1.0});
  CHECK(rel(small, 3.0 * M_PI * M_PI / std::pow(std::log(1e6), 2)) <= 1e-12);
}

TEST_CASE("isocapacitary ratios") {
  const HessianDim d4(4, 2);
  for (double rho : {0.5, 0.1, 0.01}) {
    CHECK(rel(isocapacitary_ratio({d4, rho, 1.0}, beta0(d4)), 1.0) <= 1e-8);
    CHECK(rel(isocapacitary_ratio({HessianDim(2, 1), rho, 2.0}, 2.0), 1.0) <= 1e-8);
  }
  // beta = 1 at rho/R = 1/2 in the plane: |B_rho| exp(4 pi Cap^{-1/2}) / |B_R| with Cap = 2 pi / log 2.
  const double cap = 2.0 * M_PI / std::log(2.0);
  const double expected = 0.25 * std::exp(4.0 * M_PI / std::sqrt(cap));
  CHECK(rel(isocapacitary_ratio({HessianDim(2, 1), 0.5, 1.0}, 1.0), expected) <= 1e-12);
  // n = 3, k = 1, q = 6: (1 - rho)^3 / (48 pi^2) on the unit ball.
  const HessianDim d3(3, 1);
  for (double rho : {1e-2, 1e-4})
    CHECK(rel(isocapacitary_ratio({d3, rho, 1.0}, 6.0), std::pow(1.0 - rho, 3) / (48.0 * M_PI * M_PI)) <= 1e-12);
  CHECK(code_of([&] { isocapacitary_ratio({d4, 0.5, 1.0}, 2.0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { isocapacitary_ratio({d3, 0.5, 1.0}, 7.0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { isocapacitary_ratio({d3, 0.5, 1.0}, 0.5); }) == Errc::invalid_argument);
  const std::vector<double> rhos{0.5, 0.1, 0.01};
  const auto sweep = isocapacitary_sweep(d4, 1.0, rhos, 1.0);
  REQUIRE(sweep.size() == 4);
  CHECK(sweep.back().id == "isocap/sup");
  for (const auto& r : sweep) CHECK(r.pass);
}

TEST_CASE("level-set capacity against mass") {
  const std::vector<double> ts{0.25, 0.5, 1.0, 2.0, 4.0};
  const auto l = make_profile(HessianDim(2, 1), 1.0, family(FamilyKind::log));
  for (double r : levelset_cap_ratios(l, ts)) CHECK(rel(r, 1.0) <= 1e-12);
  const std::vector<double> one{1.0};
  const auto q = make_profile(HessianDim(2, 1), 1.0, family(FamilyKind::quadratic));
  CHECK(levelset_cap_ratios(q, one)[0] == 0.0);
  const std::vector<double> small{0.1, 0.2, 0.4};
  for (double r : levelset_cap_ratios(q, small)) CHECK(r < 1.0);
  const auto g = make_profile(HessianDim(3, 1), 1.0, family(FamilyKind::newtonian));
  for (double r : levelset_cap_ratios(g, ts)) CHECK(r <= 1.0 + 1e-8);
  CHECK(levelset_cap_check(g, ts).pass);
  for (auto d : {HessianDim(2, 1), HessianDim(4, 2), HessianDim(3, 1)})
    for (const auto& u : make_family(d, 1.0, family(FamilyKind::quadratic), 3)) CHECK(levelset_cap_check(u, ts).pass);
  const auto shifted = sample_profile(HessianDim(2, 1), geometric_grid(1.0), [](double r) { return r * r; },
                                      [](double r) { return 2.0 * r; });
  CHECK(code_of([&] { levelset_cap_ratios(shifted, ts); }) == Errc::invalid_argument);
}

TEST_CASE("comparison principle examples") {
  const HessianDim d(2, 1);
  const auto v = make_profile(d, 1.0, family(FamilyKind::quadratic));
  const auto u = make_profile(d, 1.0, family(FamilyKind::quadratic, 2.0));
  const auto set = sublevel_set(u, v);
  REQUIRE(set.intervals.size() == 1);
  CHECK(set.intervals[0].second == doctest::Approx(1.0));
  const auto rec = comparison_check(u, v);
  CHECK(rec.pass);
  CHECK(rel(rec.lhs, 2.0 * M_PI) <= 1e-9);
  CHECK(rel(rec.rhs, 4.0 * M_PI) <= 1e-9);
  const auto empty = comparison_check(v, u);
  CHECK(empty.pass);
  CHECK(empty.lhs == 0.0);
  CHECK(empty.rhs == 0.0);
  CHECK(code_of([&] { comparison_check(v, make_profile(d, 2.0, family(FamilyKind::quadratic))); }) ==
        Errc::invalid_argument);
}

TEST_CASE("comparison on a solver-generated crossing pair") {
  const HessianDim d(4, 2);
  const auto grid = geometric_grid(1.0);
  const auto u = solve_dirichlet(RadialMeasure::from_density(d, grid, 0.0, [](double) { return 1.0; }), 0.0);
  const auto v =
      solve_dirichlet(RadialMeasure::from_density(d, grid, 0.0, [](double r) { return 3.0 * r * r; }), 0.0);
  CHECK(comparison_check(u, v).pass);
  CHECK(comparison_check(v, u).pass);
}
