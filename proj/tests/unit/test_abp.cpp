#include <cmath>
#include <vector>

#include "common.hpp"
#include "hlab/abp.hpp"
#include "hlab/degiorgi.hpp"
#include "hlab/orlicz.hpp"

using namespace hlab;
using testing::code_of;
using testing::rel;

TEST_CASE("De Giorgi threshold") {
  CHECK(degiorgi_threshold(1.0, 1.0, 0.25, 0.0) == doctest::Approx(1.0));
  CHECK(degiorgi_threshold(7.0, 0.3, 0.0, 2.5) == 2.5);
  CHECK(degiorgi_threshold(2.0, 0.5, 1.0, 3.0) == doctest::Approx(4.0 / (1.0 - std::pow(2.0, -0.5)) + 3.0));
  CHECK(degiorgi_threshold(2.0, 0.5, 1.0, 3.0) == doctest::Approx(16.657).epsilon(1e-4));
  double prev = 0.0;
  for (double c = 0.5; c < 4.0; c += 0.5) {
    const double s = degiorgi_threshold(c, 0.7, 0.3, 1.0);
    CHECK(s > prev);
    prev = s;
  }
  prev = 0.0;
  for (double p = 0.1; p < 2.0; p += 0.2) {
    const double s = degiorgi_threshold(1.0, 0.7, p, 1.0);
    CHECK(s > prev);
    prev = s;
  }
  CHECK(degiorgi_threshold(1.0, 0.7, 1e-30, 1.0) == doctest::Approx(1.0));
  CHECK(code_of([] { degiorgi_threshold(1.0, 0.0, 1.0, 0.0); }) == Errc::invalid_argument);
}

TEST_CASE("De Giorgi fit on sampled decay profiles") {
  std::vector<DeGiorgiSample> cubic;
  for (int i = 0; i <= 40; ++i) {
    const double s = 0.05 * i;
    cubic.push_back({s, std::pow(std::max(0.0, 1.0 - s), 3)});
  }
  const auto fit = degiorgi_fit_and_verify(cubic);
  CHECK(fit.fitted);
  CHECK(fit.verified);
  CHECK(fit.vanishing == doctest::Approx(1.0));
  CHECK(fit.vanishing <= fit.s_inf);
  CHECK(degiorgi_record(fit, "cubic", "").pass);

  std::vector<DeGiorgiSample> flat;
  for (int i = 0; i < 10; ++i) flat.push_back({0.1 * i, 0.5});
  const auto none = degiorgi_fit_and_verify(flat);
  CHECK_FALSE(none.fitted);
  CHECK(std::isinf(none.C0));
  CHECK_FALSE(degiorgi_record(none, "flat", "").pass);

  auto bumpy = cubic;
  bumpy[5].phi = 2.0;
  CHECK(code_of([&] { degiorgi_fit_and_verify(bumpy); }) == Errc::invalid_argument);
  const std::vector<DeGiorgiSample> few(cubic.begin(), cubic.begin() + 5);
  CHECK(code_of([&] { degiorgi_fit_and_verify(few); }) == Errc::invalid_argument);
}

TEST_CASE("Orlicz weights and the reparametrization h") {
  for (int k : {1, 2, 3}) {
    const auto w = OrliczWeight::exponential(k);
    for (double N : {0.5, 2.0}) {
      const double q = 2.0;
      const double alpha = 3.0;
      const auto h = orlicz_h(w, k, N, q, alpha);
      const double scale = (q / alpha) * std::pow(N, 1.0 / k);
      CHECK(rel(h.s0(), scale) <= 1e-10);
      for (double s : {0.0, 0.5, 2.0, 6.0}) CHECK(rel(h(s), -scale * std::exp(-s)) <= 1e-8);
      CHECK(h.s0() <= h.s0_bound() * (1.0 + 1e-12));
    }
    for (double delta : {0.5, 1.0, 4.0}) CHECK(rel(OrliczWeight::exponential(delta).lambda(k), k / delta) <= 1e-10);
  }
  CHECK(code_of([] { orlicz_h(OrliczWeight::power_shifted(0.0), 2, 1.0, 2.0, 1.0); }) == Errc::invalid_weight);
  CHECK(code_of([] { orlicz_h(OrliczWeight::exponential(0.0), 2, 1.0, 2.0, 1.0); }) == Errc::invalid_weight);
  CHECK(code_of([] { OrliczWeight::tabulated({0.0, 1.0}, {2.0, 1.0}); }) == Errc::invalid_weight);
  CHECK(code_of([] { orlicz_h(OrliczWeight::exponential(1.0), 2, 1.0, 1.0, 1.0); }) == Errc::invalid_argument);

  for (const auto& w : {OrliczWeight::exponential(1.5), OrliczWeight::power_shifted(3.0),
                        OrliczWeight::tabulated({0.0, 1.0, 2.0, 4.0}, {1.0, 2.0, 5.0, 30.0})}) {
    const auto h = orlicz_h(w, 2, 1.3, 2.0, 2.0);
    const double ds = 0.05;
    for (double s = ds; s < 8.0; s += ds) {
      CHECK(h(s + ds) - h(s) >= 0.0);
      CHECK(h(s + ds) - 2.0 * h(s) + h(s - ds) <= 1e-12);
    }
  }
}

TEST_CASE("barrier epsilon is homogeneous of degree 1/(k+1)") {
  for (int k : {1, 2, 3}) {
    const double base = barrier_epsilon(1.0, k);
    CHECK(rel(base, std::pow((k + 1.0) / k, k / (k + 1.0))) <= 1e-14);
    for (double A : {0.01, 3.0, 1e4}) CHECK(rel(barrier_epsilon(A, k), base * std::pow(A, 1.0 / (k + 1.0))) <= 1e-12);
  }
  CHECK(code_of([] { barrier_epsilon(-1.0, 1); }) == Errc::invalid_argument);
}

TEST_CASE("pointwise inequality for constant and bump densities") {
  const HessianDim d4(4, 2);
  const auto w = OrliczWeight::exponential(2.0);
  const auto flat = verify_gk(d4, 1.0, [](double) { return 0.3; }, w);
  CHECK(flat.pointwise.pass);
  CHECK(flat.exp_bound.pass);
  CHECK(flat.direct_branch + flat.f_branch == flat.nodes.size());
  const auto bump = verify_gk(d4, 1.0, [](double r) { return 1.0 - 4.0 * r * r; }, w);
  CHECK(bump.pointwise.pass);
  CHECK(bump.exp_bound.pass);
  CHECK(bump.direct_branch + bump.f_branch == bump.nodes.size());
  const auto plane = verify_gk(HessianDim(2, 1), 1.0, [](double r) { return 1.0 - 4.0 * r * r; }, w);
  CHECK(plane.pointwise.pass);
  CHECK(plane.direct_branch > 0);
  CHECK(plane.f_branch > 0);
  CHECK(bump.alpha == doctest::Approx(alpha0(d4) / 2.0));
  GkOptions bad;
  bad.alpha = alpha0(d4);
  CHECK(code_of([&] { verify_gk(d4, 1.0, [](double) { return 0.0; }, w, bad); }) == Errc::invalid_argument);
  CHECK(code_of([&] { verify_gk(HessianDim(3, 1), 1.0, [](double) { return 0.0; }, w); }) ==
        Errc::unsupported_dimension);
  CHECK(code_of([&] { verify_gk(d4, {0.5, 1.0}, {1.0, 0.0}, w); }) == Errc::invalid_argument);
}

TEST_CASE("ABP members on closed-form right-hand sides") {
  const HessianDim d4(4, 2);
  const auto grid = geometric_grid(1.0);
  const auto w = OrliczWeight::exponential(1.0);
  const AbpInput quad{"quad", 0, RadialMeasure::from_density(d4, grid, 0.0, [](double) { return 6.0; })};
  const auto m = abp_member(quad, w);
  CHECK(rel(m.sup_u, 0.5) <= 1e-7);
  CHECK(rel(m.budget, 6.0 * unit_ball_volume(4) * std::exp(std::log(6.0))) <= 1e-6);
  CHECK(rel(orlicz_budget(quad.f, w), m.budget) <= 1e-12);
  const AbpInput zero{"zero", 0, RadialMeasure::from_density(d4, grid, 0.0, [](double) { return 0.0; })};
  const auto z = abp_member(zero, w);
  CHECK(z.sup_u == 0.0);
  CHECK(z.budget == 0.0);
  const AbpInput dirac{"dirac", 0, RadialMeasure::dirac(d4, grid, 1.0)};
  CHECK(code_of([&] { abp_member(dirac, w); }) == Errc::invalid_argument);
}

TEST_CASE("ABP bound on a small mollified Dirac family") {
  const HessianDim d4(4, 2);
  const auto fam = mollified_dirac_family(d4, 2.0, 6.0, {64.0, 256.0}, {1.0 / 8, 1.0 / 32, 1.0 / 256});
  REQUIRE(fam.size() == 6);
  const auto recs = abp_bound_check(d4, fam, OrliczWeight::exponential(1.0));
  for (const auto& r : recs) CHECK_MESSAGE(r.pass, r.id);
  CHECK(code_of([&] { mollified_dirac_family(d4, 2.0, 6.0, {64.0}, {3.0}); }) == Errc::invalid_argument);
}

TEST_CASE("De Giorgi samples from an ABP run vanish before the threshold") {
  const HessianDim d4(4, 2);
  const auto f = RadialMeasure::from_density(d4, geometric_grid(1.0), 0.0, [](double r) { return 6.0 + 20.0 * r * r; });
  const auto samples = degiorgi_samples_from_abp(d4, f, OrliczWeight::exponential(1.0));
  const auto fit = degiorgi_fit_and_verify(samples);
  CHECK(fit.fitted);
  CHECK(fit.verified);
  CHECK(fit.vanishing <= fit.s_inf);
}
