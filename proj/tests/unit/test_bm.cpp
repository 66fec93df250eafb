#include <cmath>

#include "common.hpp"
#include "hlab/bm.hpp"

using namespace hlab;
using testing::code_of;
using testing::family;
using testing::rel;

namespace {

BMQuery lp_query(double p) {
  BMQuery q;
  q.dim = HessianDim(3, 1);
  q.branch = BMBranch::lp;
  q.p = p;
  q.family = family(FamilyKind::newtonian);
  q.amplitudes = 4;
  return q;
}

BMQuery exp_query(const HessianDim& d, double lambda, double beta) {
  BMQuery q;
  q.dim = d;
  q.branch = BMBranch::exp;
  q.lambda = lambda;
  q.beta = beta;
  q.family = family(FamilyKind::log);
  q.amplitudes = 4;
  return q;
}

}  // namespace

TEST_CASE("strong and weak Lebesgue ratios on the Newtonian family") {
  const auto strong = bm_lp_check(lp_query(1.0));
  REQUIRE(strong.size() == 5);
  for (const auto& r : strong) {
    CHECK(r.pass);
    CHECK(rel(r.lhs, 1.0 / 6.0) <= 1e-6);
  }
  CHECK(strong.back().id == "lp/sup/newtonian");
  const auto weak = bm_lp_check(lp_query(3.0));
  for (const auto& r : weak) {
    CHECK(r.id.rfind("weak-lp/", 0) == 0);
    CHECK(rel(r.lhs, std::cbrt(4.0 * M_PI / 3.0) / (4.0 * M_PI)) <= 1e-6);
  }
  CHECK(rel(weak.front().lhs, 0.1283) <= 1e-3);
  CHECK(code_of([] { bm_lp_check(lp_query(3.5)); }) == Errc::out_of_range);
  CHECK(code_of([] { bm_lp_check(lp_query(0.5)); }) == Errc::invalid_argument);
  auto inter = lp_query(1.0);
  inter.dim = HessianDim(4, 2);
  CHECK(code_of([&] { bm_lp_check(inter); }) == Errc::unsupported_dimension);
  auto zero = lp_query(1.0);
  zero.family.amplitude = 0.0;
  CHECK(code_of([&] { bm_lp_check(zero); }) == Errc::degenerate_profile);
}

TEST_CASE("exponential check on the log family is sharp") {
  const HessianDim d2(2, 1);
  for (const auto& r : bm_exp_check(exp_query(d2, 2.0 * M_PI, 2.0))) {
    CHECK(r.pass);
    if (r.id.rfind("exp/", 0) == 0) CHECK(rel(r.lhs, 1.0) <= 1e-6);
  }
  const HessianDim d4(4, 2);
  const auto recs = bm_exp_check(exp_query(d4, 0.5 * alpha0(d4), 1.5));
  std::size_t sharp = 0;
  for (const auto& r : recs) {
    CHECK(r.pass);
    if (r.id.rfind("exp-sharp/", 0) == 0) ++sharp;
  }
  CHECK(sharp == 4);
  const auto tiny = bm_exp_check(exp_query(d4, 1e-9, 1.5));
  CHECK(rel(tiny.front().lhs, 1.0) <= 1e-6);
  CHECK(code_of([&] { bm_exp_check(exp_query(d4, alpha0(d4), 1.5)); }) == Errc::out_of_range);
  CHECK(code_of([&] { bm_exp_check(exp_query(d4, 1.0, 2.0)); }) == Errc::invalid_argument);
  CHECK(code_of([&] { bm_exp_check(exp_query(HessianDim(3, 1), 1.0, 1.0)); }) == Errc::unsupported_dimension);
}

TEST_CASE("exponential records do not depend on the amplitude") {
  const HessianDim d4(4, 2);
  auto q = exp_query(d4, 0.4 * alpha0(d4), 1.5);
  q.family = family(FamilyKind::mollified_log, 1.0);
  q.amplitudes = 1;
  const auto base = bm_exp_check(q);
  for (double c : {0.25, 3.0}) {
    auto qc = q;
    qc.family.amplitude = c;
    const auto other = bm_exp_check(qc);
    REQUIRE(other.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) CHECK(rel(other[i].lhs, base[i].lhs) <= 1e-9);
  }
  for (const auto& r : base) CHECK(r.lhs <= 1.0 + 1e-6);
}

TEST_CASE("sharpness probe locates the divergence boundary") {
  for (auto d : {HessianDim(2, 1), HessianDim(4, 2)}) {
    const auto recs = sharpness_probe(d, beta0(d));
    REQUIRE(recs.size() == 11);
    for (const auto& r : recs) CHECK(r.pass);
    const auto below = sharpness_probe(d, 1.0);
    CHECK(below.back().pass);
  }
  CHECK(code_of([] { sharpness_probe(HessianDim(3, 1), 1.0); }) == Errc::unsupported_dimension);
}
