#include <catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "fastlight/dispersion.hpp"
#include "oracles.hpp"

using namespace fastlight;
using oracle::kSqrt3;
using oracle::rel_err;

namespace {

const cplx I{0.0, 1.0};

bool same_bits(cplx a, cplx b) {
  return std::bit_cast<std::uint64_t>(a.real()) == std::bit_cast<std::uint64_t>(b.real()) &&
         std::bit_cast<std::uint64_t>(a.imag()) == std::bit_cast<std::uint64_t>(b.imag());
}

SchemeParams double_doublet(double m1, double m2, double cap) {
  SchemeParams p;
  p.scheme = Scheme::TwoProbeDoubleDoublet;
  p.gain_m1 = m1;
  p.gain_m2 = m2;
  p.delta_cap = cap;
  p.rabi_ratio_11 = oracle::kInvSqrt2;
  p.rabi_ratio_21 = oracle::kInvSqrt2;
  p.cloud_length = 10.0;
  return p;
}

}  // namespace

TEST_CASE("single pump kappa") {
  CHECK(std::abs(kappa_single_pump(0.0, 1.0) - (-I)) < 1e-15);
  CHECK(std::abs(kappa_single_pump(1.0, 1.0) - cplx(0.5, -0.5)) < 1e-15);
  CHECK(std::abs(kappa_single_pump(1e12, 1.0)) < 1e-11);
}

TEST_CASE("doublet kappa") {
  CHECK(std::abs(kappa_doublet(0.0, 1.0, 1.0, kSqrt3) - (-0.5 * I)) < 1e-15);
  for (double m : {0.3, 1.0, 7.0}) {
    CHECK(std::abs(kappa_doublet(0.0, m, m, 0.0) - (-2.0 * I * m)) < 1e-14);
  }
  CHECK(std::abs(kappa_doublet(1.25, 0.0, 1.0, 1.25) - (-I)) < 1e-15);
  CHECK(kappa_doublet(1.25, 0.0, 1.0, 1.25) == kappa_single_pump(0.0, 1.0));
}

TEST_CASE("double doublet kappa is the doublet kappa to the bit") {
  CHECK(std::abs(kappa_double_doublet(0.0, double_doublet(1, 1, kSqrt3)) - (-0.5 * I)) < 1e-15);
  CHECK(std::abs(kappa_double_doublet(2.0, double_doublet(1, 0, 1)) - cplx(0.3, -0.1)) < 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-6.0, 6.0), m(0.0, 5.0), c(0.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double delta = d(rng), m1 = m(rng), m2 = m(rng), cap = c(rng);
    const auto p = double_doublet(m1, m2, cap);
    CHECK(same_bits(kappa_double_doublet(delta, p), kappa_doublet(delta, m1, m2, cap)));
    CHECK(same_bits(DispersionModel(p).kappa(delta), kappa_doublet(delta, m1, m2, cap)));
    CHECK(rel_err(kappa_doublet(delta, m1, m2, cap), oracle::doublet(delta, m1, m2, cap)) < 1e-14);
  }
}

TEST_CASE("gain medium: Im kappa < 0 on every sweep point") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> m(1e-3, 6.0), c(0.0, 3.0);
  for (int k = 0; k < 30; ++k) {
    SchemeParams p;
    p.scheme = Scheme::SingleProbeDoublet;
    p.gain_m1 = m(rng);
    p.gain_m2 = m(rng);
    p.delta_cap = c(rng);
    p.cloud_length = 1.0;
    for (const auto& pt : sweep(p)) CHECK(pt.kappa.imag() < 0.0);
  }
}

TEST_CASE("closed-form derivatives match finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-4.0, 4.0), m(0.1, 5.0), c(0.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const double m1 = m(rng), m2 = m(rng), cap = c(rng), x = d(rng);
    const auto model = DispersionModel::doublet(m1, m2, cap);
    oracle::Fn f = [&](double t) { return oracle::doublet(t, m1, m2, cap); };
    CHECK(rel_err(model.derivative(x, 1), oracle::d1_central4(f, x)) < 1e-8);
    CHECK(rel_err(model.derivative(x, 2), oracle::d2_central4(f, x)) < 1e-6);
    oracle::Fn fp = [&](double t) { return model.derivative(t, 2); };
    CHECK(rel_err(model.derivative(x, 3), oracle::d1_central4(fp, x)) < 1e-7);
  }
}

TEST_CASE("golden derivatives at M=1, Delta=sqrt(3)") {
  const auto model = DispersionModel::doublet(1.0, 1.0, kSqrt3);
  CHECK(std::abs(model.derivative(0.0, 0) - (-0.5 * I)) < 1e-15);
  CHECK(std::abs(model.derivative(0.0, 1) - (-0.25)) < 1e-15);
  CHECK(std::abs(model.derivative(0.0, 2) - (-0.5 * I)) < 1e-15);
  CHECK(std::abs(model.derivative(0.0, 3) - 0.375) < 1e-15);
}

TEST_CASE("group velocity") {
  const auto fig3 = DispersionModel::doublet(1.0, 1.0, kSqrt3);
  const auto gv = group_velocity_at(0.0, fig3);
  CHECK(std::abs(gv.velocity - 4.0 / 3.0) < 1e-12);
  CHECK(gv.group_index == Catch::Approx(0.75).epsilon(1e-14));
  CHECK_FALSE(gv.divergent);

  std::function<cplx(double)> fn = [](double d) { return kappa_doublet(d, 1.0, 1.0, kSqrt3); };
  CHECK(std::abs(group_velocity_at(0.0, fn).velocity - 4.0 / 3.0) < 1e-6);

  const auto critical = group_velocity_at(0.0, DispersionModel::doublet(4.0, 4.0, kSqrt3));
  CHECK(critical.divergent);
  CHECK(std::isinf(critical.velocity));
  const auto negative = group_velocity_at(0.0, DispersionModel::doublet(5.0, 5.0, kSqrt3));
  CHECK_FALSE(negative.divergent);
  CHECK(negative.velocity < 0.0);
  CHECK(negative.group_index == Catch::Approx(-0.25).epsilon(1e-13));

  CHECK(std::abs(group_velocity_at(0.0, DispersionModel::single_pump(1.0)).velocity - 0.5) < 1e-15);
}

TEST_CASE("v_g relation holds on sweeps, including past divergence") {
  for (double m : {1.0, 4.0, 5.0}) {
    SchemeParams p;
    p.scheme = Scheme::SingleProbeDoublet;
    p.gain_m1 = p.gain_m2 = m;
    p.delta_cap = kSqrt3;
    p.cloud_length = 10.0;
    const auto pts = sweep(p);
    REQUIRE(pts.size() == 2001);
    CHECK(pts.front().delta == -5.0);
    CHECK(pts.back().delta == 5.0);
    for (const auto& pt : pts) {
      if (pt.divergent) {
        CHECK(std::isinf(pt.group_velocity));
      } else {
        CHECK(pt.group_velocity == Catch::Approx(1.0 / (1.0 + pt.group_index_excess)).epsilon(1e-14));
      }
      CHECK(pt.amplitude_gain == Catch::Approx(std::exp(-pt.kappa.imag() * 10.0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("single pump is superluminal iff |delta| > 1") {
  const auto model = DispersionModel::single_pump(1.0);
  for (int k = 0; k <= 4000; ++k) {
    const double d = -4.0 + 8.0 * k / 4000.0;
    if (std::abs(d * d - 1.0) < 1e-9) continue;
    CHECK((group_velocity_at(d, model).velocity > 1.0) == (d * d > 1.0));
  }
}

TEST_CASE("transmission") {
  CHECK(std::abs(transmission(-0.5 * I, 10.0) / std::exp(5.0) - 1.0) < 1e-15);
  CHECK(transmission(0.0, 3.0) == 1.0);
  for (double len : {0.5, 3.0, 10.0}) {
    const auto k0 = kappa_doublet(0.0, 1.0, 1.0, kSqrt3);
    CHECK(transmission(k0, len) == Catch::Approx(std::exp(len / 2.0)).epsilon(1e-14));
  }
}

TEST_CASE("Taylor coefficients") {
  auto t = taylor_coefficients(1.0, kSqrt3);
  CHECK(std::abs(t.k0 - (-0.5 * I)) < 1e-15);
  CHECK(std::abs(t.k1 - (-0.25)) < 1e-15);
  CHECK(std::abs(t.k2 - (-0.5 * I)) < 1e-15);

  t = taylor_coefficients(1.0, 1.0);
  CHECK(std::abs(t.k0 - (-I)) < 1e-15);
  CHECK(t.k1 == cplx(0.0));
  CHECK(std::abs(t.k2 - (-I)) < 1e-15);

  t = taylor_coefficients(0.0, 2.5);
  CHECK(std::abs(t.k0) == 0.0);
  CHECK(std::abs(t.k1) == 0.0);
  CHECK(std::abs(t.k2) == 0.0);

  // Against the exact model and against finite differences of an independent kappa.
  for (double m : {0.5, 1.0, 3.0}) {
    for (double cap : {0.3, 1.0, kSqrt3, 2.7}) {
      const auto closed = taylor_coefficients(m, cap);
      const auto exact = taylor_coefficients(DispersionModel::doublet(m, m, cap));
      CHECK(rel_err(closed.k0, exact.k0) < 1e-14);
      CHECK(std::abs(closed.k1 - exact.k1) < 1e-14 * std::max(1.0, std::abs(exact.k1)));
      CHECK(rel_err(closed.k2, exact.k2) < 1e-13);

      oracle::Fn f = [&](double d) { return oracle::doublet(d, m, m, cap); };
      for (auto d1 : {oracle::d1_central2(f, 0.0), oracle::d1_central4(f, 0.0)}) {
        // kappa'(0) vanishes at Delta = 1; measure against the scale of kappa there.
        CHECK(std::abs(closed.k1 - d1) <= 1e-6 * std::max(std::abs(d1), std::abs(closed.k0)));
      }
      for (auto d2 : {oracle::d2_central2(f, 0.0), oracle::d2_central4(f, 0.0)}) {
        CHECK(rel_err(closed.k2, d2) < 1e-6);
      }
    }
  }
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(0.75) == Regime::Superluminal);
  CHECK(classify_regime(1.0) == Regime::Subluminal);
  CHECK(classify_regime(-0.25) == Regime::NegativeVg);
  CHECK(classify_regime(0.0) == Regime::Superluminal);
  CHECK(to_string(Regime::NegativeVg) == "NegativeVg");
}

TEST_CASE("superluminal threshold and optimum over Delta") {
  auto n_g = [](double cap) {
    return group_velocity_at(0.0, DispersionModel::doublet(1.0, 1.0, cap)).group_index;
  };
  const double flip = oracle::bisect_flip(
      [&](double cap) { return classify_regime(n_g(cap)) == Regime::Superluminal; }, 0.2, 2.0,
      1e-9);
  CHECK(std::abs(flip - 1.0) < 1e-6);

  const double best = oracle::golden_max(
      [](double cap) { return group_velocity_at(0.0, DispersionModel::doublet(1.0, 1.0, cap)).velocity; },
      1.0, 3.0, 1e-8);
  CHECK(std::abs(best - kSqrt3) < 1e-6);
}
