#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tli/fringe.hpp"
#include "tli/oracle.hpp"
#include "tli/witness.hpp"

namespace {

using tli::GratingSpec;
using tli::oracle::Complex;
using tli::oracle::FieldGrid;

constexpr double kPi = std::numbers::pi;

TEST(FieldGrid, Validation) {
  EXPECT_THROW(FieldGrid::plane_wave(256), std::invalid_argument);
  EXPECT_THROW(FieldGrid::plane_wave(1000), std::invalid_argument);
  EXPECT_NO_THROW(FieldGrid::plane_wave(512));
}

TEST(Propagate, UniformFieldUnchanged) {
  const auto f = FieldGrid::plane_wave(512);
  const auto g = tli::oracle::propagate(f, 1.37);
  for (const auto& v : g.samples) EXPECT_LE(std::abs(v - Complex{1.0, 0.0}), 1e-14);
}

TEST(Propagate, FundamentalHarmonicFullPhaseCycle) {
  // harmonic n acquires exp(-i pi n^2 xi / (4 xi_T)); n = 1, xi = 8 xi_T is 2 pi
  FieldGrid f = FieldGrid::plane_wave(512);
  for (std::size_t k = 0; k < f.size(); ++k) f.samples[k] = std::polar(1.0, 2 * kPi * k / 512.0);
  const auto g = tli::oracle::propagate(f, 8.0);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_LE(std::abs(g.samples[k] - f.samples[k]), 1e-12);
}

TEST(Propagate, IsUnitary) {
  FieldGrid f = FieldGrid::plane_wave(1024, 3.1);
  f.apply(tli::balanced_two_colour(30.0, 30.0, 1.0, 1.0, tli::NodeParity::plus));
  const double before = f.mean_intensity();
  for (double xi : {0.1, 1.0, 2.7}) {
    f = tli::oracle::propagate(f, xi);
    EXPECT_NEAR(f.mean_intensity() / before, 1.0, 1e-12);
  }
}

TEST(Propagate, TalbotSelfImagingAtTwiceTalbotLength) {
  const auto g = GratingSpec::one_colour(10.0, 0.0);
  FieldGrid f = FieldGrid::plane_wave(1024);
  f.apply(g);
  for (double xi : {2.0, 4.0}) {
    const auto h = tli::oracle::propagate(f, xi);
    for (std::size_t k = 0; k < f.size(); ++k) {
      EXPECT_NEAR(std::norm(h.samples[k]), std::norm(f.samples[k]), 1e-8);
    }
  }
  // and not at the single Talbot length, where the image is shifted by half a period
  const auto h = tli::oracle::propagate(f, 1.0);
  EXPECT_GT(std::abs(std::norm(h.samples[0]) - std::norm(f.samples[0])), 0.1);
}

tli::InterferometerConfig config(const GratingSpec& g1, const GratingSpec& g2, double xi) {
  return {g1, g2, GratingSpec::one_colour(2.0, 1.0), true, xi};
}

TEST(IncoherentPattern, TransparentSecondGratingIsUniform) {
  const auto g1 = GratingSpec::one_colour(10.0, 1.0);
  const auto p = tli::oracle::incoherent_pattern(config(g1, GratingSpec::transparent(), 0.8));
  const double mean = tli::intensity_coefficients(g1).at(0).real();
  for (double v : p.density) EXPECT_NEAR(v, mean, 1e-12);
}

TEST(IncoherentPattern, TransparentFirstGratingGivesMeanTransmission) {
  const auto g2 = tli::balanced_two_colour(10.0, 10.0, 1.0, 1.0, tli::NodeParity::minus);
  const auto p = tli::oracle::incoherent_pattern(config(GratingSpec::transparent(), g2, 1.3));
  const double mean = tli::intensity_coefficients(g2).at(0).real();
  for (double v : p.density) EXPECT_NEAR(v, mean, 1e-12);
}

TEST(IncoherentPattern, MatchesLadderFormula) {
  const auto s = tli::WitnessSetup::symmetric(10.0, 2.0);
  for (auto st : {tli::SecondSetting::zero, tli::SecondSetting::plus}) {
    const auto cfg = config(s.first_grating(), s.second_grating(st), 1.7);
    const auto p = tli::oracle::incoherent_pattern(cfg);
    const auto c = tli::oracle::compare(tli::fringe_spectrum(cfg), p.density);
    EXPECT_LE(c.l2_relative, 1e-6);
    EXPECT_LE(c.max_abs, 1e-8);
  }
}

TEST(IncoherentPattern, FlippedLadderSignIsDetected) {
  const auto s = tli::WitnessSetup::symmetric(10.0, 2.0);
  const auto cfg = config(s.first_grating(), s.second_grating(tli::SecondSetting::plus), 1.7);
  const auto p = tli::oracle::incoherent_pattern(cfg);
  const auto c = tli::oracle::compare(tli::fringe_spectrum(cfg, tli::LadderSign::flipped), p.density);
  EXPECT_GT(c.l2_relative, 1e3 * 1e-6);  // far outside the oracle tolerance
}

TEST(IncoherentPattern, UnderResolutionIsAnError) {
  const auto s = tli::WitnessSetup::symmetric(10.0, 2.0);
  const auto cfg = config(s.first_grating(), s.second_grating(tli::SecondSetting::zero), 1.0);
  EXPECT_THROW(tli::oracle::incoherent_pattern(cfg, {0, 16}), std::invalid_argument);
  EXPECT_THROW(tli::oracle::incoherent_pattern(cfg, {512, 0}), std::invalid_argument);
  EXPECT_THROW(tli::oracle::incoherent_pattern(cfg, {1000, 0}), std::invalid_argument);
}

TEST(IncoherentPattern, ResolutionRules) {
  const auto s = tli::WitnessSetup::symmetric(50.0, 2.0);
  const auto cfg = config(s.first_grating(), s.second_grating(tli::SecondSetting::plus), 1.0);
  const auto r = tli::oracle::resolve(cfg);
  EXPECT_GE(r.grid_points, 8u * static_cast<std::size_t>(r.first_harmonics + r.second_harmonics));
  EXPECT_GE(r.grid_points, 512u);
  EXPECT_EQ(r.k_samples, 8u * static_cast<std::size_t>(r.longest_cross_index));
}

TEST(Compare, IdenticalInputs) {
  tli::FringeSpectrum s{tli::FourierSeries(tli::SeriesKind::intensity, 2)};
  s.density[0] = 0.5;
  s.density[2] = 0.1;
  s.density[-2] = 0.1;
  const auto grid = s.density.sample_real(512);
  const auto c = tli::oracle::compare(s, grid);
  EXPECT_EQ(c.l2_relative, 0.0);
  EXPECT_EQ(c.max_abs, 0.0);
}

}  // namespace
