#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "tli/special_functions.hpp"

namespace {

using tli::special::Complex;

struct Reference {
  Complex z;
  int n;
  Complex value;
};

// Frozen from scipy.special.iv (independent implementation).
const Reference kReferences[] = {
    {{0.5, 0}, 0, {1.0634833707413236, 0}},
    {{0.5, 0}, 1, {0.25789430539089636, 0}},
    {{0.5, 0}, 10, {2.6430419258812799e-13, 0}},
    {{-0.5, 0}, 1, {-0.25789430539089636, 0}},
    {{-0.5, 0}, 5, {-8.2231713131092646e-06, 0}},
    {{1.0, 0}, 2, {0.13574766976703831, 0}},
    {{1.0, 0}, 10, {2.7529480398368737e-10, 0}},
    {{-12.5, 25}, 0, {15642.17383391049, 12920.017646266047}},
    {{-12.5, 25}, 5, {-16008.703048958851, -4667.8212155321762}},
    {{-12.5, 25}, 10, {5379.6021369685104, -7365.7145871956473}},
    {{-12.5, 25}, 40, {-0.00016800875046381195, 0.00048898389439657505}},
    {{-50, 100}, 0, {9.1287439720687632e+19, 1.7312041196273766e+20}},
    {{-50, 100}, 10, {1.243183454425985e+20, 1.0133305119492686e+20}},
    {{-50, 100}, 40, {4.5008965456880599e+18, 6.0305868630323128e+18}},
    {{0, 30}, 0, {-0.086367983581040211, 0}},
    {{0, 30}, 1, {0, -0.11875106261662291}},
    {{0, 30}, 10, {0.1298768939985887, 0}},
    {{0, 30}, 40, {0.00036120236088965705, 0}},
    {{3, -4}, 0, {-3.3924877882755204, 1.3239458916287266}},
    {{3, -4}, 5, {0.53390739935395437, 0.37819753459078048}},
    {{3, -4}, 10, {-0.0020890476012080947, 0.00088394935038889181}},
    {{1e-6, 0}, 0, {1.00000000000025, 0}},
    {{1e-6, 0}, 2, {1.2500000000001037e-13, 0}},
};

TEST(BesselI, MatchesReferenceValues) {
  for (const auto& r : kReferences) {
    const auto seq = tli::special::bessel_i_sequence(r.z, 40);
    // relative to the largest member of the sequence, as documented
    double scale = 0.0;
    for (const auto& v : seq) scale = std::max(scale, std::abs(v));
    EXPECT_LE(std::abs(seq[static_cast<std::size_t>(r.n)] - r.value), 1e-12 * std::max(scale, std::abs(r.value)))
        << "z=" << r.z << " n=" << r.n;
  }
}

TEST(BesselI, SmallArgumentHighOrderIsRelativelyAccurate) {
  const auto seq = tli::special::bessel_i_sequence({1e-6, 0.0}, 2);
  EXPECT_NEAR(seq[2].real() / 1.2500000000001037e-13, 1.0, 1e-12);
}

TEST(BesselI, ZeroArgument) {
  const auto seq = tli::special::bessel_i_sequence({0.0, 0.0}, 3);
  EXPECT_EQ(seq[0], Complex(1.0, 0.0));
  EXPECT_EQ(seq[1], Complex(0.0, 0.0));
  EXPECT_EQ(seq[3], Complex(0.0, 0.0));
}

TEST(BesselI, ExpScaledAgreesWithUnscaled) {
  for (Complex z : {Complex{-3.0, 0.0}, Complex{-12.5, 25.0}, Complex{2.0, 1.0}, Complex{0.0, -7.0}}) {
    const auto plain = tli::special::bessel_i_sequence(z, 20);
    const auto scaled = tli::special::exp_scaled_bessel_i_sequence(z, 20);
    for (std::size_t n = 0; n < plain.size(); ++n) {
      EXPECT_LE(std::abs(scaled[n] - std::exp(z) * plain[n]), 1e-12 * std::abs(std::exp(z)) * std::abs(plain[0]) + 1e-300);
    }
  }
}

TEST(BesselI, ExpScaledStaysBoundedForLargeNegativeArgument) {
  // e^{-x} I_0(-x) = e^{-x} I_0(x) ~ (1 + 1/(8x) + 9/(128 x^2)) / sqrt(2 pi x)
  const double x = 500.0;
  const auto scaled = tli::special::exp_scaled_bessel_i_sequence({-x, 0.0}, 5);
  const double asymptotic = (1.0 + 1.0 / (8 * x) + 9.0 / (128 * x * x)) / std::sqrt(2 * M_PI * x);
  EXPECT_NEAR(scaled[0].real() / asymptotic, 1.0, 1e-7);
  EXPECT_LT(scaled[1].real(), 0.0);
  for (const auto& v : scaled) EXPECT_LE(std::abs(v), 1.0);
}

TEST(BesselI, RejectsNegativeOrder) {
  EXPECT_THROW(tli::special::bessel_i_sequence({1.0, 0.0}, -1), std::invalid_argument);
}

}  // namespace
