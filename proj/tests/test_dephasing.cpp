#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "whichpath/audit_json.hpp"
#include "whichpath/whichpath.hpp"

using namespace whichpath;

namespace {

MetalParameters gold() { return {"Au", 1.205e10, 1.7023e10, 2.0, std::nullopt}; }

// Metal whose Lindhard argument is exactly x.
MetalParameters metal_for(double x) {
  const double kf = 2.0 / (2.0 * codata2018.bohr_radius() * x);
  return {"X", kf, thomas_fermi_wavevector(kf), 2.0, std::nullopt};
}

ExperimentSetup nominal_with(double d_over_z0) {
  auto s = ExperimentSetup::nominal();
  s.separation = d_over_z0 * s.height;
  return s;
}

}  // namespace

TEST(MaterialFunction, PaperValues) {
  EXPECT_EQ(mu_material(0.0), 0.0);
  EXPECT_NEAR(mu_material(1.0) / (oracle::pi / 4.0 - 1.0 / 12.0), 1.0, 0.10);
  EXPECT_NEAR(mu_material(1.57), 1.0, 0.1);
  EXPECT_THROW(mu_material(-0.1), DomainError);
}

TEST(MaterialFunction, MatchesFixedGridOracle) {
  for (double x : {0.1, 0.5, 1.0, 1.57, 2.0, 3.0, 5.0})
    EXPECT_NEAR(mu_material(x) / oracle::mu_simpson(x), 1.0, 1e-6) << x;
}

TEST(MaterialFunction, Asymptote) {
  EXPECT_EQ(mu_asymptotic(0.0), 0.0);
  EXPECT_NEAR(mu_asymptotic(1.0), 0.70207, 1e-5);
  EXPECT_NEAR(mu_asymptotic(1.0, 1), 0.7854, 1e-4);
  for (double x = 0.5; x <= 2.0; x += 0.1)
    EXPECT_LE(std::abs(mu_material(x) - mu_asymptotic(x)) / mu_material(x), 0.10) << x;
}

TEST(LossIntegral, LinearInFrequency) {
  const auto m = gold();
  for (auto model : {LossModel::lindhard, LossModel::hubbard}) {
    const double base = momentum_loss_integral(1e8, m, model);
    for (double factor : {2.0, 5.0, 10.0})
      EXPECT_NEAR(momentum_loss_integral(factor * 1e8, m, model) / base, factor, factor * 1e-6);
  }
}

TEST(LossIntegral, TwoRoutesToMu) {
  for (double x : {0.5, 1.0, 1.57, 2.0, 3.0}) {
    const auto m = metal_for(x);
    EXPECT_NEAR(mu_from_loss_integral(m, LossModel::lindhard) / mu_material(x), 1.0, 1e-4) << x;
  }
  for (const auto& m : bundled_materials())
    EXPECT_NEAR(mu_from_loss_integral(m) / mu_material(lindhard_argument(m)), 1.0, 1e-4) << m.name;
}

TEST(LossIntegral, HubbardShiftOnGold) {
  // The faithful Hubbard formula raises mu by 20.2% on gold; the 15% figure
  // in the acceptance list is a chosen bound and is reported there.
  const auto m = gold();
  const double shift = material_mu(m, LossModel::hubbard) / material_mu(m, LossModel::lindhard) - 1.0;
  EXPECT_NEAR(shift, 0.202, 0.002);
  EXPECT_NEAR(material_mu(m, LossModel::hubbard) / mu_from_loss_integral(m, LossModel::hubbard), 1.0, 1e-12);
}

TEST(InverseLength, GoldBenchmark) {
  const auto s = nominal_with(0.1);
  const auto b = inverse_decoherence_length(s, gold());
  const double expected = oracle::inverse_length(1.205e10, 2.0, 293.0, 150.0, 0.1);
  EXPECT_NEAR(b.inverse_length / expected, 1.0, 1e-6);
  EXPECT_NEAR(b.inverse_length, 5.4e2, 0.5e2);
  EXPECT_GT(s.plate_length * b.inverse_length, 1.0);
  EXPECT_NEAR(b.visibility, std::exp(-s.plate_length * b.inverse_length), 1e-15);
  EXPECT_NEAR(b.delta_r, -b.inverse_length * s.plate_length, 1e-12);
  EXPECT_NEAR(b.dephasing_time, 1.0 / (s.velocity * b.inverse_length), 1e-20);
  EXPECT_NEAR(b.x, lindhard_argument(gold()), 0.0);
  EXPECT_TRUE(b.warnings.empty());
}

TEST(InverseLength, CoincidentPathsDoNotDephase) {
  const auto b = inverse_decoherence_length(nominal_with(0.0), gold());
  EXPECT_EQ(b.inverse_length, 0.0);
  EXPECT_EQ(b.visibility, 1.0);
}

TEST(InverseLength, Monotonicity) {
  const auto m = gold();
  auto lam = [&](const ExperimentSetup& s) { return inverse_decoherence_length(s, m).inverse_length; };
  auto s = nominal_with(0.1);
  const double base = lam(s);
  auto t2 = s;
  t2.temperature *= 2.0;
  EXPECT_NEAR(lam(t2) / base, 2.0, 1e-14);

  double previous = 0.0;
  for (double T = 50.0; T < 600.0; T += 50.0) {
    auto x = s;
    x.temperature = T;
    EXPECT_GT(lam(x), previous);
    previous = lam(x);
  }
  previous = 0.0;
  for (double d = 0.02; d < 3.0; d *= 1.3) {
    EXPECT_GT(lam(nominal_with(d)), previous);
    previous = lam(nominal_with(d));
  }
  previous = 1e300;
  for (double z0 = 20e-6; z0 < 2e-3; z0 *= 1.3) {
    auto x = s;
    x.height = z0;
    x.width_x = x.width_y = x.width_z = 0.01 * z0;
    EXPECT_LT(lam(x), previous);
    previous = lam(x);
  }
  previous = 1e300;
  for (double ev = 150.0; ev < 5000.0; ev *= 1.5) {
    auto x = s;
    x.velocity = electron_velocity(ev * si::electron_volt);
    EXPECT_LT(lam(x), previous);
    previous = lam(x);
  }
}

TEST(InverseLength, ChargeNotMass) {
  // A muon with the same velocity as the electron sees the same lambda^-1.
  const auto electron = nominal_with(0.1);
  const double muon_mass = 206.7682830 * si::m_e;
  const double energy = 0.5 * muon_mass * electron.velocity * electron.velocity;
  const auto muon = ExperimentSetup::from_energy(energy, electron.separation, electron.height, electron.plate_length,
                                                 electron.temperature, 0.01, muon_mass);
  EXPECT_NEAR(muon.velocity / electron.velocity, 1.0, 1e-15);
  EXPECT_NEAR(inverse_decoherence_length(muon, gold()).inverse_length /
                  inverse_decoherence_length(electron, gold()).inverse_length,
              1.0, 1e-14);
}

TEST(InverseLength, SlowBeamWarns) {
  auto s = nominal_with(0.1);
  s.velocity = 0.5 * fermi_velocity(gold());
  const auto b = inverse_decoherence_length(s, gold());
  EXPECT_FALSE(b.warnings.empty());
  EXPECT_GT(b.inverse_length, 0.0);
}

TEST(ClosedForm, ScalingAndRatioConstancy) {
  const auto m = gold();
  const auto s = nominal_with(0.1);
  const double base = closed_form_lambda(s, m);
  auto t2 = s;
  t2.temperature *= 2.0;
  EXPECT_NEAR(closed_form_lambda(t2, m) / base, 2.0, 1e-14);
  EXPECT_EQ(closed_form_lambda(nominal_with(0.0), m), 0.0);

  const double ratio = consistency_audit(s, m).closed_form_ratio;
  for (double T : {77.0, 293.0, 500.0})
    for (double d : {0.02, 0.1, 0.5, 1.5}) {
      auto x = nominal_with(d);
      x.temperature = T;
      EXPECT_NEAR(consistency_audit(x, m).closed_form_ratio / ratio, 1.0, 1e-9);
    }
}

TEST(RelaxationRate, GoldValueAndScaling) {
  const auto m = gold();
  const double expected =
      oracle::e * oracle::e / (2.0 * oracle::pi * oracle::eps0 * 2.0 * 1e-8 * oracle::hbar * 1.205e10);
  EXPECT_NEAR(relaxation_rate(100e-6, m) / expected, 1.0, 1e-12);
  EXPECT_NEAR(relaxation_rate(100e-6, m), 1.8e4, 0.1e4);
  EXPECT_NEAR(relaxation_rate(200e-6, m) / relaxation_rate(100e-6, m), 0.25, 1e-15);
}

TEST(RelaxationRate, SemiclassicalRouteCloses) {
  for (const auto& m : bundled_materials())
    for (double z0 : {10e-6, 100e-6, 1e-3})
      EXPECT_NEAR(semiclassical_relaxation_rate(z0, m) / relaxation_rate(z0, m), 1.0,
                  4.0 * std::numeric_limits<double>::epsilon())
          << m.name;
}

TEST(DecoherenceTime, ThermalWavelengthAndScaling) {
  const double expected = 2.0 * oracle::pi * oracle::hbar / std::sqrt(2.0 * oracle::me * oracle::kB * 293.0);
  EXPECT_NEAR(thermal_de_broglie(293.0) / expected, 1.0, 1e-14);
  EXPECT_NEAR(thermal_de_broglie(293.0), 7.7e-9, 0.05e-9);
  const auto m = gold();
  const double rate = decoherence_time(nominal_with(0.1), m).rate;
  EXPECT_NEAR(decoherence_time(nominal_with(0.2), m).rate / rate, 4.0, 1e-13);
  EXPECT_TRUE(decoherence_time(nominal_with(0.1), m).warnings.empty());
  EXPECT_FALSE(decoherence_time(nominal_with(1.5), m).warnings.empty());
}

TEST(Audit, RoutesAndRatios) {
  const auto m = gold();
  const auto report = consistency_audit(nominal_with(0.1), m);
  EXPECT_EQ(report.canonical_route, "metal_formula");
  EXPECT_EQ(report.metal_formula / inverse_decoherence_length(nominal_with(0.1), m).inverse_length, 1.0);
  EXPECT_NEAR(report.decoherence_time, decoherence_time(nominal_with(0.1), m).rate / report.setup.velocity, 0.0);
  // tau_d and the canonical route share the T dependence exactly ...
  for (double T : {77.0, 500.0}) {
    auto s = nominal_with(0.1);
    s.temperature = T;
    EXPECT_NEAR(consistency_audit(s, m).decoherence_time_ratio / report.decoherence_time_ratio, 1.0, 1e-9);
  }
  // ... and the D dependence in the small-separation regime where gamma ~ (pi/16) x^2.
  for (double d : {0.01, 0.05})
    EXPECT_NEAR(consistency_audit(nominal_with(d), m).decoherence_time_ratio / report.decoherence_time_ratio, 1.0,
                2e-3);
}

TEST(Audit, DimensionalVerdicts) {
  const auto checks = dimensional_checks();
  auto find = [&](const std::string& route) {
    for (const auto& c : checks)
      if (c.route == route) return c;
    throw std::runtime_error("missing route " + route);
  };
  EXPECT_TRUE(find("metal_formula").consistent());
  EXPECT_EQ(find("metal_formula").dimension.to_string(), "m^-1");
  EXPECT_TRUE(find("mu_argument").consistent());
  EXPECT_TRUE(find("relaxation_rate").consistent());
  EXPECT_TRUE(find("decoherence_time").consistent());
  EXPECT_FALSE(find("closed_form_as_printed").consistent());
}

TEST(Audit, JsonDocument) {
  const auto doc = to_json(consistency_audit(nominal_with(0.1), gold()));
  for (const char* key : {"inputs", "route_values", "ratios", "dimensional_checks", "warnings"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["canonical_route"], "metal_formula");
  EXPECT_FALSE(doc["warnings"].empty());
}
