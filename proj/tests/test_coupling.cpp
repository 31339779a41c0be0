#include "tapline/coupling.hpp"
#include "tapline/errors.hpp"
#include "tapline/units.hpp"

#include "oracles/resonator_oracle.hpp"
#include "support/gen.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tapline;

namespace {

const double kPrintedM[8][8] = {
    {0, 0.144, 0, 0, 0, 0, 0, 0},     {0.144, 0, 0.112, 0, 0, 0, 0, 0}, {0, 0.112, 0, 0.107, 0, 0, 0, 0},
    {0, 0, 0.107, 0, 0.106, 0, 0, 0}, {0, 0, 0, 0.106, 0, 0.107, 0, 0}, {0, 0, 0, 0, 0.107, 0, 0.112, 0},
    {0, 0, 0, 0, 0, 0.112, 0, 0.144}, {0, 0, 0, 0, 0, 0, 0.144, 0},
};

FrequencyResponse resonator_sweep(double f0, double qe, double lo, double hi, std::size_t points) {
    FrequencyResponse r;
    r.freq_hz = linear_grid(lo, hi, points);
    for (double f : r.freq_hz) r.s11.push_back(oracle::loaded_resonator_s11(f, f0, qe));
    r.s21.assign(points, 0.0);
    r.s12.assign(points, 0.0);
    r.s22 = r.s11;
    return r;
}

}  // namespace

TEST(Coupling, EightPoleCoefficients) {
    const auto k = coupling_coefficients(chebyshev_gvalues(8, 0.2), 0.2);
    ASSERT_EQ(k.size(), 7u);
    const double printed[] = {0.144, 0.112, 0.107, 0.106, 0.107, 0.112, 0.144};
    for (std::size_t j = 0; j < 7; ++j) EXPECT_NEAR(k[j], printed[j], 5e-4) << "k" << j + 1;
    EXPECT_NEAR(k[6], k[0], 1e-12);
}

TEST(Coupling, ScalesLinearlyWithBandwidth) {
    const Prototype p = chebyshev_gvalues(6, 0.1);
    const auto k1 = coupling_coefficients(p, 0.05);
    const auto k2 = coupling_coefficients(p, 0.15);
    for (std::size_t j = 0; j < k1.size(); ++j) EXPECT_NEAR(k2[j], 3.0 * k1[j], 1e-14);
    for (double k : coupling_coefficients(p, 1e-12)) EXPECT_LT(k, 1e-11);
    EXPECT_THROW(coupling_coefficients(p, 0.0), DomainError);
    EXPECT_THROW(coupling_coefficients(p, -0.1), DomainError);
}

TEST(Coupling, PrintedMatrix) {
    const CouplingSet cs = make_coupling_set(chebyshev_gvalues(8, 0.2), 0.2);
    ASSERT_EQ(cs.m.rows(), 8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) EXPECT_NEAR(cs.m(i, j), kPrintedM[i][j], 5e-4) << i << "," << j;
    }
    EXPECT_NEAR(cs.qe_in, 6.902, 5e-4);
    EXPECT_NEAR(cs.qe_out, cs.qe_in, 1e-12);
}

TEST(Coupling, MatrixStructure) {
    const double zero[] = {0.0};
    const Eigen::MatrixXd z = coupling_matrix(zero);
    EXPECT_EQ(z.rows(), 2);
    EXPECT_EQ(z.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_THROW(coupling_matrix(std::span<const double>{}), DomainError);
    const double bad[] = {0.1, std::nan("")};
    EXPECT_THROW(coupling_matrix(bad), DomainError);

    testgen::Gen gen(21);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> k(static_cast<std::size_t>(gen.integer(1, 15)));
        for (double& v : k) v = gen.uniform(-1.0, 1.0);
        const Eigen::MatrixXd m = coupling_matrix(k);
        ASSERT_EQ(m.rows(), static_cast<Eigen::Index>(k.size() + 1));
        EXPECT_TRUE(m == m.transpose());
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                const double expected = (j == i + 1) ? k[static_cast<std::size_t>(i)]
                                        : (i == j + 1) ? k[static_cast<std::size_t>(j)] : 0.0;
                ASSERT_EQ(m(i, j), expected);
            }
        }
    }
}

TEST(ExternalQ, Arithmetic) {
    EXPECT_NEAR(external_q(1.0, 1.3804, 0.2), 6.902, 1e-12);
    EXPECT_NEAR(external_q(1.0, 1.3804, 0.15), 9.2027, 1e-4);
    EXPECT_DOUBLE_EQ(external_q(1.0, 0.7, 0.7), 1.0);
    EXPECT_THROW(external_q(1.0, 1.38, 0.0), DomainError);
    EXPECT_THROW(external_q(0.0, 1.38, 0.2), DomainError);
}

TEST(QeFromPhase, SyntheticResonator) {
    const double f0 = 13.2e9;
    const auto r = resonator_sweep(f0, 6.902, 8e9, 18e9, 4001);
    EXPECT_NEAR(qe_from_phase(r, f0), 6.902, 0.02 * 6.902);

    // Half the loaded Q doubles the +/-90 degree span.
    const auto wide = resonator_sweep(f0, 3.451, 4e9, 30e9, 8001);
    EXPECT_NEAR(qe_from_phase(wide, f0) / qe_from_phase(r, f0), 0.5, 1e-3);
}

TEST(QeFromPhase, UnbracketedCrossing) {
    const double f0 = 13.2e9;
    const auto r = resonator_sweep(f0, 6.902, 12e9, 13.6e9, 401);
    EXPECT_THROW(qe_from_phase(r, f0), ExtractionError);
    const auto outside = resonator_sweep(f0, 6.902, 14e9, 18e9, 401);
    EXPECT_THROW(qe_from_phase(outside, f0), ExtractionError);
}

TEST(Tap, ClosedFormPosition) {
    EXPECT_NEAR(tap_position(6.902, 50.0, 50.0), 0.219, 0.002);
    EXPECT_NEAR(tap_position(6.902, 50.0, 50.0), 0.2190489, 1e-6);
    // sin(pi l / 2L) halves when Qe quadruples.
    const double s1 = std::sin(0.5 * kPi * tap_position(6.902, 50.0, 50.0));
    const double s4 = std::sin(0.5 * kPi * tap_position(4.0 * 6.902, 50.0, 50.0));
    EXPECT_NEAR(s4 / s1, 0.5, 1e-12);
    EXPECT_THROW(tap_position(kPi / 4.0, 50.0, 50.0), InfeasibleTapError);
    EXPECT_THROW(tap_position(0.3, 50.0, 50.0), InfeasibleTapError);
    EXPECT_THROW(tap_position(-1.0, 50.0, 50.0), DomainError);
}

TEST(Tap, MonotoneAndInverse) {
    testgen::Gen gen(22);
    for (int i = 0; i < 1000; ++i) {
        const double z0 = gen.uniform(20.0, 100.0);
        const double z0l = gen.uniform(5.0, 120.0);
        const double qe = gen.uniform(1.0, 50.0) * kPi * z0 / (4.0 * z0l);
        const double r = tap_position(qe, z0, z0l);
        ASSERT_GT(r, 0.0);
        ASSERT_LT(r, 1.0);
        EXPECT_GT(r, tap_position(qe * 1.01, z0, z0l));
        EXPECT_NEAR(resonator_impedance_for_tap(qe, z0, r), z0l, 1e-9 * z0l);
    }
    EXPECT_NEAR(resonator_impedance_for_tap(6.902, 50.0, 0.55), 9.8399728, 1e-6);
}

TEST(CriticalCoupling, Arithmetic) {
    EXPECT_NEAR(critical_coupling(6.902, kUnboundedQ), 0.1449, 1e-4);
    EXPECT_NEAR(critical_coupling(6.902, 154.0), 0.1514, 1e-4);
    EXPECT_DOUBLE_EQ(critical_coupling(5.0, 5.0), 0.4);
    EXPECT_THROW(critical_coupling(0.0, 154.0), DomainError);
}

TEST(ClassifyCoupling, Regimes) {
    // 0.144 sits 0.6 % below K = 0.14488: under at a tight tolerance, critical at 1 %.
    EXPECT_EQ(classify_coupling(0.144, 6.902, kUnboundedQ, 0.001), CouplingRegime::under);
    EXPECT_EQ(classify_coupling(0.144, 6.902, kUnboundedQ, 0.01), CouplingRegime::critical);
    EXPECT_EQ(classify_coupling(0.20, 6.902, 154.0, 0.01), CouplingRegime::over);
    EXPECT_EQ(classify_coupling(0.10, 6.902, 154.0), CouplingRegime::under);
    EXPECT_EQ(to_string(CouplingRegime::over), "over");
}

TEST(ClassifyCoupling, CriticalAtConstructedK) {
    testgen::Gen gen(23);
    for (int i = 0; i < 1000; ++i) {
        const double qe = gen.log_uniform(0.5, 500.0);
        const double qu = gen.integer(0, 9) == 0 ? kUnboundedQ : gen.log_uniform(10.0, 1e5);
        const double k = 1.0 / qe + (std::isinf(qu) ? 0.0 : 1.0 / qu);
        EXPECT_EQ(classify_coupling(k, qe, qu, 0.01), CouplingRegime::critical);
        EXPECT_EQ(classify_coupling(k, qe, qu, 1e-12), CouplingRegime::critical);
    }
}
