#include <cmath>

#include "doctest.h"
#include "qmem/entanglement.hpp"
#include "qmem/errors.hpp"
#include "support.hpp"

using namespace qmem;
using namespace qmem::entanglement;
using linalg::Complex;

namespace {

ComplexMatrix bell() {
    const double s = 1.0 / std::sqrt(2.0);
    return test::ket_projector({s, 0.0, 0.0, s});
}

ComplexMatrix werner(double p) {
    ComplexMatrix w = bell();
    w *= p;
    ComplexMatrix mixed = ComplexMatrix::identity(4);
    mixed *= (1.0 - p) / 4.0;
    return w + mixed;
}

ComplexMatrix random_product() {
    const auto a = test::random_density(2, 1 + static_cast<std::size_t>(test::uniform(0, 2)));
    const auto b = test::random_density(2, 1 + static_cast<std::size_t>(test::uniform(0, 2)));
    return linalg::tensor_product(a, b);
}

ConcurrenceTrace sampled(double duration, std::size_t n, double (*f)(double)) {
    ConcurrenceTrace tr;
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = duration * k / n;
        tr.time.push_back(t);
        tr.value.push_back(f(t));
    }
    return tr;
}

}  // namespace

TEST_CASE("spin flip") {
    const auto ground = ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0});
    CHECK(spin_flip(ground) == ComplexMatrix::diagonal({0.0, 0.0, 0.0, 1.0}));
    CHECK(linalg::max_abs_difference(spin_flip(bell()), bell()) < 1e-15);
    ComplexMatrix mixed = ComplexMatrix::identity(4);
    mixed *= 0.25;
    CHECK(linalg::max_abs_difference(spin_flip(mixed), mixed) < 1e-16);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = test::random_density(4, 3);
        CHECK(linalg::max_abs_difference(spin_flip(spin_flip(rho)), rho) < 1e-15);
        CHECK(linalg::hermiticity_error(spin_flip(rho)) < 1e-15);
        CHECK(std::abs(spin_flip(rho).trace() - 1.0) < 1e-14);
        // rho rho~ and rho~ rho share a spectrum.
        const auto a = concurrence_spectrum(rho);
        const auto b = concurrence_spectrum(spin_flip(rho));
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-9);
    }
    CHECK_THROWS_AS(spin_flip(ComplexMatrix::identity(2)), ContractViolation);
}

TEST_CASE("concurrence oracles") {
    CHECK(std::abs(concurrence(bell()) - 1.0) < 1e-10);
    for (int trial = 0; trial < 100; ++trial) CHECK(concurrence(random_product()) < 1e-10);
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        CHECK(std::abs(concurrence(werner(p)) - std::max(0.0, (3.0 * p - 1.0) / 2.0)) < 1e-9);
    }
    CHECK(concurrence(werner(0.5)) == doctest::Approx(0.25).epsilon(1e-9));

    // Separable mixtures stay at zero.
    for (int trial = 0; trial < 30; ++trial) {
        ComplexMatrix mix(4, 4);
        for (int k = 0; k < 3; ++k) mix.add_scaled(random_product(), 1.0 / 3.0);
        CHECK(concurrence(mix) < 1e-8);
    }

    for (int trial = 0; trial < 50; ++trial) {
        const auto rho = test::random_density(4, 1 + trial % 4);
        const auto u = linalg::tensor_product(test::random_unitary(2), test::random_unitary(2));
        const double c = concurrence(rho);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-9);
        CHECK(std::abs(concurrence(u * rho * u.adjoint()) - c) < 1e-8);
    }

    CHECK_THROWS_AS(concurrence(ComplexMatrix::identity(4)), ContractViolation);
    ComplexMatrix nine = ComplexMatrix::identity(9);
    nine *= 1.0 / 9.0;
    CHECK_THROWS_AS(concurrence(nine), ContractViolation);
    CHECK(concurrence(linalg::product_state(kPi / 4, kPi / 2, kPi / 3, kPi / 2)) < 1e-10);
}

TEST_CASE("sudden death and birth") {
    CHECK(esd_events(sampled(10.0, 1000, [](double) { return 0.0; })).empty());
    CHECK(esd_events(sampled(10.0, 1000, [](double t) { return 0.3 + 0.1 * std::sin(t); })).empty());

    const auto tr = sampled(4.0 * kPi, 40000, [](double t) { return std::max(0.0, std::sin(t) - 0.5); });
    const auto events = esd_events(tr);
    CHECK(esd_pair_count(events) == 1);  // the leading plateau is unbounded on the left

    // Shifting the trace start inside the first lobe exposes both plateaus.
    const auto shifted = sampled(4.0 * kPi, 40000, [](double t) { return std::max(0.0, std::sin(t + kPi / 2) - 0.5); });
    const auto ev = esd_events(shifted);
    REQUIRE(esd_pair_count(ev) == 2);
    const double eps = 1e-4;
    const double tdeath0 = std::asin(0.5 + eps);
    std::vector<double> deaths, births;
    for (const auto& e : ev) {
        if (!e.paired) continue;
        (e.kind == EsdKind::Death ? deaths : births).push_back(e.time);
        CHECK(e.plateau_start < e.plateau_end);
    }
    REQUIRE(deaths.size() == 2);
    for (int k = 0; k < 2; ++k) {
        const double death = kPi - tdeath0 - kPi / 2 + 2.0 * kPi * k;
        const double birth = 2.0 * kPi + tdeath0 - kPi / 2 + 2.0 * kPi * k;
        CHECK(std::abs(deaths[k] - death) < 1e-6);
        CHECK(std::abs(births[k] - birth) < 1e-6);
    }

    EsdOptions strict;
    strict.min_plateau = 10.0;
    CHECK(esd_pair_count(esd_events(shifted, strict)) == 0);

    // A trailing plateau emits only its death.
    const auto tail = sampled(2.0, 200, [](double t) { return t < 1.0 ? 0.5 : 0.0; });
    const auto te = esd_events(tail);
    REQUIRE(te.size() == 1);
    CHECK(te[0].kind == EsdKind::Death);
    CHECK_FALSE(te[0].paired);
}

TEST_CASE("local maxima") {
    const auto tr = sampled(4.0 * kPi, 4000, [](double t) { return 0.5 + 0.4 * std::sin(t); });
    const auto maxima = local_maxima(tr);
    REQUIRE(maxima.size() == 2);
    CHECK(maxima[0] == doctest::Approx(kPi / 2).epsilon(1e-3));
    CHECK(local_maxima(sampled(1.0, 10, [](double) { return 0.0; })).empty());
}
