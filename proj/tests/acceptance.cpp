// Acceptance suite: one numbered criterion per section, each checked at its
// stated tolerance, one pass/fail line each.  Exit code counts the failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spinmet/estimation.hpp"
#include "spinmet/innate.hpp"
#include "spinmet/metrology.hpp"
#include "spinmet/qubit_oracle.hpp"
#include "spinmet/tensors.hpp"

using namespace spinmet;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
    void require_close(double actual, double expected, double tol, const std::string& what) {
        require(std::abs(actual - expected) <= tol,
                what + ": got " + std::to_string(actual) + ", want " + std::to_string(expected)
                    + " +- " + std::to_string(tol));
    }
};

Vector random_unit(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    for (int r = 0; r < dim; ++r) v[r] = Complex(gauss(rng), gauss(rng));
    return v / v.norm();
}

Matrix random_density_raw(int dim, std::mt19937_64& rng, double floor = 0.0) {
    std::normal_distribution<double> gauss;
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    if (floor > 0.0) {
        rho = (1.0 - floor) * rho + floor / dim * Matrix::Identity(dim, dim);
        rho = (rho + rho.adjoint()) / 2.0;
        rho /= rho.trace().real();
    }
    return rho;
}

DensityMatrix random_state(SpinQuantum j, std::mt19937_64& rng, double floor = 0.0) {
    return DensityMatrix(j, random_density_raw(j.dim(), rng, floor));
}

Vec3 random_axis(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
    while (axis.norm() < 1e-3) axis = Vec3(gauss(rng), gauss(rng), gauss(rng));
    return axis.normalized();
}

Rotation random_rotation(SpinQuantum j, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    return rotation_about_axis(j, random_axis(rng), angle(rng));
}

double susceptibility(const DensityMatrix& rho) {
    return qfi_unitary(rho, jz_generator(rho.j()));
}

double condensate_closed_form(double nbar, double dn) {
    const double x = dn / (dn + 2.0);
    return nbar * (nbar / 2.0 + 1.0) * (1.0 - x * x) - 0.5 * x * x;
}

// --- criteria ---------------------------------------------------------------

void criterion_cat_saturation(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    for (int n = 2; n <= 12; ++n) {
        const double f = susceptibility(DensityMatrix::from_pure(cat_state(n, 0.0)));
        c.require_close(f, double(n) * n, 1e-9, "cat N=" + std::to_string(n));
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s exceeds 1s");
}

void criterion_twin_fock_mz(Check& c) {
    for (int n = 2; n <= 12; n += 2) {
        const double fq = qfi_interferometer(DensityMatrix::from_pure(dicke(n, 0)),
                                             mach_zehnder(SpinQuantum(n)));
        c.require_close(fq, n * (n / 2.0 + 1.0), 1e-9, "twin Fock N=" + std::to_string(n));
    }
}

void criterion_kitten_law(Check& c) {
    for (int n = 2; n <= 10; ++n) {
        for (int two_m = 2 - (n % 2); two_m <= n; two_m += 2) {
            const double f = susceptibility(DensityMatrix::from_pure(kitten_state(n, two_m)));
            const double m = 0.5 * two_m;
            c.require_close(f, 4.0 * m * m, 1e-9,
                            "kitten N=" + std::to_string(n) + " 2M=" + std::to_string(two_m));
        }
    }
}

void criterion_separable_bound(Check& c) {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> theta_dist(0.0, kPi);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> raw(0.01, 1.0);
    for (int n : {2, 4, 6, 8}) {
        const Generator jz = jz_generator(SpinQuantum(n));
        for (int trial = 0; trial < 1000; ++trial) {
            const int terms = 1 + trial % 5;
            std::vector<std::pair<double, DensityMatrix>> parts;
            std::vector<double> weights;
            double total = 0.0;
            for (int k = 0; k < terms; ++k) {
                weights.push_back(raw(rng));
                total += weights.back();
            }
            for (int k = 0; k < terms; ++k)
                parts.emplace_back(weights[k] / total,
                                   DensityMatrix::from_pure(coherent_spin_state(
                                       n, theta_dist(rng), phi_dist(rng))));
            const double f = qfi_unitary(mix(parts), jz);
            c.require(f <= n + 1e-9,
                      "CSS mixture at N=" + std::to_string(n) + " gave F=" + std::to_string(f));
        }
    }
    for (int n : {2, 4, 6, 8}) {
        const Generator jz = jz_generator(SpinQuantum(n));
        for (int trial = 0; trial < 250; ++trial) {
            const double f = qfi_unitary(random_state(SpinQuantum(n), rng), jz);
            c.require(f <= double(n) * n + 1e-9,
                      "random state at N=" + std::to_string(n) + " beat the ultimate bound");
        }
    }
}

void criterion_two_qubit_example(Check& c) {
    const SpinQuantum j(2);
    const SphericalTensorBasis basis(j);
    const DensityMatrix psi_plus = DensityMatrix::from_pure(dicke(2, 0));
    const DensityMatrix phi_plus = DensityMatrix::from_pure(cat_state(2, 0.0));

    const TensorDecomposition tf = decompose(psi_plus, basis);
    c.require_close((tf.coeff(0, 0) / std::sqrt(3.0)).real(), 1.0 / 3.0, 1e-12, "tf identity");
    c.require_close(tf.coeff(2, 0).real(), -std::sqrt(2.0 / 3.0), 1e-12, "tf tau20");

    const TensorDecomposition cat = decompose(phi_plus, basis);
    c.require_close((cat.coeff(0, 0) / std::sqrt(3.0)).real(), 1.0 / 3.0, 1e-12, "cat identity");
    c.require_close(cat.coeff(2, 0).real(), 1.0 / std::sqrt(6.0), 1e-12, "cat tau20");
    c.require_close(cat.coeff(2, 2).real(), 0.5, 1e-12, "cat tau22");
    c.require_close(cat.coeff(2, -2).real(), 0.5, 1e-12, "cat tau2-2");

    const Rotation quarter = rotation_about_axis(j, Vec3::UnitX(), kPi / 4.0);
    const DensityMatrix mid = psi_plus.rotated(quarter);
    const DensityMatrix end = mid.rotated(quarter);
    const double step0[5] = {0.0, 0.0, 2.0 / 3.0, 0.0, 0.0};
    const double step1[5] = {1.0 / 16.0, 0.25, 1.0 / 24.0, 0.25, 1.0 / 16.0};
    const double step2[5] = {0.25, 0.0, 1.0 / 6.0, 0.0, 0.25};
    const MassDistribution m0 = mass_distribution(psi_plus, basis);
    const MassDistribution m1 = mass_distribution(mid, basis);
    const MassDistribution m2 = mass_distribution(end, basis);
    for (int k = 0; k < 5; ++k) {
        c.require_close(m0.spheres[2][k], step0[k], 1e-12, "mass step 0 entry " + std::to_string(k));
        c.require_close(m1.spheres[2][k], step1[k], 1e-12, "mass step 1 entry " + std::to_string(k));
        c.require_close(m2.spheres[2][k], step2[k], 1e-12, "mass step 2 entry " + std::to_string(k));
    }
}

void criterion_qmi_relation(Check& c) {
    std::mt19937_64 rng(1006);
    std::uniform_int_distribution<int> pick_n(2, 8);
    for (int trial = 0; trial < 500; ++trial) {
        const SpinQuantum j(pick_n(rng));
        const SphericalTensorBasis basis(j);
        const DensityMatrix pure(j, [&] {
            const Vector v = random_unit(j.dim(), rng);
            return Matrix(v * v.adjoint());
        }());
        const double gap = 2.0 * qmi(pure, basis) - susceptibility(pure);
        c.require(std::abs(gap) <= 1e-9, "pure-state QMI gap " + std::to_string(gap));
    }
    for (int trial = 0; trial < 500; ++trial) {
        const SpinQuantum j(pick_n(rng));
        const SphericalTensorBasis basis(j);
        const DensityMatrix mixed = random_state(j, rng);
        c.require(2.0 * qmi(mixed, basis) <= susceptibility(mixed) + 1e-9,
                  "mixed-state QMI exceeded the susceptibility");
    }
}

void criterion_bures_metric(Check& c) {
    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<int> pick_n(2, 6);
    const double delta = 1e-4;
    for (int trial = 0; trial < 100; ++trial) {
        const SpinQuantum j(pick_n(rng));
        const DensityMatrix rho = random_state(j, rng, 0.1);
        const Generator g = axis_generator(j, random_axis(rng));
        const Matrix u = expi_hermitian(g.matrix, delta);
        Matrix moved = u * rho.rho() * u.adjoint();
        moved = (moved + moved.adjoint()) / 2.0;
        moved /= moved.trace().real();
        const double d = bures_distance(rho, DensityMatrix(j, std::move(moved)));
        const double fq = qfi_unitary(rho, g);
        c.require(std::abs(4.0 * d * d / (delta * delta) - fq) / fq < 1e-3,
                  "metric mismatch at trial " + std::to_string(trial));
    }
}

void criterion_oracle_equivalence(Check& c) {
    std::mt19937_64 rng(1008);
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const PureState psi(SpinQuantum(n), random_unit(n + 1, rng));
            const MultiQubitState big = symmetrize_embed(psi);
            const double small_qfi = susceptibility(DensityMatrix::from_pure(psi));
            const double big_qfi =
                qfi_unitary(Matrix(big.amplitudes * big.amplitudes.adjoint()),
                            collective_operator(n, 'z'));
            c.require(std::abs(small_qfi - big_qfi) <= 1e-9,
                      "QFI split at N=" + std::to_string(n));
        }
        const JSectorDecomposition dec = j_sector_decomposition(n);
        for (const auto& sector : dec.sectors) {
            const int down = (n - sector.two_j) / 2;
            const auto binom = [n](int k) {
                if (k < 0 || k > n) return 0.0;
                return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0)
                                           - std::lgamma(n - k + 1.0)));
            };
            c.require(sector.multiplicity == int(binom(down) - binom(down - 1)),
                      "degeneracy mismatch at N=" + std::to_string(n));
        }
    }
    const JSectorDecomposition dec4 = j_sector_decomposition(4);
    const Matrix jz4 = collective_operator(4, 'z');
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix rho = random_density_raw(16, rng);
        c.require(qfi_unitary(rho, jz4) <= pj_bound(dec4, rho) + 1e-9,
                  "P_J bound violated at N=4");
    }
    const JSectorDecomposition dec3 = j_sector_decomposition(3);
    const Matrix jz3 = collective_operator(3, 'z');
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix rho = random_density_raw(8, rng);
        c.require(qfi_unitary(rho, jz3) <= pj_bound(dec3, rho) + 1e-9,
                  "P_J bound violated at N=3");
    }
}

void criterion_two_condensate(Check& c) {
    const auto mz_generator = [](SpinQuantum j) {
        return Generator(spin_operators(j).jy, "Jy");
    };
    for (int nbar : {10, 20, 40}) {
        for (double dn_target : {0.0, 2.0, nbar / 4.0, 2.0 * double(nbar)}) {
            // nearest wells with n_min + n_max = nbar, 2(n_max - n_min) ~ dn
            int half_spread = int(std::lround(dn_target / 4.0));
            half_spread = std::min(half_spread, nbar / 2);
            int n_min = nbar / 2 - half_spread;
            int n_max = nbar - n_min;
            const double achieved_dn = 2.0 * (n_max - n_min);
            const double direct = two_condensate_mz_qfi(n_min, n_max);
            const double closed = condensate_closed_form(nbar, achieved_dn);
            c.require(std::abs(direct - closed) <= 0.05 * closed,
                      "closed form off at nbar=" + std::to_string(nbar)
                          + " dn=" + std::to_string(achieved_dn));
            if (n_max <= 45) {
                const double dense = sectored_qfi(two_condensate_mixture(n_min, n_max), mz_generator);
                c.require(std::abs(dense - direct) <= 1e-9 * std::max(1.0, direct),
                          "band and dense evaluations split");
            }
        }
        c.require_close(two_condensate_mz_qfi(0, nbar), double(nbar), 1e-6,
                        "maximal-spread endpoint at nbar=" + std::to_string(nbar));
    }
    const double large = two_condensate_mz_qfi(437, 563);  // nbar = 1000, dn = 252
    c.require(large / 1000.0 > 7.5 && large / 1000.0 < 8.5,
              "large-fluctuation point gave F/nbar = " + std::to_string(large / 1000.0));
}

void criterion_cramer_rao(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const int n = 6;
    const SpinQuantum j(n);
    const ExperimentConfig config{
        DensityMatrix::from_pure(coherent_spin_state(n, kPi / 2.0, 0.0)), mach_zehnder(j),
        0.35, 10000, 200, 20260808ULL};
    const TrialStats stats = run_experiment(config);
    const double fq = qfi_interferometer(config.probe, config.interferometer);

    c.require(stats.mle.variance.has_value(), "MLE variance undefined");
    if (stats.mle.variance) {
        const double ratio = config.shots_per_trial * *stats.mle.variance * fq;
        c.require(ratio >= 0.9 && ratio <= 1.3,
                  "nu Var(MLE) F_Q = " + std::to_string(ratio) + " outside [0.9, 1.3]");
        c.require(stats.moment.has_value() && stats.moment->variance.has_value(),
                  "moment estimator missing");
        if (stats.moment && stats.moment->variance) {
            const double se = *stats.mle.variance * std::sqrt(2.0 / (config.trials - 1.0));
            c.require(*stats.moment->variance >= *stats.mle.variance - 3.0 * se,
                      "moment variance undercut the MLE beyond noise");
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + "s exceeds 30s");
}

void criterion_rotational_invariants(Check& c) {
    std::mt19937_64 rng(1011);
    const SpinQuantum j(6);
    const SphericalTensorBasis basis(j);
    const DensityMatrix rho = random_state(j, rng);
    const MassDistribution reference = mass_distribution(rho, basis);
    const TensorDecomposition dec = decompose(rho, basis);
    for (int trial = 0; trial < 100; ++trial) {
        const Rotation r = random_rotation(j, rng);
        const MassDistribution turned = mass_distribution(rho.rotated(r), basis);
        const TensorDecomposition turned_dec = rotate_decomposition(dec, r);
        for (int a = 0; a <= basis.j_max(); ++a) {
            c.require(std::abs(turned.total_mass[a] - reference.total_mass[a]) <= 1e-10,
                      "sphere mass drifted at j=" + std::to_string(a));
            c.require(std::abs(turned_dec.sphere_norm(a) - dec.sphere_norm(a)) <= 1e-10,
                      "coefficient norm drifted at j=" + std::to_string(a));
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        const InterferometerSpec spec(random_rotation(j, rng), random_rotation(j, rng),
                                      random_rotation(j, rng));
        const Matrix u = spec.unitary_at(0.9 + 0.1 * trial);
        Matrix out = u * rho.rho() * u.adjoint();
        out = (out + out.adjoint()) / 2.0;
        const Eigen::VectorXd before = eig_hermitian(rho.rho()).values;
        const Eigen::VectorXd after = eig_hermitian(out).values;
        c.require((before - after).cwiseAbs().maxCoeff() <= 1e-12,
                  "interferometer moved the spectrum");
    }
}

void criterion_innate_optimizer(Check& c) {
    for (int n : {4, 6}) {
        const InnateResult tf = innate_entanglement(DensityMatrix::from_pure(dicke(n, 0)));
        const double expected = n * (n / 2.0 + 1.0);
        c.require(std::abs(tf.value - expected) <= 1e-6 * expected,
                  "twin Fock innate value at N=" + std::to_string(n));
    }
    const InnateResult cat = innate_entanglement(DensityMatrix::from_pure(cat_state(6, 0.0)));
    c.require(std::abs(cat.value - 36.0) <= 1e-6 * 36.0, "cat innate value");
    const InnateResult psi = innate_entanglement(DensityMatrix::from_pure(dicke(2, 0)));
    c.require_close(psi.value, 4.0, 1e-6, "two-qubit twin Fock innate value");
}

void criterion_squeezing_ordering(Check& c) {
    std::mt19937_64 rng(1013);
    std::uniform_int_distribution<int> pick_n(2, 8);
    int defined = 0;
    int trials = 0;
    while (defined < 200 && trials < 4000) {
        ++trials;
        const SpinQuantum j(pick_n(rng));
        const DensityMatrix rho = random_state(j, rng);
        const auto xi_sq = spin_squeezing(rho);
        if (!xi_sq) continue;
        ++defined;
        const double fq = qfi_interferometer(rho, mach_zehnder(j));
        c.require(j.two_j() / *xi_sq <= fq + 1e-9, "squeezing bound broke at trial "
                                                        + std::to_string(trials));
    }
    c.require(defined == 200, "could not draw 200 states with defined squeezing");
    c.require(!spin_squeezing(DensityMatrix::from_pure(twin_fock_probe(8))).has_value(),
              "twin Fock squeezing should be undefined");
    c.require(!spin_squeezing(DensityMatrix::from_pure(cat_state(8, 0.0))).has_value(),
              "cat squeezing should be undefined");
}

struct Criterion {
    std::string label;
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1. cat-state Heisenberg saturation (N = 2..12)", criterion_cat_saturation},
        {"2. twin-Fock Mach-Zehnder QFI (even N <= 12)", criterion_twin_fock_mz},
        {"3. kitten susceptibility law (N <= 10)", criterion_kitten_law},
        {"4. separable and ultimate bounds on random ensembles", criterion_separable_bound},
        {"5. two-qubit decomposition and mass sequence", criterion_two_qubit_example},
        {"6. QMI pure equality / mixed bound (500 + 500 states)", criterion_qmi_relation},
        {"7. Bures metric matches the QFI line element", criterion_bures_metric},
        {"8. product-space oracle equivalence and P_J chain", criterion_oracle_equivalence},
        {"9. two-condensate footnote closed form", criterion_two_condensate},
        {"10. Cramer-Rao saturation by maximum likelihood", criterion_cramer_rao},
        {"11. rotational invariants of spheres and spectra", criterion_rotational_invariants},
        {"12. innate-entanglement optimizer recoveries", criterion_innate_optimizer},
        {"13. squeezing-QFI ordering and undefined flags", criterion_squeezing_ordering},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        try {
            criterion.run(check);
        } catch (const std::exception& err) {
            check.require(false, std::string("exception: ") + err.what());
        }
        if (check.ok) {
            std::printf("[PASS] %s\n", criterion.label.c_str());
        } else {
            ++failures;
            std::printf("[FAIL] %s -- %s\n", criterion.label.c_str(), check.detail.c_str());
        }
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
