#include "spinmet/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spinmet/qubit_oracle.hpp"
#include "spinmet/report.hpp"

namespace spinmet {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Outputs are written only once fully assembled, so a rejected input never
// leaves a partial file behind.
void emit(const std::string& content, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << content << "\n";
        return;
    }
    std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + output_path + "'");
    out << content << "\n";
}

struct RotateStep {
    Vec3 axis;
    double angle;
};

std::vector<RotateStep> parse_rotate_flags(const std::vector<std::string>& flags) {
    std::vector<RotateStep> steps;
    for (const std::string& flag : flags) {
        const auto colon = flag.find(':');
        if (colon == std::string::npos)
            throw InputError("--rotate expects AXIS:ANGLE, got '" + flag + "'");
        const std::string axis_name = flag.substr(0, colon);
        Vec3 axis;
        if (axis_name == "x")
            axis = Vec3::UnitX();
        else if (axis_name == "y")
            axis = Vec3::UnitY();
        else if (axis_name == "z")
            axis = Vec3::UnitZ();
        else
            throw InputError("--rotate axis must be x, y or z, got '" + axis_name + "'");
        char* end = nullptr;
        const std::string angle_text = flag.substr(colon + 1);
        const double angle = std::strtod(angle_text.c_str(), &end);
        if (end == angle_text.c_str() || *end != '\0' || !std::isfinite(angle))
            throw InputError("--rotate angle must be a finite number of radians, got '"
                             + angle_text + "'");
        steps.push_back({axis, angle});
    }
    return steps;
}

ParsedState apply_rotations(ParsedState state, const std::vector<RotateStep>& steps) {
    for (const RotateStep& step : steps) {
        if (state.density) {
            state.density =
                state.density->rotated(rotation_about_axis(state.density->j(), step.axis, step.angle));
        } else {
            for (auto& sector : state.sectored->sectors)
                sector.state =
                    sector.state.rotated(rotation_about_axis(sector.state.j(), step.axis, step.angle));
        }
    }
    return state;
}

json parse_input_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw InputError(std::string(what) + ": " + err.what());
    }
}

struct CommonOptions {
    std::string state_path;
    std::string output_path;
    std::string format = "json";
    std::vector<std::string> rotate_flags;
};

int do_metrics(const CommonOptions& opt) {
    const json input = parse_input_json(read_file(opt.state_path), "state spec");
    const ParsedState state = apply_rotations(parse_state_json(input), parse_rotate_flags(opt.rotate_flags));
    json report = report_shell(input);
    report["metrics"] = metrics_to_json(compute_metrics(state));
    emit(report.dump(2), opt.output_path);
    return 0;
}

int do_decompose(const CommonOptions& opt) {
    const json input = parse_input_json(read_file(opt.state_path), "state spec");
    const ParsedState state = parse_state_json(input);
    if (state.is_sectored())
        throw InputError("decompose: tensor decomposition needs a fixed particle number");
    const std::vector<RotateStep> steps = parse_rotate_flags(opt.rotate_flags);

    const SphericalTensorBasis basis = build_tensor_basis(state.density->j());
    TensorDecomposition dec = decompose(*state.density, basis);

    json mass_sequence = json::array();
    mass_sequence.push_back(mass_to_json(mass_distribution(*state.density, basis)));
    DensityMatrix current = *state.density;
    for (const RotateStep& step : steps) {
        const Rotation r = rotation_about_axis(current.j(), step.axis, step.angle);
        dec = rotate_decomposition(dec, r);
        current = current.rotated(r);
        mass_sequence.push_back(mass_to_json(mass_distribution(current, basis)));
    }

    const MassDistribution final_mass = mass_distribution(current, basis);
    if (opt.format == "csv") {
        emit(mass_to_csv(final_mass), opt.output_path);
        return 0;
    }

    json report = report_shell(input);
    report["metrics"] = metrics_to_json(compute_metrics(ParsedState{state.kind, current, {}}));
    report["decomposition"] = decomposition_to_json(dec);
    report["mass"] = mass_to_json(final_mass);
    report["mass_sequence"] = std::move(mass_sequence);
    emit(report.dump(2), opt.output_path);
    return 0;
}

int do_innate(const CommonOptions& opt, int grid_points, double tol) {
    const json input = parse_input_json(read_file(opt.state_path), "state spec");
    const ParsedState state = apply_rotations(parse_state_json(input), parse_rotate_flags(opt.rotate_flags));
    if (state.is_sectored())
        throw InputError("innate: the rotation search needs a fixed particle number");
    const InnateResult result = innate_entanglement(*state.density, grid_points, tol);
    json report = report_shell(input);
    report["innate"] = innate_to_json(result, grid_points, tol);
    emit(report.dump(2), opt.output_path);
    return 0;
}

int do_estimate(const std::string& config_path, const std::string& output_path,
                bool seed_given, std::uint64_t seed) {
    const std::string text = read_file(config_path);
    ExperimentConfig config = parse_experiment_config(text);
    if (seed_given) config.master_seed = seed;
    const TrialStats stats = run_experiment(config);
    json report = report_shell(parse_input_json(text, "experiment config"));
    report["estimate"] = trial_stats_to_json(stats, config);
    emit(report.dump(2), output_path);
    return 0;
}

// ---- oracle-check ----------------------------------------------------------

Matrix random_density(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

Vector random_unit_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    for (int r = 0; r < dim; ++r) v[r] = Complex(gauss(rng), gauss(rng));
    return v / v.norm();
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0)
                               - std::lgamma(n - k + 1.0)));
}

class OracleCheck {
public:
    explicit OracleCheck(std::uint64_t seed) : rng_(seed) {}

    void check(const std::string& label, bool ok, double defect) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << label << "  (defect " << defect << ")\n";
        if (!ok) {
            failed_ = true;
            worst_ = label;
        }
    }

    int run(int max_qubits) {
        for (int n = 2; n <= max_qubits; ++n) run_for(n);
        if (failed_)
            throw NumericalError("oracle-check: tolerance breach in '" + worst_ + "'");
        return 0;
    }

private:
    void run_for(int n) {
        const JSectorDecomposition dec = j_sector_decomposition(n);
        const int dim = 1 << n;

        Matrix projector_sum = Matrix::Zero(dim, dim);
        int dimension_count = 0;
        bool degeneracies_ok = true;
        for (const auto& sector : dec.sectors) {
            projector_sum += sector.projector;
            dimension_count += (sector.two_j + 1) * sector.multiplicity;
            const int down = (n - sector.two_j) / 2;
            const double expected = binomial(n, down) - binomial(n, down - 1);
            if (sector.multiplicity != static_cast<int>(expected)) degeneracies_ok = false;
        }
        const double completeness =
            (projector_sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
        check("N=" + std::to_string(n) + " projector completeness", completeness < 1e-10,
              completeness);
        check("N=" + std::to_string(n) + " dimension count",
              dimension_count == dim, std::abs(dimension_count - dim));
        check("N=" + std::to_string(n) + " degeneracy formula", degeneracies_ok, 0.0);

        const Matrix rho = random_density(dim, rng_);
        const std::vector<double> weights = dec.weights(rho);
        double weight_sum = 0.0;
        for (double w : weights) weight_sum += w;
        check("N=" + std::to_string(n) + " sector weights sum", std::abs(weight_sum - 1.0) < 1e-10,
              std::abs(weight_sum - 1.0));

        // Global rotations commute with the sector projectors.
        std::uniform_real_distribution<double> angle(0.0, 3.0);
        const Matrix gen = std::cos(angle(rng_)) * collective_operator(n, 'x')
                         + std::sin(angle(rng_)) * collective_operator(n, 'z');
        const Matrix u = expi_hermitian(gen, angle(rng_));
        const std::vector<double> rotated = dec.weights(Matrix(u * rho * u.adjoint()));
        double invariance = 0.0;
        for (size_t k = 0; k < weights.size(); ++k)
            invariance = std::max(invariance, std::abs(weights[k] - rotated[k]));
        check("N=" + std::to_string(n) + " P_J rotation invariance", invariance < 1e-10, invariance);

        const double susceptibility = qfi_unitary(rho, collective_operator(n, 'z'));
        const double bound = pj_bound(dec, rho);
        check("N=" + std::to_string(n) + " susceptibility within P_J bound",
              susceptibility <= bound + 1e-9 && bound <= double(n) * n + 1e-9,
              std::max(susceptibility - bound, bound - double(n) * n));

        // Symmetric-subspace pipeline against the full product space.
        const PureState dicke_space(SpinQuantum(n), random_unit_vector(n + 1, rng_));
        const MultiQubitState embedded = symmetrize_embed(dicke_space);
        const double norm_defect = std::abs(embedded.amplitudes.norm() - 1.0);
        check("N=" + std::to_string(n) + " embedding isometry", norm_defect < 1e-12, norm_defect);
        const double qfi_small = qfi_unitary(DensityMatrix::from_pure(dicke_space).rho(),
                                             spin_operators(SpinQuantum(n)).jz);
        const double qfi_large =
            qfi_unitary(Matrix(embedded.amplitudes * embedded.amplitudes.adjoint()),
                        collective_operator(n, 'z'));
        check("N=" + std::to_string(n) + " Dicke vs product-space QFI",
              std::abs(qfi_small - qfi_large) < 1e-9, std::abs(qfi_small - qfi_large));

        if (n % 2 == 0) {
            const Matrix j_sq_op = collective_operator(n, 'x') * collective_operator(n, 'x')
                                 + collective_operator(n, 'y') * collective_operator(n, 'y')
                                 + collective_operator(n, 'z') * collective_operator(n, 'z');
            double residual = 0.0;
            for (int two_j = n; two_j >= 0; two_j -= std::max(2, n)) {
                const MultiQubitState eigenstate = singlet_eigenstate(n, two_j, std::min(two_j, 2));
                const double j_val = 0.5 * two_j;
                residual = std::max(
                    residual, (j_sq_op * eigenstate.amplitudes
                               - j_val * (j_val + 1.0) * eigenstate.amplitudes)
                                  .norm());
            }
            check("N=" + std::to_string(n) + " singlet construction", residual < 1e-10, residual);
        }
    }

    std::mt19937_64 rng_;
    bool failed_ = false;
    std::string worst_;
};

int do_oracle_check(std::uint64_t seed, int max_qubits) {
    if (max_qubits < 2 || max_qubits > kMaxOracleQubits)
        throw InputError("oracle-check: --max-qubits must lie in [2, 10]");
    return OracleCheck(seed).run(max_qubits);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"entanglement metrology for two-mode bosonic ensembles"};
    app.require_subcommand(1);

    CommonOptions opt;
    int grid_points = 400;
    double tol = 1e-8;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string config_path;
    int max_qubits = 6;

    const auto add_common = [&](CLI::App* cmd, bool needs_state) {
        if (needs_state)
            cmd->add_option("--state", opt.state_path, "state spec file (JSON)")->required();
        cmd->add_option("--output", opt.output_path, "write the report here instead of stdout");
        cmd->add_option("--format", opt.format, "json|csv")->default_val("json");
        cmd->add_option("--rotate", opt.rotate_flags,
                        "AXIS:ANGLE rotation applied to the state, repeatable, in order");
    };

    CLI::App* metrics = app.add_subcommand("metrics", "QFI, susceptibility, bounds, squeezing, QMI");
    add_common(metrics, true);

    CLI::App* decomp = app.add_subcommand("decompose", "spherical-tensor decomposition and masses");
    add_common(decomp, true);

    CLI::App* innate = app.add_subcommand("innate", "maximize susceptibility over rotations");
    add_common(innate, true);
    innate->add_option("--grid", grid_points, "axis grid points")->default_val(400);
    innate->add_option("--tol", tol, "refinement tolerance")->default_val(1e-8);

    CLI::App* estimate = app.add_subcommand("estimate", "Monte-Carlo interferometry run");
    estimate->add_option("--config", config_path, "experiment config file (JSON)")->required();
    estimate->add_option("--output", opt.output_path, "write the report here instead of stdout");
    estimate->add_option("--seed", seed, "override the config master seed")
        ->each([&](const std::string&) { seed_given = true; });

    CLI::App* oracle = app.add_subcommand("oracle-check", "brute-force multi-qubit cross-checks");
    oracle->add_option("--seed", seed, "RNG seed for the random-state checks")->default_val(1);
    oracle->add_option("--max-qubits", max_qubits, "largest N to cross-check (<= 10)")
        ->default_val(6);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& help) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& err) {
        std::cerr << "error: input: " << err.what() << "\n";
        return 1;
    }

    try {
        if (opt.format != "json" && opt.format != "csv")
            throw InputError("--format must be json or csv");
        if (opt.format == "csv" && !decomp->parsed())
            throw InputError("--format csv is only available for decompose (mass table)");
        if (metrics->parsed()) return do_metrics(opt);
        if (decomp->parsed()) return do_decompose(opt);
        if (innate->parsed()) return do_innate(opt, grid_points, tol);
        if (estimate->parsed()) return do_estimate(config_path, opt.output_path, seed_given, seed);
        if (oracle->parsed()) return do_oracle_check(seed, max_qubits);
        throw InputError("no subcommand given");
    } catch (const InputError& err) {
        std::cerr << "error: input: " << err.what() << "\n";
        return 1;
    } catch (const NumericalError& err) {
        std::cerr << "error: numerical: " << err.what() << "\n";
        return 2;
    }
}

}  // namespace spinmet
