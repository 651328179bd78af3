// command-line front end: oracle / critical / phase / estimate / verify / app
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixedpowers/errors.hpp"
#include "mixedpowers/io.hpp"

using namespace mixedpowers;
using ordered_json = nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 2 validation, 3 domain, 4 coalescence, 5 tolerance
constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kDomain = 3;
constexpr int kCoalescence = 4;
constexpr int kTolerance = 5;

ExponentVector to_exponents(const std::vector<long>& raw) {
    ExponentVector n;
    n.n = raw;
    return n;
}

EstimateMethod parse_method(const std::string& name) {
    if (name == "auto") return EstimateMethod::auto_select;
    if (name == "gaussian") return EstimateMethod::gaussian;
    if (name == "quadrature") return EstimateMethod::quadrature;
    if (name == "small-limit") return EstimateMethod::small_limit;
    throw ConstraintViolation("unknown method '" + name + "'");
}

Direction direction_from_args(const SystemDescriptor& sd, const std::vector<std::string>& comps) {
    if (static_cast<int>(comps.size()) != sd.system.m() + 1)
        throw ConstraintViolation("direction needs m+1 = " + std::to_string(sd.system.m() + 1) +
                                  " components");
    std::vector<Real> d;
    for (const auto& s : comps) d.emplace_back(s.c_str());
    // accept unnormalized input; the direction type requires ||d|| = 1
    Real norm = sd.norm.norm(d);
    if (!(norm > 0)) throw ConstraintViolation("direction must be nonzero");
    for (auto& x : d) x /= norm;
    return make_direction(std::move(d), sd.norm);
}

AsymptoticEstimate run_estimate(const SystemDescriptor& sd, const ExponentVector& n,
                                EstimateMethod method, const std::string& epsilon) {
    if (!epsilon.empty())
        return integral_large(sd.system, n, sd.norm, Real(epsilon.c_str()));
    switch (method) {
        case EstimateMethod::auto_select: return estimate_auto(sd.system, n, sd.norm);
        case EstimateMethod::gaussian: return gaussian_leading(sd.system, n, sd.norm);
        case EstimateMethod::small_limit: return small_exponent_limit(sd.system, n, sd.norm);
        case EstimateMethod::quadrature: {
            Direction d = direction_of(n, sd.norm);
            CriticalPoint zc = solve_critical(sd.system, d);
            if (norm_of(n, sd.norm) * zc.z > 32) {
                try {
                    return integral_large(sd.system, n, sd.norm, choose_epsilon(sd.system, d));
                } catch (const NoValidEpsilon&) {
                }
            }
            return integral_small(sd.system, n, sd.norm);
        }
    }
    throw ConstraintViolation("unknown method");
}

BigCoefficient oracle_value(const FunctionSystem& system, const ExponentVector& n) {
    ReduceResult red = reduce_vanishing(system, n);
    if (red.coefficient_is_zero) return BigCoefficient::of(Rational(0));
    return coeff_of_product(red.n.n0(), oracle_factors(red.system, red.n, red.n.n0()));
}

void emit_density_table(std::ostream& os) {
    // x from -8 to 10 in steps of 1/20: covers the mass of the density and
    // includes x = 0 exactly
    os << "x,density\n";
    for (long i = -160; i <= 200; ++i) {
        Real x = Real(i) / 20;
        os << real_str(x, 6) << ',' << real_str(map_airy_density(x), 17) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and asymptotic coefficients of mixed powers of generating functions"};
    app.require_subcommand(1);

    long precision = 128;
    if (const char* env = std::getenv("MIXEDPOWERS_PRECISION")) {
        char* end = nullptr;
        long p = std::strtol(env, &end, 10);
        if (end && *end == '\0' && p > 0) precision = p;
    }
    app.add_option("--precision", precision, "mantissa bits for all computation")
        ->capture_default_str();

    // oracle ---------------------------------------------------------------
    std::string system_file;
    std::vector<long> exponents;
    bool reduce = false;
    auto* oracle = app.add_subcommand("oracle", "exact coefficient of one exponent vector");
    oracle->add_option("system", system_file, "system descriptor (JSON)")->required();
    oracle->add_option("n", exponents, "exponent vector n0 n1 ... nm")->required();
    oracle->add_flag("--reduce", reduce, "strip factors vanishing at 0 first");

    // critical -------------------------------------------------------------
    std::vector<std::string> dir_components;
    auto* critical = app.add_subcommand("critical", "critical point of one direction");
    critical->add_option("system", system_file, "system descriptor (JSON)")->required();
    critical->add_option("d", dir_components, "direction components (normalized if needed)")
        ->required();

    // phase ----------------------------------------------------------------
    int order = 5;
    int grid_points = 101;
    auto* phase = app.add_subcommand("phase", "phase-term expansion and Theorem-2 checks");
    phase->add_option("system", system_file, "system descriptor (JSON)")->required();
    phase->add_option("d", dir_components, "direction components (normalized if needed)")
        ->required();
    phase->add_option("--order", order, "highest Taylor coefficient")->capture_default_str();
    phase->add_option("--grid", grid_points, "theta grid points on [-pi, pi]")
        ->capture_default_str();

    // estimate ---------------------------------------------------------------
    std::string method_name_arg = "auto";
    std::string epsilon_arg;
    auto* estimate = app.add_subcommand("estimate", "asymptotic estimate of one coefficient");
    estimate->add_option("system", system_file, "system descriptor (JSON)")->required();
    estimate->add_option("n", exponents, "exponent vector n0 n1 ... nm")->required();
    estimate->add_option("--method", method_name_arg, "auto|gaussian|quadrature|small-limit")
        ->capture_default_str();
    estimate->add_option("--epsilon", epsilon_arg,
                         "arc half-width: force the truncated integral representation");

    // verify -----------------------------------------------------------------
    std::string sweep_file, csv_out;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    bool stamp = false;
    auto* verify = app.add_subcommand("verify", "sweep a family and write a CSV report");
    verify->add_option("system", system_file, "system descriptor (JSON)")->required();
    verify->add_option("sweep", sweep_file, "sweep spec (JSON)")->required();
    verify->add_option("output", csv_out, "output CSV path ('-' for stdout)")->required();
    verify->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    verify->add_flag("--stamp", stamp, "include a timestamp in the CSV header");

    // app ----------------------------------------------------------------------
    auto* appcmd = app.add_subcommand("app", "canned application pipelines");
    appcmd->require_subcommand(1);
    std::vector<long> query;
    std::string density_out;
    auto* triv = appcmd->add_subcommand("trivariate", "constrained-word counts c(n,k,t)");
    triv->add_option("q", query, "query n k t")->expected(3);
    triv->add_option("--method", method_name_arg, "auto|gaussian|quadrature|small-limit")
        ->capture_default_str();
    auto* planar = appcmd->add_subcommand("planar-core", "core-size coefficients T(n,k)");
    planar->add_option("q", query, "query n k")->expected(2);
    planar->add_option("--method", method_name_arg, "auto|gaussian|quadrature|small-limit")
        ->capture_default_str();
    planar->add_option("--emit-density-table", density_out,
                       "also write the map-Airy density table CSV ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (precision < 24 || precision > 8192) {
            std::cerr << "error: precision must lie in [24, 8192]\n";
            return kValidation;
        }
        set_precision_bits(static_cast<unsigned>(precision));

        if (*oracle) {
            SystemDescriptor sd = load_system_file(system_file);
            if (!reduce) validate(sd.system);
            std::cout << coefficient_to_json(oracle_value(sd.system, to_exponents(exponents)))
                      << "\n";
        } else if (*critical) {
            SystemDescriptor sd = load_system_file(system_file);
            validate(sd.system);
            Direction d = direction_from_args(sd, dir_components);
            CriticalPoint cp = solve_critical(sd.system, d);
            std::cout << critical_point_to_json(cp) << "\n";
        } else if (*phase) {
            SystemDescriptor sd = load_system_file(system_file);
            validate(sd.system);
            Direction d = direction_from_args(sd, dir_components);
            PhaseExpansion pe = taylor_F(sd.system, d, order);
            std::vector<Real> grid;
            for (int i = 0; i < grid_points; ++i)
                grid.push_back(pi() * (2 * Real(i) / (grid_points - 1) - 1));
            Theorem2Report rep = check_theorem2(sd.system, d, grid);
            ordered_json out;
            out["expansion"] = ordered_json::parse(phase_expansion_to_json(pe));
            out["theorem2"] = ordered_json::parse(theorem2_report_to_json(rep));
            std::cout << out.dump() << "\n";
        } else if (*estimate) {
            SystemDescriptor sd = load_system_file(system_file);
            validate(sd.system);
            AsymptoticEstimate est = run_estimate(sd, to_exponents(exponents),
                                                  parse_method(method_name_arg), epsilon_arg);
            std::cout << estimate_to_json(est) << "\n";
        } else if (*verify) {
            SweepSpec spec = load_sweep_file(sweep_file);
            spec.descriptor = load_system_file(system_file);
            validate(spec.descriptor.system);
            SweepReport report = run_sweep(spec, jobs, stamp);
            if (csv_out == "-") {
                write_sweep_csv(std::cout, report);
            } else {
                std::ofstream out(csv_out);
                if (!out) throw ConstraintViolation("cannot open output file " + csv_out);
                write_sweep_csv(out, report);
            }
            if (report.first_violation >= 0) {
                const SweepRow& bad = report.rows[static_cast<size_t>(report.first_violation)];
                std::cerr << "tolerance violated at row " << report.first_violation << " (n =";
                for (long c : bad.n.n) std::cerr << ' ' << c;
                std::cerr << ", rel_error = " << real_str(bad.rel_error, 6) << ")\n";
                return kTolerance;
            }
        } else if (*triv) {
            TrivariateQuery q{query[0], query[1], query[2]};
            ordered_json out;
            out["exact"] = ordered_json::parse(coefficient_to_json(trivariate_exact(q)));
            out["estimate"] = ordered_json::parse(
                estimate_to_json(trivariate_estimate(q, parse_method(method_name_arg))));
            std::cout << out.dump() << "\n";
        } else if (*planar) {
            PlanarCoreQuery q{query[0], query[1]};
            ordered_json out;
            out["exact"] = ordered_json::parse(coefficient_to_json(planar_core_exact(q)));
            out["estimate"] = ordered_json::parse(
                estimate_to_json(planar_core_estimate(q, parse_method(method_name_arg))));
            CoalescenceDiagnostic diag = coalescence_diagnostic(q);
            out["coalescence"] = {{"c2", real_str(diag.c2, 30)},
                                  {"window_coord", real_str(diag.window_coord, 30)}};
            std::cout << out.dump() << "\n";
            if (!density_out.empty()) {
                if (density_out == "-") {
                    emit_density_table(std::cout);
                } else {
                    std::ofstream dout(density_out);
                    if (!dout)
                        throw ConstraintViolation("cannot open output file " + density_out);
                    emit_density_table(dout);
                }
            }
        }
        return kOk;
    } catch (const ConstraintViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const CoalescenceError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: --method quadrature stays valid through the coalescing window\n";
        return kCoalescence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
}
