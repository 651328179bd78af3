#include "mixedpowers/io.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

using bmp::exp;
using json = nlohmann::ordered_json;

namespace {

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

RationalPoly poly_from_strings(const json& arr, const char* what) {
    if (!arr.is_array())
        throw ConstraintViolation(std::string("descriptor: ") + what +
                                  " must be an array of coefficient strings");
    std::vector<Rational> coeffs;
    for (const auto& c : arr) {
        if (!c.is_string())
            throw ConstraintViolation(std::string("descriptor: ") + what +
                                      " coefficients must be strings");
        coeffs.push_back(parse_rational(c.get<std::string>()));
    }
    return RationalPoly(std::move(coeffs));
}

NormSpec norm_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConstraintViolation("descriptor: norm needs a \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "linf") return NormSpec::linf();
    if (kind == "wl1") {
        if (!j.contains("weights"))
            throw ConstraintViolation("descriptor: wl1 norm needs \"weights\"");
        std::vector<Rational> w;
        for (const auto& s : j.at("weights")) w.push_back(parse_rational(s.get<std::string>()));
        return NormSpec::wl1(std::move(w));
    }
    throw ConstraintViolation("descriptor: unknown norm kind '" + kind + "'");
}

json rational_array(const RationalPoly& p) {
    json arr = json::array();
    for (long i = 0; i <= p.degree(); ++i) arr.push_back(p.coeff(i).str());
    if (p.degree() < 0) arr.push_back("0");
    return arr;
}

std::string format_real(const Real& x) { return real_str(x, 30); }

const char* estimate_method_label(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::auto_select: return "auto";
        case EstimateMethod::gaussian: return "gaussian";
        case EstimateMethod::quadrature: return "quadrature";
        case EstimateMethod::small_limit: return "small-limit";
    }
    return "?";
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string t = trimmed(text);
    if (t.empty()) throw ConstraintViolation("parse_rational: empty string");
    std::string num = t, den = "1";
    if (size_t slash = t.find('/'); slash != std::string::npos) {
        num = trimmed(t.substr(0, slash));
        den = trimmed(t.substr(slash + 1));
    }
    auto valid = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!valid(num) || !valid(den))
        throw ConstraintViolation("parse_rational: bad rational '" + text + "'");
    BigInt d(den.c_str());
    if (d == 0) throw ConstraintViolation("parse_rational: zero denominator in '" + text + "'");
    // divide rather than parse "a/b" directly: division canonicalizes
    return Rational(BigInt(num.c_str())) / Rational(d);
}

SystemDescriptor parse_system_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConstraintViolation(std::string("descriptor: not valid JSON: ") + e.what());
    }
    try {
        if (!j.contains("factors"))
            throw ConstraintViolation("descriptor: missing \"factors\"");
        std::vector<RationalPoly> polys;
        int idx = 1;
        for (const auto& f : j.at("factors"))
            polys.push_back(poly_from_strings(f, ("factor " + std::to_string(idx++)).c_str()));
        std::optional<RationalPoly> amplitude;
        if (j.contains("amplitude"))
            amplitude = poly_from_strings(j.at("amplitude"), "amplitude");
        if (!j.contains("norm")) throw ConstraintViolation("descriptor: missing \"norm\"");
        SystemDescriptor sd{make_system(std::move(polys), std::move(amplitude)),
                            norm_from_json(j.at("norm"))};
        if (sd.norm.kind == NormKind::weighted_l1 &&
            static_cast<int>(sd.norm.weights.size()) != sd.system.m() + 1)
            throw ConstraintViolation("descriptor: wl1 weights must have m+1 entries");
        return sd;
    } catch (const json::exception& e) {
        throw ConstraintViolation(std::string("descriptor: ") + e.what());
    }
}

SystemDescriptor load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConstraintViolation("load_system_file: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system_json(ss.str());
}

std::string system_to_json(const FunctionSystem& system, const NormSpec& norm) {
    json j;
    json factors = json::array();
    for (const auto& f : system.factors) {
        const RationalPoly* p = f->poly();
        if (p == nullptr)
            throw ConstraintViolation("system_to_json: non-polynomial factor");
        factors.push_back(rational_array(*p));
    }
    j["factors"] = std::move(factors);
    if (system.amplitude) {
        const RationalPoly* p = system.amplitude->poly();
        if (p == nullptr)
            throw ConstraintViolation("system_to_json: non-polynomial amplitude");
        j["amplitude"] = rational_array(*p);
    }
    if (norm.kind == NormKind::l_infinity) {
        j["norm"] = json{{"kind", "linf"}};
    } else {
        json w = json::array();
        for (const auto& x : norm.weights) w.push_back(x.str());
        j["norm"] = json{{"kind", "wl1"}, {"weights", std::move(w)}};
    }
    return j.dump();
}

std::string system_digest(const FunctionSystem& system, const NormSpec& norm) {
    // FNV-1a, 64 bit; stable across platforms for identical descriptors
    std::string s = system_to_json(system, norm);
    unsigned long long h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

std::string coefficient_to_json(const BigCoefficient& c) {
    json j;
    j["value"] = c.value.str();
    j["sign"] = c.sign;
    j["log_abs"] = format_real(c.log_abs);
    return j.dump();
}

const char* regime_name(Regime r) {
    return r == Regime::large_exponent ? "large-exponent" : "small-exponent";
}

const char* method_name(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::gaussian: return "gaussian";
        case Method::small_limit: return "small-limit";
        case Method::exact: return "exact";
    }
    return "?";
}

std::string estimate_to_json(const AsymptoticEstimate& e) {
    json d;
    d["nz_product"] = format_real(e.diagnostics.nz_product);
    d["c2"] = format_real(e.diagnostics.c2);
    if (e.diagnostics.epsilon) d["epsilon"] = format_real(*e.diagnostics.epsilon);
    if (e.diagnostics.tail_bound) d["tail_bound"] = format_real(*e.diagnostics.tail_bound);
    json j;
    j["sign"] = e.sign;
    j["log_abs"] = format_real(e.log_abs);
    j["regime"] = regime_name(e.regime);
    j["method"] = method_name(e.method);
    j["diagnostics"] = std::move(d);
    return j.dump();
}

std::string critical_point_to_json(const CriticalPoint& cp) {
    json j;
    j["z"] = format_real(cp.z);
    j["residual"] = format_real(cp.residual);
    j["minimality_margin"] = format_real(cp.minimality_margin);
    j["strictly_minimal"] = cp.strictly_minimal;
    return j.dump();
}

std::string phase_expansion_to_json(const PhaseExpansion& pe) {
    json j;
    j["z"] = format_real(pe.z_critical.z);
    j["order"] = pe.order;
    json coeffs = json::array();
    for (int k = 2; k <= pe.order; ++k) {
        json c;
        c["k"] = k;
        c["re"] = format_real(pe.c(k).re);
        c["im"] = format_real(pe.c(k).im);
        coeffs.push_back(std::move(c));
    }
    j["coefficients"] = std::move(coeffs);
    return j.dump();
}

std::string theorem2_report_to_json(const Theorem2Report& r) {
    json j;
    j["a_pass"] = r.a_pass;
    j["b_pass"] = r.b_pass;
    j["b_vacuous"] = r.b_vacuous;
    j["c_pass"] = r.c_pass;
    j["all_pass"] = r.all_pass();
    j["f0_abs"] = format_real(r.f0_abs);
    j["f0_prime_abs"] = format_real(r.f0_prime_abs);
    if (r.b_witness) j["b_witness"] = format_real(*r.b_witness);
    if (r.c_witness) j["c_witness"] = format_real(*r.c_witness);
    return j.dump();
}

// ---------------------------------------------------------------------------
// sweep harness

SweepSpec load_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConstraintViolation("load_sweep_file: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw ConstraintViolation(std::string("sweep: not valid JSON: ") + e.what());
    }
    try {
        SweepSpec spec;
        // the system may be embedded, but cmd_verify supplies it as a separate
        // file and overwrites the descriptor; width consistency is checked
        // here between rows and again in run_sweep against the actual system
        int width = -1;
        if (j.contains("system")) {
            spec.descriptor = parse_system_json(j.at("system").dump());
            width = spec.descriptor.system.m() + 1;
        }

        auto read_vector = [&width](const json& arr) {
            if (!arr.is_array())
                throw ConstraintViolation("sweep: exponent vectors must be arrays");
            if (width < 0) width = static_cast<int>(arr.size());
            if (static_cast<int>(arr.size()) != width)
                throw ConstraintViolation("sweep: each exponent vector needs m+1 entries");
            ExponentVector n;
            for (const auto& v : arr) n.n.push_back(v.get<long>());
            return n;
        };
        if (j.contains("instances")) {
            for (const auto& row : j.at("instances")) spec.instances.push_back(read_vector(row));
        }
        if (j.contains("base")) {
            ExponentVector base = read_vector(j.at("base"));
            if (!j.contains("multipliers"))
                throw ConstraintViolation("sweep: \"base\" needs \"multipliers\"");
            for (const auto& mv : j.at("multipliers")) {
                long mult = mv.get<long>();
                ExponentVector n = base;
                for (auto& c : n.n) c *= mult;
                spec.instances.push_back(std::move(n));
            }
        }
        if (spec.instances.empty())
            throw ConstraintViolation("sweep: no instances (need \"instances\" or \"base\")");

        if (j.contains("method")) {
            std::string m = j.at("method").get<std::string>();
            if (m == "auto") spec.method = EstimateMethod::auto_select;
            else if (m == "gaussian") spec.method = EstimateMethod::gaussian;
            else if (m == "quadrature") spec.method = EstimateMethod::quadrature;
            else if (m == "small-limit") spec.method = EstimateMethod::small_limit;
            else throw ConstraintViolation("sweep: unknown method '" + m + "'");
        }
        if (j.contains("tolerance")) {
            const json& t = j.at("tolerance");
            std::string kind = t.at("kind").get<std::string>();
            if (kind == "rel") {
                spec.tolerance = SweepSpec::ToleranceKind::rel;
                const json& v = t.at("value");
                spec.tolerance_value =
                    v.is_string() ? Real(v.get<std::string>()) : Real(v.get<double>());
            } else if (kind == "monotone") {
                spec.tolerance = SweepSpec::ToleranceKind::monotone;
            } else {
                throw ConstraintViolation("sweep: unknown tolerance kind '" + kind + "'");
            }
        }
        return spec;
    } catch (const json::exception& e) {
        throw ConstraintViolation(std::string("sweep: ") + e.what());
    }
}

namespace {

BigCoefficient sweep_exact(const FunctionSystem& system, const ExponentVector& n) {
    ReduceResult red = reduce_vanishing(system, n);
    if (red.coefficient_is_zero) return BigCoefficient::of(Rational(0));
    return coeff_of_product(red.n.n0(),
                            oracle_factors(red.system, red.n, red.n.n0()));
}

AsymptoticEstimate sweep_estimate(const FunctionSystem& system, const ExponentVector& n,
                                  const NormSpec& norm, EstimateMethod method) {
    switch (method) {
        case EstimateMethod::auto_select: return estimate_auto(system, n, norm);
        case EstimateMethod::gaussian: return gaussian_leading(system, n, norm);
        case EstimateMethod::small_limit: return small_exponent_limit(system, n, norm);
        case EstimateMethod::quadrature: {
            Direction d = direction_of(n, norm);
            CriticalPoint zc = solve_critical(system, d);
            if (norm_of(n, norm) * zc.z > 32) {
                try {
                    return integral_large(system, n, norm, choose_epsilon(system, d));
                } catch (const NoValidEpsilon&) {
                }
            }
            return integral_small(system, n, norm);
        }
    }
    throw ConstraintViolation("sweep: unknown method");
}

Real relative_error(const BigCoefficient& exact, const AsymptoticEstimate& est) {
    if (exact.sign == 0) return est.sign == 0 ? Real(0) : real_infinity();
    if (est.sign == 0) return Real(1);
    Real ratio = exp(est.log_abs - exact.log_abs);
    if (est.sign != exact.sign) return ratio + 1;
    return bmp::abs(ratio - 1);
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec, int jobs, bool stamp) {
    const FunctionSystem& system = spec.descriptor.system;
    const NormSpec& norm = spec.descriptor.norm;
    if (system.factors.empty())
        throw ConstraintViolation("run_sweep: no system (sweep file had none embedded)");
    for (const ExponentVector& n : spec.instances)
        if (static_cast<int>(n.n.size()) != system.m() + 1)
            throw ConstraintViolation("run_sweep: exponent vector width does not match system");

    // report rows are sorted by ||n|| (ties keep listing order), so monotone
    // tolerances read as convergence along the family
    std::vector<ExponentVector> instances = spec.instances;
    std::stable_sort(instances.begin(), instances.end(),
                     [&norm](const ExponentVector& a, const ExponentVector& b) {
                         return norm_of(a, norm) < norm_of(b, norm);
                     });

    size_t count = instances.size();
    std::vector<SweepRow> rows(count);
    std::vector<std::exception_ptr> failures(count);

    auto work_one = [&](size_t i) {
        try {
            SweepRow& row = rows[i];
            row.n = instances[i];
            row.exact = sweep_exact(system, row.n);
            row.estimate = sweep_estimate(system, row.n, norm, spec.method);
            row.rel_error = relative_error(row.exact, row.estimate);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) work_one(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                work_one(i);
            }
        };
        std::vector<std::thread> pool;
        int width = jobs < static_cast<int>(count) ? jobs : static_cast<int>(count);
        for (int t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // deterministic error reporting: the first failing row wins regardless of
    // which worker hit it
    for (size_t i = 0; i < count; ++i)
        if (failures[i]) std::rethrow_exception(failures[i]);

    SweepReport report;
    report.rows = std::move(rows);
    report.system_digest = system_digest(system, norm);
    report.norm_name = norm.kind == NormKind::l_infinity ? "linf" : "wl1";
    report.method_name = estimate_method_label(spec.method);
    report.precision_bits = precision_bits();
    if (stamp) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        report.timestamp = buf;
    }
    if (spec.tolerance == SweepSpec::ToleranceKind::rel) {
        for (size_t i = 0; i < report.rows.size(); ++i)
            if (!(report.rows[i].rel_error < spec.tolerance_value)) {
                report.first_violation = static_cast<int>(i);
                break;
            }
    } else if (spec.tolerance == SweepSpec::ToleranceKind::monotone) {
        for (size_t i = 1; i < report.rows.size(); ++i)
            if (!(report.rows[i].rel_error < report.rows[i - 1].rel_error)) {
                report.first_violation = static_cast<int>(i);
                break;
            }
    }
    return report;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
    os << "# system: " << report.system_digest << "\n";
    os << "# norm: " << report.norm_name << "\n";
    os << "# method: " << report.method_name << "\n";
    os << "# precision_bits: " << report.precision_bits << "\n";
    if (!report.timestamp.empty()) os << "# timestamp: " << report.timestamp << "\n";
    os << "n,exact,estimate,rel_error,regime,nz_product,c2\n";
    for (const SweepRow& row : report.rows) {
        os << '"';
        for (size_t i = 0; i < row.n.n.size(); ++i) {
            if (i) os << ' ';
            os << row.n.n[i];
        }
        os << "\",";
        os << row.exact.value.str() << ',';
        Real est = row.estimate.sign == 0 ? Real(0)
                                          : Real(row.estimate.sign) * exp(row.estimate.log_abs);
        os << real_str(est, 17) << ',';
        os << real_str(row.rel_error, 6) << ',';
        os << regime_name(row.estimate.regime) << ',';
        os << real_str(row.estimate.diagnostics.nz_product, 10) << ',';
        os << real_str(row.estimate.diagnostics.c2, 10) << '\n';
    }
}

}  // namespace mixedpowers
