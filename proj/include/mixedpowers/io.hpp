#pragma once
#include <iosfwd>
#include <string>

#include "mixedpowers/applications.hpp"

namespace mixedpowers {

// JSON system descriptor:
//   {"factors": [["1","1"], ["1","2"]],
//    "amplitude": ["1","-2"],            (optional)
//    "norm": {"kind":"wl1","weights":["1","1","2"]} | {"kind":"linf"}}
// Coefficient strings are exact rationals ("1", "-3", "2/5"), lowest degree
// first.
struct SystemDescriptor {
    FunctionSystem system;
    NormSpec norm;
};

SystemDescriptor parse_system_json(const std::string& text);
SystemDescriptor load_system_file(const std::string& path);
std::string system_to_json(const FunctionSystem& system, const NormSpec& norm);
// stable content digest of a descriptor (for sweep metadata)
std::string system_digest(const FunctionSystem& system, const NormSpec& norm);

Rational parse_rational(const std::string& text);  // canonicalizes "4/10" -> "2/5"

std::string coefficient_to_json(const BigCoefficient& c);
std::string estimate_to_json(const AsymptoticEstimate& e);
std::string critical_point_to_json(const CriticalPoint& cp);
std::string phase_expansion_to_json(const PhaseExpansion& pe);
std::string theorem2_report_to_json(const Theorem2Report& r);

const char* regime_name(Regime r);
const char* method_name(Method m);

// ---------------------------------------------------------------------------
// Sweep harness (cmd_verify): run a list of exponent vectors (or a base
// vector scaled by multipliers) through the oracle and one estimate method,
// and write one CSV row per instance. Tolerances: "rel <value>" requires
// every row's rel_error below value; "monotone" requires rel_error strictly
// decreasing in listing order.

struct SweepSpec {
    SystemDescriptor descriptor;
    std::vector<ExponentVector> instances;
    EstimateMethod method = EstimateMethod::auto_select;
    enum class ToleranceKind { none, rel, monotone } tolerance = ToleranceKind::none;
    Real tolerance_value;
};

SweepSpec load_sweep_file(const std::string& path);

struct SweepRow {
    ExponentVector n;
    BigCoefficient exact;
    AsymptoticEstimate estimate;
    Real rel_error;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::string system_digest;
    std::string norm_name;
    std::string method_name;
    unsigned precision_bits;
    std::string timestamp;  // empty unless stamping was requested
    int first_violation = -1;
};

SweepReport run_sweep(const SweepSpec& spec, int jobs, bool stamp);
void write_sweep_csv(std::ostream& os, const SweepReport& report);

}  // namespace mixedpowers
