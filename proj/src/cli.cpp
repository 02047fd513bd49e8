#include "fedsat/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

#include "fedsat/json_io.hpp"
#include "fedsat/metrics.hpp"

namespace fedsat {
namespace cli {

namespace {

using nlohmann::ordered_json;

bool stderr_is_tty() { return isatty(fileno(stderr)) == 1; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scn::ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void print_compliance_table(const std::vector<fom::ComplianceResult>& compliance) {
    if (!stderr_is_tty()) return;
    for (const auto& r : compliance)
        std::fprintf(stderr, "%-4s  %-30s  %-12s  observed %14.4f  threshold %14.4f %s\n",
                     r.pass ? "PASS" : "FAIL", r.rule.c_str(), r.subject.c_str(), r.observed,
                     r.threshold, r.unit.c_str());
}

ordered_json finite_or_null(double v) {
    if (std::isinf(v) || std::isnan(v)) return nullptr;
    return v;
}

int fail(const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
}

} // namespace

int run_simulate(const SimulateOptions& options) {
    try {
        const std::string bytes = read_file(options.scenario_path);
        scn::Scenario scenario = scn::parse_scenario(bytes);
        if (options.step_s) scenario.grid.step_s = *options.step_s;
        if (options.horizon_s) scenario.grid.end_s = *options.horizon_s;
        if (auto violations = scn::validate_scenario(scenario); !violations.empty()) {
            for (const auto& v : violations)
                std::fprintf(stderr, "invalid scenario: [%s] %s: %s\n", v.rule.c_str(),
                             v.subject_id.c_str(), v.message.c_str());
            return 2;
        }

        const fom::Evaluation ev = fom::evaluate(scenario);

        std::filesystem::create_directories(options.out_dir);
        const std::string windows_path = options.out_dir + "/windows.csv";
        const std::string metrics_path = options.out_dir + "/metrics.json";
        write_file(windows_path, access::windows_csv(ev.access.windows));
        write_file(metrics_path, io::report_json(ev.report, ev.compliance));
        if (options.format == "csv") {
            write_file(options.out_dir + "/per_dcp.csv", io::per_dcp_csv(ev.report));
            write_file(options.out_dir + "/per_satellite.csv",
                       io::per_satellite_csv(ev.report));
        }

        int passed = 0, failed = 0;
        for (const auto& r : ev.compliance) (r.pass ? passed : failed)++;
        const int exit_code = failed == 0 ? 0 : 1;

        ordered_json report{
            {"scenario_digest", io::content_digest(bytes)},
            {"windows_csv_path", windows_path},
            {"metrics_json_path", metrics_path},
            {"compliance_summary", {{"passed", passed}, {"failed", failed}}},
            {"exit_code", exit_code},
            {"overrides",
             {{"step_s", options.step_s ? ordered_json(*options.step_s) : ordered_json(nullptr)},
              {"horizon_s",
               options.horizon_s ? ordered_json(*options.horizon_s) : ordered_json(nullptr)},
              {"format", options.format}}}};
        std::cout << report.dump(2) << "\n";
        print_compliance_table(ev.compliance);
        return exit_code;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

int run_admit(const std::string& scenario_path, const std::string& candidate_path) {
    try {
        const scn::Scenario scenario = scn::load_scenario(scenario_path);
        const scn::Satellite candidate = scn::load_satellite(candidate_path);
        const fed::AdmissionDecision decision = fed::evaluate_candidate(scenario, candidate);
        std::cout << io::admission_json(decision);
        print_compliance_table(decision.failed_rules);
        return decision.accepted ? 0 : 1;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

int run_retire(const std::string& scenario_path) {
    try {
        const scn::Scenario scenario = scn::load_scenario(scenario_path);
        const fed::RetirementPlan plan = fed::retire_minimal_impact(scenario);
        std::cout << io::retirement_json(plan);
        return plan.still_compliant ? 0 : 1;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

int run_fault(const std::string& scenario_path, const std::string& failed_id,
              double fault_time_s) {
    try {
        const scn::Scenario scenario = scn::load_scenario(scenario_path);
        const fed::ReconfigurationResult result =
            fed::reconfigure_on_fault(scenario, failed_id, fault_time_s);
        std::cout << io::reconfiguration_json(result);
        return result.compliant_after ? 0 : 1;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

int run_compare(const std::string& scenario_a, const std::string& scenario_b) {
    try {
        const scn::Scenario sa = scn::load_scenario(scenario_a);
        const scn::Scenario sb = scn::load_scenario(scenario_b);
        const fom::Evaluation ea = fom::evaluate(sa);
        const fom::Evaluation eb = fom::evaluate(sb);

        std::vector<std::string> ids;
        for (const auto& d : sa.dcps) ids.push_back(d.id);
        for (const auto& d : sb.dcps)
            if (!sa.find_dcp(d.id)) ids.push_back(d.id);
        std::sort(ids.begin(), ids.end());

        ordered_json per_dcp = ordered_json::object();
        for (const auto& id : ids) {
            auto ia = ea.report.per_dcp.find(id);
            auto ib = eb.report.per_dcp.find(id);
            ordered_json row;
            row["a"] = ia == ea.report.per_dcp.end()
                           ? ordered_json(nullptr)
                           : ordered_json{{"temporal_coverage_fraction",
                                           ia->second.temporal_coverage_fraction},
                                          {"max_revisit_s",
                                           finite_or_null(ia->second.max_revisit_s)}};
            row["b"] = ib == eb.report.per_dcp.end()
                           ? ordered_json(nullptr)
                           : ordered_json{{"temporal_coverage_fraction",
                                           ib->second.temporal_coverage_fraction},
                                          {"max_revisit_s",
                                           finite_or_null(ib->second.max_revisit_s)}};
            if (ia != ea.report.per_dcp.end() && ib != eb.report.per_dcp.end()) {
                row["coverage_delta"] = ib->second.temporal_coverage_fraction -
                                        ia->second.temporal_coverage_fraction;
                const bool finite = !std::isinf(ia->second.max_revisit_s) &&
                                    !std::isinf(ib->second.max_revisit_s);
                row["max_revisit_delta_s"] =
                    finite ? ordered_json(ib->second.max_revisit_s - ia->second.max_revisit_s)
                           : ordered_json(nullptr);
            } else {
                row["coverage_delta"] = nullptr;
                row["max_revisit_delta_s"] = nullptr;
            }
            per_dcp[id] = row;
        }

        ordered_json j{{"scenario_a", scenario_a},
                       {"scenario_b", scenario_b},
                       {"per_dcp", per_dcp},
                       {"federation_coverage_a", ea.report.federation.dcp_coverage_fraction},
                       {"federation_coverage_b", eb.report.federation.dcp_coverage_fraction}};
        std::cout << j.dump(2) << "\n";

        if (stderr_is_tty()) {
            std::fprintf(stderr, "%-16s %12s %12s %10s\n", "dcp", "coverage_a", "coverage_b",
                         "delta");
            for (const auto& id : ids) {
                auto ia = ea.report.per_dcp.find(id);
                auto ib = eb.report.per_dcp.find(id);
                const double ca = ia == ea.report.per_dcp.end()
                                      ? 0.0
                                      : ia->second.temporal_coverage_fraction;
                const double cb = ib == eb.report.per_dcp.end()
                                      ? 0.0
                                      : ib->second.temporal_coverage_fraction;
                std::fprintf(stderr, "%-16s %12.6f %12.6f %+10.6f\n", id.c_str(), ca, cb,
                             cb - ca);
            }
        }
        return 0;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

int run_validate(const std::string& scenario_path) {
    try {
        const scn::Scenario scenario = scn::parse_scenario(read_file(scenario_path));
        const auto violations = scn::validate_scenario(scenario);
        ordered_json rows = ordered_json::array();
        for (const auto& v : violations)
            rows.push_back(
                {{"subject", v.subject_id}, {"rule", v.rule}, {"message", v.message}});
        std::cout << rows.dump(2) << "\n";
        return violations.empty() ? 0 : 2;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

} // namespace cli
} // namespace fedsat
