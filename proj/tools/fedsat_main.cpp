#include "CLI11.hpp"

#include "fedsat/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Federated satellite system simulator and constraint engine"};
    app.require_subcommand(1);

    fedsat::cli::SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run the full coverage/storage pipeline");
    simulate->add_option("scenario", sim.scenario_path, "Scenario file")->required();
    simulate->add_option("--out", sim.out_dir, "Output directory (default out)");
    simulate->add_option("--step-s", sim.step_s, "Override grid step [s]");
    simulate->add_option("--horizon-s", sim.horizon_s, "Override grid end [s]");
    simulate->add_option("--format", sim.format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string admit_scenario, candidate_path;
    auto* admit = app.add_subcommand("admit", "Evaluate a candidate satellite for admission");
    admit->add_option("scenario", admit_scenario, "Scenario file")->required();
    admit->add_option("candidate", candidate_path, "Candidate satellite file")->required();

    std::string retire_scenario;
    auto* retire = app.add_subcommand("retire", "Pick the minimal-impact retirement");
    retire->add_option("scenario", retire_scenario, "Scenario file")->required();

    std::string fault_scenario, failed_id;
    double fault_time_s = 0.0;
    auto* fault = app.add_subcommand("fault", "Reconfigure after a constituent fault");
    fault->add_option("scenario", fault_scenario, "Scenario file")->required();
    fault->add_option("--id", failed_id, "Failed satellite id")->required();
    fault->add_option("--time-s", fault_time_s, "Fault time [s], on the grid")->required();

    std::string cmp_a, cmp_b;
    auto* compare = app.add_subcommand("compare", "Side-by-side metrics of two scenarios");
    compare->add_option("scenario_a", cmp_a, "First scenario")->required();
    compare->add_option("scenario_b", cmp_b, "Second scenario")->required();

    std::string validate_scenario;
    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
    validate->add_option("scenario", validate_scenario, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (simulate->parsed()) return fedsat::cli::run_simulate(sim);
    if (admit->parsed()) return fedsat::cli::run_admit(admit_scenario, candidate_path);
    if (retire->parsed()) return fedsat::cli::run_retire(retire_scenario);
    if (fault->parsed()) return fedsat::cli::run_fault(fault_scenario, failed_id, fault_time_s);
    if (compare->parsed()) return fedsat::cli::run_compare(cmp_a, cmp_b);
    if (validate->parsed()) return fedsat::cli::run_validate(validate_scenario);
    return 2;
}
