#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "thermal/cooling.hpp"
#include "thermal/dissipation.hpp"
#include "thermal/errors.hpp"
#include "thermal/flow.hpp"
#include "thermal/io.hpp"
#include "thermal/oracle.hpp"
#include "thermal/verify.hpp"

namespace {

using namespace thermal;

// Exit codes: 0 ok, 1 usage, 2 input error, 3 size-bound refusal,
// 4 verdict failure.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInput = 2;
constexpr int kSizeBound = 3;
constexpr int kVerdict = 4;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

ThermalNetwork load(const std::string& path) {
    ThermalNetwork net = load_network(path);
    std::cout << "digest " << digest(render_network(net)) << "\n";
    return net;
}

int cmd_maxflow(const std::string& path) {
    ThermalNetwork net = load(path);
    FlowResult flow = max_flow(net);
    std::cout << "max_flow " << flow.value << "\n";
    std::cout << "min_cut " << join(flow.min_cut.members, ",") << "\n";
    std::cout << "min_cut_capacity " << flow.min_cut.capacity << "\n";
    for (const auto& [id, value] : flow.node_flow)
        std::cout << "node_flow " << id << " " << value << "\n";
    return kOk;
}

int cmd_cuts(const std::string& path) {
    ThermalNetwork net = load(path);
    CutEnumeration cuts = enumerate_cuts(net);
    std::cout << "cuts " << cuts.cuts.size() << "\n";
    for (const auto& cut : cuts.cuts)
        std::cout << "cut " << join(cut.members, ",") << " capacity " << cut.capacity
                  << " cardinality " << cut.members.size() << "\n";
    if (!cuts.cuts.empty())
        std::cout << "min_cut " << join(cuts.minimal().members, ",") << " capacity "
                  << cuts.minimal().capacity << "\n";
    return kOk;
}

int cmd_simulate(const std::string& path, const std::string& tau_text, int stages) {
    ThermalNetwork net = load(path);
    Rational tau = parse_rational(tau_text);
    SimulationTrace trace = simulate(net, tau, stages);
    std::cout << "tau " << format_rational(tau) << "\n";
    for (const auto& stage : trace.stages) {
        std::cout << "stage " << stage.index << " flow " << stage.flow << " rate ";
        if (tau > Rational(0))
            std::cout << format_rational(Rational(stage.flow) / tau);
        else
            std::cout << "-";
        std::cout << " min_cut " << join(stage.min_cut.members, ",") << " capacity "
                  << stage.min_cut.capacity << "\n";
    }
    if (trace.steady_stage) {
        std::cout << "steady_stage " << *trace.steady_stage << "\n";
        if (trace.steady_rate)
            std::cout << "steady_rate " << format_rational(*trace.steady_rate) << "\n";
    } else {
        std::cout << "steady_stage not_reached\n";
    }
    return kOk;
}

int cmd_tausweep(const std::string& path, const std::string& from_text,
                 const std::string& to_text, int steps, int stages) {
    ThermalNetwork net = load(path);
    Rational from = parse_rational(from_text);
    Rational to = parse_rational(to_text);
    if (steps < 1) throw ParameterError("steps must be at least 1");
    std::vector<Rational> taus;
    for (int i = 0; i < steps; ++i)
        taus.push_back(steps == 1 ? from
                                  : from + (to - from) * Rational(i) / Rational(steps - 1));
    auto rates = tau_sweep(net, taus, stages);
    Rational best(0);
    for (const auto& [tau, rate] : rates) best = std::max(best, rate);
    for (const auto& [tau, rate] : rates) {
        std::cout << "tau " << format_rational(tau) << " rate " << format_rational(rate);
        if (rate == best && best > Rational(0)) std::cout << " optimal";
        std::cout << "\n";
    }
    if (net.params.omega && *net.params.omega > Rational(0))
        std::cout << "optimal_tau " << format_rational(optimal_tau(net.params)) << "\n";
    return kOk;
}

int cmd_steady(const std::string& path) {
    ThermalNetwork net = load(path);
    std::cout << "min_cut_cardinality " << min_cut_cardinality(net) << "\n";
    std::cout << "closed_form_rate " << format_rational(steady_rate_closed_form(net))
              << "\n";
    long long onset = 0;
    try {
        onset = steady_onset_bound(net);
    } catch (const IndeterminateError& e) {
        std::cout << "onset_bound indeterminate\n";
        std::cout << "verdict indeterminate (" << e.what() << ")\n";
        return kOk;
    }
    std::cout << "onset_bound " << onset << "\n";

    SimulationTrace trace =
        simulate(net, optimal_tau(net.params), static_cast<int>(onset) + 20);
    bool cut_settled = true;
    for (const auto& stage : trace.stages) {
        if (stage.index <= onset || stage.cut_capacities.empty()) continue;
        long long min_cap = stage.min_cut.capacity;
        if (min_cap != stage.cut_capacities.front()) cut_settled = false;
    }
    bool rate_matches =
        trace.steady_rate && *trace.steady_rate == steady_rate_closed_form(net);
    if (trace.steady_rate)
        std::cout << "simulated_rate " << format_rational(*trace.steady_rate) << "\n";
    else
        std::cout << "simulated_rate not_reached\n";
    std::cout << "verdict " << (cut_settled && rate_matches ? "confirmed" : "mismatch")
              << "\n";
    return cut_settled && rate_matches ? kOk : kVerdict;
}

int cmd_coolplan(const std::string& path) {
    ThermalNetwork net = load(path);
    auto [exhausted, base_flow] = exhaust_by_max_flow(net);
    std::cout << "base_max_flow " << base_flow.value << "\n";
    std::cout << "target " << join(base_flow.min_cut.members, ",") << " capacity "
              << base_flow.min_cut.capacity << "\n";
    std::cout << "exhausted_flow " << max_flow(exhausted).value << "\n";

    Rational beta_func = beta_min_functional(exhausted, base_flow.min_cut);
    Rational beta_full = beta_min_maxflow(exhausted, base_flow.min_cut);
    std::cout << "beta_functional " << format_rational(beta_func) << "\n";
    std::cout << "beta_maxflow " << format_rational(beta_full) << "\n";
    if (!exhausted.params.beta) {
        std::cout << "beta (from beta_maxflow)\n";
        exhausted.params.beta = beta_full;
    }
    CoolingPlan repair = plan(exhausted);
    for (std::size_t w = 0; w < repair.walk_set.walks.size(); ++w) {
        auto it = repair.packets_per_walk.find(static_cast<int>(w));
        long long packets = it == repair.packets_per_walk.end() ? 0 : it->second;
        std::cout << "walk " << join(repair.walk_set.walks[w].vertices, ">")
                  << " packets " << packets << "\n";
    }
    std::cout << "total_packets " << repair.total_packets << "\n";
    std::cout << "restored_flow " << repair.restored_flow << "\n";
    return kOk;
}

int cmd_verify(const std::string& path, std::uint64_t seed, int trials,
               const std::string& csv_path) {
    std::vector<CriterionResult> results;
    if (path.empty()) {
        std::cout << "seed " << seed << "\n";
        std::cout << "trials " << trials << "\n";
        results = run_verification({seed, trials});
    } else {
        results = run_verification_file(load(path));
    }
    std::cout << render_report_text(results);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw SemanticError("cannot write '" + csv_path + "'");
        out << render_report_csv(results);
    }
    return all_pass(results) ? kOk : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermal flow networks: max flow, dissipation, cooling repair"};
    app.require_subcommand(1);

    std::string file, tau_text = "1", from_text = "0", to_text = "1", csv_path;
    int stages = 10, steps = 5, trials = 100;
    std::uint64_t seed = 7;

    auto* maxflow_cmd = app.add_subcommand("maxflow", "max flow and minimum node cut");
    maxflow_cmd->add_option("file", file)->required();

    auto* cuts_cmd = app.add_subcommand("cuts", "enumerate all minimal node-cut-sets");
    cuts_cmd->add_option("file", file)->required();

    auto* simulate_cmd = app.add_subcommand("simulate", "stage-by-stage dissipation run");
    simulate_cmd->add_option("file", file)->required();
    simulate_cmd->add_option("--tau", tau_text, "rest time per stage (rational)")
        ->required();
    simulate_cmd->add_option("--stages", stages, "number of stages")->required();

    auto* sweep_cmd = app.add_subcommand("tausweep", "long-run rate across rest times");
    sweep_cmd->add_option("file", file)->required();
    sweep_cmd->add_option("--from", from_text, "first tau (rational)")->required();
    sweep_cmd->add_option("--to", to_text, "last tau (rational)")->required();
    sweep_cmd->add_option("--steps", steps, "number of tau values");
    sweep_cmd->add_option("--stages", stages, "stages per simulation");

    auto* steady_cmd = app.add_subcommand("steady", "closed-form steady rate and onset");
    steady_cmd->add_option("file", file)->required();

    auto* coolplan_cmd =
        app.add_subcommand("coolplan", "exhaust the network and plan its repair");
    coolplan_cmd->add_option("file", file)->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the property suite");
    verify_cmd->add_option("file", file, "check one network instead of random batches");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--trials", trials, "trial scale (100 = full volume)");
    verify_cmd->add_option("--csv", csv_path, "also write record rows to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    }

    try {
        if (maxflow_cmd->parsed()) return cmd_maxflow(file);
        if (cuts_cmd->parsed()) return cmd_cuts(file);
        if (simulate_cmd->parsed()) return cmd_simulate(file, tau_text, stages);
        if (sweep_cmd->parsed())
            return cmd_tausweep(file, from_text, to_text, steps, stages);
        if (steady_cmd->parsed()) return cmd_steady(file);
        if (coolplan_cmd->parsed()) return cmd_coolplan(file);
        if (verify_cmd->parsed()) return cmd_verify(file, seed, trials, csv_path);
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSizeBound;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}
