#include "thermal/verify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "thermal/cooling.hpp"
#include "thermal/dissipation.hpp"
#include "thermal/errors.hpp"
#include "thermal/flow.hpp"
#include "thermal/io.hpp"
#include "thermal/oracle.hpp"

namespace thermal {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

const Rational kProbabilities[] = {Rational(1, 4), Rational(2, 5), Rational(1, 2),
                                   Rational(3, 5), Rational(3, 4)};
const Rational kOmegas[] = {Rational(1), Rational(2), Rational(1, 2), Rational(3, 2)};
const Rational kDtds[] = {Rational(1), Rational(2), Rational(1, 2), Rational(3, 2)};

struct InstanceSpec {
    int min_nodes = 1, max_nodes = 10;
    long long cap_lo = 0, cap_hi = 10;
    bool uniform = false;
    bool with_omega = false;
    bool with_dtd = false;
};

ThermalNetwork sample_network(std::uint64_t seed, const InstanceSpec& spec) {
    DeterministicRng rng(seed);
    int n = static_cast<int>(rng.range(spec.min_nodes, spec.max_nodes));
    const Rational& p = kProbabilities[rng.bounded(std::size(kProbabilities))];
    ThermalNetwork net =
        generate(rng.next(), n, p, spec.cap_lo, spec.cap_hi, spec.uniform);
    if (spec.with_omega) net.params.omega = kOmegas[rng.bounded(std::size(kOmegas))];
    if (spec.with_dtd) net.params.dtd = kDtds[rng.bounded(std::size(kDtds))];
    return net;
}

struct Check {
    CriterionResult result;

    explicit Check(std::string name) { result.name = std::move(name); }

    void count(const ThermalNetwork& net, bool ok, const std::string& what) {
        ++result.trials;
        if (ok) return;
        ++result.failures;
        if (result.detail.empty()) {
            result.detail = what;
            result.instance_digest = digest(render_network(net));
        }
    }

    CriterionResult finish() {
        result.expected = "0 failures";
        result.observed = std::to_string(result.failures) + " failures";
        return result;
    }
};

// ---- criterion 1: max flow equals brute-force minimum cut capacity ----

CriterionResult check_max_flow_min_cut(std::uint64_t seed, int count) {
    Check check("max_flow_min_cut");
    InstanceSpec spec;  // 1..10 nodes, capacities 0..10
    for (int trial = 0; trial < count; ++trial) {
        ThermalNetwork net = sample_network(mix(seed, 1000 + trial), spec);
        FlowResult flow = max_flow(net);
        NodeCutSet oracle = min_cut_bruteforce(net);
        check.count(net, flow.value == oracle.capacity,
                    "flow " + std::to_string(flow.value) + " vs brute-force cut " +
                        std::to_string(oracle.capacity));
    }
    return check.finish();
}

// ---- criterion 2: uniform minimum cut has minimum cardinality ----

CriterionResult check_uniform_cardinality(std::uint64_t seed, int count) {
    Check check("uniform_min_cut_cardinality");
    InstanceSpec spec;
    spec.cap_lo = 1;
    spec.cap_hi = 8;
    spec.uniform = true;
    for (int trial = 0; trial < count; ++trial) {
        ThermalNetwork net = sample_network(mix(seed, 2000 + trial), spec);
        CutEnumeration cuts = enumerate_cuts(net);
        std::size_t smallest = cuts.minimal().members.size();
        for (const auto& cut : cuts.cuts) smallest = std::min(smallest, cut.members.size());
        check.count(net, cuts.minimal().members.size() == smallest,
                    "minimum-capacity cut is not minimum cardinality");
    }
    return check.finish();
}

// ---- criterion 3: uniform dissipation reaches the closed-form steady rate ----

CriterionResult check_uniform_steady(std::uint64_t seed, int count) {
    Check check("uniform_steady_identity");
    InstanceSpec spec;
    spec.max_nodes = 8;
    spec.cap_lo = 1;
    spec.cap_hi = 6;
    spec.uniform = true;
    spec.with_omega = true;
    const int horizon = 12;
    for (int trial = 0; trial < count; ++trial) {
        ThermalNetwork net = sample_network(mix(seed, 3000 + trial), spec);
        SimulationTrace trace = simulate(net, optimal_tau(net.params), horizon);

        bool id_constant = true, cap_constant = true;
        for (const auto& stage : trace.stages) {
            if (stage.min_cut_id != trace.stages.front().min_cut_id) id_constant = false;
            if (stage.index >= 2 &&
                stage.min_cut.capacity != trace.stages[1].min_cut.capacity)
                cap_constant = false;
        }
        bool rate_exact =
            trace.steady_rate && *trace.steady_rate == steady_rate_closed_form(net);
        std::string what = !id_constant    ? "minimum cut changed between stages"
                           : !cap_constant ? "steady capacity varied"
                                           : "measured rate differs from closed form";
        check.count(net, id_constant && cap_constant && rate_exact, what);
    }
    return check.finish();
}

// ---- criterion 4: the optimal rest time dominates the sweep ----

CriterionResult check_tau_dominance(std::uint64_t seed, int count) {
    Check check("tau_dominance");
    InstanceSpec spec;
    spec.max_nodes = 8;
    spec.cap_lo = 1;
    spec.cap_hi = 6;
    spec.uniform = true;
    spec.with_omega = true;
    const int horizon = 12;
    for (int trial = 0; trial < count; ++trial) {
        ThermalNetwork net = sample_network(mix(seed, 4000 + trial), spec);
        Rational star = optimal_tau(net.params);
        std::vector<Rational> taus = {star / 4,     star / 2, star * 3 / 4, star,
                                      star * 3 / 2, star * 2, star * 3};
        auto rates = tau_sweep(net, taus, horizon);
        bool ok = true;
        std::string what;
        for (const auto& [tau, rate] : rates) {
            if (tau < star && rate != Rational(0)) {
                ok = false;
                what = "nonzero rate below the optimal rest time";
            }
            if (rate > rates.at(star)) {
                ok = false;
                what = "rate at tau=" + format_rational(tau) + " exceeds the optimum";
            }
        }
        check.count(net, ok, what);
    }
    return check.finish();
}

// ---- criterion 5: non-uniform steady onset bound ----

CriterionResult check_nonuniform_onset(std::uint64_t seed, int count) {
    Check check("nonuniform_steady_onset");
    InstanceSpec spec;
    spec.min_nodes = 2;
    spec.max_nodes = 8;
    spec.cap_lo = 1;
    spec.cap_hi = 9;
    spec.with_omega = true;
    int accepted = 0;
    for (int attempt = 0; accepted < count && attempt < count * 40; ++attempt) {
        ThermalNetwork net = sample_network(mix(seed, 5000 + attempt), spec);
        CutFamily family = enumerate_cut_structure(net);
        if (family.empty()) continue;
        // Theorem hypothesis: a unique minimum-cardinality cut. Ties are
        // counted, never silently passed.
        if (family.size() > 1 &&
            std::popcount(family.masks[1]) == std::popcount(family.masks[0])) {
            ++check.result.excluded;
            continue;
        }
        ++accepted;
        long long onset = steady_onset_bound(net);
        int horizon = static_cast<int>(onset) + 20;
        SimulationTrace trace = simulate(net, optimal_tau(net.params), horizon);
        bool ok = true;
        for (const auto& stage : trace.stages) {
            if (stage.index <= onset) continue;
            // Family index 0 is the canonical minimum-cardinality cut.
            long long min_cap = *std::min_element(stage.cut_capacities.begin(),
                                                  stage.cut_capacities.end());
            if (min_cap != stage.cut_capacities.front()) ok = false;
        }
        check.count(net, ok, "minimum cut left the minimum-cardinality cut after onset");
    }
    return check.finish();
}

// ---- criteria 6 and 7: restoration, packet formula, exhaustive optimality ----

void check_cooling(std::uint64_t seed, int restore_count, int optimality_count,
                   CriterionResult& restore_out, CriterionResult& formula_out) {
    Check restore("cooling_restoration");
    Check formula("cooling_packet_count");

    InstanceSpec spec;
    spec.max_nodes = 8;
    spec.cap_lo = 1;  // every cut has positive capacity, so base flow >= 1
    spec.cap_hi = 6;
    spec.with_dtd = true;
    for (int trial = 0; trial < restore_count; ++trial) {
        ThermalNetwork net = sample_network(mix(seed, 6000 + trial), spec);
        auto [exhausted, base_flow] = exhaust_by_max_flow(net);
        exhausted.params.beta = beta_min_maxflow(exhausted, base_flow.min_cut);
        try {
            CoolingPlan repair = plan(exhausted);
            ThermalNetwork after = dispatch_plan(exhausted, repair, *exhausted.params.beta);
            long long after_flow = max_flow(after).value;
            std::string violation;
            bool ok = repair.restored_flow == base_flow.value &&
                      after_flow == base_flow.value &&
                      verify_cut_dominance(after, repair, &violation);
            restore.count(net, ok,
                          violation.empty() ? "plan restored " + std::to_string(after_flow) +
                                                  " of " + std::to_string(base_flow.value)
                                            : violation);
            formula.count(net, repair.total_packets == packets_required(net, repair.target),
                          "packet count differs from the per-node formula");
        } catch (const Error& e) {
            restore.count(net, false, e.what());
        }
    }

    InstanceSpec tiny;
    tiny.max_nodes = 4;
    tiny.cap_lo = 1;
    tiny.cap_hi = 3;
    tiny.with_dtd = true;
    for (int trial = 0; trial < optimality_count; ++trial) {
        ThermalNetwork net = sample_network(mix(seed, 7000 + trial), tiny);
        auto [exhausted, base_flow] = exhaust_by_max_flow(net);
        long long wanted = packets_required(net, base_flow.min_cut);
        long long best = min_packets_exhaustive(exhausted, base_flow.value);
        formula.count(net, best == wanted,
                      "exhaustive search restored with " + std::to_string(best) +
                          " packets, formula says " + std::to_string(wanted));
    }

    restore_out = restore.finish();
    formula_out = formula.finish();
}

// ---- criterion 8: budget thresholds and monotonicity ----

CriterionResult check_beta_thresholds(std::uint64_t seed, int count) {
    Check check("beta_thresholds");
    InstanceSpec spec;
    spec.max_nodes = 8;
    spec.cap_lo = 1;
    spec.cap_hi = 6;
    spec.with_dtd = true;
    for (int trial = 0; trial < count; ++trial) {
        ThermalNetwork net = sample_network(mix(seed, 8000 + trial), spec);
        auto [exhausted, base_flow] = exhaust_by_max_flow(net);
        Rational beta_full = beta_min_maxflow(exhausted, base_flow.min_cut);
        Rational beta_func = beta_min_functional(exhausted, base_flow.min_cut);
        const Rational& dtd = *exhausted.params.dtd;
        exhausted.params.beta = beta_full;
        try {
            CoolingPlan repair = plan(exhausted);

            bool restores =
                max_flow(dispatch_plan(exhausted, repair, beta_full)).value ==
                base_flow.value;

            Rational beta_low = beta_func - dtd / 2;
            bool still_dark =
                max_flow(dispatch_plan(exhausted, repair, beta_low)).value == 0;

            std::vector<Rational> ladder = {beta_low, beta_func,
                                            (beta_func + beta_full) / 2, beta_full,
                                            beta_full + dtd};
            std::sort(ladder.begin(), ladder.end());
            bool monotone = true, reached_flow = false, reached_alive = false;
            for (const Rational& beta : ladder) {
                long long value = max_flow(dispatch_plan(exhausted, repair, beta)).value;
                bool alive = value > 0, flow_ok = value == base_flow.value;
                if ((reached_alive && !alive) || (reached_flow && !flow_ok))
                    monotone = false;
                reached_alive = reached_alive || alive;
                reached_flow = reached_flow || flow_ok;
            }
            std::string what =
                !restores     ? "full budget failed to restore flow"
                : !still_dark ? "budget below the functional minimum reconnected"
                              : "success not monotone in beta";
            check.count(net, restores && still_dark && monotone, what);
        } catch (const Error& e) {
            check.count(net, false, e.what());
        }
    }
    return check.finish();
}

// ---- criterion 9: every s-t walk meets every node-cut-set ----

std::vector<std::string> random_simple_walk(const ThermalNetwork& net,
                                            DeterministicRng& rng) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [from, to] : net.edges) out[from].push_back(to);

    std::vector<std::string> path{net.source};
    std::set<std::string> visited{net.source};
    struct Frame {
        std::vector<std::string> options;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    auto push = [&](const std::string& at) {
        Frame frame;
        auto it = out.find(at);
        if (it != out.end()) frame.options = it->second;
        for (std::size_t i = frame.options.size(); i > 1; --i)
            std::swap(frame.options[i - 1], frame.options[rng.bounded(i)]);
        stack.push_back(std::move(frame));
    };
    push(net.source);
    while (!stack.empty()) {
        if (path.back() == net.sink) return path;
        Frame& frame = stack.back();
        if (frame.next >= frame.options.size()) {
            visited.erase(path.back());
            path.pop_back();
            stack.pop_back();
            continue;
        }
        const std::string& candidate = frame.options[frame.next++];
        if (visited.count(candidate)) continue;
        path.push_back(candidate);
        visited.insert(candidate);
        push(candidate);
    }
    return {};
}

CriterionResult check_walk_cut_intersection(std::uint64_t seed, int count) {
    Check check("walk_cut_intersection");
    InstanceSpec spec;
    spec.max_nodes = 8;
    for (int trial = 0; trial < count; ++trial) {
        DeterministicRng rng(mix(seed, 9000 + trial));
        ThermalNetwork net = sample_network(rng.next(), spec);
        CutFamily family = enumerate_cut_structure(net);
        if (family.empty()) continue;
        auto members = family.members(rng.bounded(family.size()));
        auto walk = random_simple_walk(net, rng);
        bool hit = false;
        for (const auto& v : walk)
            if (std::find(members.begin(), members.end(), v) != members.end()) hit = true;
        check.count(net, !walk.empty() && hit, "walk avoided a node-cut-set");
    }
    return check.finish();
}

// ---- criterion 10 (library side): render/parse round trip ----

CriterionResult check_roundtrip(std::uint64_t seed, int count) {
    Check check("io_roundtrip");
    for (int trial = 0; trial < count; ++trial) {
        DeterministicRng rng(mix(seed, 10000 + trial));
        InstanceSpec spec;
        spec.uniform = rng.chance(Rational(1, 2));
        spec.with_omega = rng.chance(Rational(1, 2));
        spec.with_dtd = rng.chance(Rational(1, 2));
        ThermalNetwork net = sample_network(rng.next(), spec);
        if (spec.with_dtd) net.params.beta = Rational(rng.range(0, 9), 2);
        std::string text = render_network(net);
        bool ok = parse_network(text) == net && render_network(parse_network(text)) == text;
        check.count(net, ok, "render/parse round trip changed the network");
    }
    return check.finish();
}

}  // namespace

long long min_packets_exhaustive(const ThermalNetwork& exhausted, long long target_flow) {
    if (!exhausted.params.dtd) throw ConfigError("dtd required");
    const Rational& dtd = *exhausted.params.dtd;
    const int n = static_cast<int>(exhausted.nodes.size());
    if (n > 10) throw SizeError("exhaustive plan search limited to 10 internal nodes");

    std::vector<std::string> ids;
    std::vector<int> coolings_to_base;
    for (const auto& [id, node] : exhausted.nodes) {
        ids.push_back(id);
        coolings_to_base.push_back(
            static_cast<int>(ceil_to_int((node.theta - node.theta0) / dtd)));
    }

    // All vertex-simple s-t paths as internal-node index lists.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<int> from_source;
    std::vector<bool> to_sink(static_cast<std::size_t>(n), false);
    auto index_of = [&](const std::string& id) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& [from, to] : exhausted.edges) {
        if (from == exhausted.source && to == exhausted.sink)
            throw UnboundedFlowError("direct source->sink edge");
        if (from == exhausted.source) from_source.push_back(index_of(to));
        else if (to == exhausted.sink && from != exhausted.sink)
            to_sink[static_cast<std::size_t>(index_of(from))] = true;
        else if (to != exhausted.source && from != exhausted.sink)
            adj[static_cast<std::size_t>(index_of(from))].push_back(index_of(to));
    }
    std::vector<std::vector<int>> paths;
    std::vector<int> current;
    auto enumerate = [&](auto&& self, int v, std::uint32_t visited) -> void {
        current.push_back(v);
        if (to_sink[static_cast<std::size_t>(v)]) paths.push_back(current);
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!(visited & (1u << w))) self(self, w, visited | (1u << w));
        current.pop_back();
    };
    for (int v : from_source) enumerate(enumerate, v, 1u << v);

    auto flow_at = [&](const std::vector<int>& cooled) {
        ThermalNetwork state = exhausted;
        for (std::size_t i = 0; i < ids.size(); ++i)
            state.nodes.at(ids[i]) = cool(state.nodes.at(ids[i]), Rational(cooled[i]) * dtd);
        return max_flow(state).value;
    };

    // Breadth-first search over cooling states; one packet per layer.
    std::map<std::vector<int>, long long> seen;
    std::queue<std::vector<int>> queue;
    std::vector<int> start(static_cast<std::size_t>(n), 0);
    seen[start] = 0;
    queue.push(start);
    while (!queue.empty()) {
        std::vector<int> state = queue.front();
        queue.pop();
        long long depth = seen[state];
        if (flow_at(state) == target_flow) return depth;
        if (seen.size() > 200000) throw SizeError("exhaustive plan search state explosion");
        for (const auto& path : paths) {
            std::vector<int> next = state;
            bool changed = false;
            for (int v : path)
                if (next[static_cast<std::size_t>(v)] <
                    coolings_to_base[static_cast<std::size_t>(v)]) {
                    ++next[static_cast<std::size_t>(v)];
                    changed = true;
                }
            if (!changed || seen.count(next)) continue;
            seen[next] = depth + 1;
            queue.push(next);
        }
    }
    throw Error("internal: exhaustive search never restored the target flow");
}

std::vector<CriterionResult> run_verification(const VerifyOptions& options) {
    const int t = std::max(1, options.trials);
    const std::uint64_t seed = options.seed;
    std::vector<CriterionResult> results;
    results.push_back(check_max_flow_min_cut(seed, 5 * t));
    results.push_back(check_uniform_cardinality(seed, 2 * t));
    results.push_back(check_uniform_steady(seed, 2 * t));
    results.push_back(check_tau_dominance(seed, std::max(1, t / 2)));
    results.push_back(check_nonuniform_onset(seed, 2 * t));

    CriterionResult restore, formula;
    check_cooling(seed, 2 * t, std::max(1, t / 2), restore, formula);
    results.push_back(restore);
    results.push_back(formula);

    results.push_back(check_beta_thresholds(seed, t));
    results.push_back(check_walk_cut_intersection(seed, 5 * t));
    results.push_back(check_roundtrip(seed, 2 * t));
    return results;
}

std::vector<CriterionResult> run_verification_file(const ThermalNetwork& net) {
    std::vector<CriterionResult> results;
    std::string bytes = render_network(net);
    std::string net_digest = digest(bytes);
    auto push = [&](Check& check) {
        CriterionResult r = check.finish();
        r.instance_digest = net_digest;
        results.push_back(r);
    };

    {
        Check check("io_roundtrip");
        check.count(net, parse_network(bytes) == net.at_base(),
                    "render/parse round trip changed the network");
        push(check);
    }
    if (net.nodes.size() <= kCutEnumerationNodeBound) {
        {
            Check check("max_flow_min_cut");
            check.count(net, max_flow(net).value == min_cut_bruteforce(net).capacity,
                        "flow differs from brute-force minimum cut");
            push(check);
        }
        bool uniform = true;
        const auto first = net.nodes.begin();
        for (const auto& [id, node] : net.nodes)
            if (node.thetac - node.theta0 != first->second.thetac - first->second.theta0)
                uniform = false;
        if (uniform && !net.nodes.empty()) {
            Check check("uniform_min_cut_cardinality");
            CutEnumeration cuts = enumerate_cuts(net);
            std::size_t smallest = cuts.minimal().members.size();
            for (const auto& cut : cuts.cuts)
                smallest = std::min(smallest, cut.members.size());
            check.count(net, cuts.minimal().members.size() == smallest,
                        "minimum-capacity cut is not minimum cardinality");
            push(check);
        }
        if (net.params.omega && *net.params.omega > Rational(0)) {
            Check check("nonuniform_steady_onset");
            try {
                long long onset = steady_onset_bound(net);
                SimulationTrace trace =
                    simulate(net, optimal_tau(net.params), static_cast<int>(onset) + 20);
                bool ok = true;
                for (const auto& stage : trace.stages) {
                    if (stage.index <= onset) continue;
                    long long min_cap = *std::min_element(stage.cut_capacities.begin(),
                                                          stage.cut_capacities.end());
                    if (min_cap != stage.cut_capacities.front()) ok = false;
                }
                check.count(net, ok, "minimum cut changed after the onset bound");
            } catch (const IndeterminateError&) {
                ++check.result.trials;
                ++check.result.excluded;
            }
            push(check);
        }
        if (net.params.dtd) {
            Check check("cooling_restoration");
            auto [exhausted, base_flow] = exhaust_by_max_flow(net);
            exhausted.params.beta = beta_min_maxflow(exhausted, base_flow.min_cut);
            try {
                CoolingPlan repair = plan(exhausted);
                check.count(net, repair.restored_flow == base_flow.value,
                            "plan failed to restore the base flow");
            } catch (const Error& e) {
                check.count(net, false, e.what());
            }
            push(check);
        }
    }
    return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass()) return false;
    return true;
}

std::string render_report_text(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    int index = 0;
    for (const auto& r : results) {
        ++index;
        out << "[" << (index < 10 ? " " : "") << index << "] " << r.name;
        for (std::size_t pad = r.name.size(); pad < 30; ++pad) out << ' ';
        out << " trials=" << r.trials << " failures=" << r.failures;
        if (r.excluded > 0) out << " excluded=" << r.excluded;
        out << (r.pass() ? " PASS" : " FAIL");
        if (!r.pass() && !r.detail.empty())
            out << "\n      first failure [" << r.instance_digest << "]: " << r.detail;
        out << "\n";
    }
    out << "result: " << (all_pass(results) ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string render_report_csv(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    out << "theorem,instance_digest,expected,observed,verdict\n";
    for (const auto& r : results)
        out << r.name << "," << r.instance_digest << "," << r.expected << "," << r.observed
            << "," << (r.pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace thermal
