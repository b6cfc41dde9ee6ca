// Acceptance suite: runs every verification criterion at full volume and
// prints one pass/fail line per criterion. Exits nonzero on any failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thermal/io.hpp"
#include "thermal/verify.hpp"

namespace {

using namespace thermal;

struct Line {
    std::string name;
    bool pass = false;
    std::string note;
};

std::pair<int, std::string> run_command(const std::string& command) {
    std::string output;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return {-1, "popen failed"};
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

// Criterion 10 beyond the library round trip: fixture files survive
// parse/render, and the CLI's seeded verify run is byte-reproducible.
Line check_io_determinism(const CriterionResult& library_part) {
    Line line{"io_roundtrip_and_determinism", true, ""};
    std::ostringstream note;
    note << "library roundtrips=" << library_part.trials;
    if (!library_part.pass()) {
        line.pass = false;
        note << " FAILED(" << library_part.detail << ")";
    }

    const char* fixtures = std::getenv("THERMALFLOW_FIXTURES");
    if (fixtures) {
        int files = 0;
        for (const auto& entry : std::filesystem::directory_iterator(fixtures)) {
            if (entry.path().extension() != ".tn") continue;
            ++files;
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream buffer;
            buffer << in.rdbuf();
            ThermalNetwork net = parse_network(buffer.str());
            if (!(parse_network(render_network(net)) == net)) {
                line.pass = false;
                note << " fixture " << entry.path().filename().string() << " changed";
            }
        }
        note << " fixtures=" << files;
    } else {
        line.pass = false;
        note << " THERMALFLOW_FIXTURES unset";
    }

    const char* cli = std::getenv("THERMALFLOW_CLI");
    if (cli) {
        std::string command = std::string(cli) + " verify --seed 7 --trials 100";
        auto first = run_command(command);
        auto second = run_command(command);
        if (first.first != 0 || second.first != 0) {
            line.pass = false;
            note << " cli verify exited " << first.first << "/" << second.first;
        } else if (first.second != second.second) {
            line.pass = false;
            note << " cli verify output not byte-identical";
        } else {
            note << " cli runs byte-identical";
        }
    } else {
        line.pass = false;
        note << " THERMALFLOW_CLI unset";
    }
    line.note = note.str();
    return line;
}

}  // namespace

int main() {
    // trials=100 is full acceptance volume: 500 flow/cut instances, 200 per
    // dissipation and cooling family, 100 threshold instances, 500 pairs.
    std::vector<CriterionResult> results = run_verification({7, 100});

    std::vector<Line> lines;
    for (std::size_t i = 0; i + 1 < results.size(); ++i) {
        const auto& r = results[i];
        std::ostringstream note;
        note << "trials=" << r.trials << " failures=" << r.failures;
        if (r.excluded > 0) note << " excluded=" << r.excluded;
        if (!r.pass()) note << " [" << r.instance_digest << "] " << r.detail;
        lines.push_back({r.name, r.pass(), note.str()});
    }
    lines.push_back(check_io_determinism(results.back()));

    bool all = true;
    int index = 0;
    for (const auto& line : lines) {
        ++index;
        all = all && line.pass;
        std::cout << "criterion " << (index < 10 ? " " : "") << index << " " << line.name;
        for (std::size_t pad = line.name.size(); pad < 32; ++pad) std::cout << ' ';
        std::cout << (line.pass ? " PASS " : " FAIL ") << line.note << "\n";
    }
    std::cout << "ACCEPTANCE: " << (all ? "PASS" : "FAIL") << "\n";
    return all ? 0 : 1;
}
