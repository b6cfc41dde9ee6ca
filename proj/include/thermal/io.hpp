#ifndef THERMAL_IO_HPP
#define THERMAL_IO_HPP

#include <cstdint>
#include <random>
#include <string>

#include "thermal/model.hpp"

namespace thermal {

// Line-oriented network file:
//   source <id>
//   sink <id>
//   param dtu <rational>          (dtd, omega, beta optional)
//   node <id> theta0 <rational> thetac <rational>
//   edge <from> <to>
// '#' starts a comment; rationals are "p/q" or plain integers. Files describe
// scenarios at base temperature; current temperatures are runtime state.
ThermalNetwork parse_network(const std::string& text);
ThermalNetwork load_network(const std::string& path);
std::string render_network(const ThermalNetwork& net);

// FNV-1a hash of the bytes, as 16 hex digits.
std::string digest(const std::string& bytes);

// mt19937_64 with explicit rejection sampling so results do not depend on
// the standard library's distribution implementations.
struct DeterministicRng {
    std::mt19937_64 engine;

    explicit DeterministicRng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t next() { return engine(); }

    // Uniform value in [0, n).
    std::uint64_t bounded(std::uint64_t n);

    // Uniform value in [lo, hi], inclusive.
    long long range(long long lo, long long hi);

    // True with probability p (a rational in [0, 1]).
    bool chance(const Rational& p);
};

// Seeded random network containing at least one source-sink path. Node base
// temperatures are 0, critical temperatures are capacity * dtu with dtu = 1,
// capacities drawn from [cap_lo, cap_hi] (one shared draw when uniform).
ThermalNetwork generate(std::uint64_t seed, int node_count,
                        const Rational& edge_probability, long long cap_lo,
                        long long cap_hi, bool uniform);

}  // namespace thermal

#endif
