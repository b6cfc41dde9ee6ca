#include "thermal/io.hpp"

#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <vector>

#include "thermal/errors.hpp"

namespace thermal {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

Rational parse_number(int line, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const ParameterError& e) {
        throw ParseError(line, e.what());
    }
}

}  // namespace

ThermalNetwork parse_network(const std::string& text) {
    ThermalNetwork net;
    bool have_source = false, have_sink = false, have_dtu = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& directive = tokens[0];

        if (directive == "source" || directive == "sink") {
            if (tokens.size() != 2)
                throw ParseError(line_no, directive + " expects one id");
            bool& seen = directive == "source" ? have_source : have_sink;
            if (seen) throw ParseError(line_no, "duplicate " + directive);
            seen = true;
            (directive == "source" ? net.source : net.sink) = tokens[1];
        } else if (directive == "node") {
            if (tokens.size() != 6 || tokens[2] != "theta0" || tokens[4] != "thetac")
                throw ParseError(line_no,
                                 "expected: node <id> theta0 <rational> thetac <rational>");
            ThermalNode node;
            node.id = tokens[1];
            node.theta0 = parse_number(line_no, tokens[3]);
            node.thetac = parse_number(line_no, tokens[5]);
            node.theta = node.theta0;
            if (!net.nodes.emplace(node.id, node).second)
                throw ParseError(line_no, "duplicate node '" + node.id + "'");
        } else if (directive == "edge") {
            if (tokens.size() != 3) throw ParseError(line_no, "expected: edge <from> <to>");
            if (!net.edges.emplace(tokens[1], tokens[2]).second)
                throw ParseError(line_no,
                                 "duplicate edge " + tokens[1] + " -> " + tokens[2]);
        } else if (directive == "param") {
            if (tokens.size() != 3)
                throw ParseError(line_no, "expected: param <name> <rational>");
            Rational value = parse_number(line_no, tokens[2]);
            if (tokens[1] == "dtu") {
                net.params.dtu = value;
                have_dtu = true;
            } else if (tokens[1] == "dtd") {
                net.params.dtd = value;
            } else if (tokens[1] == "omega") {
                net.params.omega = value;
            } else if (tokens[1] == "beta") {
                net.params.beta = value;
            } else {
                throw ParseError(line_no, "unknown parameter '" + tokens[1] + "'");
            }
        } else {
            throw ParseError(line_no, "unknown directive '" + directive + "'");
        }
    }

    if (!have_source) throw SemanticError("missing source");
    if (!have_sink) throw SemanticError("missing sink");
    if (!have_dtu) throw SemanticError("missing param dtu");
    net.validate();
    return net;
}

ThermalNetwork load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SemanticError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_network(buffer.str());
}

std::string render_network(const ThermalNetwork& net) {
    std::ostringstream out;
    out << "source " << net.source << "\n";
    out << "sink " << net.sink << "\n";
    out << "param dtu " << format_rational(net.params.dtu) << "\n";
    if (net.params.dtd) out << "param dtd " << format_rational(*net.params.dtd) << "\n";
    if (net.params.omega)
        out << "param omega " << format_rational(*net.params.omega) << "\n";
    if (net.params.beta) out << "param beta " << format_rational(*net.params.beta) << "\n";
    for (const auto& [id, node] : net.nodes)
        out << "node " << id << " theta0 " << format_rational(node.theta0) << " thetac "
            << format_rational(node.thetac) << "\n";
    for (const auto& [from, to] : net.edges) out << "edge " << from << " " << to << "\n";
    return out.str();
}

std::string digest(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

std::uint64_t DeterministicRng::bounded(std::uint64_t n) {
    if (n == 0) throw ParameterError("bounded(0)");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t draw;
    do {
        draw = next();
    } while (draw >= limit);
    return draw % n;
}

long long DeterministicRng::range(long long lo, long long hi) {
    if (lo > hi) throw ParameterError("empty range");
    return lo + static_cast<long long>(
                    bounded(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool DeterministicRng::chance(const Rational& p) {
    if (p < Rational(0) || p > Rational(1))
        throw ParameterError("probability out of range");
    return bounded(static_cast<std::uint64_t>(p.denominator())) <
           static_cast<std::uint64_t>(p.numerator());
}

ThermalNetwork generate(std::uint64_t seed, int node_count,
                        const Rational& edge_probability, long long cap_lo,
                        long long cap_hi, bool uniform) {
    if (node_count < 0) throw ParameterError("node count must be nonnegative");
    if (cap_lo < 0 || cap_lo > cap_hi) throw ParameterError("bad capacity range");
    DeterministicRng rng(seed);

    ThermalNetwork net;
    net.source = "s";
    net.sink = "t";
    net.params.dtu = Rational(1);

    int width = 2;
    for (int scale = 100; node_count > scale; scale *= 10) ++width;
    std::vector<std::string> internals;
    for (int i = 0; i < node_count; ++i) {
        std::string digits = std::to_string(i);
        internals.push_back("v" + std::string(static_cast<std::size_t>(width) -
                                                  digits.size(), '0') + digits);
    }

    long long shared_cap = rng.range(cap_lo, cap_hi);
    for (const auto& id : internals) {
        long long cap = uniform ? shared_cap : rng.range(cap_lo, cap_hi);
        ThermalNode node;
        node.id = id;
        node.theta0 = Rational(0);
        node.theta = Rational(0);
        node.thetac = Rational(cap);
        net.nodes.emplace(id, node);
    }

    auto connected = [&net] {
        std::set<std::string> seen{net.source};
        std::queue<std::string> queue;
        queue.push(net.source);
        while (!queue.empty()) {
            std::string v = queue.front();
            queue.pop();
            for (const auto& [from, to] : net.edges)
                if (from == v && seen.insert(to).second) queue.push(to);
        }
        return seen.count(net.sink) > 0;
    };

    // Tails: source and internals; heads: internals and sink. A direct
    // source->sink edge is possible only in the degenerate 0-node case.
    for (int attempt = 0; attempt < 500; ++attempt) {
        net.edges.clear();
        std::vector<std::string> tails = internals;
        tails.insert(tails.begin(), net.source);
        std::vector<std::string> heads = internals;
        heads.push_back(net.sink);
        for (const auto& from : tails)
            for (const auto& to : heads) {
                if (from == to) continue;
                if (from == net.source && to == net.sink && node_count > 0) continue;
                if (rng.chance(edge_probability)) net.edges.emplace(from, to);
            }
        if (connected()) {
            net.validate();
            return net;
        }
    }
    throw Error("could not generate a connected network in 500 attempts");
}

}  // namespace thermal
