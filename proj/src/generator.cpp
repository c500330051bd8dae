#include "cnet/generator.hpp"

#include <cmath>
#include <queue>
#include <sstream>

#include "cnet/freegroup.hpp"

namespace cnet {

FiniteNetwork BallNetwork::network() const {
    return FiniteNetwork(static_cast<int>(codes.size()), edges);
}

int BallNetwork::idOf(const std::string& code) const {
    auto it = index.find(code);
    if (it == index.end()) throw PreconditionError("BallNetwork: code not in ball: " + code);
    return it->second;
}

BallNetwork build_ball(const GraphGenerator& gen, int radius, size_t vertexCap) {
    BallNetwork ball;
    auto addVertex = [&](const std::string& code, int d) {
        ball.index.emplace(code, static_cast<int>(ball.codes.size()));
        ball.codes.push_back(code);
        ball.dist.push_back(d);
    };
    addVertex(gen.rootCode(), 0);

    std::vector<std::string> frontier = {gen.rootCode()};
    int d = 0;
    while (d < radius && !frontier.empty()) {
        std::vector<std::string> next;
        for (const std::string& code : frontier)
            for (const auto& [ncode, params] : gen.neighbors(code))
                if (!ball.index.count(ncode)) {
                    if (ball.codes.size() >= vertexCap) {
                        // report the last fully built layer
                        ball.radius = d;
                        // drop the partial layer
                        while (!ball.codes.empty() && ball.dist.back() > d) {
                            ball.index.erase(ball.codes.back());
                            ball.codes.pop_back();
                            ball.dist.pop_back();
                        }
                        goto edges;
                    }
                    addVertex(ncode, d + 1);
                    next.push_back(ncode);
                }
        frontier = std::move(next);
        ++d;
    }
    ball.radius = d;
    ball.exhausted = frontier.empty();

edges:
    if (!ball.exhausted) {
        // the ball is exhausted iff no sphere vertex has an outside neighbor
        ball.exhausted = true;
        for (size_t i = 0; i < ball.codes.size() && ball.exhausted; ++i)
            if (ball.dist[i] == ball.radius)
                for (const auto& [ncode, params] : gen.neighbors(ball.codes[i]))
                    if (!ball.index.count(ncode)) {
                        ball.exhausted = false;
                        break;
                    }
    }
    for (size_t i = 0; i < ball.codes.size(); ++i)
        for (const auto& [ncode, params] : gen.neighbors(ball.codes[i])) {
            auto it = ball.index.find(ncode);
            if (it != ball.index.end() && static_cast<int>(i) < it->second)
                ball.edges.push_back({static_cast<int>(i), it->second, params});
        }
    return ball;
}

EdgeParams parse_edge_symbol(const std::string& symbol) {
    if (symbol == "1") return EdgeParams::resistor();
    if (symbol == "s") return EdgeParams::capacitorLike();
    if (symbol == "1/s") return EdgeParams::inductorLike();
    throw PreconditionError("unknown edge symbol: " + symbol);
}

namespace {

class LineGenerator : public GraphGenerator {
public:
    explicit LineGenerator(EdgeParams p) : p_(p) {}
    std::string rootCode() const override { return "0"; }
    std::vector<std::pair<std::string, EdgeParams>> neighbors(const std::string& code) const override {
        const long long x = std::stoll(code);
        return {{std::to_string(x - 1), p_}, {std::to_string(x + 1), p_}};
    }
    bool isTree() const override { return true; }
    std::string directedEdgeKey(const std::string&, const std::string&) const override {
        return "e";
    }
    std::optional<double> stochasticSpectralRadius(const OperatorKind&) const override {
        return 1.0;  // homogeneous weights: every comparison operator is SRW on Z
    }

private:
    EdgeParams p_;
};

class Grid2dGenerator : public GraphGenerator {
public:
    explicit Grid2dGenerator(EdgeParams p) : p_(p) {}
    std::string rootCode() const override { return "0,0"; }
    std::vector<std::pair<std::string, EdgeParams>> neighbors(const std::string& code) const override {
        long long x, y;
        char comma;
        std::istringstream in(code);
        in >> x >> comma >> y;
        auto c = [&](long long a, long long b) {
            return std::to_string(a) + "," + std::to_string(b);
        };
        return {{c(x - 1, y), p_}, {c(x + 1, y), p_}, {c(x, y - 1), p_}, {c(x, y + 1), p_}};
    }
    std::optional<double> stochasticSpectralRadius(const OperatorKind&) const override {
        return 1.0;
    }

private:
    EdgeParams p_;
};

// Rooted tree on digit-path codes; root has rootChildren children, every
// other vertex has innerChildren children plus its parent.
class DigitTreeGenerator : public GraphGenerator {
public:
    DigitTreeGenerator(int rootChildren, int innerChildren, EdgeParams p)
        : rootChildren_(rootChildren), innerChildren_(innerChildren), p_(p) {
        if (rootChildren_ < 1 || rootChildren_ > 10 || innerChildren_ < 1 || innerChildren_ > 10)
            throw PreconditionError("tree generator: branching must be in 1..10");
    }
    std::string rootCode() const override { return ""; }
    std::vector<std::pair<std::string, EdgeParams>> neighbors(const std::string& code) const override {
        std::vector<std::pair<std::string, EdgeParams>> out;
        if (!code.empty()) out.emplace_back(code.substr(0, code.size() - 1), p_);
        const int c = code.empty() ? rootChildren_ : innerChildren_;
        for (int i = 0; i < c; ++i) out.emplace_back(code + static_cast<char>('0' + i), p_);
        return out;
    }
    bool isTree() const override { return true; }
    std::string directedEdgeKey(const std::string& from, const std::string& to) const override {
        if (to.size() < from.size()) return "u";
        return "d" + std::to_string(from.size());
    }
    std::optional<double> stochasticSpectralRadius(const OperatorKind&) const override {
        const double q = innerChildren_;
        return 2.0 * std::sqrt(q) / (q + 1.0);
    }

private:
    int rootChildren_;
    int innerChildren_;
    EdgeParams p_;
};

std::unordered_map<std::string, std::string> parse_kv(const std::vector<std::string>& parts) {
    std::unordered_map<std::string, std::string> kv;
    for (size_t i = 1; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        if (eq == std::string::npos)
            throw PreconditionError("generator URI: expected key=value, got " + parts[i]);
        kv[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
    }
    return kv;
}

}  // namespace

std::unique_ptr<GraphGenerator> make_line_generator(EdgeParams p) {
    return std::make_unique<LineGenerator>(p);
}

std::unique_ptr<GraphGenerator> make_grid2d_generator(EdgeParams p) {
    return std::make_unique<Grid2dGenerator>(p);
}

std::unique_ptr<GraphGenerator> make_bary_tree_generator(int b, EdgeParams p) {
    if (b < 2) throw PreconditionError("bary tree: b must be >= 2");
    return std::make_unique<DigitTreeGenerator>(b, b, p);
}

std::unique_ptr<GraphGenerator> make_regular_tree_generator(int q, EdgeParams p) {
    if (q < 2) throw PreconditionError("regular tree: q must be >= 2");
    return std::make_unique<DigitTreeGenerator>(q + 1, q, p);
}

std::unique_ptr<GraphGenerator> make_generator(const std::string& uri) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(uri);
    while (std::getline(in, cur, ':')) parts.push_back(cur);
    if (parts.empty()) throw PreconditionError("empty generator URI");
    const std::string& name = parts[0];
    auto kv = parse_kv(parts);

    const EdgeParams edge =
        kv.count("edge") ? parse_edge_symbol(kv.at("edge")) : EdgeParams::resistor();
    if (name == "line") return make_line_generator(edge);
    if (name == "grid2d") return make_grid2d_generator(edge);
    if (name == "tree") {
        if (!kv.count("b")) throw PreconditionError("tree URI needs b=<int>");
        return make_bary_tree_generator(std::stoi(kv.at("b")), edge);
    }
    if (name == "regtree") {
        if (!kv.count("q")) throw PreconditionError("regtree URI needs q=<int>");
        return make_regular_tree_generator(std::stoi(kv.at("q")), edge);
    }
    if (name == "freegroup") {
        if (!kv.count("k")) throw PreconditionError("freegroup URI needs k=<int>");
        const int k = std::stoi(kv.at("k"));
        std::vector<std::string> symbols;
        if (kv.count("assign")) {
            std::istringstream as(kv.at("assign"));
            std::string sym;
            while (std::getline(as, sym, ',')) symbols.push_back(sym);
        } else {
            symbols.assign(k, "1");
        }
        return make_free_group_generator(FreeGroupSpec::fromSymbols(k, symbols));
    }
    throw PreconditionError("unknown generator: " + name);
}

}  // namespace cnet
