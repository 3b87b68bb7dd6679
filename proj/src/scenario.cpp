#include "iafeas/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace iafeas {

std::vector<int> Scenario::receivers() const {
    std::set<int> out;
    for (const auto& [k, l] : edges) out.insert(k);
    return {out.begin(), out.end()};
}

std::vector<int> Scenario::transmitters() const {
    std::set<int> out;
    for (const auto& [k, l] : edges) out.insert(l);
    return {out.begin(), out.end()};
}

bool Scenario::is_free_user(int user) const {
    for (const auto& [k, l] : edges)
        if (k == user || l == user) return false;
    return true;
}

bool Scenario::fully_connected() const {
    const int k = user_count();
    return static_cast<int>(edges.size()) == k * (k - 1);
}

bool Scenario::symmetric() const {
    if (users.empty()) return false;
    return std::all_of(users.begin(), users.end(),
                       [&](const UserConfig& u) { return u == users.front(); });
}

Projections projections(const Scenario& scenario) {
    return {scenario.receivers(), scenario.transmitters()};
}

std::vector<Edge> fully_connected_edges(int user_count) {
    std::vector<Edge> edges;
    for (int k = 0; k < user_count; ++k)
        for (int l = 0; l < user_count; ++l)
            if (k != l) edges.emplace_back(k, l);
    return edges;
}

ParseError::ParseError(std::string message, std::size_t position, std::string expected)
    : std::runtime_error(std::move(message)),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

/// Character-level cursor over the scenario grammar. Skips whitespace before
/// every token and reports errors with the current offset.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() &&
            std::tolower(static_cast<unsigned char>(text_[pos_])) ==
                std::tolower(static_cast<unsigned char>(c))) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!consume(c)) fail(what);
    }

    long long integer(const std::string& what) {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail(what);
        long long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000'000) fail("integer out of range");
            ++pos_;
        }
        return value;
    }

    bool consume_keyword(std::string_view word) {
        skip_ws();
        if (text_.size() - pos_ < word.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(text_[pos_ + i])) !=
                std::tolower(static_cast<unsigned char>(word[i])))
                return false;
        }
        pos_ += word.size();
        return true;
    }

    [[noreturn]] void fail(const std::string& expected) {
        std::ostringstream msg;
        msg << "scenario syntax error at position " << pos_ << ": expected " << expected;
        throw ParseError(msg.str(), pos_, expected);
    }

    std::size_t position() const { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

ScenarioPattern parse_pattern_impl(std::string_view text, bool allow_search) {
    Cursor cur(text);
    ScenarioPattern pattern;

    if (cur.at_end()) cur.fail("'(' starting a user factor");

    // factor+
    while (cur.peek() == '(') {
        cur.expect('(', "'('");
        const long long m = cur.integer("transmit antenna count");
        cur.expect('x', "'x'");
        const long long n = cur.integer("receive antenna count");
        cur.expect(',', "','");
        std::optional<int> d;
        if (allow_search && cur.peek() == '?') {
            cur.consume('?');
        } else {
            d = static_cast<int>(cur.integer(allow_search ? "stream count or '?'" : "stream count"));
        }
        cur.expect(')', "')'");
        if (m < 1 || n < 1) cur.fail("antenna counts >= 1");

        long long repeat = 1;
        if (cur.consume('^')) {
            repeat = cur.integer("repeat count");
            if (repeat < 1) cur.fail("repeat count >= 1");
        }
        for (long long r = 0; r < repeat; ++r) {
            pattern.users.push_back(
                {static_cast<int>(m), static_cast<int>(n), d.value_or(0)});
            pattern.streams.push_back(d);
        }
        if (static_cast<long long>(pattern.users.size()) > 64)
            cur.fail("at most 64 users");
    }
    if (pattern.users.empty()) cur.fail("'(' starting a user factor");

    const int user_count = static_cast<int>(pattern.users.size());

    if (cur.consume('|')) {
        if (!cur.consume_keyword("edges")) cur.fail("'edges'");
        cur.expect('=', "'='");
        std::set<Edge> edges;
        while (true) {
            cur.expect('(', "'(' starting an edge");
            const long long k = cur.integer("receiver index");
            cur.expect(',', "','");
            const long long l = cur.integer("transmitter index");
            cur.expect(')', "')'");
            if (k < 1 || k > user_count || l < 1 || l > user_count)
                cur.fail("edge index in 1.." + std::to_string(user_count));
            if (k == l) cur.fail("edge without self-loop");
            edges.emplace(static_cast<int>(k - 1), static_cast<int>(l - 1));
            if (!cur.consume(';')) break;
        }
        pattern.edges.assign(edges.begin(), edges.end());
    } else {
        pattern.edges = fully_connected_edges(user_count);
    }

    if (!cur.at_end()) cur.fail("end of input");
    return pattern;
}

} // namespace

ScenarioPattern parse_scenario_pattern(std::string_view text) {
    return parse_pattern_impl(text, /*allow_search=*/true);
}

Scenario parse_scenario(std::string_view text) {
    const ScenarioPattern pattern = parse_pattern_impl(text, /*allow_search=*/false);
    Scenario raw{pattern.users, pattern.edges};
    Scenario scenario = normalize(raw);
    if (scenario.edges.empty())
        throw ParseError("scenario has an empty interference set after normalization",
                         text.size(), "at least one interference edge");
    return scenario;
}

Scenario normalize(const Scenario& scenario) {
    std::vector<int> remap(scenario.users.size(), -1);
    Scenario out;
    for (std::size_t j = 0; j < scenario.users.size(); ++j) {
        if (scenario.users[j].streams > 0) {
            remap[j] = out.user_count();
            out.users.push_back(scenario.users[j]);
        }
    }
    std::set<Edge> kept;
    for (const auto& [k, l] : scenario.edges)
        if (remap[k] >= 0 && remap[l] >= 0) kept.emplace(remap[k], remap[l]);
    out.edges.assign(kept.begin(), kept.end());
    return out;
}

std::string to_string(const Scenario& scenario) {
    std::ostringstream out;
    std::size_t j = 0;
    while (j < scenario.users.size()) {
        std::size_t run = 1;
        while (j + run < scenario.users.size() && scenario.users[j + run] == scenario.users[j])
            ++run;
        const UserConfig& u = scenario.users[j];
        out << '(' << u.tx_antennas << 'x' << u.rx_antennas << ',' << u.streams << ')';
        if (run > 1) out << '^' << run;
        j += run;
    }
    if (!scenario.fully_connected()) {
        out << "|edges=";
        for (std::size_t i = 0; i < scenario.edges.size(); ++i) {
            if (i) out << ';';
            out << '(' << scenario.edges[i].first + 1 << ',' << scenario.edges[i].second + 1
                << ')';
        }
    }
    return out.str();
}

bool ValidationReport::all_stream_bounds_ok() const {
    return std::all_of(stream_bounds.begin(), stream_bounds.end(),
                       [](const UserCheck& c) { return c.ok; });
}

bool ValidationReport::all_edge_sum_bounds_ok() const {
    return std::all_of(edge_sum_bounds.begin(), edge_sum_bounds.end(),
                       [](const EdgeCheck& c) { return c.ok; });
}

ValidationReport validate(const Scenario& scenario) {
    ValidationReport report;
    const auto [rx, tx] = projections(scenario);

    for (int j = 0; j < scenario.user_count(); ++j) {
        const UserConfig& u = scenario.users[j];
        bool ok = true;
        const bool is_rx = std::binary_search(rx.begin(), rx.end(), j);
        const bool is_tx = std::binary_search(tx.begin(), tx.end(), j);
        if (is_rx && u.streams > u.rx_antennas) {
            ok = false;
            report.warnings.push_back("user " + std::to_string(j + 1) + ": d=" +
                                      std::to_string(u.streams) + " exceeds receive antennas " +
                                      std::to_string(u.rx_antennas));
        }
        if (is_tx && u.streams > u.tx_antennas) {
            ok = false;
            report.warnings.push_back("user " + std::to_string(j + 1) + ": d=" +
                                      std::to_string(u.streams) + " exceeds transmit antennas " +
                                      std::to_string(u.tx_antennas));
        }
        if (!is_rx && !is_tx)
            report.warnings.push_back("user " + std::to_string(j + 1) +
                                      " is outside the interference set; its matrices are free "
                                      "variables and do not enter any dimension count");
        report.stream_bounds.push_back({j, ok});
    }

    for (const Edge& e : scenario.edges) {
        const auto& [k, l] = e;
        const long long lhs = scenario.users[k].streams + scenario.users[l].streams;
        const long long rhs = scenario.users[k].rx_antennas + scenario.users[l].tx_antennas;
        const bool ok = lhs < rhs;
        if (!ok)
            report.warnings.push_back("edge (" + std::to_string(k + 1) + "," +
                                      std::to_string(l + 1) + "): d_k+d_l=" + std::to_string(lhs) +
                                      " reaches N_k+M_l=" + std::to_string(rhs));
        report.edge_sum_bounds.push_back({e, ok});
    }
    return report;
}

} // namespace iafeas
