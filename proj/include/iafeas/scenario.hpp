#ifndef IAFEAS_SCENARIO_HPP
#define IAFEAS_SCENARIO_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iafeas {

/// One user of the interference channel: tx/rx antenna counts and the number
/// of data streams it wants to send.
struct UserConfig {
    int tx_antennas = 0; // M_j >= 1
    int rx_antennas = 0; // N_j >= 1
    int streams = 0;     // d_j >= 0

    friend bool operator==(const UserConfig&, const UserConfig&) = default;
};

/// Directed interference link (receiver, transmitter), 0-based internally.
using Edge = std::pair<int, int>;

/// A K-user MIMO interference channel with an explicit connectivity set.
/// Edges are kept sorted and unique; self-loops are never stored (the desired
/// link of a user is not an alignment constraint).
struct Scenario {
    std::vector<UserConfig> users;
    std::vector<Edge> edges;

    int user_count() const { return static_cast<int>(users.size()); }

    /// Receivers that suffer interference (first projection of the edge set).
    std::vector<int> receivers() const;
    /// Transmitters that cause interference (second projection).
    std::vector<int> transmitters() const;

    /// A user outside both projections has free decoder/precoder variables
    /// and is excluded from every dimension count.
    bool is_free_user(int user) const;

    /// True when the edge set is exactly {(k,l) : k != l}.
    bool fully_connected() const;

    /// All users share the same (M, N, d).
    bool symmetric() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Projections {
    std::vector<int> receivers;    // sorted
    std::vector<int> transmitters; // sorted
};

Projections projections(const Scenario& scenario);

/// Scenario text did not match the grammar. `position` is the 0-based offset
/// of the offending character and `expected` names the token class wanted.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t position, std::string expected);

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

/// Parses the scenario grammar:
///
///   scenario := factor+ [ '|' 'edges' '=' edge (';' edge)* ]
///   factor   := '(' INT 'x' INT ',' INT ')' [ '^' INT ]
///   edge     := '(' INT ',' INT ')'
///
/// Case- and whitespace-insensitive; user indices in the edge clause are
/// 1-based; without a clause the channel is fully connected. The result is
/// normalized (zero-stream users dropped together with their edges) and must
/// end up with a nonempty edge set.
Scenario parse_scenario(std::string_view text);

/// Same grammar, but the stream slot may also be '?' (a search slot for DoF
/// maximization). `streams[j]` is nullopt for search slots.
struct ScenarioPattern {
    std::vector<UserConfig> users; // streams field meaningful only when fixed
    std::vector<std::optional<int>> streams;
    std::vector<Edge> edges;
};

ScenarioPattern parse_scenario_pattern(std::string_view text);

/// Drops users with zero streams along with their incident edges and
/// renumbers the remaining users. Idempotent; may leave the edge set empty.
Scenario normalize(const Scenario& scenario);

/// Canonical textual form: factors with greedy left-to-right `^r` compression
/// and an edge clause only when not fully connected. Reparsing the output of
/// to_string() on a normalized scenario reproduces it exactly.
std::string to_string(const Scenario& scenario);

/// Advisory screens that never block the feasibility machinery: the per-user
/// stream/antenna conditions and the strict per-edge sum bound
/// d_k + d_l < N_k + M_l. The rank test gives correct answers even when these
/// fail, so the report is diagnostics only.
struct ValidationReport {
    struct UserCheck {
        int user = 0;
        bool ok = true;
    };
    struct EdgeCheck {
        Edge edge{};
        bool ok = true;
    };

    std::vector<UserCheck> stream_bounds;  // d_k <= N_k (receivers), d_l <= M_l (transmitters)
    std::vector<EdgeCheck> edge_sum_bounds; // strict d_k + d_l < N_k + M_l
    std::vector<std::string> warnings;

    bool all_stream_bounds_ok() const;
    bool all_edge_sum_bounds_ok() const;
};

ValidationReport validate(const Scenario& scenario);

/// Fully connected edge set {(k,l) : k != l} over `user_count` users.
std::vector<Edge> fully_connected_edges(int user_count);

} // namespace iafeas

#endif
