#pragma once

#include "officesim/occupant.hpp"
#include "officesim/rng.hpp"
#include "officesim/stereotypes.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace officesim {

/// Undirected contact graph over occupants (node i is agent id i).
class SocialNetwork {
public:
    SocialNetwork() = default;
    explicit SocialNetwork(int n) : adjacency_(static_cast<std::size_t>(n)) {}

    int size() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const;
    bool has_edge(int a, int b) const;
    std::span<const int> neighbors(int node) const { return adjacency_[static_cast<std::size_t>(node)]; }
    /// Edges as (lo, hi) pairs in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    /// Adds an undirected edge; returns false for self-loops and duplicates.
    bool add_edge(int a, int b);
    bool remove_edge(int a, int b);

private:
    std::vector<std::vector<int>> adjacency_;  // each list kept sorted
};

struct SmallWorldParams {
    int k = 4;          ///< even ring-lattice degree
    double beta = 0.1;  ///< rewiring probability

    bool operator==(const SmallWorldParams&) const = default;
};

/// Watts-Strogatz: ring lattice where each node links to its k/2 nearest
/// neighbours on either side, then every lattice edge (i, i+j) has its far end
/// rewired with probability beta to a uniformly chosen node that is neither i
/// nor already adjacent to i. Edge count stays n*k/2.
/// Throws ValidationError unless n > k >= 2, k even and beta in [0, 1].
SocialNetwork build_small_world(int n, const SmallWorldParams& params, Rng& rng);

struct ContactParams {
    double contact_rate = 1.0;
    double awareness_delta = 1.0;
    /// Office minutes over which p_email is spread at contact_rate 1.
    double base_minutes = 480.0;

    bool operator==(const ContactParams&) const = default;
};

struct ContactEvent {
    int sender = 0;
    int receiver = 0;
    std::int64_t minute = 0;

    bool operator==(const ContactEvent&) const = default;
};

/// Per-minute email probability of a sender: contact_rate * p_email / base_minutes,
/// capped at 1.
double email_probability(Stereotype sender, const ContactParams& params,
                         const StereotypeTable& table = kDefaultStereotypes);

/// One minute of email contact. Every agent in its own office sends, with
/// email_probability, one message to a uniformly chosen neighbour; the
/// receiver's awareness rises by awareness_delta, capped at 100. Agents are
/// visited in id order and updates apply immediately.
std::vector<ContactEvent> contact_step(const SocialNetwork& network, std::span<OccupantAgent> agents,
                                       const ContactParams& params, std::int64_t minute, Rng& rng,
                                       const StereotypeTable& table = kDefaultStereotypes);

}  // namespace officesim
