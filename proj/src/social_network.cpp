#include "officesim/social_network.hpp"

#include "officesim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace officesim {

std::size_t SocialNetwork::edge_count() const
{
    std::size_t twice = 0;
    for (const auto& adj : adjacency_) {
        twice += adj.size();
    }
    return twice / 2;
}

bool SocialNetwork::has_edge(int a, int b) const
{
    const auto& adj = adjacency_[static_cast<std::size_t>(a)];
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::vector<std::pair<int, int>> SocialNetwork::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a) {
        for (int b : adjacency_[static_cast<std::size_t>(a)]) {
            if (a < b) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

bool SocialNetwork::add_edge(int a, int b)
{
    if (a == b || has_edge(a, b)) {
        return false;
    }
    auto insert = [](std::vector<int>& v, int x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); };
    insert(adjacency_[static_cast<std::size_t>(a)], b);
    insert(adjacency_[static_cast<std::size_t>(b)], a);
    return true;
}

bool SocialNetwork::remove_edge(int a, int b)
{
    if (!has_edge(a, b)) {
        return false;
    }
    auto erase = [](std::vector<int>& v, int x) { v.erase(std::lower_bound(v.begin(), v.end(), x)); };
    erase(adjacency_[static_cast<std::size_t>(a)], b);
    erase(adjacency_[static_cast<std::size_t>(b)], a);
    return true;
}

SocialNetwork build_small_world(int n, const SmallWorldParams& params, Rng& rng)
{
    std::vector<std::string> problems;
    if (params.k < 2 || params.k % 2 != 0) {
        problems.push_back(fmt::format("small_world_k must be even and >= 2, got {}", params.k));
    }
    if (n <= params.k) {
        problems.push_back(fmt::format("small world needs more nodes ({}) than k ({})", n, params.k));
    }
    if (!(params.beta >= 0.0 && params.beta <= 1.0)) {
        problems.push_back(fmt::format("small_world_beta must lie in [0, 1], got {}", params.beta));
    }
    if (!problems.empty()) {
        throw ValidationError(std::move(problems));
    }

    SocialNetwork g(n);
    const int half = params.k / 2;
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j <= half; ++j) {
            g.add_edge(i, (i + j) % n);
        }
    }
    for (int j = 1; j <= half; ++j) {
        for (int i = 0; i < n; ++i) {
            const int target = (i + j) % n;
            if (!rng.bernoulli(params.beta) || !g.has_edge(i, target)) {
                continue;
            }
            // Candidates: not i, not already a neighbour of i.
            const auto degree = static_cast<int>(g.neighbors(i).size());
            if (degree >= n - 1) {
                continue;
            }
            int w = 0;
            do {
                w = static_cast<int>(rng.uniform_int(0, n - 1));
            } while (w == i || g.has_edge(i, w));
            g.remove_edge(i, target);
            g.add_edge(i, w);
        }
    }
    return g;
}

double email_probability(Stereotype sender, const ContactParams& params, const StereotypeTable& table)
{
    if (params.base_minutes <= 0.0) {
        return 0.0;
    }
    return std::clamp(params.contact_rate * table[sender].p_email / params.base_minutes, 0.0, 1.0);
}

std::vector<ContactEvent> contact_step(const SocialNetwork& network, std::span<OccupantAgent> agents,
                                       const ContactParams& params, std::int64_t minute, Rng& rng,
                                       const StereotypeTable& table)
{
    std::vector<ContactEvent> out;
    if (params.contact_rate <= 0.0 || network.size() == 0) {
        return out;
    }
    for (auto& sender : agents) {
        if (sender.location != Location::InOwnOffice || sender.id >= network.size()) {
            continue;
        }
        const auto nbrs = network.neighbors(sender.id);
        if (nbrs.empty()) {
            continue;
        }
        const double p = email_probability(sender.stereotype, params, table);
        if (p <= 0.0 || !rng.bernoulli(p)) {
            continue;
        }
        const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(nbrs.size()) - 1);
        const int receiver = nbrs[static_cast<std::size_t>(pick)];
        auto& r = agents[static_cast<std::size_t>(receiver)];
        r.awareness = std::min(100.0, r.awareness + params.awareness_delta);
        out.push_back({sender.id, receiver, minute});
    }
    return out;
}

}  // namespace officesim
