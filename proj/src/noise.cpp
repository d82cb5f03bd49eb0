#include "ghznet/noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ghznet {

namespace {

void check_parameter(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": parameter must be in [0,1]");
    }
}

}  // namespace

BellOverlaps mu_from_channel(const ChannelSpec& spec) {
    BellOverlaps o;
    switch (spec.kind) {
        case ChannelKind::depolarizing: {
            check_parameter(spec.parameter, "depolarizing");
            double p = spec.parameter;
            o.mu[0][0] = 1.0 - p;
            o.mu[1][0] = p / 3.0;
            o.mu[0][1] = p / 3.0;
            o.mu[1][1] = p / 3.0;
            break;
        }
        case ChannelKind::dephasing: {
            check_parameter(spec.parameter, "dephasing");
            double q = spec.parameter;
            o.mu[0][0] = 1.0 - q;
            o.mu[1][0] = q;
            break;
        }
        case ChannelKind::amplitude_damping: {
            check_parameter(spec.parameter, "amplitude_damping");
            double g = spec.parameter;
            double s = std::sqrt(1.0 - g);
            o.mu[0][0] = 0.25 * (1.0 + s) * (1.0 + s);
            o.mu[1][0] = 0.25 * (1.0 - s) * (1.0 - s);
            // Remaining diagonal mass of the damped pair sits evenly on the
            // two bit-flipped Bell states.
            o.mu[0][1] = g / 4.0;
            o.mu[1][1] = g / 4.0;
            break;
        }
        case ChannelKind::custom: {
            o = spec.custom;
            for (int z = 0; z < 2; ++z) {
                for (int x = 0; x < 2; ++x) {
                    if (!(o.mu[z][x] >= 0.0 && o.mu[z][x] <= 1.0)) {
                        throw std::invalid_argument("custom overlaps must be in [0,1]");
                    }
                }
            }
            if (o.sum() > 1.0 + 1e-12) {
                throw std::invalid_argument("custom overlaps must sum to at most 1");
            }
            break;
        }
    }
    return o;
}

double star_fusion_fidelity(const std::vector<BellOverlaps>& mus) {
    if (mus.size() < 2) {
        throw std::invalid_argument("star_fusion_fidelity: need at least 2 pairs");
    }
    double prod_sum = 1.0;
    double prod_diff = 1.0;
    for (const BellOverlaps& o : mus) {
        prod_sum *= o.mu[0][0] + o.mu[1][0];
        prod_diff *= o.mu[0][0] - o.mu[1][0];
    }
    return 0.5 * (prod_sum + prod_diff);
}

double tree_fusion_fidelity(const std::vector<GhzOverlaps>& lams) {
    if (lams.size() < 2) {
        throw std::invalid_argument("tree_fusion_fidelity: need at least 2 states");
    }
    double prod_sum = 1.0;
    double prod_diff = 1.0;
    for (const GhzOverlaps& o : lams) {
        prod_sum *= o.lambda0 + o.lambda1;
        prod_diff *= o.lambda0 - o.lambda1;
    }
    return 0.5 * (prod_sum + prod_diff);
}

GhzOverlaps star_fusion_overlaps(int n, double mu0, double mu1) {
    if (n < 1) {
        throw std::invalid_argument("star_fusion_overlaps: need n >= 1");
    }
    GhzOverlaps o;
    o.lambda0 = 0.5 * (std::pow(mu0 + mu1, n) + std::pow(mu0 - mu1, n));
    o.lambda1 = 0.5 * (std::pow(mu0 + mu1, n) - std::pow(mu0 - mu1, n));
    return o;
}

double composed_fidelity(int n, int m, double mu0, double mu1) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("composed_fidelity: need n, m >= 1");
    }
    double nm = static_cast<double>(n) * static_cast<double>(m);
    return 0.5 * (std::pow(mu0 + mu1, nm) + std::pow(mu0 - mu1, nm));
}

double noise_threshold(ChannelKind kind, int n, double target_fidelity) {
    if (n < 1) {
        throw std::invalid_argument("noise_threshold: need n >= 1");
    }
    if (!(target_fidelity > 0.5 && target_fidelity <= 1.0)) {
        throw std::invalid_argument("noise_threshold: fidelity must be in (1/2, 1]");
    }
    double two_f = 2.0 * target_fidelity;
    auto boundary = [&](double p) {
        switch (kind) {
            case ChannelKind::depolarizing:
                return std::pow(1.0 - 4.0 * p / 3.0, n) + std::pow(1.0 - 2.0 * p / 3.0, n);
            case ChannelKind::dephasing:
                return std::pow(1.0 - 2.0 * p, n) + 1.0;
            case ChannelKind::amplitude_damping:
                return std::pow(1.0 - p, n / 2.0) + std::pow(1.0 - p / 2.0, n);
            case ChannelKind::custom:
                break;
        }
        throw std::invalid_argument("noise_threshold: unsupported channel kind");
    };

    if (kind == ChannelKind::dephasing) {
        return 0.5 * (1.0 - std::pow(two_f - 1.0, 1.0 / n));
    }

    // The feasible set is an interval [0, p*]; bisect on the indicator.
    double lo = 0.0;
    double hi = 1.0;
    if (boundary(hi) >= two_f) {
        return hi;
    }
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-15; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (boundary(mid) >= two_f) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PauliWord canonical_pauli(int n, std::uint64_t x, std::uint64_t z) {
    if (n < 1 || n > 63) {
        throw std::invalid_argument("canonical_pauli: need 1 <= n <= 63");
    }
    std::uint64_t mask = (1ull << n) - 1ull;
    PauliWord w;
    w.n = n;
    w.x = x & mask;
    w.z = z & mask;
    w.phase = std::popcount(w.x & w.z) % 4;
    return w;
}

PauliWord fanout_cnot_conjugate(const PauliWord& word) {
    if (word.n < 2) {
        throw std::invalid_argument("fanout_cnot_conjugate: need n >= 2");
    }
    std::uint64_t mask = (1ull << word.n) - 1ull;
    std::uint64_t rest = mask & ~1ull;
    PauliWord out = word;
    if (word.x & 1ull) {
        out.x = word.x ^ rest;  // control X fans out to every target
    }
    std::uint64_t parity = static_cast<std::uint64_t>(std::popcount(word.z & mask)) & 1ull;
    out.z = (word.z & rest) | parity;  // target Zs collapse onto the control
    return out;
}

void PauliChannel::validate() const {
    double total = 0.0;
    for (const auto& [word, p] : terms) {
        if (word.n != n) {
            throw std::invalid_argument("PauliChannel: word length mismatch");
        }
        if (p < -1e-12) {
            throw std::invalid_argument("PauliChannel: negative probability");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("PauliChannel: probabilities must sum to 1");
    }
}

PauliChannel absorb_channel_through_fanout(const PauliChannel& channel) {
    channel.validate();
    PauliChannel out;
    out.n = channel.n;
    out.terms.reserve(channel.terms.size());
    for (const auto& [word, p] : channel.terms) {
        out.terms.emplace_back(fanout_cnot_conjugate(word), p);
    }
    return out;
}

double hub_graph_state_fidelity(const std::vector<std::uint64_t>& adjacency,
                                const std::vector<BellOverlaps>& overlaps) {
    std::size_t n = overlaps.size();
    if (adjacency.size() != n) {
        throw std::invalid_argument("hub_graph_state_fidelity: adjacency/overlap size mismatch");
    }
    if (n == 0 || n > 24) {
        throw std::invalid_argument("hub_graph_state_fidelity: need 1 <= n <= 24");
    }
    double fidelity = 0.0;
    for (std::uint64_t xs = 0; xs < (1ull << n); ++xs) {
        double term = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            int xi = static_cast<int>((xs >> i) & 1ull);
            int zi = std::popcount(adjacency[i] & xs) & 1;
            term *= overlaps[i].mu[zi][xi];
            if (term == 0.0) {
                break;
            }
        }
        fidelity += term;
    }
    return fidelity;
}

}  // namespace ghznet
