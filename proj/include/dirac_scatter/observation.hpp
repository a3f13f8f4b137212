#pragma once

// Observation sets: which transfer-matrix entries a reconstruction run is
// allowed to see.  Pairs index the canonical mode list of a solve; only
// propagating modes up to a level cap participate.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slab.hpp"

namespace dirac_scatter {

enum class ObservationSet {
    all,             // every propagating pair (n, q) up to the cap
    low,             // pairs whose level set is {0, s} or {1, s}
    level_diagonal,  // pairs with equal levels n = q (all branch combinations)
    transmission,    // identical modes only (m, m)
    reflection,      // equal level, opposite branch, level >= 1
};

inline ObservationSet parse_observation_set(const std::string& name) {
    if (name == "all") return ObservationSet::all;
    if (name == "low") return ObservationSet::low;
    if (name == "diag") return ObservationSet::level_diagonal;
    if (name == "trans") return ObservationSet::transmission;
    if (name == "refl") return ObservationSet::reflection;
    throw std::invalid_argument("unknown observation set: " + name);
}

inline std::string observation_set_name(ObservationSet set) {
    switch (set) {
        case ObservationSet::all: return "all";
        case ObservationSet::low: return "low";
        case ObservationSet::level_diagonal: return "diag";
        case ObservationSet::transmission: return "trans";
        case ObservationSet::reflection: return "refl";
    }
    return "?";
}

// Index pairs (row, col) into the canonical mode list of one energy context.
inline std::vector<std::pair<int, int>> observation_pairs(
    ObservationSet set, const std::vector<TransferMode>& modes, int level_cap) {
    std::vector<std::pair<int, int>> out;
    const int nm = static_cast<int>(modes.size());
    for (int r = 0; r < nm; ++r) {
        const TransferMode& mr = modes[static_cast<std::size_t>(r)];
        if (!mr.propagating || mr.idx.n > level_cap) continue;
        for (int c = 0; c < nm; ++c) {
            const TransferMode& mc = modes[static_cast<std::size_t>(c)];
            if (!mc.propagating || mc.idx.n > level_cap) continue;
            bool keep = false;
            switch (set) {
                case ObservationSet::all:
                    keep = true;
                    break;
                case ObservationSet::low: {
                    const int lo = std::min(mr.idx.n, mc.idx.n);
                    keep = (lo <= 1);
                    break;
                }
                case ObservationSet::level_diagonal:
                    keep = (mr.idx.n == mc.idx.n);
                    break;
                case ObservationSet::transmission:
                    keep = (mr.idx == mc.idx);
                    break;
                case ObservationSet::reflection:
                    keep = (mr.idx.n == mc.idx.n) && (mr.idx.n >= 1) &&
                           (mr.idx.eps != mc.idx.eps);
                    break;
            }
            if (keep) out.emplace_back(r, c);
        }
    }
    return out;
}

}  // namespace dirac_scatter
