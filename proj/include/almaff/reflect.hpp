#pragma once
#include "almaff/cartan.hpp"
#include <nlohmann/json_fwd.hpp>

namespace almaff {

// reflection at an isotropic odd (Grey) node; result is re-normalized
CartanPair odd_reflect(const CartanPair& p, int k); // 0-based node

struct OrbitLimits {
    int max_members = 10000;
    long max_entry_height = 1000000; // bound on numerator/denominator magnitude
};

// members in discovery order (canonical representatives); transitions[i][k]
// is the member reached from member i by reflecting at its node k, or -1
// where the reflection is undefined or skipped
struct OrbitClass {
    std::vector<CartanPair> members;
    std::vector<std::string> keys;
    std::vector<std::vector<int>> transitions;
    int seed_index = 0;
};

struct OrbitResult {
    bool complete = true;
    OrbitClass cls;
    std::string overflow; // reason when incomplete
};

OrbitResult orbit(const CartanPair& p, const OrbitLimits& lim = OrbitLimits{});

nlohmann::json orbit_to_json(const OrbitResult& r);

} // namespace almaff
