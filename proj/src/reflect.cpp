#include "almaff/reflect.hpp"
#include <nlohmann/json.hpp>
#include <deque>
#include <unordered_map>

namespace almaff {

CartanPair odd_reflect(const CartanPair& p, int k) {
    int n = p.n;
    if (k < 0 || k >= n) throw Error("reflect", "node index out of range");
    if (p.parity[k] != 1 || !p.at(k, k).is_zero())
        throw Error("reflect", "reflection needs an isotropic odd node");
    std::vector<Scalar> b(n), c(n);
    for (int i = 0; i < n; ++i) {
        if (i == k) {
            b[i] = Scalar(-2);
            c[i] = Scalar(-2);
        } else if (p.at(i, k).is_zero()) {
            b[i] = Scalar(0);
            c[i] = Scalar(0);
        } else {
            if (p.at(k, i).is_zero())
                throw Error("reflect", "zero pattern is one-sided at the reflection node");
            b[i] = p.at(i, k) / p.at(k, i);
            c[i] = Scalar(1);
        }
    }
    CartanPair q;
    q.n = n;
    q.m.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            q.m.push_back(p.at(i, j) + b[i] * p.at(k, j) + c[j] * p.at(i, k));
    for (int i = 0; i < n; ++i) {
        int flip = (i != k && !p.at(i, k).is_zero()) ? 1 : 0;
        q.parity.push_back((uint8_t)((p.parity[i] + flip) % 2));
    }
    return normalize_rows(q);
}

static bool column_symmetric_at(const CartanPair& p, int k) {
    for (int i = 0; i < p.n; ++i)
        if (p.at(i, k).is_zero() != p.at(k, i).is_zero()) return false;
    return true;
}

static bool height_ok(const CartanPair& p, long bound) {
    Int b(bound);
    for (const auto& v : p.m)
        if (v.height() > b) return false;
    return true;
}

OrbitResult orbit(const CartanPair& p, const OrbitLimits& lim) {
    OrbitResult out;
    auto seed = canonical_form(normalize_rows(p));
    std::unordered_map<std::string, int> index;
    index.emplace(seed.key, 0);
    out.cls.members.push_back(seed.rep);
    out.cls.keys.push_back(seed.key);
    out.cls.seed_index = 0;

    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int at = frontier.front();
        frontier.pop_front();
        CartanPair cur = out.cls.members[at]; // copy: members may reallocate
        int n = cur.n;
        if ((int)out.cls.transitions.size() <= at)
            out.cls.transitions.resize(at + 1);
        out.cls.transitions[at].assign(n, -1);
        for (int k = 0; k < n; ++k) {
            if (cur.parity[k] != 1 || !cur.at(k, k).is_zero()) continue;
            if (!column_symmetric_at(cur, k)) continue;
            CartanPair q = odd_reflect(cur, k);
            if (!height_ok(q, lim.max_entry_height)) {
                out.complete = false;
                out.overflow = "entry height limit exceeded";
                return out;
            }
            auto cq = canonical_form(q);
            auto it = index.find(cq.key);
            int target;
            if (it == index.end()) {
                if ((int)out.cls.members.size() >= lim.max_members) {
                    out.complete = false;
                    out.overflow = "member limit exceeded";
                    return out;
                }
                target = (int)out.cls.members.size();
                index.emplace(cq.key, target);
                out.cls.members.push_back(cq.rep);
                out.cls.keys.push_back(cq.key);
                frontier.push_back(target);
            } else {
                target = it->second;
            }
            out.cls.transitions[at][k] = target;
        }
    }
    return out;
}

nlohmann::json orbit_to_json(const OrbitResult& r) {
    nlohmann::json doc;
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : r.cls.members) members.push_back(pair_to_json(m));
    doc["members"] = members;
    nlohmann::json trans = nlohmann::json::array();
    for (const auto& row : r.cls.transitions) {
        nlohmann::json jr = nlohmann::json::array();
        for (int t : row) {
            if (t < 0)
                jr.push_back(nullptr);
            else
                jr.push_back(t);
        }
        trans.push_back(jr);
    }
    doc["transitions"] = trans;
    doc["seed_index"] = r.cls.seed_index;
    if (!r.complete) doc["overflow"] = r.overflow;
    return doc;
}

} // namespace almaff
