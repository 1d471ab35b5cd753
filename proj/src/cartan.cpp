#include "almaff/cartan.hpp"
#include <nlohmann/json.hpp>
#include <algorithm>
#include <map>
#include <set>

namespace almaff {

CartanPair pair_of(const std::vector<std::vector<long>>& rows,
                   const std::vector<int>& parities) {
    int n = (int)rows.size();
    CartanPair p;
    p.n = n;
    p.m.reserve(n * n);
    for (const auto& r : rows) {
        if ((int)r.size() != n) throw Error("cartan", "matrix is not square");
        for (long v : r) p.m.emplace_back(v);
    }
    if ((int)parities.size() != n) throw Error("cartan", "parity count mismatch");
    for (int v : parities) p.parity.push_back(v ? 1 : 0);
    return p;
}

NodeKind node_kind(const CartanPair& p, int i) {
    const Scalar& d = p.at(i, i);
    bool odd = p.parity[i] != 0;
    if (d.is_zero()) return odd ? NodeKind::Grey : NodeKind::Sun;
    if (d == Scalar(1)) return odd ? NodeKind::Black : NodeKind::Star;
    if (d == Scalar(2) && !odd) return NodeKind::White;
    throw Error("cartan", "node kind of a non-normalized diagonal");
}

char kind_char(NodeKind k) {
    switch (k) {
        case NodeKind::White: return 'O';
        case NodeKind::Black: return '*';
        case NodeKind::Grey: return 'X';
        case NodeKind::Star: return 'S';
        default: return 'U';
    }
}

bool zero_symmetric(const CartanPair& p) {
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j)
            if (p.at(i, j).is_zero() != p.at(j, i).is_zero()) return false;
    return true;
}

static bool row_scalable(const CartanPair& p, int i) { return p.at(i, i).is_zero(); }

struct NormResult {
    CartanPair pair;
    std::vector<Scalar> lambda;
};

static NormResult normalize_witness(const CartanPair& p) {
    NormResult out;
    out.pair = p;
    out.lambda.assign(p.n, Scalar(1));
    for (int i = 0; i < p.n; ++i) {
        const Scalar& dg = p.at(i, i);
        Scalar t(1);
        if (!dg.is_zero()) {
            if (p.parity[i]) {
                t = Scalar(1) / dg;
            } else if (dg != Scalar(1)) {
                t = Scalar(2) / dg;
            }
        } else {
            int lead = -1;
            for (int j = i + 1; j < p.n; ++j)
                if (!p.at(i, j).is_zero()) { lead = j; break; }
            if (lead >= 0) {
                t = Scalar(1) / p.at(i, lead);
            } else {
                for (int j = 0; j < i; ++j)
                    if (!p.at(i, j).is_zero()) { lead = j; break; }
                if (lead >= 0) t = -(Scalar(1) / p.at(i, lead));
            }
        }
        if (t != Scalar(1)) {
            out.lambda[i] = t;
            for (int j = 0; j < p.n; ++j) out.pair.at(i, j) = p.at(i, j) * t;
        }
    }
    return out;
}

CartanPair normalize(const CartanPair& p) {
    if (!zero_symmetric(p)) throw Error("cartan", "zero pattern is not symmetric");
    return normalize_witness(p).pair;
}

CartanPair normalize_rows(const CartanPair& p) { return normalize_witness(p).pair; }

CartanPair principal_delete(const CartanPair& p, int k) {
    if (p.n < 2) throw Error("cartan", "cannot delete from a 1x1 pair");
    if (k < 0 || k >= p.n) throw Error("cartan", "node index out of range");
    std::vector<int> idxs;
    for (int i = 0; i < p.n; ++i)
        if (i != k) idxs.push_back(i);
    return subpair(p, idxs);
}

std::vector<std::vector<int>> component_sets(const CartanPair& p,
                                             const std::vector<int>& keep) {
    std::set<int> seen;
    std::vector<std::vector<int>> comps;
    for (int s : keep) {
        if (seen.count(s)) continue;
        std::vector<int> stack{s}, comp;
        seen.insert(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : keep)
                if (!seen.count(w) && p.edge(v, w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

CartanPair subpair(const CartanPair& p, const std::vector<int>& idxs) {
    CartanPair q;
    q.n = (int)idxs.size();
    q.m.reserve(q.n * q.n);
    for (int i : idxs)
        for (int j : idxs) q.m.push_back(p.at(i, j));
    for (int i : idxs) q.parity.push_back(p.parity[i]);
    return q;
}

std::vector<CartanPair> decompose(const CartanPair& p) {
    std::vector<int> all(p.n);
    for (int i = 0; i < p.n; ++i) all[i] = i;
    std::vector<CartanPair> out;
    for (const auto& comp : component_sets(p, all)) out.push_back(subpair(p, comp));
    return out;
}

bool indecomposable(const CartanPair& p) {
    std::vector<int> all(p.n);
    for (int i = 0; i < p.n; ++i) all[i] = i;
    return component_sets(p, all).size() == 1;
}

// ---- canonical form ----------------------------------------------------
// Equivalence group: simultaneous row+column permutation, plus rescaling of
// zero-diagonal rows by any nonzero scalar.  For a fixed permutation the
// scale of each zero-diagonal row is pinned by making its first nonzero
// entry, in permuted column order, equal to +1.  The key lists, for each
// position k: parity(k); row k entries at columns 0..k; column k entries at
// rows 0..k-1.  Branch-and-prune over permutations yields the global
// minimum in plain string order.

namespace {

struct CanonCtx {
    const CartanPair& p;
    std::vector<int> colors;
    std::vector<int> cand_order;
    std::string best;
    std::vector<int> best_perm;
    std::vector<Scalar> best_scales;
    bool have_best = false;

    std::vector<int> perm;
    std::vector<char> used;
    std::vector<Scalar> scales;
    std::vector<char> has_scale;
};

void append_scalar(std::string& key, const Scalar& v) {
    key += v.str();
    key += '|';
}

// emit the block for position k; sets scales lazily at the first nonzero
// entry of a zero-diagonal row in permuted order
void emit_block(CanonCtx& c, int k, std::string& key) {
    const CartanPair& p = c.p;
    int i = c.perm[k];
    key += char('0' + p.parity[i]);
    key += '|';
    for (int b = 0; b <= k; ++b) {
        int j = c.perm[b];
        Scalar v = p.at(i, j);
        if (!v.is_zero() && row_scalable(p, i)) {
            if (!c.has_scale[i]) {
                c.scales[i] = Scalar(1) / v;
                c.has_scale[i] = 1;
            }
            v = v * c.scales[i];
        }
        append_scalar(key, v);
    }
    for (int a = 0; a < k; ++a) {
        int r = c.perm[a];
        Scalar v = p.at(r, i);
        if (!v.is_zero() && row_scalable(p, r)) {
            if (!c.has_scale[r]) {
                c.scales[r] = Scalar(1) / v;
                c.has_scale[r] = 1;
            }
            v = v * c.scales[r];
        }
        append_scalar(key, v);
    }
}

// true when the accumulated prefix already exceeds the best key
bool prefix_beaten(const CanonCtx& c, const std::string& acc) {
    if (!c.have_best) return false;
    size_t m = std::min(acc.size(), c.best.size());
    int cmp = acc.compare(0, m, c.best, 0, m);
    if (cmp != 0) return cmp > 0;
    return acc.size() > c.best.size(); // longer prefix of an equal string
}

void rec(CanonCtx& c, const std::string& acc) {
    int n = c.p.n;
    int k = (int)c.perm.size();
    if (k == n) {
        if (!c.have_best || acc < c.best) {
            c.best = acc;
            c.best_perm = c.perm;
            c.best_scales = c.scales;
            c.have_best = true;
        }
        return;
    }
    for (int idx : c.cand_order) {
        if (c.used[idx]) continue;
        std::vector<Scalar> save_scales = c.scales;
        std::vector<char> save_has = c.has_scale;
        c.perm.push_back(idx);
        c.used[idx] = 1;
        std::string next = acc;
        emit_block(c, k, next);
        if (!prefix_beaten(c, next)) rec(c, next);
        c.perm.pop_back();
        c.used[idx] = 0;
        c.scales = std::move(save_scales);
        c.has_scale = std::move(save_has);
    }
}

std::vector<int> refine_colors(const CartanPair& p) {
    int n = p.n;
    std::vector<std::string> sig(n);
    std::vector<int> colors(n);
    for (int i = 0; i < n; ++i) {
        int deg = 0;
        for (int j = 0; j < n; ++j)
            if (j != i && !p.at(i, j).is_zero()) ++deg;
        sig[i] = std::string(1, char('0' + p.parity[i])) + "|" + p.at(i, i).str() +
                 "|" + std::to_string(deg);
    }
    auto reindex = [&]() {
        std::vector<std::string> uniq(sig);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> out(n);
        for (int i = 0; i < n; ++i)
            out[i] = (int)(std::lower_bound(uniq.begin(), uniq.end(), sig[i]) -
                           uniq.begin());
        return out;
    };
    colors = reindex();
    for (int round = 0; round < n; ++round) {
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> nb;
            for (int j = 0; j < n; ++j) {
                if (j == i || p.at(i, j).is_zero()) continue;
                std::string t = std::to_string(colors[j]) + ",";
                t += row_scalable(p, i) ? std::string("s") : p.at(i, j).str();
                t += ",";
                t += row_scalable(p, j) ? std::string("s") : p.at(j, i).str();
                nb.push_back(t);
            }
            std::sort(nb.begin(), nb.end());
            std::string s = std::to_string(colors[i]);
            for (auto& t : nb) {
                s += ";";
                s += t;
            }
            sig[i] = s;
        }
        std::vector<int> next = reindex();
        if (next == colors) break;
        colors = next;
    }
    return colors;
}

} // namespace

Canon canonical_form(const CartanPair& p) {
    int n = p.n;
    CanonCtx c{p};
    c.colors = refine_colors(p);
    c.cand_order.resize(n);
    for (int i = 0; i < n; ++i) c.cand_order[i] = i;
    std::sort(c.cand_order.begin(), c.cand_order.end(), [&](int a, int b) {
        if (c.colors[a] != c.colors[b]) return c.colors[a] < c.colors[b];
        return a < b;
    });
    c.used.assign(n, 0);
    c.scales.assign(n, Scalar(1));
    c.has_scale.assign(n, 0);
    rec(c, std::string());

    CartanPair rep;
    rep.n = n;
    rep.m.reserve(n * n);
    for (int a = 0; a < n; ++a) {
        int i = c.best_perm[a];
        for (int b = 0; b < n; ++b) {
            Scalar v = p.at(i, c.best_perm[b]);
            if (!v.is_zero() && row_scalable(p, i)) v = v * c.best_scales[i];
            rep.m.push_back(v);
        }
    }
    for (int a = 0; a < n; ++a) rep.parity.push_back(p.parity[c.best_perm[a]]);
    rep.label = p.label;
    return Canon{std::move(c.best), normalize_rows(rep)};
}

std::string canonical_key(const CartanPair& p) { return canonical_form(p).key; }

Canon canonical_form_bruteforce(const CartanPair& p) {
    int n = p.n;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::string best;
    std::vector<int> best_perm;
    std::vector<Scalar> best_scales;
    bool have = false;
    do {
        std::vector<Scalar> scales(n, Scalar(1));
        std::vector<char> has(n, 0);
        std::string key;
        for (int k = 0; k < n; ++k) {
            int i = perm[k];
            key += char('0' + p.parity[i]);
            key += '|';
            for (int b = 0; b <= k; ++b) {
                Scalar v = p.at(i, perm[b]);
                if (!v.is_zero() && row_scalable(p, i)) {
                    if (!has[i]) {
                        scales[i] = Scalar(1) / v;
                        has[i] = 1;
                    }
                    v = v * scales[i];
                }
                append_scalar(key, v);
            }
            for (int a = 0; a < k; ++a) {
                int r = perm[a];
                Scalar v = p.at(r, i);
                if (!v.is_zero() && row_scalable(p, r)) {
                    if (!has[r]) {
                        scales[r] = Scalar(1) / v;
                        has[r] = 1;
                    }
                    v = v * scales[r];
                }
                append_scalar(key, v);
            }
        }
        if (!have || key < best) {
            best = key;
            best_perm = perm;
            best_scales = scales;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    CartanPair rep;
    rep.n = n;
    for (int a = 0; a < n; ++a) {
        int i = best_perm[a];
        for (int b = 0; b < n; ++b) {
            Scalar v = p.at(i, best_perm[b]);
            if (!v.is_zero() && row_scalable(p, i)) v = v * best_scales[i];
            rep.m.push_back(v);
        }
    }
    for (int a = 0; a < n; ++a) rep.parity.push_back(p.parity[best_perm[a]]);
    return Canon{std::move(best), normalize_rows(rep)};
}

bool is_symmetrizable(const CartanPair& p) {
    int n = p.n;
    std::vector<Scalar> d(n, Scalar(0));
    std::vector<char> set(n, 0);
    for (int root = 0; root < n; ++root) {
        if (set[root]) continue;
        d[root] = Scalar(1);
        set[root] = 1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j == i || !p.edge(i, j)) continue;
                if (p.at(i, j).is_zero() || p.at(j, i).is_zero()) return false;
                if (!set[j]) {
                    d[j] = d[i] * p.at(i, j) / p.at(j, i);
                    set[j] = 1;
                    stack.push_back(j);
                }
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d[i] * p.at(i, j) != d[j] * p.at(j, i)) return false;
    return true;
}

nlohmann::json pair_to_json(const CartanPair& p) {
    nlohmann::json doc;
    doc["size"] = p.n;
    nlohmann::json pars = nlohmann::json::array();
    for (auto v : p.parity) pars.push_back(v ? "odd" : "even");
    doc["parities"] = pars;
    nlohmann::json mat = nlohmann::json::array();
    for (int i = 0; i < p.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < p.n; ++j) row.push_back(p.at(i, j).str());
        mat.push_back(row);
    }
    doc["matrix"] = mat;
    if (!p.label.empty()) doc["label"] = p.label;
    return doc;
}

static CartanPair pair_from_json_impl(const nlohmann::json& doc);

CartanPair pair_from_json(const nlohmann::json& doc) {
    try {
        return pair_from_json_impl(doc);
    } catch (const nlohmann::json::exception& e) {
        throw Error("cartan", std::string("bad pair document: ") + e.what());
    }
}

static CartanPair pair_from_json_impl(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("size") || !doc.contains("parities") ||
        !doc.contains("matrix"))
        throw Error("cartan", "pair document needs size, parities, matrix");
    int n = doc.at("size").get<int>();
    if (n < 1) throw Error("cartan", "size must be positive");
    CartanPair p;
    p.n = n;
    const auto& pars = doc.at("parities");
    if (!pars.is_array() || (int)pars.size() != n)
        throw Error("cartan", "parity count mismatch");
    for (const auto& v : pars) {
        std::string s = v.get<std::string>();
        if (s == "even")
            p.parity.push_back(0);
        else if (s == "odd")
            p.parity.push_back(1);
        else
            throw Error("cartan", "parity must be \"even\" or \"odd\"");
    }
    const auto& mat = doc.at("matrix");
    if (!mat.is_array() || (int)mat.size() != n)
        throw Error("cartan", "matrix is not square");
    for (const auto& row : mat) {
        if (!row.is_array() || (int)row.size() != n)
            throw Error("cartan", "matrix is not square");
        for (const auto& v : row) p.m.push_back(Scalar::parse(v.get<std::string>()));
    }
    if (doc.contains("label")) p.label = doc.at("label").get<std::string>();
    return p;
}

} // namespace almaff
