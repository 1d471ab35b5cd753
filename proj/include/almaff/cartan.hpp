#pragma once
#include "almaff/scalar.hpp"
#include <nlohmann/json_fwd.hpp>
#include <vector>

namespace almaff {

// (A, I): square matrix of exact scalars plus a parity per index.
struct CartanPair {
    int n = 0;
    std::vector<Scalar> m;       // row-major
    std::vector<uint8_t> parity; // 0 even, 1 odd
    std::string label;

    CartanPair() = default;
    CartanPair(int size, std::vector<Scalar> mat, std::vector<uint8_t> par)
        : n(size), m(std::move(mat)), parity(std::move(par)) {}

    const Scalar& at(int i, int j) const { return m[i * n + j]; }
    Scalar& at(int i, int j) { return m[i * n + j]; }
    bool edge(int i, int j) const { return !at(i, j).is_zero() || !at(j, i).is_zero(); }
    bool operator==(const CartanPair& o) const {
        return n == o.n && parity == o.parity && m == o.m;
    }
};

// convenience for literal matrices (integer entries)
CartanPair pair_of(const std::vector<std::vector<long>>& rows,
                   const std::vector<int>& parities);

enum class NodeKind { White, Black, Grey, Star, Sun };

// kind of node i of a normalized pair; throws for off-scale diagonals
NodeKind node_kind(const CartanPair& p, int i);
char kind_char(NodeKind k); // O * X S U

bool zero_symmetric(const CartanPair& p);

// Row rescaling to the standard form: diagonals 1 (odd) / 2 (even) when
// nonzero; zero-diagonal rows scaled so the first nonzero entry after the
// diagonal is +1, or the first one before it is -1 when nothing follows.
CartanPair normalize(const CartanPair& p);

// same rescaling without the zero-pattern validation; reflection sweeps can
// pass through matrices whose zero pattern is momentarily one-sided
CartanPair normalize_rows(const CartanPair& p);

CartanPair principal_delete(const CartanPair& p, int k); // 0-based node

// connected components of the off-diagonal nonzero graph restricted to `keep`
std::vector<std::vector<int>> component_sets(const CartanPair& p,
                                             const std::vector<int>& keep);
CartanPair subpair(const CartanPair& p, const std::vector<int>& idxs);
std::vector<CartanPair> decompose(const CartanPair& p);
bool indecomposable(const CartanPair& p);

// Canonical representative of the equivalence class under simultaneous
// row+column permutation and zero-diagonal row rescaling.  The key is a
// deterministic text encoding usable as a hash key; equal keys iff equivalent.
struct Canon {
    std::string key;
    CartanPair rep;
};
Canon canonical_form(const CartanPair& p);
std::string canonical_key(const CartanPair& p);

// brute-force variant trying every permutation (test oracle, small n only)
Canon canonical_form_bruteforce(const CartanPair& p);

bool is_symmetrizable(const CartanPair& p);

// pair documents: {"size", "parities", "matrix", "label"?}
nlohmann::json pair_to_json(const CartanPair& p);
CartanPair pair_from_json(const nlohmann::json& doc);

} // namespace almaff
