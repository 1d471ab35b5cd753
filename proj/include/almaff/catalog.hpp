#pragma once
#include "almaff/cartan.hpp"
#include "almaff/reflect.hpp"
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace almaff {

enum class Mode { Super, Even };
enum class Growth { Fin, Aff };
enum class Vinberg { Fin, Aff, Ind };

// Principal-minor test for an all-even pair with diagonal 2: Fin when every
// principal minor is positive, Aff when the full determinant is the only
// non-positive one (and it is 0), Ind otherwise.
Vinberg vinberg_class(const CartanPair& p);

// A recognized finite- or affine-growth class.  Display names can differ by
// mode for classes the source lists under two names.
struct Classification {
    Growth growth;
    std::string name_super, name_even;
    const std::string& name(Mode m) const {
        return m == Mode::Super ? name_super : name_even;
    }
};

struct CatalogOptions {
    int max_rank = 9;
    int seed_orbit_limit = 20000;
};

// Immutable lookup table of named Fin/Aff classes: every member of the odd
// reflection orbit of every seed is indexed by canonical key.
class Catalog {
  public:
    explicit Catalog(CatalogOptions opt = {});

    // cached shared instance per max_rank
    static const Catalog& standard(int max_rank = 9);

    int max_rank() const { return opt_.max_rank; }
    int class_count() const { return (int)classes_.size(); }

    const Classification* lookup_key(const std::string& canonical_key) const;
    const Classification* lookup(const CartanPair& p) const;

    struct Row {
        std::string family; // name_super (name_even differs only for dual-named classes)
        Growth growth;
        int rank = 0;
        bool super = false;
        int orbit_size = 0;
    };
    std::vector<Row> rows() const;
    const std::vector<CartanPair>& members(int class_index) const;

    // self-consistency sweep: every block of every single-node deletion of
    // every entry's representative must classify Fin; returns violations
    std::vector<std::string> scan() const;

    // largest |entry| over the rational entries of all members (the
    // off-diagonal bound used by the enumeration)
    Rat max_entry_magnitude() const;

  private:
    void add_seed(const CartanPair& seed, std::string name_super,
                  std::string name_even);

    CatalogOptions opt_;
    std::vector<Classification> classes_;
    std::vector<std::vector<CartanPair>> members_;
    std::unordered_map<std::string, int> index_;
};

Catalog build_catalog(CatalogOptions opt = {});

// direct table for connected size-2 pairs; nullopt when not Fin/Aff
std::optional<Classification> classify_rank2(const CartanPair& p);

// Fin/Aff recognition for an indecomposable pair: size-1 forms, the rank-2
// table, Vinberg's test for purely even pairs, catalog lookup, then the
// parametric family matchers.  nullopt = not of finite or affine growth.
std::optional<Classification> classify_component(const CartanPair& p,
                                                 const Catalog& cat);

// d(alpha) / svect_alpha(1|2) recognition with the parameter value rendered
// into the name (e.g. "d(3)", "svect_5(1|2)")
std::optional<Classification> match_parametric(const CartanPair& p);

// Witness for a failed matrix-level test.
struct BlockFailure {
    std::string reason;     // "zero-pattern" | "recognized" | "block"
    int node = -1;          // deleted node for reason == "block" (0-based)
    std::vector<int> block; // offending component, original indices
};

struct MatrixTest {
    bool pass = false;
    // per deleted node: names of the deletion's blocks, in block index order
    std::vector<std::vector<std::string>> names_super, names_even;
    std::optional<BlockFailure> failure;
};

// The deletion test: the pair itself must not classify, and every block of
// every single-node principal deletion must classify.
MatrixTest almost_affine_matrix_test(const CartanPair& p, const Catalog& cat);

// per-node block names for one mode; requires the matrix test to pass
std::vector<std::vector<std::string>> annotate(const CartanPair& p, Mode mode,
                                               const Catalog& cat);

enum class VerdictKind { AlmostAffine, NotAlmostAffine, Inconclusive };

struct ClassVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::vector<CartanPair> members; // explored canonical members, seed first
    std::vector<std::string> keys;   // canonical keys, aligned with members
    int witness = -1;                // failing member index (NotAlmostAffine)
    std::optional<BlockFailure> witness_failure;
};

// Orbit sweep interleaved with the matrix test: a failing member ends the
// search with a witness; exhausting the orbit affirms the class.
ClassVerdict almost_affine_class_test(const CartanPair& p, const Catalog& cat,
                                      int max_members = 2000);

} // namespace almaff
