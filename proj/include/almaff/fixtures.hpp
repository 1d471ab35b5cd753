#pragma once
#include "almaff/cartan.hpp"
#include <nlohmann/json_fwd.hpp>
#include <functional>
#include <map>

namespace almaff {

// one printed matrix with its per-node deletion annotations (1-based keys)
struct FixtureDoc {
    CartanPair pair;
    std::map<int, std::vector<std::string>> annotations;
};

struct FixtureEntry {
    std::string label;
    int size = 0;
    bool symmetrizable_flag = false;
    bool parametric = false;
    Scalar root;                 // parametric entries: the instantiated value
    std::vector<long> constraint; // quadratic coefficients c2,c1,c0
    std::vector<FixtureDoc> docs;
};

std::string fixture_dir(); // ALMAFF_FIXTURE_DIR override, else data/fixtures

std::vector<FixtureEntry> load_fixture(const std::string& mode);
std::vector<FixtureEntry> load_fixture(const std::string& mode,
                                       const std::string& dir);

// one enumerated equivalence class, as produced by the search module
struct ResultClass {
    CartanPair representative;
    std::vector<CartanPair> orbit_members;
    std::vector<std::string> orbit_keys;
    std::vector<std::vector<std::string>> annotations; // per node of representative
    bool symmetrizable = false;
    bool super = false;
};

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> missing;    // fixture labels with no matching class
    std::vector<std::string> extra;      // class representatives never matched
    std::vector<std::string> mismatches; // annotation or flag disagreements
    int matched = 0;
};

// bijection between enumerated classes and fixture entries by canonical-form
// membership; per-node annotation equality with omitted A_1/osp(1|2)
// summands restored.  The annotator computes per-node deletion-block names
// for a given matrix (supplied by the catalog layer); pass nullptr to check
// the bijection only.
using Annotator =
    std::function<std::vector<std::vector<std::string>>(const CartanPair&)>;
VerifyReport verify_fixture(const std::vector<ResultClass>& result,
                            const std::vector<FixtureEntry>& fixture,
                            const Annotator& annotator = nullptr);

nlohmann::json verify_to_json(const VerifyReport& r);

std::string sha256_hex(const std::string& bytes);

} // namespace almaff
