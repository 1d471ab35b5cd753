#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "almaff/fixtures.hpp"
#include <nlohmann/json.hpp>
#include <cstdio>
#include <fstream>
#include <filesystem>
#include <set>

using namespace almaff;

TEST_CASE("fixture counts") {
    auto sup = load_fixture("super");
    CHECK(sup.size() == 138);
    auto even = load_fixture("even");
    CHECK(even.size() == 238);

    std::map<int, int> sup_sizes, even_sizes;
    for (const auto& e : sup) sup_sizes[e.size]++;
    for (const auto& e : even) even_sizes[e.size]++;
    CHECK(sup_sizes == std::map<int, int>{{3, 86}, {4, 31}, {5, 10}, {6, 7},
                                          {7, 1}, {8, 1}, {9, 1}, {10, 1}});
    CHECK(even_sizes == std::map<int, int>{{3, 123}, {4, 53}, {5, 22}, {6, 22},
                                           {7, 4}, {8, 5}, {9, 5}, {10, 4}});
}

TEST_CASE("fixture structure invariants") {
    auto sup = load_fixture("super");
    std::set<std::string> labels;
    int parametric = 0;
    for (const auto& e : sup) {
        CHECK(labels.insert(e.label).second);
        for (const auto& d : e.docs) {
            CHECK(d.pair.n == e.size);
            CHECK(zero_symmetric(d.pair));
            // empty name lists mark deletions whose blocks are all omitted
            // A_1/osp(1|2) summands
            for (const auto& [node, names] : d.annotations) {
                CHECK(node >= 1);
                CHECK(node <= e.size);
            }
        }
        if (e.parametric) ++parametric;
    }
    CHECK(parametric == 5);

    auto even = load_fixture("even");
    int symm = 0;
    for (const auto& e : even)
        if (e.symmetrizable_flag) ++symm;
    CHECK(symm == 142);
}

TEST_CASE("parametric entries carry constraints and instantiated roots") {
    auto sup = load_fixture("super");
    const FixtureEntry* ns82 = nullptr;
    const FixtureEntry* ns86 = nullptr;
    for (const auto& e : sup) {
        if (e.label == "NS3_82") ns82 = &e;
        if (e.label == "NS3_86") ns86 = &e;
    }
    REQUIRE(ns82 != nullptr);
    REQUIRE(ns86 != nullptr);
    CHECK(ns82->docs.size() == 4);
    CHECK(ns82->constraint == std::vector<long>{5, 11, 5});
    // the root satisfies its own quadratic
    const Scalar& a = ns82->root;
    CHECK(Scalar(5) * a * a + Scalar(11) * a + Scalar(5) == Scalar(0));
    CHECK(ns86->constraint == std::vector<long>{1, 3, 1});
    const Scalar& b = ns86->root;
    CHECK(b * b + Scalar(3) * b + Scalar(1) == Scalar(0));
    // entries of the printed matrices live in Q(sqrt d)
    CHECK(ns82->docs[0].pair.at(0, 2) == a);
}

TEST_CASE("annotations keep printed spellings") {
    auto sup = load_fixture("super");
    const FixtureEntry* s10 = nullptr;
    for (const auto& e : sup)
        if (e.label == "S10_1") s10 = &e;
    REQUIRE(s10 != nullptr);
    const auto& ann = s10->docs[0].annotations;
    REQUIRE(ann.count(10) == 1);
    CHECK(ann.at(10) == std::vector<std::string>{"E_8^{(2)}"});
    REQUIRE(ann.count(1) == 1);
    CHECK(ann.at(1) == std::vector<std::string>{"sl(1|16)^{(2)}"});
    // parity of the short-root end is odd (diagonal 1)
    CHECK(s10->docs[0].pair.parity[9] == 1);
    CHECK(s10->docs[0].pair.at(9, 9) == Scalar(1));
}

TEST_CASE("checksum guards the fixture files") {
    namespace fs = std::filesystem;
    std::string dir = fixture_dir();
    std::string tmp = "/tmp/almaff_fixture_tamper";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    for (const auto& f : {"manifest.json", "super.jsonl", "even.jsonl"})
        fs::copy_file(dir + "/" + std::string(f), tmp + "/" + std::string(f));
    // flip one byte in the data file
    {
        std::fstream f(tmp + "/super.jsonl",
                       std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(42);
        f.put('9');
    }
    CHECK_THROWS_AS(load_fixture("super", tmp), Error);
    CHECK_NOTHROW(load_fixture("even", tmp));
    fs::remove_all(tmp);
}

TEST_CASE("verify_fixture bijection bookkeeping") {
    auto sup = load_fixture("super");
    std::vector<FixtureEntry> size10;
    for (const auto& e : sup)
        if (e.size == 10) size10.push_back(e);
    REQUIRE(size10.size() == 1);

    // a result list built from the fixture itself matches perfectly
    std::vector<ResultClass> result(1);
    result[0].representative = normalize(size10[0].docs[0].pair);
    for (const auto& d : size10[0].docs) {
        result[0].orbit_members.push_back(d.pair);
        result[0].orbit_keys.push_back(canonical_key(normalize(d.pair)));
    }
    result[0].symmetrizable = size10[0].symmetrizable_flag;
    auto rep = verify_fixture(result, size10);
    CHECK(rep.ok);
    CHECK(rep.matched == 1);

    // empty result: everything missing
    auto rep2 = verify_fixture({}, size10);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.missing.size() == 1);

    // unmatched class: reported as extra
    std::vector<ResultClass> stray(1);
    stray[0].representative = pair_of({{2, -1}, {-1, 2}}, {0, 0});
    stray[0].orbit_keys.push_back(canonical_key(stray[0].representative));
    auto rep3 = verify_fixture(stray, size10);
    CHECK_FALSE(rep3.ok);
    CHECK(rep3.missing.size() == 1);
    CHECK(rep3.extra.size() == 1);

    auto doc = verify_to_json(rep);
    CHECK(doc["ok"] == true);
    CHECK(doc["matched"] == 1);
}
