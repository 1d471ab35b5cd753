#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "almaff/catalog.hpp"

#include <set>

using namespace almaff;

static CartanPair P(const std::vector<std::vector<long>>& rows,
                    const std::vector<int>& par) {
    return pair_of(rows, par);
}

static const Catalog& CAT() { return Catalog::standard(9); }

TEST_CASE("vinberg classification of even pairs") {
    CHECK(vinberg_class(P({{2, -1}, {-1, 2}}, {0, 0})) == Vinberg::Fin);
    CHECK(vinberg_class(P({{2, -2}, {-2, 2}}, {0, 0})) == Vinberg::Aff);
    CHECK(vinberg_class(P({{2, -1}, {-5, 2}}, {0, 0})) == Vinberg::Ind);
    CHECK(vinberg_class(P({{2, -1}, {-4, 2}}, {0, 0})) == Vinberg::Aff);
    // a 3x3 affine and an indefinite one
    CHECK(vinberg_class(P({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}, {0, 0, 0})) ==
          Vinberg::Aff);
    CHECK(vinberg_class(P({{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}}, {0, 0, 0})) ==
          Vinberg::Ind);
}

TEST_CASE("vinberg preconditions") {
    CHECK_THROWS_AS(vinberg_class(P({{0, -1}, {-1, 2}}, {1, 0})), Error);
    CHECK_THROWS_AS(vinberg_class(P({{2, 0}, {0, 2}}, {0, 0})), Error);
    CHECK_THROWS_AS(vinberg_class(P({{2, 1}, {1, 2}}, {0, 0})), Error);
}

TEST_CASE("rank-2 table") {
    auto name = [](const CartanPair& p) {
        auto c = classify_rank2(p);
        return c ? c->name_super : std::string("-");
    };
    CHECK(name(P({{0, -1}, {-1, 0}}, {1, 1})) == "sl(1|2)");
    CHECK(name(P({{0, 1}, {-1, 2}}, {1, 0})) == "sl(1|2)");
    CHECK(name(P({{0, 1}, {-2, 2}}, {1, 0})) == "osp(3|2)");
    CHECK(name(P({{0, 1}, {-1, 1}}, {1, 1})) == "osp(3|2)");
    CHECK(name(P({{2, -1}, {-1, 1}}, {0, 1})) == "osp(1|4)");
    CHECK(name(P({{2, -1}, {-2, 1}}, {0, 1})) == "osp(1|2)^{(1)}");
    CHECK(name(P({{2, -2}, {-1, 1}}, {0, 1})) == "sl(1|3)^{(4)}");
    CHECK(name(P({{1, -1}, {-1, 1}}, {1, 1})) == "osp(2|2)^{(2)}");
    CHECK(name(P({{2, -1}, {-1, 2}}, {0, 0})) == "A_2");
    CHECK(name(P({{2, -2}, {-1, 2}}, {0, 0})) == "B_2");
    CHECK(name(P({{2, -1}, {-3, 2}}, {0, 0})) == "G_2");
    CHECK(name(P({{2, -4}, {-1, 2}}, {0, 0})) == "A_2^{(2)}");
    CHECK(name(P({{2, -2}, {-2, 2}}, {0, 0})) == "A_1^{(1)}");
    // not finite or affine growth / disconnected
    CHECK(name(P({{2, -3}, {-2, 2}}, {0, 0})) == "-");
    CHECK(name(P({{2, 0}, {0, 2}}, {0, 0})) == "-");
    auto aff = classify_rank2(P({{2, -2}, {-2, 2}}, {0, 0}));
    CHECK(aff->growth == Growth::Aff);
}

TEST_CASE("catalog smoke") {
    const Catalog& cat = CAT();
    CHECK(cat.max_rank() == 9);
    CHECK(cat.class_count() > 100);
    CHECK(cat.max_entry_magnitude() == Rat(4));
    // display names are distinct, apart from two source-table collisions
    // (the same printed name covers two classes of different rank)
    std::set<std::string> dup_ok{"osp(2|6)^{(2)}", "sl(1|4)^{(1)}"};
    std::set<std::string> names;
    for (const auto& r : cat.rows()) {
        CAPTURE(r.family);
        CHECK((names.insert(r.family).second || dup_ok.count(r.family)));
    }
}

TEST_CASE("catalog contains the small named classes") {
    const Catalog& cat = CAT();
    auto name_of = [&](const CartanPair& p) {
        const Classification* c = cat.lookup(p);
        return c ? c->name_super : std::string("-");
    };
    CHECK(name_of(P({{0, -1}, {-1, 2}}, {1, 0})) == "sl(1|2)");
    CHECK(name_of(P({{1, -1}, {-1, 1}}, {1, 1})) == "osp(2|2)^{(2)}");
    CHECK(name_of(P({{2, -2}, {-1, 1}}, {0, 1})) == "sl(1|3)^{(4)}");
    CHECK(name_of(P({{2, -1}, {-2, 1}}, {0, 1})) == "osp(1|2)^{(1)}");
    // chain forms that the learned table lists under twisted names
    CHECK(name_of(P({{2, -1, 0}, {-1, 1, -1}, {0, -1, 2}}, {0, 1, 0})) ==
          "sl(1|4)^{(2)}");
    CHECK(name_of(P({{2, -1, 0}, {-2, 2, -1}, {0, -1, 1}}, {0, 0, 1})) ==
          "sl(1|4)^{(1)}");
    // rank-4 twisted seeds
    CHECK(name_of(P({{2, -1, -1, 0},
                     {-1, 0, 0, 1},
                     {-1, 0, 1, 0},
                     {0, -2, 0, 2}},
                    {0, 1, 1, 0})) == "osp(4|4)^{(2)}");
    CHECK(name_of(P({{2, -1, 0, 0}, {-4, 0, 1, 0}, {0, -1, 2, -3}, {0, 0, -1, 2}},
                    {0, 1, 0, 0})) == "ag(2)^{(1)}");
    // orbit members resolve to the class name, not just seeds
    CartanPair psq = P({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}, {1, 1, 1});
    CHECK(name_of(psq) == "psq(3)^{(2)}");
    CHECK(name_of(odd_reflect(psq, 0)) == "psq(3)^{(2)}");
    // dual-named class: one orbit, one name per mode
    const Classification* e8 = cat.lookup(P(
        {{2, -1, -1, -1, 0, 0, 0, 0, 0},
         {-1, 2, 0, 0, -1, 0, 0, 0, 0},
         {-1, 0, 2, 0, 0, -1, 0, 0, 0},
         {-1, 0, 0, 2, 0, 0, 0, 0, 0},
         {0, -1, 0, 0, 2, 0, -1, 0, 0},
         {0, 0, -1, 0, 0, 2, 0, 0, 0},
         {0, 0, 0, 0, -1, 0, 2, -1, 0},
         {0, 0, 0, 0, 0, 0, -1, 2, -1},
         {0, 0, 0, 0, 0, 0, 0, -1, 2}},
        {0, 0, 0, 0, 0, 0, 0, 0, 0}));
    REQUIRE(e8 != nullptr);
    CHECK(e8->name_super == "E_8^{(2)}");
    CHECK(e8->name_even == "E_8^{(1)}");
    CHECK(e8->name(Mode::Even) == "E_8^{(1)}");
    // families the generators provide beyond the learned ranks
    bool have_b9 = false, have_psq9 = false;
    for (const auto& r : cat.rows()) {
        if (r.family == "osp(1|16)^{(1)}") have_b9 = true;
        if (r.family == "psq(9)^{(2)}") have_psq9 = true;
    }
    CHECK(have_b9);
    CHECK(have_psq9);
}

TEST_CASE("classify_component") {
    const Catalog& cat = CAT();
    auto cls = [&](const CartanPair& p) { return classify_component(p, cat); };
    // size 1
    CHECK(cls(P({{2}}, {0}))->name_super == "A_1");
    CHECK(cls(P({{1}}, {1}))->name_super == "osp(1|2)");
    CHECK(cls(P({{0}}, {1}))->name_super == "sl(1|1)");
    // even pairs go through the minor test and pick up catalog names
    auto a22 = cls(P({{2, -1}, {-4, 2}}, {0, 0}));
    REQUIRE(a22.has_value());
    CHECK(a22->growth == Growth::Aff);
    CHECK(a22->name_even == "A_2^{(2)}");
    CHECK(!cls(P({{2, -1, 0}, {-1, 2, -1}, {0, -5, 2}}, {0, 0, 0})).has_value());
    // super pairs resolve through the catalog
    auto s142 = cls(P({{2, -1, 0}, {-1, 1, -1}, {0, -1, 2}}, {0, 1, 0}));
    REQUIRE(s142.has_value());
    CHECK(s142->growth == Growth::Aff);
    CHECK(s142->name_super == "sl(1|4)^{(2)}");
    // a known almost affine matrix is not recognized
    CHECK(!cls(P({{2, -1, -1}, {-1, 1, -1}, {-1, -1, 2}}, {0, 1, 0})).has_value());
    // parametric families get generic names here
    auto da = cls(P({{2, -1, 0}, {3, 0, -4}, {0, -1, 2}}, {0, 1, 0}));
    REQUIRE(da.has_value());
    CHECK(da->growth == Growth::Fin);
    CHECK(da->name_super == "d(alpha)");
    auto star = cls(P({{0, 1, 2, -3}, {-1, 2, 0, 0}, {-1, 0, 2, 0}, {-1, 0, 0, 2}},
                      {1, 0, 0, 0}));
    REQUIRE(star.has_value());
    CHECK(star->name_super == "d(alpha)^{(1)}");
    CHECK(star->growth == Growth::Aff);
}

TEST_CASE("parametric names carry the parameter value") {
    auto da = match_parametric(P({{2, -1, 0}, {3, 0, -4}, {0, -1, 2}}, {0, 1, 0}));
    REQUIRE(da.has_value());
    CHECK(da->name_super == "d(3)");
    CHECK(da->growth == Growth::Fin);
    auto sv =
        match_parametric(P({{2, -1, -1}, {-4, 0, 5}, {6, -5, 0}}, {0, 1, 1}));
    REQUIRE(sv.has_value());
    CHECK(sv->name_super == "svect_5(1|2)");
    CHECK(sv->growth == Growth::Aff);
    CHECK(!match_parametric(P({{2, -1, -1}, {-1, 1, -1}, {-1, -1, 2}}, {0, 1, 0}))
               .has_value());
    // triangle form of the same parameter family
    CartanPair hub = P({{2, -1, 0}, {3, 0, -4}, {0, -1, 2}}, {0, 1, 0});
    auto tri = match_parametric(odd_reflect(hub, 1));
    REQUIRE(tri.has_value());
    CHECK(tri->name_super == "d(3)");
}

TEST_CASE("matrix-level deletion test") {
    const Catalog& cat = CAT();
    CartanPair p = P({{2, -1, -2}, {-2, 1, -2}, {-2, -1, 2}}, {0, 1, 0});
    MatrixTest t = almost_affine_matrix_test(p, cat);
    REQUIRE(t.pass);
    REQUIRE(t.names_super.size() == 3);
    CHECK(t.names_super[0] == std::vector<std::string>{"osp(1|2)^{(1)}"});
    CHECK(t.names_super[1] == std::vector<std::string>{"A_1^{(1)}"});
    CHECK(t.names_super[2] == std::vector<std::string>{"osp(1|2)^{(1)}"});
    CHECK(annotate(p, Mode::Super, cat) == t.names_super);

    // recognized classes exclude themselves
    MatrixTest rec = almost_affine_matrix_test(
        P({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}, {0, 0, 0}), cat);
    CHECK(!rec.pass);
    REQUIRE(rec.failure.has_value());
    CHECK(rec.failure->reason == "recognized");

    // an unclassifiable deletion block names the witness
    MatrixTest blk = almost_affine_matrix_test(
        P({{2, -1, 0}, {-1, 2, -1}, {0, -5, 2}}, {0, 0, 0}), cat);
    CHECK(!blk.pass);
    REQUIRE(blk.failure.has_value());
    CHECK(blk.failure->reason == "block");
    CHECK(blk.failure->node == 0);
    CHECK(blk.failure->block == std::vector<int>{1, 2});

    CHECK_THROWS_AS(annotate(P({{2, -1, 0}, {-1, 2, -1}, {0, -5, 2}}, {0, 0, 0}),
                             Mode::Even, cat),
                    Error);
}

TEST_CASE("class-level verdicts") {
    const Catalog& cat = CAT();
    // all-black triangle: a one-member class
    ClassVerdict v = almost_affine_class_test(
        P({{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}, {1, 1, 1}), cat);
    CHECK(v.kind == VerdictKind::AlmostAffine);
    CHECK(v.members.size() == 1);

    ClassVerdict s325 = almost_affine_class_test(
        P({{2, -1, -2}, {-2, 1, -2}, {-2, -1, 2}}, {0, 1, 0}), cat);
    CHECK(s325.kind == VerdictKind::AlmostAffine);

    // grey chain that dies only after one reflection
    CartanPair chain = P({{0, 0, 1}, {0, 0, 1}, {1, 2, 0}}, {1, 1, 1});
    MatrixTest direct = almost_affine_matrix_test(chain, cat);
    CHECK(direct.pass);
    MatrixTest refl = almost_affine_matrix_test(odd_reflect(chain, 2), cat);
    CHECK(!refl.pass);
    ClassVerdict cv = almost_affine_class_test(chain, cat);
    CHECK(cv.kind == VerdictKind::NotAlmostAffine);
    CHECK(cv.witness >= 0);
    REQUIRE(cv.witness_failure.has_value());

    // tiny budget forces an inconclusive answer once expansion is needed
    ClassVerdict tiny = almost_affine_class_test(chain, cat, 1);
    CHECK(tiny.kind == VerdictKind::Inconclusive);
}

TEST_CASE("catalog self-consistency scan") {
    // blocks of every deletion of every entry's representative classify Fin
    auto bad = CAT().scan();
    for (const auto& b : bad) MESSAGE(b);
    CHECK(bad.empty());
}
