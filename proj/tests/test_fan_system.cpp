#include "prevar/corpus.hpp"
#include "prevar/system.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace prevar;
using testsupport::iv;
using testsupport::qv;
using testsupport::Rng;
using testsupport::random_smooth_cone;

namespace {

Fan quadrant_fan() { return fan_from_cones(2, {mk_cone(2, {{1, 0}, {0, 1}})}); }

std::vector<std::string> ids(const OmegaPoset& p) {
    std::vector<std::string> out;
    for (const auto& c : p.classes) out.push_back(c.id);
    return out;
}

// Three charts of the half-line where 1~2 and 2~3 glue the ray but 1~3 does
// not: the glueing relation is not transitive, so this is not a system.
SystemOfFans line_triple_system() {
    Fan half = fan_from_cones(1, {mk_cone(1, {{1}})});
    std::map<std::pair<int, int>, Fan> off;
    off[{0, 1}] = half;
    off[{1, 2}] = half;
    off[{0, 2}] = zero_fan(1);
    return make_system({"1", "2", "3"}, {half, half, half}, std::move(off));
}

}  // namespace

TEST_CASE("fan_from_cones closes under faces and verifies pairwise") {
    Fan q = quadrant_fan();
    CHECK(q.cones.size() == 4);
    CHECK(q.contains(zero_cone(2)));
    CHECK(q.contains(mk_cone(2, {{1, 0}})));
    CHECK(q.contains(mk_cone(2, {{0, 1}})));

    Fan rays = fan_from_cones(2, {mk_cone(2, {{1, 0}}), mk_cone(2, {{0, 1}})});
    CHECK(rays.cones.size() == 3);

    CHECK(zero_fan(2).cones.size() == 1);
    CHECK(fan_from_cones(3, {}).cones == zero_fan(3).cones);

    // shared faces are stored once
    Fan two = fan_from_cones(2, {mk_cone(2, {{1, 0}, {0, 1}}), mk_cone(2, {{0, 1}, {-1, 0}})});
    CHECK(two.cones.size() == 6);

    CHECK_THROWS_AS(fan_from_cones(2, {mk_cone(2, {{1, 0}, {0, 1}}), mk_cone(2, {{1, 1}, {1, -1}})}),
                    NotAFan);
    CHECK_THROWS_AS(fan_from_cones(2, {mk_cone(2, {{1, 0}, {0, 1}}), mk_cone(2, {{1, 0}, {1, 1}})}),
                    NotAFan);
    CHECK_THROWS_AS(fan_from_cones(3, {mk_cone(2, {{1, 0}})}), DimensionMismatch);
}

TEST_CASE("subfan, intersection and maximal cones") {
    Fan q = quadrant_fan();
    CHECK(is_subfan(zero_fan(2), q));
    CHECK(is_subfan(q, q));
    Fan diag = fan_from_cones(2, {mk_cone(2, {{1, 1}})});
    CHECK_FALSE(is_subfan(diag, q));

    Fan left = fan_from_cones(2, {mk_cone(2, {{0, 1}, {-1, 0}})});
    Fan meet = fan_intersection(q, left);
    CHECK(meet.cones.size() == 2);
    CHECK(meet.contains(mk_cone(2, {{0, 1}})));

    CHECK(maximal_cones(q).size() == 1);
    CHECK(maximal_cones(q).front().dim == 2);
    Fan rays = fan_from_cones(2, {mk_cone(2, {{1, 0}}), mk_cone(2, {{0, 1}})});
    CHECK(maximal_cones(rays).size() == 2);
    CHECK(maximal_cones(zero_fan(2)).size() == 1);
}

TEST_CASE("make_system rejects malformed shapes") {
    Fan half = fan_from_cones(1, {mk_cone(1, {{1}})});
    CHECK_THROWS_AS(make_system({}, {}, {}), SchemaError);
    CHECK_THROWS_AS(make_system({"1", "1"}, {half, half}, {}), SchemaError);
    CHECK_THROWS_AS(make_system({"1", "2"}, {half}, {}), SchemaError);
    CHECK_THROWS_AS(make_system({"1", "2"}, {half, zero_fan(2)}, {}), SchemaError);
    CHECK_THROWS_AS(make_system({"1", "2"}, {half, half}, {{{0, 0}, zero_fan(1)}}), SchemaError);
    CHECK_THROWS_AS(make_system({"1", "2"}, {half, half}, {{{0, 5}, zero_fan(1)}}), SchemaError);
    CHECK_THROWS_AS(make_system({"1", "2"}, {half, half}, {{{0, 1}, zero_fan(2)}}), SchemaError);
    std::map<std::pair<int, int>, Fan> twice;
    twice[{0, 1}] = zero_fan(1);
    twice[{1, 0}] = zero_fan(1);
    CHECK_THROWS_AS(make_system({"1", "2"}, {half, half}, std::move(twice)), SchemaError);

    // keys are normalized to i < j
    std::map<std::pair<int, int>, Fan> rev;
    rev[{1, 0}] = half;
    SystemOfFans s = make_system({"1", "2"}, {half, half}, std::move(rev));
    CHECK(s.fan(0, 1).cones.size() == 2);
    CHECK(s.fan(1, 0).cones.size() == 2);
}

TEST_CASE("validate_system accepts the corpus and singleton embeddings") {
    CHECK(validate_system(double_origin_system()).valid);
    CHECK(validate_system(fig1_system()).valid);
    CHECK(validate_system(fig2_system()).valid);
    CHECK(validate_system(a3_doubled_system()).valid);
    CHECK(validate_system(make_singleton_system("1", quadrant_fan())).valid);
}

TEST_CASE("validate_system reports violated axioms with witnesses") {
    ValidationReport rep = validate_system(line_triple_system());
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].axiom == "triple");
    CHECK(rep.violations[0].detail.find("1|3") != std::string::npos);

    // pair fan exceeding its charts
    Fan half = fan_from_cones(1, {mk_cone(1, {{1}})});
    SystemOfFans bad = make_system({"1", "2"}, {zero_fan(1), zero_fan(1)}, {{{0, 1}, half}});
    ValidationReport rep2 = validate_system(bad);
    CHECK_FALSE(rep2.valid);
    CHECK(rep2.violations.size() == 2);
    CHECK(rep2.violations[0].axiom == "subfan");

    // hand-built fan that is not face closed
    Fan broken{1, {mk_cone(1, {{1}})}};
    SystemOfFans bad2 = make_system({"1"}, {broken}, {});
    ValidationReport rep3 = validate_system(bad2);
    CHECK_FALSE(rep3.valid);
    CHECK(rep3.violations[0].axiom == "face-closed");
}

TEST_CASE("omega classes of the double origin") {
    OmegaPoset p = omega_classes(double_origin_system());
    REQUIRE(p.classes.size() == 3);
    CHECK(ids(p) == std::vector<std::string>{"1:", "1:1", "2:1"});
    CHECK(p.classes[0].labels == std::vector<int>{0, 1});
    CHECK(p.classes[1].labels == std::vector<int>{0});
    CHECK(p.classes[2].labels == std::vector<int>{1});

    CHECK(lambda_rays(p) == std::vector<int>{1, 2});

    CHECK(omega_leq(p, 0, 1));
    CHECK(omega_leq(p, 0, 2));
    CHECK_FALSE(omega_leq(p, 1, 2));
    CHECK_FALSE(omega_leq(p, 2, 1));
    for (int a = 0; a < 3; ++a) CHECK(omega_leq(p, a, a));

    CHECK(orbit_closure_downset(p, 1) == std::vector<int>{0, 1});
    CHECK(orbit_closure_downset(p, 0) == std::vector<int>{0});
}

TEST_CASE("omega classes of the doubled octant") {
    OmegaPoset p = omega_classes(a3_doubled_system());
    REQUIRE(p.classes.size() == 12);

    std::map<int, int> by_dim;
    for (const auto& c : p.classes) ++by_dim[c.cone.dim];
    CHECK(by_dim[0] == 1);
    CHECK(by_dim[1] == 3);
    CHECK(by_dim[2] == 6);
    CHECK(by_dim[3] == 2);

    std::vector<int> lam = lambda_rays(p);
    REQUIRE(lam.size() == 3);
    for (int c : lam) CHECK(p.classes[static_cast<std::size_t>(c)].labels == std::vector<int>{0, 1});

    // the octant class of each chart sees the origin, the three shared rays,
    // its own three facets and itself
    int oct1 = p.class_of(0, mk_cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    int oct2 = p.class_of(1, mk_cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    REQUIRE(oct1 >= 0);
    REQUIRE(oct2 >= 0);
    CHECK(oct1 != oct2);
    CHECK(orbit_closure_downset(p, oct1).size() == 8);
    CHECK(orbit_closure_downset(p, oct2).size() == 8);

    int face1 = p.class_of(0, mk_cone(3, {{1, 0, 0}, {0, 1, 0}}));
    CHECK(omega_leq(p, face1, oct1));
    CHECK_FALSE(omega_leq(p, face1, oct2));
}

TEST_CASE("omega classes of the five chart system") {
    OmegaPoset p = omega_classes(fig2_system());
    REQUIRE(p.classes.size() == 10);
    CHECK(ids(p) == std::vector<std::string>{"1:", "1:1,0", "1:1,1", "1:1,0|1,1", "2:0,1",
                                             "2:0,1|1,1", "3:0,1|1,0", "4:-1,-1", "4:-1,-1|1,0",
                                             "5:-1,-1|0,1"});

    std::vector<int> lam = lambda_rays(p);
    REQUIRE(lam.size() == 4);
    CHECK(p.classes[static_cast<std::size_t>(lam[0])].id == "1:1,0");
    CHECK(p.classes[static_cast<std::size_t>(lam[1])].id == "1:1,1");
    CHECK(p.classes[static_cast<std::size_t>(lam[2])].id == "2:0,1");
    CHECK(p.classes[static_cast<std::size_t>(lam[3])].id == "4:-1,-1");

    CHECK(p.classes[1].labels == std::vector<int>{0, 2, 3});
    CHECK(p.classes[2].labels == std::vector<int>{0, 1});
    CHECK(p.classes[4].labels == std::vector<int>{1, 2, 4});
    CHECK(p.classes[7].labels == std::vector<int>{3, 4});

    // the shared ray (1,0) lies below the maximal cones of charts 1, 3 and 4
    CHECK(omega_leq(p, 1, 3));
    CHECK(omega_leq(p, 1, 6));
    CHECK(omega_leq(p, 1, 8));
    CHECK_FALSE(omega_leq(p, 1, 5));
    CHECK_FALSE(omega_leq(p, 3, 6));
}

TEST_CASE("omega classes of the glued plane charts") {
    OmegaPoset p = omega_classes(fig1_system());
    REQUIRE(p.classes.size() == 7);
    CHECK(ids(p) == std::vector<std::string>{"1:", "1:0,1", "1:1,-1", "1:0,1|1,-1", "2:-1,-1",
                                             "2:1,0", "2:-1,-1|1,0"});
    CHECK(lambda_rays(p) == std::vector<int>{1, 2, 4, 5});
    for (int c : lambda_rays(p))
        CHECK(p.classes[static_cast<std::size_t>(c)].labels.size() == 1);
}

TEST_CASE("omega on singleton systems is the face poset") {
    Rng rng(2026'08'15);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        Cone c = random_smooth_cone(rng, n, d);
        Fan f = fan_from_cones(n, {c});
        SystemOfFans s = make_singleton_system("1", f);
        CHECK(validate_system(s).valid);
        OmegaPoset p = omega_classes(s);
        REQUIRE(p.classes.size() == f.cones.size());
        for (std::size_t a = 0; a < p.classes.size(); ++a)
            for (std::size_t b = 0; b < p.classes.size(); ++b)
                CHECK(omega_leq(p, static_cast<int>(a), static_cast<int>(b)) ==
                      is_face(p.classes[a].cone, p.classes[b].cone));
    }
}

TEST_CASE("omega rejects systems that slipped past validation") {
    CHECK_THROWS_AS(omega_classes(line_triple_system()), TransitivityViolation);

    Fan half = fan_from_cones(1, {mk_cone(1, {{1}})});
    SystemOfFans bad = make_system({"1", "2"}, {zero_fan(1), zero_fan(1)}, {{{0, 1}, half}});
    CHECK_THROWS_AS(omega_classes(bad), std::invalid_argument);
}

TEST_CASE("omega order is a partial order with bounded class count") {
    Rng rng(7);
    std::vector<SystemOfFans> subjects = {double_origin_system(), fig1_system(), fig2_system(),
                                          a3_doubled_system()};
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        Cone big = random_smooth_cone(rng, n, n);
        auto fs = faces(big);
        const Cone& shared = fs[rng() % fs.size()];
        Fan diag = fan_from_cones(n, {big});
        Fan glue = fan_from_cones(n, {shared});
        std::map<std::pair<int, int>, Fan> off;
        off[{0, 1}] = glue;
        off[{0, 2}] = glue;
        off[{1, 2}] = glue;
        subjects.push_back(make_system({"1", "2", "3"}, {diag, diag, diag}, std::move(off)));
    }

    for (const auto& s : subjects) {
        CHECK(validate_system(s).valid);
        OmegaPoset p = omega_classes(s);

        std::size_t biggest = 0, total = 0;
        for (const auto& f : s.diagonal) {
            biggest = std::max(biggest, f.cones.size());
            total += f.cones.size();
        }
        CHECK(p.classes.size() >= biggest);
        CHECK(p.classes.size() <= total);

        int m = static_cast<int>(p.classes.size());
        for (int a = 0; a < m; ++a) {
            CHECK(omega_leq(p, a, a));
            for (int b = 0; b < m; ++b) {
                if (a != b) CHECK_FALSE((omega_leq(p, a, b) && omega_leq(p, b, a)));
                for (int c = 0; c < m; ++c)
                    if (omega_leq(p, a, b) && omega_leq(p, b, c)) CHECK(omega_leq(p, a, c));
            }
        }
    }
}

TEST_CASE("affine and smooth predicates") {
    CHECK(is_affine_system(double_origin_system()));
    CHECK(is_affine_system(fig1_system()));
    CHECK(is_affine_system(fig2_system()));
    CHECK(is_affine_system(a3_doubled_system()));
    CHECK(is_smooth_system(double_origin_system()));
    CHECK(is_smooth_system(fig1_system()));
    CHECK(is_smooth_system(fig2_system()));
    CHECK(is_smooth_system(a3_doubled_system()));

    Fan rays = fan_from_cones(1, {mk_cone(1, {{1}}), mk_cone(1, {{-1}})});
    CHECK_FALSE(is_affine_system(make_singleton_system("1", rays)));

    Fan sing = fan_from_cones(2, {mk_cone(2, {{1, 0}, {1, 2}})});
    SystemOfFans ss = make_singleton_system("1", sing);
    CHECK(is_affine_system(ss));
    CHECK_FALSE(is_smooth_system(ss));
}

TEST_CASE("single fan detection") {
    CHECK(is_single_fan_system(make_singleton_system("1", quadrant_fan())));

    // glueing strictly smaller than the chart intersection
    CHECK_FALSE(is_single_fan_system(double_origin_system()));
    CHECK(check_single_fan(double_origin_system()).unequal_pair == std::make_pair(0, 1));
    CHECK_FALSE(is_single_fan_system(a3_doubled_system()));

    // equalities hold but the chart cones overlap without a common face
    SingleFanCheck f1 = check_single_fan(fig1_system());
    CHECK(f1.equalities_hold());
    CHECK_FALSE(f1.union_is_fan());
    CHECK_FALSE(is_single_fan_system(fig1_system()));
    CHECK_THROWS_AS(is_single_fan_system(fig1_system(), true), ConesClash);

    SingleFanCheck f2 = check_single_fan(fig2_system());
    CHECK(f2.equalities_hold());
    CHECK_FALSE(f2.union_is_fan());
    CHECK_FALSE(is_single_fan_system(fig2_system()));

    // a genuine single fan split across two labels
    Fan q = quadrant_fan();
    Fan left = fan_from_cones(2, {mk_cone(2, {{0, 1}, {-1, 0}})});
    Fan shared = fan_from_cones(2, {mk_cone(2, {{0, 1}})});
    SystemOfFans split = make_system({"1", "2"}, {q, left}, {{{0, 1}, shared}});
    CHECK(validate_system(split).valid);
    CHECK(is_single_fan_system(split));
}

TEST_CASE("morphism validation") {
    SystemOfFans dbl = double_origin_system();
    OmegaPoset p = omega_classes(dbl);

    SoFMorphism ident{{iv({1})}, {0, 1, 2}};
    CHECK(validate_morphism(ident, p, p).valid);

    // folding both copies of the ray onto the single chart
    SystemOfFans line = make_singleton_system("1", fan_from_cones(1, {mk_cone(1, {{1}})}));
    OmegaPoset q = omega_classes(line);
    SoFMorphism fold{{iv({1})}, {0, 1, 1}};
    CHECK(validate_morphism(fold, p, q).valid);

    // collapsing a ray class onto the origin class is not a morphism
    SoFMorphism collapse{{iv({1})}, {0, 0, 1}};
    ValidationReport bad = validate_morphism(collapse, p, q);
    CHECK_FALSE(bad.valid);
    CHECK(bad.violations[0].axiom == "cone");

    // order violation: send the origin class above a ray class
    SoFMorphism swap{{iv({1})}, {1, 1, 2}};
    ValidationReport rep = validate_morphism(swap, p, p);
    CHECK_FALSE(rep.valid);
    bool has_order = false;
    for (const auto& v : rep.violations) has_order |= (v.axiom == "order");
    CHECK(has_order);

    SoFMorphism shape{{iv({1, 0})}, {0, 1, 2}};
    CHECK_FALSE(validate_morphism(shape, p, p).valid);
    SoFMorphism partial{{iv({1})}, {0, 1}};
    CHECK_FALSE(validate_morphism(partial, p, p).valid);
    SoFMorphism range{{iv({1})}, {0, 1, 9}};
    CHECK_FALSE(validate_morphism(range, p, p).valid);

    // the zero map folds everything onto the open orbit of a point
    SystemOfFans pt = make_singleton_system("1", zero_fan(1));
    OmegaPoset z = omega_classes(pt);
    SoFMorphism tozero{{iv({0})}, {0, 0, 0}};
    CHECK(validate_morphism(tozero, p, z).valid);
}

TEST_CASE("support points live on their cone") {
    OmegaPoset p = omega_classes(fig1_system());
    SupportPoint sp = support_point(p, 3, qv({1, 0}));
    CHECK(sp.cone_class == 3);
    CHECK_THROWS_AS(support_point(p, 3, qv({-1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(support_point(p, 0, qv({1, 0})), std::invalid_argument);
    CHECK(support_point(p, 0, qv({0, 0})).cone_class == 0);
}
