#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "toricstab/fan.hpp"

using namespace toricstab;

namespace {

IntegerMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
    IntegerMatrix m;
    for (auto r : rows) m.push_back(make_lattice(r));
    return m;
}

// Permutes coordinates: new coordinate k is old coordinate perm[k].
Fan permuted(const Fan& f, const std::vector<std::size_t>& perm) {
    Fan g(f);
    for (auto& r : g.rays) {
        LatticeVector w(r.size());
        for (std::size_t k = 0; k < r.size(); ++k) w[k] = r[perm[k]];
        r = std::move(w);
    }
    return g;
}

// Same ray set and the same cones after matching rays by value.
bool same_up_to_relabel(const Fan& a, const Fan& b) {
    if (a.dim != b.dim || a.rays.size() != b.rays.size() || a.max_cones.size() != b.max_cones.size()) return false;
    std::vector<std::size_t> map(a.rays.size());
    for (std::size_t i = 0; i < a.rays.size(); ++i) {
        auto it = std::find(b.rays.begin(), b.rays.end(), a.rays[i]);
        if (it == b.rays.end()) return false;
        map[i] = static_cast<std::size_t>(it - b.rays.begin());
    }
    std::vector<IndexSet> ca, cb(b.max_cones);
    for (const auto& c : a.max_cones) {
        IndexSet s;
        for (auto i : c) s.push_back(map[i]);
        std::sort(s.begin(), s.end());
        ca.push_back(s);
    }
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
}

}  // namespace

TEST_CASE("validate_fan accepts P2 and reports defects") {
    Fan p2{2, mat({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {0, 2}}};
    CHECK(validate_fan(p2).ok());

    Fan partial{2, mat({{1, 0}, {0, 1}, {-1, 2}}), {{0, 1}, {1, 2}}};
    auto rep = validate_fan(partial);
    CHECK(rep.has(FanIssue::NotComplete));

    Fan singular{2, mat({{1, 0}, {1, 2}, {-1, -1}}), {{0, 1}, {1, 2}, {0, 2}}};
    CHECK(validate_fan(singular).has(FanIssue::NotSmooth));

    Fan dup{2, mat({{1, 0}, {0, 1}, {-1, -1}, {1, 0}}), {{0, 1}, {1, 2}, {0, 2}}};
    CHECK(validate_fan(dup).has(FanIssue::DuplicateRay));

    Fan nonprim{2, mat({{2, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {0, 2}}};
    CHECK(validate_fan(nonprim).has(FanIssue::NonPrimitiveRay));

    Fan badidx{2, mat({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 5}, {0, 2}}};
    CHECK(validate_fan(badidx).has(FanIssue::BadIndex));

    try {
        require_valid(partial);
        FAIL("expected InvalidFan");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidFan);
        CHECK(std::string(e.what()).find("NotComplete") != std::string::npos);
    }
}

TEST_CASE("validate_fan catches overlapping cones") {
    // P2 plus a cone <e1, e1+e2> lying inside <e1, e2>
    Fan overlap{2, mat({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}), {{0, 1}, {1, 2}, {0, 2}, {0, 3}}};
    auto rep = validate_fan(overlap);
    CHECK(rep.has(FanIssue::BadIntersection));
}

TEST_CASE("is_cone on smooth fans") {
    for (int m = 0; m <= 3; ++m) {
        Fan f = construct_hirzebruch(m);
        CHECK(is_cone(f, {0, 1}));
        CHECK_FALSE(is_cone(f, {0, 2}));
        CHECK(is_cone(f, {3}));
    }
    Fan b5 = construct_proj_split(1, {1, 0, 0});
    CHECK(is_cone(b5, {1, 2, 3, 5}));
    CHECK_FALSE(is_cone(b5, {4, 5}));
    try {
        is_cone(b5, {0, 9});
        FAIL("expected BadIndex");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadIndex);
    }
}

TEST_CASE("construct_projective_space") {
    Fan p1 = construct_projective_space(1);
    CHECK(p1.rays == mat({{1}, {-1}}));
    CHECK(p1.max_cones.size() == 2);
    Fan p2 = construct_projective_space(2);
    CHECK(p2.rays == mat({{1, 0}, {0, 1}, {-1, -1}}));
    Fan p4 = construct_projective_space(4);
    CHECK(p4.rays.size() == 5);
    CHECK(p4.max_cones.size() == 5);
    CHECK(validate_fan(p4).ok());
    try {
        construct_projective_space(0);
        FAIL("expected BadDimension");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadDimension);
    }
}

TEST_CASE("construct_hirzebruch") {
    for (int m = 0; m <= 6; ++m) {
        Fan f = construct_hirzebruch(m);
        CHECK(f.rays == mat({{1, 0}, {0, 1}, {-1, m}, {0, -1}}));
        CHECK(validate_fan(f).ok());
    }
    CHECK(same_up_to_relabel(construct_hirzebruch(0),
                             construct_product(construct_projective_space(1), construct_projective_space(1))));
    try {
        construct_hirzebruch(-1);
        FAIL("expected BadTwist");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadTwist);
    }
}

TEST_CASE("construct_proj_split conventions") {
    Fan b5 = construct_proj_split(1, {1, 0, 0});
    CHECK(b5.rays == mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {-1, -1, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, -1}}));
    CHECK(b5.max_cones.size() == 8);

    Fan c1 = construct_proj_split(2, {2, 0});
    CHECK(validate_fan(c1).ok());
    CHECK(c1.max_cones.size() == 9);

    // fiber P^1 over P^1 with twist m is F_m after swapping the coordinates
    for (int m = 0; m <= 4; ++m)
        CHECK(same_up_to_relabel(permuted(construct_proj_split(1, {m}), {1, 0}), construct_hirzebruch(m)));

    // fiber P^1 over P^{n-1}: moving the fiber coordinate last gives the line-bundle labeling
    for (int n = 2; n <= 5; ++n) {
        for (int m = 0; m < n; ++m) {
            std::vector<std::size_t> perm;
            for (int k = 1; k < n; ++k) perm.push_back(static_cast<std::size_t>(k));
            perm.push_back(0);
            CHECK(same_up_to_relabel(permuted(construct_proj_split(n - 1, {m}), perm),
                                     construct_projectivized_line_bundle(n, m)));
        }
    }
    CHECK_THROWS_AS(construct_proj_split(0, {1}), Error);
    CHECK_THROWS_AS(construct_proj_split(1, {}), Error);
}

TEST_CASE("construct_projectivized_line_bundle labeling") {
    Fan f = construct_projectivized_line_bundle(4, 3);
    CHECK(f.rays == mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, -1}, {-1, -1, -1, 3}}));
    CHECK(f.max_cones.size() == 8);
}

TEST_CASE("construct_product") {
    Fan b4 = construct_product(construct_projective_space(1), construct_projective_space(3));
    CHECK(b4.rays.size() == 6);
    CHECK(b4.max_cones.size() == 8);
    Fan c4 = construct_product(construct_projective_space(2), construct_projective_space(2));
    CHECK(c4.rays.size() == 6);
    CHECK(c4.max_cones.size() == 9);
    Fan broken{2, mat({{1, 0}, {0, 1}}), {{0, 1}}};
    CHECK_THROWS_AS(construct_product(broken, construct_projective_space(1)), Error);
}

TEST_CASE("catalog_fano4") {
    auto cat = catalog_fano4();
    REQUIRE(cat.size() == 10);
    const std::vector<std::string> names{"P4", "B1", "B2", "B3", "B4", "B5", "C1", "C2", "C3", "C4"};
    const std::vector<std::size_t> rays{5, 6, 6, 6, 6, 6, 6, 6, 6, 6};
    for (std::size_t i = 0; i < cat.size(); ++i) {
        CHECK(cat[i].name == names[i]);
        CHECK(cat[i].fan.dim == 4);
        CHECK(cat[i].fan.rays.size() == rays[i]);
        CHECK(validate_fan(cat[i].fan).ok());
    }
    CHECK(cat[0].fan == construct_projective_space(4));
    CHECK(cat[1].fan == construct_projectivized_line_bundle(4, 3));
    CHECK(cat[5].fan == construct_proj_split(1, {1, 0, 0}));
}
