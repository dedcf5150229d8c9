#include <algorithm>

#include "doctest.h"
#include "lucas8/json_io.hpp"

using namespace lucas8;

namespace {

bool has_pair(const std::vector<LucasParams>& v, long p, long q) {
    return std::find(v.begin(), v.end(), LucasParams{p, q}) != v.end();
}

HeightCertificate sample_height_certificate() {
    const auto& e = curve_by_id("E10");
    HeightCertificate c;
    c.curve_id = e.id;
    c.bound = height_diff_bound(e, 30);
    c.generator_heights = {Real("0.194288916"), Real("0.0946101954")};
    c.pairing = Real("-0.194288916");
    c.halving.push_back({"P1", {}});
    c.halving.push_back({"P2", {e.generators[1]}});
    BoundChain ch;
    ch.label = "P1=mQ, m>=3";
    ch.hhat_bound = Real("0.0216");
    ch.hcap = Real("0.7754");
    ch.B = Real("2.1714");
    ch.published_B = 2.12383;
    ch.shapes = candidate_shapes(e, 2.1714);
    ch.polynomials = 137075;
    ch.filtered = 8396;
    ch.roots = 271;
    ch.survivors.push_back({e.generators[0], "P1", {1, 0}, 0, true});
    ch.survivors.push_back({negate(e.generators[1]), "(x, y)", {}, 0, false});
    ch.torsion_found.push_back(torsion_point(e));
    c.chains.push_back(ch);
    c.conclusion = false;
    c.failure = "certification failed: unexplained point (x, y)";
    return c;
}

}  // namespace

TEST_CASE("search over a small box") {
    const auto rep = search_box(30, 30, 50);
    CHECK(std::all_of(rep.indices.begin(), rep.indices.end(), [](int n) { return (n >= 2 && n <= 8) || n == 12; }));
    const auto at8 = rep.hits_at(8);
    CHECK(at8.size() == 2);
    CHECK(has_pair(at8, 1, -4));
    CHECK(has_pair(at8, 4, -17));
    for (const auto& h : rep.hits) CHECK(h.root * h.root == lucas_term(h.params, h.n));
}

TEST_CASE("search is independent of the worker count") {
    const auto one = search_box(25, 20, 30, 1);
    const auto three = search_box(25, 20, 30, 3);
    CHECK(one.pairs_scanned == three.pairs_scanned);
    CHECK(one.hits == three.hits);
    CHECK(one.indices == three.indices);
}

TEST_CASE("unit box leaves only the Fibonacci squares") {
    const auto rep = search_box(1, 1, 50);
    CHECK(rep.pairs_scanned == 2);
    REQUIRE(rep.hits.size() == 2);
    CHECK(rep.hits[0].params == LucasParams{1, -1});
    CHECK(rep.hits[0].n == 2);
    CHECK(rep.hits[1].n == 12);
    CHECK(rep.hits[1].root == 12);
    CHECK(rep.indices == std::vector<int>{2, 12});
}

TEST_CASE("descent of driver points") {
    const auto& e1 = curve_by_id("E1");
    const auto r1 = descend(e1, e1.generators[0]);
    CHECK(r1.verdict == "accepted");
    REQUIRE(r1.pq.has_value());
    CHECK(*r1.pq == LucasParams{1, -4});

    const auto& e3 = curve_by_id("E3");
    CHECK(descend(e3, e3.generators[0]).verdict == "degenerate");

    const auto& e8 = curve_by_id("E8");
    const auto r8 = descend(e8, scalar_mul(e8, 2, e8.generators[0]));
    REQUIRE(r8.ab.has_value());
    CHECK(r8.ab->b == 0);
    CHECK(r8.verdict == "b = 0 impossible");
}

TEST_CASE("descent records for n = 8 squares") {
    const auto d = descents_for({1, -4});
    REQUIRE(d.size() == 1);
    CHECK(d[0].eq == SourceEq::Eq1);
    CHECK(d[0].a == 1);
    CHECK(d[0].b == 3);
    const auto d2 = descents_for({4, -17});
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].eq == SourceEq::Eq3);
    CHECK(d2[0].b == 5);
    CHECK(descents_for({3, 7}).empty());
}

TEST_CASE("json round trip of exact values") {
    const Rat q = make_rat(Int(-21), Int(25));
    CHECK(rat_from_json(to_json(q)) == q);
    const auto& e = curve_by_id("E1");
    const auto x = e.generators[0].X;
    CHECK(field_element_from_json(to_json(x)) == x);
    CHECK(point_from_json(to_json(e.generators[0])) == e.generators[0]);
    CHECK(point_from_json(to_json(CurvePoint::at_infinity())).infinity);
    CHECK(params_from_json(to_json(LucasParams{4, -17})) == LucasParams{4, -17});
    CHECK_THROWS(point_from_json(json("nowhere")));
}

TEST_CASE("height certificate round trip") {
    const auto c = sample_height_certificate();
    const json j = to_json(c);
    const auto back = height_certificate_from_json(json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(back.curve_id == c.curve_id);
    CHECK(back.conclusion == c.conclusion);
    CHECK(back.chains[0].survivors[0].point == c.chains[0].survivors[0].point);
    CHECK(back.chains[0].shapes[0].max_abs == c.chains[0].shapes[0].max_abs);
    CHECK(back.halving[1].halves[0] == c.halving[1].halves[0]);
    CHECK(back.bound.places.size() == c.bound.places.size());
    CHECK(abs(back.bound.C - c.bound.C) < Real("1e-28"));
    CHECK(j["places"][3]["epsilon"].get<std::string>().size() >= 30);
}

TEST_CASE("theorem certificate round trip") {
    TheoremCertificate c;
    c.search = search_box(10, 10, 12);
    const auto& e1 = curve_by_id("E1");
    DriverSummary d;
    d.curve_id = "E1";
    d.rank = 1;
    d.complete = true;
    d.basis_multipliers = {4};
    d.cases.push_back({0, 1, false, "ExcludedMod3", -1, "theta_2 = 2 mod 3"});
    d.points = {e1.generators[0], negate(e1.generators[0])};
    c.drivers.push_back(d);
    c.descents.push_back(descend(e1, e1.generators[0]));
    c.descents.push_back(descend(curve_by_id("E3"), curve_by_id("E3").generators[0]));
    c.heights.push_back(sample_height_certificate());
    c.final_pairs = {{1, -4}, {4, -17}};
    c.complete = true;
    const json j = to_json(c);
    const auto back = theorem_certificate_from_json(json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(back.final_pairs == c.final_pairs);
    CHECK(back.drivers[0].cases == c.drivers[0].cases);
    CHECK(back.descents[0].pq == c.descents[0].pq);
    REQUIRE(back.search.has_value());
    CHECK(back.search->hits == c.search->hits);
}
