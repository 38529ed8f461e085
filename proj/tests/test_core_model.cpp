#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ird/canonical.hpp"
#include "ird/json_io.hpp"
#include "ird/model.hpp"
#include "test_helpers.hpp"

using namespace ird;
using testing::ModelBuilder;

namespace {

SystemModel minimal_model(double p_outage = 0.5) {
    ModelBuilder b;
    b.component("c1", ComponentKind::Hardware)
        .dimension("hw")
        .path("p1", {"c1"}, p_outage);
    return b.model;
}

}  // namespace

TEST_CASE("canonicalize trims, lowercases, and is idempotent") {
    CHECK(canonicalize("  CPU_Arch \t") == "cpu_arch");
    CHECK(canonicalize("lab") == "lab");
    CHECK(canonicalize("") == "");
    // idempotence over assorted inputs
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> ch(0, 127);
    for (int i = 0; i < 200; ++i) {
        std::string s;
        for (int j = 0; j < 12; ++j) s.push_back(static_cast<char>(ch(rng)));
        CHECK(canonicalize(canonicalize(s)) == canonicalize(s));
    }
}

TEST_CASE("validate_model accepts a minimal well-formed model") {
    CHECK(validate_model(minimal_model()).empty());
}

TEST_CASE("validate_model flags probability out of range") {
    auto m = minimal_model(1.2);
    auto v = validate_model(m);
    REQUIRE(v.size() == 1);
    CHECK(v[0].entity == "p1");
    CHECK(v[0].rule == "probability out of range");
}

TEST_CASE("validate_model flags duplicate path ids across dimensions") {
    ModelBuilder b;
    b.component("c1", ComponentKind::Hardware)
        .dimension("hw")
        .path("a", {"c1"}, 0.5)
        .dimension("sw")
        .path("a", {"c1"}, 0.5);
    auto v = validate_model(b.model);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "duplicate path id");
}

TEST_CASE("validate_model flags empty dimension and dangling component ref") {
    ModelBuilder b;
    b.component("c1", ComponentKind::Hardware).dimension("hw").path("p1", {"nope"}, 0.5);
    b.dimension("empty");
    auto v = validate_model(b.model);
    bool dangling = false, empty = false;
    for (const auto& viol : v) {
        if (viol.rule == "unknown component id: nope") dangling = true;
        if (viol.rule == "dimension has no redundant path") empty = true;
    }
    CHECK(dangling);
    CHECK(empty);
}

TEST_CASE("check_independence: disjoint components and keys") {
    ModelBuilder b;
    b.component("c1", ComponentKind::Hardware, {{"city", "chengdu"}})
        .component("c2", ComponentKind::Hardware, {{"city", "beijing"}})
        .dimension("hw")
        .path("p1", {"c1"}, 0.1)
        .path("p2", {"c2"}, 0.1);
    auto rep = check_independence(b.model, "p1", "p2");
    CHECK(rep.verdict == Verdict::Independent);
    CHECK(rep.shared_keys.empty());
    CHECK(rep.shared_components.empty());
}

TEST_CASE("check_independence: shared lab attribute makes paths coherent") {
    ModelBuilder b;
    b.component("c1", ComponentKind::Hardware, {{"lab", "lab1"}, {"city", "chengdu"}})
        .component("c2", ComponentKind::Hardware, {{"lab", "lab1"}, {"city", "beijing"}})
        .dimension("hw")
        .path("p1", {"c1"}, 0.1)
        .path("p2", {"c2"}, 0.1);
    auto rep = check_independence(b.model, "p1", "p2");
    CHECK(rep.verdict == Verdict::Coherent);
    CHECK(rep.shared_keys == std::set<CoherenceKey>{{"lab", "lab1"}});
}

TEST_CASE("check_independence: self comparison shares the component set") {
    auto m = minimal_model();
    auto rep = check_independence(m, "p1", "p1");
    CHECK(rep.verdict == Verdict::Coherent);
    CHECK(rep.shared_components == std::set<std::string>{"c1"});
}

TEST_CASE("check_independence: unknown path id raises a lookup error") {
    auto m = minimal_model();
    CHECK_THROWS_WITH_AS(check_independence(m, "p1", "ghost"), "unknown path id: ghost",
                         LookupError);
}

TEST_CASE("check_independence is symmetric") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(0, 3);
    const char* labs[] = {"lab1", "lab2", "lab3", "lab4"};
    for (int it = 0; it < 50; ++it) {
        ModelBuilder b;
        for (int c = 0; c < 4; ++c)
            b.component("c" + std::to_string(c), ComponentKind::Hardware,
                        {{"lab", labs[pick(rng)]}});
        b.dimension("hw");
        for (int p = 0; p < 4; ++p)
            b.path("p" + std::to_string(p),
                   {"c" + std::to_string(pick(rng)), "c" + std::to_string(pick(rng))}, 0.1);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                auto ab =
                    check_independence(b.model, "p" + std::to_string(i), "p" + std::to_string(j));
                auto ba =
                    check_independence(b.model, "p" + std::to_string(j), "p" + std::to_string(i));
                CHECK(ab.path_a == ba.path_a);
                CHECK(ab.path_b == ba.path_b);
                CHECK(ab.shared_keys == ba.shared_keys);
                CHECK(ab.shared_components == ba.shared_components);
                CHECK(ab.verdict == ba.verdict);
                // independent verdict implies both intersections empty
                if (ab.verdict == Verdict::Independent) {
                    CHECK(ab.shared_keys.empty());
                    CHECK(ab.shared_components.empty());
                }
            }
    }
}

TEST_CASE("coherence_groups groups by attribute value") {
    ModelBuilder b;
    b.component("c1", ComponentKind::Hardware, {{"lab", "lab1"}})
        .component("c2", ComponentKind::Hardware, {{"lab", "lab1"}})
        .component("c3", ComponentKind::Hardware, {{"lab", "lab2"}})
        .dimension("hw")
        .path("p1", {"c1"}, 0.1)
        .path("p2", {"c2"}, 0.1)
        .path("p3", {"c3"}, 0.1);

    SUBCASE("single shared value gives one group") {
        ModelBuilder b2;
        b2.component("c", ComponentKind::Hardware, {{"lab", "lab1"}})
            .dimension("hw")
            .path("p1", {"c"}, 0.1)
            .path("p2", {"c"}, 0.1)
            .path("p3", {"c"}, 0.1);
        auto g = coherence_groups(b2.model, "hw", "lab");
        REQUIRE(g.size() == 1);
        CHECK(g[0].size() == 3);
    }

    SUBCASE("two values give a 2-group and a 1-group") {
        auto g = coherence_groups(b.model, "hw", "lab");
        REQUIRE(g.size() == 2);
        std::set<size_t> sizes{g[0].size(), g[1].size()};
        CHECK(sizes == std::set<size_t>{1, 2});
    }

    SUBCASE("missing key yields singletons") {
        auto g = coherence_groups(b.model, "hw", "carrier");
        CHECK(g.size() == 3);
        for (const auto& grp : g) CHECK(grp.size() == 1);
    }

    SUBCASE("output is a partition of the dimension's paths") {
        for (const char* key : {"lab", "carrier"}) {
            auto g = coherence_groups(b.model, "hw", key);
            std::set<std::string> all;
            size_t total = 0;
            for (const auto& grp : g) {
                total += grp.size();
                all.insert(grp.begin(), grp.end());
            }
            CHECK(total == all.size());  // pairwise disjoint
            CHECK(all == std::set<std::string>{"p1", "p2", "p3"});
        }
    }

    SUBCASE("unknown dimension raises") {
        CHECK_THROWS_AS(coherence_groups(b.model, "ghost", "lab"), LookupError);
    }
}

TEST_CASE("model JSON round trip and unknown-field rejection") {
    const char* text = R"({
      "name": "m",
      "components": [{"id": "c1", "kind": "hardware", "attributes": {"Lab ": "lab1"}}],
      "dimensions": [{"name": "HW", "scope": "space",
                      "paths": [{"id": "p1", "components": ["c1"], "p_outage": 0.25}]}]
    })";
    auto m = model_from_json(text);
    CHECK(m.dimensions[0].name == "hw");
    CHECK(m.components.at("c1").attributes.count("lab") == 1);  // key canonicalized
    CHECK(m.dimensions[0].paths[0].p_outage == 0.25);

    CHECK_THROWS_WITH_AS(model_from_json(R"({"name":"m","components":[],"dimensions":[],"bogus":1})"),
                         "unknown field \"bogus\" in model", ParseError);
    // parse errors carry line/column
    try {
        model_from_json("{\n  \"name\": oops\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
