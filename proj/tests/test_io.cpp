#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>
#include <unimetric/io.hpp>

using namespace unimetric;

namespace {

const Rational kTol = make_rational(1, 1000000000);

FiniteMetricSpace two_points(const Rational& d) {
    return validate({"a", "b"}, {{0, d}, {d, 0}});
}

} // namespace

TEST_CASE("space documents round-trip through JSON") {
    for (SpaceKind kind : {SpaceKind::uniform, SpaceKind::random_euclidean, SpaceKind::random_shortest_path}) {
        FiniteMetricSpace X = generate(kind, 4, 21);
        FiniteMetricSpace Y = parse_space_json(write_space_json(X));
        CHECK(X.labels == Y.labels);
        CHECK(X.dist == Y.dist);
    }
    CHECK(write_space_json(two_points(1)) == write_space_json(two_points(1)));
}

TEST_CASE("space documents round-trip through CSV") {
    for (SpaceKind kind : {SpaceKind::uniform, SpaceKind::random_shortest_path}) {
        FiniteMetricSpace X = generate(kind, 5, 22);
        FiniteMetricSpace Y = parse_space_csv(write_space_csv(X));
        CHECK(X.labels == Y.labels);
        CHECK(X.dist == Y.dist);
    }
    FiniteMetricSpace Z = parse_space_csv("a, b\n0, 1/2\n1/2, 0\n");
    CHECK(Z.labels == std::vector<std::string>{"a", "b"});
    CHECK(Z.dist[0][1] == make_rational(1, 2));
}

TEST_CASE("JSON numbers may be integers or exact strings, never floats") {
    FiniteMetricSpace X = parse_space_json(R"({"labels":["a","b"],"matrix":[[0,"1/2"],["0.5",0]]})");
    CHECK(X.dist[0][1] == make_rational(1, 2));
    CHECK(X.dist[1][0] == make_rational(1, 2));

    try {
        parse_space_json(R"({"labels":["a","b"],"matrix":[[0,0.5],[0.5,0]]})");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == "parse");
        CHECK(std::string(e.what()).find("floating-point") != std::string::npos);
    }
}

TEST_CASE("malformed documents are rejected with parse errors") {
    CHECK_THROWS_AS(parse_space_json("not json"), Error);
    CHECK_THROWS_AS(parse_space_json(R"({"labels":["a"]})"), Error);
    CHECK_THROWS_AS(parse_space_json(R"({"labels":"a","matrix":[]})"), Error);
    CHECK_THROWS_AS(parse_space_json(R"({"labels":[1],"matrix":[[0]]})"), Error);
    CHECK_THROWS_AS(parse_space_csv(""), Error);
    CHECK_THROWS_AS(parse_space_csv("a,b\n0,1\n"), Error);
    CHECK_THROWS_AS(parse_space_csv("a,b\n0,1\n1\n"), Error);

    // axiom violations surface with their witness
    try {
        parse_space_json(R"({"labels":["a","b"],"matrix":[[0,1],[2,0]]})");
        FAIL("expected a symmetry error");
    } catch (const MetricValidationError& e) {
        CHECK(e.axiom() == "symmetry");
        CHECK(e.indices() == std::vector<int>{0, 1});
    }
}

TEST_CASE("embedding artifacts keep a fixed field order and exact values") {
    FiniteMetricSpace X = two_points(make_rational(2, 5));
    EmbeddingResult res = embed_space(X, 6);
    CertificationReport cert = certify(X, res, kTol);
    std::string artifact = write_embedding_artifact(X, res, cert);
    CHECK(artifact == write_embedding_artifact(X, res, cert));

    auto doc = nlohmann::ordered_json::parse(artifact);
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"labels", "params", "depth", "delta", "deviation_bound", "points",
                                           "cube_images", "targets", "certificate", "dimension_note"});

    CHECK(doc["params"]["p"] == 2);
    CHECK(doc["params"]["eps"] == "2/5");
    CHECK(doc["params"]["n"] == "3");
    CHECK(doc["params"]["r"] == "3");
    CHECK(doc["depth"] == 6);
    CHECK(doc["delta"] == "3/64");
    CHECK(doc["deviation_bound"] == "3/16");
    CHECK(doc["points"].size() == 2);
    CHECK(doc["cube_images"].size() == 2);
    CHECK(doc["targets"][0].size() == 3);
    CHECK(doc["certificate"]["pass"] == true);
    CHECK(doc["certificate"]["pairs"].size() == 1);
    CHECK(doc["certificate"]["pairs"][0]["expected"] == "2/5");
    CHECK(doc["certificate"]["worst"]["i"] == 0);
    CHECK(doc["dimension_note"].get<std::string>().find("n = 2") != std::string::npos);

    // embedded parameters re-parse to points of J_3
    for (const auto& pt : doc["points"]) {
        Rational t = parse_number(pt.get<std::string>());
        CHECK(Rational(2) <= t);
        CHECK(t <= Rational(3));
    }
}

TEST_CASE("artifacts omit the dimension note when rounding changes nothing") {
    FiniteMetricSpace X = two_points(1);
    EmbeddingResult res = embed_space(X, 4);
    CertificationReport cert = certify(X, res, kTol);
    auto doc = nlohmann::ordered_json::parse(write_embedding_artifact(X, res, cert));
    CHECK_FALSE(doc.contains("dimension_note"));
    CHECK(doc["params"]["n"] == "2");
}

TEST_CASE("check reports print a stable one-line summary") {
    CheckReport ok = check_curve(2, 1);
    CHECK(format_check_report(ok) == "curve[n=2,k=1]: pass, 4 cases\n");

    CheckReport bad;
    bad.name = "synthetic";
    bad.cases_run = 2;
    bad.failures.push_back("first witness");
    bad.notes.push_back("context");
    CHECK(format_check_report(bad) ==
          "synthetic: FAIL, 2 cases, 1 failures\n  failure: first witness\n  note: context\n");
}
