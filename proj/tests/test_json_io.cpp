#include <doctest.h>

#include "hocat/json_io.hpp"
#include "support.hpp"

using namespace hocat;
using namespace hocat::testing;

TEST_CASE("matrices round trip") {
    Rng rng(51);
    for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(rng, 5, t % 4, (t / 4) % 4);
        CHECK(matrix_from_json(5, m.rows(), m.cols(), to_json(m)) == m);
    }
    CHECK_THROWS_AS(matrix_from_json(2, 2, 2, nlohmann::json::parse("[[1, 0]]")), InvalidInput);
    CHECK_THROWS_AS(matrix_from_json(2, 1, 1, nlohmann::json::parse("[[\"x\"]]")), InvalidInput);
}

TEST_CASE("complexes and maps round trip") {
    Rng rng(52);
    for (int t = 0; t < 50; ++t) {
        auto X = random_complex(rng, 5), Y = random_complex(rng, 5);
        auto f = random_chain_map(rng, X, Y);
        CHECK(chain_complex_from_json(to_json(X)) == X);
        CHECK(chain_map_from_json(to_json(f)) == f);
        CHECK(chain_map_from_json(nlohmann::json::parse(to_json(f).dump())) == f);
    }
}

TEST_CASE("bad chain data is rejected") {
    CHECK_THROWS_AS(chain_complex_from_json(nlohmann::json::parse(R"({"p": 2, "degrees": [1, 1], "d": []})")),
                    InvalidInput);
    CHECK_THROWS_AS(chain_complex_from_json(nlohmann::json::parse(R"({"p": 6, "degrees": [1], "d": []})")),
                    InvalidInput);
    CHECK_THROWS_AS(chain_complex_from_json(nlohmann::json::parse(R"({"p": 2})")), InvalidInput);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InvalidInput);
}

TEST_CASE("chain fixtures load") {
    auto S0 = chain_complex_from_json(read_json_file(fixture("chain/S0.json")));
    CHECK(S0 == ChainComplex::sphere(2, 0));
    auto D1 = chain_complex_from_json(read_json_file(fixture("chain/D1.json")));
    CHECK(D1 == ChainComplex::disk(2, 1));
    auto q = chain_map_from_json(read_json_file(fixture("chain/quasi_iso.json")));
    CHECK(is_quasi_isomorphism(q));
}

TEST_CASE("homotopy serialization") {
    ChainInstance c(2);
    auto S0 = ChainComplex::sphere(2, 0);
    auto H = identity_homotopy(c, c.identity(S0));
    auto j = to_json(c, H);
    CHECK(j.contains("cylinder"));
    CHECK(j.contains("h"));
    CHECK(to_json(validate_homotopy(c, H))["ok"] == true);
}
