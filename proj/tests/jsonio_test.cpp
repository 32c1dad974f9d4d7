#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "hypinv/invpair.hpp"
#include "hypinv/json_io.hpp"
#include "hypinv/numfield.hpp"
#include "hypinv/powerseries.hpp"

using namespace hypinv;

TEST_CASE("scalar round trips in every mode") {
    Rat q(-22, 7);
    CHECK(scalar_from_json<Rat>(scalar_to_json(q)) == q);
    C53 z(0.125, -3.75);
    CHECK(scalar_from_json<C53>(scalar_to_json(z)) == z);
    C256 w = k_ratio<C256>(1, 3);
    C256 back = scalar_from_json<C256>(scalar_to_json(w));
    CHECK(abs_approx(back - w) == 0.0);
}

TEST_CASE("scalar mode mismatches are detected in both directions") {
    CHECK_THROWS_AS(scalar_from_json<Rat>(scalar_to_json(C53(1, 0))), ModeMismatch);
    CHECK_THROWS_AS(scalar_from_json<C53>(scalar_to_json(Rat(1))), ModeMismatch);
    CHECK_THROWS_AS(scalar_from_json<Rat>(json::parse("[1,2]")), ParseError);
    CHECK_THROWS_AS(scalar_from_json<Rat>(json::parse("{\"rat\": 5}")), ParseError);
    CHECK_THROWS_AS(scalar_from_json<C53>(json::parse("{\"re\": 1.0}")), ParseError);
    // float components may arrive as numbers or as strings
    CHECK(scalar_from_json<C53>(json::parse("{\"re\": \"0.5\", \"im\": 2}")) ==
          C53(0.5, 2.0));
}

TEST_CASE("series and matrix round trips preserve every coefficient") {
    std::mt19937_64 gen(20260819);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    Series<Rat> s(7);
    for (int i = 0; i <= 7; ++i) s.set(i, Rat(num(gen), den(gen)));
    CHECK(series_from_json<Rat>(series_to_json(s)) == s);

    Params<Rat> p{Rat(1, 3), Rat(-1, 2), Rat(0), Rat(1, 4), Rat(2, 5)};
    TriMatrix<Rat> A = build_A(p, 6);
    TriMatrix<Rat> back = matrix_from_json<Rat>(matrix_to_json(A));
    REQUIRE(back.n_max() == 6);
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n; ++k) CHECK(back.get(n, k) == A.get(n, k));

    json j = matrix_to_json(A);
    CHECK(j["mode"] == "exact");
    CHECK_THROWS_AS(matrix_from_json<C53>(j), ModeMismatch);
    j["rows"][2] = json::array({1});  // wrong row length
    CHECK_THROWS_AS(matrix_from_json<Rat>(j), ParseError);
}

TEST_CASE("series payloads are validated") {
    json j = json{{"mode", "exact"}, {"order", 2}, {"coeffs", json::array()}};
    CHECK_THROWS_AS(series_from_json<Rat>(j), ParseError);
    json missing = json{{"coeffs", json::array()}};
    CHECK_THROWS_AS(series_from_json<Rat>(missing), ParseError);
}

TEST_CASE("problem and solution payloads") {
    QueueProblemData p{0.4, -0.7, 3, {1.0, -2.0, 0.5}};
    QueueProblemData back = problem_from_json(problem_to_json(p));
    CHECK(back.x == p.x);
    CHECK(back.nu == p.nu);
    CHECK(back.b_max == p.b_max);
    CHECK(back.K == p.K);
    CHECK_THROWS_AS(problem_from_json(json::parse("{\"x\": 0.4}")), ParseError);
    CHECK_THROWS_AS(problem_from_json(json::parse(
                        "{\"x\": \"a\", \"nu\": -1, \"b_max\": 1, \"K\": [1]}")),
                    ParseError);
    QueueSolution<C53> sol;
    sol.E = {C53(1, 0), C53(0.5, -0.25)};
    sol.residual_max = 1e-12;
    json js = solution_to_json(sol);
    CHECK(js["residual_max"] == 1e-12);
    CHECK(js["E"].size() == 2);
}

TEST_CASE("file round trip is atomic and deterministic") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hypinv_jsonio_test";
    fs::create_directories(dir);
    fs::path file = dir / "payload.json";

    Params<Rat> p{Rat(1, 3), Rat(-1, 2), Rat(0), Rat(1, 4), Rat(2, 5)};
    json j = matrix_to_json(build_A(p, 5));
    write_json_file(file.string(), j);
    CHECK(read_json_file(file.string()) == j);
    CHECK_FALSE(fs::exists(file.string() + ".tmp"));

    // byte-identical re-serialization
    write_json_file((dir / "second.json").string(), j);
    auto slurp = [](const fs::path& path) {
        FILE* f = std::fopen(path.c_str(), "rb");
        REQUIRE(f != nullptr);
        std::string s;
        char buf[4096];
        size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
        std::fclose(f);
        return s;
    };
    CHECK(slurp(file) == slurp(dir / "second.json"));
    CHECK(slurp(file).back() == '\n');

    CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), ParseError);
    fs::remove_all(dir);
}
