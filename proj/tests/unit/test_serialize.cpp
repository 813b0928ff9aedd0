#include <doctest.h>

#include "royalgamma/serialize.hpp"
#include "support.hpp"

using namespace royal;

TEST_CASE("complex numbers and polynomials round-trip through JSON") {
    const cplx z(1.5, -2.25);
    CHECK(complex_from_json(to_json(z), "z") == z);
    const Poly p{1.0, cplx(0.0, 2.0), -3.0};
    const Json j = to_json(p);
    CHECK(j.dump() == "[[1.0,0.0],[0.0,2.0],[-3.0,0.0]]");
    CHECK(coeff_distance(poly_from_json(j, "p"), p) == 0.0);
    CHECK(to_json(Poly{}).dump() == "[]");
}

TEST_CASE("data and Gamma-inner functions round-trip through JSON") {
    const BlaschkeData d({-1.0, 0.0}, {1.0, 0.0}, {2.0});
    const BlaschkeData back = data_from_json(to_json(d));
    CHECK(back.digest() == d.digest());

    const GammaInnerFn h = generate_h_nu(0, 0.5);
    const Json hj = to_json(h);
    CHECK(hj.at("degree") == 2);
    CHECK(coeff_distance(gamma_from_json(hj), h) < 1e-15);
}

TEST_CASE("readers name the offending field") {
    auto message_of = [](auto&& fn) -> std::string {
        try {
            fn();
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidData);
            return e.what();
        }
        return "";
    };
    const std::string bad_eta = message_of([] {
        data_from_json(parse_json_text(R"({"nodes":[{"sigma":[0,0],"eta":"x"}]})"));
    });
    CHECK(bad_eta.find("nodes[0].eta") != std::string::npos);

    const std::string missing = message_of([] { data_from_json(parse_json_text(R"({"nodes":[{"eta":[0,0]}]})")); });
    CHECK(missing.find("nodes[0].sigma") != std::string::npos);

    const std::string syntax = message_of([] { parse_json_text("{\n  \"nodes\": [,]\n}", "in.json"); });
    CHECK(syntax.find("in.json:2") != std::string::npos);

    const std::string den = message_of([] {
        gamma_from_json(parse_json_text(R"({"s":{"num":[[1,0]],"den":[]},"p":{"num":[[1,0]],"den":[[1,0]]}})"));
    });
    CHECK(den.find("h.s") != std::string::npos);
}

TEST_CASE("parametrization and reports serialize their fields") {
    const BlaschkeData d({1.0}, {cplx(0.0, 1.0)}, {1.0});
    const auto m = build_pick_matrix(d);
    const auto pr = build_parametrization(m, d, choose_tau(m, d));
    const Json j = to_json(pr);
    for (const char* key : {"tau", "a", "b", "c", "d", "exceptional_set"}) CHECK(j.contains(key));
    CHECK(j.at("exceptional_set").size() == 1);

    const auto rep = verify_royal_solution(generate_h_nu(0, 0.5), BlaschkeData({-1.0, 0.0}, {1.0, 0.0}, {2.0}));
    const Json r = to_json(rep);
    CHECK(r.at("pass") == true);
    CHECK(r.at("residuals").contains("boundary_phasar"));
}
