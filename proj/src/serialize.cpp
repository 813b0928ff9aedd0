#include "royalgamma/serialize.hpp"

#include <cmath>

namespace royal {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::InvalidData, path + ": " + what);
}

double number_at(const Json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    return j.get<double>();
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < std::min<size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size()); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::InvalidData,
                    source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Poly& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

Json to_json(const RationalFn& f) { return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

Json to_json(const BlaschkeData& d) {
    Json nodes = Json::array();
    for (size_t j = 0; j < d.n(); ++j) {
        Json nd{{"sigma", to_json(d.sigma()[j])}, {"eta", to_json(d.eta()[j])}};
        nd["rho"] = j < d.k() ? Json(d.rho()[j]) : Json(nullptr);
        nodes.push_back(std::move(nd));
    }
    return Json{{"nodes", std::move(nodes)}};
}

Json to_json(const PickMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.entries.cols(); ++j) row.push_back(to_json(m.entries(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Parametrization& p) {
    Json z = Json::array();
    for (const auto& pt : p.exceptional.points) z.push_back(to_json(pt));
    Json out{{"tau", to_json(p.tau)},  {"a", to_json(p.a)}, {"b", to_json(p.b)},
             {"c", to_json(p.c)},      {"d", to_json(p.d)}, {"data_hash", p.data_hash}};
    out["exceptional_set"] = p.exceptional.all_of_circle ? Json("all") : z;
    return out;
}

Json to_json(const GammaInnerFn& h) {
    return Json{{"s", to_json(h.s())}, {"p", to_json(h.p())}, {"degree", h.degree()}};
}

Json to_json(const S0P0Solution& s) {
    Json out{{"kind", to_string(s.kind)}, {"rank", s.rank}};
    out["singular_values"] = s.singular_values;
    out["residual"] = s.residual;
    out["near_threshold"] = s.near_threshold;
    if (s.kind == S0P0Kind::Family) {
        out["degenerate"] = s.degenerate;
        if (!s.degenerate)
            out["equation"] = Json{{"omega2", to_json(s.coef_u)}, {"t_omega", to_json(s.coef_v)}, {"one", to_json(s.coef_1)}};
    }
    Json cands = Json::array();
    for (const auto& c : s.candidates)
        cands.push_back(Json{{"omega", to_json(c.omega)}, {"t", c.t}, {"s0", to_json(c.s0)}, {"p0", to_json(c.p0)},
                             {"residual", c.residual}});
    out["candidates"] = std::move(cands);
    return out;
}

Json to_json(const RoyalData& r) {
    Json nodes = Json::array();
    for (const auto& nd : r.nodes) {
        Json j{{"sigma", to_json(nd.sigma)}, {"multiplicity", nd.multiplicity}, {"boundary", nd.boundary},
               {"eta", to_json(nd.eta)}};
        j["rho"] = nd.rho ? Json(*nd.rho) : Json(nullptr);
        nodes.push_back(std::move(j));
    }
    return Json{{"nodes", std::move(nodes)}, {"type", Json::array({r.n, r.k})}, {"degree", r.degree}};
}

Json to_json(const VerificationReport& r) {
    Json res = Json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    return Json{{"residuals", std::move(res)}, {"flags", r.flags}, {"pass", r.pass}};
}

cplx complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) bad(path, "expected [re, im]");
    const cplx z(number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]"));
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) bad(path, "non-finite value");
    return z;
}

Poly poly_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of [re, im] pairs");
    std::vector<cplx> c;
    for (size_t i = 0; i < j.size(); ++i) c.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return Poly(std::move(c));
}

RationalFn rational_from_json(const Json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) bad(path, "expected {\"num\": ..., \"den\": ...}");
    Poly den = poly_from_json(j["den"], path + ".den");
    if (den.is_zero()) bad(path + ".den", "zero denominator");
    return {poly_from_json(j["num"], path + ".num"), std::move(den)};
}

BlaschkeData data_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("nodes")) bad("nodes", "missing");
    const Json& arr = j["nodes"];
    if (!arr.is_array()) bad("nodes", "expected an array");
    std::vector<BlaschkeData::Node> nodes;
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "nodes[" + std::to_string(i) + "]";
        const Json& nd = arr[i];
        if (!nd.is_object()) bad(path, "expected an object");
        if (!nd.contains("sigma")) bad(path + ".sigma", "missing");
        if (!nd.contains("eta")) bad(path + ".eta", "missing");
        BlaschkeData::Node node{complex_from_json(nd["sigma"], path + ".sigma"),
                                complex_from_json(nd["eta"], path + ".eta"), std::nullopt};
        if (nd.contains("rho") && !nd["rho"].is_null()) node.rho = number_at(nd["rho"], path + ".rho");
        nodes.push_back(node);
    }
    return BlaschkeData::from_nodes(nodes);
}

GammaInnerFn gamma_from_json(const Json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("s") || !j.contains("p")) bad(path, "expected {\"s\": ..., \"p\": ...}");
    const RationalFn s = rational_from_json(j["s"], path + ".s");
    const RationalFn p = rational_from_json(j["p"], path + ".p");
    const Poly ds = s.den() / s.den().leading();
    const Poly dp = p.den() / p.den().leading();
    if (ds.degree() == dp.degree() && coeff_distance(ds, dp) <= 1e-12 * std::max(1.0, ds.max_abs_coeff()))
        return GammaInnerFn(s.num() / s.den().leading(), p.num() / p.den().leading(), ds);
    return GammaInnerFn::from_rational(s, p);
}

}  // namespace royal
