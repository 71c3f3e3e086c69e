#include "shc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shc/error.hpp"

namespace shc::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

json complex_json(Complex z, bool with_imag) {
    return with_imag ? json::array({z.real(), z.imag()}) : json::array({z.real()});
}

Complex complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.empty() || j.size() > 2) throw Error(ErrorCode::ParseError, "entry must be re or [re] or [re, im]");
    return {j[0].get<double>(), j.size() == 2 ? j[1].get<double>() : 0.0};
}

json matrix_json(const DenseHermitian& a) {
    json upper = json::array();
    for (auto z : a.packed_upper()) upper.push_back(complex_json(z, a.is_complex()));
    return {{"n", a.size()}, {"kind", a.is_complex() ? "herm" : "sym"}, {"upper", upper}};
}

DenseHermitian matrix_from(const json& j) {
    const auto n = j.at("n").get<std::size_t>();
    const auto kind_name = j.value("kind", std::string("sym"));
    if (kind_name != "sym" && kind_name != "herm") throw Error(ErrorCode::ParseError, "kind must be sym or herm");
    const auto& upper = j.at("upper");
    if (!upper.is_array() || upper.size() != n * (n + 1) / 2)
        throw Error(ErrorCode::ParseError, "upper must hold n(n+1)/2 entries");
    DenseHermitian a(n, kind_name == "herm" ? MatrixKind::ComplexHermitian : MatrixKind::RealSymmetric);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j2 = i; j2 < n; ++j2) a.set(i, j2, complex_from(upper[k++]));
    return a;
}

json givens_json(const GivensParams& g) {
    return {{"type", "givens"}, {"i", g.i}, {"j", g.j}, {"theta", g.theta}, {"phi", g.phi}, {"psi", g.psi}};
}

GivensParams givens_from(const json& j) {
    return {j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>(), j.at("theta").get<double>(),
            j.value("phi", 0.0), j.value("psi", 0.0)};
}

json window_json(const SpectrumWindow& w) { return json::array({w.lo, w.hi}); }

}  // namespace

DenseHermitian matrix_from_json(const std::string& text) {
    return guarded([&] { return matrix_from(parse(text)); });
}

std::string matrix_to_json(const DenseHermitian& a) { return matrix_json(a).dump(); }

std::vector<double> vector_from_json(const std::string& text) {
    return guarded([&] {
        const auto j = parse(text);
        if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a JSON array of numbers");
        return j.get<std::vector<double>>();
    });
}

std::string vector_to_json(const std::vector<double>& v) { return json(v).dump(); }

std::string certificate_to_json(const CorrectionCertificate& cert) {
    json chain = json::array();
    for (const auto& t : cert.chain) {
        if (const auto* g = std::get_if<GivensParams>(&t)) {
            chain.push_back(givens_json(*g));
            continue;
        }
        const auto& b = std::get<BasisChange>(t);
        json rows = json::array();
        for (std::size_t r = 0; r < b.unitary.size(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < b.unitary.size(); ++c) row.push_back(complex_json(b.unitary(r, c), true));
            rows.push_back(row);
        }
        chain.push_back({{"type", "basis"}, {"indices", b.indices}, {"unitary", rows}});
    }
    json steps = json::array();
    for (const auto& s : cert.steps)
        steps.push_back({{"i", s.i}, {"j", s.j}, {"rotation", givens_json(s.rotation)}, {"h_i", s.h_i}, {"h_j", s.h_j}});

    json out = {
        {"kind", cert.kind == MatrixKind::ComplexHermitian ? "herm" : "sym"},
        {"start_diagonal", cert.start_diagonal},
        {"chain", chain},
        {"steps", steps},
        {"result", matrix_json(cert.result)},
        {"residuals",
         {{"diag", cert.diag_residual},
          {"spectrum", cert.spectrum_residual},
          {"distance", cert.distance_to_original},
          {"gnorm1", cert.gnorm1},
          {"gnorm2", cert.gnorm2}}},
    };
    if (cert.partition) out["partition"] = json::parse(partition_to_json(*cert.partition));
    return out.dump(2);
}

CorrectionCertificate certificate_from_json(const std::string& text) {
    return guarded([&] {
        const auto j = parse(text);
        CorrectionCertificate c;
        c.kind = j.value("kind", std::string("sym")) == "herm" ? MatrixKind::ComplexHermitian : MatrixKind::RealSymmetric;
        c.start_diagonal = j.at("start_diagonal").get<std::vector<double>>();
        for (const auto& t : j.at("chain")) {
            const auto type = t.at("type").get<std::string>();
            if (type == "givens") {
                c.chain.emplace_back(givens_from(t));
            } else if (type == "basis") {
                BasisChange b;
                b.indices = t.at("indices").get<std::vector<std::size_t>>();
                const auto& rows = t.at("unitary");
                b.unitary = CMatrix(rows.size());
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (rows[r].size() != rows.size()) throw Error(ErrorCode::ParseError, "unitary must be square");
                    for (std::size_t col = 0; col < rows.size(); ++col) b.unitary(r, col) = complex_from(rows[r][col]);
                }
                c.chain.emplace_back(std::move(b));
            } else {
                throw Error(ErrorCode::ParseError, "unknown transform type '" + type + "'");
            }
        }
        if (j.contains("steps"))
            for (const auto& s : j.at("steps"))
                c.steps.push_back({s.at("i").get<std::size_t>(), s.at("j").get<std::size_t>(),
                                   givens_from(s.at("rotation")), s.value("h_i", 0.0), s.value("h_j", 0.0)});
        c.result = matrix_from(j.at("result"));
        if (j.contains("residuals")) {
            const auto& r = j.at("residuals");
            c.diag_residual = r.value("diag", 0.0);
            c.spectrum_residual = r.value("spectrum", 0.0);
            c.distance_to_original = r.value("distance", 0.0);
            c.gnorm1 = r.value("gnorm1", 0.0);
            c.gnorm2 = r.value("gnorm2", 0.0);
        }
        return c;
    });
}

std::string partition_to_json(const BlockPartition& p) {
    json comps = json::array();
    for (const auto& c : p.components) comps.push_back({{"begin", c.begin}, {"end", c.end}, {"window", window_json(c.window)}});
    json blocks = json::array();
    for (const auto& b : p.blocks) {
        std::vector<std::size_t> members(p.permutation.begin() + b.begin, p.permutation.begin() + b.end);
        blocks.push_back({{"begin", b.begin},
                          {"end", b.end},
                          {"tag", b.tag == BlockTag::Scalar ? "scalar" : "strong"},
                          {"window", window_json(b.window)},
                          {"indices", members}});
    }
    return json{{"permutation", p.permutation}, {"components", comps}, {"blocks", blocks}}.dump(2);
}

SweepConfig sweep_config_from_json(const std::string& text) {
    return guarded([&] {
        const auto j = parse(text);
        SweepConfig c;
        if (j.contains("family")) c.family = parse_family(j.at("family").get<std::string>());
        c.n = j.value("n", c.n);
        if (j.contains("eps_grid")) c.eps_grid = j.at("eps_grid").get<std::vector<double>>();
        c.trials_per_eps = j.value("trials_per_eps", c.trials_per_eps);
        c.seed = j.value("seed", c.seed);
        if (j.contains("perturbation_style")) c.style = parse_style(j.at("perturbation_style").get<std::string>());
        c.validate();
        return c;
    });
}

std::string read_json_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return arg;
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace shc::io
