#pragma once

#include <string>

#include <json.hpp>

#include "hessmf/matrix.hpp"
#include "hessmf/poly.hpp"

namespace hessmf {

using Json = nlohmann::ordered_json;

/// Lossless JSON for polynomials.  num/den/numw/denw are decimal strings so
/// certificates stay exact regardless of coefficient size.
inline Json poly_to_json(const Poly& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        Json jt;
        jt["exps"] = t.exps;
        jt["num"] = t.coef.rat().get_num().get_str();
        jt["den"] = t.coef.rat().get_den().get_str();
        jt["numw"] = t.coef.wpart().get_num().get_str();
        jt["denw"] = t.coef.wpart().get_den().get_str();
        terms.push_back(std::move(jt));
    }
    Json j;
    j["nvars"] = f.nvars();
    j["field"] = field_name(f.field());
    j["terms"] = std::move(terms);
    return j;
}

inline Poly poly_from_json(const Json& j) {
    int nvars = j.at("nvars").get<int>();
    Field field = field_from_name(j.at("field").get<std::string>());
    std::vector<Term> terms;
    for (const auto& jt : j.at("terms")) {
        ExpVec e = jt.at("exps").get<ExpVec>();
        mpq_class a(mpz_class(jt.at("num").get<std::string>()),
                    mpz_class(jt.at("den").get<std::string>()));
        a.canonicalize();
        mpq_class b(mpz_class(jt.at("numw").get<std::string>()),
                    mpz_class(jt.at("denw").get<std::string>()));
        b.canonicalize();
        if (b != 0 && field == Field::Q)
            throw Error("poly_from_json: omega coefficient in field Q");
        terms.push_back({std::move(e), FieldElem(std::move(a), std::move(b))});
    }
    return Poly::from_terms(nvars, field, std::move(terms));
}

inline Json matrix_to_json(const PolyMatrix& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) entries.push_back(poly_to_json(m.at(i, j)));
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = std::move(entries);
    return j;
}

inline PolyMatrix matrix_from_json(const Json& j) {
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    const auto& entries = j.at("entries");
    if ((int)entries.size() != rows * cols) throw Error("matrix_from_json: entry count mismatch");
    Poly first = poly_from_json(entries.at(0));
    PolyMatrix m(rows, cols, first.nvars(), first.field());
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj)
            m.set(i, jj, poly_from_json(entries.at((size_t)i * cols + jj)));
    return m;
}

inline Json point_to_json(const Point& p) {
    Json arr = Json::array();
    for (const auto& c : p.coords) {
        Json jc;
        jc["num"] = c.rat().get_num().get_str();
        jc["den"] = c.rat().get_den().get_str();
        jc["numw"] = c.wpart().get_num().get_str();
        jc["denw"] = c.wpart().get_den().get_str();
        arr.push_back(std::move(jc));
    }
    return arr;
}

inline Point point_from_json(const Json& j) {
    std::vector<FieldElem> coords;
    for (const auto& jc : j) {
        mpq_class a(mpz_class(jc.at("num").get<std::string>()),
                    mpz_class(jc.at("den").get<std::string>()));
        a.canonicalize();
        mpq_class b(mpz_class(jc.at("numw").get<std::string>()),
                    mpz_class(jc.at("denw").get<std::string>()));
        b.canonicalize();
        coords.emplace_back(std::move(a), std::move(b));
    }
    return Point(std::move(coords));
}

}  // namespace hessmf
