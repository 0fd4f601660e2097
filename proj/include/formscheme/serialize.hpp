#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "formscheme/rmcodes.hpp"
#include "formscheme/scheme.hpp"

namespace formscheme {

using json = nlohmann::ordered_json;

inline json field_to_json(const Field& f) {
    json j;
    j["p"] = f.p();
    j["k"] = f.k();
    j["modulus"] = f.modulus();
    return j;
}

template <typename FormT>
json forms_to_json(const FormSet<FormT>& X) {
    json j;
    j["q"] = X.field->q();
    j["m"] = X.m;
    j["kind"] = kind_name(FormT::kind);
    json rows = json::array();
    for (const auto& x : X.members) rows.push_back(x.coeffs());
    j["forms"] = rows;
    return j;
}

using AnyFormSet = std::variant<QuadSet, SymSet>;

/// Parses the forms JSON format; the field is reconstructed as F_q with the
/// shipped default modulus.
inline AnyFormSet forms_from_json(const json& j) {
    std::uint64_t q = j.at("q").get<std::uint64_t>();
    int m = j.at("m").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    std::uint32_t p = 0, k = 0;
    for (std::uint32_t cand = 2; cand <= q; ++cand) {
        if (!detail::is_prime_u32(cand)) continue;
        std::uint64_t t = q;
        std::uint32_t e = 0;
        while (t % cand == 0) {
            t /= cand;
            ++e;
        }
        if (t == 1) {
            p = cand;
            k = e;
            break;
        }
    }
    check(p != 0, errc::bad_argument, "q is not a prime power");
    const Field& f = Field::get(p, k);
    auto load = [&](auto tag) -> AnyFormSet {
        using FormT = decltype(tag);
        std::vector<FormT> members;
        for (const auto& row : j.at("forms")) {
            FormT x(f, m);
            check(row.size() == std::size_t(m) * std::size_t(m), errc::bad_argument, "form row has wrong length");
            for (std::size_t t = 0; t < row.size(); ++t) {
                std::uint64_t v = row[t].get<std::uint64_t>();
                check(v < f.q(), errc::bad_argument, "coefficient out of range");
                x.coeffs()[t] = felem(v);
            }
            if constexpr (std::is_same_v<FormT, QuadForm>) {
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < a; ++b) check(x.at(a, b) == 0, errc::bad_argument, "quadratic form must be upper-triangular");
            } else {
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < a; ++b) check(x.at(a, b) == x.at(b, a), errc::bad_argument, "Gram matrix must be symmetric");
            }
            members.push_back(std::move(x));
        }
        return make_form_set(f, m, std::move(members));
    };
    if (kind == "quadratic") return load(QuadForm{});
    if (kind == "symmetric") return load(SymForm{});
    raise(errc::bad_argument, "unknown form kind: " + kind);
}

inline json dist_to_json(const Dist& d) {
    json j;
    json index = json::array(), values = json::array();
    for (const auto& i : orbit_indices(d.m)) {
        index.push_back(i.str());
        values.push_back(rat_str(d.at(i)));
    }
    j["index"] = index;
    j["values"] = values;
    return j;
}

inline json eig_to_json(const EigTable& t) {
    json j;
    j["m"] = t.m;
    j["q"] = t.q;
    j["scheme"] = kind_name(t.scheme);
    j["which"] = std::string(1, t.which);
    json index = json::array();
    for (const auto& i : t.index) index.push_back(i.str());
    j["index"] = index;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.str());
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

/// CSV rendering: header row of column indices, then one labeled row per
/// index; all cells are plain decimal strings.
inline std::string eig_to_csv(const EigTable& t) {
    std::ostringstream os;
    os << t.which;
    for (const auto& i : t.index) os << "," << i.str();
    os << "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << t.index[r].str();
        for (const auto& v : t.rows[r]) os << "," << v.str();
        os << "\n";
    }
    return os.str();
}

inline json enum_to_json(const WeightEnumerator& w) {
    json j;
    j["length"] = w.length;
    j["size"] = rat_str(w.total());
    json terms = json::array();
    for (const auto& [wt, c] : w.counts) terms.push_back(json::array({wt, rat_str(c)}));
    j["enum"] = terms;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    check(bool(os), errc::io_error, "cannot open " + path + " for writing");
    os << content;
    check(bool(os), errc::io_error, "write to " + path + " failed");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    check(bool(is), errc::io_error, "cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace formscheme
