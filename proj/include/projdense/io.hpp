#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "projdense/cartan.hpp"
#include "projdense/liealg.hpp"
#include "projdense/scalar.hpp"
#include "projdense/torusgen.hpp"

namespace projdense {

using nlohmann::json;

/// Input errors carry the field/position context that produced them.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what, const std::string& context = "")
        : std::runtime_error(context.empty() ? what : what + " (at " + context + ")") {}
};

// ---------------------------------------------------------------------------
// field descriptors
// ---------------------------------------------------------------------------

/// "real", "complex", or "padic:p".
inline FieldDescriptor parse_field(const std::string& s,
                                   int padic_precision = Padic::kDefaultPrecision) {
    if (s == "real") return FieldDescriptor::real();
    if (s == "complex") return FieldDescriptor::complex();
    if (s.rfind("padic:", 0) == 0) {
        long p = 0;
        try {
            p = std::stol(s.substr(6));
        } catch (const std::exception&) {
            throw ParseError("malformed prime in field descriptor", s);
        }
        try {
            return FieldDescriptor::padic(p, padic_precision);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), s);
        }
    }
    throw ParseError("unknown field (expected real, complex, or padic:p)", s);
}

inline std::string field_name(const FieldDescriptor& f) {
    switch (f.kind) {
        case FieldKind::Real: return "real";
        case FieldKind::Complex: return "complex";
        case FieldKind::Padic: return "padic:" + std::to_string(f.p);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// scalars
// ---------------------------------------------------------------------------

inline void to_json(json& j, const Scalar& s) {
    switch (s.field.kind) {
        case FieldKind::Real:
            j = json{{"field", "real"}, {"re", std::get<double>(s.payload)}, {"im", 0.0}};
            return;
        case FieldKind::Complex: {
            const auto& z = std::get<std::complex<double>>(s.payload);
            j = json{{"field", "complex"}, {"re", z.real()}, {"im", z.imag()}};
            return;
        }
        case FieldKind::Padic: {
            const Padic& x = std::get<Padic>(s.payload);
            if (x.is_zero()) {
                j = json{{"p", s.field.p}, {"v", nullptr}, {"u", "0"}};
            } else if (x.is_inexact_zero()) {
                j = json{{"p", s.field.p}, {"v", nullptr}, {"u", x.str()}};
            } else {
                BigInt m = Padic::pow_p(x.prime(), x.known_digits());
                BigInt u = x.unit() % m;
                if (u < 0) u += m;
                j = json{{"p", s.field.p}, {"v", x.valuation()}, {"u", u.str()}};
            }
            return;
        }
    }
}

inline Rational parse_rational(const json& j, const std::string& ctx) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            auto slash = s.find('/');
            if (slash == std::string::npos) return Rational(BigInt(s));
            return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ParseError("malformed rational '" + s + "'", ctx);
        }
    }
    throw ParseError("expected integer or \"a/b\" string", ctx);
}

/// Entry forms accepted: number; {"re","im"}; [re, im]; padic: integer,
/// "a/b" string, or {"v","u"}.
template <class S>
S parse_scalar(const json& j, const FieldDescriptor& f, const std::string& ctx) {
    if constexpr (std::is_same_v<S, double>) {
        if (j.is_number()) return j.get<double>();
        if (j.is_object() && j.contains("re")) return j["re"].get<double>();
        throw ParseError("expected a real number", ctx);
    } else if constexpr (std::is_same_v<S, std::complex<double>>) {
        if (j.is_number()) return {j.get<double>(), 0.0};
        if (j.is_array() && j.size() == 2)
            return {j[0].get<double>(), j[1].get<double>()};
        if (j.is_object() && j.contains("re"))
            return {j["re"].get<double>(), j.value("im", 0.0)};
        throw ParseError("expected a complex number ([re, im] or {re, im})", ctx);
    } else {
        static_assert(std::is_same_v<S, Padic>);
        if (j.is_object() && j.contains("u")) {
            if (j["v"].is_null() || j["u"] == "0") return Padic::zero(f.p, f.precision);
            BigInt u;
            try {
                u = j["u"].is_string() ? BigInt(j["u"].get<std::string>())
                                       : BigInt(j["u"].get<long long>());
            } catch (const std::exception&) {
                throw ParseError("malformed p-adic unit", ctx);
            }
            return Padic(f.p, f.precision, j["v"].get<std::int64_t>(), u);
        }
        Rational q = parse_rational(j, ctx);
        return Padic::from_rational(f.p, boost::multiprecision::numerator(q),
                                    boost::multiprecision::denominator(q), f.precision);
    }
}

// ---------------------------------------------------------------------------
// matrices and vectors
// ---------------------------------------------------------------------------

template <class S>
MatrixX<S> parse_matrix(const json& j, const FieldDescriptor& f) {
    const json* rows = &j;
    if (j.is_object()) {
        if (!j.contains("entries")) throw ParseError("matrix object needs \"entries\"", "matrix");
        rows = &j["entries"];
    }
    if (!rows->is_array() || rows->empty() || !(*rows)[0].is_array())
        throw ParseError("expected an array of rows", "matrix");
    const Eigen::Index n = static_cast<Eigen::Index>(rows->size());
    const Eigen::Index m = static_cast<Eigen::Index>((*rows)[0].size());
    MatrixX<S> out(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = (*rows)[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m)
            throw ParseError("ragged matrix rows", "matrix row " + std::to_string(i));
        for (Eigen::Index c = 0; c < m; ++c)
            out(i, c) = parse_scalar<S>(row[static_cast<size_t>(c)], f,
                                        "entry (" + std::to_string(i) + "," +
                                            std::to_string(c) + ")");
    }
    return out;
}

/// Whitespace grid: one matrix row per line; entries are decimal numbers
/// (archimedean) or integers/rationals (p-adic).
template <class S>
MatrixX<S> parse_text_matrix(const std::string& text, const FieldDescriptor& f) {
    std::vector<std::vector<std::string>> cells;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream ls(line);
        std::vector<std::string> row;
        std::string tok;
        while (ls >> tok) row.push_back(tok);
        if (!row.empty()) cells.push_back(std::move(row));
    }
    if (cells.empty()) throw ParseError("empty matrix", "text input");
    json j = json::array();
    for (const auto& row : cells) {
        json jr = json::array();
        for (const auto& tok : row) {
            if constexpr (std::is_same_v<S, Padic>) {
                jr.push_back(tok);
            } else {
                try {
                    jr.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw ParseError("malformed number '" + tok + "'", "text input");
                }
            }
        }
        j.push_back(std::move(jr));
    }
    return parse_matrix<S>(j, f);
}

template <class S>
json matrix_to_json(const MatrixX<S>& m, const FieldDescriptor& f) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            json e;
            to_json(e, Scalar{f, m(i, c)});
            row.push_back(std::move(e));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class S>
json vector_to_json(const VectorX<S>& v, const FieldDescriptor& f) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        json e;
        to_json(e, Scalar{f, v[i]});
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// torus generators and bases
// ---------------------------------------------------------------------------

struct SymbolicBasis {
    std::vector<std::string> names;   // names[0] == "1"
    std::vector<double> values;       // numeric values for the probe
};

/// "1,sqrt2,sqrt3,pi,e" -> basis with numeric values; the leading "1" is
/// mandatory and the remaining symbols are assumed Q-independent.
inline SymbolicBasis parse_basis(const std::string& s) {
    SymbolicBasis b;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        double val;
        if (tok == "1")
            val = 1.0;
        else if (tok == "pi")
            val = M_PI;
        else if (tok == "e")
            val = std::exp(1.0);
        else if (tok.rfind("sqrt", 0) == 0) {
            long n = 0;
            try {
                n = std::stol(tok.substr(4));
            } catch (const std::exception&) {
                throw ParseError("malformed basis symbol", tok);
            }
            if (n < 2) throw ParseError("sqrt argument must be >= 2", tok);
            val = std::sqrt(static_cast<double>(n));
        } else {
            throw ParseError("unknown basis symbol (use 1, sqrtN, pi, e)", tok);
        }
        b.names.push_back(tok);
        b.values.push_back(val);
    }
    if (b.names.empty() || b.names[0] != "1")
        throw ParseError("basis must start with the symbol 1", s);
    return b;
}

/// Generators: array of elements; element: array of d coordinates; each
/// coordinate: array of |Theta| rationals (or a single rational, meaning a
/// purely rational coordinate).
inline std::vector<TorusElement> parse_generators(const json& j, const SymbolicBasis& basis) {
    if (!j.is_array()) throw ParseError("expected an array of generators", "generators");
    const size_t nb = basis.names.size();
    std::vector<TorusElement> out;
    for (size_t g = 0; g < j.size(); ++g) {
        const json& jg = j[g];
        if (!jg.is_array())
            throw ParseError("generator must be an array of coordinates",
                             "generator " + std::to_string(g));
        TorusElement el(jg.size(), nb);
        for (size_t l = 0; l < jg.size(); ++l) {
            const json& jc = jg[l];
            const std::string ctx =
                "generator " + std::to_string(g) + " coordinate " + std::to_string(l);
            if (jc.is_array()) {
                if (jc.size() != nb)
                    throw ParseError("coordinate length must match the basis", ctx);
                for (size_t t = 0; t < nb; ++t)
                    el.coords[l].coeff[t] = parse_rational(jc[t], ctx);
            } else {
                el.coords[l].coeff[0] = parse_rational(jc, ctx);
            }
        }
        el.canonicalize();
        out.push_back(std::move(el));
    }
    return out;
}

inline json generators_to_json(const std::vector<TorusElement>& gens) {
    json out = json::array();
    for (const auto& g : gens) {
        json jg = json::array();
        for (const auto& c : g.coords) {
            json jc = json::array();
            for (const auto& q : c.coeff) {
                if (boost::multiprecision::denominator(q) == 1)
                    jc.push_back(boost::multiprecision::numerator(q).str());
                else
                    jc.push_back(boost::multiprecision::numerator(q).str() + "/" +
                                 boost::multiprecision::denominator(q).str());
            }
            jg.push_back(std::move(jc));
        }
        out.push_back(std::move(jg));
    }
    return out;
}

inline json imatrix_to_json(const IMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Lie algebras
// ---------------------------------------------------------------------------

/// "sl2", "R3", or sums like "sl2+R3".
inline LieAlgebra parse_algebra(const std::string& s) {
    std::istringstream ss(s);
    std::string tok;
    std::vector<LieAlgebra> parts;
    while (std::getline(ss, tok, '+')) {
        if (tok == "sl2")
            parts.push_back(LieAlgebra::sl2());
        else if (tok.size() >= 2 && tok[0] == 'R') {
            int m = 0;
            try {
                m = std::stoi(tok.substr(1));
            } catch (const std::exception&) {
                throw ParseError("malformed abelian factor", tok);
            }
            if (m < 1) throw ParseError("abelian factor must have dimension >= 1", tok);
            parts.push_back(LieAlgebra::abelian(m));
        } else {
            throw ParseError("unknown algebra (use sl2, Rm, or sums like sl2+R3)", tok);
        }
    }
    if (parts.empty()) throw ParseError("empty algebra description", s);
    LieAlgebra acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = LieAlgebra::direct_sum(acc, parts[i]);
    return acc;
}

/// Elements: array of rational coordinate vectors.
inline std::vector<RVector> parse_elements(const json& j, int n) {
    if (!j.is_array()) throw ParseError("expected an array of elements", "elements");
    std::vector<RVector> out;
    for (size_t i = 0; i < j.size(); ++i) {
        const json& je = j[i];
        const std::string ctx = "element " + std::to_string(i);
        if (!je.is_array() || static_cast<int>(je.size()) != n)
            throw ParseError("element must have " + std::to_string(n) + " coordinates", ctx);
        RVector v(static_cast<size_t>(n));
        for (int l = 0; l < n; ++l) v[static_cast<size_t>(l)] = parse_rational(je[static_cast<size_t>(l)], ctx);
        out.push_back(std::move(v));
    }
    return out;
}

inline json rvector_to_json(const RVector& v) {
    json out = json::array();
    for (const auto& q : v) {
        if (boost::multiprecision::denominator(q) == 1)
            out.push_back(boost::multiprecision::numerator(q).str());
        else
            out.push_back(boost::multiprecision::numerator(q).str() + "/" +
                          boost::multiprecision::denominator(q).str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// JSON if the first non-space byte is '[' or '{', whitespace grid otherwise.
template <class S>
MatrixX<S> parse_matrix_auto(const std::string& text, const FieldDescriptor& f) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '[' || ch == '{') {
            json j;
            try {
                j = json::parse(text);
            } catch (const json::parse_error& e) {
                throw ParseError(std::string("invalid JSON: ") + e.what(), "matrix input");
            }
            return parse_matrix<S>(j, f);
        }
        break;
    }
    return parse_text_matrix<S>(text, f);
}

}  // namespace projdense
