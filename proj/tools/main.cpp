// projdense: certification of contracting projective transformations over
// local fields, exact torus density computations, and Lie-algebra
// generation checks. All subcommands are deterministic for a fixed seed and
// emit JSON on stdout.
//
// Exit codes: 0 affirmative, 1 negative verdict, 2 inconclusive, >2 error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "projdense/contraction.hpp"
#include "projdense/io.hpp"

namespace pd = projdense;
using pd::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr std::uint64_t kDefaultSeed = 12345;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitError = 3;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int fail(const std::string& kind, const std::string& message) {
    json err = {{"error", kind}, {"message", message}};
    std::cerr << err.dump(2) << "\n";
    return kExitError;
}

int default_padic_precision() {
    // environment override only for the default precision, never for seeds
    if (const char* env = std::getenv("PROJDENSE_PADIC_PRECISION")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return pd::Padic::kDefaultPrecision;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return pd::read_file(path);
}

int verdict_exit(pd::Verdict v) {
    switch (v) {
        case pd::Verdict::CertifiedContracting:
        case pd::Verdict::OracleVerified: return kExitYes;
        case pd::Verdict::CertifiedNotContracting:
        case pd::Verdict::OracleRefuted: return kExitNo;
        case pd::Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitError;
}

template <class S>
json certificate_json(const pd::ContractionCertificate<S>& c, const pd::FieldDescriptor& f) {
    json j = {{"verdict", pd::verdict_name(c.verdict)},
              {"ratio", c.ratio},
              {"epsilon", c.epsilon},
              {"bound_used", c.bound_used},
              {"field", pd::field_name(f)}};
    if (c.hyperplane) j["hyperplane_normal"] = pd::vector_to_json<S>(c.hyperplane->normal, f);
    if (c.point) j["attracting_point"] = pd::vector_to_json<S>(c.point->rep, f);
    if (c.worst_point) {
        j["worst_point"] = pd::vector_to_json<S>(c.worst_point->rep, f);
        j["worst_image_distance"] = c.worst_image_distance;
    }
    return j;
}

// ---------------------------------------------------------------------------
// cartan
// ---------------------------------------------------------------------------

template <class S>
int run_cartan_typed(const std::string& text, const pd::FieldDescriptor& f) {
    auto g = pd::parse_matrix_auto<S>(text, f);
    auto d = pd::decompose<S>(g);
    json out = {{"field", pd::field_name(f)},
                {"k", pd::matrix_to_json<S>(d.k, f)},
                {"a", pd::vector_to_json<S>(d.a, f)},
                {"kp", pd::matrix_to_json<S>(d.kp, f)},
                {"profile", json::array()}};
    for (Eigen::Index i = 0; i < d.profile.size(); ++i) out["profile"].push_back(d.profile[i]);
    if (!d.valuations.empty()) out["valuations"] = d.valuations;
    emit(out);
    return kExitYes;
}

int run_cartan(const std::string& field, const std::string& input) {
    auto f = pd::parse_field(field, default_padic_precision());
    const std::string text = read_input(input);
    switch (f.kind) {
        case pd::FieldKind::Real: return run_cartan_typed<double>(text, f);
        case pd::FieldKind::Complex: return run_cartan_typed<std::complex<double>>(text, f);
        case pd::FieldKind::Padic: return run_cartan_typed<pd::Padic>(text, f);
    }
    return kExitError;
}

// ---------------------------------------------------------------------------
// contract
// ---------------------------------------------------------------------------

template <class S>
int run_certify_typed(const std::string& text, const pd::FieldDescriptor& f, double eps) {
    auto g = pd::parse_matrix_auto<S>(text, f);
    auto cert = pd::certify_by_ratio<S>(g, eps);
    emit(certificate_json(cert, f));
    return verdict_exit(cert.verdict);
}

int run_certify(const std::string& field, const std::string& input, double eps) {
    auto f = pd::parse_field(field, default_padic_precision());
    const std::string text = read_input(input);
    switch (f.kind) {
        case pd::FieldKind::Real: return run_certify_typed<double>(text, f, eps);
        case pd::FieldKind::Complex:
            return run_certify_typed<std::complex<double>>(text, f, eps);
        case pd::FieldKind::Padic: return run_certify_typed<pd::Padic>(text, f, eps);
    }
    return kExitError;
}

int run_oracle(const std::string& field, const std::string& input, double eps,
               std::int64_t samples, std::uint64_t seed) {
    auto f = pd::parse_field(field, default_padic_precision());
    const std::string text = read_input(input);
    switch (f.kind) {
        case pd::FieldKind::Real: {
            auto g = pd::parse_matrix_auto<double>(text, f);
            auto cert = pd::oracle_check<double>(g, eps, samples, seed);
            emit(certificate_json(cert, f));
            return verdict_exit(cert.verdict);
        }
        case pd::FieldKind::Complex: {
            auto g = pd::parse_matrix_auto<std::complex<double>>(text, f);
            auto cert = pd::oracle_check<std::complex<double>>(g, eps, samples, seed);
            emit(certificate_json(cert, f));
            return verdict_exit(cert.verdict);
        }
        case pd::FieldKind::Padic: {
            auto g = pd::parse_matrix_auto<pd::Padic>(text, f);
            auto cert = pd::oracle_check_padic(g, eps);
            emit(certificate_json(cert, f));
            return verdict_exit(cert.verdict);
        }
    }
    return kExitError;
}

int run_proofchain(const std::string& field, const std::string& input, double eps,
                   std::int64_t samples, std::uint64_t seed) {
    auto f = pd::parse_field(field, default_padic_precision());
    if (f.kind != pd::FieldKind::Real)
        return fail("unsupported", "proofchain replays the archimedean argument over the reals");
    auto g = pd::parse_matrix_auto<double>(read_input(input), f);
    auto rep = pd::verify_proof_chain(g, eps, samples, seed);
    json out = {{"applicable", rep.applicable},
                {"hypotheses_ok", rep.hypotheses_ok},
                {"epsilon", eps},
                {"ratio", rep.ratio},
                {"conclusion_ratio_le_4eps2", rep.conclusion}};
    if (!rep.note.empty()) out["note"] = rep.note;
    if (rep.applicable && rep.hypotheses_ok) {
        out["s_abs"] = rep.s_abs;
        out["s_below_eps"] = rep.s_below_eps;
        out["coefficient"] = rep.coeff_in_range;
        out["coefficient_in_range"] = rep.coeff_ok;
        out["alpha_margin"] = rep.alpha_margin;
        out["margins"] = {{"cont0", rep.margin_cont0},
                          {"cont2", rep.margin_cont2},
                          {"cont3", rep.margin_cont3},
                          {"cont4", rep.margin_cont4},
                          {"final", rep.margin_final}};
    }
    emit(out);
    if (!rep.applicable || !rep.hypotheses_ok) return kExitInconclusive;
    return (rep.all_margins_nonneg() && rep.conclusion) ? kExitYes : kExitNo;
}

// ---------------------------------------------------------------------------
// torus
// ---------------------------------------------------------------------------

int run_torus(const std::string& sub, const std::string& basis_str, const std::string& input,
              int word_length, double mesh) {
    auto basis = pd::parse_basis(basis_str);
    json jin;
    try {
        jin = json::parse(read_input(input));
    } catch (const json::parse_error& e) {
        throw pd::ParseError(std::string("invalid JSON: ") + e.what(), "generators input");
    }
    auto gens = pd::parse_generators(jin, basis);
    if (gens.empty()) return fail("input", "need at least one generator");
    const int d = static_cast<int>(gens[0].dim());

    if (sub == "closure") {
        auto c = pd::closure(gens, d);
        emit(json{{"kernel", pd::imatrix_to_json(c.kernel)},
                  {"dimension", c.dimension},
                  {"component_count", c.component_count.str()},
                  {"dense", c.dense(d)}});
        return kExitYes;
    }
    if (sub == "dense") {
        bool dense = pd::is_dense(gens, d);
        emit(json{{"dense", dense}, {"dimension", d}});
        return dense ? kExitYes : kExitNo;
    }
    if (sub == "reduce") {
        auto out = pd::reduce_generators(gens, d);
        emit(json{{"generators", pd::generators_to_json(out)},
                  {"count", out.size()},
                  {"dense", pd::is_dense(out, d)}});
        return kExitYes;
    }
    if (sub == "probe") {
        double cov = pd::numeric_density_probe(gens, basis.values, word_length, mesh);
        emit(json{{"coverage", cov}, {"word_length", word_length}, {"mesh", mesh}});
        return cov >= 1.0 ? kExitYes : kExitNo;
    }
    return fail("usage", "unknown torus subcommand");
}

// ---------------------------------------------------------------------------
// liealg and bound
// ---------------------------------------------------------------------------

int run_liealg(const std::string& sub, const std::string& algebra, const std::string& elements,
               int trials, std::uint64_t seed) {
    auto L = pd::parse_algebra(algebra);
    if (sub == "generates") {
        json jin;
        try {
            jin = json::parse(read_input(elements));
        } catch (const json::parse_error& e) {
            throw pd::ParseError(std::string("invalid JSON: ") + e.what(), "elements input");
        }
        auto els = pd::parse_elements(jin, L.dim());
        auto basis = pd::generated_subalgebra(L, els);
        bool ok = static_cast<int>(basis.size()) == L.dim();
        emit(json{{"generates", ok},
                  {"algebra_dimension", L.dim()},
                  {"subalgebra_dimension", basis.size()}});
        return ok ? kExitYes : kExitNo;
    }
    if (sub == "mingen") {
        auto r = pd::min_generators_bound(L, trials, seed);
        json wit = json::array();
        for (const auto& v : r.witness) wit.push_back(pd::rvector_to_json(v));
        emit(json{{"lower", r.lower},
                  {"upper", r.upper},
                  {"gap_closed", r.lower == r.upper},
                  {"obstruction", r.obstruction},
                  {"witness", wit}});
        return r.lower == r.upper ? kExitYes : kExitInconclusive;
    }
    return fail("usage", "unknown liealg subcommand");
}

int run_bound(int dim, int d1, int meta, int t) {
    auto b = pd::generator_bound(dim, d1, meta, t);
    emit(json{{"refined", b.refined},
              {"headline", b.headline},
              {"refined_strictly_smaller", b.refined_strictly_smaller}});
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contracting projective transformations over local fields"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string field = "real";
    std::string input = "-";
    double epsilon = 0.1;
    std::int64_t samples = 20000;
    std::uint64_t seed = kDefaultSeed;
    std::string basis = "1,sqrt2,sqrt3";
    int word_length = 500;
    double mesh = 0.1;
    std::string algebra = "sl2";
    std::string elements = "-";
    int trials = 50;
    int bdim = 0, bd1 = 0, bmeta = 0, bt = 0;

    auto* cartan = app.add_subcommand("cartan", "k a k' decomposition and singular profile");
    cartan->add_option("--field", field, "real, complex, or padic:p");
    cartan->add_option("--input", input, "matrix file (JSON or whitespace grid), - for stdin");

    auto* contract = app.add_subcommand("contract", "epsilon-contraction certificates");
    contract->require_subcommand(1);
    auto* certify = contract->add_subcommand("certify", "singular-ratio certificate");
    auto* oracle = contract->add_subcommand("oracle", "definitional sampling/enumeration check");
    auto* proofchain =
        contract->add_subcommand("proofchain", "replay the converse inequality chain");
    for (auto* c : {certify, oracle, proofchain}) {
        c->add_option("--field", field, "real, complex, or padic:p");
        c->add_option("--input", input, "matrix file, - for stdin");
        c->add_option("--epsilon", epsilon, "contraction parameter in (0, 1/4)")->required();
    }
    for (auto* c : {oracle, proofchain}) {
        c->add_option("--samples", samples, "sphere samples (archimedean)");
        c->add_option("--seed", seed, "deterministic sampling seed");
    }

    auto* torus = app.add_subcommand("torus", "density and generators on T^d");
    torus->require_subcommand(1);
    auto* tclosure = torus->add_subcommand("closure", "character kernel lattice");
    auto* tdense = torus->add_subcommand("dense", "exact Kronecker density check");
    auto* treduce = torus->add_subcommand("reduce", "reduce to <= d dense generators");
    auto* tprobe = torus->add_subcommand("probe", "floating-point coverage cross-check");
    for (auto* c : {tclosure, tdense, treduce, tprobe}) {
        c->add_option("--basis", basis, "comma-separated symbols, e.g. 1,sqrt2,sqrt3");
        c->add_option("--input", input, "generators file (JSON), - for stdin");
    }
    tprobe->add_option("--word-length", word_length, "max l1 word length");
    tprobe->add_option("--mesh", mesh, "cell width in (0,1)");

    auto* liealg = app.add_subcommand("liealg", "Lie algebra generation over Q");
    liealg->require_subcommand(1);
    auto* lgen = liealg->add_subcommand("generates", "do the elements generate?");
    auto* lmin = liealg->add_subcommand("mingen", "min-generator bounds with witness");
    for (auto* c : {lgen, lmin})
        c->add_option("--algebra", algebra, "sl2, Rm, or sums like sl2+R3");
    lgen->add_option("--elements", elements, "elements file (JSON), - for stdin");
    lmin->add_option("--trials", trials, "random tuples per size");
    lmin->add_option("--seed", seed, "search seed");

    auto* bound = app.add_subcommand("bound", "generator-count bound dim(G/G2) + d1 + t");
    bound->add_option("--dim", bdim, "dim G")->required();
    bound->add_option("--d1", bd1, "dim of the maximal Euclidean quotient")->required();
    bound->add_option("--meta", bmeta, "dim of the metabelian quotient G/G2")->required();
    bound->add_option("--t", bt, "min generators of the perfect part's algebra")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cartan->parsed()) return run_cartan(field, input);
        if (certify->parsed()) return run_certify(field, input, epsilon);
        if (oracle->parsed()) return run_oracle(field, input, epsilon, samples, seed);
        if (proofchain->parsed()) return run_proofchain(field, input, epsilon, samples, seed);
        for (auto* c : {tclosure, tdense, treduce, tprobe})
            if (c->parsed()) return run_torus(c->get_name(), basis, input, word_length, mesh);
        if (lgen->parsed()) return run_liealg("generates", algebra, elements, trials, seed);
        if (lmin->parsed()) return run_liealg("mingen", algebra, elements, trials, seed);
        if (bound->parsed()) return run_bound(bdim, bd1, bmeta, bt);
    } catch (const pd::ParseError& e) {
        return fail("parse", e.what());
    } catch (const pd::PrecisionLoss& e) {
        return fail("precision", e.what());
    } catch (const pd::PadicError& e) {
        return fail("padic", e.what());
    } catch (const pd::SingularMatrixError& e) {
        return fail("singular", e.what());
    } catch (const std::invalid_argument& e) {
        return fail("invalid_argument", e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return fail("usage", "no subcommand matched");
}
