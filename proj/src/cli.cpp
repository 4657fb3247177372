#include "k3lattice/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "k3lattice/arith.hpp"
#include "k3lattice/bb_form.hpp"
#include "k3lattice/disc_form.hpp"
#include "k3lattice/enumeration.hpp"
#include "k3lattice/local_arith.hpp"
#include "k3lattice/moduli_arith.hpp"
#include "k3lattice/prime_density.hpp"

namespace k3lattice::cli {

namespace {

std::string str(const Integer& x) { return x.get_str(); }
std::string str(const Rational& x) { return x.get_str(); }

json vector_json(const IntVector& v)
{
    json out = json::array();
    for (const auto& x : v) out.push_back(str(x));
    return out;
}

json matrix_json(const IntMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
    return out;
}

json matrix_json(const RatMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(str(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json signature_json(const Signature& s) { return json{{"positive", s.positive}, {"negative", s.negative}}; }

const json& field(const json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

long parse_long(const json& value, const char* what)
{
    const Integer x = parse_integer(value);
    if (!x.fits_slong_p()) throw InputError(std::string(what) + " out of range");
    return x.get_si();
}

std::vector<RatVector> parse_rat_rows(const json& value)
{
    if (!value.is_array()) throw InputError("expected an array of rows");
    std::vector<RatVector> rows;
    for (const auto& row : value) {
        if (!row.is_array()) throw InputError("expected an array of rows");
        RatVector r;
        for (const auto& x : row) r.push_back(parse_rational(x));
        rows.push_back(r);
    }
    return rows;
}

RatVector parse_rat_vector(const json& value)
{
    if (!value.is_array()) throw InputError("expected an array");
    RatVector out;
    for (const auto& x : value) out.push_back(parse_rational(x));
    return out;
}

RatMatrix parse_rat_matrix(const json& value)
{
    const auto rows = parse_rat_rows(value);
    if (rows.empty()) throw InputError("matrix must be nonempty");
    RatMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw InputError("ragged matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

json local_parts_json(const FiniteQuadraticForm& form)
{
    json out = json::object();
    if (form.length() == 0) return out;
    for (const auto& [prime, e] : factorize(form.order())) {
        (void)e;
        out[str(prime)] = vector_json(disc_local_part(form, prime).invariant_factors());
    }
    return out;
}

json jordan_json(const JordanDecomposition& jd)
{
    json blocks = json::array();
    for (const auto& b : jd.blocks)
        blocks.push_back(json{{"scale", b.scale}, {"rank", b.rank}, {"det_class", b.det_class}});
    return json{{"prime", str(jd.prime)}, {"precision", jd.precision}, {"blocks", blocks}};
}

// Symmetric 2n-tensor on the standard basis, keyed by sorted index multisets.
class SampledForm {
public:
    SampledForm(const json& samples, std::size_t rank, long n) : rank_(rank), slots_(2 * n)
    {
        if (!samples.is_array()) throw InputError("w_samples must be an array");
        for (const auto& s : samples) {
            std::vector<std::size_t> idx;
            for (const auto& i : field(s, "indices")) {
                const long k = parse_long(i, "index");
                if (k < 0 || static_cast<std::size_t>(k) >= rank) throw InputError("sample index out of range");
                idx.push_back(static_cast<std::size_t>(k));
            }
            if (idx.size() != slots_) throw InputError("each sample needs exactly 2n indices");
            std::sort(idx.begin(), idx.end());
            const Rational v = parse_rational(field(s, "value"));
            auto [it, fresh] = values_.emplace(idx, v);
            if (!fresh && it->second != v) throw InconsistentData("conflicting values for one index multiset");
        }
    }

    Rational operator()(std::span<const RatVector> args) const
    {
        std::vector<std::size_t> idx(slots_);
        return expand(args, idx, 0, Rational(1));
    }

private:
    Rational expand(std::span<const RatVector> args, std::vector<std::size_t>& idx, std::size_t slot,
                    const Rational& coeff) const
    {
        if (slot == slots_) {
            std::vector<std::size_t> key = idx;
            std::sort(key.begin(), key.end());
            auto it = values_.find(key);
            if (it == values_.end()) {
                std::string s;
                for (auto k : key) s += std::to_string(k) + " ";
                throw InputError("w_samples lacks the multiset { " + s + "}");
            }
            return coeff * it->second;
        }
        Rational total = 0;
        for (std::size_t i = 0; i < rank_; ++i) {
            if (args[slot][i] == 0) continue;
            idx[slot] = i;
            total += expand(args, idx, slot + 1, coeff * args[slot][i]);
        }
        return total;
    }

    std::size_t rank_;
    std::size_t slots_;
    std::map<std::vector<std::size_t>, Rational> values_;
};

std::vector<std::int64_t> parse_csv_ints(const std::string& s)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw InputError("empty entry in list \"" + s + "\"");
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw InputError("not an integer: \"" + item + "\"");
        }
        if (used != item.size()) throw InputError("not an integer: \"" + item + "\"");
        out.push_back(v);
    }
    return out;
}

json read_document(std::istream& in, const std::string& path)
{
    if (path.empty() || path == "-") return json::parse(in);
    std::ifstream file(path);
    if (!file) throw InputError("cannot open " + path);
    return json::parse(file);
}

} // namespace

Integer parse_integer(const json& value)
{
    if (value.is_number_integer()) return Integer(value.dump());
    if (!value.is_string()) throw InputError("expected an integer or decimal string, got " + value.dump());
    const std::string s = value.get<std::string>();
    Integer x;
    if (s.empty() || x.set_str(s, 10) != 0) throw InputError("not a decimal integer: \"" + s + "\"");
    return x;
}

Rational parse_rational(const json& value)
{
    if (value.is_number_integer()) return Rational(Integer(value.dump()));
    if (!value.is_string()) throw InputError("expected a rational string \"a/b\", got " + value.dump());
    const std::string s = value.get<std::string>();
    Rational x;
    if (s.empty() || x.set_str(s, 10) != 0 || x.get_den() == 0) throw InputError("not a rational: \"" + s + "\"");
    x.canonicalize();
    return x;
}

IntVector parse_int_vector(const json& value)
{
    if (!value.is_array()) throw InputError("expected an array of integers");
    IntVector out;
    for (const auto& x : value) out.push_back(parse_integer(x));
    return out;
}

QuadLattice parse_lattice(const json& doc)
{
    const json& rows = field(doc, "gram");
    if (!rows.is_array() || rows.empty()) throw InputError("gram must be a nonempty array of rows");
    IntMatrix g(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const IntVector r = parse_int_vector(rows[i]);
        if (r.size() != rows.size()) throw InputError("gram must be square");
        for (std::size_t j = 0; j < r.size(); ++j) g(i, j) = r[j];
    }
    QuadLattice lattice(g);
    if (doc.contains("provenance") && doc["provenance"].contains("hyperbolic_summands")) {
        const long k = parse_long(doc["provenance"]["hyperbolic_summands"], "hyperbolic_summands");
        if (k < 0 || 2 * static_cast<std::size_t>(k) > lattice.rank())
            throw InputError("hyperbolic_summands out of range");
        lattice = lattice.with_hyperbolic_summands(static_cast<std::size_t>(k));
    }
    return lattice;
}

json lattice_document(const QuadLattice& lattice, const std::string& name)
{
    json doc{{"gram", matrix_json(lattice.gram())}};
    if (!name.empty()) doc["name"] = name;
    if (lattice.hyperbolic_summands() > 0)
        doc["provenance"] = json{{"hyperbolic_summands", std::to_string(lattice.hyperbolic_summands())}};
    return doc;
}

json cmd_lattice(const std::string& name, long n)
{
    if (name == "U") return lattice_document(make_U(), "U");
    if (name == "E8") return lattice_document(make_E8(), "E8");
    if (name == "lambda") return lattice_document(lambda_lattice(n), "lambda_" + std::to_string(n));
    if (name == "cubic") return lattice_document(cubic_primitive_lattice(), "cubic");
    if (name == "fermat") return lattice_document(fermat_transcendental_lattice(), "fermat");
    if (name == "rank1") return lattice_document(make_rank1(n), "<" + std::to_string(n) + ">");
    throw InputError("unknown lattice name \"" + name + "\"");
}

json cmd_disc(const json& doc)
{
    const QuadLattice lattice = parse_lattice(doc);
    const FiniteQuadraticForm form = discriminant_group(lattice);
    json values = json::array();
    for (const auto& v : form.generator_values()) values.push_back(str(v));
    return json{
        {"rank", lattice.rank()},
        {"det", str(lattice.det())},
        {"even", form.even()},
        {"value_group", form.even() ? "Q/2Z" : "Q/Z"},
        {"invariant_factors", vector_json(form.invariant_factors())},
        {"order", str(form.order())},
        {"q_values", values},
        {"pairings", matrix_json(form.generator_pairings())},
        {"local_parts", local_parts_json(form)},
    };
}

json cmd_bb_recover(const json& input)
{
    const long n = parse_long(field(input, "n"), "n");
    if (n < 1) throw InputError("n must be at least 1");

    if (input.contains("degree")) {
        const BBNorm r = degree_to_bb(parse_integer(input["degree"]), n);
        return json{{"degree", str(parse_integer(input["degree"]))},
                    {"n", n},
                    {"exact", r.exact ? json(str(*r.exact)) : json(nullptr)},
                    {"integral", r.integral},
                    {"lower", str(r.lower)},
                    {"upper", str(r.upper)}};
    }

    const RatVector xi = parse_rat_vector(field(input, "xi"));
    if (xi.empty()) throw InputError("xi must be nonempty");
    MultilinearForm w;
    Rational q_xi;
    if (input.contains("q")) {
        const RatMatrix q = parse_rat_matrix(input["q"]);
        if (q.rows() != q.cols() || !q.is_symmetric()) throw InputError("q must be a symmetric matrix");
        if (q.rows() != xi.size()) throw DimensionMismatch("xi length differs from the rank of q");
        q_xi = bilinear(q, xi, xi);
        w = make_w(q, n);
    } else if (input.contains("w_samples")) {
        q_xi = parse_rational(field(input, "q_xi"));
        w = SampledForm(input["w_samples"], xi.size(), n);
    } else {
        throw InputError("expected one of \"q\", \"w_samples\" or \"degree\"");
    }
    // Recovery divides by q(xi, xi); a vanishing value means the data cannot determine q.
    if (q_xi == 0) throw InconsistentData("q(xi, xi) = 0: w does not determine q from this xi");
    const RatMatrix q = q_from_w(w, n, xi, q_xi);
    return json{{"n", n}, {"q_xi", str(q_xi)}, {"q", matrix_json(q)}};
}

json cmd_density(const DensityOptions& options)
{
    const int modes = int(options.fermat) + int(!options.inert.empty()) + int(!options.union_primes.empty());
    if (modes != 1) throw InputError("choose exactly one of --fermat, --inert, --union");
    std::function<bool(std::uint64_t)> predicate;
    Rational theory;
    std::string label;
    if (options.fermat) {
        predicate = [](std::uint64_t p) { return p != 3 && fermat_cubic_supersingular(static_cast<std::int64_t>(p)); };
        theory = Rational(1, 2);
        label = "fermat";
    } else {
        const bool is_union = !options.union_primes.empty();
        const std::vector<std::int64_t> ds = is_union ? options.union_primes : options.inert;
        theory = is_union ? union_inert_density(ds) : inert_in_any_density(ds);
        predicate = [ds](std::uint64_t p) {
            for (auto d : ds)
                if (is_inert(static_cast<std::int64_t>(p), d).inert) return true;
            return false;
        };
        label = is_union ? "union" : "inert";
    }
    const PrimePredicateReport r = empirical_density(predicate, options.bound, theory);
    const double approx = r.empirical_density.get_d();
    return json{{"predicate", label},
                {"bound", std::to_string(r.bound)},
                {"total_primes", std::to_string(r.total_primes)},
                {"hits", std::to_string(r.hits)},
                {"empirical_density", str(r.empirical_density)},
                {"empirical_density_decimal", approx},
                {"theoretical_density", str(*r.theoretical_density)}};
}

json cmd_newton(const json& input)
{
    const IntVector coeffs = parse_int_vector(field(input, "coeffs"));
    if (coeffs.empty()) throw InputError("coeffs must be nonempty");
    const NewtonPolygon np = newton_polygon(coeffs, parse_integer(field(input, "p")));
    json slopes = json::array();
    for (const auto& s : np.slopes) slopes.push_back(json{{"slope", str(s.slope)}, {"multiplicity", s.multiplicity}});
    json out{{"prime", str(np.prime)}, {"degree", np.degree()}, {"slopes", slopes}};
    if (input.contains("weight")) {
        const long weight = parse_long(input["weight"], "weight");
        if (weight < 1) throw InputError("weight must be positive");
        out["supersingular"] = is_supersingular_newton(np, static_cast<unsigned long>(weight));
    }
    return out;
}

json cmd_artin(const json& doc, const Integer& p)
{
    const ArtinResult r = artin_invariant(parse_lattice(doc), p);
    return json{{"prime", str(r.prime)},
                {"sigma", r.sigma},
                {"superspecial", r.superspecial},
                {"within_k3_bound", r.within_k3_bound},
                {"t1_rank", r.t1_basis.cols()},
                {"t0_rank", r.t0_basis.cols()}};
}

json cmd_mukai(const json& input)
{
    const QuadLattice ns = parse_lattice(field(input, "ns"));
    MukaiVector v;
    if (input.contains("v")) {
        const json& jv = input["v"];
        v = MukaiVector{parse_integer(field(jv, "r")), parse_int_vector(field(jv, "c1")), parse_integer(field(jv, "s"))};
    } else {
        v = hilbert_scheme_vector(parse_long(field(input, "n"), "n"), ns.rank());
    }
    const Integer v2 = mukai_pairing(v, v, ns);
    const QuadLattice mukai = mukai_lattice(ns);
    json out{{"v", json{{"r", str(v.r)}, {"c1", vector_json(v.c1)}, {"s", str(v.s)}}},
             {"v_square", str(v2)},
             {"v_square_plus_2", str(Integer(v2 + 2))},
             {"mukai_lattice", lattice_document(mukai)},
             {"mukai_det", str(mukai.det())},
             {"mukai_signature", signature_json(signature(mukai))}};
    if (input.contains("p")) {
        const MukaiPerpReport r = mukai_perp_disc_check(v, ns, parse_integer(input["p"]));
        json check{{"prime", str(r.prime)},
                   {"perp_rank", r.perp_rank},
                   {"perp_local_factors", vector_json(r.perp_local_factors)},
                   {"ns_local_factors", vector_json(r.ns_local_factors)},
                   {"perp_local_order", str(r.perp_local_order)},
                   {"ns_local_order", str(r.ns_local_order)},
                   {"orders_match", r.orders_match},
                   {"forms_isomorphic", r.forms_isomorphic}};
        if (r.within_p20_bound) check["within_p20_bound"] = *r.within_p20_bound;
        out["perp_check"] = check;
    }
    return out;
}

json cmd_jordan(const json& doc, const Integer& p, std::optional<unsigned long> precision)
{
    return jordan_json(jordan_decomposition(parse_lattice(doc), p, precision));
}

json cmd_enumerate(const json& doc, const Integer& m)
{
    const VectorSet set = vectors_of_norm(parse_lattice(doc), m);
    json vectors = json::array();
    for (const auto& v : set.vectors) vectors.push_back(vector_json(v));
    return json{{"norm", str(set.norm)}, {"count", set.vectors.size()}, {"vectors", vectors}};
}

namespace {

json pointed_json(const PointedInvariants& inv)
{
    json local = json::object();
    for (const auto& [p, jd] : inv.local_data) local[str(p)] = jordan_json(jd);
    return json{{"signature", signature_json(inv.signature)},
                {"point_norm", str(inv.point_norm)},
                {"point_divisor", str(inv.point_divisor)},
                {"ambient_det", str(inv.ambient_det)},
                {"complement_det", str(inv.complement_det)},
                {"complement_local", local},
                {"complement_two_part", vector_json(inv.complement_two_part.invariant_factors())},
                {"hyperbolic_certified", inv.hyperbolic_certified}};
}

} // namespace

json cmd_pointed(const json& input)
{
    const QuadLattice lattice = parse_lattice(field(input, "lattice"));
    const IntVector point = parse_int_vector(field(input, "point"));
    const PointedInvariants inv = pointed_invariants(lattice, point);
    json out{{"invariants", pointed_json(inv)}};
    if (input.contains("other")) {
        const IntVector other = parse_int_vector(input["other"]);
        out["same_invariants"] = same_invariants(inv, pointed_invariants(lattice, other));
        if (input.contains("p")) {
            const ZpEquivalence e = zp_pointed_equivalent(lattice, point, other, parse_integer(input["p"]));
            out["zp_equivalence"] =
                json{{"equivalent", e.equivalent},
                     {"hypothesis", e.hypothesis == HypothesisStatus::Certified ? "certified" : "unverified"},
                     {"note", e.note}};
        }
    }
    return out;
}

int exit_code_for_current_exception(std::string& message)
{
    try {
        throw;
    } catch (const InputError& e) {
        message = e.what();
        return kInputError;
    } catch (const DomainError& e) {
        message = e.what();
        return kDomainError;
    } catch (const InconsistentData& e) {
        message = e.what();
        return kInconsistent;
    } catch (const json::exception& e) {
        message = std::string("malformed JSON: ") + e.what();
        return kInputError;
    } catch (const std::exception& e) {
        message = std::string("internal error: ") + e.what();
        return kInternal;
    }
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact arithmetic for integral quadratic lattices of K3 type"};
    app.require_subcommand(1);
    bool meta = false;
    std::string input_path;
    app.add_flag("--meta", meta, "Wrap output as {data, meta} with a timestamp");
    app.add_option("--input", input_path, "Read the JSON document from a file instead of stdin");

    std::string lattice_name;
    long lattice_n = 1;
    auto* lat = app.add_subcommand("lattice", "Print a named lattice document");
    lat->add_option("--name", lattice_name, "U, E8, lambda, cubic, fermat, rank1")->required();
    lat->add_option("--n", lattice_n, "Parameter for lambda and rank1");

    auto* disc = app.add_subcommand("disc", "Discriminant form of a lattice document");
    auto* bb = app.add_subcommand("bb-recover", "Recover q from w, or the BB norm from a degree");

    DensityOptions dens;
    std::string inert_list, union_list;
    long long bound = 1000000;
    auto* density = app.add_subcommand("density", "Empirical prime densities");
    density->add_flag("--fermat", dens.fermat, "Primes of supersingular reduction of the Fermat cubic");
    density->add_option("--inert", inert_list, "d1,d2,...: primes inert in some Q(sqrt(-d))");
    density->add_option("--union", union_list, "p1,p2,...: distinct primes, union of inertness conditions");
    density->add_option("--bound", bound, "Largest prime considered (>= 100)");

    auto* newton = app.add_subcommand("newton", "Newton polygon of {coeffs, p[, weight]}");

    std::string prime_text;
    auto* artin = app.add_subcommand("artin", "Artin invariant of a lattice document");
    artin->add_option("--p", prime_text, "Prime")->required();

    auto* mukai = app.add_subcommand("mukai", "Mukai pairing and v^perp check for {ns, v | n[, p]}");

    long long precision = -1;
    auto* jordan = app.add_subcommand("jordan", "Jordan decomposition at an odd prime");
    jordan->add_option("--p", prime_text, "Odd prime")->required();
    jordan->add_option("--precision", precision, "Working precision exponent");

    std::string norm_text;
    auto* enumerate = app.add_subcommand("enumerate", "All vectors of a given norm in a definite lattice");
    enumerate->add_option("--norm", norm_text, "Target norm")->required();

    auto* pointed = app.add_subcommand("pointed", "Invariants of {lattice, point[, other, p]}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    json data;
    try {
        auto prime = [&] {
            Integer p;
            if (p.set_str(prime_text, 10) != 0) throw InputError("--p must be a decimal integer");
            return p;
        };
        if (lat->parsed()) {
            data = cmd_lattice(lattice_name, lattice_n);
        } else if (density->parsed()) {
            if (!inert_list.empty()) dens.inert = parse_csv_ints(inert_list);
            if (!union_list.empty()) dens.union_primes = parse_csv_ints(union_list);
            if (bound < 100) throw InputError("--bound must be at least 100");
            dens.bound = static_cast<std::uint64_t>(bound);
            data = cmd_density(dens);
        } else {
            const json doc = read_document(in, input_path);
            if (disc->parsed()) {
                data = cmd_disc(doc);
            } else if (bb->parsed()) {
                data = cmd_bb_recover(doc);
            } else if (newton->parsed()) {
                data = cmd_newton(doc);
            } else if (artin->parsed()) {
                data = cmd_artin(doc, prime());
            } else if (mukai->parsed()) {
                data = cmd_mukai(doc);
            } else if (jordan->parsed()) {
                std::optional<unsigned long> prec;
                if (precision >= 0) prec = static_cast<unsigned long>(precision);
                data = cmd_jordan(doc, prime(), prec);
            } else if (enumerate->parsed()) {
                Integer m;
                if (m.set_str(norm_text, 10) != 0) throw InputError("--norm must be a decimal integer");
                data = cmd_enumerate(doc, m);
            } else if (pointed->parsed()) {
                data = cmd_pointed(doc);
            }
        }
    } catch (...) {
        std::string message;
        const int code = exit_code_for_current_exception(message);
        err << "error: " << message << "\n";
        return code;
    }

    if (meta) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        data = json{{"data", data}, {"meta", json{{"command", app.get_subcommands().front()->get_name()}, {"timestamp", stamp}}}};
    }
    out << data.dump(2) << "\n";
    return kOk;
}

} // namespace k3lattice::cli
