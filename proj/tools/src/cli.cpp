#include "grassnest/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grassnest/chern.hpp"
#include "grassnest/error.hpp"
#include "grassnest/ffield.hpp"
#include "grassnest/grassmann.hpp"
#include "grassnest/nesting.hpp"
#include "grassnest/schwz.hpp"

namespace grassnest::cli
{

namespace
{

using json = nlohmann::json;
using ffield::FieldSpec;
using ffield::MatGF;

struct RunConfig
{
    std::optional<unsigned> q;
    std::optional<unsigned> p;
    unsigned k = 1;
    std::vector<unsigned> modulus;
    unsigned n = 0;
    unsigned i = 0;
    unsigned j = 0;
    std::optional<unsigned> d_max;
    unsigned i_max = 3;
    unsigned n_max = 9;
    unsigned m = 0;
    std::optional<long> s_first;
    std::optional<long> s_last;
    std::vector<long> poly;
    std::vector<unsigned> gram;
    bool sweep = false;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string output;
    std::string export_path;
    bool timing = false;
};

// What a command produced: the report body and its verdict.
struct Report
{
    std::string body;
    int status = Pass;
};

class UsageFailure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

json big(const BigInt& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

json coeff_array(const UniPolyZ& p)
{
    json a = json::array();
    for (const auto& c : p.coeffs())
        a.push_back(big(c));
    return a;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::filesystem::path resolve(const std::string& path)
{
    std::filesystem::path out(path);
    if (out.is_relative())
        if (const char* dir = std::getenv("GRASSNEST_OUT_DIR"); dir && *dir)
            out = std::filesystem::path(dir) / out;
    return out;
}

void write_file(const std::string& path, const std::string& text)
{
    const auto target = resolve(path);
    std::ofstream f(target, std::ios::binary);
    if (!f)
        throw UsageFailure("cannot open " + target.string() + " for writing");
    f << text;
}

FieldSpec field_of(const RunConfig& c)
{
    if (c.q && c.p)
        throw UsageFailure("give either -q or -p/-k, not both");
    if (c.p)
        return FieldSpec::make(*c.p, c.k, c.modulus.empty() ? std::nullopt
                                                            : std::optional<std::vector<unsigned>>(c.modulus));
    if (!c.modulus.empty() || c.k != 1)
        throw UsageFailure("-k and --modulus need -p");
    return FieldSpec::of_order(c.q.value_or(2));
}

json field_params(const FieldSpec& f)
{
    json j{{"p", f.p()}, {"k", f.k()}, {"q", f.q()}};
    if (f.k() > 1)
        j["modulus"] = f.modulus();
    return j;
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (c.format == a)
            return;
    throw UsageFailure("format " + c.format + " is not available for this command");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string pairs_tsv(const nesting::Matching& m)
{
    std::ostringstream os;
    for (const auto& [l, r] : m.pairs())
        os << l << '\t' << r << '\n';
    return os.str();
}

json pairs_json(const nesting::Matching& m)
{
    json a = json::array();
    for (const auto& [l, r] : m.pairs())
        a.push_back(json::array({l, r}));
    return a;
}

schwz::ChernCandidate candidate_of(const RunConfig& c)
{
    if (c.poly.empty())
        throw UsageFailure("--poly is required");
    std::vector<BigInt> coeffs(c.poly.begin(), c.poly.end());
    return schwz::ChernCandidate::make(UniPolyZ(std::move(coeffs)));
}

// ---- grassmann -------------------------------------------------------------

Report grassmann_count(const RunConfig& c)
{
    require_format(c, {"text", "json", "csv"});
    const auto f = field_of(c);
    const auto count = grassmann::gaussian_binomial(c.n, c.i, f.q());
    Report r;
    if (c.format == "json") {
        json params = field_params(f);
        params["n"] = c.n;
        params["i"] = c.i;
        r.body = dump({{"params", params}, {"count", big(count)}});
    } else if (c.format == "csv") {
        r.body = "q,n,i,count\n" + std::to_string(f.q()) + "," + std::to_string(c.n) + "," + std::to_string(c.i) + "," +
                 count.str() + "\n";
    } else {
        r.body = count.str() + "\n";
    }
    return r;
}

Report grassmann_enum(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto f = field_of(c);
    const auto table = grassmann::enumerate_subspaces(c.n, c.i, f);
    Report r;
    if (c.format == "json") {
        json params = field_params(f);
        params["n"] = c.n;
        params["i"] = c.i;
        json subs = json::array();
        for (const auto& s : table.subspaces()) {
            json rows = json::array();
            for (std::size_t row = 0; row < s.dim; ++row) {
                json entries = json::array();
                for (auto e : s.basis.row(row))
                    entries.push_back(f.coeffs(e));
                rows.push_back(entries);
            }
            subs.push_back({{"id", s.id}, {"basis", rows}});
        }
        r.body = dump({{"params", params}, {"size", table.size()}, {"subspaces", subs}});
    } else {
        std::ostringstream os;
        grassmann::write_table(os, table);
        r.body = os.str();
    }
    return r;
}

// ---- nest ------------------------------------------------------------------

Report nest_match(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto f = field_of(c);
    const auto inc = grassmann::incidence_graph(c.i, c.j, c.n, f);
    const auto m = nesting::find_bijective_nesting(inc);
    const auto v = nesting::verify_matching(m);
    if (!c.export_path.empty())
        write_file(c.export_path, pairs_tsv(m));

    Report r;
    r.status = (m.saturating && v.ok()) ? Pass : VerifiedFailure;
    if (c.format == "json") {
        json params = field_params(f);
        params["n"] = c.n;
        params["i"] = c.i;
        params["j"] = c.j;
        r.body = dump({{"params", params},
                       {"leftSize", inc->left->size()},
                       {"rightSize", inc->right->size()},
                       {"edges", inc->edge_count()},
                       {"size", m.size},
                       {"saturating", m.saturating},
                       {"perfect", m.perfect},
                       {"injective", v.injective},
                       {"surjective", v.surjective},
                       {"verifiedNesting", v.every_pair_nested},
                       {"pairs", pairs_json(m)}});
    } else {
        std::ostringstream os;
        os << "field " << f.describe() << "\n";
        os << "Gr(" << c.i << "," << c.n << ") -> Gr(" << c.j << "," << c.n << "): " << inc->left->size() << " x "
           << inc->right->size() << ", " << inc->edge_count() << " incidences\n";
        os << "matching size " << m.size << ", saturating " << yes_no(m.saturating) << ", perfect "
           << yes_no(m.perfect) << "\n";
        os << "verified " << v.pairs_checked << " pairs: nested " << yes_no(v.every_pair_nested) << ", injective "
           << yes_no(v.injective) << ", surjective " << yes_no(v.surjective) << "\n";
        r.body = os.str();
    }
    return r;
}

Report nest_hall(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto f = field_of(c);
    const auto inc = grassmann::incidence_graph(c.i, c.j, c.n, f);
    const auto rep = nesting::hall_check(*inc, c.samples, c.seed);
    Report r;
    r.status = (rep.min_slack >= 0 && rep.double_count_exact && rep.inequality_holds) ? Pass : VerifiedFailure;
    if (c.format == "json") {
        json params = field_params(f);
        params["n"] = c.n;
        params["i"] = c.i;
        params["j"] = c.j;
        params["samples"] = c.samples;
        params["seed"] = c.seed;
        r.body = dump({{"params", params},
                       {"checkedSubsets", rep.checked_subsets},
                       {"minSlack", rep.min_slack},
                       {"nPerLeft", rep.n_per_left},
                       {"doubleCountPairs", rep.double_count_pairs},
                       {"kTimesN", rep.k_times_n},
                       {"doubleCountExact", rep.double_count_exact},
                       {"inequalityHolds", rep.inequality_holds}});
    } else {
        std::ostringstream os;
        os << "field " << f.describe() << ", Gr(" << c.i << "," << c.n << ") -> Gr(" << c.j << "," << c.n << ")\n";
        os << "subsets " << rep.checked_subsets << " (seed " << c.seed << ")\n";
        os << "min slack " << rep.min_slack << " (|W| = " << rep.double_count_pairs << ", kN = " << rep.k_times_n
           << ", N = " << rep.n_per_left << ")\n";
        os << "double count exact " << yes_no(rep.double_count_exact) << ", kN <= |union| N "
           << yes_no(rep.inequality_holds) << "\n";
        r.body = os.str();
    }
    return r;
}

Report nest_perp(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto f = field_of(c);
    const auto form = nesting::AlternatingForm::standard(f, c.n);
    const auto m = nesting::symplectic_nesting_map(form);
    const auto v = nesting::verify_matching(m);
    bool involution = true;
    const auto lines = grassmann::enumerate_subspaces(c.n, 1, f);
    for (const auto& l : lines.subspaces())
        if (!(nesting::perp(nesting::perp(l, form), form) == l)) {
            involution = false;
            break;
        }
    if (!c.export_path.empty())
        write_file(c.export_path, pairs_tsv(m));

    Report r;
    r.status = (m.perfect && v.ok() && involution) ? Pass : VerifiedFailure;
    if (c.format == "json") {
        json params = field_params(f);
        params["n"] = c.n;
        r.body = dump({{"params", params},
                       {"size", m.size},
                       {"perfect", m.perfect},
                       {"verifiedNesting", v.every_pair_nested},
                       {"injective", v.injective},
                       {"involution", involution},
                       {"pairs", pairs_json(m)}});
    } else {
        std::ostringstream os;
        os << "field " << f.describe() << ", l -> perp(l) on Gr(1," << c.n << ")\n";
        os << "size " << m.size << ", perfect " << yes_no(m.perfect) << ", nested " << yes_no(v.every_pair_nested)
           << ", injective " << yes_no(v.injective) << "\n";
        os << "perp(perp(l)) = l on every line " << yes_no(involution) << "\n";
        r.body = os.str();
    }
    return r;
}

Report nest_linear_check(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto f = field_of(c);
    json params = field_params(f);
    params["n"] = c.n;
    Report r;

    if (!c.sweep) {
        if (c.gram.size() != static_cast<std::size_t>(c.n) * c.n)
            throw UsageFailure("--gram needs n*n element codes (row-major), or use --sweep");
        MatGF g(c.n, c.n);
        for (std::size_t t = 0; t < c.gram.size(); ++t)
            g.at(t / c.n, t % c.n) = f.element(c.gram[t]);
        const auto v = nesting::linear_nesting_classifier(g, f, c.n);
        const bool agree = v.is_alternating == v.is_nesting_exhaustive;
        r.status = agree ? Pass : VerifiedFailure;
        if (c.format == "json") {
            params["gram"] = c.gram;
            r.body = dump({{"params", params},
                           {"isAlternating", v.is_alternating},
                           {"isNestingExhaustive", v.is_nesting_exhaustive},
                           {"agree", agree}});
        } else {
            r.body = "alternating " + yes_no(v.is_alternating) + ", l in perp(l) for every line " +
                     yes_no(v.is_nesting_exhaustive) + "\n";
        }
        return r;
    }

    const std::size_t cells = static_cast<std::size_t>(c.n) * c.n;
    double total = 1;
    for (std::size_t t = 0; t < cells; ++t)
        total *= f.q();
    if (total > static_cast<double>(1u << 24))
        throw UsageFailure("sweep over q^(n*n) matrices is too large");
    const std::size_t count = static_cast<std::size_t>(total);

    std::size_t invertible = 0, alternating = 0, disagreements = 0;
    MatGF g(c.n, c.n);
    for (std::size_t code = 0; code < count; ++code) {
        std::size_t rest = code;
        for (std::size_t t = 0; t < cells; ++t, rest /= f.q())
            g.at(t / c.n, t % c.n) = f.element(static_cast<unsigned>(rest % f.q()));
        if (!ffield::is_invertible(f, g))
            continue;
        ++invertible;
        const auto v = nesting::linear_nesting_classifier(g, f, c.n);
        alternating += v.is_alternating;
        disagreements += v.is_alternating != v.is_nesting_exhaustive;
    }
    r.status = disagreements == 0 ? Pass : VerifiedFailure;
    if (c.format == "json") {
        params["sweep"] = true;
        r.body = dump({{"params", params},
                       {"invertible", invertible},
                       {"alternating", alternating},
                       {"disagreements", disagreements}});
    } else {
        std::ostringstream os;
        os << "invertible " << invertible << ", alternating " << alternating << ", disagreements " << disagreements
           << "\n";
        r.body = os.str();
    }
    return r;
}

// ---- chern -----------------------------------------------------------------

Report chern_verify(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto theta = chern::verify_theta_identities(c.d_max.value_or(12));
    json failures = json::array();
    std::size_t checked = 0;
    for (unsigned i = 1; i <= c.i_max; ++i)
        for (unsigned n = i + 1; n <= c.n_max; ++n) {
            ++checked;
            const auto prod = chern::trunc_mul(chern::ctot_quotient(i, n), chern::ctot_tautological(i, n - i));
            if (!(prod == chern::TruncPoly::one(i, n - i)))
                failures.push_back({{"i", i}, {"n", n}});
        }
    Report r;
    r.status = (theta.ok && failures.empty()) ? Pass : VerifiedFailure;
    if (c.format == "json") {
        json t{{"dMax", theta.d_max}, {"ok", theta.ok}};
        if (theta.failing_d) {
            t["failingD"] = *theta.failing_d;
            t["counterexample"] = theta.counterexample;
        }
        r.body = dump({{"params", {{"dMax", theta.d_max}, {"iMax", c.i_max}, {"nMax", c.n_max}}},
                       {"thetaIdentities", t},
                       {"whitney", {{"checked", checked}, {"ok", failures.empty()}, {"failures", failures}}}});
    } else {
        std::ostringstream os;
        os << "theta identities d <= " << theta.d_max << ": " << (theta.ok ? "ok" : "FAILED");
        if (theta.failing_d)
            os << " at d = " << *theta.failing_d << " (" << theta.counterexample << ")";
        os << "\nwhitney i <= " << c.i_max << ", n <= " << c.n_max << ": " << checked << " cases, "
           << failures.size() << " failures\n";
        r.body = os.str();
    }
    return r;
}

Report chern_certificate(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto chain = chern::smoothness_certificate(c.d_max.value_or(50));
    Report r;
    r.status = chain.pass ? Pass : VerifiedFailure;
    if (c.format == "json") {
        json entries = json::array();
        for (const auto& e : chain.entries)
            entries.push_back({{"d", e.d}, {"gcdDegree", e.gcd_degree()}});
        r.body = dump({{"dMax", chain.d_max}, {"entries", entries}, {"pass", chain.pass}});
    } else {
        std::ostringstream os;
        for (const auto& e : chain.entries)
            os << "d=" << e.d << " gcd degree " << e.gcd_degree() << "\n";
        os << "theta_2 gram determinant "
           << to_string(chern::quadric_gram_determinant(chern::theta(2, 3, 2))) << "\n";
        os << (chain.pass ? "pass" : "FAIL") << "\n";
        r.body = os.str();
    }
    return r;
}

Report chern_obstruction(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto v = chern::factorization_obstruction(c.n, c.i, c.j);
    Report r;
    r.status = v.kind == chern::ObstructionKind::Inconclusive ? VerifiedFailure : Pass;
    if (c.format == "json") {
        json j{{"params", {{"n", c.n}, {"i", c.i}, {"j", c.j}}}, {"kind", chern::to_string(v.kind)}};
        if (v.certificate) {
            j["homogenizationMatches"] = v.homogenization_matches;
            j["certificate"] = {{"dMax", v.certificate->d_max}, {"pass", v.certificate->pass}};
        }
        if (v.conic_gram_determinant)
            j["conicGramDeterminant"] = to_string(*v.conic_gram_determinant);
        if (c.i == 1) {
            j["survivingJs"] = v.surviving_js;
            j["annotation"] = v.annotation;
        }
        r.body = dump(j);
    } else {
        std::ostringstream os;
        os << "n=" << c.n << " i=" << c.i << " j=" << c.j << ": " << chern::to_string(v.kind) << "\n";
        if (v.certificate)
            os << "homogenization matches theta_" << c.n - c.i << " " << yes_no(v.homogenization_matches)
               << ", certificate d <= " << v.certificate->d_max << " " << (v.certificate->pass ? "pass" : "FAIL")
               << "\n";
        if (v.conic_gram_determinant)
            os << "conic gram determinant " << to_string(*v.conic_gram_determinant) << "\n";
        if (c.i == 1) {
            os << "surviving j:";
            for (auto s : v.surviving_js)
                os << " " << s;
            os << "\n";
            if (!v.annotation.empty())
                os << "note: " << v.annotation << "\n";
        }
        r.body = os.str();
    }
    return r;
}

// ---- schw ------------------------------------------------------------------

Report schw_check(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    if (c.m < 1)
        throw UsageFailure("-m must be >= 1");
    const auto cand = candidate_of(c);
    const auto rep = (c.s_first || c.s_last)
                         ? schwz::schwarzenberger_check_range(cand, c.m, c.s_first.value_or(0),
                                                              c.s_last.value_or(static_cast<long>(c.m)))
                         : schwz::schwarzenberger_check(cand, c.m);
    Report r;
    r.status = rep.pass ? Pass : VerifiedFailure;
    if (c.format == "json") {
        json values = json::array();
        for (const auto& v : rep.values)
            values.push_back(to_string(v));
        json j{{"params", {{"poly", c.poly}, {"m", c.m}, {"sFirst", rep.s_first}, {"sLast", rep.s_last}}},
               {"rank", cand.rank},
               {"squarefree", cand.squarefree},
               {"unitCircle", cand.unit_circle},
               {"values", values},
               {"pass", rep.pass}};
        if (auto s = rep.first_failing_s())
            j["firstFailingS"] = *s;
        r.body = dump(j);
    } else {
        std::ostringstream os;
        os << "p(t) = " << cand.poly.str() << ", r = " << cand.rank << ", m = " << c.m << "\n";
        for (std::size_t t = 0; t < rep.values.size(); ++t)
            os << "B(" << rep.s_first + static_cast<long>(t) << "," << c.m << ") = " << to_string(rep.values[t])
               << "\n";
        os << (rep.pass ? "pass" : "FAIL") << "\n";
        r.body = os.str();
    }
    return r;
}

json split_json(const schwz::SplitTable& t)
{
    json entries = json::array();
    for (const auto& e : t.entries) {
        json filters = json::array();
        for (const auto& f : e.filters) {
            json fj{{"factor", std::string(1, f.factor)},
                    {"rank", f.rank},
                    {"m", f.m},
                    {"applied", f.applied},
                    {"pass", f.pass}};
            if (f.failing_s)
                fj["failingS"] = *f.failing_s;
            if (f.failing_value)
                fj["failingValue"] = to_string(*f.failing_value);
            filters.push_back(fj);
        }
        entries.push_back({{"j", e.j},
                           {"pDivisors", e.p_divisors},
                           {"pCoeffs", coeff_array(e.p)},
                           {"qCoeffs", coeff_array(e.q)},
                           {"filterResults", filters},
                           {"survivor", e.survivor},
                           {"annotation", e.annotation}});
    }
    return {{"n", t.n}, {"entries", entries}, {"survivorJs", t.survivor_js()}};
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s)
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

Report schw_classify(const RunConfig& c)
{
    require_format(c, {"text", "json", "csv"});
    const auto t = schwz::classify_chern_splits(c.n);
    Report r;
    if (c.format == "json") {
        r.body = dump(split_json(t));
    } else if (c.format == "csv") {
        struct Row
        {
            std::size_t splits = 0;
            std::size_t survivors = 0;
            std::string annotation;
        };
        std::map<unsigned, Row> rows;
        for (const auto& e : t.entries) {
            auto& row = rows[e.j];
            ++row.splits;
            if (e.survivor) {
                ++row.survivors;
                if (!e.annotation.empty())
                    row.annotation = e.annotation;
            }
        }
        std::ostringstream os;
        os << "n,j,splits,survivors,annotation\n";
        for (const auto& [j, row] : rows)
            os << t.n << ',' << j << ',' << row.splits << ',' << row.survivors << ',' << csv_quote(row.annotation)
               << '\n';
        r.body = os.str();
    } else {
        std::ostringstream os;
        os << "1 + t + ... + t^" << c.n - 1 << ": " << t.entries.size() << " splits\n";
        for (const auto& e : t.entries) {
            os << "j=" << e.j << "  p = " << e.p.str() << "  q = " << e.q.str() << "  "
               << (e.survivor ? "survivor" : "excluded");
            for (const auto& f : e.filters)
                if (f.applied && !f.pass)
                    os << " (" << f.factor << ": B(" << *f.failing_s << "," << f.m
                       << ") = " << to_string(*f.failing_value) << ")";
            os << "\n";
            if (!e.annotation.empty())
                os << "  note: " << e.annotation << "\n";
        }
        r.body = os.str();
    }
    return r;
}

Report schw_trace(const RunConfig& c)
{
    require_format(c, {"text", "json"});
    const auto cand = candidate_of(c);
    const auto rep = schwz::trace_form_identity(cand, c.m);
    Report r;
    r.status = rep.holds ? Pass : VerifiedFailure;
    if (c.format == "json") {
        json traces = json::array(), expected = json::array();
        for (const auto& v : rep.traces)
            traces.push_back(to_string(v));
        for (const auto& v : rep.expected)
            expected.push_back(to_string(v));
        r.body = dump({{"params", {{"poly", c.poly}, {"m", c.m}}},
                       {"traces", traces},
                       {"expected", expected},
                       {"holds", rep.holds},
                       {"aVanishes", rep.a_vanishes}});
    } else {
        std::ostringstream os;
        os << "p(t) = " << cand.poly.str() << ", a = x - x^3 vanishes " << yes_no(rep.a_vanishes) << "\n";
        for (std::size_t t = 0; t < rep.traces.size(); ++t)
            os << "i=" << t << " tr(a b_i) = " << to_string(rep.traces[t]) << ", (i+3)! B(1,i+3) = "
               << to_string(rep.expected[t]) << "\n";
        os << (rep.holds ? "pass" : "FAIL") << "\n";
        r.body = os.str();
    }
    return r;
}

// ---- wiring ----------------------------------------------------------------

void add_field(CLI::App* a, RunConfig& c)
{
    a->add_option("-q", c.q, "field order (prime power)");
    a->add_option("-p", c.p, "field characteristic");
    a->add_option("-k", c.k, "extension degree (with -p)");
    a->add_option("--modulus", c.modulus, "monic modulus coefficients, lowest degree first")->delimiter(',');
}

void add_common(CLI::App* a, RunConfig& c)
{
    a->add_option("--format", c.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    a->add_option("-o,--output", c.output, "write the report to a file");
    a->add_flag("--timing", c.timing, "include elapsed milliseconds");
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    std::function<Report(const RunConfig&)> action;

    CLI::App app{"Nesting maps of finite Grassmannians, Chern-class checks and Schwarzenberger conditions"};
    app.name("grassnest");
    app.require_subcommand(1);

    auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, Report (*fn)(const RunConfig&)) {
        auto* a = group->add_subcommand(name, help);
        a->callback([&action, fn] { action = fn; });
        add_common(a, c);
        return a;
    };

    auto* gr = app.add_subcommand("grassmann", "finite Grassmannians")->require_subcommand(1);
    for (auto* a : {leaf(gr, "count", "number of i-dimensional subspaces of F_q^n", grassmann_count),
                    leaf(gr, "enum", "list Gr(i, F_q^n) in id order", grassmann_enum)}) {
        add_field(a, c);
        a->add_option("-n", c.n, "ambient dimension")->required();
        a->add_option("-i", c.i, "subspace dimension")->required();
    }

    auto* nest = app.add_subcommand("nest", "nesting maps")->require_subcommand(1);
    for (auto* a : {leaf(nest, "match", "maximum nesting matching Gr(i) -> Gr(j)", nest_match),
                    leaf(nest, "hall", "seeded Hall-condition diagnostics (i + j = n)", nest_hall)}) {
        add_field(a, c);
        a->add_option("-n", c.n, "ambient dimension")->required();
        a->add_option("-i", c.i, "left subspace dimension")->required();
        a->add_option("-j", c.j, "right subspace dimension")->required();
        if (a->get_name() == "match")
            a->add_option("--export", c.export_path, "tab-separated leftId/rightId pairs");
        else {
            a->add_option("--samples", c.samples, "number of random subsets");
            a->add_option("--seed", c.seed, "random seed");
        }
    }
    {
        auto* a = leaf(nest, "perp", "l -> perp(l) for the standard alternating form", nest_perp);
        add_field(a, c);
        a->add_option("-n", c.n, "even ambient dimension")->required();
        a->add_option("--export", c.export_path, "tab-separated leftId/rightId pairs");
    }
    {
        auto* a = leaf(nest, "linear-check", "alternating test vs l in perp(l) for every line", nest_linear_check);
        add_field(a, c);
        a->add_option("-n", c.n, "ambient dimension")->required();
        a->add_option("--gram", c.gram, "row-major element codes")->delimiter(',');
        a->add_flag("--sweep", c.sweep, "every invertible n x n matrix");
    }

    auto* ch = app.add_subcommand("chern", "truncated Chern-class calculus")->require_subcommand(1);
    {
        auto* a = leaf(ch, "verify", "theta identities and the Whitney identity", chern_verify);
        a->add_option("--d-max", c.d_max, "largest theta degree (default 12)");
        a->add_option("--i-max", c.i_max, "largest subspace dimension for Whitney (default 3)");
        a->add_option("--n-max", c.n_max, "largest ambient dimension for Whitney (default 9)");
    }
    {
        auto* a = leaf(ch, "certificate", "boundary gcd chain for theta_d", chern_certificate);
        a->add_option("--d-max", c.d_max, "largest degree in the chain (default 50)");
    }
    {
        auto* a = leaf(ch, "obstruction", "factorization obstruction for (n, i, j)", chern_obstruction);
        a->add_option("-n", c.n, "ambient dimension")->required();
        a->add_option("-i", c.i, "subspace dimension")->required();
        a->add_option("-j", c.j, "target dimension")->required();
    }

    auto* sw = app.add_subcommand("schw", "Schwarzenberger conditions")->require_subcommand(1);
    {
        auto* a = leaf(sw, "check", "integrality of B(s,m)", schw_check);
        a->add_option("--poly", c.poly, "coefficients of p(t), lowest degree first")->delimiter(',')->required();
        a->add_option("-m", c.m, "rank")->required();
        a->add_option("--s-first", c.s_first, "first twist s (default 0)");
        a->add_option("--s-last", c.s_last, "last twist s (default m)");
    }
    {
        auto* a = leaf(sw, "classify", "cyclotomic splits of 1 + t + ... + t^(n-1)", schw_classify);
        a->add_option("-n", c.n, "ambient dimension")->required();
    }
    {
        auto* a = leaf(sw, "trace", "trace-form identity in Q[x]/(P)", schw_trace);
        a->add_option("--poly", c.poly, "coefficients of p(t), lowest degree first")->delimiter(',')->required();
        a->add_option("-m", c.m, "rank")->required();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Pass : UsageError;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        Report r = action(c);
        if (c.timing) {
            const auto ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
            if (c.format == "json") {
                auto j = json::parse(r.body);
                j["elapsedMs"] = ms;
                r.body = dump(j);
            } else if (c.format == "text") {
                r.body += "elapsed " + std::to_string(ms) + " ms\n";
            }
        }
        if (c.output.empty())
            out << r.body;
        else
            write_file(c.output, r.body);
        return r.status;
    } catch (const UsageFailure& e) {
        err << "grassnest: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "grassnest: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "grassnest: " << e.what() << "\n";
    }
    return UsageError;
}

} // namespace grassnest::cli
