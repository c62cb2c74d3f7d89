#include "grassnest/chern.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "grassnest/error.hpp"
#include "grassnest/schwz.hpp"

namespace grassnest::chern
{

namespace
{

void require_same_ring(const TruncPoly& a, const TruncPoly& b)
{
    if (a.num_vars() != b.num_vars() || a.trunc_degree() != b.trunc_degree())
        throw Error(ErrorCode::DimensionMismatch, "truncated polynomials live in different rings");
}

// Calls visit(e) for every exponent vector of the given total degree.
void for_each_exponent(unsigned num_vars, unsigned degree, const std::function<void(const Exponent&)>& visit)
{
    if (num_vars == 0) {
        if (degree == 0)
            visit(Exponent{});
        return;
    }
    Exponent e(num_vars, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
        if (pos + 1 == num_vars) {
            e[pos] = static_cast<std::uint16_t>(left);
            visit(e);
            return;
        }
        for (unsigned v = left + 1; v-- > 0;) {
            e[pos] = static_cast<std::uint16_t>(v);
            rec(pos + 1, left - v);
        }
    };
    rec(0, degree);
}

std::string first_difference(const TruncPoly& a, const TruncPoly& b)
{
    const auto diff = a - b;
    if (diff.is_zero())
        return {};
    const auto& [e, c] = *diff.terms().begin();
    TruncPoly term(diff.num_vars(), diff.trunc_degree());
    term.add_term(e, c);
    return "lhs - rhs contains " + term.str();
}

BigRational determinant(std::vector<std::vector<BigRational>> m)
{
    const std::size_t n = m.size();
    BigRational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0)
                continue;
            const BigRational f = m[r][c] / m[c][c];
            for (std::size_t t = c; t < n; ++t)
                m[r][t] -= f * m[c][t];
        }
    }
    return det;
}

} // namespace

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const
{
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db)
        return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

TruncPoly TruncPoly::constant(unsigned num_vars, unsigned trunc_degree, const BigInt& value)
{
    TruncPoly p(num_vars, trunc_degree);
    p.add_term(Exponent(num_vars, 0), value);
    return p;
}

TruncPoly TruncPoly::variable(unsigned num_vars, unsigned trunc_degree, unsigned index)
{
    if (index >= num_vars)
        throw Error(ErrorCode::PreconditionViolated, "variable index out of range");
    TruncPoly p(num_vars, trunc_degree);
    Exponent e(num_vars, 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

BigInt TruncPoly::coefficient(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void TruncPoly::add_term(const Exponent& e, const BigInt& c)
{
    if (e.size() != vars_)
        throw Error(ErrorCode::DimensionMismatch, "exponent length differs from the number of variables");
    if (c == 0 || total_degree(e) > deg_)
        return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

TruncPoly TruncPoly::derivative(unsigned index) const
{
    TruncPoly out(vars_, deg_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0)
            continue;
        Exponent d = e;
        --d[index];
        out.add_term(d, c * e[index]);
    }
    return out;
}

TruncPoly TruncPoly::homogeneous_part(unsigned d) const
{
    TruncPoly out(vars_, deg_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == d)
            out.add_term(e, c);
    return out;
}

TruncPoly TruncPoly::retruncated(unsigned trunc_degree) const
{
    TruncPoly out(vars_, trunc_degree);
    for (const auto& [e, c] : terms_)
        out.add_term(e, c);
    return out;
}

std::string TruncPoly::str(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt v = c;
        const bool neg = v < 0;
        if (neg)
            v = -v;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        const bool constant_term = total_degree(e) == 0;
        bool wrote = false;
        if (v != 1 || constant_term) {
            os << v;
            wrote = true;
        }
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0)
                continue;
            if (wrote)
                os << '*';
            os << (k < names.size() ? names[k] : "x" + std::to_string(k + 1));
            if (e[k] > 1)
                os << '^' << e[k];
            wrote = true;
        }
    }
    return os.str();
}

TruncPoly operator+(const TruncPoly& a, const TruncPoly& b)
{
    require_same_ring(a, b);
    TruncPoly out = a;
    for (const auto& [e, c] : b.terms_)
        out.add_term(e, c);
    return out;
}

TruncPoly operator-(const TruncPoly& a, const TruncPoly& b) { return a + b * BigInt(-1); }

TruncPoly operator*(const TruncPoly& a, const BigInt& s)
{
    TruncPoly out(a.vars_, a.deg_);
    for (const auto& [e, c] : a.terms_)
        out.add_term(e, c * s);
    return out;
}

TruncPoly trunc_mul(const TruncPoly& a, const TruncPoly& b)
{
    require_same_ring(a, b);
    TruncPoly out(a.num_vars(), a.trunc_degree());
    Exponent e(a.num_vars());
    for (const auto& [ea, ca] : a.terms()) {
        const unsigned da = total_degree(ea);
        for (const auto& [eb, cb] : b.terms()) {
            if (da + total_degree(eb) > a.trunc_degree())
                continue;
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

TruncPoly trunc_inverse(const TruncPoly& a)
{
    const Exponent zero(a.num_vars(), 0);
    if (a.coefficient(zero) != 1)
        throw Error(ErrorCode::NotAUnit, "constant term must be 1");
    // a = 1 - u with u in the maximal ideal, so a^{-1} = sum_k u^k and u^{D+1} = 0.
    const TruncPoly u = TruncPoly::one(a.num_vars(), a.trunc_degree()) - a;
    TruncPoly acc = TruncPoly::one(a.num_vars(), a.trunc_degree());
    TruncPoly power = acc;
    for (unsigned k = 1; k <= a.trunc_degree(); ++k) {
        power = trunc_mul(power, u);
        if (power.is_zero())
            break;
        acc = acc + power;
    }
    return acc;
}

TruncPoly elementary_sigma(unsigned r, unsigned num_vars, unsigned trunc_degree)
{
    if (r > num_vars)
        throw Error(ErrorCode::PreconditionViolated, "sigma_r needs r <= number of variables");
    TruncPoly out(num_vars, trunc_degree);
    for_each_exponent(num_vars, r, [&](const Exponent& e) {
        if (std::all_of(e.begin(), e.end(), [](std::uint16_t x) { return x <= 1; }))
            out.add_term(e, 1);
    });
    return out;
}

TruncPoly theta(unsigned d, unsigned num_vars, unsigned trunc_degree)
{
    TruncPoly out(num_vars, trunc_degree);
    for_each_exponent(num_vars, d, [&](const Exponent& e) { out.add_term(e, 1); });
    return out;
}

TruncPoly ctot_tautological(unsigned i, unsigned trunc_degree)
{
    if (i == 0)
        throw Error(ErrorCode::PreconditionViolated, "i must be >= 1");
    TruncPoly out(i, trunc_degree);
    for (unsigned r = 0; r <= i; ++r)
        out = out + elementary_sigma(r, i, trunc_degree) * BigInt(r % 2 == 0 ? 1 : -1);
    return out;
}

TruncPoly ctot_quotient(unsigned i, unsigned n)
{
    if (i == 0 || i >= n)
        throw Error(ErrorCode::PreconditionViolated, "need 1 <= i <= n - 1");
    const unsigned top = n - i;
    TruncPoly out(i, top);
    for (unsigned d = 0; d <= top; ++d)
        out = out + theta(d, i, top);
    return out;
}

TruncPoly homogenize(const TruncPoly& p, unsigned degree)
{
    TruncPoly out(p.num_vars() + 1, degree);
    for (const auto& [e, c] : p.terms()) {
        const unsigned k = total_degree(e);
        if (k > degree)
            throw Error(ErrorCode::PreconditionViolated, "term degree exceeds homogenization degree");
        Exponent h;
        h.reserve(e.size() + 1);
        h.push_back(static_cast<std::uint16_t>(degree - k));
        h.insert(h.end(), e.begin(), e.end());
        out.add_term(h, c);
    }
    return out;
}

TruncPoly embed(const TruncPoly& p, unsigned num_vars, const std::vector<unsigned>& positions)
{
    if (positions.size() != p.num_vars())
        throw Error(ErrorCode::DimensionMismatch, "one position per variable is required");
    TruncPoly out(num_vars, p.trunc_degree());
    for (const auto& [e, c] : p.terms()) {
        Exponent f(num_vars, 0);
        for (std::size_t k = 0; k < e.size(); ++k)
            f.at(positions[k]) = e[k];
        out.add_term(f, c);
    }
    return out;
}

UniPolyZ restrict_to_line(const TruncPoly& p, unsigned free_var, const std::vector<BigInt>& values)
{
    if (values.size() != p.num_vars() || free_var >= p.num_vars())
        throw Error(ErrorCode::DimensionMismatch, "one value per variable is required");
    std::vector<BigInt> out;
    for (const auto& [e, c] : p.terms()) {
        BigInt v = c;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != free_var)
                v *= boost::multiprecision::pow(values[k], e[k]);
        const std::size_t deg = e[free_var];
        if (out.size() <= deg)
            out.resize(deg + 1, BigInt(0));
        out[deg] += v;
    }
    return UniPolyZ(std::move(out));
}

ThetaIdentityReport verify_theta_identities(unsigned d_max)
{
    if (d_max < 2)
        throw Error(ErrorCode::PreconditionViolated, "d_max must be >= 2");
    ThetaIdentityReport rep;
    rep.d_max = d_max;
    const TruncPoly x = TruncPoly::variable(3, d_max, 0);
    for (unsigned d = 2; d <= d_max; ++d) {
        const TruncPoly td = theta(d, 3, d_max);
        const TruncPoly tprev = theta(d - 1, 3, d_max);

        const TruncPoly recursion = trunc_mul(x, tprev) + embed(theta(d, 2, d_max), 3, {1, 2});
        if (!(td == recursion)) {
            rep.ok = false;
            rep.failing_d = d;
            rep.counterexample = "recursion: " + first_difference(td, recursion);
            return rep;
        }

        const TruncPoly euler = td.derivative(0) + td.derivative(1) + td.derivative(2);
        const TruncPoly scaled = tprev * BigInt(d + 2);
        if (!(euler == scaled)) {
            rep.ok = false;
            rep.failing_d = d;
            rep.counterexample = "derivative: " + first_difference(euler, scaled);
            return rep;
        }
    }
    return rep;
}

CertificateChain smoothness_certificate(unsigned d_max)
{
    if (d_max < 2)
        throw Error(ErrorCode::PreconditionViolated, "d_max must be >= 2");
    CertificateChain chain;
    chain.d_max = d_max;
    chain.pass = true;
    // Boundary point (0 : 1 : z).
    const std::vector<BigInt> point{0, 1, 0};
    UniPolyQ low = to_rational(restrict_to_line(theta(1, 3, 1), 2, point));
    for (unsigned d = 2; d <= d_max; ++d) {
        CertificateEntry e;
        e.d = d;
        e.boundary_high = to_rational(restrict_to_line(theta(d, 3, d), 2, point));
        e.boundary_low = low;
        e.gcd = gcd(e.boundary_high, e.boundary_low);
        if (e.gcd.degree() != 0)
            chain.pass = false;
        low = e.boundary_high;
        chain.entries.push_back(std::move(e));
    }
    return chain;
}

BigRational quadric_gram_determinant(const TruncPoly& quadratic)
{
    const unsigned n = quadratic.num_vars();
    std::vector<std::vector<BigRational>> g(n, std::vector<BigRational>(n, BigRational(0)));
    for (const auto& [e, c] : quadratic.terms()) {
        if (total_degree(e) != 2)
            throw Error(ErrorCode::PreconditionViolated, "quadratic form must be homogeneous of degree 2");
        std::vector<unsigned> idx;
        for (unsigned k = 0; k < n; ++k)
            for (unsigned t = 0; t < e[k]; ++t)
                idx.push_back(k);
        if (idx[0] == idx[1]) {
            g[idx[0]][idx[0]] = BigRational(c);
        } else {
            g[idx[0]][idx[1]] = BigRational(c, 2);
            g[idx[1]][idx[0]] = BigRational(c, 2);
        }
    }
    return determinant(std::move(g));
}

std::string to_string(ObstructionKind kind)
{
    switch (kind) {
    case ObstructionKind::NoFactorization: return "NoFactorization";
    case ObstructionKind::Inconclusive: return "Inconclusive";
    case ObstructionKind::ExcludedAtChernLevel: return "ExcludedAtChernLevel";
    case ObstructionKind::SurvivesChernLevel: return "SurvivesChernLevel";
    }
    return "Unknown";
}

ObstructionVerdict factorization_obstruction(unsigned n, unsigned i, unsigned j)
{
    if (!(1 <= i && i < j && j + 1 <= n))
        throw Error(ErrorCode::PreconditionViolated, "need 1 <= i < j <= n - 1");
    ObstructionVerdict v;
    v.n = n;
    v.i = i;
    v.j = j;

    if (i == 1) {
        const auto table = schwz::classify_chern_splits(n);
        v.surviving_js = table.survivor_js();
        v.kind = ObstructionKind::ExcludedAtChernLevel;
        for (auto idx : table.survivors)
            if (table.entries[idx].j == j) {
                v.kind = ObstructionKind::SurvivesChernLevel;
                v.annotation = table.entries[idx].annotation;
            }
        return v;
    }

    const unsigned d = n - i;
    v.homogenization_matches = homogenize(ctot_quotient(i, n), d) == theta(d, i + 1, d);
    v.certificate = smoothness_certificate(d);
    bool ok = v.homogenization_matches && v.certificate->pass;
    if (d == 2) {
        v.conic_gram_determinant = quadric_gram_determinant(theta(2, i + 1, 2));
        ok = ok && *v.conic_gram_determinant != 0;
    }
    v.kind = ok ? ObstructionKind::NoFactorization : ObstructionKind::Inconclusive;
    return v;
}

} // namespace grassnest::chern
