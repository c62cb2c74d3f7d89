#include "grassnest/schwz.hpp"

#include <algorithm>
#include <map>

#include "grassnest/error.hpp"

namespace grassnest::schwz
{

namespace
{

unsigned euler_phi(unsigned d)
{
    unsigned result = d;
    unsigned rest = d;
    for (unsigned p = 2; p * p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        while (rest % p == 0)
            rest /= p;
        result -= result / p;
    }
    if (rest > 1)
        result -= result / rest;
    return result;
}

// Monic Phi_d by dividing t^d - 1 by Phi_e for the proper divisors e of d.
UniPolyZ monic_cyclotomic(unsigned d, std::map<unsigned, UniPolyZ>& memo)
{
    if (auto it = memo.find(d); it != memo.end())
        return it->second;
    UniPolyZ acc = UniPolyZ::monomial(BigInt(1), d) - UniPolyZ::constant(BigInt(1));
    for (unsigned e = 1; e < d; ++e) {
        if (d % e != 0)
            continue;
        auto quotient = acc.exact_quotient(monic_cyclotomic(e, memo));
        if (!quotient)
            throw Error(ErrorCode::PreconditionViolated, "cyclotomic division was not exact");
        acc = std::move(*quotient);
    }
    memo.emplace(d, acc);
    return acc;
}

// Falling product prod_{a=0}^{m-1} ((s - a) - w) as a polynomial in w.
UniPolyZ falling_in_w(long s, unsigned m)
{
    UniPolyZ acc = UniPolyZ::constant(BigInt(1));
    for (unsigned a = 0; a < m; ++a)
        acc = acc * UniPolyZ{BigInt(s - static_cast<long>(a)), BigInt(-1)};
    return acc;
}

// Square matrix of rationals, row-major.
struct QMatrix
{
    std::size_t n = 0;
    std::vector<BigRational> e;

    explicit QMatrix(std::size_t size) : n(size), e(size * size, BigRational(0)) {}
    BigRational& at(std::size_t r, std::size_t c) { return e[r * n + c]; }
    const BigRational& at(std::size_t r, std::size_t c) const { return e[r * n + c]; }

    QMatrix operator*(const QMatrix& o) const
    {
        QMatrix out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                if (at(r, k) == 0)
                    continue;
                for (std::size_t c = 0; c < n; ++c)
                    out.at(r, c) += at(r, k) * o.at(k, c);
            }
        return out;
    }

    BigRational trace() const
    {
        BigRational t = 0;
        for (std::size_t k = 0; k < n; ++k)
            t += at(k, k);
        return t;
    }
};

// Companion matrix of a monic polynomial (action of x on 1, x, ..., x^{r-1}).
QMatrix companion(const UniPolyQ& monic)
{
    const auto r = static_cast<std::size_t>(monic.degree());
    QMatrix c(r);
    for (std::size_t k = 0; k + 1 < r; ++k)
        c.at(k + 1, k) = 1;
    for (std::size_t k = 0; k < r; ++k)
        c.at(k, r - 1) = -monic.coeff(k);
    return c;
}

QMatrix evaluate_at(const UniPolyQ& f, const QMatrix& c)
{
    QMatrix acc(c.n);
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
        acc = acc * c;
        for (std::size_t k = 0; k < c.n; ++k)
            acc.at(k, k) += *it;
    }
    return acc;
}

} // namespace

ChernCandidate ChernCandidate::make(UniPolyZ poly)
{
    if (poly.coeff(0) != 1)
        throw Error(ErrorCode::PreconditionViolated, "Chern polynomial must have constant term 1");
    ChernCandidate c;
    c.rank = static_cast<unsigned>(poly.degree());
    c.squarefree = is_squarefree(poly);
    c.unit_circle = is_unit_circle(poly);
    c.poly = std::move(poly);
    return c;
}

PowerSums power_sums(const ChernCandidate& p, unsigned max_order)
{
    const unsigned r = p.rank;
    std::vector<BigInt> e(r + 1);
    for (unsigned k = 0; k <= r; ++k)
        e[k] = (k % 2 == 0) ? p.poly.coeff(k) : BigInt(-p.poly.coeff(k));
    PowerSums ps;
    ps.values.assign(max_order + 1, BigInt(0));
    ps.values[0] = r;
    for (unsigned m = 1; m <= max_order; ++m) {
        BigInt acc = 0;
        for (unsigned k = 1; k <= std::min(m - 1, r); ++k) {
            const BigInt term = e[k] * ps.values[m - k];
            acc += (k % 2 == 1) ? term : BigInt(-term);
        }
        if (m <= r) {
            const BigInt term = BigInt(m) * e[m];
            acc += (m % 2 == 1) ? term : BigInt(-term);
        }
        ps.values[m] = acc;
    }
    return ps;
}

BigRational binom_sum_B(const ChernCandidate& p, long s, unsigned m)
{
    const auto poly = falling_in_w(s, m);
    const auto ps = power_sums(p, m);
    BigInt total = 0;
    for (std::size_t k = 0; k < poly.coeffs().size(); ++k)
        total += poly.coeffs()[k] * ps[k];
    return BigRational(total, factorial(m));
}

std::optional<long> SchwzReport::first_failing_s() const
{
    for (std::size_t t = 0; t < values.size(); ++t)
        if (!is_integral(values[t]))
            return s_first + static_cast<long>(t);
    return std::nullopt;
}

SchwzReport schwarzenberger_check_range(const ChernCandidate& p, unsigned m, long s_first, long s_last)
{
    if (m == 0)
        throw Error(ErrorCode::PreconditionViolated, "m must be >= 1");
    SchwzReport rep;
    rep.candidate = p;
    rep.m = m;
    rep.s_first = s_first;
    rep.s_last = s_last;
    rep.pass = true;
    for (long s = s_first; s <= s_last; ++s) {
        rep.values.push_back(binom_sum_B(p, s, m));
        if (!is_integral(rep.values.back()))
            rep.pass = false;
    }
    return rep;
}

SchwzReport schwarzenberger_check(const ChernCandidate& p, unsigned m)
{
    return schwarzenberger_check_range(p, m, 0, static_cast<long>(m));
}

bool pascal_recurrence_check(const ChernCandidate& p, long s_first, long s_last, unsigned m_first, unsigned m_last)
{
    if (s_first > s_last || m_first > m_last)
        throw Error(ErrorCode::PreconditionViolated, "empty range");
    for (unsigned m = std::max(m_first, 1u); m <= m_last; ++m)
        for (long s = s_first; s <= s_last; ++s)
            if (binom_sum_B(p, s, m) - binom_sum_B(p, s - 1, m) != binom_sum_B(p, s - 1, m - 1))
                return false;
    return true;
}

bool lemma_b_zero_check(const ChernCandidate& p, unsigned m)
{
    if (!p.squarefree)
        throw Error(ErrorCode::HypothesisViolated, "Chern roots are repeated");
    if (!p.unit_circle)
        throw Error(ErrorCode::HypothesisViolated, "Chern roots are not all on the unit circle");
    if (p.rank < 1 || p.rank + 2 > m)
        throw Error(ErrorCode::HypothesisViolated, "need 1 <= r <= m - 2");
    for (long s = 1; s + 2 <= static_cast<long>(m); ++s)
        if (binom_sum_B(p, s, m) != 0)
            return false;
    for (unsigned k = 3; k <= m; ++k)
        if (binom_sum_B(p, 1, k) != 0)
            return false;
    return true;
}

TraceIdentityReport trace_form_identity(const ChernCandidate& p, unsigned m)
{
    if (!p.squarefree)
        throw Error(ErrorCode::NotSquarefree, "the quotient algebra is not a product of fields");
    if (m < 3)
        throw Error(ErrorCode::PreconditionViolated, "m must be >= 3");
    // P(x) = x^r p(1/x) is monic with roots w_i.
    const unsigned r = p.rank;
    std::vector<BigRational> pc(r + 1);
    for (unsigned k = 0; k <= r; ++k)
        pc[k] = BigRational(p.poly.coeff(r - k));
    const UniPolyQ big_p(std::move(pc));

    TraceIdentityReport rep;
    const UniPolyQ a = UniPolyQ{BigRational(0), BigRational(1), BigRational(0), BigRational(-1)}; // x - x^3
    rep.a_vanishes = r == 0 || a.divmod(big_p)->second.is_zero();

    const QMatrix c = r > 0 ? companion(big_p) : QMatrix(0);
    UniPolyQ b = UniPolyQ::constant(BigRational(1));
    rep.holds = true;
    for (unsigned i = 0; i + 3 <= m; ++i) {
        if (i > 0)
            b = b * UniPolyQ{BigRational(-static_cast<long>(i) - 1), BigRational(-1)};
        const UniPolyQ ab = a * b;
        const BigRational tr = r > 0 ? evaluate_at(ab, c).trace() : BigRational(0);
        const BigRational rhs = BigRational(factorial(i + 3)) * binom_sum_B(p, 1, i + 3);
        rep.traces.push_back(tr);
        rep.expected.push_back(rhs);
        if (tr != rhs)
            rep.holds = false;
    }
    return rep;
}

UniPolyZ cyclotomic(unsigned d)
{
    if (d == 0)
        throw Error(ErrorCode::PreconditionViolated, "cyclotomic index must be >= 1");
    std::map<unsigned, UniPolyZ> memo;
    auto phi = monic_cyclotomic(d, memo);
    if (phi.coeff(0) == -1)
        phi = -phi;
    return phi;
}

std::vector<CyclotomicFactor> cyclotomic_split(unsigned n)
{
    if (n < 2)
        throw Error(ErrorCode::PreconditionViolated, "n must be >= 2");
    std::vector<CyclotomicFactor> out;
    for (unsigned d = 2; d <= n; ++d)
        if (n % d == 0)
            out.push_back({d, cyclotomic(d)});
    return out;
}

UniPolyZ geometric_sum(unsigned n) { return UniPolyZ(std::vector<BigInt>(n, BigInt(1))); }

bool is_unit_circle(const UniPolyZ& p)
{
    if (p.is_zero())
        return false;
    if (p.coeff(0) != 1 && p.coeff(0) != -1)
        return false;
    UniPolyZ rest = p;
    const long n = p.degree();
    const long bound = 2 * n * n + 2;
    for (long d = 1; d <= bound && rest.degree() > 0; ++d) {
        if (static_cast<long>(euler_phi(static_cast<unsigned>(d))) > rest.degree())
            continue;
        const auto phi = cyclotomic(static_cast<unsigned>(d));
        while (auto quotient = rest.exact_quotient(phi))
            rest = std::move(*quotient);
    }
    return rest.degree() == 0;
}

bool is_squarefree(const UniPolyZ& p)
{
    if (p.degree() <= 0)
        return true;
    const auto q = to_rational(p);
    return gcd(q, q.derivative()).degree() == 0;
}

std::vector<unsigned> SplitTable::survivor_js() const
{
    std::vector<unsigned> js;
    for (auto idx : survivors)
        js.push_back(entries[idx].j);
    return js;
}

SplitTable classify_chern_splits(unsigned n)
{
    if (n < 3)
        throw Error(ErrorCode::PreconditionViolated, "n must be >= 3");
    const auto factors = cyclotomic_split(n);
    const auto target = geometric_sum(n);
    const unsigned m = n - 1;
    const std::size_t count = factors.size();

    struct Keyed
    {
        unsigned mask;
        SplitEntry entry;
    };
    std::vector<Keyed> rows;
    for (unsigned mask = 1; count > 0 && mask + 1 < (1u << count); ++mask) {
        SplitEntry e;
        e.p = UniPolyZ::constant(BigInt(1));
        e.q = UniPolyZ::constant(BigInt(1));
        for (std::size_t t = 0; t < count; ++t) {
            if (mask & (1u << t)) {
                e.p = e.p * factors[t].poly;
                e.p_divisors.push_back(factors[t].d);
            } else {
                e.q = e.q * factors[t].poly;
            }
        }
        if (!(e.p * e.q == target))
            throw Error(ErrorCode::PreconditionViolated, "split does not multiply back to the geometric sum");
        e.j = n - static_cast<unsigned>(e.p.degree());

        e.survivor = true;
        for (char which : {'p', 'q'}) {
            const UniPolyZ& poly = which == 'p' ? e.p : e.q;
            FilterResult f;
            f.factor = which;
            f.rank = static_cast<unsigned>(poly.degree());
            f.m = m;
            f.applied = f.rank >= 1 && f.rank + 2 <= m;
            if (f.applied) {
                const auto rep = schwarzenberger_check(ChernCandidate::make(poly), m);
                f.pass = rep.pass;
                if (auto s = rep.first_failing_s()) {
                    f.failing_s = *s;
                    f.failing_value = rep.values[static_cast<std::size_t>(*s - rep.s_first)];
                }
            }
            if (!f.pass)
                e.survivor = false;
            e.filters.push_back(std::move(f));
        }
        if (e.survivor && e.j == 2)
            e.annotation = sheaf_annotation;
        rows.push_back({mask, std::move(e)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Keyed& a, const Keyed& b) {
        return a.entry.j != b.entry.j ? a.entry.j < b.entry.j : a.mask < b.mask;
    });

    SplitTable table;
    table.n = n;
    for (auto& row : rows) {
        if (row.entry.survivor)
            table.survivors.push_back(table.entries.size());
        table.entries.push_back(std::move(row.entry));
    }
    return table;
}

} // namespace grassnest::schwz
