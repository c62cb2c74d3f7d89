#include "grassnest/ffield.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "grassnest/error.hpp"

namespace grassnest::ffield
{

namespace
{

const std::map<unsigned, std::vector<unsigned>>& builtin_moduli()
{
    static const std::map<unsigned, std::vector<unsigned>> table = {
        {4, {1, 1, 1}},
        {8, {1, 1, 0, 1}},
        {9, {1, 0, 1}},
        {16, {1, 1, 0, 0, 1}},
        {25, {2, 0, 1}},
        {27, {1, 2, 0, 1}},
        {32, {1, 0, 1, 0, 0, 1}},
        {49, {1, 0, 1}},
        {64, {1, 1, 0, 0, 0, 0, 1}},
    };
    return table;
}

unsigned ipow(unsigned base, unsigned exp)
{
    unsigned r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

// Remainder of a (lowest degree first) modulo a monic polynomial over GF(p).
std::vector<unsigned> poly_mod(std::vector<unsigned> a, std::span<const unsigned> monic, unsigned p)
{
    const std::size_t dm = monic.size() - 1;
    for (std::size_t d = a.size(); d-- > dm;) {
        const unsigned f = a[d] % p;
        if (f == 0)
            continue;
        for (std::size_t t = 0; t <= dm; ++t)
            a[d - dm + t] = (a[d - dm + t] + (p - f) * monic[t]) % p;
    }
    a.resize(std::min(a.size(), dm));
    return a;
}

} // namespace

bool is_prime(unsigned n) noexcept
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_irreducible_mod_p(std::span<const unsigned> poly, unsigned p)
{
    const std::size_t k = poly.size() - 1;
    if (k == 0)
        return false;
    if (k == 1)
        return true;
    // Try every monic divisor of degree 1..k/2.
    for (std::size_t d = 1; d <= k / 2; ++d) {
        const unsigned count = ipow(p, static_cast<unsigned>(d));
        for (unsigned code = 0; code < count; ++code) {
            std::vector<unsigned> g(d + 1);
            unsigned c = code;
            for (std::size_t t = 0; t < d; ++t) {
                g[t] = c % p;
                c /= p;
            }
            g[d] = 1;
            auto r = poly_mod(std::vector<unsigned>(poly.begin(), poly.end()), g, p);
            if (std::all_of(r.begin(), r.end(), [](unsigned v) { return v == 0; }))
                return false;
        }
    }
    return true;
}

struct FieldSpec::Tables
{
    unsigned p = 0;
    unsigned k = 0;
    unsigned q = 0;
    std::vector<unsigned> modulus;
    std::vector<std::vector<unsigned>> decoded;
    std::vector<std::uint16_t> add;
    std::vector<std::uint16_t> mul;
    std::vector<std::uint16_t> neg;
    std::vector<std::uint16_t> inv;

    unsigned encode(std::span<const unsigned> c) const
    {
        unsigned code = 0;
        for (unsigned i = 0; i < k; ++i)
            code = code * p + (i < c.size() ? c[i] % p : 0);
        return code;
    }
};

FieldSpec FieldSpec::make(unsigned p, unsigned k, std::optional<std::vector<unsigned>> modulus)
{
    if (!is_prime(p))
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (k == 0)
        throw Error(ErrorCode::PreconditionViolated, "extension degree must be >= 1");
    unsigned q = 1;
    for (unsigned t = 0; t < k; ++t) {
        q *= p;
        if (q > max_order())
            throw Error(ErrorCode::UnsupportedField,
                        "field order exceeds " + std::to_string(max_order()));
    }

    std::vector<unsigned> mod;
    if (modulus) {
        mod = *modulus;
        if (mod.size() != k + 1)
            throw Error(ErrorCode::BadModulus, "modulus must have degree " + std::to_string(k));
        if (mod.back() != 1)
            throw Error(ErrorCode::BadModulus, "modulus must be monic");
        if (std::any_of(mod.begin(), mod.end(), [p](unsigned c) { return c >= p; }))
            throw Error(ErrorCode::BadModulus, "modulus coefficients must lie in [0, p)");
        if (!is_irreducible_mod_p(mod, p))
            throw Error(ErrorCode::BadModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    } else if (k == 1) {
        mod = {0, 1};
    } else {
        auto it = builtin_moduli().find(q);
        if (it == builtin_moduli().end())
            throw Error(ErrorCode::BadModulus, "no built-in modulus for q = " + std::to_string(q));
        mod = it->second;
    }

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->k = k;
    t->q = q;
    t->modulus = mod;
    t->decoded.resize(q);
    for (unsigned code = 0; code < q; ++code) {
        std::vector<unsigned> c(k);
        unsigned v = code;
        for (unsigned i = k; i-- > 0;) {
            c[i] = v % p;
            v /= p;
        }
        t->decoded[code] = std::move(c);
    }

    t->add.resize(std::size_t(q) * q);
    t->mul.resize(std::size_t(q) * q);
    t->neg.resize(q);
    t->inv.assign(q, 0);
    for (unsigned a = 0; a < q; ++a) {
        const auto& ca = t->decoded[a];
        std::vector<unsigned> n(k);
        for (unsigned i = 0; i < k; ++i)
            n[i] = (p - ca[i]) % p;
        t->neg[a] = static_cast<std::uint16_t>(t->encode(n));
        for (unsigned b = 0; b < q; ++b) {
            const auto& cb = t->decoded[b];
            std::vector<unsigned> s(k);
            for (unsigned i = 0; i < k; ++i)
                s[i] = (ca[i] + cb[i]) % p;
            t->add[std::size_t(a) * q + b] = static_cast<std::uint16_t>(t->encode(s));

            std::vector<unsigned> prod(2 * k - 1, 0);
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j)
                    prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            auto red = k == 1 ? prod : poly_mod(std::move(prod), mod, p);
            t->mul[std::size_t(a) * q + b] = static_cast<std::uint16_t>(t->encode(red));
        }
    }
    const unsigned one = t->encode(std::vector<unsigned>{1});
    for (unsigned a = 1; a < q; ++a)
        for (unsigned b = 1; b < q; ++b)
            if (t->mul[std::size_t(a) * q + b] == one) {
                t->inv[a] = static_cast<std::uint16_t>(b);
                break;
            }
    return FieldSpec(std::move(t));
}

FieldSpec FieldSpec::of_order(unsigned q)
{
    if (q < 2)
        throw Error(ErrorCode::NotPrime, "field order must be a prime power >= 2");
    unsigned p = 2;
    while (q % p != 0)
        ++p;
    unsigned k = 0;
    unsigned rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1)
        throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    return make(p, k);
}

unsigned FieldSpec::p() const noexcept { return t_->p; }
unsigned FieldSpec::k() const noexcept { return t_->k; }
unsigned FieldSpec::q() const noexcept { return t_->q; }
const std::vector<unsigned>& FieldSpec::modulus() const noexcept { return t_->modulus; }

Ffe FieldSpec::one() const noexcept { return Ffe(static_cast<std::uint16_t>(ipow(t_->p, t_->k - 1))); }

Ffe FieldSpec::element(unsigned code) const
{
    if (code >= t_->q)
        throw Error(ErrorCode::PreconditionViolated, "element code out of range");
    return Ffe(static_cast<std::uint16_t>(code));
}

Ffe FieldSpec::from_int(long value) const
{
    const long p = t_->p;
    const unsigned r = static_cast<unsigned>(((value % p) + p) % p);
    const unsigned c[1] = {r};
    return from_coeffs(c);
}

Ffe FieldSpec::from_coeffs(std::span<const unsigned> coeffs) const
{
    if (coeffs.size() > t_->k)
        throw Error(ErrorCode::PreconditionViolated, "too many coefficients for GF(q)");
    return Ffe(static_cast<std::uint16_t>(t_->encode(coeffs)));
}

std::vector<unsigned> FieldSpec::coeffs(Ffe a) const { return t_->decoded.at(a.code()); }

std::vector<Ffe> FieldSpec::elements() const
{
    std::vector<Ffe> out;
    out.reserve(t_->q);
    for (unsigned c = 0; c < t_->q; ++c)
        out.emplace_back(static_cast<std::uint16_t>(c));
    return out;
}

Ffe FieldSpec::add(Ffe a, Ffe b) const noexcept { return Ffe(t_->add[std::size_t(a.code()) * t_->q + b.code()]); }
Ffe FieldSpec::sub(Ffe a, Ffe b) const noexcept { return add(a, neg(b)); }
Ffe FieldSpec::neg(Ffe a) const noexcept { return Ffe(t_->neg[a.code()]); }
Ffe FieldSpec::mul(Ffe a, Ffe b) const noexcept { return Ffe(t_->mul[std::size_t(a.code()) * t_->q + b.code()]); }

Ffe FieldSpec::inv(Ffe a) const
{
    if (a.is_zero())
        throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return Ffe(t_->inv[a.code()]);
}

std::string FieldSpec::describe() const
{
    std::ostringstream os;
    os << "GF(" << t_->q << ")";
    if (t_->k > 1) {
        os << " mod [";
        for (std::size_t i = 0; i < t_->modulus.size(); ++i)
            os << (i ? "," : "") << t_->modulus[i];
        os << "]";
    }
    return os.str();
}

bool operator==(const FieldSpec& a, const FieldSpec& b)
{
    return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->k == b.t_->k && a.t_->modulus == b.t_->modulus);
}

Ffe ffe_arith(const FieldSpec& field, Ffe a, Ffe b, FfeOp op)
{
    switch (op) {
    case FfeOp::Add: return field.add(a, b);
    case FfeOp::Mul: return field.mul(a, b);
    case FfeOp::Inv: return field.inv(a);
    case FfeOp::Neg: return field.neg(a);
    }
    return a;
}

MatGF::MatGF(std::size_t rows, std::size_t cols, std::vector<Ffe> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries))
{
    if (e_.size() != rows_ * cols_)
        throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows x cols");
}

MatGF MatGF::from_codes(std::size_t rows, std::size_t cols, std::initializer_list<unsigned> codes)
{
    std::vector<Ffe> e;
    e.reserve(codes.size());
    for (unsigned c : codes)
        e.emplace_back(static_cast<std::uint16_t>(c));
    return MatGF(rows, cols, std::move(e));
}

MatGF MatGF::identity(const FieldSpec& field, std::size_t n)
{
    MatGF m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = field.one();
    return m;
}

MatGF MatGF::transpose() const
{
    MatGF t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

MatGF MatGF::top_rows(std::size_t count) const
{
    count = std::min(count, rows_);
    return MatGF(count, cols_, std::vector<Ffe>(e_.begin(), e_.begin() + static_cast<std::ptrdiff_t>(count * cols_)));
}

MatGF MatGF::stack(const MatGF& a, const MatGF& b)
{
    if (a.cols_ != b.cols_)
        throw Error(ErrorCode::DimensionMismatch, "cannot stack matrices with different column counts");
    std::vector<Ffe> e(a.e_);
    e.insert(e.end(), b.e_.begin(), b.e_.end());
    return MatGF(a.rows_ + b.rows_, a.cols_, std::move(e));
}

RrefResult rref(const FieldSpec& field, const MatGF& m)
{
    MatGF a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t sel = r;
        while (sel < a.rows() && a.at(sel, c).is_zero())
            ++sel;
        if (sel == a.rows())
            continue;
        if (sel != r)
            for (std::size_t t = 0; t < a.cols(); ++t)
                std::swap(a.at(sel, t), a.at(r, t));
        const Ffe s = field.inv(a.at(r, c));
        for (std::size_t t = c; t < a.cols(); ++t)
            a.at(r, t) = field.mul(a.at(r, t), s);
        for (std::size_t o = 0; o < a.rows(); ++o) {
            if (o == r || a.at(o, c).is_zero())
                continue;
            const Ffe f = a.at(o, c);
            for (std::size_t t = c; t < a.cols(); ++t)
                a.at(o, t) = field.sub(a.at(o, t), field.mul(f, a.at(r, t)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {a.top_rows(r), std::move(pivots), r};
}

std::size_t rank(const FieldSpec& field, const MatGF& m) { return rref(field, m).rank; }

MatGF multiply(const FieldSpec& field, const MatGF& a, const MatGF& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
    MatGF out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Ffe x = a.at(r, k);
            if (x.is_zero())
                continue;
            for (std::size_t c = 0; c < b.cols(); ++c)
                out.at(r, c) = field.add(out.at(r, c), field.mul(x, b.at(k, c)));
        }
    return out;
}

bool is_invertible(const FieldSpec& field, const MatGF& m)
{
    return m.rows() == m.cols() && rank(field, m) == m.rows();
}

MatGF null_space(const FieldSpec& field, const MatGF& m)
{
    const auto red = rref(field, m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : red.pivots)
        is_pivot[c] = true;
    std::vector<Ffe> rows;
    std::size_t count = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Ffe> v(n, field.zero());
        v[f] = field.one();
        for (std::size_t r = 0; r < red.rank; ++r)
            v[red.pivots[r]] = field.neg(red.matrix.at(r, f));
        rows.insert(rows.end(), v.begin(), v.end());
        ++count;
    }
    MatGF basis(count, n, std::move(rows));
    return count == 0 ? basis : rref(field, basis).matrix;
}

} // namespace grassnest::ffield
