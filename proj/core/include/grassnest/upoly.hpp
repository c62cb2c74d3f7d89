#ifndef GRASSNEST_UPOLY_HPP
#define GRASSNEST_UPOLY_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "grassnest/bignum.hpp"

namespace grassnest
{

// Dense univariate polynomial, lowest degree first. The coefficient vector never
// carries trailing zeros, so the zero polynomial is the empty vector.
template <typename C>
class UniPoly
{
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }

    static UniPoly constant(C value) { return UniPoly(std::vector<C>{std::move(value)}); }

    static UniPoly monomial(C value, std::size_t degree)
    {
        std::vector<C> c(degree + 1, C(0));
        c[degree] = std::move(value);
        return UniPoly(std::move(c));
    }

    const std::vector<C>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }

    // -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

    C coeff(std::size_t k) const { return k < c_.size() ? c_[k] : C(0); }
    const C& leading() const { return c_.back(); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b)
    {
        std::vector<C> out(std::max(a.c_.size(), b.c_.size()), C(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k)
            out[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k)
            out[k] += b.c_[k];
        return UniPoly(std::move(out));
    }

    friend UniPoly operator-(const UniPoly& a) { return a * C(-1); }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<C> out(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t x = 0; x < a.c_.size(); ++x)
            for (std::size_t y = 0; y < b.c_.size(); ++y)
                out[x + y] += a.c_[x] * b.c_[y];
        return UniPoly(std::move(out));
    }

    friend UniPoly operator*(const UniPoly& a, const C& s)
    {
        std::vector<C> out(a.c_);
        for (auto& v : out)
            v *= s;
        return UniPoly(std::move(out));
    }

    UniPoly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<C> out(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            out[k - 1] = c_[k] * C(static_cast<long>(k));
        return UniPoly(std::move(out));
    }

    template <typename X>
    X evaluate(const X& x) const
    {
        X acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + X(*it);
        return acc;
    }

    // Long division; every quotient coefficient must be an exact multiple of the
    // divisor's leading coefficient, otherwise nullopt. Over a field this never fails.
    std::optional<std::pair<UniPoly, UniPoly>> divmod(const UniPoly& divisor) const
    {
        if (divisor.is_zero())
            return std::nullopt;
        std::vector<C> rem(c_);
        const std::size_t dd = divisor.c_.size() - 1;
        if (rem.size() <= dd)
            return std::make_pair(UniPoly{}, *this);
        std::vector<C> quot(rem.size() - dd, C(0));
        const C& lc = divisor.leading();
        for (std::size_t k = rem.size(); k-- > dd;) {
            if (rem[k] == C(0))
                continue;
            C factor = rem[k] / lc;
            if (factor * lc != rem[k])
                return std::nullopt;
            quot[k - dd] = factor;
            for (std::size_t t = 0; t <= dd; ++t)
                rem[k - dd + t] -= factor * divisor.c_[t];
        }
        return std::make_pair(UniPoly(std::move(quot)), UniPoly(std::move(rem)));
    }

    // Quotient when divisor divides *this exactly.
    std::optional<UniPoly> exact_quotient(const UniPoly& divisor) const
    {
        auto qr = divmod(divisor);
        if (!qr || !qr->second.is_zero())
            return std::nullopt;
        return std::move(qr->first);
    }

    std::string str(char var = 't') const
    {
        if (c_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == C(0))
                continue;
            C v = c_[k];
            const bool neg = v < C(0);
            if (neg)
                v = -v;
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            const bool unit = v == C(1);
            if (k == 0 || !unit)
                os << v;
            if (k >= 1)
                os << var;
            if (k >= 2)
                os << '^' << k;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.str(); }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == C(0))
            c_.pop_back();
    }

    std::vector<C> c_;
};

using UniPolyZ = UniPoly<BigInt>;
using UniPolyQ = UniPoly<BigRational>;

UniPolyQ to_rational(const UniPolyZ& p);

// Monic gcd over Q; gcd(0, 0) = 0.
UniPolyQ gcd(UniPolyQ a, UniPolyQ b);

} // namespace grassnest

#endif
