#include "grassnest/upoly.hpp"

namespace grassnest
{

UniPolyQ to_rational(const UniPolyZ& p)
{
    std::vector<BigRational> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs())
        c.emplace_back(v);
    return UniPolyQ(std::move(c));
}

UniPolyQ gcd(UniPolyQ a, UniPolyQ b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b)->second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero())
        return a;
    return a * (BigRational(1) / a.leading());
}

} // namespace grassnest
