#include "grassnest/bignum.hpp"

namespace grassnest
{

BigInt factorial(unsigned n)
{
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k)
        r *= k;
    return r;
}

BigInt binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    BigInt r = 1;
    for (unsigned t = 0; t < k; ++t)
        r = r * (n - t) / (t + 1);
    return r;
}

} // namespace grassnest
