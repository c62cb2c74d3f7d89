#ifndef GRASSNEST_BIGNUM_HPP
#define GRASSNEST_BIGNUM_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace grassnest
{

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const BigRational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const BigRational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integral(const BigRational& x) { return denominator_of(x) == 1; }

// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const BigRational& x)
{
    if (is_integral(x))
        return numerator_of(x).str();
    return numerator_of(x).str() + "/" + denominator_of(x).str();
}

inline std::string to_string(const BigInt& x) { return x.str(); }

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

} // namespace grassnest

#endif
