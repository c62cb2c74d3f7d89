#ifndef GRASSNEST_CHERN_HPP
#define GRASSNEST_CHERN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grassnest/bignum.hpp"
#include "grassnest/upoly.hpp"

namespace grassnest::chern
{

using Exponent = std::vector<std::uint16_t>;

unsigned total_degree(const Exponent& e);

/// Graded order: lower total degree first, then lexicographically larger
/// exponent vectors first (x1^2 before x1 x2 before x2^2).
struct GrlexLess
{
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse polynomial in num_vars variables over Z, with every term of total
/// degree above trunc_degree discarded. Zero coefficients are never stored.
class TruncPoly
{
public:
    using Terms = std::map<Exponent, BigInt, GrlexLess>;

    TruncPoly(unsigned num_vars, unsigned trunc_degree) : vars_(num_vars), deg_(trunc_degree) {}

    static TruncPoly constant(unsigned num_vars, unsigned trunc_degree, const BigInt& value);
    static TruncPoly one(unsigned num_vars, unsigned trunc_degree) { return constant(num_vars, trunc_degree, 1); }
    /// x_{index + 1}
    static TruncPoly variable(unsigned num_vars, unsigned trunc_degree, unsigned index);

    unsigned num_vars() const noexcept { return vars_; }
    unsigned trunc_degree() const noexcept { return deg_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    BigInt coefficient(const Exponent& e) const;
    /// Adds c x^e; drops it if total degree exceeds the truncation.
    void add_term(const Exponent& e, const BigInt& c);

    /// Partial derivative in variable index (0-based); truncation degree is kept.
    TruncPoly derivative(unsigned index) const;
    TruncPoly homogeneous_part(unsigned d) const;
    /// Same terms (those that fit) under a different truncation degree.
    TruncPoly retruncated(unsigned trunc_degree) const;

    /// Variables print as x1, x2, ... unless names are given.
    std::string str(const std::vector<std::string>& names = {}) const;

    friend bool operator==(const TruncPoly& a, const TruncPoly& b)
    {
        return a.vars_ == b.vars_ && a.deg_ == b.deg_ && a.terms_ == b.terms_;
    }
    friend TruncPoly operator+(const TruncPoly& a, const TruncPoly& b);
    friend TruncPoly operator-(const TruncPoly& a, const TruncPoly& b);
    friend TruncPoly operator*(const TruncPoly& a, const BigInt& s);

private:
    unsigned vars_;
    unsigned deg_;
    Terms terms_;
};

/// Product modulo terms of degree > D. Operands must agree on num_vars and D.
TruncPoly trunc_mul(const TruncPoly& a, const TruncPoly& b);

/// Formal inverse modulo degree > D; throws NotAUnit unless the constant term is 1.
TruncPoly trunc_inverse(const TruncPoly& a);

/// Sum of the squarefree monomials of degree r.
TruncPoly elementary_sigma(unsigned r, unsigned num_vars, unsigned trunc_degree);

/// Complete homogeneous polynomial: sum of all monomials of degree d.
TruncPoly theta(unsigned d, unsigned num_vars, unsigned trunc_degree);

/// 1 - sigma_1 + sigma_2 - ... + (-1)^i sigma_i, truncated at D.
TruncPoly ctot_tautological(unsigned i, unsigned trunc_degree);

/// 1 + theta_1 + ... + theta_{n-i} in i variables, truncated at n - i.
TruncPoly ctot_quotient(unsigned i, unsigned n);

/// Multiplies each term of degree k by x0^{degree - k}; x0 becomes variable 0.
TruncPoly homogenize(const TruncPoly& p, unsigned degree);

/// Places the variables of p at the given positions of a num_vars-variable ring.
TruncPoly embed(const TruncPoly& p, unsigned num_vars, const std::vector<unsigned>& positions);

/// Substitutes values[k] for every variable except free_var, leaving a
/// polynomial in free_var.
UniPolyZ restrict_to_line(const TruncPoly& p, unsigned free_var, const std::vector<BigInt>& values);

struct ThetaIdentityReport
{
    unsigned d_max = 0;
    bool ok = true;
    std::optional<unsigned> failing_d;
    std::string counterexample;
};

/// theta_d(x,y,z) = x theta_{d-1}(x,y,z) + theta_d(y,z) and
/// (d/dx + d/dy + d/dz) theta_d = (d + 2) theta_{d-1}, for 2 <= d <= d_max.
ThetaIdentityReport verify_theta_identities(unsigned d_max);

struct CertificateEntry
{
    unsigned d = 0;
    UniPolyQ boundary_high; ///< theta_d(0, 1, z) = 1 + z + ... + z^d
    UniPolyQ boundary_low;  ///< theta_{d-1}(0, 1, z)
    UniPolyQ gcd;
    long gcd_degree() const noexcept { return gcd.degree(); }
};

struct CertificateChain
{
    unsigned d_max = 0;
    std::vector<CertificateEntry> entries;
    bool pass = false; ///< every gcd is 1
};

/// Boundary step of the smoothness induction for theta_d(x, y, z) = 0:
/// a singular point with a zero coordinate would be a common root of the two
/// boundary restrictions, so their gcd must be 1.
CertificateChain smoothness_certificate(unsigned d_max);

/// Determinant of the symmetric Gram matrix of a quadratic form
/// (diagonal: coefficient of x_a^2, off-diagonal: half of the x_a x_b coefficient).
BigRational quadric_gram_determinant(const TruncPoly& quadratic);

enum class ObstructionKind
{
    NoFactorization,      ///< i >= 2, certificate chain passes
    Inconclusive,         ///< i >= 2, some certificate failed
    ExcludedAtChernLevel, ///< i = 1, no split with this j survives
    SurvivesChernLevel,   ///< i = 1, a split with this j survives
};

std::string to_string(ObstructionKind kind);

struct ObstructionVerdict
{
    ObstructionKind kind = ObstructionKind::Inconclusive;
    unsigned n = 0;
    unsigned i = 0;
    unsigned j = 0;
    // i >= 2
    std::optional<CertificateChain> certificate;
    bool homogenization_matches = false; ///< homogenized ctot_quotient equals theta_{n-i}(x0..xi)
    std::optional<BigRational> conic_gram_determinant; ///< only when n - i = 2
    // i = 1
    std::vector<unsigned> surviving_js;
    std::string annotation;
};

/// Whether the total Chern class of V / T_i can split into factors of degree
/// n - j and j - i. Requires 1 <= i < j <= n - 1.
ObstructionVerdict factorization_obstruction(unsigned n, unsigned i, unsigned j);

} // namespace grassnest::chern

#endif
