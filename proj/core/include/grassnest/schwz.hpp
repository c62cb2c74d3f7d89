#ifndef GRASSNEST_SCHWZ_HPP
#define GRASSNEST_SCHWZ_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grassnest/bignum.hpp"
#include "grassnest/upoly.hpp"

namespace grassnest::schwz
{

/// Integer Chern polynomial p(t) = 1 + c_1 t + ... + c_r t^r = prod (1 - w_i t).
struct ChernCandidate
{
    UniPolyZ poly;
    unsigned rank = 0;
    bool squarefree = false;
    /// p is a product of cyclotomic polynomials, i.e. every w_i is a root of unity.
    bool unit_circle = false;

    /// Throws PreconditionViolated unless the constant term is 1.
    static ChernCandidate make(UniPolyZ poly);
};

/// Power sums of the reciprocal roots: values[m] = sum_i w_i^m, values[0] = r.
struct PowerSums
{
    std::vector<BigInt> values;
    const BigInt& operator[](std::size_t m) const { return values.at(m); }
};

/// Exact, via Newton's identities with e_k = (-1)^k c_k.
PowerSums power_sums(const ChernCandidate& p, unsigned max_order);

/// B_{s,m} = sum_i binom(s - w_i, m).
BigRational binom_sum_B(const ChernCandidate& p, long s, unsigned m);

struct SchwzReport
{
    ChernCandidate candidate;
    unsigned m = 0;
    long s_first = 0;
    long s_last = 0;
    std::vector<BigRational> values; ///< B_{s,m} for s = s_first..s_last
    bool pass = false;               ///< every value is an integer

    std::optional<long> first_failing_s() const;
};

/// Integrality of B_{s,m} for s = 0..m. Since s -> B_{s,m} is a rational
/// polynomial of degree <= m, integrality on m + 1 consecutive integers is
/// equivalent to integrality on all of Z.
SchwzReport schwarzenberger_check(const ChernCandidate& p, unsigned m);

/// Same check over an explicit range of s, inclusive.
SchwzReport schwarzenberger_check_range(const ChernCandidate& p, unsigned m, long s_first, long s_last);

/// B_{s,m} - B_{s-1,m} = B_{s-1,m-1} over the grid (m >= 1).
bool pascal_recurrence_check(const ChernCandidate& p, long s_first, long s_last, unsigned m_first, unsigned m_last);

/// B_{s,m} = 0 for s = 1..m-2 and B_{1,k} = 0 for k = 3..m.
/// Throws HypothesisViolated unless p is squarefree, on the unit circle and 1 <= r <= m - 2.
bool lemma_b_zero_check(const ChernCandidate& p, unsigned m);

struct TraceIdentityReport
{
    std::vector<BigRational> traces;   ///< tr(a b_i), i = 0..m-3
    std::vector<BigRational> expected; ///< (i+3)! B_{1,i+3}
    bool holds = false;
    bool a_vanishes = false; ///< a = 0 in Q[x]/(P)
};

/// Traces in Q[x]/(P), P(x) = x^r p(1/x), from companion-matrix powers.
/// Throws NotSquarefree.
TraceIdentityReport trace_form_identity(const ChernCandidate& p, unsigned m);

/// Phi_d scaled to constant term 1 (so Phi_1 becomes 1 - t).
UniPolyZ cyclotomic(unsigned d);

struct CyclotomicFactor
{
    unsigned d = 0;
    UniPolyZ poly;
};

/// {Phi_d : d | n, d > 1}, ascending in d.
std::vector<CyclotomicFactor> cyclotomic_split(unsigned n);

/// 1 + t + ... + t^{n-1}.
UniPolyZ geometric_sum(unsigned n);

/// p is a product of cyclotomic polynomials (repeats allowed), up to sign.
bool is_unit_circle(const UniPolyZ& p);

bool is_squarefree(const UniPolyZ& p);

struct FilterResult
{
    char factor = 'p'; ///< 'p' (the rank n - j piece) or 'q' (rank j - 1)
    unsigned rank = 0;
    unsigned m = 0;
    bool applied = false; ///< 1 <= rank <= m - 2
    bool pass = true;
    std::optional<long> failing_s;
    std::optional<BigRational> failing_value;
};

struct SplitEntry
{
    unsigned j = 0;
    std::vector<unsigned> p_divisors; ///< d of the Phi_d forming p
    UniPolyZ p;
    UniPolyZ q;
    std::vector<FilterResult> filters;
    bool survivor = false;
    std::string annotation;
};

struct SplitTable
{
    unsigned n = 0;
    std::vector<SplitEntry> entries;
    std::vector<std::size_t> survivors; ///< indices into entries

    std::vector<unsigned> survivor_js() const;
};

inline constexpr const char* sheaf_annotation =
    "survives the Chern-level filter; excluded only by the global-sections argument for the quotient bundle, "
    "which is not certified here";

/// Every split of 1 + t + ... + t^{n-1} into cyclotomic pieces p q with deg p = n - j,
/// filtered by Schwarzenberger integrality on P^{n-1}.
SplitTable classify_chern_splits(unsigned n);

} // namespace grassnest::schwz

#endif
