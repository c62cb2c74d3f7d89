#ifndef GRASSNEST_FFIELD_HPP
#define GRASSNEST_FFIELD_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace grassnest::ffield
{

/// Element of GF(p^k) in canonical polynomial-basis form.
///
/// The stored code packs the coefficient vector (c_0, ..., c_{k-1}) as base-p
/// digits with c_0 most significant, so that comparing codes is the same as
/// comparing coefficient vectors lexicographically. Coefficients are recovered
/// through FieldSpec::coeffs.
class Ffe
{
public:
    constexpr Ffe() = default;
    constexpr explicit Ffe(std::uint16_t code) : code_(code) {}

    constexpr std::uint16_t code() const noexcept { return code_; }
    constexpr bool is_zero() const noexcept { return code_ == 0; }

    friend constexpr auto operator<=>(Ffe, Ffe) = default;

private:
    std::uint16_t code_ = 0;
};

enum class FfeOp
{
    Add,
    Mul,
    Inv,
    Neg,
};

/// A validated finite field GF(p^k).
///
/// Arithmetic runs off addition/multiplication tables built once at
/// construction; copies share them. Fields with q > max_order() are refused.
class FieldSpec
{
public:
    static constexpr unsigned max_order() { return 1024; }

    /// Builds GF(p^k). The modulus is given lowest degree first (length k + 1,
    /// monic). For k > 1 without a modulus a built-in one is used, available for
    /// q in {4, 8, 9, 16, 25, 27, 32, 49, 64}.
    static FieldSpec make(unsigned p, unsigned k = 1, std::optional<std::vector<unsigned>> modulus = std::nullopt);

    /// Splits a prime power q into (p, k) and calls make(p, k).
    static FieldSpec of_order(unsigned q);

    unsigned p() const noexcept;
    unsigned k() const noexcept;
    unsigned q() const noexcept;
    /// Lowest degree first; {0, 1} (the polynomial x) for prime fields.
    const std::vector<unsigned>& modulus() const noexcept;

    Ffe zero() const noexcept { return Ffe(0); }
    Ffe one() const noexcept;
    Ffe element(unsigned code) const;
    /// Image of an integer in the prime subfield.
    Ffe from_int(long value) const;
    Ffe from_coeffs(std::span<const unsigned> coeffs) const;
    std::vector<unsigned> coeffs(Ffe a) const;

    /// All q elements in the canonical total order.
    std::vector<Ffe> elements() const;

    Ffe add(Ffe a, Ffe b) const noexcept;
    Ffe sub(Ffe a, Ffe b) const noexcept;
    Ffe neg(Ffe a) const noexcept;
    Ffe mul(Ffe a, Ffe b) const noexcept;
    /// Throws DivisionByZero for a = 0.
    Ffe inv(Ffe a) const;
    Ffe div(Ffe a, Ffe b) const { return mul(a, inv(b)); }

    std::string describe() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b);

private:
    struct Tables;
    explicit FieldSpec(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
    std::shared_ptr<const Tables> t_;
};

bool is_prime(unsigned n) noexcept;

/// Exhaustive irreducibility test of a monic polynomial over GF(p) (lowest degree first).
bool is_irreducible_mod_p(std::span<const unsigned> poly, unsigned p);

Ffe ffe_arith(const FieldSpec& field, Ffe a, Ffe b, FfeOp op);

/// Dense row-major matrix over a finite field.
class MatGF
{
public:
    MatGF() = default;
    MatGF(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    MatGF(std::size_t rows, std::size_t cols, std::vector<Ffe> entries);

    /// Convenience for tests and small literals: entries are element codes.
    static MatGF from_codes(std::size_t rows, std::size_t cols, std::initializer_list<unsigned> codes);
    static MatGF identity(const FieldSpec& field, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<Ffe>& entries() const noexcept { return e_; }

    Ffe& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    Ffe at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    std::span<Ffe> row(std::size_t r) { return {e_.data() + r * cols_, cols_}; }
    std::span<const Ffe> row(std::size_t r) const { return {e_.data() + r * cols_, cols_}; }

    MatGF transpose() const;
    /// Rows [0, count).
    MatGF top_rows(std::size_t count) const;
    /// Stacks b under a; column counts must agree.
    static MatGF stack(const MatGF& a, const MatGF& b);

    friend bool operator==(const MatGF&, const MatGF&) = default;
    friend auto operator<=>(const MatGF&, const MatGF&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Ffe> e_;
};

struct RrefResult
{
    MatGF matrix; ///< only the rank nonzero rows
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

RrefResult rref(const FieldSpec& field, const MatGF& m);
std::size_t rank(const FieldSpec& field, const MatGF& m);
MatGF multiply(const FieldSpec& field, const MatGF& a, const MatGF& b);
bool is_invertible(const FieldSpec& field, const MatGF& m);

/// Basis (as rows, in rref) of { x : m x = 0 }.
MatGF null_space(const FieldSpec& field, const MatGF& m);

} // namespace grassnest::ffield

#endif
