#ifndef GRASSNEST_GRASSMANN_HPP
#define GRASSNEST_GRASSMANN_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "grassnest/bignum.hpp"
#include "grassnest/ffield.hpp"

namespace grassnest::grassmann
{

using ffield::FieldSpec;
using ffield::MatGF;

using SubspaceId = std::uint64_t;

/// Subspaces per table above which enumeration refuses to run.
inline constexpr std::uint64_t max_table_size = 10'000'000;

/// Number of i-dimensional subspaces of F_q^n, by the q-binomial product formula.
BigInt gaussian_binomial(unsigned n, unsigned i, unsigned q);

/// An i-dimensional subspace of F^n, held as its reduced row echelon basis.
///
/// The id is the subspace's rank in the canonical enumeration order: pivot-column
/// sets in lexicographic order, then the free entries read row-major as base-q
/// digits (most significant first).
struct Subspace
{
    FieldSpec field;
    unsigned n = 0;
    unsigned dim = 0;
    MatGF basis;
    SubspaceId id = 0;

    /// Row space of an arbitrary spanning matrix. The rank must lie strictly
    /// between 0 and n.
    static Subspace span(const FieldSpec& field, const MatGF& rows);

    /// Inverse of the canonical id.
    static Subspace from_id(const FieldSpec& field, unsigned n, unsigned dim, SubspaceId id);

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.n == b.n && a.dim == b.dim && a.basis == b.basis && a.field == b.field;
    }
};

/// Canonical id of an rref basis with full row rank.
SubspaceId canonical_id(const FieldSpec& field, const MatGF& rref_basis, const std::vector<std::size_t>& pivots);

/// All of Gr(dim, F^n) in canonical order.
class GrassmannTable
{
public:
    GrassmannTable(FieldSpec field, unsigned n, unsigned dim, std::vector<Subspace> subspaces);

    const FieldSpec& field() const noexcept { return field_; }
    unsigned n() const noexcept { return n_; }
    unsigned dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return subspaces_.size(); }
    const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }
    const Subspace& operator[](std::size_t id) const { return subspaces_.at(id); }

    /// Id of the subspace with this rref basis, if present.
    std::optional<SubspaceId> lookup(const MatGF& rref_basis) const;

private:
    FieldSpec field_;
    unsigned n_;
    unsigned dim_;
    std::vector<Subspace> subspaces_;
    std::map<std::vector<ffield::Ffe>, SubspaceId> index_;
};

/// Throws PreconditionViolated unless 0 < dim < n, TooLarge above max_table_size.
GrassmannTable enumerate_subspaces(unsigned n, unsigned dim, const FieldSpec& field);

/// Whether l is a subspace of big. Throws AmbientMismatch for different fields or n.
bool contains(const Subspace& l, const Subspace& big);

/// Bipartite containment relation between Gr(i, F^n) and Gr(j, F^n).
struct NestingIncidence
{
    unsigned i = 0;
    unsigned j = 0;
    unsigned n = 0;
    std::shared_ptr<const GrassmannTable> left;
    std::shared_ptr<const GrassmannTable> right;
    /// adjacency[l] = sorted ids of the j-spaces containing l.
    std::vector<std::vector<SubspaceId>> adjacency;

    std::size_t edge_count() const;
    /// Degree of each right vertex, indexed by right id.
    std::vector<std::size_t> right_degrees() const;
};

/// Requires 1 <= i < j <= n - 1.
std::shared_ptr<const NestingIncidence> incidence_graph(unsigned i, unsigned j, unsigned n, const FieldSpec& field);

/// One line per subspace: id, then the basis entries row-major, tab-separated.
/// Each entry is its coefficient vector, comma-joined.
void write_table(std::ostream& os, const GrassmannTable& table);

} // namespace grassnest::grassmann

#endif
