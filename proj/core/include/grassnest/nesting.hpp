#ifndef GRASSNEST_NESTING_HPP
#define GRASSNEST_NESTING_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "grassnest/ffield.hpp"
#include "grassnest/grassmann.hpp"

namespace grassnest::nesting
{

using ffield::FieldSpec;
using ffield::MatGF;
using grassmann::NestingIncidence;
using grassmann::Subspace;
using grassmann::SubspaceId;

/// A partial injective map Gr(i) -> Gr(j) along incidence edges.
struct Matching
{
    std::shared_ptr<const NestingIncidence> incidence;
    /// left_to_right[l] is f(l) when l is matched.
    std::vector<std::optional<SubspaceId>> left_to_right;
    std::size_t size = 0;
    bool saturating = false; ///< every left vertex matched
    bool perfect = false;    ///< both sides saturated

    std::vector<std::pair<SubspaceId, SubspaceId>> pairs() const;
};

/// Outcome of re-checking a matching against the subspaces themselves.
struct MatchingVerification
{
    std::size_t pairs_checked = 0;
    bool every_pair_nested = true; ///< contains(l, f(l)) recomputed, not read from adjacency
    bool injective = true;
    bool surjective = true;
    bool ok() const noexcept { return every_pair_nested && injective; }
};

/// Maximum matching by phase-batched augmenting paths (Hopcroft-Karp).
///
/// Deterministic: free left vertices are processed in id order and each
/// adjacency list is scanned from the smallest right id.
Matching find_bijective_nesting(std::shared_ptr<const NestingIncidence> inc);

MatchingVerification verify_matching(const Matching& m);

struct HallSample
{
    std::size_t k = 0;          ///< subset size
    std::size_t union_size = 0; ///< |X_{l_1} u ... u X_{l_k}|
    std::size_t pairs = 0;      ///< |W| = sum of |X_l|
    std::size_t k_times_n = 0;  ///< k N
    long slack() const noexcept { return static_cast<long>(union_size) - static_cast<long>(k); }
};

struct HallReport
{
    std::size_t checked_subsets = 0;
    long min_slack = 0;
    std::size_t double_count_pairs = 0; ///< |W| on the minimum-slack sample
    std::size_t k_times_n = 0;          ///< kN on the same sample
    std::size_t n_per_left = 0;         ///< N
    bool double_count_exact = true;     ///< |W| = kN on every sample
    bool inequality_holds = true;       ///< kN <= |union| N on every sample
    std::vector<HallSample> samples;
};

/// Union and double-count data for one explicit set of left ids.
HallSample hall_sample(const NestingIncidence& inc, const std::vector<SubspaceId>& subset);

/// Diagnostic Hall check on seeded random subsets; requires i + j = n.
HallReport hall_check(const NestingIncidence& inc, std::size_t subset_samples, std::uint64_t seed);

/// Non-degenerate alternating form: invertible, gram^T = -gram, zero diagonal.
struct AlternatingForm
{
    FieldSpec field;
    unsigned n = 0;
    MatGF gram;

    /// Validates the gram matrix; OddDimension for odd n, Singular or
    /// PreconditionViolated otherwise.
    static AlternatingForm make(const FieldSpec& field, const MatGF& gram);
    /// e_1 ^ e_2 + e_3 ^ e_4 + ...
    static AlternatingForm standard(const FieldSpec& field, unsigned n);
};

bool is_alternating(const FieldSpec& field, const MatGF& gram);

/// { w : v^T gram w = 0 for every v in l }, of dimension n - dim l when gram is invertible.
Subspace orthogonal_complement(const Subspace& l, const MatGF& gram);

Subspace perp(const Subspace& l, const AlternatingForm& form);

/// l -> perp(l) on Gr(1, F^n) packaged as a matching into Gr(n-1, F^n).
Matching symplectic_nesting_map(const AlternatingForm& form);

struct LinearNestingVerdict
{
    bool is_alternating = false;
    bool is_nesting_exhaustive = false;
};

/// Compares the alternating test with l in perp(l) checked over every line.
LinearNestingVerdict linear_nesting_classifier(const MatGF& gram, const FieldSpec& field, unsigned n);

} // namespace grassnest::nesting

#endif
