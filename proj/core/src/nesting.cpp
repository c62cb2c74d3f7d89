#include "grassnest/nesting.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "grassnest/error.hpp"

namespace grassnest::nesting
{

namespace
{

constexpr std::size_t unmatched = std::numeric_limits<std::size_t>::max();
constexpr std::size_t infinite = std::numeric_limits<std::size_t>::max();

// Uniform integer in [0, bound) from raw engine output, by rejection, so the
// sample sequence depends only on mt19937_64 (whose output the standard fixes).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit)
            return x % bound;
    }
}

class HopcroftKarp
{
public:
    explicit HopcroftKarp(const NestingIncidence& inc)
        : adj_(inc.adjacency), mate_left_(inc.left->size(), unmatched), mate_right_(inc.right->size(), unmatched),
          dist_(inc.left->size(), infinite), next_edge_(inc.left->size(), 0)
    {
    }

    void run()
    {
        while (bfs()) {
            std::fill(next_edge_.begin(), next_edge_.end(), 0);
            for (std::size_t l = 0; l < adj_.size(); ++l)
                if (mate_left_[l] == unmatched)
                    augment_from(l);
        }
    }

    const std::vector<std::size_t>& mate_left() const { return mate_left_; }

private:
    // Layers left vertices by alternating-path distance from the free ones.
    bool bfs()
    {
        std::vector<std::size_t> queue;
        queue.reserve(adj_.size());
        for (std::size_t l = 0; l < adj_.size(); ++l) {
            if (mate_left_[l] == unmatched) {
                dist_[l] = 0;
                queue.push_back(l);
            } else {
                dist_[l] = infinite;
            }
        }
        bool found = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t l = queue[head];
            for (auto r : adj_[l]) {
                const std::size_t m = mate_right_[r];
                if (m == unmatched)
                    found = true;
                else if (dist_[m] == infinite) {
                    dist_[m] = dist_[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        return found;
    }

    // Iterative layered DFS; each edge is tried at most once per phase.
    bool augment_from(std::size_t root)
    {
        std::vector<std::size_t> stack{root};
        std::vector<std::size_t> via; // right vertex used to reach stack[t + 1]
        while (!stack.empty()) {
            const std::size_t l = stack.back();
            auto& e = next_edge_[l];
            bool advanced = false;
            while (e < adj_[l].size()) {
                const std::size_t r = adj_[l][e++];
                const std::size_t m = mate_right_[r];
                if (m == unmatched) {
                    // Flip the path root .. l, r.
                    via.push_back(r);
                    for (std::size_t t = 0; t < stack.size(); ++t) {
                        mate_left_[stack[t]] = via[t];
                        mate_right_[via[t]] = stack[t];
                    }
                    return true;
                }
                if (dist_[m] == dist_[l] + 1) {
                    via.push_back(r);
                    stack.push_back(m);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                dist_[l] = infinite;
                stack.pop_back();
                if (!via.empty())
                    via.pop_back();
            }
        }
        return false;
    }

    const std::vector<std::vector<SubspaceId>>& adj_;
    std::vector<std::size_t> mate_left_;
    std::vector<std::size_t> mate_right_;
    std::vector<std::size_t> dist_;
    std::vector<std::size_t> next_edge_;
};

Matching package(std::shared_ptr<const NestingIncidence> inc, std::vector<std::optional<SubspaceId>> map)
{
    Matching m;
    m.incidence = std::move(inc);
    m.left_to_right = std::move(map);
    m.size = static_cast<std::size_t>(
        std::count_if(m.left_to_right.begin(), m.left_to_right.end(), [](const auto& x) { return x.has_value(); }));
    m.saturating = m.size == m.incidence->left->size();
    m.perfect = m.saturating && m.size == m.incidence->right->size();
    return m;
}

} // namespace

std::vector<std::pair<SubspaceId, SubspaceId>> Matching::pairs() const
{
    std::vector<std::pair<SubspaceId, SubspaceId>> out;
    out.reserve(size);
    for (std::size_t l = 0; l < left_to_right.size(); ++l)
        if (left_to_right[l])
            out.emplace_back(l, *left_to_right[l]);
    return out;
}

Matching find_bijective_nesting(std::shared_ptr<const NestingIncidence> inc)
{
    HopcroftKarp hk(*inc);
    hk.run();
    std::vector<std::optional<SubspaceId>> map(inc->left->size());
    for (std::size_t l = 0; l < map.size(); ++l)
        if (hk.mate_left()[l] != unmatched)
            map[l] = hk.mate_left()[l];
    return package(std::move(inc), std::move(map));
}

MatchingVerification verify_matching(const Matching& m)
{
    MatchingVerification v;
    const auto& inc = *m.incidence;
    std::vector<bool> hit(inc.right->size(), false);
    for (std::size_t l = 0; l < m.left_to_right.size(); ++l) {
        if (!m.left_to_right[l])
            continue;
        const auto r = *m.left_to_right[l];
        ++v.pairs_checked;
        if (r >= hit.size() || !grassmann::contains((*inc.left)[l], (*inc.right)[r])) {
            v.every_pair_nested = false;
            continue;
        }
        if (hit[r])
            v.injective = false;
        hit[r] = true;
    }
    v.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    return v;
}

HallSample hall_sample(const NestingIncidence& inc, const std::vector<SubspaceId>& subset)
{
    HallSample s;
    s.k = subset.size();
    std::vector<bool> in_union(inc.right->size(), false);
    for (auto l : subset) {
        s.pairs += inc.adjacency.at(l).size();
        for (auto r : inc.adjacency[l])
            if (!in_union[r]) {
                in_union[r] = true;
                ++s.union_size;
            }
    }
    const auto n_per = static_cast<std::size_t>(grassmann::gaussian_binomial(inc.n - inc.i, inc.j - inc.i, inc.left->field().q()));
    s.k_times_n = s.k * n_per;
    return s;
}

HallReport hall_check(const NestingIncidence& inc, std::size_t subset_samples, std::uint64_t seed)
{
    if (inc.i + inc.j != inc.n)
        throw Error(ErrorCode::PreconditionViolated, "Hall double count needs i + j = n");
    HallReport rep;
    rep.n_per_left = static_cast<std::size_t>(grassmann::gaussian_binomial(inc.n - inc.i, inc.j - inc.i, inc.left->field().q()));
    rep.min_slack = std::numeric_limits<long>::max();

    std::mt19937_64 rng(seed);
    const std::size_t side = inc.left->size();
    std::vector<SubspaceId> ids(side);
    for (std::size_t s = 0; s < subset_samples; ++s) {
        std::iota(ids.begin(), ids.end(), SubspaceId{0});
        const std::size_t k = 1 + static_cast<std::size_t>(bounded(rng, side));
        // Partial Fisher-Yates: the first k ids become the subset.
        for (std::size_t t = 0; t < k; ++t)
            std::swap(ids[t], ids[t + static_cast<std::size_t>(bounded(rng, side - t))]);
        std::vector<SubspaceId> subset(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(subset.begin(), subset.end());

        const auto sample = hall_sample(inc, subset);
        if (sample.pairs != sample.k_times_n)
            rep.double_count_exact = false;
        if (sample.k_times_n > sample.union_size * rep.n_per_left)
            rep.inequality_holds = false;
        if (sample.slack() < rep.min_slack) {
            rep.min_slack = sample.slack();
            rep.double_count_pairs = sample.pairs;
            rep.k_times_n = sample.k_times_n;
        }
        rep.samples.push_back(sample);
        ++rep.checked_subsets;
    }
    if (rep.checked_subsets == 0)
        rep.min_slack = 0;
    return rep;
}

bool is_alternating(const FieldSpec& field, const MatGF& gram)
{
    if (gram.rows() != gram.cols())
        return false;
    for (std::size_t r = 0; r < gram.rows(); ++r) {
        if (!gram.at(r, r).is_zero())
            return false;
        for (std::size_t c = r + 1; c < gram.cols(); ++c)
            if (gram.at(r, c) != field.neg(gram.at(c, r)))
                return false;
    }
    return true;
}

AlternatingForm AlternatingForm::make(const FieldSpec& field, const MatGF& gram)
{
    if (gram.rows() != gram.cols())
        throw Error(ErrorCode::DimensionMismatch, "gram matrix must be square");
    const auto n = static_cast<unsigned>(gram.rows());
    if (n % 2 != 0)
        throw Error(ErrorCode::OddDimension, "alternating forms are degenerate in odd dimension " + std::to_string(n));
    if (!is_alternating(field, gram))
        throw Error(ErrorCode::PreconditionViolated, "gram matrix is not alternating");
    if (!ffield::is_invertible(field, gram))
        throw Error(ErrorCode::Singular, "gram matrix is singular");
    return AlternatingForm{field, n, gram};
}

AlternatingForm AlternatingForm::standard(const FieldSpec& field, unsigned n)
{
    if (n % 2 != 0)
        throw Error(ErrorCode::OddDimension, "alternating forms are degenerate in odd dimension " + std::to_string(n));
    MatGF g(n, n);
    for (unsigned t = 0; t + 1 < n; t += 2) {
        g.at(t, t + 1) = field.one();
        g.at(t + 1, t) = field.neg(field.one());
    }
    return make(field, g);
}

Subspace orthogonal_complement(const Subspace& l, const MatGF& gram)
{
    if (gram.rows() != l.n || gram.cols() != l.n)
        throw Error(ErrorCode::AmbientMismatch, "gram matrix size differs from the ambient dimension");
    // w is orthogonal to l iff (basis * gram) w = 0.
    const auto constraints = ffield::multiply(l.field, l.basis, gram);
    return Subspace::span(l.field, ffield::null_space(l.field, constraints));
}

Subspace perp(const Subspace& l, const AlternatingForm& form)
{
    if (l.n != form.n || !(l.field == form.field))
        throw Error(ErrorCode::AmbientMismatch, "form and subspace live in different spaces");
    return orthogonal_complement(l, form.gram);
}

Matching symplectic_nesting_map(const AlternatingForm& form)
{
    if (form.n % 2 != 0)
        throw Error(ErrorCode::OddDimension, "symplectic nesting map needs even n");
    auto inc = grassmann::incidence_graph(1, form.n - 1, form.n, form.field);
    std::vector<std::optional<SubspaceId>> map(inc->left->size());
    for (const auto& line : inc->left->subspaces()) {
        const auto hyper = perp(line, form);
        // Only edges of the incidence graph may be used.
        const auto& adj = inc->adjacency[line.id];
        if (std::binary_search(adj.begin(), adj.end(), hyper.id))
            map[line.id] = hyper.id;
    }
    auto m = package(inc, std::move(map));
    // Injectivity is part of "perfect": distinct lines must land on distinct hyperplanes.
    std::vector<bool> hit(inc->right->size(), false);
    for (const auto& [l, r] : m.pairs()) {
        if (hit[r])
            m.perfect = false;
        hit[r] = true;
    }
    return m;
}

LinearNestingVerdict linear_nesting_classifier(const MatGF& gram, const FieldSpec& field, unsigned n)
{
    if (gram.rows() != n || gram.cols() != n)
        throw Error(ErrorCode::DimensionMismatch, "gram matrix must be n x n");
    if (!ffield::is_invertible(field, gram))
        throw Error(ErrorCode::Singular, "gram matrix is singular");
    LinearNestingVerdict v;
    v.is_alternating = is_alternating(field, gram);
    v.is_nesting_exhaustive = true;
    const auto lines = grassmann::enumerate_subspaces(n, 1, field);
    for (const auto& line : lines.subspaces())
        if (!grassmann::contains(line, orthogonal_complement(line, gram))) {
            v.is_nesting_exhaustive = false;
            break;
        }
    return v;
}

} // namespace grassnest::nesting
