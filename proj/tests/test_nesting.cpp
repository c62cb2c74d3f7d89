#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "grassnest/error.hpp"
#include "grassnest/nesting.hpp"

using namespace grassnest;
using namespace grassnest::nesting;
using grassmann::enumerate_subspaces;
using grassmann::incidence_graph;

namespace
{

// Kuhn's simple augmenting-path algorithm; only the size is compared.
std::size_t kuhn_max_matching(const grassmann::NestingIncidence& inc)
{
    const std::size_t right = inc.right->size();
    std::vector<long> owner(right, -1);
    std::size_t size = 0;
    for (std::size_t l = 0; l < inc.adjacency.size(); ++l) {
        std::vector<char> seen(right, 0);
        auto try_augment = [&](auto&& self, std::size_t u) -> bool {
            for (auto r : inc.adjacency[u]) {
                if (seen[r])
                    continue;
                seen[r] = 1;
                if (owner[r] < 0 || self(self, static_cast<std::size_t>(owner[r]))) {
                    owner[r] = static_cast<long>(u);
                    return true;
                }
            }
            return false;
        };
        if (try_augment(try_augment, l))
            ++size;
    }
    return size;
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::NotPrime;
}

} // namespace

TEST_CASE("perfect nesting matchings")
{
    auto gf2 = FieldSpec::make(2);
    for (auto [i, j, n, expect] : {std::tuple{1u, 3u, 4u, 15u}, {2u, 3u, 5u, 155u}}) {
        CAPTURE(n);
        auto inc = incidence_graph(i, j, n, gf2);
        const auto m = find_bijective_nesting(inc);
        CHECK(m.size == expect);
        CHECK(m.perfect);
        CHECK(m.saturating);
        const auto v = verify_matching(m);
        CHECK(v.pairs_checked == expect);
        CHECK(v.ok());
        CHECK(v.surjective);
        CHECK(m.size == kuhn_max_matching(*inc));
    }
}

TEST_CASE("saturating but not perfect when the sides differ")
{
    auto gf2 = FieldSpec::make(2);
    auto inc = incidence_graph(1, 2, 4, gf2);
    CHECK(inc->left->size() == 15);
    CHECK(inc->right->size() == 35);
    const auto m = find_bijective_nesting(inc);
    CHECK(m.size == 15);
    CHECK(m.saturating);
    CHECK_FALSE(m.perfect);
    const auto v = verify_matching(m);
    CHECK(v.ok());
    CHECK_FALSE(v.surjective);
}

TEST_CASE("matching size equals a simple maximum-matching oracle")
{
    for (auto [q, i, j, n] : {std::tuple{2u, 1u, 2u, 3u}, {3u, 1u, 2u, 3u}, {2u, 2u, 3u, 4u}, {3u, 1u, 3u, 4u},
                              {2u, 1u, 4u, 5u}, {4u, 1u, 2u, 3u}, {2u, 2u, 4u, 6u}}) {
        CAPTURE(q);
        CAPTURE(i);
        CAPTURE(j);
        CAPTURE(n);
        auto inc = incidence_graph(i, j, n, FieldSpec::of_order(q));
        const auto m = find_bijective_nesting(inc);
        CHECK(m.size == kuhn_max_matching(*inc));
        CHECK(verify_matching(m).ok());
        std::size_t matched = 0;
        for (const auto& r : m.left_to_right)
            matched += r.has_value();
        CHECK(matched == m.size);
        CHECK(m.pairs().size() == m.size);
    }
}

TEST_CASE("matching is deterministic")
{
    auto f = FieldSpec::of_order(3);
    const auto a = find_bijective_nesting(incidence_graph(1, 3, 4, f));
    const auto b = find_bijective_nesting(incidence_graph(1, 3, 4, f));
    CHECK(a.pairs() == b.pairs());
}

TEST_CASE("verify_matching catches a corrupted pair")
{
    auto gf2 = FieldSpec::make(2);
    auto m = find_bijective_nesting(incidence_graph(1, 3, 4, gf2));
    // Pick a hyperplane not containing line 0.
    const auto& line0 = (*m.incidence->left)[0];
    SubspaceId bad = 0;
    for (const auto& h : m.incidence->right->subspaces())
        if (!grassmann::contains(line0, h)) {
            bad = h.id;
            break;
        }
    m.left_to_right[0] = bad;
    CHECK_FALSE(verify_matching(m).every_pair_nested);
}

TEST_CASE("Hall check examples")
{
    auto gf2 = FieldSpec::make(2);
    auto inc = incidence_graph(1, 3, 4, gf2);

    const auto single = hall_sample(*inc, {0});
    CHECK(single.k == 1);
    CHECK(single.union_size == 7);
    CHECK(single.slack() == 6);
    CHECK(single.pairs == 7);

    std::vector<SubspaceId> all(15);
    std::iota(all.begin(), all.end(), SubspaceId{0});
    const auto full = hall_sample(*inc, all);
    CHECK(full.union_size == 15);
    CHECK(full.slack() == 0);
    CHECK(full.pairs == full.k_times_n);

    const auto rep = hall_check(*inc, 1000, 0);
    CHECK(rep.checked_subsets == 1000);
    CHECK(rep.min_slack >= 0);
    CHECK(rep.double_count_exact);
    CHECK(rep.inequality_holds);
    CHECK(rep.n_per_left == 7);
    for (const auto& s : rep.samples)
        REQUIRE((s.k >= 1 && s.k <= 15));

    const auto again = hall_check(*inc, 1000, 0);
    CHECK(again.min_slack == rep.min_slack);
    CHECK(again.samples.size() == rep.samples.size());
    bool same = true;
    for (std::size_t t = 0; t < rep.samples.size(); ++t)
        same = same && rep.samples[t].k == again.samples[t].k && rep.samples[t].union_size == again.samples[t].union_size;
    CHECK(same);

    CHECK(code_of([&] { hall_check(*incidence_graph(1, 2, 4, gf2), 10, 0); }) == ErrorCode::PreconditionViolated);
}

TEST_CASE("union sizes against a set oracle")
{
    auto f = FieldSpec::of_order(3);
    auto inc = incidence_graph(2, 3, 5, f);
    const std::vector<SubspaceId> subset{0, 5, 17, 200, 805};
    std::set<SubspaceId> u;
    for (auto l : subset)
        u.insert(inc->adjacency[l].begin(), inc->adjacency[l].end());
    const auto s = hall_sample(*inc, subset);
    CHECK(s.union_size == u.size());
    CHECK(s.pairs == 5 * 13);
}

TEST_CASE("perp examples")
{
    auto gf2 = FieldSpec::make(2);
    const auto form = AlternatingForm::standard(gf2, 4);
    const auto e1 = Subspace::span(gf2, MatGF::from_codes(1, 4, {1, 0, 0, 0}));
    // omega = e1^e2 + e3^e4, so e1 pairs only with e2.
    CHECK(perp(e1, form) == Subspace::span(gf2, MatGF::from_codes(3, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})));

    const auto plane = Subspace::span(gf2, MatGF::from_codes(2, 4, {1, 0, 0, 0, 0, 1, 0, 0}));
    CHECK(perp(plane, form).dim == 2);
    CHECK(perp(plane, form) == Subspace::span(gf2, MatGF::from_codes(2, 4, {0, 0, 1, 0, 0, 0, 0, 1})));
}

TEST_CASE("perp is an inclusion-reversing involution with l inside perp(l)")
{
    for (unsigned q : {2u, 3u}) {
        auto f = FieldSpec::of_order(q);
        for (unsigned n : {4u, 6u}) {
            if (q == 3 && n == 6)
                continue;
            const auto form = AlternatingForm::standard(f, n);
            const auto lines = enumerate_subspaces(n, 1, f);
            const auto planes = enumerate_subspaces(n, 2, f);
            for (const auto& l : lines.subspaces()) {
                const auto h = perp(l, form);
                REQUIRE(h.dim == n - 1);
                REQUIRE(grassmann::contains(l, h));
                REQUIRE(perp(h, form) == l);
            }
            for (const auto& p : planes.subspaces()) {
                REQUIRE(perp(perp(p, form), form) == p);
                const auto pp = perp(p, form);
                for (const auto& l : lines.subspaces())
                    if (grassmann::contains(l, p))
                        REQUIRE(grassmann::contains(pp, perp(l, form)));
            }
        }
    }
}

TEST_CASE("symplectic nesting map is a bijection")
{
    {
        auto gf2 = FieldSpec::make(2);
        const auto m = symplectic_nesting_map(AlternatingForm::standard(gf2, 4));
        CHECK(m.size == 15);
        CHECK(m.perfect);
        CHECK(verify_matching(m).ok());
    }
    {
        auto gf3 = FieldSpec::make(3);
        const auto m = symplectic_nesting_map(AlternatingForm::standard(gf3, 4));
        CHECK(m.size == 40);
        CHECK(m.perfect);
        CHECK(verify_matching(m).ok());
    }
    auto gf2 = FieldSpec::make(2);
    CHECK(code_of([&] { AlternatingForm::standard(gf2, 3); }) == ErrorCode::OddDimension);
    CHECK(code_of([&] { AlternatingForm::make(gf2, MatGF::from_codes(2, 2, {1, 1, 1, 0})); }) ==
          ErrorCode::PreconditionViolated);
    CHECK(code_of([&] { AlternatingForm::make(gf2, MatGF::from_codes(2, 2, {0, 0, 0, 0})); }) == ErrorCode::Singular);
}

TEST_CASE("linear nesting classifier examples")
{
    auto gf2 = FieldSpec::make(2);
    auto v = linear_nesting_classifier(AlternatingForm::standard(gf2, 4).gram, gf2, 4);
    CHECK(v.is_alternating);
    CHECK(v.is_nesting_exhaustive);

    v = linear_nesting_classifier(MatGF::identity(gf2, 4), gf2, 4);
    CHECK_FALSE(v.is_alternating);
    CHECK_FALSE(v.is_nesting_exhaustive);

    CHECK(code_of([&] { linear_nesting_classifier(MatGF(4, 4), gf2, 4); }) == ErrorCode::Singular);
}

TEST_CASE("classifier agrees on every invertible 2x2 matrix over GF(3)")
{
    auto gf3 = FieldSpec::make(3);
    std::size_t invertible = 0, alternating = 0;
    for (unsigned code = 0; code < 81; ++code) {
        MatGF g(2, 2);
        unsigned c = code;
        for (std::size_t t = 0; t < 4; ++t, c /= 3)
            g.at(t / 2, t % 2) = gf3.element(c % 3);
        if (!ffield::is_invertible(gf3, g))
            continue;
        ++invertible;
        const auto v = linear_nesting_classifier(g, gf3, 2);
        REQUIRE(v.is_alternating == v.is_nesting_exhaustive);
        alternating += v.is_alternating;
    }
    CHECK(invertible == 48);
    CHECK(alternating == 2);
}
