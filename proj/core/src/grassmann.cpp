#include "grassnest/grassmann.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "grassnest/error.hpp"

namespace grassnest::grassmann
{

namespace
{

// Advances a sorted combination of size k from {0..n-1} to its lexicographic
// successor; false once exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t n)
{
    const std::size_t k = c.size();
    for (std::size_t t = k; t-- > 0;) {
        if (c[t] < n - k + t) {
            ++c[t];
            for (std::size_t u = t + 1; u < k; ++u)
                c[u] = c[u - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k)
{
    std::vector<std::size_t> c(k);
    for (std::size_t t = 0; t < k; ++t)
        c[t] = t;
    return c;
}

// Free (row, column) positions of an rref matrix with the given pivots, row-major.
std::vector<std::pair<std::size_t, std::size_t>> free_positions(const std::vector<std::size_t>& pivots, std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = pivots[r] + 1; c < n; ++c)
            if (!std::binary_search(pivots.begin(), pivots.end(), c))
                out.emplace_back(r, c);
    return out;
}

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp)
{
    std::uint64_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

void check_table_size(unsigned n, unsigned dim, unsigned q)
{
    if (dim == 0 || dim >= n)
        throw Error(ErrorCode::PreconditionViolated,
                    "need 0 < dim < n, got dim = " + std::to_string(dim) + ", n = " + std::to_string(n));
    if (gaussian_binomial(n, dim, q) > max_table_size)
        throw Error(ErrorCode::TooLarge, "Gr(" + std::to_string(dim) + ", F_" + std::to_string(q) + "^" +
                                             std::to_string(n) + ") has more than 10^7 elements");
}

std::vector<std::size_t> pivots_of(const MatGF& m)
{
    std::vector<std::size_t> piv;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) {
                piv.push_back(c);
                break;
            }
    return piv;
}

// Id of an rref basis with the per-pivot-set offsets computed once.
class IdRanker
{
public:
    IdRanker(std::size_t n, std::size_t dim, std::uint64_t q) : n_(n), q_(q)
    {
        auto combo = first_combination(dim);
        SubspaceId offset = 0;
        do {
            offsets_.emplace(combo, offset);
            offset += pow_u64(q, free_positions(combo, n).size());
        } while (next_combination(combo, n));
    }

    SubspaceId rank(const MatGF& rref_basis, const std::vector<std::size_t>& pivots) const
    {
        SubspaceId within = 0;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::size_t next = r + 1;
            for (std::size_t c = pivots[r] + 1; c < n_; ++c) {
                if (next < pivots.size() && pivots[next] == c) {
                    ++next;
                    continue;
                }
                within = within * q_ + rref_basis.at(r, c).code();
            }
        }
        return offsets_.at(pivots) + within;
    }

private:
    std::size_t n_;
    std::uint64_t q_;
    std::map<std::vector<std::size_t>, SubspaceId> offsets_;
};

} // namespace

BigInt gaussian_binomial(unsigned n, unsigned i, unsigned q)
{
    if (i > n)
        return 0;
    BigInt num = 1;
    BigInt den = 1;
    const BigInt bq = q;
    for (unsigned t = 0; t < i; ++t) {
        num *= boost::multiprecision::pow(bq, n - t) - 1;
        den *= boost::multiprecision::pow(bq, t + 1) - 1;
    }
    return num / den;
}

SubspaceId canonical_id(const FieldSpec& field, const MatGF& rref_basis, const std::vector<std::size_t>& pivots)
{
    const std::size_t n = rref_basis.cols();
    const std::uint64_t q = field.q();
    SubspaceId offset = 0;
    auto combo = first_combination(pivots.size());
    while (combo != pivots) {
        offset += pow_u64(q, free_positions(combo, n).size());
        if (!next_combination(combo, n))
            throw Error(ErrorCode::PreconditionViolated, "pivot set is not a valid combination");
    }
    SubspaceId within = 0;
    for (auto [r, c] : free_positions(pivots, n))
        within = within * q + rref_basis.at(r, c).code();
    return offset + within;
}

Subspace Subspace::span(const FieldSpec& field, const MatGF& rows)
{
    auto red = ffield::rref(field, rows);
    if (red.rank == 0 || red.rank >= rows.cols())
        throw Error(ErrorCode::PreconditionViolated, "span must have dimension strictly between 0 and n");
    Subspace s{field, static_cast<unsigned>(rows.cols()), static_cast<unsigned>(red.rank), red.matrix, 0};
    s.id = canonical_id(field, s.basis, red.pivots);
    return s;
}

Subspace Subspace::from_id(const FieldSpec& field, unsigned n, unsigned dim, SubspaceId id)
{
    if (dim == 0 || dim >= n)
        throw Error(ErrorCode::PreconditionViolated, "need 0 < dim < n");
    const std::uint64_t q = field.q();
    SubspaceId rest = id;
    auto combo = first_combination(dim);
    for (;;) {
        const auto frees = free_positions(combo, n);
        const std::uint64_t count = pow_u64(q, frees.size());
        if (rest < count) {
            MatGF m(dim, n);
            for (std::size_t r = 0; r < dim; ++r)
                m.at(r, combo[r]) = field.one();
            for (std::size_t t = frees.size(); t-- > 0;) {
                m.at(frees[t].first, frees[t].second) = field.element(static_cast<unsigned>(rest % q));
                rest /= q;
            }
            return Subspace{field, n, dim, std::move(m), id};
        }
        rest -= count;
        if (!next_combination(combo, n))
            throw Error(ErrorCode::PreconditionViolated, "subspace id out of range");
    }
}

GrassmannTable::GrassmannTable(FieldSpec field, unsigned n, unsigned dim, std::vector<Subspace> subspaces)
    : field_(std::move(field)), n_(n), dim_(dim), subspaces_(std::move(subspaces))
{
    for (const auto& s : subspaces_) {
        auto [it, fresh] = index_.emplace(s.basis.entries(), s.id);
        if (!fresh)
            throw Error(ErrorCode::PreconditionViolated, "duplicate subspace in table");
    }
}

std::optional<SubspaceId> GrassmannTable::lookup(const MatGF& rref_basis) const
{
    if (rref_basis.rows() != dim_ || rref_basis.cols() != n_)
        return std::nullopt;
    auto it = index_.find(rref_basis.entries());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

GrassmannTable enumerate_subspaces(unsigned n, unsigned dim, const FieldSpec& field)
{
    check_table_size(n, dim, field.q());
    const std::uint64_t q = field.q();
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(gaussian_binomial(n, dim, field.q())));
    auto combo = first_combination(dim);
    do {
        const auto frees = free_positions(combo, n);
        MatGF base(dim, n);
        for (std::size_t r = 0; r < dim; ++r)
            base.at(r, combo[r]) = field.one();
        const std::uint64_t count = pow_u64(q, frees.size());
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            MatGF m = base;
            std::uint64_t rest = idx;
            for (std::size_t t = frees.size(); t-- > 0;) {
                m.at(frees[t].first, frees[t].second) = field.element(static_cast<unsigned>(rest % q));
                rest /= q;
            }
            out.push_back(Subspace{field, n, dim, std::move(m), out.size()});
        }
    } while (next_combination(combo, n));
    return GrassmannTable(field, n, dim, std::move(out));
}

bool contains(const Subspace& l, const Subspace& big)
{
    if (l.n != big.n || !(l.field == big.field))
        throw Error(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
    if (l.dim > big.dim)
        return false;
    const auto& field = big.field;
    const auto piv = pivots_of(big.basis);
    std::vector<ffield::Ffe> v(l.n);
    for (std::size_t r = 0; r < l.dim; ++r) {
        auto row = l.basis.row(r);
        std::copy(row.begin(), row.end(), v.begin());
        for (std::size_t b = 0; b < big.dim; ++b) {
            const auto f = v[piv[b]];
            if (f.is_zero())
                continue;
            for (std::size_t c = 0; c < l.n; ++c)
                v[c] = field.sub(v[c], field.mul(f, big.basis.at(b, c)));
        }
        if (std::any_of(v.begin(), v.end(), [](ffield::Ffe x) { return !x.is_zero(); }))
            return false;
    }
    return true;
}

std::size_t NestingIncidence::edge_count() const
{
    std::size_t total = 0;
    for (const auto& a : adjacency)
        total += a.size();
    return total;
}

std::vector<std::size_t> NestingIncidence::right_degrees() const
{
    std::vector<std::size_t> deg(right->size(), 0);
    for (const auto& a : adjacency)
        for (auto r : a)
            ++deg[r];
    return deg;
}

std::shared_ptr<const NestingIncidence> incidence_graph(unsigned i, unsigned j, unsigned n, const FieldSpec& field)
{
    if (!(1 <= i && i < j && j + 1 <= n))
        throw Error(ErrorCode::PreconditionViolated, "need 1 <= i < j <= n - 1");
    auto inc = std::make_shared<NestingIncidence>();
    inc->i = i;
    inc->j = j;
    inc->n = n;
    inc->left = std::make_shared<const GrassmannTable>(enumerate_subspaces(n, i, field));
    inc->right = std::make_shared<const GrassmannTable>(enumerate_subspaces(n, j, field));
    inc->adjacency.assign(inc->left->size(), {});

    // The i-spaces inside a j-space L are the images of Gr(i, F^j) under the
    // basis of L; walking right ids in order keeps every adjacency list sorted.
    const auto coords = enumerate_subspaces(j, i, field);
    const IdRanker ranker(n, i, field.q());
    for (const auto& big : inc->right->subspaces()) {
        for (const auto& c : coords.subspaces()) {
            auto red = ffield::rref(field, ffield::multiply(field, c.basis, big.basis));
            const auto left_id = ranker.rank(red.matrix, red.pivots);
            inc->adjacency[left_id].push_back(big.id);
        }
    }
    return inc;
}

void write_table(std::ostream& os, const GrassmannTable& table)
{
    const auto& field = table.field();
    for (const auto& s : table.subspaces()) {
        os << s.id;
        for (auto e : s.basis.entries()) {
            os << '\t';
            const auto c = field.coeffs(e);
            for (std::size_t t = 0; t < c.size(); ++t)
                os << (t ? "," : "") << c[t];
        }
        os << '\n';
    }
}

} // namespace grassnest::grassmann
