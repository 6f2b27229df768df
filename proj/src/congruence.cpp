#include <cig/congruence.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace cig {

namespace {
    constexpr std::size_t lattice_bound = 12;

    class UnionFind
    {
    public:
        explicit UnionFind(std::size_t n)
            : _parent(n)
        {
            std::iota(_parent.begin(), _parent.end(), 0);
        }

        auto find(std::size_t a) -> std::size_t
        {
            while (_parent[a] != a)
                a = _parent[a] = _parent[_parent[a]];
            return a;
        }

        auto unite(std::size_t a, std::size_t b) -> bool
        {
            a = find(a);
            b = find(b);
            if (a == b)
                return false;
            _parent[std::max(a, b)] = std::min(a, b);
            return true;
        }

        auto labels() -> std::vector<std::size_t>
        {
            std::vector<std::size_t> out(_parent.size());
            for (std::size_t a = 0; a < out.size(); ++a)
                out[a] = find(a);
            return out;
        }

    private:
        std::vector<std::size_t> _parent;
    };
}

PartitionCongruence::PartitionCongruence(std::vector<std::size_t> labels)
    : _block(labels.size())
{
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t a = 0; a < labels.size(); ++a) {
        auto it = std::find_if(seen.begin(), seen.end(), [&](auto & s) { return s.first == labels[a]; });
        if (it == seen.end()) {
            seen.emplace_back(labels[a], seen.size());
            _block[a] = seen.size() - 1;
        }
        else
            _block[a] = it->second;
    }
    _count = seen.size();
}

auto PartitionCongruence::identity(std::size_t n) -> PartitionCongruence
{
    std::vector<std::size_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return PartitionCongruence{std::move(labels)};
}

auto PartitionCongruence::full(std::size_t n) -> PartitionCongruence
{
    return PartitionCongruence{std::vector<std::size_t>(n, 0)};
}

auto PartitionCongruence::blocks() const -> std::vector<std::vector<Element>>
{
    std::vector<std::vector<Element>> out(_count);
    for (std::size_t a = 0; a < _block.size(); ++a)
        out[_block[a]].push_back(static_cast<Element>(a));
    return out;
}

auto PartitionCongruence::refines(const PartitionCongruence & other) const -> bool
{
    // Every block of *this must map into a single block of other.
    std::vector<std::size_t> target(_count, static_cast<std::size_t>(-1));
    for (std::size_t a = 0; a < _block.size(); ++a) {
        auto & t = target[_block[a]];
        if (t == static_cast<std::size_t>(-1))
            t = other._block[a];
        else if (t != other._block[a])
            return false;
    }
    return true;
}

auto PartitionCongruence::meet(const PartitionCongruence & other) const -> PartitionCongruence
{
    std::vector<std::size_t> labels(_block.size());
    for (std::size_t a = 0; a < labels.size(); ++a)
        labels[a] = _block[a] * other._count + other._block[a];
    return PartitionCongruence{std::move(labels)};
}

auto PartitionCongruence::join(const PartitionCongruence & other) const -> PartitionCongruence
{
    UnionFind uf{_block.size()};
    std::vector<std::size_t> first_a(_count, static_cast<std::size_t>(-1)), first_b(other._count, static_cast<std::size_t>(-1));
    for (std::size_t a = 0; a < _block.size(); ++a) {
        auto & fa = first_a[_block[a]];
        if (fa == static_cast<std::size_t>(-1))
            fa = a;
        uf.unite(fa, a);
        auto & fb = first_b[other._block[a]];
        if (fb == static_cast<std::size_t>(-1))
            fb = a;
        uf.unite(fb, a);
    }
    return PartitionCongruence{uf.labels()};
}

auto PartitionCongruence::to_string() const -> std::string
{
    std::string out;
    for (auto & block : blocks()) {
        out += '{';
        for (std::size_t k = 0; k < block.size(); ++k) {
            if (k)
                out += ',';
            out += std::to_string(block[k]);
        }
        out += '}';
    }
    return out;
}

auto to_string(const CompatibilityWitness & w) -> std::string
{
    auto a = std::to_string(w.a), b = std::to_string(w.a_prime), c = std::to_string(w.c);
    if (w.on_left)
        return a + "~" + b + " but " + c + "·" + a + " and " + c + "·" + b + " are not related";
    return a + "~" + b + " but " + a + "·" + c + " and " + b + "·" + c + " are not related";
}

auto find_incompatibility(const CayleyTable & g, const PartitionCongruence & p)
    -> std::optional<CompatibilityWitness>
{
    if (p.size() != g.size())
        throw InvalidArgument("partition and table have different carriers");
    auto n = static_cast<Element>(g.size());
    for (Element a = 0; a < n; ++a)
        for (Element b = a + 1; b < n; ++b) {
            if (! p.related(a, b))
                continue;
            for (Element c = 0; c < n; ++c) {
                if (! p.related(g(a, c), g(b, c)))
                    return CompatibilityWitness{a, b, c, false};
                if (! p.related(g(c, a), g(c, b)))
                    return CompatibilityWitness{a, b, c, true};
            }
        }
    return std::nullopt;
}

auto is_congruence(const CayleyTable & g, const PartitionCongruence & p) -> bool
{
    return ! find_incompatibility(g, p);
}

auto principal_congruence(const CayleyTable & g, Element a, Element b) -> PartitionCongruence
{
    auto n = g.size();
    if (a >= n || b >= n)
        throw InvalidArgument("element outside the carrier");
    UnionFind uf{n};
    std::deque<std::pair<Element, Element>> pending{{a, b}};
    while (! pending.empty()) {
        auto [x, y] = pending.front();
        pending.pop_front();
        if (! uf.unite(x, y))
            continue;
        for (Element c = 0; c < n; ++c) {
            pending.emplace_back(g(x, c), g(y, c));
            pending.emplace_back(g(c, x), g(c, y));
        }
    }
    return PartitionCongruence{uf.labels()};
}

auto quotient(const CayleyTable & g, const PartitionCongruence & p) -> CayleyTable
{
    if (auto w = find_incompatibility(g, p))
        throw NotACongruence(to_string(*w));
    auto blocks = p.blocks();
    auto k = blocks.size();
    std::vector<Element> cells(k * k);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = 0; t < k; ++t)
            cells[s * k + t] = static_cast<Element>(p.block_of(g(blocks[s][0], blocks[t][0])));
    return CayleyTable{k, std::move(cells)};
}

CongruenceLattice::CongruenceLattice(std::vector<PartitionCongruence> elements)
    : _elements(std::move(elements))
{
    if (_elements.empty())
        throw InvalidArgument("a lattice needs at least one element");
    // Finer partitions first, so the bottom is element 0 and the top is last.
    std::sort(_elements.begin(), _elements.end(), [](auto & p, auto & q) {
        if (p.block_count() != q.block_count())
            return p.block_count() > q.block_count();
        return p < q;
    });
    _elements.erase(std::unique(_elements.begin(), _elements.end()), _elements.end());
    auto m = _elements.size();
    _meet.resize(m * m);
    _join.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            _meet[i * m + j] = index_of(_elements[i].meet(_elements[j]));
            _join[i * m + j] = index_of(_elements[i].join(_elements[j]));
        }
}

auto CongruenceLattice::index_of(const PartitionCongruence & p) const -> std::size_t
{
    auto it = std::find(_elements.begin(), _elements.end(), p);
    if (it == _elements.end())
        throw InvalidArgument("set of partitions is not closed under meet and join: missing " + p.to_string());
    return static_cast<std::size_t>(it - _elements.begin());
}

auto CongruenceLattice::atoms() const -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < size(); ++i) {
        bool covers = true;
        for (std::size_t j = 1; j < size() && covers; ++j)
            if (j != i && leq(j, i))
                covers = false;
        if (covers)
            out.push_back(i);
    }
    return out;
}

auto CongruenceLattice::height() const -> std::size_t
{
    // Elements are sorted so that i < j whenever i lies strictly below j.
    std::vector<std::size_t> longest(size(), 0);
    for (std::size_t j = 1; j < size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (leq(i, j))
                longest[j] = std::max(longest[j], longest[i] + 1);
    return longest[top()];
}

auto all_congruences(const CayleyTable & g) -> CongruenceLattice
{
    auto n = g.size();
    if (n > lattice_bound)
        throw BoundExceeded("congruence lattices limited to n <= " + std::to_string(lattice_bound));
    std::set<PartitionCongruence> found{PartitionCongruence::identity(n)};
    for (Element a = 0; a < n; ++a)
        for (Element b = a + 1; b < n; ++b)
            found.insert(principal_congruence(g, a, b));
    std::vector<PartitionCongruence> frontier{found.begin(), found.end()};
    while (! frontier.empty()) {
        std::vector<PartitionCongruence> next;
        std::vector<PartitionCongruence> current{found.begin(), found.end()};
        for (auto & p : frontier)
            for (auto & q : current) {
                auto j = p.join(q);
                if (found.insert(j).second)
                    next.push_back(j);
            }
        frontier = std::move(next);
    }
    return CongruenceLattice{{found.begin(), found.end()}};
}

auto is_sd_meet(const CongruenceLattice & lattice) -> bool
{
    auto m = lattice.size();
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            for (std::size_t z = 0; z < m; ++z)
                if (lattice.meet(x, y) == lattice.meet(x, z) && lattice.meet(x, lattice.join(y, z)) != lattice.meet(x, y))
                    return false;
    return true;
}

} // namespace cig
