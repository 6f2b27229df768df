#include <cig/model_search.hpp>

#include <algorithm>
#include <array>
#include <numeric>
#include <thread>

namespace cig {

namespace {
    constexpr std::size_t unconstrained_bound = 5;
    constexpr std::size_t constrained_bound = 6;
    constexpr std::size_t canonical_bound = 10;
    constexpr std::size_t max_stack = 64;

    auto all_permutations(std::size_t n) -> std::vector<std::vector<Element>>
    {
        std::vector<Element> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::vector<std::vector<Element>> out;
        do
            out.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return out;
    }

    // Backtracking over the cells of a partial table. Each identity instance
    // (an identity plus one argument tuple) watches a single cell; it is
    // re-evaluated only when that cell is assigned. Because all assignments
    // made while propagating belong to one decision level and are undone
    // together, watches never need restoring on backtrack.
    class Searcher
    {
    public:
        explicit Searcher(const SearchSpec & spec)
            : _n(spec.n)
            , _commutative(spec.commutative)
            , _idempotent(spec.idempotent)
            , _forbid(spec.forbid)
            , _table(_n * _n, -1)
            , _watch(_n * _n)
        {
            for (std::size_t i = 0; i < _n; ++i) {
                if (_idempotent)
                    _table[i * _n + i] = static_cast<std::int8_t>(i);
                for (std::size_t j = _commutative ? i : 0; j < _n; ++j)
                    if (i != j || ! _idempotent)
                        _cells.push_back(static_cast<int>(i * _n + j));
            }
            _compare = _cells;

            for (auto & p : all_permutations(_n)) {
                if (std::is_sorted(p.begin(), p.end()))
                    continue;
                Perm perm;
                perm.image = p;
                std::vector<Element> inverse(_n);
                for (std::size_t a = 0; a < _n; ++a)
                    inverse[p[a]] = static_cast<Element>(a);
                perm.source.resize(_n * _n);
                for (std::size_t i = 0; i < _n; ++i)
                    for (std::size_t j = 0; j < _n; ++j)
                        perm.source[i * _n + j] = static_cast<int>(inverse[i] * _n + inverse[j]);
                _perms.push_back(std::move(perm));
            }

            for (auto & id : spec.require)
                add_identity(id);
            _feasible = initial_propagation();
        }

        /// Runs the search; filter (if given) restricts the values of the
        /// first branching cell.
        auto run(const std::function<bool(const CayleyTable &)> & emit,
            const std::function<bool(std::size_t)> & filter = {}) -> void
        {
            if (! _feasible || ! orderly())
                return;
            _emit = &emit;
            _filter = filter ? &filter : nullptr;
            _stop = false;
            search(0, 0);
        }

    private:
        struct Perm
        {
            std::vector<Element> image;
            std::vector<int> source;
        };

        struct Compiled
        {
            std::vector<int> lhs, rhs;
        };

        struct Instance
        {
            std::uint32_t identity;
            std::array<std::uint8_t, 8> args;
        };

        struct SideResult
        {
            int value;
            int block;
            bool root_only;
        };

        enum class Outcome
        {
            keep,
            move,
            conflict
        };

        std::size_t _n;
        bool _commutative, _idempotent;
        std::vector<Identity> _forbid;
        std::vector<std::int8_t> _table;
        std::vector<int> _cells;
        std::vector<int> _compare;
        std::vector<Perm> _perms;
        std::vector<Compiled> _compiled;
        std::vector<Instance> _instances;
        std::vector<std::vector<std::uint32_t>> _watch;
        std::vector<int> _trail;
        bool _feasible = true;
        const std::function<bool(const CayleyTable &)> * _emit = nullptr;
        const std::function<bool(std::size_t)> * _filter = nullptr;
        bool _stop = false;

        auto key(int cell) const -> int
        {
            if (! _commutative)
                return cell;
            auto i = cell / static_cast<int>(_n), j = cell % static_cast<int>(_n);
            return i <= j ? cell : j * static_cast<int>(_n) + i;
        }

        auto add_identity(const Identity & id) -> void
        {
            auto vars = id.variables();
            if (vars.size() > 8)
                throw InvalidArgument("identities with more than 8 variables are not searchable");
            CompiledTerm lhs{id.lhs, vars}, rhs{id.rhs, vars};
            if (lhs.stack_depth() > max_stack || rhs.stack_depth() > max_stack)
                throw InvalidArgument("identity nests too deeply for the search kernel");
            auto index = static_cast<std::uint32_t>(_compiled.size());
            _compiled.push_back({{lhs.code().begin(), lhs.code().end()}, {rhs.code().begin(), rhs.code().end()}});

            auto k = vars.size();
            std::array<std::uint8_t, 8> args{};
            while (true) {
                _instances.push_back({index, args});
                std::size_t pos = k;
                while (pos > 0) {
                    --pos;
                    if (++args[pos] < _n)
                        break;
                    args[pos] = 0;
                    if (pos == 0)
                        return;
                }
                if (k == 0)
                    return;
            }
        }

        auto eval(const std::vector<int> & code, const std::array<std::uint8_t, 8> & args) const -> SideResult
        {
            int stack[max_stack];
            stack[0] = -1;
            std::size_t top = 0;
            int deep_block = -1, root_block = -1;
            auto last = code.size() - 1;
            for (std::size_t i = 0; i < code.size(); ++i) {
                auto op = code[i];
                if (op != CompiledTerm::product_op) {
                    stack[top++] = args[static_cast<std::size_t>(op)];
                    continue;
                }
                auto b = stack[--top];
                auto a = stack[top - 1];
                if (a < 0 || b < 0) {
                    stack[top - 1] = -1;
                    continue;
                }
                auto cell = a * static_cast<int>(_n) + b;
                auto v = _table[static_cast<std::size_t>(cell)];
                if (v < 0) {
                    if (i == last)
                        root_block = cell;
                    else if (deep_block < 0)
                        deep_block = cell;
                }
                stack[top - 1] = v;
            }
            if (stack[0] >= 0)
                return {stack[0], -1, false};
            return {-1, deep_block >= 0 ? deep_block : root_block, deep_block < 0};
        }

        auto assign(int cell, int value) -> void
        {
            auto c = static_cast<std::size_t>(cell);
            _table[c] = static_cast<std::int8_t>(value);
            if (_commutative)
                _table[(c % _n) * _n + c / _n] = static_cast<std::int8_t>(value);
            _trail.push_back(key(cell));
        }

        auto undo(std::size_t mark) -> void
        {
            while (_trail.size() > mark) {
                auto c = static_cast<std::size_t>(_trail.back());
                _trail.pop_back();
                _table[c] = -1;
                if (_commutative)
                    _table[(c % _n) * _n + c / _n] = -1;
            }
        }

        // Evaluates an instance, forcing a root cell when one side is known
        // and the other is blocked only at its outermost product.
        auto process(const Instance & inst, int & watch) -> Outcome
        {
            auto & code = _compiled[inst.identity];
            auto l = eval(code.lhs, inst.args);
            auto r = eval(code.rhs, inst.args);
            if (l.value >= 0 && r.value >= 0)
                return l.value == r.value ? Outcome::keep : Outcome::conflict;
            if (l.value >= 0 && r.root_only) {
                assign(r.block, l.value);
                return Outcome::keep;
            }
            if (r.value >= 0 && l.root_only) {
                assign(l.block, r.value);
                return Outcome::keep;
            }
            if (l.value < 0 && ! l.root_only)
                watch = l.block;
            else if (r.value < 0 && ! r.root_only)
                watch = r.block;
            else
                watch = l.value < 0 ? l.block : r.block;
            watch = key(watch);
            return Outcome::move;
        }

        auto propagate(std::size_t head) -> bool
        {
            while (head < _trail.size()) {
                auto & list = _watch[static_cast<std::size_t>(_trail[head++])];
                for (std::size_t i = 0; i < list.size();) {
                    int target = -1;
                    switch (process(_instances[list[i]], target)) {
                    case Outcome::conflict: return false;
                    case Outcome::keep: ++i; break;
                    case Outcome::move:
                        _watch[static_cast<std::size_t>(target)].push_back(list[i]);
                        list[i] = list.back();
                        list.pop_back();
                        break;
                    }
                }
            }
            return true;
        }

        auto initial_propagation() -> bool
        {
            for (std::uint32_t k = 0; k < _instances.size(); ++k) {
                int target = -1;
                switch (process(_instances[k], target)) {
                case Outcome::conflict: return false;
                case Outcome::keep: break;
                case Outcome::move: _watch[static_cast<std::size_t>(target)].push_back(k); break;
                }
            }
            return propagate(0);
        }

        // Rejects the node when some relabeling is already known to give a
        // smaller table on a fully determined prefix.
        auto orderly() const -> bool
        {
            for (auto & p : _perms) {
                for (auto pos : _compare) {
                    auto mine = _table[static_cast<std::size_t>(pos)];
                    auto src = _table[static_cast<std::size_t>(p.source[static_cast<std::size_t>(pos)])];
                    if (mine < 0 || src < 0)
                        break;
                    auto theirs = static_cast<int>(p.image[static_cast<std::size_t>(src)]);
                    if (theirs < mine)
                        return false;
                    if (theirs > mine)
                        break;
                }
            }
            return true;
        }

        auto leaf() -> void
        {
            std::vector<Element> cells(_table.begin(), _table.end());
            CayleyTable g{_n, std::move(cells)};
            for (auto & id : _forbid)
                if (check_identity(g, id))
                    return;
            if (! (*_emit)(g))
                _stop = true;
        }

        auto search(std::size_t next, std::size_t depth) -> void
        {
            while (next < _cells.size() && _table[static_cast<std::size_t>(_cells[next])] >= 0)
                ++next;
            if (next == _cells.size()) {
                leaf();
                return;
            }
            auto cell = _cells[next];
            for (std::size_t v = 0; v < _n && ! _stop; ++v) {
                if (depth == 0 && _filter && ! (*_filter)(v))
                    continue;
                auto mark = _trail.size();
                assign(cell, static_cast<int>(v));
                if (propagate(mark) && orderly())
                    search(next + 1, depth + 1);
                undo(mark);
            }
        }
    };

    auto check_spec(const SearchSpec & spec) -> void
    {
        if (spec.n < 1)
            throw InvalidArgument("carrier size must be at least 1");
        if (spec.n > search_bound(spec))
            throw BoundExceeded("n=" + std::to_string(spec.n) + " exceeds the search bound " +
                std::to_string(search_bound(spec)) + " for this spec");
        for (auto & r : spec.require)
            for (auto & f : spec.forbid)
                if (r == f)
                    throw InvalidArgument("identity both required and forbidden: " + r.to_string());
    }
}

auto search_bound(const SearchSpec & spec) -> std::size_t
{
    return spec.require.empty() ? unconstrained_bound : constrained_bound;
}

auto canonical_form(const CayleyTable & g) -> CayleyTable
{
    auto n = g.size();
    if (n > canonical_bound)
        throw BoundExceeded("canonical form limited to n <= " + std::to_string(canonical_bound));
    if (n <= 1)
        return g;
    std::vector<Element> best{g.cells().begin(), g.cells().end()};
    std::vector<Element> p(n), inverse(n);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) {
        for (std::size_t a = 0; a < n; ++a)
            inverse[p[a]] = static_cast<Element>(a);
        // Compare the relabeled table against best position by position.
        int cmp = 0;
        for (std::size_t k = 0; k < n * n && cmp == 0; ++k) {
            auto v = p[g(inverse[k / n], inverse[k % n])];
            cmp = v < best[k] ? -1 : v > best[k] ? 1 : 0;
        }
        if (cmp < 0)
            for (std::size_t k = 0; k < n * n; ++k)
                best[k] = p[g(inverse[k / n], inverse[k % n])];
    }
    return CayleyTable{n, std::move(best)};
}

auto is_canonical(const CayleyTable & g) -> bool { return canonical_form(g) == g; }

auto isomorphic(const CayleyTable & g, const CayleyTable & h) -> bool
{
    return g.size() == h.size() && canonical_form(g) == canonical_form(h);
}

auto for_each_model(const SearchSpec & spec, const std::function<bool(const CayleyTable &)> & emit) -> void
{
    check_spec(spec);
    Searcher{spec}.run(emit);
}

auto enumerate_models(const SearchSpec & spec, unsigned workers) -> std::vector<CayleyTable>
{
    check_spec(spec);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(spec.n)));
    std::vector<std::vector<CayleyTable>> found(workers);
    auto work = [&](unsigned w) {
        std::function<bool(const CayleyTable &)> emit = [&](const CayleyTable & g) {
            found[w].push_back(g);
            return true;
        };
        std::function<bool(std::size_t)> filter = [&](std::size_t v) { return v % workers == w; };
        Searcher{spec}.run(emit, workers > 1 ? filter : std::function<bool(std::size_t)>{});
    };
    if (workers == 1)
        work(0);
    else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back(work, w);
    }
    std::vector<CayleyTable> out;
    for (auto & part : found)
        out.insert(out.end(), part.begin(), part.end());
    std::sort(out.begin(), out.end());
    return out;
}

auto find_separating_model(const std::vector<Identity> & sat, const std::vector<Identity> & unsat, std::size_t max_n)
    -> std::optional<SeparatingModel>
{
    if (max_n > constrained_bound)
        throw BoundExceeded("separation search limited to n <= " + std::to_string(constrained_bound));
    SearchSpec spec;
    spec.require = sat;
    spec.forbid = unsat;
    for (std::size_t n = 1; n <= max_n; ++n) {
        spec.n = n;
        if (n > search_bound(spec))
            throw BoundExceeded("no separating model up to n=" + std::to_string(n - 1) +
                " and the unconstrained search stops there");
        std::optional<CayleyTable> hit;
        for_each_model(spec, [&](const CayleyTable & g) {
            hit = g;
            return false;
        });
        if (hit) {
            SeparatingModel result{*hit, {}};
            for (auto & id : unsat)
                result.witnesses.push_back(*find_violation(*hit, id));
            return result;
        }
    }
    return std::nullopt;
}

auto variety_identities(VarietyName variety) -> std::vector<Identity>
{
    if (auto id = defining_identity(variety))
        return {*id};
    return {};
}

auto count_models(std::size_t n, VarietyName variety) -> std::size_t
{
    SearchSpec spec;
    spec.n = n;
    spec.require = variety_identities(variety);
    return enumerate_models(spec).size();
}

} // namespace cig
