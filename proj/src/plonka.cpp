#include <cig/plonka.hpp>

#include <cig/text_format.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace cig {

namespace {
    auto var(const char * name) -> Term { return Term::variable(name); }

    auto apply(const Term & join, const Term & a, const Term & b) -> Term
    {
        return substitute(join, {{"x", a}, {"y", b}});
    }

    auto members_text(const std::vector<Element> & ids) -> std::string
    {
        std::string out;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (k)
                out += ' ';
            out += std::to_string(ids[k]);
        }
        return out;
    }

    auto factorial(std::size_t m) -> std::size_t
    {
        std::size_t f = 1;
        for (std::size_t k = 2; k <= m; ++k)
            f *= k;
        return f;
    }

    auto p_status(const CayleyTable & g, const CayleyTable & j) -> P5Status
    {
        P5Status st;
        st.holds.fill(true);
        auto n = static_cast<Element>(g.size());
        auto fail = [&](int k, Assignment a) {
            if (st.holds[static_cast<std::size_t>(k)]) {
                st.holds[static_cast<std::size_t>(k)] = false;
                st.witness[static_cast<std::size_t>(k)] = std::move(a);
            }
        };
        for (Element x = 0; x < n; ++x)
            if (j(x, x) != x)
                fail(0, {{"x", x}});
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                for (Element z = 0; z < n; ++z) {
                    if (j(j(x, y), z) != j(x, j(y, z)))
                        fail(1, {{"x", x}, {"y", y}, {"z", z}});
                    if (j(x, j(y, z)) != j(x, j(z, y)))
                        fail(2, {{"x", x}, {"y", y}, {"z", z}});
                    // Here (x, y, z) plays (y, x1, x2) and (x1, x2, y).
                    if (j(x, g(y, z)) != j(j(x, y), z))
                        fail(3, {{"y", x}, {"x1", y}, {"x2", z}});
                    if (j(g(x, y), z) != g(j(x, z), j(y, z)))
                        fail(4, {{"x1", x}, {"x2", y}, {"y", z}});
                }
        return st;
    }

    auto map_key(std::size_t s, std::size_t t) { return std::pair{s, t}; }
}

auto join_table(const CayleyTable & g, const Term & join) -> CayleyTable
{
    CompiledTerm term{join, {"x", "y"}};
    auto n = g.size();
    std::vector<Element> cells(n * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            Element args[2] = {a, b};
            cells[a * n + b] = term(g, args);
        }
    return CayleyTable{n, std::move(cells)};
}

auto t2_join() -> Term { return var("y") * (var("x") * var("y")); }

auto plonka_identities(const Term & join) -> std::array<Identity, 5>
{
    auto x = var("x"), y = var("y"), z = var("z"), x1 = var("x1"), x2 = var("x2");
    auto j = [&](const Term & a, const Term & b) { return apply(join, a, b); };
    return {{
        {j(x, x), x},
        {j(j(x, y), z), j(x, j(y, z))},
        {j(x, j(y, z)), j(x, j(z, y))},
        {j(y, x1 * x2), j(j(y, x1), x2)},
        {j(x1 * x2, y), j(x1, y) * j(x2, y)},
    }};
}

auto P5Status::to_string() const -> std::string
{
    std::string ok, failed;
    for (std::size_t k = 0; k < 5; ++k) {
        auto name = "P" + std::to_string(k + 1);
        if (holds[k])
            ok += (ok.empty() ? "" : " ") + name;
        else {
            failed += "; " + name + " FAIL witness=";
            bool first = true;
            for (auto & [v, e] : *witness[k]) {
                failed += (first ? "" : " ") + v + "=" + std::to_string(e);
                first = false;
            }
        }
    }
    return (ok.empty() ? "none" : ok) + " ok" + failed;
}

auto check_pseudopartition(const CayleyTable & g, const Term & join) -> P5Status
{
    return p_status(g, join_table(g, join));
}

auto sigma(const CayleyTable & g, const Term & join) -> PartitionCongruence
{
    auto j = join_table(g, join);
    auto n = static_cast<Element>(g.size());
    auto related = [&](Element a, Element b) { return j(a, b) == a && j(b, a) == b; };
    std::vector<std::size_t> labels(n);
    for (Element a = 0; a < n; ++a) {
        labels[a] = a;
        for (Element b = 0; b < a; ++b)
            if (related(a, b)) {
                labels[a] = labels[b];
                break;
            }
    }
    PartitionCongruence p{labels};
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (related(a, b) != p.related(a, b))
                throw NotACongruence("the relation is not an equivalence: check " + std::to_string(a) + "," +
                    std::to_string(b));
    if (auto w = find_incompatibility(g, p))
        throw NotACongruence(to_string(*w));
    return p;
}

auto PlonkaSystem::carrier_size() const -> std::size_t
{
    std::size_t n = 0;
    for (auto & f : fibers)
        n += f.members.size();
    return n;
}

auto make_system(CayleyTable replica, std::vector<CayleyTable> fibers,
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>> maps) -> PlonkaSystem
{
    PlonkaSystem sys{std::move(replica), {}, std::move(maps)};
    Element next = 0;
    for (auto & t : fibers) {
        Fiber f{{}, t};
        for (std::size_t k = 0; k < t.size(); ++k)
            f.members.push_back(next++);
        sys.fibers.push_back(std::move(f));
    }
    return sys;
}

auto validate_system(const PlonkaSystem & sys) -> void
{
    auto k = sys.replica.size();
    if (sys.fibers.size() != k)
        throw InvalidArgument("need one fiber per replica element");
    if (! check_property(sys.replica, Property::semilattice))
        throw InvalidArgument("replica is not a semilattice");
    std::vector<bool> seen(sys.carrier_size(), false);
    for (auto & f : sys.fibers) {
        if (f.members.size() != f.table.size() || f.members.empty())
            throw InvalidArgument("fiber member list does not match its table");
        for (auto m : f.members) {
            if (m >= seen.size() || seen[m])
                throw InvalidArgument("fiber members do not partition the carrier");
            seen[m] = true;
        }
    }
    if (! sys.maps)
        return;
    auto & maps = *sys.maps;
    auto get = [&](std::size_t s, std::size_t t) -> const std::vector<Element> & {
        auto it = maps.find(map_key(s, t));
        if (it == maps.end())
            throw InvalidArgument("missing map " + std::to_string(s) + " -> " + std::to_string(t));
        return it->second;
    };
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = 0; t < k; ++t) {
            if (! sys.leq(s, t)) {
                if (maps.contains(map_key(s, t)))
                    throw InvalidArgument("map given between incomparable fibers");
                continue;
            }
            auto & phi = get(s, t);
            auto & from = sys.fibers[s].table;
            auto & to = sys.fibers[t].table;
            if (phi.size() != from.size())
                throw InvalidArgument("map has the wrong domain size");
            for (auto v : phi)
                if (v >= to.size())
                    throw InvalidArgument("map image outside its target fiber");
            for (Element a = 0; a < from.size(); ++a) {
                if (s == t && phi[a] != a)
                    throw InvalidArgument("map from a fiber to itself must be the identity");
                for (Element b = 0; b < from.size(); ++b)
                    if (phi[from(a, b)] != to(phi[a], phi[b]))
                        throw InvalidArgument("map " + std::to_string(s) + " -> " + std::to_string(t) +
                            " is not a homomorphism");
            }
        }
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t u = 0; u < k; ++u)
                if (sys.leq(s, t) && sys.leq(t, u)) {
                    auto & st = get(s, t);
                    auto & tu = get(t, u);
                    auto & su = get(s, u);
                    for (Element a = 0; a < st.size(); ++a)
                        if (tu[st[a]] != su[a])
                            throw InvalidArgument("maps do not compose");
                }
}

auto decompose(const CayleyTable & g, const Term & join) -> PlonkaSystem
{
    auto j = join_table(g, join);
    auto status = p_status(g, j);
    if (! status.pseudopartition())
        throw NotPseudopartition(status.to_string());
    auto p = sigma(g, join);

    PlonkaSystem sys;
    sys.replica = quotient(g, p);
    if (! check_property(sys.replica, Property::semilattice))
        throw NotPseudopartition("quotient by sigma is not a semilattice");
    std::vector<Element> local(g.size());
    for (auto & block : p.blocks()) {
        for (std::size_t k = 0; k < block.size(); ++k)
            local[block[k]] = static_cast<Element>(k);
        sys.fibers.push_back({block, restrict_to(g, block)});
    }

    if (status.holds[4]) {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>> maps;
        auto k = sys.fibers.size();
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = 0; t < k; ++t) {
                if (! sys.leq(s, t))
                    continue;
                auto & target = sys.fibers[t].members;
                std::vector<Element> phi;
                for (auto x : sys.fibers[s].members) {
                    // x v b must not depend on the choice of b in the target.
                    auto image = j(x, target.front());
                    for (auto b : target)
                        if (j(x, b) != image)
                            throw NotPseudopartition("x v b depends on the choice of b");
                    if (p.block_of(image) != t)
                        throw NotPseudopartition("x v b leaves the fiber of b");
                    phi.push_back(local[image]);
                }
                maps.emplace(map_key(s, t), std::move(phi));
            }
        sys.maps = std::move(maps);
    }
    validate_system(sys);
    return sys;
}

auto plonka_sum(const PlonkaSystem & sys) -> CayleyTable
{
    if (! sys.maps)
        throw MissingFiberMaps("the system carries no fiber maps");
    validate_system(sys);
    auto n = sys.carrier_size();
    std::vector<std::size_t> block(n);
    std::vector<Element> local(n);
    for (std::size_t s = 0; s < sys.fibers.size(); ++s)
        for (std::size_t k = 0; k < sys.fibers[s].members.size(); ++k) {
            block[sys.fibers[s].members[k]] = s;
            local[sys.fibers[s].members[k]] = static_cast<Element>(k);
        }
    auto & maps = *sys.maps;
    std::vector<Element> cells(n * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            auto s = block[a], t = block[b];
            auto u = static_cast<std::size_t>(sys.replica(static_cast<Element>(s), static_cast<Element>(t)));
            auto x = maps.at(map_key(s, u))[local[a]];
            auto y = maps.at(map_key(t, u))[local[b]];
            cells[a * n + b] = sys.fibers[u].members[sys.fibers[u].table(x, y)];
        }
    return CayleyTable{n, std::move(cells)};
}

auto adjoin_infinity(const CayleyTable & g) -> CayleyTable
{
    auto n = g.size();
    auto inf = static_cast<Element>(n);
    return CayleyTable::from_function(n + 1, [&](Element a, Element b) { return a == inf || b == inf ? inf : g(a, b); });
}

auto cie_cyclic(std::size_t n) -> CayleyTable
{
    if (n < 1)
        throw InvalidArgument("modulus must be at least 1");
    if (n % 2 == 0)
        throw EvenModulus("2 has no inverse modulo " + std::to_string(n));
    auto k = (n + 1) / 2;
    return CayleyTable::from_function(n, [&](Element a, Element b) { return static_cast<Element>(k * (a + b) % n); });
}

auto cid_exponent(const CayleyTable & g) -> int
{
    for (auto p : {Property::commutative, Property::idempotent, Property::distributive})
        if (! check_property(g, p))
            throw NotCID("table is not " + property_name(p));
    auto n = g.size();
    auto limit = factorial(n);
    // The tables of x y^j, built incrementally; the sequence is eventually
    // periodic, so a repeat means no later exponent can be new.
    auto power = g;
    std::set<CayleyTable> seen;
    for (std::size_t e = 1; e <= limit; ++e) {
        if (e > 1)
            power = CayleyTable::from_function(n, [&](Element a, Element b) { return g(power(a, b), b); });
        if (! seen.insert(power).second)
            break;
        if (p_status(g, power).pseudopartition())
            return static_cast<int>(e);
    }
    throw NoExponent("no power term x y^j with j <= " + std::to_string(limit) + " is a pseudopartition operation");
}

auto to_text(const PlonkaSystem & sys) -> std::string
{
    auto out = to_alg(sys.replica);
    for (std::size_t s = 0; s < sys.fibers.size(); ++s) {
        out += "# fiber " + std::to_string(s) + " elements " + members_text(sys.fibers[s].members) + "\n";
        out += to_alg(sys.fibers[s].table);
    }
    if (sys.maps)
        for (auto & [key, phi] : *sys.maps) {
            std::vector<Element> images;
            for (auto v : phi)
                images.push_back(sys.fibers[key.second].members[v]);
            out += "# map " + std::to_string(key.first) + " " + std::to_string(key.second) + ": " + members_text(images) + "\n";
        }
    return out;
}

auto parse_system(const std::string & text) -> PlonkaSystem
{
    std::vector<std::string> lines;
    {
        std::istringstream in{text};
        std::string line;
        while (std::getline(in, line))
            lines.push_back(line);
    }
    std::size_t pos = 0;
    auto is_blank = [](const std::string & l) { return l.find_first_not_of(" \t\r") == std::string::npos; };
    auto read_block = [&]() -> CayleyTable {
        while (pos < lines.size() && is_blank(lines[pos]))
            ++pos;
        std::string block;
        if (pos >= lines.size())
            throw ParseError("expected a table");
        auto n = std::stoul(lines[pos]);
        for (std::size_t r = 0; r <= n; ++r) {
            if (pos >= lines.size())
                throw ParseError("table ends early");
            block += lines[pos++] + "\n";
        }
        return parse_alg(block);
    };

    PlonkaSystem sys;
    while (pos < lines.size() && (is_blank(lines[pos]) || lines[pos].starts_with("#")))
        ++pos;
    sys.replica = read_block();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>> global_maps;
    while (pos < lines.size()) {
        auto & line = lines[pos];
        if (line.starts_with("# fiber ")) {
            std::istringstream head{line.substr(8)};
            std::size_t id = 0;
            std::string word;
            if (! (head >> id >> word) || word != "elements" || id != sys.fibers.size())
                throw ParseError("bad fiber header '" + line + "'");
            Fiber f;
            Element e = 0;
            while (head >> e)
                f.members.push_back(e);
            ++pos;
            f.table = read_block();
            sys.fibers.push_back(std::move(f));
        }
        else if (line.starts_with("# map ")) {
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw ParseError("bad map line '" + line + "'");
            std::istringstream head{line.substr(6, colon - 6)}, body{line.substr(colon + 1)};
            std::size_t s = 0, t = 0;
            if (! (head >> s >> t))
                throw ParseError("bad map line '" + line + "'");
            std::vector<Element> images;
            Element e = 0;
            while (body >> e)
                images.push_back(e);
            global_maps[{s, t}] = std::move(images);
            ++pos;
        }
        else if (is_blank(line) || line.starts_with("#"))
            ++pos;
        else
            throw ParseError("unexpected line '" + line + "'");
    }
    if (! global_maps.empty()) {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>> maps;
        for (auto & [key, images] : global_maps) {
            if (key.second >= sys.fibers.size())
                throw ParseError("map names an unknown fiber");
            auto & members = sys.fibers[key.second].members;
            std::vector<Element> phi;
            for (auto e : images) {
                auto it = std::find(members.begin(), members.end(), e);
                if (it == members.end())
                    throw ParseError("map image " + std::to_string(e) + " is not in fiber " + std::to_string(key.second));
                phi.push_back(static_cast<Element>(it - members.begin()));
            }
            maps[key] = std::move(phi);
        }
        sys.maps = std::move(maps);
    }
    validate_system(sys);
    return sys;
}

} // namespace cig
