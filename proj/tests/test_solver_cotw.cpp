#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <tuple>

#include "selcol/generators.hpp"
#include "selcol/io.hpp"
#include "selcol/oracle.hpp"
#include "selcol/solver_cotw.hpp"
#include "selcol/verify.hpp"
#include "support.hpp"

using namespace selcol;

namespace {

using Entry = std::tuple<PartMask, std::vector<Vertex>, int>;

// Clique cover number of h[verts]: chromatic number of the complement on verts.
int cover_number(const Graph& h, const std::vector<Vertex>& verts)
{
    return ref::chromatic_number(complement(h), verts);
}

// All (S, Q, l) such that some Y below the bag hits exactly the parts in S once each,
// Q avoids those parts and repeats none, and Y + Q splits into exactly l cliques of h.
std::set<Entry> expected_entries(const Instance& h, const NiceTreeDecomposition& ntd, int node)
{
    const auto& bag = ntd.nodes[node].bag;
    std::vector<Vertex> below;
    for (Vertex v : ref::subtree_vertices(ntd, node))
        if (!std::binary_search(bag.begin(), bag.end(), v))
            below.push_back(v);
    std::set<Entry> out;
    for (const auto& y : ref::subsets(below)) {
        PartMask S = 0;
        bool distinct = true;
        for (Vertex v : y) {
            PartMask b = PartMask{1} << h.part_of(v);
            distinct = distinct && !(S & b);
            S |= b;
        }
        if (!distinct)
            continue;
        for (const auto& q : ref::subsets(bag)) {
            PartMask used = S;
            bool ok = true;
            for (Vertex v : q) {
                PartMask b = PartMask{1} << h.part_of(v);
                ok = ok && !(used & b);
                used |= b;
            }
            if (!ok)
                continue;
            std::vector<Vertex> all = y;
            all.insert(all.end(), q.begin(), q.end());
            int lo = cover_number(h.graph(), all);
            int hi = std::min(static_cast<int>(all.size()), h.k());
            for (int l = lo; l <= hi; ++l)
                out.insert({S, q, l});
        }
    }
    return out;
}

std::set<Entry> actual_entries(const ScpTable& t)
{
    std::set<Entry> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& key = t.key(static_cast<int>(i));
        out.insert({key.parts, t.members(key.covered), key.cliques});
    }
    return out;
}

NiceTreeDecomposition nice_of(const Graph& g) { return make_nice(heuristic_decompose(g)); }

bool has_note(const Verdict& v, const std::string& note)
{
    return std::find(v.stats.notes.begin(), v.stats.notes.end(), note) != v.stats.notes.end();
}

}  // namespace

TEST_CASE("early_reject examples")
{
    CHECK(early_reject(5, 1, 0));
    CHECK_FALSE(early_reject(4, 2, 1));
    CHECK(early_reject(5, 2, 1));
    CHECK_FALSE(early_reject(1, 1, 0));
    CHECK_FALSE(early_reject(0, 1, 0));
}

TEST_CASE("early_reject never fires on YES instances")
{
    std::mt19937_64 rng(107);
    int yes = 0;
    for (int round = 0; round < 300; ++round) {
        int n = 2 + static_cast<int>(rng() % 9);
        int p = 1 + static_cast<int>(rng() % std::min(n, 6));
        int k = 1 + static_cast<int>(rng() % 3);
        Instance inst = ref::random_instance(rng, n, 0.6, p, k);
        if (!ref::selective(inst))
            continue;
        ++yes;
        int w = width(heuristic_decompose(complement(inst.graph())));
        CHECK_FALSE(early_reject(p, k, w));
    }
    CHECK(yes > 50);
}

TEST_CASE("leaf and introduce")
{
    ScpTable leaf = scp_leaf();
    std::vector<Vertex> none;
    CHECK(leaf.query(0, none, 0));
    CHECK_FALSE(leaf.query(0, none, 1));
    std::vector<Vertex> v0{0};
    CHECK_THROWS_AS(leaf.query(0, v0, 1), std::invalid_argument);

    Instance h(path_graph(2), {{0}, {1}}, 2);
    ScpTable a = scp_introduce(h, NiceNode{NiceKind::introduce, 0, {0}, {0}}, leaf);
    CHECK(a.query(0, none, 0));
    CHECK(a.query(0, v0, 1));
    CHECK_FALSE(a.query(0, v0, 0));
    CHECK(actual_entries(a) == std::set<Entry>{{0, {}, 0}, {0, {0}, 1}});

    ScpTable b = scp_introduce(h, NiceNode{NiceKind::introduce, 1, {0, 1}, {0}}, a);
    std::vector<Vertex> both{0, 1}, v1{1};
    CHECK(b.query(0, both, 1));  // the edge is one clique
    CHECK(b.query(0, both, 2));
    CHECK(b.query(0, v1, 1));
    CHECK_FALSE(b.query(0, both, 0));

    Instance same(path_graph(2), {{0, 1}}, 2);
    ScpTable s0 = scp_introduce(same, NiceNode{NiceKind::introduce, 0, {0}, {0}}, leaf);
    ScpTable s1 = scp_introduce(same, NiceNode{NiceKind::introduce, 1, {0, 1}, {0}}, s0);
    for (int l = 0; l <= 2; ++l)
        CHECK_FALSE(s1.query(0, both, l));
}

TEST_CASE("single vertex forget chain")
{
    Instance one(Graph(1), {{0}}, 1);
    NiceTreeDecomposition ntd = nice_of(one.graph());
    auto tables = compute_scp_tables(one, ntd);
    std::vector<Vertex> none;
    CHECK(tables[ntd.root].query(1, none, 1));
    CHECK(tables[ntd.root].query(0, none, 0));
    CHECK_FALSE(tables[ntd.root].query(1, none, 0));
}

TEST_CASE("forget keeps a part hit below")
{
    // two isolated vertices of one part, a path decomposition forgetting 0 first
    Instance h(Graph(2), {{0, 1}}, 1);
    NiceTreeDecomposition ntd;
    ntd.nodes = {{NiceKind::leaf, -1, {}, {}},
                 {NiceKind::introduce, 0, {0}, {0}},
                 {NiceKind::forget, 0, {}, {1}},
                 {NiceKind::introduce, 1, {1}, {2}},
                 {NiceKind::forget, 1, {}, {3}}};
    ntd.root = 4;
    REQUIRE_FALSE(validate_nice(h.graph(), ntd));
    auto tables = compute_scp_tables(h, ntd);
    std::vector<Vertex> none, v1{1};
    CHECK(tables[3].query(1, none, 1));
    CHECK_FALSE(tables[3].query(1, v1, 1));  // v1 shares the part already in S
    CHECK(tables[4].query(1, none, 1));
    for (int x = 0; x < 5; ++x)
        CHECK(actual_entries(tables[x]) == expected_entries(h, ntd, x));
}

TEST_CASE("join combines disjoint parts")
{
    Instance h(Graph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}}), {{1}, {2}, {0}}, 2);
    NiceTreeDecomposition ntd;
    ntd.nodes = {{NiceKind::leaf, -1, {}, {}},
                 {NiceKind::introduce, 0, {0}, {0}},
                 {NiceKind::introduce, 1, {0, 1}, {1}},
                 {NiceKind::forget, 1, {0}, {2}},
                 {NiceKind::leaf, -1, {}, {}},
                 {NiceKind::introduce, 0, {0}, {4}},
                 {NiceKind::introduce, 2, {0, 2}, {5}},
                 {NiceKind::forget, 2, {0}, {6}},
                 {NiceKind::join, -1, {0}, {3, 7}},
                 {NiceKind::forget, 0, {}, {8}}};
    ntd.root = 9;
    REQUIRE_FALSE(validate_nice(h.graph(), ntd));
    auto tables = compute_scp_tables(h, ntd);
    std::vector<Vertex> none, s{0};
    CHECK(tables[3].query(1, none, 1));
    CHECK(tables[7].query(2, none, 1));
    CHECK(tables[8].query(3, none, 2));
    CHECK(tables[8].query(3, s, 2));  // {0,1} and {2} or {0,2} and {1}
    CHECK_FALSE(tables[8].query(3, s, 1));  // 1 and 2 are not adjacent
    CHECK(tables[8].query(0, none, 0));
    CHECK(actual_entries(tables[8]) == expected_entries(h, ntd, 8));
    Verdict v = solve_scp(h, ntd);
    CHECK(v.answer == Answer::yes);
}

TEST_CASE("tables equal the brute-force semantics at every node")
{
    std::mt19937_64 rng(109);
    int nodes = 0;
    for (int round = 0; round < 60; ++round) {
        int n = 2 + static_cast<int>(rng() % 6);
        int p = 1 + static_cast<int>(rng() % std::min(n, 4));
        int k = 1 + static_cast<int>(rng() % 3);
        Instance h = ref::random_instance(rng, n, 0.5, p, k);
        NiceTreeDecomposition ntd = nice_of(h.graph());
        auto tables = compute_scp_tables(h, ntd);
        for (std::size_t x = 0; x < ntd.nodes.size(); ++x) {
            CHECK(actual_entries(tables[x]) == expected_entries(h, ntd, static_cast<int>(x)));
            ++nodes;
        }
    }
    CHECK(nodes > 300);
}

TEST_CASE("zero conditions hold for every stored key")
{
    std::mt19937_64 rng(113);
    for (int round = 0; round < 60; ++round) {
        Instance h = ref::random_instance(rng, 9, 0.5, 4, 1 + static_cast<int>(rng() % 3));
        NiceTreeDecomposition ntd = nice_of(h.graph());
        auto tables = compute_scp_tables(h, ntd);
        for (const auto& t : tables) {
            for (std::size_t i = 0; i < t.size(); ++i) {
                const auto& key = t.key(static_cast<int>(i));
                PartMask q = 0;
                bool repeat = false;
                for (Vertex v : t.members(key.covered)) {
                    PartMask b = PartMask{1} << h.part_of(v);
                    repeat = repeat || (q & b);
                    q |= b;
                }
                CHECK_FALSE(repeat);
                CHECK((q & key.parts) == 0);
                CHECK(key.cliques >= 0);
                CHECK(key.cliques <= h.k());
            }
        }
        std::vector<Vertex> outside{static_cast<Vertex>(h.num_vertices())};
        CHECK_THROWS_AS(tables[ntd.root].query(0, outside, 0), std::invalid_argument);
    }
}

TEST_CASE("solve_cotw examples")
{
    Instance empty(Graph(3), {{0}, {1}, {2}}, 1);
    Verdict a = solve_cotw(empty);
    CHECK(a.answer == Answer::yes);
    CHECK(a.witness->selected == std::vector<Vertex>{0, 1, 2});
    CHECK(is_valid_solution(empty, *a.witness));
    CHECK(a.stats.params.at("cliques") == 1);

    Instance k5(complete_graph(5), {{0}, {1}, {2}, {3}, {4}}, 1);
    Verdict b = solve_cotw(k5);
    CHECK(b.answer == Answer::no);
    CHECK(has_note(b, "early reject: p > k * (cowidth + 1)"));
    CHECK(b.stats.params.at("cowidth") == 0);

    Instance f = ref::sample();
    Verdict c = solve_cotw(f);
    CHECK(c.answer == Answer::yes);
    CHECK(is_valid_solution(f, *c.witness));
    CHECK_FALSE(c.witness->cliques);
}

TEST_CASE("solve_cotw matches brute force")
{
    std::mt19937_64 rng(127);
    int no = 0, yes = 0;
    for (int round = 0; round < 300; ++round) {
        int n = 1 + static_cast<int>(rng() % 10);
        int p = 1 + static_cast<int>(rng() % std::min(n, 6));
        int k = 1 + static_cast<int>(rng() % 3);
        Instance inst = ref::random_instance(rng, n, 0.3 + 0.2 * static_cast<double>(rng() % 3), p, k);
        Verdict expect = brute_force(inst);
        Verdict got = solve_cotw(inst);
        CHECK(got.answer == expect.answer);
        (got.answer == Answer::yes ? yes : no) += 1;
        if (got.witness) {
            CHECK(is_valid_solution(inst, *got.witness));
            auto colors = *got.witness->coloring;
            for (auto [v, c] : colors)
                CHECK(c <= k);
        }
    }
    CHECK(yes > 30);
    CHECK(no > 30);
}

TEST_CASE("witness cliques fit inside a bag of the complement decomposition")
{
    std::mt19937_64 rng(131);
    for (int round = 0; round < 150; ++round) {
        Instance inst = ref::random_instance(rng, 9, 0.5, 4, 2);
        Instance h = inst.with_graph(complement(inst.graph()));
        NiceTreeDecomposition ntd = nice_of(h.graph());
        Verdict v = solve_scp(h, ntd);
        if (v.answer != Answer::yes)
            continue;
        REQUIRE(v.witness->cliques);
        Solution partition = *v.witness;
        partition.coloring.reset();
        CHECK(is_valid_solution(h, partition));
        for (const auto& c : *v.witness->cliques) {
            bool inside = false;
            for (const auto& nd : ntd.nodes)
                inside = inside || std::includes(nd.bag.begin(), nd.bag.end(), c.begin(), c.end());
            CHECK(inside);
        }
    }
}

TEST_CASE("supplied complement decomposition")
{
    Instance f = ref::sample();
    CotwOptions opts;
    opts.complement_td = heuristic_decompose(complement(f.graph()));
    CHECK(solve_cotw(f, opts).answer == Answer::yes);
    opts.complement_td = TreeDecomposition{{{0, 1}}, {}};
    CHECK_THROWS_AS(solve_cotw(f, opts), std::invalid_argument);
}

TEST_CASE("threads do not change the verdict")
{
    std::mt19937_64 rng(137);
    for (int round = 0; round < 40; ++round) {
        Instance inst = ref::random_instance(rng, 10, 0.6, 5, 2);
        CotwOptions one, many;
        many.threads = 4;
        CHECK(verdict_to_json(solve_cotw(inst, one)) == verdict_to_json(solve_cotw(inst, many)));
    }
}

TEST_CASE("capacity errors")
{
    std::vector<std::vector<Vertex>> singletons;
    for (Vertex v = 0; v < 26; ++v)
        singletons.push_back({v});
    Instance many(complete_graph(26), singletons, 26);
    CHECK_THROWS_AS(solve_cotw(many), CapacityError);

    std::vector<Vertex> all;
    for (Vertex v = 0; v < 22; ++v)
        all.push_back(v);
    Instance wide(Graph(22), {all}, 1);
    CHECK_THROWS_AS(solve_cotw(wide), CapacityError);
    CotwOptions roomy;
    roomy.max_bag = 32;
    CHECK(solve_cotw(wide, roomy).answer == Answer::yes);
}
