#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "dense_oracle.hpp"
#include "hanoi/errors.hpp"
#include "hanoi/topology.hpp"

using namespace hanoi;

TEST_CASE("factorize examples")
{
    auto l = factorize(3, 4);
    CHECK(l.level == 0);
    CHECK(l.index == 1);
    l = factorize(12, 4);
    CHECK(l.level == 2);
    CHECK(l.index == 1);
    l = factorize(8, 4);
    CHECK(l.level == 3);
    CHECK(l.index == 0);
}

TEST_CASE("factorize rejects vertex 0 and out-of-range vertices")
{
    CHECK_THROWS_AS(factorize(0, 4), NoFactorization);
    CHECK_THROWS_AS(factorize(16, 4), DomainError);
    CHECK_THROWS_AS(factorize(1, 1), DomainError);
}

TEST_CASE("compose examples and range checks")
{
    CHECK(compose(0, 0, 4) == 1);
    CHECK(compose(1, 2, 4) == 10);
    CHECK(compose(2, 1, 4) == 12);
    CHECK_THROWS_AS(compose(4, 0, 4), DomainError);
    CHECK_THROWS_AS(compose(-1, 0, 4), DomainError);
    CHECK_THROWS_AS(compose(0, 8, 4), DomainError);
    CHECK_THROWS_AS(compose(3, 1, 4), DomainError);
}

TEST_CASE("factorize and compose are inverse for n <= 12")
{
    for (int n = 2; n <= 12; ++n) {
        const vertex_t size = vertex_t{1} << n;
        for (vertex_t k = 1; k < size; ++k) {
            const VertexLabel l = factorize(k, n);
            REQUIRE(l.level <= n - 1);
            REQUIRE(l.index < (vertex_t{1} << (n - l.level - 1)));
            REQUIRE(compose(l.level, l.index, n) == k);
        }
    }
}

TEST_CASE("shift_target examples")
{
    const Topology paired(4, EdgeMode::paired);
    const Topology chain(4, EdgeMode::chain);
    CHECK(paired.shift_target(0, 3) == PortVertex{1, 1});
    CHECK(paired.shift_target(0, 0) == PortVertex{1, 0});
    CHECK(paired.shift_target(2, 5) == PortVertex{3, 6});
    CHECK(chain.shift_target(2, 5) == PortVertex{3, 6});
    CHECK(chain.shift_target(0, 3) == PortVertex{1, 5});
    CHECK(chain.shift_target(1, 5) == PortVertex{0, 3});
    CHECK(paired.shift_target(3, 0) == PortVertex{2, 15});
    CHECK(paired.shift_target(1, 8) == PortVertex{0, 8});
}

TEST_CASE("shift_target rejects bad ports and vertices")
{
    const Topology t(3, EdgeMode::paired);
    CHECK_THROWS_AS(t.shift_target(4, 0), DomainError);
    CHECK_THROWS_AS(t.shift_target(-1, 0), DomainError);
    CHECK_THROWS_AS(t.shift_target(0, 8), DomainError);
}

TEST_CASE("topology rejects level counts outside [2, 28]")
{
    CHECK_THROWS_AS(Topology(1, EdgeMode::paired), DomainError);
    CHECK_THROWS_AS(Topology(29, EdgeMode::chain), DomainError);
}

TEST_CASE("port map is an involutive bijection and matches the reference rule")
{
    for (EdgeMode mode : {EdgeMode::paired, EdgeMode::chain}) {
        for (int n = 2; n <= 12; ++n) {
            const Topology t(n, mode);
            std::set<std::pair<int, vertex_t>> image;
            for (vertex_t k = 0; k < t.size(); ++k) {
                for (int a = 0; a < coin_dim; ++a) {
                    const PortVertex p = t.shift_target(a, k);
                    const auto ref = oracle::shift_rule(n, mode == EdgeMode::chain, a, k);
                    REQUIRE(p.port == ref.port);
                    REQUIRE(p.vertex == ref.k);
                    REQUIRE(t.shift_target(p.port, p.vertex) == PortVertex{a, k});
                    image.insert({p.port, p.vertex});
                }
            }
            REQUIRE(image.size() == coin_dim * static_cast<std::size_t>(t.size()));
        }
    }
}

TEST_CASE("backbone ports trace one N-cycle")
{
    for (int n = 2; n <= 10; ++n) {
        const Topology t(n, EdgeMode::paired);
        vertex_t k = 0;
        for (vertex_t step = 1; step <= t.size(); ++step) {
            k = t.shift_target(2, k).vertex;
            if (step < t.size()) REQUIRE(k != 0);
        }
        CHECK(k == 0);
    }
}

TEST_CASE("paired mode moves ports 0 and 1 to the same vertex")
{
    for (int n = 2; n <= 12; ++n) {
        const Topology t(n, EdgeMode::paired);
        for (vertex_t k = 0; k < t.size(); ++k) {
            REQUIRE(t.shift_target(0, k).vertex == t.shift_target(1, k).vertex);
        }
    }
}

TEST_CASE("loops sit at 0 and N/2 in both modes")
{
    for (EdgeMode mode : {EdgeMode::paired, EdgeMode::chain}) {
        const Topology t(4, mode);
        int loops = 0;
        for (const Edge& e : t.edges()) {
            if (e.cls == EdgeClass::loop) {
                ++loops;
                CHECK(e.k == e.k_prime);
                CHECK((e.k == 0 || e.k == 8));
            }
        }
        CHECK(loops == 2);
    }
}

TEST_CASE("n=2 paired edge list")
{
    const Topology t(2, EdgeMode::paired);
    std::multiset<std::tuple<vertex_t, vertex_t, EdgeClass>> got;
    for (const Edge& e : t.edges()) got.insert({std::min(e.k, e.k_prime), std::max(e.k, e.k_prime), e.cls});
    const std::multiset<std::tuple<vertex_t, vertex_t, EdgeClass>> want{
        {0, 1, EdgeClass::backbone}, {1, 2, EdgeClass::backbone}, {2, 3, EdgeClass::backbone},
        {0, 3, EdgeClass::backbone}, {0, 0, EdgeClass::loop},     {2, 2, EdgeClass::loop},
        {1, 3, EdgeClass::level},    {1, 3, EdgeClass::level},
    };
    CHECK(got == want);
}

TEST_CASE("n=4 chain level-0 edges form the odd cycle")
{
    const Topology t(4, EdgeMode::chain);
    std::set<std::pair<vertex_t, vertex_t>> level0;
    for (const Edge& e : t.edges()) {
        if (e.cls == EdgeClass::level && e.k % 2 == 1) level0.insert({std::min(e.k, e.k_prime), std::max(e.k, e.k_prime)});
    }
    std::set<std::pair<vertex_t, vertex_t>> want;
    for (vertex_t k = 1; k < 15; k += 2) want.insert({k, k + 2});
    want.insert({1, 15});
    CHECK(level0 == want);
}

TEST_CASE("every vertex has port degree 4 in the edge list")
{
    for (EdgeMode mode : {EdgeMode::paired, EdgeMode::chain}) {
        for (int n = 2; n <= 8; ++n) {
            const Topology t(n, mode);
            const auto edges = t.edges();
            CHECK(edges.size() == 2 * static_cast<std::size_t>(t.size()));
            std::map<vertex_t, int> degree;
            for (const Edge& e : edges) {
                degree[e.k] += 1;
                degree[e.k_prime] += 1;
            }
            for (vertex_t k = 0; k < t.size(); ++k) REQUIRE(degree[k] == 4);
        }
    }
}

TEST_CASE("edge CSV has the documented header and one row per edge")
{
    const Topology t(4, EdgeMode::chain);
    std::ostringstream out;
    write_edges_csv(out, t);
    const std::string text = out.str();
    CHECK(text.rfind("k,k_prime,class\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 32);
    CHECK(text.find("8,8,loop") != std::string::npos);
}

TEST_CASE("edge mode names round-trip")
{
    CHECK(parse_edge_mode("paired") == EdgeMode::paired);
    CHECK(parse_edge_mode(to_string(EdgeMode::chain)) == EdgeMode::chain);
    CHECK_THROWS_AS(parse_edge_mode("ring"), DomainError);
}
