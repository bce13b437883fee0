#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "klsf/constructive.hpp"
#include "klsf/instances.hpp"
#include "test_support.hpp"

using namespace klsf;
using namespace klsf::testing;

namespace {

ParseErrorKind parse_kind(const std::string& text) {
    std::istringstream in(text);
    try {
        read_instance(in);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("no parse error for: " << text);
    return ParseErrorKind::UnknownLine;
}

std::size_t parse_line(const std::string& text) {
    std::istringstream in(text);
    try {
        read_instance(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("edge target") {
    CHECK(InstanceSpec{100, 50, 0.5, 1}.edge_target() == 2475);
    CHECK(InstanceSpec{2, 1, 1.0, 1}.edge_target() == 1);
    CHECK(InstanceSpec{10, 3, 0.2, 1}.edge_target() == 9);
    CHECK_THROWS_AS((InstanceSpec{1, 1, 0.5, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((InstanceSpec{5, 0, 0.5, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((InstanceSpec{5, 2, 0.0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((InstanceSpec{5, 2, 1.5, 1}.validate()), std::invalid_argument);
}

TEST_CASE("generate_graph examples") {
    const LabeledGraph g = generate_graph({100, 50, 0.5, 1});
    CHECK(g.vertex_count() == 100);
    CHECK(g.label_count() == 50);
    CHECK(g.edge_count() == 2475);

    const LabeledGraph tiny = generate_graph({2, 1, 1.0, 9});
    REQUIRE(tiny.edge_count() == 1);
    CHECK(tiny.edges()[0] == Edge{1, 2, 1});

    const LabeledGraph full = generate_graph({6, 3, 1.0, 4});
    CHECK(full.edge_count() == 15);
    CHECK(whole_graph_components(full) == 1);
}

TEST_CASE("generate_graph invariants") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        const InstanceSpec spec{2 + rng() % 40, 1 + rng() % 30, 0.05 + (rng() % 96) / 100.0, rng()};
        const LabeledGraph g = generate_graph(spec);
        CHECK(g.edge_count() == spec.edge_target());
        std::set<std::pair<Vertex, Vertex>> pairs;
        for (const Edge& e : g.edges()) {
            CHECK(e.u < e.v);
            CHECK(e.label >= 1);
            CHECK(e.label <= spec.label_count);
            pairs.insert({e.u, e.v});
        }
        CHECK(pairs.size() == g.edge_count());
        CHECK(generate_graph(spec) == g);
    }
    CHECK_FALSE(generate_graph({30, 10, 0.3, 1}) == generate_graph({30, 10, 0.3, 2}));
}

TEST_CASE("generated labels are roughly uniform") {
    const LabeledGraph g = generate_graph({200, 10, 0.5, 3});
    std::vector<double> counts(11, 0);
    for (const Edge& e : g.edges()) counts[e.label] += 1;
    const double expected = double(g.edge_count()) / 10;
    double chi2 = 0;
    for (int l = 1; l <= 10; ++l) chi2 += (counts[l] - expected) * (counts[l] - expected) / expected;
    CHECK(chi2 < 27.877);
}

TEST_CASE("determine_k") {
    SUBCASE("result leaves the greedy disconnected") {
        std::mt19937_64 rng(20);
        for (int trial = 0; trial < 100; ++trial) {
            const InstanceSpec spec{8 + rng() % 60, 4 + rng() % 60, 0.2 + (rng() % 60) / 100.0, rng()};
            const LabeledGraph g = generate_graph(spec);
            std::size_t k = 0;
            try {
                k = determine_k(g);
            } catch (const NoValidBudget&) {
                continue;
            }
            CHECK(k >= 1);
            CHECK(k <= g.label_count());
            CHECK(k <= spec.n / 2);
            CHECK(*mvca(g, k, GreedyTieRule::deterministic()).cached_comp() > 1);
            // k is of the form floor(n / 2^j) and every larger such value failed
            bool found = false;
            for (std::size_t p = spec.n / 2; p > 0; p /= 2) {
                if (p == k) {
                    found = true;
                    break;
                }
                if (p <= g.label_count())
                    CHECK(*mvca(g, p, GreedyTieRule::deterministic()).cached_comp() == 1);
            }
            CHECK(found);
        }
    }
    SUBCASE("a single spanning label leaves no valid budget") {
        LabeledGraph g(4, 2, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
        CHECK_THROWS_AS(determine_k(g), NoValidBudget);
    }
    SUBCASE("disconnected graph halves once") {
        LabeledGraph g(8, 4, {{1, 2, 1}, {3, 4, 2}});
        CHECK(determine_k(g) == 4);
    }
    SUBCASE("values above the label count are skipped") {
        // n = 16: 8 and 4 exceed l = 3, 2 fails to connect
        std::vector<Edge> edges;
        for (Vertex v = 1; v < 16; ++v) edges.push_back({v, v + 1, Label(1 + v % 3)});
        LabeledGraph g(16, 3, edges);
        CHECK(determine_k(g) == 2);
    }
}

TEST_CASE("instance file round trip") {
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 1000; ++trial) {
        const LabeledGraph g = random_graph(rng, 30, 20);
        const Instance inst{g, 1 + rng() % g.label_count(), {}};
        std::stringstream buf;
        write_instance(inst, buf);
        const Instance back = read_instance(buf);
        REQUIRE(back == inst);
    }
}

TEST_CASE("instance file format") {
    const Instance inst{four_vertex_graph(), 2, {}};
    std::stringstream buf;
    write_instance(inst, buf);
    const std::string text = buf.str();
    CHECK(text.find("p klsf 4 4 3 2\n") != std::string::npos);
    CHECK(text.find("e 1 2 1\n") != std::string::npos);

    std::istringstream in("c hello\np klsf 3 2 2 1\nc between\n\ne 1 2 1\ne 2 3 2\n");
    const Instance parsed = read_instance(in);
    CHECK(parsed.graph.vertex_count() == 3);
    CHECK(parsed.graph.edge_count() == 2);
    CHECK(parsed.k == 1);
}

TEST_CASE("parse errors") {
    CHECK(parse_kind("e 1 2 1\n") == ParseErrorKind::MissingHeader);
    CHECK(parse_kind("") == ParseErrorKind::MissingHeader);
    CHECK(parse_kind("p klsf 3 x 2 1\n") == ParseErrorKind::MalformedHeader);
    CHECK(parse_kind("p cnf 3 1 2 1\n") == ParseErrorKind::MalformedHeader);
    CHECK(parse_kind("p klsf 3 0 2 1\np klsf 3 0 2 1\n") == ParseErrorKind::DuplicateHeader);
    CHECK(parse_kind("p klsf 3 1 2 1\ne 1 2\n") == ParseErrorKind::MalformedEdge);
    CHECK(parse_kind("p klsf 3 1 2 1\ne 1 4 1\n") == ParseErrorKind::VertexOutOfRange);
    CHECK(parse_kind("p klsf 3 1 2 1\ne 1 2 3\n") == ParseErrorKind::LabelOutOfRange);
    CHECK(parse_kind("p klsf 6 1 2 1\ne 5 5 1\n") == ParseErrorKind::SelfLoop);
    CHECK(parse_kind("p klsf 3 2 2 1\ne 1 2 1\n") == ParseErrorKind::EdgeCountMismatch);
    CHECK(parse_kind("p klsf 3 1 2 1\ne 1 2 1\ne 2 3 1\n") == ParseErrorKind::EdgeCountMismatch);
    CHECK(parse_kind("p klsf 3 0 2 0\n") == ParseErrorKind::InvalidBudget);
    CHECK(parse_kind("p klsf 3 0 2 3\n") == ParseErrorKind::InvalidBudget);
    CHECK(parse_kind("p klsf 3 0 2 1\nx 1\n") == ParseErrorKind::UnknownLine);
    CHECK(parse_line("c\np klsf 6 1 2 1\ne 5 5 1\n") == 3);
    CHECK_THROWS_AS(read_instance_file("/nonexistent/file.klsf"), std::runtime_error);
}

TEST_CASE("manifest round trip") {
    std::vector<ManifestEntry> entries{
        {"a/b.klsf", {50, 13, 0.5, 7}, 6},
        {"c.klsf", {100, 125, 0.25, 123456789012345ULL}, 3},
    };
    std::stringstream buf;
    write_manifest(entries, buf);
    CHECK(buf.str().rfind("path,n,l,density,seed,k\n", 0) == 0);
    const auto back = read_manifest(buf);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back[i].path == entries[i].path);
        CHECK(back[i].spec.n == entries[i].spec.n);
        CHECK(back[i].spec.label_count == entries[i].spec.label_count);
        CHECK(back[i].spec.density == entries[i].spec.density);
        CHECK(back[i].spec.seed == entries[i].spec.seed);
        CHECK(back[i].k == entries[i].k);
    }
    std::istringstream bad("path,n,l,density,seed,k\nx.klsf,1,2\n");
    CHECK_THROWS_AS(read_manifest(bad), ParseError);
}

TEST_CASE("labelled matrix import") {
    // labels 0..2, 3 = no edge
    const std::string strict = "4 3\n0 3 2\n1 3\n0\n";
    std::istringstream s1(strict);
    const LabeledGraph a = import_labelled_matrix(s1);
    CHECK(a.vertex_count() == 4);
    CHECK(a.label_count() == 3);
    CHECK(a.edge_count() == 4);

    const std::string full = "4 3\n3 0 3 2\n0 3 1 3\n3 1 3 0\n2 3 0 3\n";
    std::istringstream s2(full);
    CHECK(import_labelled_matrix(s2) == a);

    const std::string diag = "4 3 7\n3 0 3 2\n3 1 3\n3 0\n3\n";
    std::istringstream s3(diag);
    CHECK(import_labelled_matrix(s3) == a);

    std::istringstream s4("4 3\n0 1\n");
    CHECK_THROWS_AS(import_labelled_matrix(s4), ParseError);
    std::istringstream s5("4 3\n0 3 2\n1 3\n5\n");
    CHECK_THROWS_AS(import_labelled_matrix(s5), ParseError);
}
