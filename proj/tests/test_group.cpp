#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "oracles.hpp"
#include "wka/errors.hpp"
#include "wka/group.hpp"

using namespace wka;

namespace {

GroupElement el(std::initializer_list<std::int64_t> v) { return GroupElement(std::vector<std::int64_t>(v)); }

}  // namespace

TEST_CASE("word length closed forms") {
    auto z2 = GroupModel::parse("Z^2");
    CHECK(z2->word_length(el({3, -2})) == 5);
    CHECK(z2->word_length(el({0, 0})) == 0);

    auto f2 = GroupModel::parse("F2");
    CHECK(f2->word_length(f2->parse_element("abA")) == 3);
    CHECK(f2->word_length(f2->parse_element("e")) == 0);
}

TEST_CASE("Heisenberg word length agrees with the BFS oracle") {
    auto h3 = GroupModel::parse("H3");
    // central element z = [x, y]
    CHECK(h3->word_length(el({0, 0, 1})) == 4);
    CHECK(oracle::heisenberg_word_length({0, 0, 1}) == 4);

    for (std::int64_t x = -2; x <= 2; ++x)
        for (std::int64_t y = -2; y <= 2; ++y)
            for (std::int64_t z = -1; z <= 1; ++z) {
                const auto want = oracle::heisenberg_word_length({x, y, z});
                REQUIRE(want >= 0);
                CHECK(h3->word_length(el({x, y, z})) == static_cast<std::uint64_t>(want));
            }
}

TEST_CASE("metric: examples and left-invariance") {
    auto z = GroupModel::parse("Z");
    CHECK(z->metric(el({5}), el({5})) == 0);
    CHECK(z->metric(el({7}), el({3})) == 4);

    auto f2 = GroupModel::parse("F2");
    CHECK(f2->metric(f2->parse_element("ab"), f2->parse_element("a")) == 1);

    // d(tg, th) = d(g, h) and l(g) = l(g^{-1}) on a sample of H3 elements
    auto h3 = GroupModel::parse("H3");
    const auto sample = h3->ball(3);
    for (std::size_t i = 0; i < sample.size(); i += 3)
        for (std::size_t j = 0; j < sample.size(); j += 5) {
            const auto& g = sample[i];
            const auto& h = sample[j];
            const auto& t = sample[(i + j) % sample.size()];
            CHECK(h3->metric(h3->multiply(t, g), h3->multiply(t, h)) == h3->metric(g, h));
            CHECK(h3->word_length(g) == h3->word_length(h3->inverse(g)));
        }
}

TEST_CASE("group axioms on sampled triples") {
    for (const char* spec : {"Z^2", "H3", "F2"}) {
        auto g = GroupModel::parse(spec);
        const auto sample = g->ball(2);
        for (std::size_t i = 0; i < sample.size(); ++i) {
            CHECK(g->multiply(sample[i], g->inverse(sample[i])) == g->identity_element());
            const auto& a = sample[i];
            const auto& b = sample[(i * 7 + 1) % sample.size()];
            const auto& c = sample[(i * 3 + 2) % sample.size()];
            CHECK(g->multiply(g->multiply(a, b), c) == g->multiply(a, g->multiply(b, c)));
        }
        // generators: symmetric, identity-free
        for (const auto& s : g->generators()) {
            CHECK_FALSE(g->is_identity(s));
            bool has_inverse = false;
            for (const auto& t : g->generators())
                if (t == g->inverse(s)) has_inverse = true;
            CHECK(has_inverse);
        }
    }
}

TEST_CASE("balls: sizes, order, nesting") {
    auto z = GroupModel::parse("Z");
    const auto b3 = z->ball(3);
    CHECK(b3.size() == 7);

    auto z2 = GroupModel::parse("Z^2");
    CHECK(z2->ball(2).size() == 13);

    auto f2 = GroupModel::parse("F2");
    CHECK(f2->ball(2).size() == 17);

    // deterministic (length, lex) order
    LengthLexLess less{z2.get()};
    const auto ball = z2->ball(4);
    for (std::size_t i = 1; i < ball.size(); ++i) CHECK(less(ball[i - 1], ball[i]));

    // nesting and one-step reachability
    for (const char* spec : {"Z^2", "H3", "F2"}) {
        auto g = GroupModel::parse(spec);
        const auto inner = g->ball(2);
        const auto outer = g->ball(3);
        for (std::size_t i = 0; i < inner.size(); ++i) CHECK(outer[i] == inner[i]);  // prefix
        for (std::size_t i = inner.size(); i < outer.size(); ++i) {
            bool adjacent = false;
            for (const auto& s : g->generators()) {
                const auto back = g->multiply(outer[i], s);
                if (g->word_length(back) <= 2) adjacent = true;
            }
            CHECK(adjacent);
        }
    }
}

TEST_CASE("lattice and free-group ball sizes match closed forms") {
    for (int d = 1; d <= 3; ++d) {
        auto g = GroupModel::integer_lattice(d);
        const auto sizes = g->ball_sizes(10);
        for (std::uint64_t r = 0; r <= 10; ++r) CHECK(sizes[r] == oracle::lattice_ball_size(d, r));
    }
    auto f2 = GroupModel::parse("F2");
    const auto sizes = f2->ball_sizes(8);
    std::uint64_t p = 1;
    for (std::uint64_t r = 0; r <= 8; ++r) {
        CHECK(sizes[r] == 2 * p - 1);
        p *= 3;
    }
}

TEST_CASE("growth analysis classifies polynomial vs exponential") {
    auto z2 = GroupModel::parse("Z^2");
    const auto rz2 = z2->growth_analysis(12);
    CHECK(rz2.degree_estimate > 1.8);
    CHECK(rz2.degree_estimate < 2.2);
    CHECK(rz2.classified_polynomial);
    CHECK(rz2.ball_sizes[0] == 1);

    auto h3 = GroupModel::parse("H3");
    const auto rh3 = h3->growth_analysis(10);
    CHECK(rh3.degree_estimate > 3.5);
    CHECK(rh3.degree_estimate < 4.5);
    CHECK(rh3.classified_polynomial);
    const auto oracle_sizes = oracle::heisenberg_ball_sizes(10);
    REQUIRE(rh3.ball_sizes.size() == oracle_sizes.size());
    for (std::size_t i = 0; i < oracle_sizes.size(); ++i) CHECK(rh3.ball_sizes[i] == oracle_sizes[i]);

    auto f2 = GroupModel::parse("F2");
    CHECK_FALSE(f2->growth_analysis(8).classified_polynomial);

    CHECK_THROWS_AS(z2->growth_analysis(3), PreconditionError);
}

TEST_CASE("element text round-trips and malformed input") {
    auto z2 = GroupModel::parse("Z^2");
    for (const auto& g : z2->ball(3)) CHECK(z2->parse_element(z2->format_element(g)) == g);
    auto f3 = GroupModel::parse("F3");
    for (const auto& g : f3->ball(2)) CHECK(f3->parse_element(f3->format_element(g)) == g);
    CHECK(f3->parse_element("aA") == f3->identity_element());  // parse reduces

    CHECK_THROWS_AS(z2->word_length(el({1, 2, 3})), MalformedElementError);
    CHECK_THROWS_AS(z2->parse_element("1,2"), MalformedElementError);
    CHECK_THROWS_AS(f3->parse_element("a-b"), MalformedElementError);
    CHECK_THROWS_AS(GroupModel::parse("Q8"), ValidationError);
}

TEST_CASE("ball sizes grow strictly") {
    for (const char* spec : {"Z^1", "Z^3", "H3", "F2"}) {
        auto g = GroupModel::parse(spec);
        const auto sizes = g->ball_sizes(6);
        CHECK(sizes[0] == 1);
        for (std::size_t r = 1; r < sizes.size(); ++r) CHECK(sizes[r] > sizes[r - 1]);
    }
}

TEST_CASE("the BFS cache is safe under concurrent use") {
    auto h3 = GroupModel::parse("H3");
    const auto probe = h3->ball(2);  // elements whose lengths threads will query
    std::vector<std::vector<std::uint64_t>> results(4);
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&, w] {
            for (const auto& g : probe) results[w].push_back(h3->word_length(g));
            results[w].push_back(h3->ball(5).size());
        });
    for (auto& t : workers) t.join();
    for (int w = 1; w < 4; ++w) CHECK(results[w] == results[0]);
}

TEST_CASE("free-group ball beyond the budget names the cardinality") {
    auto f2 = GroupModel::parse("F2");
    try {
        f2->ball(13);
        FAIL("expected a resource-limit error");
    } catch (const ResourceLimitError& e) {
        CHECK(std::string(e.what()).find("3188645") != std::string::npos);
    }
}
