#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alg/nikulin_census.hpp"

#include <algorithm>
#include <set>

using namespace alg;

namespace {

NikulinRecord rec(int g, int rat, int rk, CensusTable t = CensusTable::T1)
{
    NikulinRecord r;
    r.genus_g = g;
    r.rational_count = rat;
    r.rk_ns = rk;
    r.table_id = t;
    return r;
}

} // namespace

TEST_CASE("Betti numbers of printed rows")
{
    const auto a = betti_from_fixed_locus(rec(10, 0, 1));
    CHECK(a.b2 == 2);
    CHECK(a.b3 == 20);
    CHECK(a.b4 == 2);
    CHECK(a.dim_family == 22);
    const auto b = betti_from_fixed_locus(rec(0, 9, 20, CensusTable::T2));
    CHECK(b.b2 == 30);
    CHECK(b.b3 == 0);
    CHECK(b.b4 == 11);
    CHECK(b.dim_family == 31);
    NikulinRecord ex;
    ex.exceptional = true;
    ex.rk_ns = 10;
    ex.table_id = CensusTable::T3;
    const auto c = betti_from_fixed_locus(ex);
    CHECK(c.b2 == 12);
    CHECK(c.b3 == 4);
    CHECK(c.b4 == 3);
    CHECK(c.dim_family == 23);
}

TEST_CASE("record validation")
{
    CHECK_THROWS_AS(betti_from_fixed_locus(rec(1, 0, 21)), std::invalid_argument);
    CHECK_THROWS_AS(betti_from_fixed_locus(rec(1, -1, 5)), std::invalid_argument);
    NikulinRecord ex;
    ex.exceptional = true;
    ex.genus_g = 1;
    ex.table_id = CensusTable::T3;
    CHECK_THROWS_AS(betti_from_fixed_locus(ex), std::invalid_argument);
}

TEST_CASE("row invariants hold for the whole fixture")
{
    const auto t = generate_tables();
    REQUIRE(t.rows.size() == 65);
    for (const auto& r : t.rows) {
        const auto& d = r.derived;
        CHECK(d.b4 - 1 == d.b2 - r.record.rk_ns);
        CHECK(d.b3 % 2 == 0);
        CHECK(d.dim_family == d.b2 + (20 - r.record.rk_ns) + 1);
        CHECK(d.b4 == d.b2_local + 1);
    }
}

TEST_CASE("table totals")
{
    const auto t = generate_tables();
    CHECK(t.total_t1 == 848);
    CHECK(t.total_t2 == 767);
    CHECK(t.total_t3 == 23);
    CHECK(t.grand_total == 1638);
}

TEST_CASE("exactly one printed-vs-derived discrepancy")
{
    const auto t = generate_tables();
    REQUIRE(t.discrepancies.size() == 1);
    const auto& d = t.discrepancies.front();
    CHECK(d.table == CensusTable::T1);
    CHECK(d.column == "b3");
    CHECK(d.printed == 4);
    CHECK(d.derived == 8);
    int seen = 0;
    for (const auto& r : t.rows)
        if (r.record.table_id == CensusTable::T1 && seen++ == d.row) {
            CHECK(*r.record.genus_g == 4);
            CHECK(r.record.rational_count == 1);
            CHECK(r.record.rk_ns == 8);
            CHECK_FALSE(r.printed_match);
        }
}

TEST_CASE("distinct triples under both readings")
{
    const auto t = generate_tables();
    const auto d = distinct_triples(t.rows, TripleSource::derived);
    CHECK(d.count == 64);
    CHECK(d.duplicates.empty());
    CHECK(distinct_triples(t.rows, TripleSource::printed).count == 64);
    CHECK(distinct_triples({}).count == 0);

    // independent set count over (rk + 1 + rat, 2g, 2 + rat)
    std::set<std::tuple<int, int, int>> s;
    for (const auto& r : census_fixture())
        if (!r.exceptional) s.insert({r.rk_ns + 1 + r.rational_count, 2 * *r.genus_g, 2 + r.rational_count});
    CHECK(s.size() == 64);
}

TEST_CASE("table 3 coincides with the (g=2, rat=1, rk=10) row")
{
    const auto t = generate_tables();
    const auto& ex = t.rows.back();
    REQUIRE(ex.record.exceptional);
    const auto partners = coincident_rows(t.rows, ex);
    REQUIRE(partners.size() == 1);
    const auto& p = t.rows[partners.front()].record;
    CHECK(p.table_id == CensusTable::T1);
    CHECK(*p.genus_g == 2);
    CHECK(p.rational_count == 1);
    CHECK(p.rk_ns == 10);
}

TEST_CASE("orders list")
{
    const auto o = orders_list();
    CHECK(o.valid);
    CHECK(o.orders.size() == 39);
    CHECK(o.primes == 8);
    CHECK(o.composites == 31);
    CHECK(o.orders.back() == 66);
    CHECK(std::find(o.orders.begin(), o.orders.end(), 60) == o.orders.end());
    // trial division oracle
    int primes = 0;
    for (int n : o.orders) {
        bool p = n > 1;
        for (int d = 2; d < n; ++d)
            if (n % d == 0) p = false;
        primes += p;
        CHECK(p == is_prime(n));
    }
    CHECK(primes == 8);
}
