#include "alg/nikulin_census.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace alg {

namespace {

NikulinRecord row(CensusTable t, int g, int rat, int rk, PrintedRow p)
{
    return {g, rat, rk, false, t, p};
}

std::vector<NikulinRecord> build_fixture()
{
    using T = CensusTable;
    // g, rational, rk | b2_local, b2, b3, b4, dim M, dim family (as printed)
    const int t1[][9] = {
        {10, 0, 1, 1, 2, 20, 2, 19, 22},  {10, 1, 2, 2, 4, 20, 3, 18, 23},  {9, 0, 2, 1, 3, 18, 2, 18, 22},
        {8, 0, 3, 1, 4, 16, 2, 17, 22},   {9, 1, 3, 2, 5, 18, 3, 17, 23},   {7, 0, 4, 1, 5, 14, 2, 16, 22},
        {8, 1, 4, 2, 6, 16, 3, 16, 23},   {6, 0, 5, 1, 6, 12, 2, 15, 22},   {7, 1, 5, 2, 7, 14, 3, 15, 23},
        {5, 0, 6, 1, 7, 10, 2, 14, 22},   {6, 1, 6, 2, 8, 12, 3, 14, 23},   {7, 2, 6, 3, 9, 14, 4, 14, 24},
        {4, 0, 7, 1, 8, 8, 2, 13, 22},    {5, 1, 7, 2, 9, 10, 3, 13, 23},   {6, 2, 7, 3, 10, 12, 4, 13, 24},
        {3, 0, 8, 1, 9, 6, 2, 12, 22},    {4, 1, 8, 2, 10, 4, 3, 12, 23},   {5, 2, 8, 3, 11, 10, 4, 12, 24},
        {6, 3, 8, 4, 12, 12, 5, 12, 25},  {2, 0, 9, 1, 10, 4, 2, 11, 22},   {3, 1, 9, 2, 11, 6, 3, 11, 23},
        {4, 2, 9, 3, 12, 8, 4, 11, 24},   {5, 3, 9, 4, 13, 10, 5, 11, 25},  {6, 4, 9, 5, 14, 12, 6, 11, 26},
        {1, 0, 10, 1, 11, 2, 2, 10, 22},  {2, 1, 10, 2, 12, 4, 3, 10, 23},  {3, 2, 10, 3, 13, 6, 4, 10, 24},
        {4, 3, 10, 4, 14, 8, 5, 10, 25},  {5, 4, 10, 5, 15, 10, 6, 10, 26}, {6, 5, 10, 6, 16, 12, 7, 10, 27},
        {0, 0, 11, 1, 12, 0, 2, 9, 22},   {1, 1, 11, 2, 13, 2, 3, 9, 23},   {2, 2, 11, 3, 14, 4, 4, 9, 24},
        {3, 3, 11, 4, 15, 6, 5, 9, 25},   {4, 4, 11, 5, 16, 8, 6, 9, 26},   {5, 5, 11, 6, 17, 10, 7, 9, 27},
    };
    const int t2[][9] = {
        {0, 1, 12, 2, 14, 0, 3, 8, 23},  {1, 2, 12, 3, 15, 2, 4, 8, 24},  {2, 3, 12, 4, 16, 4, 5, 8, 25},
        {3, 4, 12, 5, 17, 6, 6, 8, 26},  {4, 5, 12, 6, 18, 8, 7, 8, 27},  {0, 2, 13, 3, 16, 0, 4, 7, 24},
        {1, 3, 13, 4, 17, 2, 5, 7, 25},  {2, 4, 13, 5, 18, 4, 6, 7, 26},  {3, 5, 13, 6, 19, 6, 7, 7, 27},
        {0, 3, 14, 4, 18, 0, 5, 6, 25},  {1, 4, 14, 5, 19, 2, 6, 6, 26},  {2, 5, 14, 6, 20, 4, 7, 6, 27},
        {3, 6, 14, 7, 21, 6, 8, 6, 28},  {0, 4, 15, 5, 20, 0, 6, 5, 26},  {1, 5, 15, 6, 21, 2, 7, 5, 27},
        {2, 6, 15, 7, 22, 4, 8, 5, 28},  {0, 5, 16, 6, 22, 0, 7, 4, 27},  {1, 6, 16, 7, 23, 2, 8, 4, 28},
        {2, 7, 16, 8, 24, 4, 9, 4, 29},  {0, 6, 17, 7, 24, 0, 8, 3, 28},  {1, 7, 17, 8, 25, 2, 9, 3, 29},
        {2, 8, 17, 9, 26, 4, 10, 3, 30}, {0, 7, 18, 8, 26, 0, 9, 2, 29},  {1, 8, 18, 9, 27, 2, 10, 2, 30},
        {2, 9, 18, 10, 28, 4, 11, 2, 31}, {0, 8, 19, 9, 28, 0, 10, 1, 30}, {1, 9, 19, 10, 29, 2, 11, 1, 31},
        {0, 9, 20, 10, 30, 0, 11, 0, 31},
    };
    std::vector<NikulinRecord> out;
    for (const auto& r : t1) out.push_back(row(T::T1, r[0], r[1], r[2], {r[3], r[4], r[5], r[6], r[7], r[8]}));
    for (const auto& r : t2) out.push_back(row(T::T2, r[0], r[1], r[2], {r[3], r[4], r[5], r[6], r[7], r[8]}));
    NikulinRecord ex;
    ex.exceptional = true;
    ex.rk_ns = 10;
    ex.table_id = T::T3;
    ex.printed = {2, 12, 4, 3, 10, 23};
    out.push_back(ex);
    return out;
}

} // namespace

std::string to_string(CensusTable t)
{
    switch (t) {
    case CensusTable::T1: return "1";
    case CensusTable::T2: return "2";
    case CensusTable::T3: return "3";
    }
    return "?";
}

void validate(const NikulinRecord& rec)
{
    if (rec.rk_ns < 1 || rec.rk_ns > 20) throw std::invalid_argument("census: rk_ns outside [1, 20]");
    if (rec.rational_count < 0) throw std::invalid_argument("census: negative rational curve count");
    if (rec.exceptional) {
        if (rec.genus_g || rec.rational_count != 0)
            throw std::invalid_argument("census: exceptional rows carry exactly two elliptic curves");
        if (rec.table_id != CensusTable::T3) throw std::invalid_argument("census: exceptional rows belong to table 3");
    } else {
        if (!rec.genus_g || *rec.genus_g < 0) throw std::invalid_argument("census: missing or negative genus");
        if (rec.table_id == CensusTable::T3) throw std::invalid_argument("census: table 3 rows must be exceptional");
    }
}

BettiTriple betti_from_fixed_locus(const NikulinRecord& rec)
{
    validate(rec);
    int curves = 0, genus_sum = 0;
    if (rec.exceptional) {
        curves = 2;
        genus_sum = 2;
    } else {
        curves = 1 + rec.rational_count;
        genus_sum = *rec.genus_g;
    }
    BettiTriple b;
    b.b2_local = curves;
    b.b2 = rec.rk_ns + curves;
    b.b3 = 2 * genus_sum;
    b.b4 = 1 + curves;
    b.dim_moduli = 20 - rec.rk_ns;
    b.dim_family = b.b2 + b.dim_moduli + 1;
    return b;
}

const std::vector<NikulinRecord>& census_fixture()
{
    static const std::vector<NikulinRecord> data = build_fixture();
    return data;
}

CensusTables generate_tables() { return generate_tables(census_fixture()); }

CensusTables generate_tables(const std::vector<NikulinRecord>& records)
{
    CensusTables out;
    std::map<CensusTable, int> counter;
    for (const auto& rec : records) {
        CensusRow r{rec, betti_from_fixed_locus(rec), true};
        const int idx = counter[rec.table_id]++;
        const auto& p = rec.printed;
        const auto& d = r.derived;
        const std::pair<const char*, std::pair<int, int>> cols[] = {
            {"b2_local", {p.b2_local, d.b2_local}}, {"b2", {p.b2, d.b2}},
            {"b3", {p.b3, d.b3}},                   {"b4", {p.b4, d.b4}},
            {"dim_moduli", {p.dim_moduli, d.dim_moduli}}, {"dim_family", {p.dim_family, d.dim_family}},
        };
        for (const auto& [name, v] : cols)
            if (v.first != v.second) {
                out.discrepancies.push_back({rec.table_id, idx, name, v.first, v.second});
                r.printed_match = false;
            }
        switch (rec.table_id) {
        case CensusTable::T1: out.total_t1 += d.dim_family; break;
        case CensusTable::T2: out.total_t2 += d.dim_family; break;
        case CensusTable::T3: out.total_t3 += d.dim_family; break;
        }
        out.rows.push_back(std::move(r));
    }
    out.grand_total = out.total_t1 + out.total_t2 + out.total_t3;
    return out;
}

TripleReport distinct_triples(const std::vector<CensusRow>& rows, TripleSource source)
{
    TripleReport rep;
    std::map<std::tuple<int, int, int>, int> first;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const auto& r = rows[i];
        if (r.record.table_id == CensusTable::T3) continue;
        const auto key = source == TripleSource::derived
                             ? std::tuple{r.derived.b2, r.derived.b3, r.derived.b4}
                             : std::tuple{r.record.printed.b2, r.record.printed.b3, r.record.printed.b4};
        auto [it, inserted] = first.emplace(key, i);
        if (!inserted) rep.duplicates.emplace_back(it->second, i);
    }
    rep.count = static_cast<int>(first.size());
    return rep;
}

std::vector<int> coincident_rows(const std::vector<CensusRow>& rows, const CensusRow& row)
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const auto& d = rows[i].derived;
        if (rows[i].record.table_id == CensusTable::T3) continue;
        if (d.b2 == row.derived.b2 && d.b3 == row.derived.b3 && d.b4 == row.derived.b4) out.push_back(i);
    }
    return out;
}

bool is_prime(int n)
{
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

OrdersReport orders_list()
{
    OrdersReport rep;
    rep.orders = {2,  3,  5,  7,  11, 13, 17, 19, 4,  6,  8,  9,  10, 12, 14, 15, 16, 18, 20, 21,
                  22, 24, 25, 26, 27, 28, 30, 32, 33, 34, 36, 38, 40, 42, 44, 48, 50, 54, 66};
    std::sort(rep.orders.begin(), rep.orders.end());
    for (int n : rep.orders) (is_prime(n) ? rep.primes : rep.composites)++;
    const bool unique = std::adjacent_find(rep.orders.begin(), rep.orders.end()) == rep.orders.end();
    rep.valid = unique && rep.orders.size() == 39 && rep.primes == 8 && rep.composites == 31 &&
                std::binary_search(rep.orders.begin(), rep.orders.end(), 66);
    return rep;
}

} // namespace alg
