#pragma once

#include <optional>
#include <string>
#include <vector>

namespace alg {

enum class CensusTable { T1 = 1, T2 = 2, T3 = 3 };

struct PrintedRow
{
    int b2_local = 0, b2 = 0, b3 = 0, b4 = 0, dim_moduli = 0, dim_family = 0;
};

struct NikulinRecord
{
    std::optional<int> genus_g; // absent for the two-elliptic-curve rows
    int rational_count = 0;
    int rk_ns = 1;
    bool exceptional = false;
    CensusTable table_id = CensusTable::T1;
    PrintedRow printed;
};

struct BettiTriple
{
    int b2 = 0, b3 = 0, b4 = 0;
    int dim_moduli = 0;
    int dim_family = 0;
    int b2_local = 0;

    friend bool operator==(const BettiTriple&, const BettiTriple&) = default;
};

// Throws std::invalid_argument for records violating the rank / fixed-locus rules.
void validate(const NikulinRecord& rec);
BettiTriple betti_from_fixed_locus(const NikulinRecord& rec);

struct CensusRow
{
    NikulinRecord record;
    BettiTriple derived;
    bool printed_match = true;
};

struct Discrepancy
{
    CensusTable table = CensusTable::T1;
    int row = 0; // zero-based within its table
    std::string column;
    int printed = 0;
    int derived = 0;
};

struct CensusTables
{
    std::vector<CensusRow> rows;
    int total_t1 = 0, total_t2 = 0, total_t3 = 0, grand_total = 0;
    std::vector<Discrepancy> discrepancies;
};

// The fixed-locus data of the three tables (36 + 28 + 1 rows) with their printed columns.
const std::vector<NikulinRecord>& census_fixture();
CensusTables generate_tables();
CensusTables generate_tables(const std::vector<NikulinRecord>& records);

struct TripleReport
{
    int count = 0;
    std::vector<std::pair<int, int>> duplicates; // pairs of row indices with equal triples
};

enum class TripleSource { derived, printed };

// Distinct (b2, b3, b4) over the given rows.
TripleReport distinct_triples(const std::vector<CensusRow>& rows, TripleSource source = TripleSource::derived);
// Indices into rows (restricted to T1/T2) whose derived triple equals that of `row`.
std::vector<int> coincident_rows(const std::vector<CensusRow>& rows, const CensusRow& row);

struct OrdersReport
{
    std::vector<int> orders;
    int primes = 0;
    int composites = 0;
    bool valid = false;
};

bool is_prime(int n);
OrdersReport orders_list();

std::string to_string(CensusTable t);

} // namespace alg
