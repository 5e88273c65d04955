#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opart {

struct TableFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TableProvenance { series, sparse, merged };

const char* to_string(TableProvenance p);

/// Exact values p(0..n_max) of the overpartition counting function.
/// A completed table is immutable and safe to share across threads.
struct OverpartitionTable {
    long n_max = -1;
    std::vector<mpz_class> values;  // values[n] for 0 <= n <= n_max
    TableProvenance provenance = TableProvenance::series;

    const mpz_class& at(long n) const {
        if (n < 0 || n > n_max) throw std::out_of_range("OverpartitionTable: index " + std::to_string(n));
        return values[static_cast<size_t>(n)];
    }
};

/// Largest n the combinatorial enumeration oracle accepts.
inline constexpr long kEnumerationCap = 40;

/// Counts overpartitions of n by direct enumeration of partitions, with each
/// distinct part value independently overlinable at its first occurrence.
/// Oracle-scale only (n <= kEnumerationCap).
mpz_class enumerate_overpartitions(long n);

/// Coefficient extraction of prod_{k<=n_max} (1+q^k)/(1-q^k) up to degree
/// n_max, by sequential in-place multiply and divide passes. O(n_max^2)
/// big-integer additions.
OverpartitionTable series_table(long n_max);

/// Prefix recurrence p(n) = 2 * sum_{j>=1} (-1)^{j+1} p(n - j^2) from the
/// reciprocal theta series. O(n_max^{3/2}) big-integer additions; must be
/// validated against series_table before being trusted (see checked_table).
OverpartitionTable sparse_table(long n_max);

/// Production-path construction: sparse recurrence to n_max, cross-checked
/// entrywise against the series product up to min(n_max, cross_check_to).
/// Throws std::logic_error on any disagreement.
OverpartitionTable checked_table(long n_max, long cross_check_to);

/// Decimal digit-sum of all values, mod 2^61 - 1 (the cache file checksum).
std::uint64_t table_checksum(const OverpartitionTable& table);

/// Text cache format:
///   line 1:  OPART-TABLE v1 n_max=<int>
///   lines:   one decimal integer per line, index implicit from 0
///   last:    END <checksum>
void save_table(const OverpartitionTable& table, const std::string& path);
OverpartitionTable load_table(const std::string& path);

}  // namespace opart
