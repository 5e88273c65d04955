#include "opart/table.hpp"

#include <fstream>
#include <sstream>

namespace opart {

const char* to_string(TableProvenance p) {
    switch (p) {
        case TableProvenance::series: return "series";
        case TableProvenance::sparse: return "sparse";
        case TableProvenance::merged: return "merged";
    }
    return "?";
}

namespace {

// Weighted partition enumeration: walks every partition of m with parts
// <= max_part, largest part chosen first; each distinct part value
// contributes a factor 2 (overline its first occurrence or not).
void enumerate_rec(long m, long max_part, const mpz_class& weight, mpz_class& total) {
    if (m == 0) {
        total += weight;
        return;
    }
    mpz_class w2 = weight * 2;
    for (long p = std::min(m, max_part); p >= 1; --p) {
        for (long used = p; used <= m; used += p) {
            enumerate_rec(m - used, p - 1, w2, total);
        }
    }
}

}  // namespace

mpz_class enumerate_overpartitions(long n) {
    if (n < 0) throw std::invalid_argument("enumerate_overpartitions: n must be >= 0");
    if (n > kEnumerationCap)
        throw std::invalid_argument("enumerate_overpartitions: n exceeds oracle cap " +
                                    std::to_string(kEnumerationCap));
    mpz_class total = 0;
    enumerate_rec(n, n, 1, total);
    return total;
}

OverpartitionTable series_table(long n_max) {
    if (n_max < 0) throw std::invalid_argument("series_table: n_max must be >= 0");
    std::vector<mpz_class> c(static_cast<size_t>(n_max) + 1, mpz_class(0));
    c[0] = 1;
    for (long k = 1; k <= n_max; ++k) {
        // multiply by (1 + q^k)
        for (long j = n_max; j >= k; --j) c[j] += c[j - k];
        // divide by (1 - q^k), i.e. multiply by 1 + q^k + q^{2k} + ...
        for (long j = k; j <= n_max; ++j) c[j] += c[j - k];
    }
    return OverpartitionTable{n_max, std::move(c), TableProvenance::series};
}

OverpartitionTable sparse_table(long n_max) {
    if (n_max < 0) throw std::invalid_argument("sparse_table: n_max must be >= 0");
    std::vector<mpz_class> p(static_cast<size_t>(n_max) + 1, mpz_class(0));
    p[0] = 1;
    for (long n = 1; n <= n_max; ++n) {
        mpz_class s = 0;
        for (long j = 1; j * j <= n; ++j) {
            if (j & 1)
                s += p[n - j * j];
            else
                s -= p[n - j * j];
        }
        p[n] = 2 * s;
    }
    return OverpartitionTable{n_max, std::move(p), TableProvenance::sparse};
}

OverpartitionTable checked_table(long n_max, long cross_check_to) {
    OverpartitionTable sp = sparse_table(n_max);
    long limit = std::min(n_max, cross_check_to);
    OverpartitionTable se = series_table(limit);
    for (long n = 0; n <= limit; ++n) {
        if (sp.values[n] != se.values[n])
            throw std::logic_error("checked_table: series/sparse disagree at n=" + std::to_string(n));
    }
    sp.provenance = TableProvenance::merged;
    return sp;
}

std::uint64_t table_checksum(const OverpartitionTable& table) {
    constexpr std::uint64_t kMod = (std::uint64_t(1) << 61) - 1;
    std::uint64_t sum = 0;
    std::string buf;
    for (const mpz_class& v : table.values) {
        buf = v.get_str();
        for (char ch : buf) {
            if (ch >= '0' && ch <= '9') sum += static_cast<std::uint64_t>(ch - '0');
        }
        sum %= kMod;
    }
    return sum;
}

void save_table(const OverpartitionTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw TableFormatError("save_table: cannot open " + path);
    out << "OPART-TABLE v1 n_max=" << table.n_max << '\n';
    for (const mpz_class& v : table.values) out << v.get_str() << '\n';
    out << "END " << table_checksum(table) << '\n';
    if (!out) throw TableFormatError("save_table: write failure on " + path);
}

OverpartitionTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableFormatError("load_table: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw TableFormatError("load_table: empty file " + path);
    long n_max = -1;
    {
        std::istringstream hdr(line);
        std::string magic, version, nm;
        hdr >> magic >> version >> nm;
        if (magic != "OPART-TABLE" || version != "v1" || nm.rfind("n_max=", 0) != 0)
            throw TableFormatError("load_table: bad header: " + line);
        try {
            n_max = std::stol(nm.substr(6));
        } catch (const std::exception&) {
            throw TableFormatError("load_table: bad n_max in header: " + line);
        }
        if (n_max < 0) throw TableFormatError("load_table: negative n_max");
    }

    OverpartitionTable table;
    table.n_max = n_max;
    table.provenance = TableProvenance::merged;
    table.values.reserve(static_cast<size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) {
        if (!std::getline(in, line))
            throw TableFormatError("load_table: truncated table (expected value for n=" + std::to_string(n) + ")");
        if (line.empty() || line.find_first_not_of("0123456789") != std::string::npos)
            throw TableFormatError("load_table: malformed value line for n=" + std::to_string(n));
        table.values.emplace_back(line, 10);
    }
    if (!std::getline(in, line) || line.rfind("END ", 0) != 0)
        throw TableFormatError("load_table: missing END line");
    std::uint64_t declared = 0;
    try {
        declared = std::stoull(line.substr(4));
    } catch (const std::exception&) {
        throw TableFormatError("load_table: bad checksum field");
    }
    if (declared != table_checksum(table))
        throw TableFormatError("load_table: checksum mismatch in " + path);

    // anchor validation
    if (table.values[0] != 1) throw TableFormatError("load_table: anchor violation, values[0] != 1");
    if (n_max >= 3 && table.values[3] != 8)
        throw TableFormatError("load_table: anchor violation, values[3] != 8");
    return table;
}

}  // namespace opart
