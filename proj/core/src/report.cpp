#include "opart/report.hpp"

#include <json.hpp>

#include <ostream>

namespace opart {

using ordered_json = nlohmann::ordered_json;

ReportFormat parse_report_format(const std::string& s) {
    if (s == "text") return ReportFormat::text;
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown output format: " + s);
}

long report_sig_digits(const PrecisionContext& ctx) { return std::min(ctx.digits, 40L); }

namespace {

std::string fmt(const AuditedReal& x, long sig) { return x.value.str(static_cast<int>(sig)); }

std::string alpha_str(const std::optional<mpq_class>& alpha) {
    return alpha ? alpha->get_str() : std::string();
}

ordered_json header_json(const std::string& check, const std::optional<mpq_class>& alpha,
                         const PrecisionContext& ctx, std::uint64_t checksum) {
    ordered_json h;
    h["check"] = check;
    if (alpha)
        h["alpha"] = alpha->get_str();
    else
        h["alpha"] = nullptr;
    h["digits"] = ctx.digits;
    h["table_checksum"] = checksum;
    return h;
}

}  // namespace

void write_csv(std::ostream& os, const RangeReport& report) {
    long sig = report_sig_digits(report.context);
    os << "# check=" << report.check << " alpha=" << alpha_str(report.alpha)
       << " digits=" << report.context.digits << " table_checksum=" << report.table_checksum
       << "\n";
    os << "n,lower,middle,upper,margin,pass\n";
    for (const auto& r : report.records) {
        os << r.n << ',';
        if (r.lower) os << fmt(*r.lower, sig);
        os << ',' << fmt(r.middle, sig) << ',';
        if (r.upper) os << fmt(*r.upper, sig);
        os << ',' << fmt(r.margin, sig) << ',' << (r.pass() ? "true" : "false") << '\n';
    }
}

void write_json(std::ostream& os, const RangeReport& report) {
    long sig = report_sig_digits(report.context);
    ordered_json j = header_json(report.check, report.alpha, report.context, report.table_checksum);
    j["n_from"] = report.n_from;
    j["n_to"] = report.n_to;
    j["all_pass"] = report.all_pass;
    if (report.first_failure)
        j["first_failure"] = *report.first_failure;
    else
        j["first_failure"] = nullptr;
    j["notes"] = report.notes;
    ordered_json recs = ordered_json::array();
    for (const auto& r : report.records) {
        ordered_json rj;
        rj["n"] = r.n;
        rj["lower"] = r.lower ? ordered_json(fmt(*r.lower, sig)) : ordered_json(nullptr);
        rj["middle"] = fmt(r.middle, sig);
        rj["upper"] = r.upper ? ordered_json(fmt(*r.upper, sig)) : ordered_json(nullptr);
        rj["pass_lower"] = r.pass_lower;
        rj["pass_upper"] = r.pass_upper;
        rj["aux_pass"] = r.aux_pass;
        rj["margin"] = fmt(r.margin, sig);
        rj["escalations"] = r.escalations;
        rj["indeterminate"] = r.indeterminate;
        if (!r.diagnostics.empty()) {
            ordered_json d;
            for (const auto& [name, v] : r.diagnostics) d[name] = fmt(v, sig);
            rj["diagnostics"] = d;
        }
        recs.push_back(std::move(rj));
    }
    j["records"] = std::move(recs);
    os << j.dump(2) << '\n';
}

namespace {

void print_record(std::ostream& os, const CheckRecord& r, long sig) {
    os << "  n=" << r.n;
    if (r.lower) os << "  lower=" << fmt(*r.lower, sig);
    os << "  middle=" << fmt(r.middle, sig);
    if (r.upper) os << "  upper=" << fmt(*r.upper, sig);
    os << "  margin=" << fmt(r.margin, sig) << "  pass_lower=" << (r.pass_lower ? "yes" : "no")
       << "  pass_upper=" << (r.pass_upper ? "yes" : "no")
       << "  aux_pass=" << (r.aux_pass ? "yes" : "no");
    if (r.escalations > 0) os << "  escalations=" << r.escalations;
    if (r.indeterminate) os << "  INDETERMINATE";
    os << '\n';
    if (!r.diagnostics.empty()) {
        os << "    diagnostics:";
        for (const auto& [name, v] : r.diagnostics) os << ' ' << name << '=' << fmt(v, sig);
        os << '\n';
    }
}

}  // namespace

void write_text(std::ostream& os, const RangeReport& report) {
    long sig = report_sig_digits(report.context);
    os << "check " << report.check;
    if (report.alpha) os << "  alpha=" << report.alpha->get_str();
    os << "  range=[" << report.n_from << ", " << report.n_to << "]"
       << "  digits=" << report.context.digits << "  table_checksum=" << report.table_checksum
       << '\n';
    for (const auto& note : report.notes) os << "note: " << note << '\n';
    os << "records: " << report.records.size() << "  all_pass: " << (report.all_pass ? "yes" : "no")
       << '\n';
    if (const CheckRecord* m = report.min_margin_record()) {
        os << "tightest margin:\n";
        print_record(os, *m, sig);
    }
    if (!report.all_pass) {
        os << "failures:\n";
        for (const auto& r : report.records)
            if (!r.pass()) print_record(os, r, sig);
    }
}

void write_report(std::ostream& os, const RangeReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::text: write_text(os, report); break;
        case ReportFormat::csv: write_csv(os, report); break;
        case ReportFormat::json: write_json(os, report); break;
    }
}

void write_csv(std::ostream& os, const AsymptoticReport& report) {
    long sig = report_sig_digits(report.context);
    os << "# check=asymptotic alpha=" << report.alpha.get_str()
       << " digits=" << report.context.digits << " table_checksum=" << report.table_checksum
       << "\n";
    os << "n,scaled,limit_distance,bracket_lower,bracket_upper,inside\n";
    for (const auto& row : report.rows) {
        os << row.n << ',' << fmt(row.scaled, sig) << ',' << fmt(row.limit_distance, sig) << ',';
        if (row.bracket_lower) os << fmt(*row.bracket_lower, sig);
        os << ',';
        if (row.bracket_upper) os << fmt(*row.bracket_upper, sig);
        os << ',';
        if (row.inside) os << (*row.inside ? "true" : "false");
        os << '\n';
    }
}

void write_json(std::ostream& os, const AsymptoticReport& report) {
    long sig = report_sig_digits(report.context);
    ordered_json j = header_json("asymptotic", report.alpha, report.context, report.table_checksum);
    j["notes"] = report.notes;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json rj;
        rj["n"] = row.n;
        rj["scaled"] = fmt(row.scaled, sig);
        rj["limit_distance"] = fmt(row.limit_distance, sig);
        rj["bracket_lower"] =
            row.bracket_lower ? ordered_json(fmt(*row.bracket_lower, sig)) : ordered_json(nullptr);
        rj["bracket_upper"] =
            row.bracket_upper ? ordered_json(fmt(*row.bracket_upper, sig)) : ordered_json(nullptr);
        rj["inside"] = row.inside ? ordered_json(*row.inside) : ordered_json(nullptr);
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

void write_text(std::ostream& os, const AsymptoticReport& report) {
    long sig = report_sig_digits(report.context);
    os << "asymptotic table  alpha=" << report.alpha.get_str()
       << "  digits=" << report.context.digits << '\n';
    for (const auto& note : report.notes) os << "note: " << note << '\n';
    for (const auto& row : report.rows) {
        os << "  n=" << row.n << "  scaled=" << fmt(row.scaled, sig)
           << "  |scaled - 3pi/4|=" << fmt(row.limit_distance, sig);
        if (row.bracket_lower && row.bracket_upper)
            os << "  bracket=[" << fmt(*row.bracket_lower, sig) << ", "
               << fmt(*row.bracket_upper, sig) << "]"
               << "  inside=" << (*row.inside ? "yes" : "no");
        os << '\n';
    }
}

void write_report(std::ostream& os, const AsymptoticReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::text: write_text(os, report); break;
        case ReportFormat::csv: write_csv(os, report); break;
        case ReportFormat::json: write_json(os, report); break;
    }
}

void write_text(std::ostream& os, const CertifiedEstimate& est) {
    long sig = report_sig_digits(est.value.ctx);
    os << "n=" << est.n << "  terms(odd k<=N)=" << est.terms << '\n'
       << "value        = " << fmt(est.value, sig) << '\n'
       << "error_radius = " << fmt(est.error_radius, sig) << '\n';
    mpfr_prec_t prec = est.value.value.prec();
    Real half = Real::of_long(1, prec) / 2;
    if (est.error_radius.value < half) {
        mpz_class rounded;
        mpfr_get_z(rounded.get_mpz_t(), est.value.value.raw(), MPFR_RNDN);
        os << "rounds to    = " << rounded.get_str() << "  (radius < 1/2: certified exact)\n";
    } else {
        os << "radius >= 1/2: value not certified to a single integer\n";
    }
}

void write_json(std::ostream& os, const CertifiedEstimate& est) {
    long sig = report_sig_digits(est.value.ctx);
    ordered_json j;
    j["n"] = est.n;
    j["terms"] = est.terms;
    j["digits"] = est.value.ctx.digits;
    j["value"] = fmt(est.value, sig);
    j["error_radius"] = fmt(est.error_radius, sig);
    mpfr_prec_t prec = est.value.value.prec();
    Real half = Real::of_long(1, prec) / 2;
    if (est.error_radius.value < half) {
        mpz_class rounded;
        mpfr_get_z(rounded.get_mpz_t(), est.value.value.raw(), MPFR_RNDN);
        j["certified_integer"] = rounded.get_str();
    } else {
        j["certified_integer"] = nullptr;
    }
    os << j.dump(2) << '\n';
}

}  // namespace opart
