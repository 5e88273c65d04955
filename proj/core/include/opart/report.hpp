#pragma once

#include <iosfwd>
#include <string>

#include "opart/verify.hpp"
#include "opart/zuckerman.hpp"

namespace opart {

enum class ReportFormat { text, csv, json };

ReportFormat parse_report_format(const std::string& s);

/// Significant digits used when printing reals: min(digits, 40).
long report_sig_digits(const PrecisionContext& ctx);

/// Deterministic emitters: identical report => byte-identical output.
/// CSV carries a one-line `#` header with {check, alpha, digits,
/// table_checksum} followed by the fixed columns
/// n,lower,middle,upper,margin,pass. JSON mirrors the record field names.
void write_csv(std::ostream& os, const RangeReport& report);
void write_json(std::ostream& os, const RangeReport& report);
void write_text(std::ostream& os, const RangeReport& report);
void write_report(std::ostream& os, const RangeReport& report, ReportFormat format);

void write_csv(std::ostream& os, const AsymptoticReport& report);
void write_json(std::ostream& os, const AsymptoticReport& report);
void write_text(std::ostream& os, const AsymptoticReport& report);
void write_report(std::ostream& os, const AsymptoticReport& report, ReportFormat format);

void write_text(std::ostream& os, const CertifiedEstimate& est);
void write_json(std::ostream& os, const CertifiedEstimate& est);

}  // namespace opart
