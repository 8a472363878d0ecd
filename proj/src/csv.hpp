#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sweep.hpp"

namespace optoring {

/// 17 significant digits; round-trips every double exactly.
std::string format_double(double value);

/// RFC 4180 field quoting: only fields containing a comma, quote, CR or LF
/// are quoted, with embedded quotes doubled.
std::string csv_field(std::string_view text);

std::vector<std::string> sweep_csv_header(const SweepSpec& spec);

/// One header row plus one row per record, LF line endings. Measure columns
/// are left empty for records whose status is not OK.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     std::span<const SweepRecord> records);

/// Minimal RFC 4180 reader (quoted fields, doubled quotes, LF or CRLF).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace optoring
