#include "csv.hpp"

#include <cstdio>

namespace optoring {

namespace {

const char* unit_label(SweepParam p) {
  switch (p) {
    case SweepParam::Temperature: return "temperature [K]";
    case SweepParam::Power: return "power [W]";
    case SweepParam::Mass: return "mass [kg]";
    case SweepParam::Detuning: return "detuning [omega_m]";
  }
  return "?";
}

std::vector<SweepParam> varied_params(const SweepSpec& spec) {
  std::vector<SweepParam> out;
  if (spec.overlay) out.push_back(spec.overlay->param);
  for (const auto& axis : spec.axes) out.push_back(axis.param);
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> sweep_csv_header(const SweepSpec& spec) {
  std::vector<std::string> header;
  for (auto p : varied_params(spec)) header.emplace_back(unit_label(p));
  for (const char* col :
       {"n_cav [1]", "Delta/omega_m [1]", "stable [bool]", "nu_tilde_minus [1]",
        "E_N [nepers]", "D_G [nepers]", "I_M [nepers]", "C [nepers]",
        "W_branch", "status"})
    header.emplace_back(col);
  return header;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     std::span<const SweepRecord> records) {
  auto write_row = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << csv_field(fields[i]);
    }
    out << '\n';
  };
  write_row(sweep_csv_header(spec));
  const auto params = varied_params(spec);
  for (const auto& rec : records) {
    std::vector<std::string> row;
    for (auto p : params) row.push_back(format_double(param_value(rec.params, p)));
    row.push_back(format_double(rec.n_cav));
    row.push_back(format_double(rec.effective_detuning / rec.params.mech_freq));
    row.push_back(rec.stable ? "1" : "0");
    if (rec.status == PointStatus::Ok && rec.measures) {
      const auto& m = *rec.measures;
      const double classical = m.mutual_information - m.discord.value;
      row.push_back(format_double(m.nu_tilde.minus));
      row.push_back(format_double(m.log_negativity));
      row.push_back(format_double(m.discord.value));
      row.push_back(format_double(m.mutual_information));
      row.push_back(format_double(classical));
      row.push_back(to_string(m.discord.branch));
    } else {
      row.insert(row.end(), 6, std::string{});
    }
    row.push_back(to_string(rec.status));
    write_row(row);
  }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    row_open = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else {
      field += c;
    }
  }
  if (row_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace optoring
