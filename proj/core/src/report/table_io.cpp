// SPDX-License-Identifier: Apache-2.0

#include "ehap/report/table_io.h"

#include "ehap/error.h"
#include "ehap/report/stats.h"
#include "ehap/syntax/parser.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ehap::report {

using detect::AntiPatternId;

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record.front().empty()))
      records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && !field_started) {
      quoted = field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else if (c != '\r') {
      field.push_back(c);
      field_started = true;
    }
  }
  if (field_started || !field.empty() || !record.empty())
    end_record();
  return records;
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return std::string(s);
}

std::optional<double> parse_number(std::string_view cell, const std::string &where) {
  std::string s = trim(cell);
  if (!s.empty() && s.back() == '%')
    s.pop_back();
  if (s.empty())
    return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(where + ": not a number: '" + std::string(cell) + "'");
  return v;
}

std::string where(const std::string &origin, std::size_t record) {
  return origin + ":" + std::to_string(record + 1);
}

PrevalenceTable parse_long(const std::vector<std::vector<std::string>> &records,
                           const std::vector<std::string> &header, const std::string &origin) {
  auto col = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name)
        return i;
    throw ConfigError(origin + ": missing column " + std::string(name));
  };
  const std::size_t c_project = col("project"), c_ap = col("antipattern"),
                    c_percent = col("percent");
  std::optional<std::size_t> c_unit, c_total;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "unit")
      c_unit = i;
    if (header[i] == "total")
      c_total = i;
  }

  PrevalenceTable table;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto &rec = records[r];
    if (rec.size() != header.size())
      throw ConfigError(where(origin, r) + ": expected " + std::to_string(header.size()) +
                        " fields");
    const std::string project = trim(rec[c_project]);
    auto it = std::find_if(table.rows.begin(), table.rows.end(),
                           [&](const TableRow &row) { return row.project == project; });
    if (it == table.rows.end()) {
      table.rows.push_back({project, {{"project", project}}, {}, {}});
      it = table.rows.end() - 1;
    }
    const auto id = detect::parse_anti_pattern(rec[c_ap]);
    if (!id)
      throw ConfigError(where(origin, r) + ": unknown anti-pattern '" + rec[c_ap] + "'");
    if (auto v = parse_number(rec[c_percent], where(origin, r)))
      it->percents[*id] = *v;
    if (c_unit && c_total)
      if (auto t = parse_number(rec[*c_total], where(origin, r)))
        it->totals[detect::normalize_label(rec[*c_unit])] = *t;
  }
  return table;
}

PrevalenceTable parse_wide(const std::vector<std::vector<std::string>> &records,
                           const std::vector<std::string> &raw_header,
                           const std::vector<std::string> &header, const std::string &origin) {
  enum class Kind { Meta, Percent, Total };
  std::vector<Kind> kinds;
  std::vector<std::optional<AntiPatternId>> ids;
  std::optional<std::size_t> c_project;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string raw = trim(raw_header[i]);
    std::optional<AntiPatternId> id;
    Kind k = Kind::Meta;
    if (!raw.empty() && raw.front() == '#') {
      k = Kind::Total;
    } else if ((id = detect::parse_anti_pattern(raw))) {
      k = Kind::Percent;
    }
    if (header[i] == "project")
      c_project = i;
    kinds.push_back(k);
    ids.push_back(id);
  }
  if (!c_project)
    throw ConfigError(origin + ": missing column project");

  PrevalenceTable table;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto &rec = records[r];
    if (rec.size() != header.size())
      throw ConfigError(where(origin, r) + ": expected " + std::to_string(header.size()) +
                        " fields");
    TableRow row;
    row.project = trim(rec[*c_project]);
    for (std::size_t i = 0; i < header.size(); ++i) {
      switch (kinds[i]) {
      case Kind::Meta:
        row.meta[header[i]] = trim(rec[i]);
        break;
      case Kind::Percent:
        if (auto v = parse_number(rec[i], where(origin, r)))
          row.percents[*ids[i]] = *v;
        break;
      case Kind::Total:
        if (auto v = parse_number(rec[i], where(origin, r)))
          row.totals[header[i]] = *v;
        break;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

PrevalenceTable parse_table(std::string_view text, const std::string &origin) {
  const auto records = parse_csv(text);
  if (records.empty())
    throw ConfigError(origin + ": empty table");
  std::vector<std::string> header;
  for (const auto &h : records.front())
    header.push_back(detect::normalize_label(h));
  if (std::find(header.begin(), header.end(), "antipattern") != header.end())
    return parse_long(records, header, origin);
  return parse_wide(records, records.front(), header, origin);
}

PrevalenceTable read_table(const std::filesystem::path &path) {
  std::string text;
  try {
    text = syntax::read_file(path);
  } catch (const std::exception &) {
    throw ConfigError("cannot read table " + path.string());
  }
  return parse_table(text, path.string());
}

RowFilter RowFilter::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw std::invalid_argument("filter must look like key=value: " + std::string(text));
  return {detect::normalize_label(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

bool RowFilter::matches(const TableRow &row) const {
  if (key == "project")
    return lower(row.project) == lower(value);
  auto it = row.meta.find(key);
  return it != row.meta.end() && lower(it->second) == lower(value);
}

std::vector<double> column_values(const PrevalenceTable &table, AntiPatternId id,
                                  const std::vector<RowFilter> &filters) {
  std::vector<double> out;
  for (const auto &row : table.rows) {
    if (!std::all_of(filters.begin(), filters.end(),
                     [&](const RowFilter &f) { return f.matches(row); }))
      continue;
    if (auto it = row.percents.find(id); it != row.percents.end())
      out.push_back(it->second);
  }
  return out;
}

std::vector<MedianRow> summarize_prevalence(const PrevalenceTable &table) {
  std::vector<MedianRow> out;
  for (AntiPatternId id : detect::all_anti_patterns()) {
    const std::vector<double> values = column_values(table, id);
    out.push_back({id, values.size(), median(values)});
  }
  return out;
}

} // namespace ehap::report
