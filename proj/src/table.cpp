#include "mimonoma/table.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "mimonoma/error.hpp"

namespace mimonoma {

namespace {

using nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          return std::to_string(v);
        } else {
          return csv_escape(v);
        }
      },
      cell);
}

constexpr std::string_view kPlotScript = R"PY(#!/usr/bin/env python3
# Plots every *_r1, *_r2 and *_sum column of the data file against
# sweep_value, one panel per metric.
import csv
import json
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "@DATA@")


def load(path):
    if path.endswith(".json"):
        with open(path) as f:
            return json.load(f)
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


rows = load(DATA)
if not rows:
    sys.exit("empty data file")
xlabel = rows[0]["sweep_variable"]
x = [float(r["sweep_value"]) for r in rows]
metrics = [("r1", "R1 (bits/s/Hz)"), ("r2", "R2 (bits/s/Hz)"),
           ("sum", "sum rate (bits/s/Hz)")]
fig, axes = plt.subplots(1, len(metrics), figsize=(15, 4.5))
for ax, (metric, label) in zip(axes, metrics):
    for col in rows[0]:
        if col.endswith("_" + metric):
            ax.plot(x, [float(r[col]) for r in rows],
                    label=col[: -len(metric) - 1])
    ax.set_xlabel(xlabel)
    ax.set_ylabel(label)
    ax.grid(True)
    ax.legend()
fig.tight_layout()
fig.savefig(DATA + ".png", dpi=150)
)PY";

}  // namespace

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no such column: " + std::string(name));
  }
  return static_cast<std::size_t>(it - columns.begin());
}

bool Table::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

double Table::number(std::size_t row, std::string_view name) const {
  const Cell& cell = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) {
    return static_cast<double>(*u);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "column is not numeric: " + std::string(name));
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::kInvalidArgument, "row width does not match header");
  }
  rows.push_back(std::move(row));
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown output format: " + std::string(name));
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_escape(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << render_csv_cell(row[c]);
    }
    out << '\n';
  }
}

std::string to_json(const Table& table) {
  ordered_json records = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json record = ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { record[table.columns[c]] = v; }, row[c]);
    }
    records.push_back(std::move(record));
  }
  return records.dump(2) + "\n";
}

Table from_json(std::string_view text) {
  ordered_json records;
  try {
    records = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed table JSON: ") + e.what());
  }
  if (!records.is_array()) {
    throw Error(ErrorCode::kInvalidArgument, "table JSON must be an array");
  }
  Table table;
  for (const auto& record : records) {
    if (!record.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, "table rows must be objects");
    }
    if (table.columns.empty()) {
      for (const auto& item : record.items()) table.columns.push_back(item.key());
    }
    std::vector<Cell> row;
    row.reserve(table.columns.size());
    for (const auto& name : table.columns) {
      const auto it = record.find(name);
      if (it == record.end()) {
        throw Error(ErrorCode::kInvalidArgument, "row missing column " + name);
      }
      if (it->is_number_float()) {
        row.emplace_back(it->get<double>());
      } else if (it->is_number_unsigned()) {
        row.emplace_back(it->get<std::uint64_t>());
      } else if (it->is_string()) {
        row.emplace_back(it->get<std::string>());
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "unsupported cell type in column " + name);
      }
    }
    table.add_row(std::move(row));
  }
  return table;
}

std::filesystem::path emit_output(const Table& table, OutputFormat format,
                                  const std::filesystem::path& path) {
  if (table.rows.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "refusing to emit an empty table");
  }
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIo, "cannot open " + path.string());
    }
    if (format == OutputFormat::kCsv) {
      write_csv(table, out);
    } else {
      out << to_json(table);
    }
    if (!out.flush()) {
      throw Error(ErrorCode::kIo, "write failed: " + path.string());
    }
  }

  std::string script(kPlotScript);
  const std::string data_name = path.filename().string();
  script.replace(script.find("@DATA@"), 6, data_name);
  std::filesystem::path script_path = path;
  script_path += ".plot.py";
  std::ofstream out(script_path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << script) || !out.flush()) {
    throw Error(ErrorCode::kIo, "cannot write " + script_path.string());
  }
  return script_path;
}

}  // namespace mimonoma
