#include "antijam/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace antijam {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\n\r") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
  if (!needs_quoting(field)) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    append_field(out, row[i]);
  }
  out += '\n';
}

}  // namespace

std::string csv_to_string(const CsvTable& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) append_row(out, row);
  return out;
}

void emit_csv(const CsvTable& table, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("emit_csv: cannot open " + path);
  const std::string text = csv_to_string(table);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw std::runtime_error("emit_csv: write failed for " + path);
}

CsvTable parse_csv_string(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_open = false;  // distinguishes "" (one empty field) from nothing

  const size_t n = text.size();
  for (size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_open) {
      quoted = true;
      field_open = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_open = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      field_open = false;
      records.push_back(std::move(record));
      record.clear();
    } else {
      field += c;
      field_open = true;
    }
  }
  if (quoted) throw std::runtime_error("parse_csv: unterminated quoted field");
  if (field_open || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw std::runtime_error("parse_csv: empty input");

  CsvTable table;
  table.header = std::move(records.front());
  const size_t width = table.header.size();
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw std::runtime_error("parse_csv: row " + std::to_string(r) +
                               " has " + std::to_string(records[r].size()) +
                               " fields, expected " + std::to_string(width));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable parse_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("parse_csv: cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_csv_string(buf.str());
}

}  // namespace antijam
