#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dgldpc::cli {

enum class Format { table, csv, json };

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Key/value fields, tables and free-text notes, rendered in one of the
// three output formats.
struct Report {
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<Table> tables;
  std::vector<std::string> notes;

  void field(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
  Table& table(std::string title, std::vector<std::string> header) {
    tables.push_back({std::move(title), std::move(header), {}});
    return tables.back();
  }
  void note(std::string text) { notes.push_back(std::move(text)); }

  void print(std::ostream& os, Format format) const;
};

std::string fixed(double v, int digits);
std::string general(double v, int digits = 12);

}  // namespace dgldpc::cli
