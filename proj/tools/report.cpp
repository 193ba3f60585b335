#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace dgldpc::cli {

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Numbers stay numbers in JSON output.
nlohmann::ordered_json json_value(const std::string& s) {
  const auto* end = s.data() + s.size();
  long long i = 0;
  if (const auto [ptr, ec] = std::from_chars(s.data(), end, i); ec == std::errc() && ptr == end) {
    return i;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec == std::errc() && ptr == end && std::isfinite(v)) return v;
  return s;
}

}  // namespace

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string general(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

void Report::print(std::ostream& os, Format format) const {
  if (format == Format::json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : fields) j["fields"][k] = json_value(v);
    for (const auto& t : tables) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& r : t.rows) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < t.header.size() && c < r.size(); ++c) {
          row[t.header[c]] = json_value(r[c]);
        }
        rows.push_back(row);
      }
      j["tables"][t.title] = rows;
    }
    if (!notes.empty()) j["notes"] = notes;
    os << j.dump(2) << "\n";
    return;
  }

  if (format == Format::csv) {
    if (!fields.empty()) os << "key,value\n";
    for (const auto& [k, v] : fields) os << csv_cell(k) << "," << csv_cell(v) << "\n";
    for (const auto& t : tables) {
      os << "\n# " << t.title << "\n";
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        os << (c ? "," : "") << csv_cell(t.header[c]);
      }
      os << "\n";
      for (const auto& r : t.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_cell(r[c]);
        os << "\n";
      }
    }
    for (const auto& n : notes) os << "# " << n << "\n";
    return;
  }

  std::size_t key_width = 0;
  for (const auto& [k, v] : fields) key_width = std::max(key_width, k.size());
  for (const auto& [k, v] : fields) {
    os << std::left << std::setw(static_cast<int>(key_width)) << k << "  " << v << "\n";
  }
  for (const auto& t : tables) {
    os << "\n" << t.title << "\n";
    std::vector<std::size_t> width(t.header.size(), 0);
    for (std::size_t c = 0; c < t.header.size(); ++c) width[c] = t.header[c].size();
    for (const auto& r : t.rows)
      for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
        width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size() && c < width.size(); ++c) {
        os << "  " << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
      }
      os << "\n";
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
  }
  if (!notes.empty()) os << "\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
}

}  // namespace dgldpc::cli
