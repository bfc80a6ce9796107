#include "hcg/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <utility>

#include <json.hpp>

#include "hcg/text.hpp"

namespace hcg {

namespace {

constexpr std::string_view kCsvHeader =
    "cve_id,cvss_score,access_vector,access_complexity,patch_available";

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double parse_score(std::string_view field, std::size_t row) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("cvss_score is not a number: '" + std::string(field) + "'", row,
                     "cvss_score");
  }
  if (!(value >= 0.0 && value <= 10.0)) {
    throw ParseError("cvss_score outside [0,10]: " + std::string(field), row, "cvss_score");
  }
  return value;
}

AccessVector parse_access_vector(std::string_view field, std::size_t row) {
  const std::string token = upper(field);
  if (token == "REMOTE" || token == "NETWORK") return AccessVector::Remote;
  if (token == "LOCAL") return AccessVector::Local;
  throw ParseError("unknown access_vector: '" + std::string(field) + "'", row,
                   "access_vector");
}

Complexity parse_complexity_field(std::string_view field, std::size_t row) {
  auto parsed = parse_complexity(field);
  if (!parsed) {
    throw ParseError("unknown access_complexity: '" + std::string(field) + "'", row,
                     "access_complexity");
  }
  return *parsed;
}

bool parse_bool(std::string_view field, std::size_t row) {
  const std::string token = upper(field);
  if (token == "TRUE" || token == "1") return true;
  if (token == "FALSE" || token == "0") return false;
  throw ParseError("unknown patch_available flag: '" + std::string(field) + "'", row,
                   "patch_available");
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t row, std::string column)
    : std::runtime_error(row == 0 ? message
                                  : "row " + std::to_string(row) +
                                        (column.empty() ? "" : ", column " + column) + ": " +
                                        message),
      row_(row),
      column_(std::move(column)) {}

Catalog parse_catalog_csv(std::string_view text, std::string source) {
  Catalog catalog;
  catalog.source = std::move(source);

  std::size_t row = 0;
  bool header_seen = false;
  std::set<std::string, std::less<>> seen_ids;

  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view line = end == std::string_view::npos
                                ? text.substr(start)
                                : text.substr(start, end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    line = strip_cr(line);
    ++row;
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != kCsvHeader) {
        throw ParseError("header must be '" + std::string(kCsvHeader) + "'", row);
      }
      header_seen = true;
      continue;
    }

    const auto fields = split(line, ',');
    if (fields.size() != 5) {
      throw ParseError("expected 5 fields, found " + std::to_string(fields.size()), row);
    }
    VulnerabilityRecord record;
    record.cve_id = std::string(fields[0]);
    if (record.cve_id.empty()) throw ParseError("empty cve_id", row, "cve_id");
    record.cvss_score = parse_score(fields[1], row);
    record.access_vector = parse_access_vector(fields[2], row);
    record.complexity = parse_complexity_field(fields[3], row);
    record.patch_available = parse_bool(fields[4], row);
    if (!seen_ids.insert(record.cve_id).second) {
      throw ParseError("duplicate cve_id '" + record.cve_id + "'", row, "cve_id");
    }
    catalog.records.push_back(std::move(record));
  }

  if (!header_seen) throw ParseError("missing header line", 1);
  return catalog;
}

std::string write_catalog_csv(const Catalog& catalog) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : catalog.records) {
    out += r.cve_id;
    out += ',';
    out += to_short_string(r.cvss_score);
    out += ',';
    out += r.access_vector == AccessVector::Remote ? "REMOTE" : "LOCAL";
    out += ',';
    out += upper(to_string(r.complexity));
    out += ',';
    out += r.patch_available ? "true" : "false";
    out += '\n';
  }
  return out;
}

namespace {

using nlohmann::json;

bool any_patch_tag(const json& cve) {
  const auto refs = cve.find("references");
  if (refs == cve.end() || !refs->is_object()) return false;
  const auto data = refs->find("reference_data");
  if (data == refs->end() || !data->is_array()) return false;
  for (const auto& ref : *data) {
    const auto tags = ref.find("tags");
    if (tags == ref.end() || !tags->is_array()) continue;
    for (const auto& tag : *tags) {
      if (tag.is_string() && tag.get<std::string>().find("Patch") != std::string::npos) {
        return true;
      }
    }
  }
  return false;
}

// Extracts metrics from one feed item; returns false when the item carries
// neither usable v2 nor v3 base metrics.
bool extract_metrics(const json& item, VulnerabilityRecord& record) {
  const auto impact = item.find("impact");
  if (impact == item.end() || !impact->is_object()) return false;

  if (const auto v2 = impact->find("baseMetricV2"); v2 != impact->end() && v2->is_object()) {
    const auto cvss = v2->find("cvssV2");
    if (cvss != v2->end() && cvss->is_object() && cvss->contains("baseScore") &&
        cvss->contains("accessVector") && cvss->contains("accessComplexity")) {
      const std::string vector = upper((*cvss)["accessVector"].get<std::string>());
      const auto complexity = parse_complexity((*cvss)["accessComplexity"].get<std::string>());
      if (complexity && (*cvss)["baseScore"].is_number()) {
        record.cvss_score = (*cvss)["baseScore"].get<double>();
        record.access_vector = (vector == "NETWORK" || vector == "ADJACENT_NETWORK")
                                   ? AccessVector::Remote
                                   : AccessVector::Local;
        record.complexity = *complexity;
        return true;
      }
    }
  }

  if (const auto v3 = impact->find("baseMetricV3"); v3 != impact->end() && v3->is_object()) {
    const auto cvss = v3->find("cvssV3");
    if (cvss != v3->end() && cvss->is_object() && cvss->contains("baseScore") &&
        cvss->contains("attackVector") && cvss->contains("attackComplexity")) {
      const std::string vector = upper((*cvss)["attackVector"].get<std::string>());
      const std::string complexity = upper((*cvss)["attackComplexity"].get<std::string>());
      if ((complexity == "LOW" || complexity == "HIGH") && (*cvss)["baseScore"].is_number()) {
        record.cvss_score = (*cvss)["baseScore"].get<double>();
        record.access_vector = (vector == "NETWORK" || vector == "ADJACENT_NETWORK")
                                   ? AccessVector::Remote
                                   : AccessVector::Local;
        record.complexity = complexity == "LOW" ? Complexity::Low : Complexity::High;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

NvdParseResult parse_nvd_feed(std::string_view text, std::string source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid NVD feed document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("CVE_Items") || !doc["CVE_Items"].is_array()) {
    throw ParseError("invalid NVD feed document: missing CVE_Items array");
  }

  NvdParseResult result;
  result.catalog.source = std::move(source);
  std::set<std::string, std::less<>> seen_ids;

  for (const auto& item : doc["CVE_Items"]) {
    if (!item.is_object() || !item.contains("cve")) {
      throw ParseError("invalid NVD feed document: item without cve block");
    }
    const auto& cve = item["cve"];
    if (!cve.contains("CVE_data_meta") || !cve["CVE_data_meta"].contains("ID")) {
      throw ParseError("invalid NVD feed document: item without CVE_data_meta.ID");
    }

    VulnerabilityRecord record;
    record.cve_id = cve["CVE_data_meta"]["ID"].get<std::string>();
    if (!extract_metrics(item, record)) {
      ++result.skipped;
      continue;
    }
    record.patch_available = any_patch_tag(cve);
    record.validate();
    if (!seen_ids.insert(record.cve_id).second) {
      throw ParseError("duplicate cve_id '" + record.cve_id + "' in feed");
    }
    result.catalog.records.push_back(std::move(record));
  }

  if (result.catalog.records.empty()) {
    throw ParseError("NVD feed contains no usable items");
  }
  return result;
}

std::vector<VulnerabilityRecord> filter_candidates(const Catalog& catalog,
                                                   const HoneypotProfile& profile) {
  profile.validate();
  std::vector<VulnerabilityRecord> eligible;
  for (const auto& record : catalog.records) {
    if (record.access_vector != AccessVector::Remote) continue;
    if (!record.patch_available) continue;
    if (rank(record.complexity) > rank(profile.max_complexity)) continue;
    eligible.push_back(record);
  }
  return eligible;
}

GameVulnerability derive_game_vulnerability(const VulnerabilityRecord& record) {
  const double r = static_cast<double>(rank(record.complexity));
  GameVulnerability out;
  out.id = record.cve_id;
  out.exploit_time = r;
  out.open_cost = r / 2.0;
  out.patch_cost = r / 2.0;
  return out;
}

}  // namespace hcg
