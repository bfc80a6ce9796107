// Vulnerability catalog ingestion: CSV catalogs, NVD JSON feeds (schema 1.1
// subset), eligibility filtering per honeypot type and derivation of game
// parameters from CVSS metrics.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcg/model.hpp"

namespace hcg {

struct Catalog {
  std::vector<VulnerabilityRecord> records;
  std::string source;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, std::size_t row = 0,
                      std::string column = {});

  // 1-based input row (0 when not row-specific); the header is row 1.
  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

// Parses the catalog CSV format:
//   cve_id,cvss_score,access_vector,access_complexity,patch_available
// Field tokens are case-insensitive; NETWORK maps to Remote. Malformed rows,
// duplicate ids and scores outside [0,10] raise ParseError with the row
// number and column name.
Catalog parse_catalog_csv(std::string_view text, std::string source = "csv");

// Serialises a catalog back to the CSV format; parse(write(c)) == c.
std::string write_catalog_csv(const Catalog& catalog);

struct NvdParseResult {
  Catalog catalog;
  std::size_t skipped = 0;  // items carrying neither v2 nor v3 base metrics
};

// Parses an NVD CVE feed document (JSON, schema 1.1 subset). CVSS v2 base
// metrics are authoritative; items lacking them fall back to v3
// (attackComplexity LOW/HIGH, attackVector NETWORK and ADJACENT_NETWORK map
// to Remote). patch_available is true iff any reference tag contains
// "Patch". Items with neither metric block are skipped and counted; a feed
// with zero usable items is an error.
NvdParseResult parse_nvd_feed(std::string_view text, std::string source = "nvd");

// Records a honeypot of this profile can host: remote access vector, patch
// available, and complexity rank no higher than the profile's ceiling.
// Catalog order is preserved.
std::vector<VulnerabilityRecord> filter_candidates(const Catalog& catalog,
                                                   const HoneypotProfile& profile);

// Derives the game parameters from the CVSS complexity rank r:
// t = r and s+ = s- = r/2, so the switch-cost sum equals the exploitation
// time.
GameVulnerability derive_game_vulnerability(const VulnerabilityRecord& record);

}  // namespace hcg
