// Shared test fixtures: the seven-vulnerability IoV catalog, NVD feed
// snippets and the three-vulnerability worked instance with
// t = (2,1,3) / psi = (2,1,3).

#pragma once

#include <string_view>
#include <vector>

#include "hcg/model.hpp"

namespace fixtures {

inline constexpr std::string_view kCatalogCsv =
    "cve_id,cvss_score,access_vector,access_complexity,patch_available\n"
    "CVE-2018-9311,10.0,REMOTE,LOW,true\n"
    "CVE-2018-9318,10.0,REMOTE,LOW,true\n"
    "CVE-2019-9977,6.8,REMOTE,MEDIUM,true\n"
    "CVE-2018-9313,5.7,REMOTE,MEDIUM,true\n"
    "CVE-2012-6510,4.3,REMOTE,MEDIUM,true\n"
    "CVE-2018-6508,6.0,REMOTE,MEDIUM,true\n"
    "CVE-2016-9337,4.0,REMOTE,HIGH,true\n";

// Three items: one with v2 metrics and a Patch tag, one with v3 metrics
// only, one with no metric block at all (must be skipped).
inline constexpr std::string_view kNvdFeed = R"({
  "CVE_data_type": "CVE",
  "CVE_Items": [
    {
      "cve": {
        "CVE_data_meta": {"ID": "CVE-2019-9977"},
        "references": {"reference_data": [
          {"url": "https://example.invalid/advisory", "tags": ["Patch", "Vendor Advisory"]}
        ]}
      },
      "impact": {"baseMetricV2": {"cvssV2": {
        "baseScore": 6.8, "accessVector": "NETWORK", "accessComplexity": "MEDIUM"
      }}}
    },
    {
      "cve": {
        "CVE_data_meta": {"ID": "CVE-2020-10558"},
        "references": {"reference_data": [
          {"url": "https://example.invalid/writeup", "tags": ["Exploit"]}
        ]}
      },
      "impact": {"baseMetricV3": {"cvssV3": {
        "baseScore": 8.1, "attackVector": "NETWORK", "attackComplexity": "HIGH"
      }}}
    },
    {
      "cve": {
        "CVE_data_meta": {"ID": "CVE-2021-0001"},
        "references": {"reference_data": []}
      },
      "impact": {}
    }
  ]
})";

inline hcg::GameVulnerability make_vuln(std::string id, double t) {
  hcg::GameVulnerability v;
  v.id = std::move(id);
  v.exploit_time = t;
  v.open_cost = t / 2.0;
  v.patch_cost = t / 2.0;
  return v;
}

// The three-vulnerability instance behind the worked examples:
// t = (2,1,3), so gamma = (2,3,1) at T = 4 and psi = (2,1,3).
inline std::vector<hcg::GameVulnerability> worked_vulns() {
  return {make_vuln("v1", 2.0), make_vuln("v2", 1.0), make_vuln("v3", 3.0)};
}

// LIH-eligible case-study set: t = (1,1,2,2,2,2).
inline std::vector<hcg::GameVulnerability> lih_case_vulns() {
  return {make_vuln("v1", 1.0), make_vuln("v2", 1.0), make_vuln("v3", 2.0),
          make_vuln("v4", 2.0), make_vuln("v5", 2.0), make_vuln("v6", 2.0)};
}

// HIH case-study set without the first low-complexity entry:
// t = (1,2,2,2,2,3).
inline std::vector<hcg::GameVulnerability> hih_case_vulns() {
  return {make_vuln("v2", 1.0), make_vuln("v3", 2.0), make_vuln("v4", 2.0),
          make_vuln("v5", 2.0), make_vuln("v6", 2.0), make_vuln("v7", 3.0)};
}

}  // namespace fixtures
