#pragma once

// Tabular summaries of a certificate family: one row per index, plus a
// footer with the pigeonhole classes of trace-ring bounds and the trend of
// the systole bound.  Decimals are annotations; the trend is decided on the
// exact cosh^2 values.

#include "hypcert/families.hpp"

#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypcert {

enum class ReportFormat { table, csv, json };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "table") return ReportFormat::table;
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format " + s);
}

inline constexpr unsigned kReportDigits = 12;

struct ReportRow {
  unsigned k = 0;
  std::string target;
  std::string ratio;  // w_1^2 / f(w)
  bool eq1 = false;
  std::string distance_mid;  // "-" when no distance
  std::string systole_hi;
  std::string trace_ring;
};

/// First index from which cosh^2 (hence the systole bound) decreases strictly
/// through the last certificate.  Empty when the last certificate has no
/// distance.
struct SystoleTrend {
  std::optional<unsigned> onset_k;
  unsigned last_k = 0;
  std::vector<unsigned> non_decreasing_at;  // k with cosh^2_{next} >= cosh^2_k
};

inline SystoleTrend systole_trend(const std::vector<FamilyCertificate>& certs) {
  SystoleTrend t;
  if (certs.empty()) return t;
  t.last_k = certs.back().k;
  if (!certs.back().cosh_sq) return t;
  std::size_t start = certs.size() - 1;
  for (std::size_t i = 0; i + 1 < certs.size(); ++i) {
    const auto& a = certs[i].cosh_sq;
    const auto& b = certs[i + 1].cosh_sq;
    if (!a || !b || compare(*b, *a) >= 0) {
      t.non_decreasing_at.push_back(certs[i].k);
      start = i + 1;
    }
  }
  if (t.non_decreasing_at.empty()) start = 0;
  while (start < certs.size() && !certs[start].cosh_sq) ++start;
  if (start < certs.size()) t.onset_k = certs[start].k;
  return t;
}

inline std::vector<ReportRow> report_rows(const std::vector<FamilyCertificate>& certs) {
  std::vector<ReportRow> rows;
  for (const auto& c : certs) {
    ReportRow r;
    r.k = c.k;
    r.target = to_string(c.target());
    r.ratio = to_decimal(c.eq1.ratio, kReportDigits);
    r.eq1 = c.eq1.holds();
    r.distance_mid = c.distance ? to_decimal(c.distance->midpoint(), kReportDigits) : "-";
    r.systole_hi = c.systole_upper_bound ? to_decimal(c.systole_upper_bound->hi, kReportDigits) : "-";
    r.trace_ring = c.trace_ring_bound.label();
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace detail {

inline std::string k_list(const std::vector<FamilyCertificate>& certs, const std::vector<std::size_t>& idx) {
  // compress consecutive runs: 1..5,7
  std::string out;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && certs[idx[j + 1]].k == certs[idx[j]].k + 1) ++j;
    if (!out.empty()) out += ",";
    out += std::to_string(certs[idx[i]].k);
    if (j > i) out += ".." + std::to_string(certs[idx[j]].k);
    i = j + 1;
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace detail

inline std::string render_report(const std::vector<FamilyCertificate>& certs, ReportFormat fmt) {
  if (certs.empty()) throw std::invalid_argument("report: no certificates");
  const auto groups = pigeonhole_groups(certs);
  const auto rows = report_rows(certs);
  const auto trend = systole_trend(certs);
  std::ostringstream os;

  if (fmt == ReportFormat::json) {
    nlohmann::json j;
    j["ambientGroupKey"] = certs.front().ambient_group_key;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"k", r.k},
                           {"target", r.target},
                           {"ratio", r.ratio},
                           {"eq1", r.eq1},
                           {"distanceMidpoint", r.distance_mid},
                           {"systoleUpperBound", r.systole_hi},
                           {"traceRingBound", r.trace_ring}});
    }
    j["groups"] = nlohmann::json::array();
    for (const auto& g : groups) {
      j["groups"].push_back({{"bound", g.bound.label()}, {"size", g.indices.size()}, {"k", detail::k_list(certs, g.indices)}});
    }
    j["systoleTrend"] = {{"onsetK", trend.onset_k ? nlohmann::json(*trend.onset_k) : nlohmann::json(nullptr)},
                         {"lastK", trend.last_k},
                         {"nonDecreasingAt", trend.non_decreasing_at}};
    return j.dump(2) + "\n";
  }

  if (fmt == ReportFormat::csv) {
    os << "k,target,ratio,eq1,distance_midpoint,systole_upper_bound,trace_ring_bound\n";
    for (const auto& r : rows) {
      os << r.k << ',' << detail::csv_field(r.target) << ',' << r.ratio << ',' << (r.eq1 ? "holds" : "fails") << ','
         << r.distance_mid << ',' << r.systole_hi << ',' << detail::csv_field(r.trace_ring) << '\n';
    }
    return os.str();
  }

  std::vector<std::string> head{"k", "target", "ratio", "eq1", "d (mid)", "sys <=", "trace ring"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.k), r.target, r.ratio, r.eq1 ? "holds" : "fails", r.distance_mid, r.systole_hi, r.trace_ring});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      if (i + 1 == row.size()) {
        os << row[i];
      } else {
        os << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      }
    }
    os << '\n';
  };
  os << "ambient group " << certs.front().ambient_group_key << '\n';
  line(head);
  for (const auto& row : cells) line(row);
  os << "trace-ring classes: " << groups.size() << '\n';
  for (const auto& g : groups) {
    os << "  " << g.bound.label() << ": " << g.indices.size() << " (k = " << detail::k_list(certs, g.indices) << ")\n";
  }
  if (trend.onset_k) {
    os << "systole bound strictly decreasing for k = " << *trend.onset_k << ".." << trend.last_k << '\n';
  } else {
    os << "systole bound: no distance at k = " << trend.last_k << '\n';
  }
  return os.str();
}

}  // namespace hypcert
