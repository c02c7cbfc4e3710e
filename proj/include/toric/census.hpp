// Census ingestion and batch auditing: the vertex-matrix stream format used
// by the reflexive polytope databases, the record -> face fan -> audit
// pipeline, a worker pool with order-restoring aggregation, and report
// emission in a schema-stable structured document or a flat table.
#pragma once

#include "toric/audit.hpp"
#include "toric/fixtures.hpp"
#include "toric/io.hpp"
#include "toric/polytope.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace toric {

// One census record: the vertex matrix of a lattice polytope, normalized to
// rank rows by vertex-count columns (vertices as columns).
struct PolytopeRecord {
  int index = 0;
  long line = 0;  // 1-based line number of the header in the source stream
  int rank = 0;
  std::vector<LatticeVector> vertices;
};

// Parses the "r c" header / integer matrix stream.  The polytope dimension
// is the smaller of the two header numbers: with r < c the vertices are the
// c columns, with r > c they are the r rows.  Square headers are ambiguous
// and rejected; anything after the two header numbers on the line is a
// comment.
inline std::vector<PolytopeRecord> parse_palp_stream(std::istream& in) {
  std::vector<PolytopeRecord> records;
  std::string line;
  long lineno = 0;
  auto parse_error = [](long at, const std::string& why) {
    return Error("ParseError", "line " + std::to_string(at) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream header(line);
    long long r = 0, c = 0;
    if (!(header >> r)) continue;  // blank line between records
    if (!(header >> c)) throw parse_error(lineno, "header needs two integers");
    if (r <= 0 || c <= 0) throw parse_error(lineno, "header dimensions must be positive");
    if (r == c) throw parse_error(lineno, "square vertex matrix is ambiguous");
    const long header_line = lineno;
    std::vector<std::vector<Int>> matrix;
    for (long long i = 0; i < r; ++i) {
      if (!std::getline(in, line)) throw parse_error(lineno, "unexpected end of input in matrix");
      ++lineno;
      std::istringstream row_in(line);
      std::vector<Int> row;
      std::string tok;
      while (row_in >> tok) {
        try {
          row.push_back(Int(tok));
        } catch (const std::exception&) {
          throw parse_error(lineno, "matrix entry '" + tok + "' is not an integer");
        }
      }
      if (static_cast<long long>(row.size()) != c)
        throw parse_error(lineno, "expected " + std::to_string(c) + " entries, got " +
                                      std::to_string(row.size()));
      matrix.push_back(std::move(row));
    }
    PolytopeRecord rec;
    rec.index = static_cast<int>(records.size());
    rec.line = header_line;
    if (r < c) {
      rec.rank = static_cast<int>(r);
      for (long long j = 0; j < c; ++j) {
        LatticeVector v(r);
        for (long long i = 0; i < r; ++i) v[i] = matrix[i][j];
        rec.vertices.push_back(std::move(v));
      }
    } else {
      rec.rank = static_cast<int>(c);
      for (long long i = 0; i < r; ++i) rec.vertices.push_back(LatticeVector(matrix[i]));
    }
    if (rec.rank < 2 || rec.rank > 4)
      throw parse_error(header_line, "polytope rank " + std::to_string(rec.rank) +
                                         " outside the supported range 2..4");
    records.push_back(std::move(rec));
  }
  return records;
}

inline std::vector<PolytopeRecord> parse_palp_string(const std::string& text) {
  std::istringstream in(text);
  return parse_palp_stream(in);
}

// Canonical emitter: rank rows by vertex-count columns.  parse(emit(x))
// reproduces the vertex matrices bit-exactly.
inline std::string emit_palp_stream(const std::vector<PolytopeRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += std::to_string(rec.rank) + " " + std::to_string(rec.vertices.size()) + "\n";
    for (int i = 0; i < rec.rank; ++i) {
      for (std::size_t j = 0; j < rec.vertices.size(); ++j) {
        if (j) out += " ";
        out += rec.vertices[j][i].str();
      }
      out += "\n";
    }
  }
  return out;
}

enum class BatchMode { Census, Gorenstein3fold, Conjecture };

inline const char* to_string(BatchMode m) {
  switch (m) {
    case BatchMode::Census: return "census";
    case BatchMode::Gorenstein3fold: return "gorenstein3";
    default: return "conjecture";
  }
}

struct AuditFlags {
  bool gorenstein = false;
  bool fano = false;
  bool smooth = false;
};

struct AuditReport {
  int record_id = 0;
  AuditFlags flags;
  HyperbolicityCertificate certificate;
  long long timing_ms = 0;
  std::string error;  // per-record ingestion failure; the batch never aborts
};

// Audit a single record under the selected mode.  The default polarization
// is L = -K, the canonical choice on a Gorenstein Fano input; a user
// coefficient vector replaces it when supplied.
inline AuditReport audit_record(const PolytopeRecord& rec, BatchMode mode,
                                const std::optional<std::vector<Int>>& user_polarization) {
  AuditReport report;
  report.record_id = rec.index;
  auto start = std::chrono::steady_clock::now();
  try {
    LatticePolytope poly = polytope_from_points(rec.rank, rec.vertices);
    Fan fan = face_fan(poly);
    report.flags.gorenstein = is_gorenstein(fan);
    report.flags.fano = is_gorenstein_fano(fan);
    report.flags.smooth = is_smooth(fan);
    TorusInvariantDivisor polarization = anticanonical_divisor(fan);
    if (user_polarization) {
      if (user_polarization->size() != fan.rays.size())
        throw Error("ParseError", "polarization has " + std::to_string(user_polarization->size()) +
                                      " coefficients but the fan has " +
                                      std::to_string(fan.rays.size()) + " rays");
      polarization.coeff = *user_polarization;
    }
    const std::string id = "record" + std::to_string(rec.index);
    switch (mode) {
      case BatchMode::Census:
        report.certificate =
            pseudo_hyperbolicity_certificate(fan, zero_divisor(fan), polarization);
        report.certificate.variety = id;
        break;
      case BatchMode::Gorenstein3fold:
        report.certificate = gorenstein_3fold_audit(fan, polarization, id);
        break;
      case BatchMode::Conjecture:
        report.certificate = conjecture_audit(fan, polarization, false, id);
        break;
    }
  } catch (const std::exception& e) {
    report.error = e.what();
    report.certificate.verdict = Verdict::NotCertified;
    report.certificate.reason = e.what();
  }
  report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return report;
}

inline int default_jobs() {
  if (const char* env = std::getenv("TORIC_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Maps records to reports with a worker pool; the output order is the
// record order regardless of worker count.
inline std::vector<AuditReport> batch_audit(const std::vector<PolytopeRecord>& records,
                                            BatchMode mode, int jobs = 0,
                                            const std::optional<std::vector<Int>>& polarization =
                                                std::nullopt) {
  if (jobs <= 0) jobs = default_jobs();
  std::vector<AuditReport> reports(records.size());
  if (jobs == 1 || records.size() <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i)
      reports[i] = audit_record(records[i], mode, polarization);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      reports[i] = audit_record(records[i], mode, polarization);
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(jobs, static_cast<int>(records.size()));
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return reports;
}

inline nlohmann::json certificate_to_json(const HyperbolicityCertificate& cert) {
  nlohmann::json j;
  std::string verdict = to_string(cert.verdict);
  if (cert.verdict == Verdict::NotCertified && !cert.reason.empty())
    verdict += "(" + cert.reason + ")";
  j["verdict"] = verdict;
  j["exceptional_rays"] = cert.exceptional_rays;
  j["epsilon"] = cert.epsilon.str();
  auto& genus = j["genus_table"] = nlohmann::json::array();
  for (const auto& g : cert.genus_table)
    genus.push_back({{"node", g.node},
                     {"ray", g.ray},
                     {"genus", to_i64(g.genus)},
                     {"basepoint_free", g.basepoint_free}});
  auto& sur = j["surjectivity_log"] = nlohmann::json::array();
  for (const auto& s : cert.surjectivity_log)
    sur.push_back({{"node", s.node},
                   {"ray", s.ray},
                   {"h0", to_i64(s.h0_total)},
                   {"h0_minus_ray", to_i64(s.h0_off)},
                   {"h0_restriction", to_i64(s.h0_restricted)},
                   {"surjective", s.surjective}});
  return j;
}

inline nlohmann::json report_to_json(const AuditReport& report) {
  nlohmann::json j = certificate_to_json(report.certificate);
  j["record_id"] = report.record_id;
  j["flags"] = {{"gorenstein", report.flags.gorenstein},
                {"fano", report.flags.fano},
                {"smooth", report.flags.smooth}};
  j["timing_ms"] = report.timing_ms;
  return j;
}

enum class ReportFormat { Structured, Tabular };

namespace detail {

inline std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace detail

// Structured: a JSON document { "schema": ..., "reports": [...] } whose
// entries carry exactly the report fields.  Tabular: a TSV with the same
// columns flattened, one row per record.
inline std::string emit_report(const std::vector<AuditReport>& reports, ReportFormat format) {
  if (format == ReportFormat::Structured) {
    nlohmann::json doc;
    doc["schema"] = "toric-audit-report/1";
    auto& arr = doc["reports"] = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return doc.dump(2) + "\n";
  }
  std::string out =
      "record_id\tgorenstein\tfano\tsmooth\tverdict\texceptional_rays\tepsilon\tgenus_table\t"
      "surjectivity_log\ttiming_ms\n";
  for (const auto& r : reports) {
    const auto& c = r.certificate;
    std::string verdict = to_string(c.verdict);
    if (c.verdict == Verdict::NotCertified && !c.reason.empty()) verdict += "(" + c.reason + ")";
    std::string genus;
    for (std::size_t i = 0; i < c.genus_table.size(); ++i) {
      if (i) genus += ";";
      genus += c.genus_table[i].node + ":" + c.genus_table[i].genus.str();
    }
    std::string sur;
    for (std::size_t i = 0; i < c.surjectivity_log.size(); ++i) {
      const auto& s = c.surjectivity_log[i];
      if (i) sur += ";";
      sur += s.node + ":ray" + std::to_string(s.ray) + ":" + s.h0_total.str() + "-" +
             s.h0_off.str() + "=" + s.h0_restricted.str() + (s.surjective ? ":ok" : ":fail");
    }
    out += std::to_string(r.record_id) + "\t" + (r.flags.gorenstein ? "1" : "0") + "\t" +
           (r.flags.fano ? "1" : "0") + "\t" + (r.flags.smooth ? "1" : "0") + "\t" + verdict +
           "\t" + detail::join_ints(c.exceptional_rays) + "\t" + c.epsilon.str() + "\t" + genus +
           "\t" + sur + "\t" + std::to_string(r.timing_ms) + "\n";
  }
  return out;
}

}  // namespace toric
