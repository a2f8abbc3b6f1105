#include "motif/results.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace motif {

void ResultSet::write_csv(std::ostream& out) const {
  out << "# k=" << k << " seed=" << seed << " mode=" << mode << " samples=" << total_samples
      << " colorings=" << colorings << " wall_seconds=" << wall_seconds << "\n";
  out << "code_hex,g_hat,colorful_hat,samples,frequency,covered\n";
  out << std::setprecision(17);
  for (const ResultRow& r : rows)
    out << r.code.hex() << ',' << r.g_hat << ',' << r.colorful_hat << ',' << r.samples << ','
        << r.frequency << ',' << (r.covered ? 1 : 0) << "\n";
}

ResultSet ResultSet::read_csv(std::istream& in) {
  ResultSet rs;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string tok;
      while (meta >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        if (key == "k") rs.k = std::stoi(value);
        else if (key == "seed") rs.seed = std::stoull(value);
        else if (key == "mode") rs.mode = value;
        else if (key == "samples") rs.total_samples = std::stoull(value);
        else if (key == "colorings") rs.colorings = std::stoi(value);
        else if (key == "wall_seconds") rs.wall_seconds = std::stod(value);
      }
      continue;
    }
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    ResultRow row;
    std::getline(ls, field, ',');
    row.code = GraphletCode{parse_hex_u128(field), static_cast<u8>(rs.k)};
    std::getline(ls, field, ',');
    row.g_hat = std::stod(field);
    std::getline(ls, field, ',');
    row.colorful_hat = std::stod(field);
    std::getline(ls, field, ',');
    row.samples = std::stoull(field);
    std::getline(ls, field, ',');
    row.frequency = std::stod(field);
    if (std::getline(ls, field, ',')) row.covered = field == "1";
    rs.rows.push_back(row);
  }
  if (rs.k == 0) throw parse_error("result file carries no k");
  return rs;
}

void ResultSet::write_json(std::ostream& out) const {
  nlohmann::json j;
  j["k"] = k;
  j["seed"] = seed;
  j["mode"] = mode;
  j["samples"] = total_samples;
  j["colorings"] = colorings;
  j["wall_seconds"] = wall_seconds;
  auto& arr = j["graphlets"] = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    nlohmann::json row;
    row["code"] = r.code.hex();
    row["g_hat"] = r.g_hat;
    row["colorful_hat"] = r.colorful_hat;
    row["samples"] = r.samples;
    row["frequency"] = r.frequency;
    row["covered"] = r.covered;
    arr.push_back(std::move(row));
  }
  out << j.dump(2) << "\n";
}

void write_census_csv(std::ostream& out, const Census& census) {
  out << "# k=" << census.k << "\n";
  out << "graphlet_code_hex,count\n";
  for (const auto& [code, count] : census.counts)
    out << code.hex() << ',' << dec_string(count) << "\n";
}

Census read_census_csv(std::istream& in) {
  Census census;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("k=");
      if (pos != std::string::npos) census.k = std::stoi(line.substr(pos + 2));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) throw parse_error("bad census line: " + line);
    GraphletCode code{parse_hex_u128(line.substr(0, comma)), static_cast<u8>(census.k)};
    census.counts[code] = parse_dec_u128(line.substr(comma + 1));
  }
  return census;
}

MetricsReport compute_metrics(const ResultSet& estimates, const Census& truth) {
  if (truth.k != 0 && estimates.k != truth.k)
    throw std::invalid_argument("estimate/truth size mismatch: k=" +
                                std::to_string(estimates.k) + " vs k=" +
                                std::to_string(truth.k));
  MetricsReport report;
  double truth_total = to_double(truth.total());
  double est_total = 0;
  for (const ResultRow& r : estimates.rows) est_total += r.g_hat;

  std::map<GraphletCode, double> est_by_code;
  std::map<GraphletCode, u64> samples_by_code;
  for (const ResultRow& r : estimates.rows) {
    est_by_code[r.code] = r.g_hat;
    samples_by_code[r.code] = r.samples;
  }

  // l1 over frequencies on the union of supports.
  std::map<GraphletCode, std::pair<double, double>> freq;  // truth, estimate
  for (const auto& [code, count] : truth.counts)
    freq[code].first = truth_total > 0 ? to_double(count) / truth_total : 0;
  for (const ResultRow& r : estimates.rows)
    freq[r.code].second = est_total > 0 ? r.g_hat / est_total : 0;
  for (const auto& [code, fe] : freq) report.l1 += std::abs(fe.second - fe.first);

  u64 within = 0;
  for (const auto& [code, count] : truth.counts) {
    double c = to_double(count);
    auto it = est_by_code.find(code);
    double err = (it == est_by_code.end() || it->second == 0) ? -1.0 : (it->second - c) / c;
    report.err[code] = err;
    if (std::abs(err) <= 0.5) ++within;
  }
  report.fraction_within_half =
      truth.counts.empty() ? 0 : static_cast<double>(within) / truth.counts.size();

  std::optional<double> rarest;
  for (const auto& [code, count] : truth.counts) {
    auto it = samples_by_code.find(code);
    if (it == samples_by_code.end() || it->second < 10) continue;
    double f = truth_total > 0 ? to_double(count) / truth_total : 0;
    if (!rarest || f < *rarest) rarest = f;
  }
  report.rarest_found_frequency = rarest;
  return report;
}

}  // namespace motif
