#include "zsum/report.hpp"

#include <algorithm>
#include <sstream>

#include "zsum/errors.hpp"
#include "zsum/sequence_io.hpp"

#ifndef ZSUM_VERSION
#define ZSUM_VERSION "0.0.0"
#endif

namespace zsum {

namespace {

nlohmann::ordered_json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::string opt(const std::optional<BigInt>& v) { return v ? v->str() : "-"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string compact(const GSequence& s) {
  std::string out;
  for (const auto& [e, k] : s.entries()) {
    if (!out.empty()) out += ' ';
    out += to_string(e);
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "(empty)" : out;
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::table;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw InvalidInput("unknown format '" + std::string(name) + "'");
}

std::string_view tool_version() { return ZSUM_VERSION; }

nlohmann::ordered_json report_json(const Report& rep) {
  const auto& b = rep.bounds;
  nlohmann::ordered_json j;
  j["invariant"] = std::string(invariant_name(b.invariant));
  j["group"] = to_string(b.group);
  j["canonical_group"] = to_string(b.canonical_group);
  j["r"] = b.r;
  j["lower"] = big(b.lower);
  j["upper"] = big(b.upper);
  if (b.exact) j["exact"] = big(*b.exact);
  j["sources"] = nlohmann::ordered_json::array();
  for (const auto& s : b.sources) {
    nlohmann::ordered_json e;
    e["tag"] = s.tag;
    e["applicability"] = s.applies ? "applies" : "fails-precondition";
    if (s.lower) e["lower"] = big(*s.lower);
    if (s.upper) e["upper"] = big(*s.upper);
    if (!s.note.empty()) e["note"] = s.note;
    j["sources"].push_back(std::move(e));
  }
  if (rep.certificate) j["certificate"] = to_json(to_document(*rep.certificate));
  j["runtime_ms"] = rep.runtime_ms;
  j["nodes"] = rep.nodes;
  return j;
}

std::string render_report(const Report& rep, OutputFormat fmt) {
  const auto& b = rep.bounds;
  std::ostringstream out;
  switch (fmt) {
    case OutputFormat::json:
      out << report_json(rep).dump(2) << "\n";
      break;
    case OutputFormat::table: {
      auto row = [&](std::string_view k, const std::string& v) {
        out << k << std::string(17 - k.size(), ' ') << v << "\n";
      };
      row("invariant", std::string(invariant_name(b.invariant)));
      row("group", to_string(b.group));
      row("canonical_group", to_string(b.canonical_group));
      row("r", std::to_string(b.r));
      row("lower", b.lower.str());
      row("upper", b.upper.str());
      row("exact", opt(b.exact));
      row("runtime_ms", std::to_string(rep.runtime_ms));
      row("nodes", std::to_string(rep.nodes));
      if (rep.certificate) row("certificate", compact(*rep.certificate));
      std::size_t w = 3;
      for (const auto& s : b.sources) w = std::max(w, s.tag.size());
      out << "sources\n";
      for (const auto& s : b.sources) {
        std::string line = "  " + s.tag + std::string(w + 2 - s.tag.size(), ' ');
        std::string app = s.applies ? "applies" : "fails-precondition";
        line += app + std::string(20 - app.size(), ' ');
        std::string lo = opt(s.lower), hi = opt(s.upper);
        line += lo + std::string(lo.size() < 8 ? 8 - lo.size() : 1, ' ');
        line += hi + std::string(hi.size() < 8 ? 8 - hi.size() : 1, ' ');
        line += s.note;
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << "\n";
      }
      break;
    }
    case OutputFormat::csv: {
      out << "invariant,group,canonical_group,r,lower,upper,exact,runtime_ms,nodes,source,applicability,source_lower,"
             "source_upper\n";
      const std::string head = csv_field(std::string(invariant_name(b.invariant))) + "," +
                               csv_field(to_string(b.group)) + "," + csv_field(to_string(b.canonical_group)) + "," +
                               std::to_string(b.r) + "," + b.lower.str() + "," + b.upper.str() + "," +
                               (b.exact ? b.exact->str() : "") + "," + std::to_string(rep.runtime_ms) + "," +
                               std::to_string(rep.nodes);
      for (const auto& s : b.sources)
        out << head << "," << csv_field(s.tag) << "," << (s.applies ? "applies" : "fails-precondition") << ","
            << (s.lower ? s.lower->str() : "") << "," << (s.upper ? s.upper->str() : "") << "\n";
      if (b.sources.empty()) out << head << ",,,,\n";
      break;
    }
  }
  return out.str();
}

}  // namespace zsum
