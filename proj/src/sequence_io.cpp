#include "zsum/sequence_io.hpp"

#include <fstream>
#include <sstream>

#include "zsum/errors.hpp"

namespace zsum {

nlohmann::ordered_json to_json(const SequenceDocument& doc) {
  nlohmann::ordered_json j;
  j["group"] = doc.group.orders();
  auto elems = nlohmann::ordered_json::array();
  for (const auto& e : doc.elements) elems.push_back(e.residues);
  j["elements"] = std::move(elems);
  return j;
}

SequenceDocument sequence_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("group") || !j.contains("elements"))
      throw InvalidInput("sequence document needs 'group' and 'elements'");
    SequenceDocument doc;
    doc.group = GroupSpec(j.at("group").get<std::vector<std::int64_t>>());
    for (const auto& e : j.at("elements")) {
      GroupElement g(e.get<std::vector<std::int64_t>>());
      require_element(doc.group, g);
      doc.elements.push_back(std::move(g));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed sequence document: ") + e.what());
  }
}

std::string write_sequence_document(const SequenceDocument& doc) { return to_json(doc).dump() + "\n"; }

SequenceDocument read_sequence_document(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("sequence document is not valid JSON: ") + e.what());
  }
  return sequence_from_json(j);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("write failed for " + path.string());
}

SequenceDocument read_sequence_file(const std::filesystem::path& path) {
  return read_sequence_document(read_text_file(path));
}

SequenceDocument to_document(const GSequence& s) { return SequenceDocument{s.group(), s.expanded()}; }

GSequence to_gsequence(const SequenceDocument& doc) { return GSequence(doc.group, doc.elements); }

SequenceDocument to_document(const PairSequence& s) { return SequenceDocument{s.group(), s.elements()}; }

PairSequence to_pair_sequence(const SequenceDocument& doc) { return PairSequence::from_elements(doc.group, doc.elements); }

}  // namespace zsum
