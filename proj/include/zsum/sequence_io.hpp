#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// The sequence file: {"group":[...],"elements":[[...],...]}. Element order is
// kept as written; extra keys are ignored on read.
struct SequenceDocument {
  GroupSpec group;
  std::vector<GroupElement> elements;
  friend bool operator==(const SequenceDocument&, const SequenceDocument&) = default;
};

nlohmann::ordered_json to_json(const SequenceDocument& doc);
SequenceDocument sequence_from_json(const nlohmann::json& j);

// Compact, newline-terminated; read(write(doc)) == doc and
// write(read(text)) == text for any text this function produced.
std::string write_sequence_document(const SequenceDocument& doc);
SequenceDocument read_sequence_document(std::string_view text);

SequenceDocument read_sequence_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// Multisets are written in the global element order.
SequenceDocument to_document(const GSequence& s);
GSequence to_gsequence(const SequenceDocument& doc);
SequenceDocument to_document(const PairSequence& s);
PairSequence to_pair_sequence(const SequenceDocument& doc);

}  // namespace zsum
