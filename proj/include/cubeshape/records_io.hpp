#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cubeshape/enumerate.hpp"

namespace cubeshape {

// one JSON object per line, fixed field order:
// form, point, disc, resolvent_disc, tzf, content, shape, tau, three_class,
// maximal, class_id, oriented
std::string record_to_json(const FieldRecord& rec);
void write_jsonl(const std::vector<FieldRecord>& records, std::ostream& os);

// CSV projection with the same field order (arrays flattened)
void write_csv(const std::vector<FieldRecord>& records, std::ostream& os);

FieldRecord record_from_json(const std::string& line);
std::vector<FieldRecord> read_jsonl(std::istream& is);
std::vector<FieldRecord> read_jsonl_file(const std::string& path);

}  // namespace cubeshape
