#include "cubeshape/records_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace cubeshape {

namespace {

using json = nlohmann::ordered_json;

std::int64_t as_i64(const Int& n) { return to_i64_checked(n); }

ThreeClass three_class_from_name(const std::string& s) {
    if (s == "unramified") return ThreeClass::unramified_or_split;
    if (s == "tame") return ThreeClass::tame;
    if (s == "wild") return ThreeClass::wild;
    if (s == "invalid") return ThreeClass::invalid;
    throw std::invalid_argument("unknown three_class value: " + s);
}

}  // namespace

std::string record_to_json(const FieldRecord& rec) {
    json j;
    j["form"] = {as_i64(rec.form.a), as_i64(rec.form.b), as_i64(rec.form.c), as_i64(rec.form.d)};
    j["point"] = {as_i64(rec.point_b), as_i64(rec.point_c)};
    j["disc"] = as_i64(rec.disc_value);
    j["resolvent_disc"] = as_i64(rec.resolvent);
    j["tzf"] = {as_i64(rec.tzf.r), as_i64(rec.tzf.s), as_i64(rec.tzf.t)};
    j["content"] = as_i64(rec.content);
    j["shape"] = {rec.shape_x, rec.shape_y};
    j["tau"] = rec.tau;
    j["three_class"] = three_class_name(rec.three_class);
    j["maximal"] = rec.maximal;
    j["class_id"] = rec.class_id;
    j["oriented"] = rec.oriented;
    return j.dump();
}

void write_jsonl(const std::vector<FieldRecord>& records, std::ostream& os) {
    for (const auto& r : records) os << record_to_json(r) << "\n";
}

void write_csv(const std::vector<FieldRecord>& records, std::ostream& os) {
    os << "form_a,form_b,form_c,form_d,point_b,point_c,disc,resolvent_disc,"
          "tzf_r,tzf_s,tzf_t,content,shape_x,shape_y,tau,three_class,maximal,class_id,oriented\n";
    for (const auto& r : records) {
        os << r.form.a << "," << r.form.b << "," << r.form.c << "," << r.form.d << ","
           << r.point_b << "," << r.point_c << "," << r.disc_value << "," << r.resolvent << ","
           << r.tzf.r << "," << r.tzf.s << "," << r.tzf.t << "," << r.content << ","
           << json(r.shape_x).dump() << "," << json(r.shape_y).dump() << ","
           << json(r.tau).dump() << "," << three_class_name(r.three_class) << ","
           << (r.maximal ? "true" : "false") << "," << r.class_id << ","
           << (r.oriented ? "true" : "false") << "\n";
    }
}

FieldRecord record_from_json(const std::string& line) {
    json j = json::parse(line);
    FieldRecord r;
    auto geti = [&](const json& v) { return Int(v.get<std::int64_t>()); };
    r.form = {geti(j["form"][0]), geti(j["form"][1]), geti(j["form"][2]), geti(j["form"][3])};
    r.point_b = geti(j["point"][0]);
    r.point_c = geti(j["point"][1]);
    r.disc_value = geti(j["disc"]);
    r.resolvent = geti(j["resolvent_disc"]);
    r.tzf = {geti(j["tzf"][0]), geti(j["tzf"][1]), geti(j["tzf"][2])};
    r.content = geti(j["content"]);
    r.shape_x = j["shape"][0].get<double>();
    r.shape_y = j["shape"][1].get<double>();
    r.tau = j["tau"].get<double>();
    r.three_class = three_class_from_name(j["three_class"].get<std::string>());
    r.maximal = j["maximal"].get<bool>();
    r.class_id = j["class_id"].get<std::string>();
    r.oriented = j["oriented"].get<bool>();
    return r;
}

std::vector<FieldRecord> read_jsonl(std::istream& is) {
    std::vector<FieldRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(record_from_json(line));
    }
    return out;
}

std::vector<FieldRecord> read_jsonl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_jsonl(in);
}

}  // namespace cubeshape
