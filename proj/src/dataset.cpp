#include "gtssm/dataset.hpp"

#include <fstream>

#include <json.hpp>

#include "gtssm/rng.hpp"

namespace gtssm {

namespace {
using nlohmann::json;
}

TaskRecord gen_record(const FiniteGroup& g, std::uint64_t seed, std::uint64_t index, int len) {
    TaskRecord rec;
    rec.x.resize(len);
    SplitMix64 rng = derive_stream(seed, index);
    for (int t = 0; t < len; ++t)
        rec.x[t] = static_cast<elem_t>(rng.next_below(static_cast<std::uint64_t>(g.order)));
    rec.y = prefix_products(g, rec.x);
    return rec;
}

Dataset gen_dataset(const FiniteGroup& g, long count, int len, std::uint64_t seed) {
    if (count < 1 || len < 1) throw std::invalid_argument("gen_dataset: count, len >= 1");
    Dataset ds;
    ds.header.group = g.spec;
    ds.header.element_order = g.element_order;
    ds.header.labels = g.labels;
    ds.header.count = count;
    ds.header.len = len;
    ds.header.seed = seed;
    ds.records.reserve(count);
    for (long i = 0; i < count; ++i)
        ds.records.push_back(gen_record(g, seed, static_cast<std::uint64_t>(i), len));
    return ds;
}

void write_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GtssmError("cannot open for writing: " + path);
    json h;
    h["format"] = ds.header.format;
    h["group"] = ds.header.group;
    h["element_order"] = ds.header.element_order;
    h["labels"] = ds.header.labels;
    h["count"] = ds.header.count;
    h["len"] = ds.header.len;
    h["seed"] = ds.header.seed;
    out << h.dump() << "\n";
    for (const TaskRecord& r : ds.records) {
        json j;
        j["x"] = r.x;
        j["y"] = r.y;
        out << j.dump() << "\n";
    }
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GtssmError("cannot open for reading: " + path);

    Dataset ds;
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) throw CorruptRecordError(1, "missing header line");
    ++line_no;
    json h;
    try {
        h = json::parse(line);
    } catch (const json::exception& e) {
        throw CorruptRecordError(line_no, std::string("bad header: ") + e.what());
    }
    if (!h.contains("format") || h["format"] != kDatasetFormatVersion)
        throw FormatVersionMismatchError("unsupported dataset format version");
    try {
        ds.header.group = h.at("group").get<std::string>();
        ds.header.element_order = h.value("element_order", std::string{});
        ds.header.labels = h.at("labels").get<std::vector<std::string>>();
        ds.header.count = h.at("count").get<long>();
        ds.header.len = h.at("len").get<int>();
        ds.header.seed = h.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw CorruptRecordError(line_no, std::string("bad header field: ") + e.what());
    }

    const FiniteGroup g = construct_group(ds.header.group);

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && static_cast<long>(ds.records.size()) == ds.header.count)
            continue;  // trailing newline
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw CorruptRecordError(line_no, std::string("bad record: ") + e.what());
        }
        TaskRecord rec;
        try {
            rec.x = j.at("x").get<std::vector<elem_t>>();
            rec.y = j.at("y").get<std::vector<elem_t>>();
        } catch (const json::exception& e) {
            throw CorruptRecordError(line_no, std::string("bad record field: ") + e.what());
        }
        if (rec.x.size() != rec.y.size()) throw CorruptRecordError(line_no, "|x| != |y|");
        for (elem_t v : rec.x)
            if (v < 0 || v >= g.order) throw CorruptRecordError(line_no, "token out of range");
        if (prefix_products(g, rec.x) != rec.y)
            throw CorruptRecordError(line_no, "y is not the running product of x");
        ds.records.push_back(std::move(rec));
    }
    if (static_cast<long>(ds.records.size()) != ds.header.count)
        throw CorruptRecordError(line_no + 1, "record count does not match header");
    return ds;
}

std::vector<int> curriculum_plan(int max_len, int start, int stride) {
    if (start < 2 || start > max_len) throw std::invalid_argument("curriculum_plan: 2 <= start <= max_len");
    if (stride < 1) throw std::invalid_argument("curriculum_plan: stride >= 1");
    std::vector<int> plan;
    for (int l = start; l <= max_len; l += stride) plan.push_back(l);
    return plan;
}

}  // namespace gtssm
