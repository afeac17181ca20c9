#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtssm/group.hpp"

namespace gtssm {

inline constexpr const char* kDatasetFormatVersion = "gtssm-ds/1";

struct DatasetHeader {
    std::string format = kDatasetFormatVersion;
    std::string group;                // group spec string
    std::string element_order;        // indexing convention tag
    std::vector<std::string> labels;  // canonical element labels
    long count = 0;
    int len = 0;
    std::uint64_t seed = 0;
};

struct TaskRecord {
    std::vector<elem_t> x;  // tokens
    std::vector<elem_t> y;  // running products
};

struct Dataset {
    DatasetHeader header;
    std::vector<TaskRecord> records;
};

// Record `index` of the (g, seed) stream: tokens from the SplitMix64 stream
// derived from (seed, index), y = prefix products.  Independent of count,
// so generation can shard by index.
TaskRecord gen_record(const FiniteGroup& g, std::uint64_t seed, std::uint64_t index, int len);

Dataset gen_dataset(const FiniteGroup& g, long count, int len, std::uint64_t seed);

// One header line, then one JSON object {"x":[...],"y":[...]} per record;
// UTF-8, LF endings.
void write_dataset(const Dataset& ds, const std::string& path);

// Re-verifies y = prefix_products(G, x) per record; any malformed or
// inconsistent line raises CorruptRecordError with its line number.
Dataset read_dataset(const std::string& path);

// Increasing training lengths start..max_len with the given stride.
std::vector<int> curriculum_plan(int max_len, int start, int stride = 1);

}  // namespace gtssm
