#pragma once

#include "swapdist/measures.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace swapdist {

// One frequency table over the n! orders of a structure. `structure` names
// the elements in rank order (e.g. "SOV": S=1, O=2, V=3); every order label
// must be a permutation of exactly those characters. The total F is always
// recomputed from the vector, never read from a file.
struct DatasetRow {
    std::string database;
    std::string kind;        // "dominant order", "corpus <tag>", "experiments"
    int n = 0;
    std::string structure;
    std::string unit;        // e.g. "langs.", "families", "sentences"
    std::vector<std::pair<std::string, double>> orders;  // label -> frequency

    std::string id() const;  // "database/kind/structure/unit"
    double total() const;
};

// CSV with header database,kind,n,structure,unit,order,frequency and one
// line per (row, order); lines sharing the first five fields form one row
// (first-appearance order). UTF-8 throughout.
std::vector<DatasetRow> load_csv(const std::string& path);
std::vector<DatasetRow> parse_csv(const std::string& text);
std::string to_csv(const std::vector<DatasetRow>& rows);

// JSON mirror of the same schema.
std::vector<DatasetRow> parse_json(const std::string& text);
std::string to_json_text(const std::vector<DatasetRow>& rows);
std::vector<DatasetRow> load_dataset(const std::string& path);  // by extension

// Frequencies over the permutohedron vertices; unmentioned orders get 0.
OrderDistribution to_distribution(const DatasetRow& row,
                                  std::shared_ptr<const Permutohedron> g);

}  // namespace swapdist
