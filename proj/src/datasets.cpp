#include "swapdist/datasets.hpp"

#include "swapdist/format.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swapdist {

namespace {

constexpr const char* kHeader = "database,kind,n,structure,unit,order,frequency";

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw std::invalid_argument("csv line " + std::to_string(lineno) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

void validate_structure(const DatasetRow& row) {
    if (row.n < 1 || row.n > 7)
        throw std::invalid_argument("row " + row.id() + ": n must be in 1..7");
    if (row.structure.size() != static_cast<std::size_t>(row.n))
        throw std::invalid_argument("row " + row.id() + ": structure must name exactly n elements");
    std::string sorted_structure = row.structure;
    std::sort(sorted_structure.begin(), sorted_structure.end());
    if (std::adjacent_find(sorted_structure.begin(), sorted_structure.end()) !=
        sorted_structure.end())
        throw std::invalid_argument("row " + row.id() + ": structure elements must be distinct");
    bool any_positive = false;
    std::vector<std::string> seen;
    for (const auto& [label, freq] : row.orders) {
        std::string sorted_label = label;
        std::sort(sorted_label.begin(), sorted_label.end());
        if (sorted_label != sorted_structure)
            throw std::invalid_argument("row " + row.id() + ": order " + label +
                                        " is not a permutation of " + row.structure);
        if (!(freq >= 0.0))
            throw std::invalid_argument("row " + row.id() + ": order " + label +
                                        " has a negative or non-finite frequency");
        if (std::find(seen.begin(), seen.end(), label) != seen.end())
            throw std::invalid_argument("row " + row.id() + ": duplicate order " + label);
        seen.push_back(label);
        if (freq > 0.0) any_positive = true;
    }
    if (!any_positive)
        throw std::invalid_argument("row " + row.id() + ": needs at least one positive frequency");
}

double parse_frequency(const std::string& s, std::size_t lineno) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                    ": bad frequency '" + s + "'");
    return v;
}

}  // namespace

std::string DatasetRow::id() const {
    return database + "/" + kind + "/" + structure + "/" + unit;
}

double DatasetRow::total() const {
    double t = 0.0;
    for (const auto& [label, freq] : orders) t += freq;
    return t;
}

std::vector<DatasetRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line))
        throw std::invalid_argument("csv: empty input");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw std::invalid_argument("csv: header must be exactly '" + std::string(kHeader) + "'");

    std::vector<DatasetRow> rows;
    std::vector<std::string> keys;  // id per row, to find existing groups
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line, lineno);
        if (fields.size() != 7)
            throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                        ": expected 7 fields, got " + std::to_string(fields.size()));
        int n = 0;
        {
            const auto& s = fields[2];
            const auto res = std::from_chars(s.data(), s.data() + s.size(), n);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad n '" + s + "'");
        }
        const std::string key = fields[0] + "\x1f" + fields[1] + "\x1f" + fields[2] + "\x1f" +
                                fields[3] + "\x1f" + fields[4];
        std::size_t idx = keys.size();
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i] == key) {
                idx = i;
                break;
            }
        if (idx == keys.size()) {
            keys.push_back(key);
            rows.push_back(DatasetRow{fields[0], fields[1], n, fields[3], fields[4], {}});
        }
        DatasetRow& row = rows[idx];
        for (const auto& [label, freq] : row.orders)
            if (label == fields[5])
                throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                            ": duplicate order " + label + " in row " + row.id());
        row.orders.emplace_back(fields[5], parse_frequency(fields[6], lineno));
    }
    for (const auto& row : rows) validate_structure(row);
    return rows;
}

std::vector<DatasetRow> load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("load_csv: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::string to_csv(const std::vector<DatasetRow>& rows) {
    std::string out = std::string(kHeader) + "\n";
    for (const auto& row : rows)
        for (const auto& [label, freq] : row.orders) {
            out += csv_escape(row.database) + "," + csv_escape(row.kind) + "," +
                   std::to_string(row.n) + "," + csv_escape(row.structure) + "," +
                   csv_escape(row.unit) + "," + csv_escape(label) + "," + format_double(freq) +
                   "\n";
        }
    return out;
}

std::vector<DatasetRow> parse_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("json: parse failure: ") + e.what());
    }
    if (!doc.is_array()) throw std::invalid_argument("json: top level must be an array of rows");
    std::vector<DatasetRow> rows;
    for (const auto& item : doc) {
        DatasetRow row;
        try {
            row.database = item.at("database").get<std::string>();
            row.kind = item.at("kind").get<std::string>();
            row.n = item.at("n").get<int>();
            row.structure = item.at("structure").get<std::string>();
            row.unit = item.at("unit").get<std::string>();
            for (const auto& entry : item.at("orders")) {
                row.orders.emplace_back(entry.at("order").get<std::string>(),
                                        entry.at("frequency").get<double>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("json: bad row: ") + e.what());
        }
        rows.push_back(std::move(row));
    }
    for (const auto& row : rows) validate_structure(row);
    return rows;
}

std::string to_json_text(const std::vector<DatasetRow>& rows) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json orders = nlohmann::ordered_json::array();
        for (const auto& [label, freq] : row.orders)
            orders.push_back({{"order", label}, {"frequency", freq}});
        doc.push_back({{"database", row.database},
                       {"kind", row.kind},
                       {"n", row.n},
                       {"structure", row.structure},
                       {"unit", row.unit},
                       {"orders", std::move(orders)}});
    }
    return doc.dump(2) + "\n";
}

std::vector<DatasetRow> load_dataset(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".json") {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::invalid_argument("load_dataset: cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_json(buf.str());
    }
    if (ext == ".csv") return load_csv(path);
    throw std::invalid_argument("load_dataset: expected a .csv or .json path, got " + path);
}

OrderDistribution to_distribution(const DatasetRow& row,
                                  std::shared_ptr<const Permutohedron> g) {
    if (!g) throw std::invalid_argument("to_distribution: null graph");
    if (g->order() != row.n)
        throw std::invalid_argument("to_distribution: graph order " + std::to_string(g->order()) +
                                    " != row n " + std::to_string(row.n));
    validate_structure(row);

    std::vector<double> freqs(g->vertex_count(), 0.0);
    for (const auto& [label, freq] : row.orders) {
        std::vector<int> seq;
        seq.reserve(label.size());
        for (char c : label) {
            const auto pos = row.structure.find(c);
            seq.push_back(static_cast<int>(pos) + 1);
        }
        const VertexId v = g->vertex_of(Permutation(std::move(seq)));
        freqs[v] += freq;
    }
    std::vector<std::string> names;
    for (char c : row.structure) names.emplace_back(1, c);
    return OrderDistribution(std::move(g), std::move(freqs), std::move(names));
}

}  // namespace swapdist
