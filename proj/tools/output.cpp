// output.cpp — deterministic CSV/JSON writing and the JSON config-file reader

#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "friedrichs/error.hpp"

namespace friedrichs::cli {

using nlohmann::json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void CsvTable::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    row_text(cells);
}

void CsvTable::row_text(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw std::logic_error("CSV row width does not match the header");
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    rows_.push_back(std::move(line));
}

void CsvTable::write(std::ostream& os) const {
    for (const auto& c : comments_) os << "# " << c << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& r : rows_) os << r << '\n';
}

std::string to_text(const CsvTable& table) {
    std::ostringstream os;
    table.write(os);
    return os.str();
}

std::string to_text(const json& doc) { return doc.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

void emit(const std::string& path, std::ostream& fallback, const std::string& content) {
    if (path.empty() || path == "-") {
        fallback << content;
    } else {
        write_file(path, content);
    }
}

std::string JsonConfig::to_config(const CLI::App*, bool, bool, std::string) const {
    return "{}\n";
}

namespace {

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_number(v.get<double>());
    return v.dump();
}

void add_items(std::vector<CLI::ConfigItem>& items, const json& obj,
               const std::vector<std::string>& parents) {
    for (const auto& [key, value] : obj.items()) {
        CLI::ConfigItem item;
        item.parents = parents;
        if (key == "model" && value.is_object()) {
            item.name = "model-json";
            item.inputs = {value.dump()};
        } else if (value.is_array()) {
            item.name = key;
            for (const auto& x : value) {
                if (x.is_object() || x.is_array())
                    throw CLI::ConversionError("config key '" + key + "' holds nested arrays");
                item.inputs.push_back(scalar_text(x));
            }
        } else if (value.is_object()) {
            throw CLI::ConversionError("config key '" + key + "' is an unexpected object");
        } else {
            item.name = key;
            item.inputs = {scalar_text(value)};
        }
        items.push_back(std::move(item));
    }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    json doc;
    try {
        doc = json::parse(input);
    } catch (const json::parse_error& e) {
        throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<std::string> parents;
    for (const CLI::App* sub : app_->get_subcommands()) parents.push_back(sub->get_name());
    std::vector<CLI::ConfigItem> items;
    if (parents.size() == 1 && doc.contains(parents.front()) &&
        doc.at(parents.front()).is_object()) {
        json nested = doc.at(parents.front());
        doc.erase(parents.front());
        add_items(items, nested, parents);
    }
    add_items(items, doc, parents);
    return items;
}

}  // namespace friedrichs::cli
