// output.hpp — deterministic CSV/JSON writing and the JSON config-file reader

#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace friedrichs::cli {

// shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void comment(const std::string& line) { comments_.push_back(line); }
    void row(const std::vector<double>& values);
    void row_text(const std::vector<std::string>& cells);

    void write(std::ostream& os) const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::string> rows_;
};

// writes to path, or to fallback when path is empty or "-"
void emit(const std::string& path, std::ostream& fallback, const std::string& content);
void write_file(const std::string& path, const std::string& content);
std::string to_text(const CsvTable& table);
std::string to_text(const nlohmann::json& doc);

// JSON config reader.  Top-level keys map to options of the active
// subcommand (or to a nested object named after it); an object-valued
// "model" key is passed inline as --model-json.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* app) : app_(app) {}
    std::string to_config(const CLI::App*, bool, bool, std::string) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

private:
    const CLI::App* app_;
};

}  // namespace friedrichs::cli
