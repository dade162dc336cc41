#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aqo/io.hpp"

namespace aqo {

/// Flat directory of JSON entities, one file per (type, name):
/// <root>/<name>.<type>.json.  Run output (snapshots, reports, CSVs) goes to
/// <root>/<name>.run/.  Assumes a single writer.
class EntityStore {
public:
    static inline const std::vector<std::string> kTypes{"problem", "processor", "embedding",
                                                       "program", "result",    "solution"};
    static constexpr const char* kRootVariable = "AQO_STORE";

    explicit EntityStore(std::filesystem::path root);
    /// `explicit_root` if non-empty, else $AQO_STORE, else ./aqo_store.
    static EntityStore open(const std::string& explicit_root = {});

    const std::filesystem::path& root() const { return root_; }

    std::filesystem::path path(const std::string& type, const std::string& name) const;
    bool contains(const std::string& type, const std::string& name) const;
    void save(const std::string& type, const std::string& name, const io::json& doc) const;
    io::json load(const std::string& type, const std::string& name) const;
    /// Names stored for a type, sorted.
    std::vector<std::string> list(const std::string& type) const;

    /// Creates (and returns) the run directory for `name`.
    std::filesystem::path run_directory(const std::string& name) const;

    /// Names are [A-Za-z0-9_.-]+ without a leading dot.
    static void check_name(const std::string& name);

private:
    void check_type(const std::string& type) const;
    std::filesystem::path root_;
};

}  // namespace aqo
