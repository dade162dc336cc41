#include "aqo/store.hpp"

#include <algorithm>
#include <cstdlib>

namespace fs = std::filesystem;

namespace aqo {

EntityStore::EntityStore(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_)) throw Error("cannot use store directory '" + root_.string() + "'");
}

EntityStore EntityStore::open(const std::string& explicit_root) {
    if (!explicit_root.empty()) return EntityStore(explicit_root);
    if (const char* env = std::getenv(kRootVariable); env && *env) return EntityStore(env);
    return EntityStore("aqo_store");
}

void EntityStore::check_name(const std::string& name) {
    const bool ok = !name.empty() && name.front() != '.' &&
                    std::all_of(name.begin(), name.end(), [](unsigned char c) {
                        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
                    });
    if (!ok) throw Error("invalid entity name '" + name + "' (use letters, digits, '_', '-', '.')");
}

void EntityStore::check_type(const std::string& type) const {
    if (std::find(kTypes.begin(), kTypes.end(), type) == kTypes.end()) throw Error("unknown entity type '" + type + "'");
}

fs::path EntityStore::path(const std::string& type, const std::string& name) const {
    check_type(type);
    check_name(name);
    return root_ / (name + "." + type + ".json");
}

bool EntityStore::contains(const std::string& type, const std::string& name) const {
    return fs::exists(path(type, name));
}

void EntityStore::save(const std::string& type, const std::string& name, const io::json& doc) const {
    io::write_file(path(type, name).string(), doc.dump(2) + "\n");
}

io::json EntityStore::load(const std::string& type, const std::string& name) const {
    const auto p = path(type, name);
    if (!fs::exists(p)) throw Error("no " + type + " named '" + name + "' in store " + root_.string());
    return io::parse_json(io::read_file(p.string()), p.string());
}

std::vector<std::string> EntityStore::list(const std::string& type) const {
    check_type(type);
    const std::string suffix = "." + type + ".json";
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(root_)) {
        const auto file = entry.path().filename().string();
        if (file.size() > suffix.size() && file.ends_with(suffix)) names.push_back(file.substr(0, file.size() - suffix.size()));
    }
    std::sort(names.begin(), names.end());
    return names;
}

fs::path EntityStore::run_directory(const std::string& name) const {
    check_name(name);
    const auto dir = root_ / (name + ".run");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create run directory '" + dir.string() + "': " + ec.message());
    return dir;
}

}  // namespace aqo
