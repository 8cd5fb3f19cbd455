#pragma once

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "pfcsim/errors.hpp"

namespace pfc {

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

// Field access with path-qualified errors and rejection of unknown keys.
class StrictObject {
  public:
    StrictObject(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object())
            throw ValidationError(path_ + ": expected a JSON object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    template <typename T>
    T required(const std::string& key) {
        if (!j_.contains(key))
            throw ValidationError(path_ + ": missing required key '" + key + "'");
        return get<T>(key);
    }

    template <typename T>
    T optional(const std::string& key, T fallback) {
        if (!j_.contains(key))
            return fallback;
        return get<T>(key);
    }

    StrictObject child(const std::string& key) {
        if (!j_.contains(key))
            throw ValidationError(path_ + ": missing required key '" + key + "'");
        seen_.insert(key);
        return StrictObject(j_.at(key), path_ + "." + key);
    }

    bool child_present(const std::string& key) {
        if (!j_.contains(key))
            return false;
        seen_.insert(key);
        return true;
    }

    const nlohmann::json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    const nlohmann::json& json() const { return j_; }
    const std::string& path() const { return path_; }

    // Call last: every key of the object must have been consumed.
    void finish() const {
        for (const auto& item : j_.items())
            if (!seen_.contains(item.key()))
                throw ValidationError(path_ + ": unknown key '" + item.key() + "'");
    }

  private:
    template <typename T>
    T get(const std::string& key) {
        seen_.insert(key);
        try {
            return j_.at(key).get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(path_ + "." + key + ": " + e.what());
        }
    }

    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

} // namespace pfc
