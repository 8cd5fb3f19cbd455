#include "pfcsim/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pfcsim/errors.hpp"

namespace pfc {

std::string format_g9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

namespace {

std::string escape(const std::string& value) {
    std::string escaped;
    for (char c : value) {
        if (c == '"' || c == '\\')
            escaped += '\\';
        escaped += c;
    }
    return escaped;
}

} // namespace

// Starts a new entry in the current object/array: separator, newline,
// indentation.
void JsonWriter::entry() {
    if (!first_.back())
        out_ += ",";
    first_.back() = false;
    out_ += "\n";
    out_.append(2 * first_.size(), ' ');
}

JsonWriter& JsonWriter::begin_object() {
    out_ += "{";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
    entry();
    out_ += "\"" + key + "\": {";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    first_.pop_back();
    out_ += "\n";
    out_.append(2 * first_.size(), ' ');
    out_ += "}";
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    entry();
    out_ += "\"" + key + "\": [";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    first_.pop_back();
    out_ += "]";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
    entry();
    out_ += "\"" + key + "\": " + format_g9(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
    entry();
    out_ += "\"" + key + "\": \"" + escape(value) + "\"";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* value) {
    return field(key, std::string(value));
}

JsonWriter& JsonWriter::field(const std::string& key, long long value) {
    entry();
    out_ += "\"" + key + "\": " + std::to_string(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
    entry();
    out_ += "\"" + key + "\": ";
    out_ += value ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::element(double value) {
    if (!first_.back())
        out_ += ", ";
    first_.back() = false;
    out_ += format_g9(value);
    return *this;
}

std::string JsonWriter::str() const {
    return out_ + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp);
        out << content;
        if (!out.good())
            throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

} // namespace pfc
