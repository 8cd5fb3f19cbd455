#pragma once

#include <string>
#include <vector>

namespace pfc {

/// Fixed 9-significant-digit float formatting; all report files go through
/// this so identical inputs produce byte-identical outputs.
std::string format_g9(double value);

/// Minimal ordered JSON assembly for reports (parsing uses nlohmann).
class JsonWriter {
  public:
    JsonWriter& begin_object();                       // document root
    JsonWriter& begin_object(const std::string& key); // nested object field
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, double value);
    JsonWriter& field(const std::string& key, const std::string& value);
    JsonWriter& field(const std::string& key, const char* value);
    JsonWriter& field(const std::string& key, long long value);
    JsonWriter& field(const std::string& key, bool value);
    JsonWriter& element(double value);
    std::string str() const;

  private:
    void entry();
    std::string out_;
    std::vector<bool> first_;
};

/// Write-temp-then-rename.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace pfc
