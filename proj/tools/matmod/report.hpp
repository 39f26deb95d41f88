#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

// Machine-readable report tree with deterministic serialization. Keys keep
// insertion order and every floating-point value is printed with 17
// significant digits, so identical runs produce byte-identical output and
// the json and tsv forms carry identical numbers.

namespace matmod::cli {

std::string format_double(double v);

class Report {
 public:
  Report() = default;
  Report(Report&&) = default;
  Report& operator=(Report&&) = default;

  void put(std::string key, double v);
  void put(std::string key, std::int64_t v);
  void put(std::string key, std::uint64_t v);
  void put(std::string key, int v) { put(std::move(key), static_cast<std::int64_t>(v)); }
  void put(std::string key, bool v);
  void put(std::string key, std::string v);
  void put(std::string key, const char* v) { put(std::move(key), std::string(v)); }
  void put_matrix(std::string key, const Eigen::MatrixXd& m);
  void put_doubles(std::string key, const std::vector<double>& v);
  void put_ints(std::string key, const std::vector<int>& v);
  void put_strings(std::string key, const std::vector<std::string>& v);

  // Nested object; the reference stays valid while this report lives.
  Report& child(std::string key);

  std::string to_json() const;
  std::string to_tsv() const;

 private:
  using Value =
      std::variant<double, std::int64_t, std::uint64_t, bool, std::string,
                   Eigen::MatrixXd, std::vector<double>, std::vector<int>,
                   std::vector<std::string>, std::unique_ptr<Report>>;
  struct Entry {
    std::string key;
    Value value;
  };

  void write_json(std::string& out, int indent) const;
  void write_tsv(std::string& out, const std::string& prefix) const;

  std::vector<Entry> entries_;
};

}  // namespace matmod::cli
