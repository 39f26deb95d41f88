#include "report.hpp"

#include <cstdio>

namespace matmod::cli {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string indent_of(int depth) { return std::string(2 * static_cast<std::size_t>(depth), ' '); }

}  // namespace

void Report::put(std::string key, double v) {
  entries_.push_back({std::move(key), v});
}
void Report::put(std::string key, std::int64_t v) {
  entries_.push_back({std::move(key), v});
}
void Report::put(std::string key, std::uint64_t v) {
  entries_.push_back({std::move(key), v});
}
void Report::put(std::string key, bool v) {
  entries_.push_back({std::move(key), v});
}
void Report::put(std::string key, std::string v) {
  entries_.push_back({std::move(key), std::move(v)});
}
void Report::put_matrix(std::string key, const Eigen::MatrixXd& m) {
  entries_.push_back({std::move(key), m});
}
void Report::put_doubles(std::string key, const std::vector<double>& v) {
  entries_.push_back({std::move(key), v});
}
void Report::put_ints(std::string key, const std::vector<int>& v) {
  entries_.push_back({std::move(key), v});
}
void Report::put_strings(std::string key, const std::vector<std::string>& v) {
  entries_.push_back({std::move(key), v});
}

Report& Report::child(std::string key) {
  entries_.push_back({std::move(key), std::make_unique<Report>()});
  return *std::get<std::unique_ptr<Report>>(entries_.back().value);
}

void Report::write_json(std::string& out, int depth) const {
  out += "{\n";
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const Entry& entry = entries_[e];
    out += indent_of(depth + 1) + "\"" + json_escape(entry.key) + "\": ";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out += format_double(v);
          } else if constexpr (std::is_same_v<T, std::int64_t> ||
                               std::is_same_v<T, std::uint64_t>) {
            out += std::to_string(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::string>) {
            out += "\"" + json_escape(v) + "\"";
          } else if constexpr (std::is_same_v<T, Eigen::MatrixXd>) {
            out += "[";
            for (Eigen::Index i = 0; i < v.rows(); ++i) {
              out += (i == 0) ? "[" : " [";
              for (Eigen::Index j = 0; j < v.cols(); ++j) {
                if (j > 0) out += ", ";
                out += format_double(v(i, j));
              }
              out += (i + 1 < v.rows()) ? "]," : "]";
            }
            out += "]";
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i > 0) out += ", ";
              out += format_double(v[i]);
            }
            out += "]";
          } else if constexpr (std::is_same_v<T, std::vector<int>>) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i > 0) out += ", ";
              out += std::to_string(v[i]);
            }
            out += "]";
          } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i > 0) out += ", ";
              out += "\"" + json_escape(v[i]) + "\"";
            }
            out += "]";
          } else {
            v->write_json(out, depth + 1);
          }
        },
        entry.value);
    if (e + 1 < entries_.size()) out += ",";
    out += "\n";
  }
  out += indent_of(depth) + "}";
}

void Report::write_tsv(std::string& out, const std::string& prefix) const {
  for (const Entry& entry : entries_) {
    const std::string key = prefix.empty() ? entry.key : prefix + "." + entry.key;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out += key + "\t" + format_double(v) + "\n";
          } else if constexpr (std::is_same_v<T, std::int64_t> ||
                               std::is_same_v<T, std::uint64_t>) {
            out += key + "\t" + std::to_string(v) + "\n";
          } else if constexpr (std::is_same_v<T, bool>) {
            out += key + "\t" + (v ? "true" : "false") + "\n";
          } else if constexpr (std::is_same_v<T, std::string>) {
            out += key + "\t" + v + "\n";
          } else if constexpr (std::is_same_v<T, Eigen::MatrixXd>) {
            for (Eigen::Index i = 0; i < v.rows(); ++i) {
              for (Eigen::Index j = 0; j < v.cols(); ++j) {
                out += key + "." + std::to_string(i) + "." + std::to_string(j) +
                       "\t" + format_double(v(i, j)) + "\n";
              }
            }
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              out += key + "." + std::to_string(i) + "\t" + format_double(v[i]) +
                     "\n";
            }
          } else if constexpr (std::is_same_v<T, std::vector<int>>) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              out += key + "." + std::to_string(i) + "\t" + std::to_string(v[i]) +
                     "\n";
            }
          } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              out += key + "." + std::to_string(i) + "\t" + v[i] + "\n";
            }
          } else {
            v->write_tsv(out, key);
          }
        },
        entry.value);
  }
}

std::string Report::to_json() const {
  std::string out;
  write_json(out, 0);
  out += "\n";
  return out;
}

std::string Report::to_tsv() const {
  std::string out;
  write_tsv(out, "");
  return out;
}

}  // namespace matmod::cli
