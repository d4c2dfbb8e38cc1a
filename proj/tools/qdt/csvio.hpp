/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace qdtcli {

/// Shortest round-trip decimal form (std::to_chars); locale-free, so the
/// emitted bytes are reproducible.
std::string format_double(double value);

/// CSV writer: optional "# key: value" comment header, then a column
/// header, then rows in full round-trip precision. '\n' line endings.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);

  void comment(const std::string& key, const std::string& value);
  void comment(const std::string& key, double value);
  /// Must be called after all comments; writes the column header once.
  void row(const std::vector<double>& values);
  /// Row with verbatim cells (used for missing values).
  void row_raw(const std::vector<std::string>& cells);
  void close();

  const std::string& path() const { return path_; }

 private:
  void ensure_header();

  std::string path_;
  std::vector<std::string> columns_;
  std::ofstream out_;
  bool header_written_ = false;
};

/// Writes the run manifest next to the outputs: resolved config, command,
/// code version, wall time and the list of files produced.
void write_manifest(const std::string& directory, const std::string& command,
                    const nlohmann::json& resolved_config,
                    const std::vector<std::string>& outputs,
                    double wall_seconds);

}  // namespace qdtcli
