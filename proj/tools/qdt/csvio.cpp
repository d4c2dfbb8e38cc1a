/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "csvio.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "qdt/qdt.h"

namespace qdtcli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const std::to_chars_result res =
      std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc{})
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns)
    : path_(path), columns_(columns), out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  if (header_written_)
    throw std::logic_error("CsvWriter: comments must precede rows");
  out_ << "# " << key << ": " << value << "\n";
}

void CsvWriter::comment(const std::string& key, double value) {
  comment(key, format_double(value));
}

void CsvWriter::ensure_header() {
  if (header_written_) return;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns_[i];
  }
  out_ << '\n';
  header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw std::logic_error("CsvWriter: row width mismatch");
  ensure_header();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw std::logic_error("CsvWriter: row width mismatch");
  ensure_header();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::close() {
  ensure_header();
  out_.close();
  if (!out_) throw std::runtime_error("failed writing '" + path_ + "'");
}

void write_manifest(const std::string& directory, const std::string& command,
                    const nlohmann::json& resolved_config,
                    const std::vector<std::string>& outputs,
                    double wall_seconds) {
  nlohmann::json manifest;
  manifest["command"] = command;
  manifest["version"] = qdt_version();
  manifest["wall_seconds"] = wall_seconds;
  manifest["outputs"] = outputs;
  manifest["config"] = resolved_config;
  std::ofstream out(directory + "/manifest.json", std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write manifest in '" + directory + "'");
  out << manifest.dump(2) << "\n";
}

}  // namespace qdtcli
