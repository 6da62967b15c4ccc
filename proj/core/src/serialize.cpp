// SPDX-License-Identifier: Apache-2.0
#include "dnastore/serialize.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dnastore {

namespace {
using json = nlohmann::json;
constexpr int kSchemaVersion = 1;

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw std::invalid_argument(std::string(what) + ": malformed JSON");
  if (!j.is_object() || j.value("schema_version", 0) != kSchemaVersion)
    throw std::invalid_argument(std::string(what) + ": unsupported schema");
  return j;
}
}  // namespace

std::string message_to_json(const PartitionMessage& msg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["assignment"] = msg.assignment;
  return j.dump();
}

PartitionMessage message_from_json(const std::string& text) {
  const json j = parse(text, "message_from_json");
  if (!j.contains("assignment") || !j["assignment"].is_array())
    throw std::invalid_argument("message_from_json: missing assignment array");
  PartitionMessage msg;
  msg.assignment = j["assignment"].get<std::vector<std::int32_t>>();
  return msg;
}

std::string codeword_to_json(const CountVector& counts) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["counts"] = counts.counts;
  j["total"] = counts.total;
  return j.dump();
}

CountVector codeword_from_json(const std::string& text) {
  const json j = parse(text, "codeword_from_json");
  if (!j.contains("counts") || !j["counts"].is_array())
    throw std::invalid_argument("codeword_from_json: missing counts array");
  CountVector counts = make_count_vector(j["counts"].get<std::vector<std::int64_t>>());
  if (j.contains("total") && j["total"].get<std::int64_t>() != counts.total)
    throw std::invalid_argument("codeword_from_json: total does not match counts");
  return counts;
}

std::string codebook_to_json(const Codebook& book) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = book.n;
  j["M"] = book.M;
  j["master_seed"] = book.master_seed;
  j["stream_base"] = book.stream_base;
  json words = json::array();
  for (const QuantizedCodeword& cw : book.codewords) words.push_back(cw.counts.counts);
  j["codewords"] = std::move(words);
  return j.dump();
}

Codebook codebook_from_json(const std::string& text) {
  const json j = parse(text, "codebook_from_json");
  Codebook book;
  book.n = j.at("n").get<std::int64_t>();
  book.M = j.at("M").get<std::int64_t>();
  book.master_seed = j.at("master_seed").get<std::uint64_t>();
  book.stream_base = j.at("stream_base").get<std::uint64_t>();
  for (const auto& counts : j.at("codewords")) {
    CountVector cv = make_count_vector(counts.get<std::vector<std::int64_t>>());
    if (cv.counts.size() != static_cast<std::size_t>(book.n))
      throw std::invalid_argument("codebook_from_json: codeword length != n");
    std::vector<double> pmf(cv.counts.size());
    for (std::size_t i = 0; i < pmf.size(); ++i)
      pmf[i] = static_cast<double>(cv.counts[i]) / static_cast<double>(cv.total);
    book.codewords.push_back(QuantizedCodeword{std::move(cv), Pmf{std::move(pmf)}});
  }
  return book;
}

}  // namespace dnastore
