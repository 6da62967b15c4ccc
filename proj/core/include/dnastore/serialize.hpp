// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "dnastore/channel.hpp"
#include "dnastore/partition_code.hpp"
#include "dnastore/random_coding.hpp"

namespace dnastore {

/// JSON forms for CLI round-trip tooling. A message is
///   {"schema_version":1,"assignment":[1,1,2,2]}
/// and a codeword is
///   {"schema_version":1,"counts":[35,35,25,25],"total":120}.
/// Codebooks carry seed provenance so a run can be reproduced exactly:
///   {"schema_version":1,"n":..,"M":..,"master_seed":..,"stream_base":..,
///    "codewords":[[..counts..],...]}.
std::string message_to_json(const PartitionMessage& msg);
PartitionMessage message_from_json(const std::string& text);

std::string codeword_to_json(const CountVector& counts);
CountVector codeword_from_json(const std::string& text);

std::string codebook_to_json(const Codebook& book);
Codebook codebook_from_json(const std::string& text);

}  // namespace dnastore
