#pragma once

#include <filesystem>
#include <optional>

#include "ssc/crnn.hpp"
#include "ssc/optimizer.hpp"

namespace ssc::nn {

/// "SSNN" checkpoint: magic, version u16, named-parameter table (name length
/// u16 + bytes, rank u8, dims u32 each, little-endian float32 payload), then
/// an optional optimizer block (epoch u32 + velocity table).
void save_checkpoint(const std::filesystem::path& path, Network<float>& net,
                     const SgdNesterov<float>* optimizer = nullptr);

/// Load parameters (and optimizer state when present and requested) into an
/// already-built network; names and shapes must match exactly.
void load_checkpoint(const std::filesystem::path& path, Network<float>& net,
                     SgdNesterov<float>* optimizer = nullptr);

}  // namespace ssc::nn
