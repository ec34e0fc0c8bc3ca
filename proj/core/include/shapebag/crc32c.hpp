#pragma once

#include <cstddef>
#include <cstdint>

namespace shapebag {

/// CRC-32C (Castagnoli), reflected polynomial 0x82F63B78, init/xorout
/// 0xFFFFFFFF. Guards the index file payload against corruption.
/// Check value: crc32c("123456789") == 0xE3069283.
uint32_t crc32c(const void* data, size_t length, uint32_t seed = 0);

}  // namespace shapebag
