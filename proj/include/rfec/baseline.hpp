#pragma once

#include <cstdint>

#include "rfec/channel.hpp"
#include "rfec/protocol.hpp"

namespace rfec {

// Pure-ARQ reference: selective repeat with no parity packets. Iteration 1
// sends all K packets; every further iteration resends exactly the packets
// not yet received.
BlockTrace run_tcp_block(std::size_t block_size, const ChannelConfig& cfg,
                         std::uint64_t stream_id, std::size_t max_iterations = 1000);

// Closed-form mean iteration count of the selective-repeat model: the mean
// of the maximum of K independent geometrics, sum_{t>=0} (1 - (1 - p^t)^K).
// Requires p < 1.
double tcp_expected_iterations(std::size_t block_size, double p);

}  // namespace rfec
