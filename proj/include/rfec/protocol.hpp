#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rfec/channel.hpp"
#include "rfec/codec.hpp"
#include "rfec/feedback.hpp"

namespace rfec {

struct ProtocolConfig {
    CostKind cost = CostKind::AllOrNone;
    std::size_t max_iterations = 1000;  // simulation guard; repair may never converge
};

struct CycleOutcome {
    std::size_t sent_count = 0;
    FeedbackRepairSet frs;
    bool decoded = false;  // true iff frs is empty
};

struct BlockTrace {
    std::vector<CycleOutcome> iterations;
    std::size_t total_sent = 0;
    bool terminated = false;
    std::size_t block_size = 0;  // K, the packets handed to the sender
};

struct StreamTrace {
    std::vector<CycleOutcome> cycles;  // streaming phase, one emission per entry
    BlockTrace tail;                   // final short block (trivial entry when empty)
    std::size_t total_sent = 0;
    bool terminated = false;
    std::size_t message_packets = 0;

    std::size_t total_cycles() const { return cycles.size() + tail.iterations.size(); }
};

// Where a source slot of an emitted block came from: a position in the
// previous FRS, or a fresh message packet. Reconstruction walks these links
// backwards.
struct SlotOrigin {
    enum class Kind { Fresh, FromParentFrs };
    Kind kind = Kind::Fresh;
    std::size_t index = 0;  // message offset, or position in the parent FRS
};

// The sender retains only the current block: after serving an FRS request
// with a re-encoded block, everything but the requested packets is dropped.
class SenderState {
public:
    void load_block(std::vector<Packet> packets);
    const std::vector<Packet>& pending() const { return pending_; }
    std::size_t pending_count() const { return pending_.size(); }

    // Encode the current block with square padding.
    CodeGrid emit() const;

    // Extract the requested packets from a re-encoding of the current block,
    // then retain exactly those packets.
    std::vector<Packet> serve_frs(const std::vector<PacketIndex>& frs_packets);

    std::size_t last_emission_sent() const { return last_emission_sent_; }

private:
    std::vector<Packet> pending_;
    mutable std::size_t last_emission_sent_ = 0;
};

// The receiver keeps, per block level, the union of correctly received
// cells plus the FRS it requested. Erroneous payloads are never retained;
// repairs are derived from correct cells alone.
class ReceiverState {
public:
    struct Level {
        CodeParams params;
        std::size_t real_k = 0;  // sources before padding
        std::size_t len = 0;     // payload length, learned from the first emission
        std::vector<SlotOrigin> slots;
        std::vector<std::optional<std::vector<std::uint8_t>>> cells;  // correct payloads
        std::vector<std::optional<std::vector<std::uint8_t>>> masks;  // Graded weights
        std::vector<PacketIndex> frs;  // last requested packets (ascending)
    };

    void begin_level(const CodeParams& params, std::size_t real_k, std::vector<SlotOrigin> slots);
    void absorb(const CodeGrid& received);
    FeedbackRepairSet request_repair(CostKind cost);

    void mark_terminated() { terminated_ = true; }
    bool terminated() const { return terminated_; }
    const std::vector<Level>& levels() const { return levels_; }
    std::size_t message_size() const { return message_size_; }
    void set_message_size(std::size_t size) { message_size_ = size; }

private:
    std::vector<Level> levels_;
    std::size_t message_size_ = 0;
    bool terminated_ = false;
};

// One emission-request cycle on one block: encode with padding, transmit,
// peel, request a minimum feedback repair set over the error-free return
// channel.
CycleOutcome run_cycle(SenderState& sender, ReceiverState& receiver, const ChannelFn& channel,
                       std::vector<Packet> block, const ProtocolConfig& cfg = {});

// Repeat cycles on one block: re-encode the FRS as a fresh block when that
// emission would be smaller than the last one, otherwise repeat the previous
// emission and request from the union of everything received so far.
BlockTrace run_block(std::vector<Packet> packets, const ChannelFn& channel,
                     const ProtocolConfig& cfg = {}, ReceiverState* receiver_out = nullptr);

// Stream protocol: each cycle sends the previous FRS plus enough fresh
// message packets to fill a block of `block_size`; the remainder goes
// through run_block.
StreamTrace run_stream(const std::vector<Packet>& message, std::size_t block_size,
                       const ChannelFn& channel, const ProtocolConfig& cfg = {},
                       ReceiverState* receiver_out = nullptr);

// Unwind the FRS chain from last block to first and return every originally
// transmitted packet payload, in message order. Requires a terminated
// receiver; throws std::logic_error otherwise.
std::vector<std::vector<std::uint8_t>> reconstruct(const ReceiverState& receiver);

}  // namespace rfec
