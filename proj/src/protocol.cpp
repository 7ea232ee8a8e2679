#include "rfec/protocol.hpp"

#include <stdexcept>

namespace rfec {

void SenderState::load_block(std::vector<Packet> packets) {
    if (packets.empty()) {
        throw std::invalid_argument("SenderState: block must hold at least one packet");
    }
    pending_ = std::move(packets);
}

CodeGrid SenderState::emit() const {
    CodeGrid grid = encode_padded(pending_);
    last_emission_sent_ = grid.sent_count();
    return grid;
}

std::vector<Packet> SenderState::serve_frs(const std::vector<PacketIndex>& frs_packets) {
    CodeGrid grid = encode_padded(pending_);
    std::vector<Packet> served;
    served.reserve(frs_packets.size());
    for (PacketIndex k : frs_packets) {
        served.push_back(grid.cells[grid.params.cell_index(grid.params.packet_coord(k))]);
    }
    pending_ = served;
    return served;
}

void ReceiverState::begin_level(const CodeParams& params, std::size_t real_k,
                                std::vector<SlotOrigin> slots) {
    Level level{params, real_k, 0, std::move(slots), {}, {}, {}};
    level.cells.resize(params.packet_count());
    level.masks.resize(params.packet_count());
    levels_.push_back(std::move(level));
}

void ReceiverState::absorb(const CodeGrid& received) {
    if (levels_.empty()) {
        throw std::logic_error("ReceiverState::absorb: no active block level");
    }
    Level& level = levels_.back();
    if (!(received.params == level.params)) {
        throw std::invalid_argument("ReceiverState::absorb: grid does not match the active level");
    }
    if (level.len == 0 && !received.cells.empty()) {
        level.len = received.cells[0].len();
    }
    for (std::size_t cell = 0; cell < received.cells.size(); ++cell) {
        if (received.never_sent[cell]) {
            continue;
        }
        const Packet& p = received.cells[cell];
        if (p.status == PacketStatus::Correct) {
            level.cells[cell] = p.payload;
            level.masks[cell].reset();
        } else if (p.status == PacketStatus::BitCorrupted && !level.cells[cell]) {
            level.masks[cell] = p.corruption_mask;  // newest mask for a still-missing cell
        }
    }
}

FeedbackRepairSet ReceiverState::request_repair(CostKind cost) {
    if (levels_.empty()) {
        throw std::logic_error("ReceiverState::request_repair: no active block level");
    }
    Level& level = levels_.back();
    const CodeParams& params = level.params;

    std::vector<char> pad(params.packet_count(), 0);
    for (std::size_t k = level.real_k; k < params.source_count(); ++k) {
        pad[params.cell_index(params.source_coord(k))] = 1;
    }
    std::vector<GridCoord> missing;
    for (std::size_t cell = 0; cell < level.cells.size(); ++cell) {
        if (!level.cells[cell] && !pad[cell]) {
            missing.push_back(params.cell_coord(cell));
        }
    }
    ErrorConfiguration config(params.n(), params.m(), std::move(missing));

    MaskLookup masks;
    if (cost == CostKind::Graded) {
        masks = [&level, &params](GridCoord c) -> const std::vector<std::uint8_t>* {
            const auto& slot = level.masks[params.cell_index(c)];
            return slot ? &*slot : nullptr;
        };
    }
    CoordinatesGraph gadget = build_gadget(config, cost, params, masks);
    FeedbackRepairSet frs =
        cost == CostKind::AllOrNone ? min_frs_unit(gadget) : min_frs_weighted(gadget);
    level.frs = frs.packets;
    return frs;
}

namespace {

struct Session {
    SenderState& sender;
    ReceiverState& receiver;
    const ChannelFn& channel;
    const ProtocolConfig& cfg;
    std::uint64_t emission = 0;
    std::size_t iterations = 0;
    std::size_t total_sent = 0;
};

std::vector<SlotOrigin> fresh_slots(std::size_t first_offset, std::size_t count) {
    std::vector<SlotOrigin> slots(count);
    for (std::size_t i = 0; i < count; ++i) {
        slots[i] = {SlotOrigin::Kind::Fresh, first_offset + i};
    }
    return slots;
}

std::vector<SlotOrigin> parent_slots(std::size_t count) {
    std::vector<SlotOrigin> slots(count);
    for (std::size_t i = 0; i < count; ++i) {
        slots[i] = {SlotOrigin::Kind::FromParentFrs, i};
    }
    return slots;
}

CycleOutcome do_emission(Session& s, bool fresh_level, std::vector<SlotOrigin> slots) {
    CodeGrid grid = s.sender.emit();
    if (fresh_level) {
        s.receiver.begin_level(grid.params, s.sender.pending_count(), std::move(slots));
    }
    CodeGrid received = s.channel(grid, s.emission++);
    s.receiver.absorb(received);
    FeedbackRepairSet frs = s.receiver.request_repair(s.cfg.cost);
    CycleOutcome outcome{grid.sent_count(), std::move(frs), false};
    outcome.decoded = outcome.frs.empty();
    s.total_sent += outcome.sent_count;
    ++s.iterations;
    return outcome;
}

// Cycle loop on a single block. Returns true when the block decoded within
// the iteration budget.
bool block_loop(Session& s, std::vector<Packet> packets, std::vector<SlotOrigin> slots,
                BlockTrace& trace) {
    trace.block_size = packets.size();
    s.sender.load_block(std::move(packets));
    CycleOutcome outcome = do_emission(s, true, std::move(slots));
    trace.iterations.push_back(outcome);
    while (!outcome.decoded) {
        if (s.iterations >= s.cfg.max_iterations) {
            return false;
        }
        const std::size_t k = outcome.frs.size();
        if (padded_emission_size(k) < outcome.sent_count) {
            // Requested packets re-encode into a smaller block: new cycle.
            std::vector<Packet> next = s.sender.serve_frs(outcome.frs.packets);
            s.sender.load_block(std::move(next));
            outcome = do_emission(s, true, parent_slots(k));
        } else {
            // Repeat the previous emission; the next request uses everything
            // received across the repeats.
            outcome = do_emission(s, false, {});
        }
        trace.iterations.push_back(outcome);
    }
    return true;
}

void finalize_trace(Session& s, BlockTrace& trace, bool terminated) {
    trace.total_sent = s.total_sent;
    trace.terminated = terminated;
    if (terminated) {
        s.receiver.mark_terminated();
    }
}

}  // namespace

CycleOutcome run_cycle(SenderState& sender, ReceiverState& receiver, const ChannelFn& channel,
                       std::vector<Packet> block, const ProtocolConfig& cfg) {
    Session s{sender, receiver, channel, cfg};
    const std::size_t k = block.size();
    if (receiver.message_size() == 0) {
        receiver.set_message_size(k);
    }
    sender.load_block(std::move(block));
    return do_emission(s, true, fresh_slots(0, k));
}

BlockTrace run_block(std::vector<Packet> packets, const ChannelFn& channel,
                     const ProtocolConfig& cfg, ReceiverState* receiver_out) {
    SenderState sender;
    ReceiverState receiver;
    receiver.set_message_size(packets.size());
    Session s{sender, receiver, channel, cfg};
    BlockTrace trace;
    const std::size_t K = packets.size();
    bool done = block_loop(s, std::move(packets), fresh_slots(0, K), trace);
    finalize_trace(s, trace, done);
    if (receiver_out != nullptr) {
        *receiver_out = std::move(receiver);
    }
    return trace;
}

StreamTrace run_stream(const std::vector<Packet>& message, std::size_t block_size,
                       const ChannelFn& channel, const ProtocolConfig& cfg,
                       ReceiverState* receiver_out) {
    if (message.empty()) {
        throw std::invalid_argument("run_stream: message must be non-empty");
    }
    if (block_size == 0) {
        throw std::invalid_argument("run_stream: block size must be >= 1");
    }
    SenderState sender;
    ReceiverState receiver;
    receiver.set_message_size(message.size());
    Session s{sender, receiver, channel, cfg};
    StreamTrace trace;
    trace.message_packets = message.size();

    std::vector<Packet> carry;
    std::size_t offset = 0;
    bool capped = false;
    while (true) {
        const std::size_t fresh_needed = block_size - carry.size();
        const std::size_t remaining = message.size() - offset;
        if (remaining == 0 || remaining < fresh_needed) {
            break;  // tail phase
        }
        if (s.iterations >= cfg.max_iterations) {
            capped = true;
            break;
        }
        std::vector<SlotOrigin> slots = parent_slots(carry.size());
        for (std::size_t i = 0; i < fresh_needed; ++i) {
            slots.push_back({SlotOrigin::Kind::Fresh, offset + i});
        }
        std::vector<Packet> block = carry;
        block.insert(block.end(), message.begin() + static_cast<std::ptrdiff_t>(offset),
                     message.begin() + static_cast<std::ptrdiff_t>(offset + fresh_needed));
        offset += fresh_needed;
        sender.load_block(std::move(block));
        CycleOutcome outcome = do_emission(s, true, std::move(slots));
        carry = sender.serve_frs(outcome.frs.packets);
        trace.cycles.push_back(std::move(outcome));
    }

    bool done = false;
    if (!capped) {
        const std::size_t remaining = message.size() - offset;
        if (carry.empty() && remaining == 0) {
            // Nothing left: record the empty tail as one trivial, decoded cycle.
            trace.tail.iterations.push_back(CycleOutcome{0, {}, true});
            trace.tail.terminated = true;
            done = true;
            receiver.mark_terminated();
        } else {
            std::vector<SlotOrigin> slots = parent_slots(carry.size());
            for (std::size_t i = 0; i < remaining; ++i) {
                slots.push_back({SlotOrigin::Kind::Fresh, offset + i});
            }
            std::vector<Packet> tail_block = std::move(carry);
            tail_block.insert(tail_block.end(),
                              message.begin() + static_cast<std::ptrdiff_t>(offset), message.end());
            done = block_loop(s, std::move(tail_block), std::move(slots), trace.tail);
            trace.tail.terminated = done;
            if (done) {
                receiver.mark_terminated();
            }
        }
    }
    trace.tail.total_sent = 0;
    for (const CycleOutcome& c : trace.tail.iterations) {
        trace.tail.total_sent += c.sent_count;
    }
    trace.total_sent = s.total_sent;
    trace.terminated = done;
    if (receiver_out != nullptr) {
        *receiver_out = std::move(receiver);
    }
    return trace;
}

std::vector<std::vector<std::uint8_t>> reconstruct(const ReceiverState& receiver) {
    if (!receiver.terminated()) {
        throw std::logic_error("reconstruct: transmission did not terminate");
    }
    const auto& levels = receiver.levels();
    std::vector<std::vector<std::uint8_t>> delivered(receiver.message_size());
    std::vector<char> filled(receiver.message_size(), 0);

    // Sources of the level processed in the previous step (one level deeper).
    std::vector<std::vector<std::uint8_t>> child_sources;
    std::vector<SlotOrigin> child_slots;
    for (std::size_t idx = levels.size(); idx-- > 0;) {
        const ReceiverState::Level& level = levels[idx];
        const CodeParams& params = level.params;

        CodeGrid grid{params, std::vector<Packet>(params.packet_count(), zero_packet(level.len)),
                      std::vector<bool>(params.packet_count(), false)};
        for (std::size_t cell = 0; cell < grid.cells.size(); ++cell) {
            if (level.cells[cell]) {
                grid.cells[cell] = make_packet(*level.cells[cell]);
            } else {
                grid.cells[cell].status = PacketStatus::Erased;
            }
        }
        for (std::size_t k = level.real_k; k < params.source_count(); ++k) {
            grid.cells[params.cell_index(params.source_coord(k))].status = PacketStatus::Correct;
        }
        // Fill this level's FRS cells from the deeper block's sources.
        for (std::size_t slot = 0; slot < child_slots.size(); ++slot) {
            if (child_slots[slot].kind == SlotOrigin::Kind::FromParentFrs) {
                const std::size_t pos = child_slots[slot].index;
                const std::size_t packet = level.frs.at(pos);
                Packet& cell = grid.cells[params.cell_index(params.packet_coord(packet))];
                cell = make_packet(child_sources[slot]);
            }
        }

        DecodeResult decoded = decode_peel(grid);
        if (!decoded.residual.empty()) {
            throw std::logic_error("reconstruct: a block level failed to decode");
        }
        child_sources.clear();
        for (std::size_t k = 0; k < level.real_k; ++k) {
            child_sources.push_back(
                decoded.repaired.cells[params.cell_index(params.source_coord(k))].payload);
        }
        child_slots = level.slots;
        for (std::size_t slot = 0; slot < level.slots.size(); ++slot) {
            if (level.slots[slot].kind == SlotOrigin::Kind::Fresh) {
                delivered[level.slots[slot].index] = child_sources[slot];
                filled[level.slots[slot].index] = 1;
            }
        }
    }
    for (char f : filled) {
        if (!f) {
            throw std::logic_error("reconstruct: message has undelivered packets");
        }
    }
    return delivered;
}

}  // namespace rfec
