// rfec: rectangular-code FEC toolkit.
//
// Subcommands: encode, decode, minfrs, simulate-block, simulate-stream,
// simulate-tcp, analyze, mc, sweep. Exit codes: 0 success, 2 invalid
// arguments, 3 resource limit.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "rfec/analysis.hpp"
#include "rfec/baseline.hpp"
#include "rfec/block_io.hpp"
#include "rfec/errors.hpp"
#include "rfec/rng.hpp"
#include "rfec/sweep.hpp"

using json = nlohmann::json;
using namespace rfec;

namespace {

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CostKind parse_cost(const std::string& name) {
    if (name == "allornone") {
        return CostKind::AllOrNone;
    }
    if (name == "modified") {
        return CostKind::ModifiedAllOrNone;
    }
    if (name == "graded") {
        return CostKind::Graded;
    }
    throw std::invalid_argument("unknown cost function: " + name);
}

std::vector<GridCoord> parse_cells(const std::string& list) {
    // "row,col;row,col;..."
    std::vector<GridCoord> cells;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ';')) {
        if (item.empty()) {
            continue;
        }
        const auto comma = item.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("bad cell spec: " + item);
        }
        cells.push_back({std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1))});
    }
    return cells;
}

json trace_json(const BlockTrace& trace, double p, std::uint64_t seed) {
    return json{{"K", trace.block_size},
                {"p", p},
                {"seed", seed},
                {"iterations", trace.iterations.size()},
                {"total_sent", trace.total_sent},
                {"terminated", trace.terminated}};
}

std::string rational_string(const BigRational& q) {
    std::ostringstream out;
    out << q;
    return out.str();
}

int run_app(int argc, char** argv) {
    CLI::App app{"rectangular-code FEC with minimum feedback repair"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed/--max-iters may follow the subcommand

    std::uint64_t seed = 1;
    std::size_t max_iters = 1000;
    app.add_option("--seed", seed, "global RNG seed")->capture_default_str();
    app.add_option("--max-iters", max_iters, "iteration cap for simulations")
        ->capture_default_str();

    // encode ---------------------------------------------------------------
    auto* encode_cmd = app.add_subcommand("encode", "encode raw data into a block file");
    std::string enc_in, enc_out, enc_erase;
    std::size_t enc_len = 1024;
    int enc_n = 0, enc_m = 0;
    encode_cmd->add_option("--in", enc_in, "input data file")->required();
    encode_cmd->add_option("--out", enc_out, "output block file")->required();
    encode_cmd->add_option("--len", enc_len, "packet payload length")->capture_default_str();
    encode_cmd->add_option("--n", enc_n, "code rows (0 = square rule)");
    encode_cmd->add_option("--m", enc_m, "code columns (0 = square rule)");
    encode_cmd->add_option("--erase-cells", enc_erase,
                           "cells to mark erased, e.g. \"0,0;1,2\" (for demos)");

    // decode ---------------------------------------------------------------
    auto* decode_cmd = app.add_subcommand("decode", "peel-decode a block file");
    std::string dec_in, dec_out;
    decode_cmd->add_option("--in", dec_in, "input block file")->required();
    decode_cmd->add_option("--out", dec_out, "output data file (written when decoding succeeds)");

    // minfrs ---------------------------------------------------------------
    auto* minfrs_cmd = app.add_subcommand("minfrs", "minimum feedback repair set of a block file");
    std::string frs_in, frs_cost = "allornone";
    minfrs_cmd->add_option("--in", frs_in, "input block file")->required();
    minfrs_cmd->add_option("--cost", frs_cost, "allornone|modified")->capture_default_str();

    // simulate-block ---------------------------------------------------------
    auto* sim_block = app.add_subcommand("simulate-block", "many cycles on a single block");
    std::size_t sb_K = 36, sb_trials = 1, sb_len = 1024;
    double sb_p = 0.3;
    std::string sb_cost = "allornone";
    double sb_pb = -1.0;
    sim_block->add_option("--K", sb_K, "block size")->capture_default_str();
    sim_block->add_option("--p", sb_p, "packet erasure probability")->capture_default_str();
    sim_block->add_option("--pb", sb_pb, "bit flip probability (switches to the bit-flip channel)");
    sim_block->add_option("--trials", sb_trials, "independent trials")->capture_default_str();
    sim_block->add_option("--len", sb_len, "packet payload length")->capture_default_str();
    sim_block->add_option("--cost", sb_cost, "allornone|modified|graded")->capture_default_str();

    // simulate-stream --------------------------------------------------------
    auto* sim_stream = app.add_subcommand("simulate-stream", "stream protocol over a lossy channel");
    std::size_t ss_msg = 360, ss_K = 36, ss_trials = 1, ss_len = 1024;
    double ss_p = 0.3;
    sim_stream->add_option("--message-packets", ss_msg, "message length in packets")
        ->capture_default_str();
    sim_stream->add_option("--K", ss_K, "block size")->capture_default_str();
    sim_stream->add_option("--p", ss_p, "packet erasure probability")->capture_default_str();
    sim_stream->add_option("--trials", ss_trials, "independent trials")->capture_default_str();
    sim_stream->add_option("--len", ss_len, "packet payload length")->capture_default_str();

    // simulate-tcp -----------------------------------------------------------
    auto* sim_tcp = app.add_subcommand("simulate-tcp", "selective-repeat baseline");
    std::size_t st_K = 36, st_trials = 1;
    double st_p = 0.3;
    sim_tcp->add_option("--K", st_K, "block size")->capture_default_str();
    sim_tcp->add_option("--p", st_p, "packet erasure probability")->capture_default_str();
    sim_tcp->add_option("--trials", st_trials, "independent trials")->capture_default_str();

    // analyze ----------------------------------------------------------------
    auto* analyze_cmd = app.add_subcommand("analyze", "exact formulas and reference curves");
    std::string an_formula;
    int an_n = 2, an_m = 2;
    std::size_t an_ne = 0;
    double an_p = 0.5, an_x = 0.5;
    analyze_cmd
        ->add_option("--formula", an_formula, "law-ne|exp-c|exp-r|eq3|lambda|forests")
        ->required();
    analyze_cmd->add_option("--n", an_n, "code rows")->capture_default_str();
    analyze_cmd->add_option("--m", an_m, "code columns")->capture_default_str();
    analyze_cmd->add_option("--ne", an_ne, "conditioned error count")->capture_default_str();
    analyze_cmd->add_option("--p", an_p, "error probability (law-ne)")->capture_default_str();
    analyze_cmd->add_option("--x", an_x, "argument of the lambda curve")->capture_default_str();

    // mc ----------------------------------------------------------------------
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo conditional statistics");
    std::string mc_stat = "expected-i";
    int mc_n = 9, mc_m = 9;
    std::size_t mc_ne = 20, mc_trials = 100000;
    mc_cmd->add_option("--statistic", mc_stat, "expected-i|prob-i-zero|expected-c|expected-r")
        ->capture_default_str();
    mc_cmd->add_option("--n", mc_n, "code rows")->capture_default_str();
    mc_cmd->add_option("--m", mc_m, "code columns")->capture_default_str();
    mc_cmd->add_option("--ne", mc_ne, "conditioned error count")->capture_default_str();
    mc_cmd->add_option("--trials", mc_trials, "sample count")->capture_default_str();

    // sweep ---------------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "paired protocol-vs-tcp experiment table");
    std::vector<std::size_t> sw_K = {16, 64, 256};
    std::size_t sw_trials = 10000, sw_bins = 100, sw_len = 64;
    std::string sw_out;
    bool sw_json = false;
    sweep_cmd->add_option("--K", sw_K, "block sizes")->capture_default_str();
    sweep_cmd->add_option("--trials", sw_trials, "trials per block size")->capture_default_str();
    sweep_cmd->add_option("--bins", sw_bins, "p bins")->capture_default_str();
    sweep_cmd->add_option("--len", sw_len, "packet payload length")->capture_default_str();
    sweep_cmd->add_option("--out", sw_out, "CSV output path (default stdout)");
    sweep_cmd->add_flag("--json", sw_json, "emit rows as JSON instead of CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits clean, bad usage exits 2
    }

    if (encode_cmd->parsed()) {
        std::vector<std::uint8_t> data = read_file_bytes(enc_in);
        if (enc_len == 0 || data.size() % enc_len != 0 || data.empty()) {
            throw std::invalid_argument("input size must be a positive multiple of --len");
        }
        const std::size_t K = data.size() / enc_len;
        std::vector<Packet> sources;
        sources.reserve(K);
        for (std::size_t k = 0; k < K; ++k) {
            sources.push_back(make_packet({data.begin() + static_cast<std::ptrdiff_t>(k * enc_len),
                                           data.begin() + static_cast<std::ptrdiff_t>((k + 1) * enc_len)}));
        }
        CodeGrid grid = [&] {
            if (enc_n > 0 && enc_m > 0) {
                if (static_cast<std::size_t>(enc_n) * static_cast<std::size_t>(enc_m) != K) {
                    throw std::invalid_argument("--n * --m must equal the packet count");
                }
                return encode(CodeParams(enc_n, enc_m), sources);
            }
            return encode_padded(sources);
        }();
        for (GridCoord c : parse_cells(enc_erase)) {
            Packet& cell = grid.at(c);
            cell.status = PacketStatus::Erased;
            std::fill(cell.payload.begin(), cell.payload.end(), 0);
        }
        write_block_file(enc_out, grid, K);
        std::cout << json{{"K", K},
                          {"n", grid.params.n()},
                          {"m", grid.params.m()},
                          {"len", enc_len},
                          {"sent_cells", grid.sent_count()}}
                  << "\n";
        return 0;
    }

    if (decode_cmd->parsed()) {
        BlockReadResult block = read_block_file(dec_in);
        DecodeResult result = decode_peel(block.grid);
        json residual = json::array();
        for (const GridCoord& c : result.residual.errors()) {
            residual.push_back({c.row, c.col});
        }
        const bool ok = result.residual.empty();
        if (ok && !dec_out.empty()) {
            std::ofstream out(dec_out, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot open " + dec_out);
            }
            for (std::size_t k = 0; k < block.source_count; ++k) {
                const Packet& p =
                    result.repaired.cells[block.grid.params.cell_index(block.grid.params.source_coord(k))];
                out.write(reinterpret_cast<const char*>(p.payload.data()),
                          static_cast<std::streamsize>(p.payload.size()));
            }
        }
        std::cout << json{{"decoded", ok}, {"residual", residual}} << "\n";
        return 0;
    }

    if (minfrs_cmd->parsed()) {
        const CostKind cost = parse_cost(frs_cost);
        if (cost == CostKind::Graded) {
            throw std::invalid_argument("block files carry no corruption masks; graded needs them");
        }
        BlockReadResult block = read_block_file(frs_in);
        ErrorConfiguration config = block.grid.error_configuration();
        CoordinatesGraph gadget = build_gadget(config, cost, block.grid);
        FeedbackRepairSet frs =
            cost == CostKind::AllOrNone ? min_frs_unit(gadget) : min_frs_weighted(gadget);
        std::cout << json{{"frs", frs.packets},
                          {"cost", weight_to_double(frs.cost)},
                          {"errors", config.error_count()}}
                  << "\n";
        return 0;
    }

    if (sim_block->parsed()) {
        ProtocolConfig cfg{parse_cost(sb_cost), max_iters};
        const bool bit_channel = sb_pb >= 0.0;
        if (cfg.cost == CostKind::Graded && !bit_channel) {
            throw std::invalid_argument("graded cost requires the bit-flip channel (--pb)");
        }
        for (std::size_t t = 0; t < sb_trials; ++t) {
            ChannelConfig ch = bit_channel ? ChannelConfig::bit_flip(sb_pb, seed)
                                           : ChannelConfig::erasure(sb_p, seed);
            ReceiverState receiver;
            std::vector<Packet> block =
                random_message(sb_K, sb_len, counter_hash(seed, 0xB10Cull, t));
            BlockTrace trace =
                run_block(block, make_channel(ch, substream(seed, t)), cfg, &receiver);
            bool ok = false;
            if (trace.terminated) {
                auto delivered = reconstruct(receiver);
                ok = delivered.size() == block.size();
                for (std::size_t i = 0; ok && i < block.size(); ++i) {
                    ok = delivered[i] == block[i].payload;
                }
            }
            json line = trace_json(trace, bit_channel ? sb_pb : sb_p, seed);
            line["delivered_ok"] = ok;
            std::cout << line << "\n";
        }
        return 0;
    }

    if (sim_stream->parsed()) {
        ProtocolConfig cfg{CostKind::AllOrNone, max_iters};
        for (std::size_t t = 0; t < ss_trials; ++t) {
            ReceiverState receiver;
            std::vector<Packet> message =
                random_message(ss_msg, ss_len, counter_hash(seed, 0x57Eull, t));
            StreamTrace trace = run_stream(message, ss_K,
                                           make_channel(ChannelConfig::erasure(ss_p, seed),
                                                        substream(seed, t)),
                                           cfg, &receiver);
            bool ok = false;
            if (trace.terminated) {
                auto delivered = reconstruct(receiver);
                ok = delivered.size() == message.size();
                for (std::size_t i = 0; ok && i < message.size(); ++i) {
                    ok = delivered[i] == message[i].payload;
                }
            }
            std::cout << json{{"K", ss_K},
                              {"message_packets", ss_msg},
                              {"p", ss_p},
                              {"seed", seed},
                              {"cycles", trace.total_cycles()},
                              {"total_sent", trace.total_sent},
                              {"terminated", trace.terminated},
                              {"delivered_ok", ok}}
                      << "\n";
        }
        return 0;
    }

    if (sim_tcp->parsed()) {
        for (std::size_t t = 0; t < st_trials; ++t) {
            BlockTrace trace = run_tcp_block(st_K, ChannelConfig::erasure(st_p, seed),
                                             substream(seed, t), max_iters);
            std::cout << trace_json(trace, st_p, seed) << "\n";
        }
        return 0;
    }

    if (analyze_cmd->parsed()) {
        json out;
        out["formula"] = an_formula;
        if (an_formula == "law-ne") {
            const std::size_t N = static_cast<std::size_t>(an_n + 1) * static_cast<std::size_t>(an_m + 1);
            BigRational exact = law_ne_exact(N, rational_from_double(an_p), an_ne);
            out["n"] = an_n;
            out["m"] = an_m;
            out["N"] = N;
            out["ne"] = an_ne;
            out["p"] = an_p;
            out["exact"] = rational_string(exact);
            out["value"] = exact.convert_to<double>();
        } else if (an_formula == "exp-c" || an_formula == "exp-r" || an_formula == "eq3") {
            BigRational exact = an_formula == "exp-c" ? exp_cols_given_ne_exact(an_n, an_m, an_ne)
                                : an_formula == "exp-r" ? exp_rows_given_ne_exact(an_n, an_m, an_ne)
                                                        : expected_I_regime3_exact(an_n, an_m, an_ne);
            out["n"] = an_n;
            out["m"] = an_m;
            out["ne"] = an_ne;
            out["exact"] = rational_string(exact);
            out["value"] = exact.convert_to<double>();
        } else if (an_formula == "lambda") {
            out["x"] = an_x;
            out["value"] = lambda_of_x(an_x);
        } else if (an_formula == "forests") {
            const auto counts = count_acyclic_subgraphs_all(an_n, an_m);
            out["n"] = an_n;
            out["m"] = an_m;
            out["counts"] = counts;
            if (an_ne < counts.size()) {
                out["ne"] = an_ne;
                out["prob_good"] = prob_good_given_ne(an_n, an_m, an_ne);
            }
        } else {
            throw std::invalid_argument("unknown formula: " + an_formula);
        }
        std::cout << out << "\n";
        return 0;
    }

    if (mc_cmd->parsed()) {
        Statistic stat;
        if (mc_stat == "expected-i") {
            stat = Statistic::ExpectedI;
        } else if (mc_stat == "prob-i-zero") {
            stat = Statistic::ProbIZero;
        } else if (mc_stat == "expected-c") {
            stat = Statistic::ExpectedC;
        } else if (mc_stat == "expected-r") {
            stat = Statistic::ExpectedR;
        } else {
            throw std::invalid_argument("unknown statistic: " + mc_stat);
        }
        ConditionalStats stats = mc_conditional(mc_n, mc_m, mc_ne, mc_trials, seed, stat);
        std::cout << json{{"statistic", mc_stat}, {"n", stats.n},
                          {"m", stats.m},         {"ne", stats.n_e},
                          {"estimate", stats.estimate}, {"std_error", stats.std_error},
                          {"trials", stats.trials},     {"seed", seed}}
                  << "\n";
        return 0;
    }

    if (sweep_cmd->parsed()) {
        SweepOptions options;
        options.block_sizes = sw_K;
        options.trials = sw_trials;
        options.bins = sw_bins;
        options.packet_len = sw_len;
        options.seed = seed;
        options.max_iterations = max_iters;
        SweepResult result = run_sweep(options);
        std::string payload;
        if (sw_json) {
            json rows = json::array();
            for (const SweepRow& row : result.rows) {
                rows.push_back({{"K", row.block_size},
                                {"p_bin", row.p_bin},
                                {"e_K", row.e_k},
                                {"i_K_ours", row.i_ours},
                                {"i_K_tcp", row.i_tcp},
                                {"iter_ratio", row.iter_ratio},
                                {"sent_ratio", row.sent_ratio},
                                {"trials", row.trials}});
            }
            payload = rows.dump() + "\n";
        } else {
            payload = sweep_csv(result);
        }
        if (sw_out.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(sw_out, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot open " + sw_out);
            }
            out << payload;
        }
        for (const SweepSummary& s : result.summaries) {
            std::cerr << "K=" << s.block_size << " iteration ratio (binned mean) "
                      << s.iter_ratio_binned << ", overall " << s.iter_ratio_overall
                      << ", sent ratio " << s.sent_ratio_overall << "\n";
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
