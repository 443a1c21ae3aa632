#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mediankit.h"

namespace {

struct CommonOpts {
    std::string input = "-";
    std::string output = "-";
    std::string format = "json";
    std::uint64_t guard = 0;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
    if (with_input)
        cmd->add_option("--input,-i", opts.input, "input file, or - for stdin");
    cmd->add_option("--output,-o", opts.output, "output file, or - for stdout");
    cmd->add_option("--format", opts.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--guard", opts.guard,
                    "override the enumeration size guards (0 keeps defaults)");
    cmd->add_flag("--quiet,-q", opts.quiet, "suppress document output");
}

int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

int exit_code(mdk_status status) {
    switch (status) {
        case MDK_OK: return 0;
        case MDK_ERR_CHECK: return 1;
        case MDK_ERR_USAGE: return 2;
        case MDK_ERR_GUARD: return 3;
        default: return 1;
    }
}

bool read_input(const std::string& path, std::string* out) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        *out = ss.str();
        return true;
    }
    std::ifstream in(path);
    if (!in.good()) return false;
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
    return true;
}

bool write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path);
    out << text;
    return out.good();
}

// RAII wrappers around the C handles
struct Doc {
    mdk_document* ptr = nullptr;
    ~Doc() { mdk_document_free(ptr); }
};

struct Str {
    char* ptr = nullptr;
    ~Str() { mdk_string_free(ptr); }
};

int parse_input(const CommonOpts& opts, Doc* doc) {
    std::string text;
    if (!read_input(opts.input, &text))
        return fail_usage("cannot read input '" + opts.input + "'");
    mdk_status st = mdk_document_parse(text.c_str(), &doc->ptr);
    if (st != MDK_OK) return fail_usage(mdk_last_error());
    return 0;
}

int emit(const CommonOpts& opts, mdk_status status, const Doc& doc) {
    if (!opts.quiet && doc.ptr) {
        Str text;
        mdk_status est = opts.format == "text"
                             ? mdk_document_render_text(doc.ptr, &text.ptr)
                             : mdk_document_emit(doc.ptr, &text.ptr);
        if (est != MDK_OK) return fail_usage(mdk_last_error());
        if (!write_output(opts.output, text.ptr))
            return fail_usage("cannot write output '" + opts.output + "'");
    }
    if (status != MDK_OK && std::string(mdk_last_error()).size())
        std::cerr << "error: " << mdk_last_error() << "\n";
    return exit_code(status);
}

std::string weights_json(const std::vector<std::string>& entries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& w : entries) arr.push_back(w);
    return arr.dump();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation on finite median algebras, median metric "
                 "spaces and measured wall spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mdk_version()));

    // validate ----------------------------------------------------------
    CommonOpts validate_opts;
    CLI::App* cmd_validate =
        app.add_subcommand("validate", "check the median axioms and metric condition");
    add_common(cmd_validate, validate_opts);

    // halfspaces ---------------------------------------------------------
    CommonOpts halfspaces_opts;
    CLI::App* cmd_halfspaces =
        app.add_subcommand("halfspaces", "enumerate all convex bipartitions");
    add_common(cmd_halfspaces, halfspaces_opts);

    // rank ----------------------------------------------------------------
    CommonOpts rank_opts;
    CLI::App* cmd_rank =
        app.add_subcommand("rank", "maximal pairwise-transverse wall family");
    add_common(cmd_rank, rank_opts);

    // hull ----------------------------------------------------------------
    CommonOpts hull_opts;
    std::vector<std::uint32_t> hull_points;
    CLI::App* cmd_hull = app.add_subcommand("hull", "convex hull of a point set");
    add_common(cmd_hull, hull_opts);
    cmd_hull->add_option("--points", hull_points, "point indices")->required();

    // gate ----------------------------------------------------------------
    CommonOpts gate_opts;
    std::uint32_t gate_point = 0;
    std::vector<std::uint32_t> gate_set;
    CLI::App* cmd_gate = app.add_subcommand("gate", "gate of a point in a convex set");
    add_common(cmd_gate, gate_opts);
    cmd_gate->add_option("--point", gate_point, "the point to project")->required();
    cmd_gate->add_option("--set", gate_set, "the convex target set")->required();

    // chains --------------------------------------------------------------
    CommonOpts chains_opts;
    std::uint32_t chains_from = 0, chains_to = 0;
    CLI::App* cmd_chains = app.add_subcommand(
        "chains", "minimum chain cover of the separating halfspaces");
    add_common(cmd_chains, chains_opts);
    cmd_chains->add_option("--from", chains_from)->required();
    cmd_chains->add_option("--to", chains_to)->required();

    // embed ----------------------------------------------------------------
    CommonOpts embed_opts;
    std::uint32_t embed_from = 0, embed_to = 0;
    CLI::App* cmd_embed =
        app.add_subcommand("embed", "exact l1 coordinates on an interval");
    add_common(cmd_embed, embed_opts);
    cmd_embed->add_option("--from", embed_from)->required();
    cmd_embed->add_option("--to", embed_to)->required();

    // weights ----------------------------------------------------------------
    CommonOpts weights_opts;
    CLI::App* cmd_weights =
        app.add_subcommand("weights", "recover the wall weights of a metric");
    add_common(cmd_weights, weights_opts);

    // medianize ----------------------------------------------------------------
    CommonOpts medianize_opts;
    CLI::App* cmd_medianize =
        app.add_subcommand("medianize", "median space of a measured wall space");
    add_common(cmd_medianize, medianize_opts);

    // double-dual ----------------------------------------------------------
    CommonOpts dual_opts;
    CLI::App* cmd_dual =
        app.add_subcommand("double-dual", "ultrafilter median algebra and embedding");
    add_common(cmd_dual, dual_opts);

    // zero-completion --------------------------------------------------------
    CommonOpts zero_opts;
    CLI::App* cmd_zero = app.add_subcommand(
        "zero-completion", "completion through directed gate-convex sets");
    add_common(cmd_zero, zero_opts);

    // generate ----------------------------------------------------------------
    CommonOpts gen_opts;
    std::string gen_family;
    std::uint64_t gen_k = 0, gen_n = 0, gen_m = 0, gen_rows = 0, gen_cols = 0,
                  gen_seed = 0;
    std::vector<std::string> gen_weights, gen_row_weights, gen_col_weights, gen_edges;
    CLI::App* cmd_generate = app.add_subcommand("generate", "construct an instance");
    cmd_generate
        ->add_option("family", gen_family,
                     "hypercube | path | grid | tree | staircase | "
                     "random-subalgebra | tripod")
        ->required();
    add_common(cmd_generate, gen_opts, /*with_input=*/false);
    cmd_generate->add_option("--k", gen_k, "dimension or step count");
    cmd_generate->add_option("--n", gen_n, "point or coordinate count");
    cmd_generate->add_option("--m", gen_m, "sample count");
    cmd_generate->add_option("--rows", gen_rows);
    cmd_generate->add_option("--cols", gen_cols);
    cmd_generate->add_option("--seed", gen_seed, "random seed");
    cmd_generate->add_option("--weights", gen_weights, "edge or coordinate weights");
    cmd_generate->add_option("--row-weights", gen_row_weights);
    cmd_generate->add_option("--col-weights", gen_col_weights);
    cmd_generate->add_option("--edges", gen_edges, "tree edges as a-b:length");

    // check ----------------------------------------------------------------
    CommonOpts check_opts;
    std::string check_filter;
    bool check_corpus = false;
    CLI::App* cmd_check = app.add_subcommand(
        "check", "run the full statement suite on an input or the built-in corpus");
    add_common(cmd_check, check_opts);
    cmd_check->add_option("--filter", check_filter, "run a single statement");
    cmd_check->add_flag("--corpus", check_corpus,
                        "ignore --input and run the built-in corpus");

    // demo-staircase ---------------------------------------------------------
    CommonOpts demo_opts;
    std::uint64_t demo_kmax = 5;
    CLI::App* cmd_demo = app.add_subcommand(
        "demo-staircase", "projection stabilization across staircase truncations");
    add_common(cmd_demo, demo_opts, /*with_input=*/false);
    cmd_demo->add_option("--kmax", demo_kmax, "deepest truncation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (cmd_validate->parsed()) {
        Doc in;
        if (int rc = parse_input(validate_opts, &in)) return rc;
        Doc report;
        mdk_status st = mdk_validate(in.ptr, &report.ptr);
        return emit(validate_opts, st, report);
    }
    if (cmd_halfspaces->parsed()) {
        Doc in;
        if (int rc = parse_input(halfspaces_opts, &in)) return rc;
        Doc report;
        mdk_status st = mdk_halfspaces(in.ptr, &report.ptr);
        return emit(halfspaces_opts, st, report);
    }
    if (cmd_rank->parsed()) {
        Doc in;
        if (int rc = parse_input(rank_opts, &in)) return rc;
        std::uint32_t rank = 0;
        mdk_status st = mdk_rank(in.ptr, &rank);
        if (st == MDK_OK && !rank_opts.quiet) {
            std::string text = rank_opts.format == "text"
                                   ? "rank: " + std::to_string(rank) + "\n"
                                   : std::to_string(rank) + "\n";
            if (!write_output(rank_opts.output, text))
                return fail_usage("cannot write output");
        }
        if (st != MDK_OK) std::cerr << "error: " << mdk_last_error() << "\n";
        return exit_code(st);
    }
    if (cmd_hull->parsed()) {
        Doc in;
        if (int rc = parse_input(hull_opts, &in)) return rc;
        Doc report;
        mdk_status st =
            mdk_convex_hull(in.ptr, hull_points.data(), hull_points.size(), &report.ptr);
        return emit(hull_opts, st, report);
    }
    if (cmd_gate->parsed()) {
        Doc in;
        if (int rc = parse_input(gate_opts, &in)) return rc;
        std::uint32_t g = 0;
        mdk_status st =
            mdk_gate(in.ptr, gate_point, gate_set.data(), gate_set.size(), &g);
        if (st == MDK_OK && !gate_opts.quiet) {
            std::string text = gate_opts.format == "text"
                                   ? "gate: " + std::to_string(g) + "\n"
                                   : std::to_string(g) + "\n";
            if (!write_output(gate_opts.output, text))
                return fail_usage("cannot write output");
        }
        if (st != MDK_OK) std::cerr << "error: " << mdk_last_error() << "\n";
        return exit_code(st);
    }
    if (cmd_chains->parsed()) {
        Doc in;
        if (int rc = parse_input(chains_opts, &in)) return rc;
        Doc report;
        mdk_status st = mdk_dilworth_chains(in.ptr, chains_from, chains_to, &report.ptr);
        return emit(chains_opts, st, report);
    }
    if (cmd_embed->parsed()) {
        Doc in;
        if (int rc = parse_input(embed_opts, &in)) return rc;
        Doc report;
        mdk_status st = mdk_l1_embed(in.ptr, embed_from, embed_to, &report.ptr);
        return emit(embed_opts, st, report);
    }
    if (cmd_weights->parsed()) {
        Doc in;
        if (int rc = parse_input(weights_opts, &in)) return rc;
        Doc report;
        mdk_status st = mdk_wall_weights(in.ptr, &report.ptr);
        return emit(weights_opts, st, report);
    }
    if (cmd_medianize->parsed()) {
        Doc in;
        if (int rc = parse_input(medianize_opts, &in)) return rc;
        Doc space;
        mdk_status st = mdk_medianize(in.ptr, medianize_opts.guard, &space.ptr);
        return emit(medianize_opts, st, space);
    }
    if (cmd_dual->parsed()) {
        Doc in;
        if (int rc = parse_input(dual_opts, &in)) return rc;
        Doc report;
        mdk_status st = mdk_double_dual(in.ptr, dual_opts.guard, &report.ptr);
        return emit(dual_opts, st, report);
    }
    if (cmd_zero->parsed()) {
        Doc in;
        if (int rc = parse_input(zero_opts, &in)) return rc;
        Doc report;
        mdk_status st = mdk_zero_completion(in.ptr, zero_opts.guard, &report.ptr);
        return emit(zero_opts, st, report);
    }
    if (cmd_generate->parsed()) {
        nlohmann::json spec;
        std::string family = gen_family;
        for (auto& c : family)
            if (c == '-') c = '_';
        spec["family"] = family;
        if (cmd_generate->count("--k")) spec["k"] = gen_k;
        if (cmd_generate->count("--n")) spec["n"] = gen_n;
        if (cmd_generate->count("--m")) spec["m"] = gen_m;
        if (cmd_generate->count("--rows")) spec["rows"] = gen_rows;
        if (cmd_generate->count("--cols")) spec["cols"] = gen_cols;
        if (cmd_generate->count("--seed")) spec["seed"] = gen_seed;
        auto put_weights = [&](const char* key, const std::vector<std::string>& w) {
            if (!w.empty()) spec[key] = nlohmann::json::parse(weights_json(w));
        };
        put_weights("weights", gen_weights);
        put_weights("row_weights", gen_row_weights);
        put_weights("col_weights", gen_col_weights);
        if (!gen_edges.empty()) {
            nlohmann::json edges = nlohmann::json::array();
            for (const std::string& e : gen_edges) {
                auto dash = e.find('-');
                auto colon = e.find(':');
                if (dash == std::string::npos || colon == std::string::npos ||
                    colon < dash)
                    return fail_usage("edges are a-b:length, got '" + e + "'");
                try {
                    edges.push_back({std::stoul(e.substr(0, dash)),
                                     std::stoul(e.substr(dash + 1, colon - dash - 1)),
                                     e.substr(colon + 1)});
                } catch (const std::exception&) {
                    return fail_usage("edges are a-b:length, got '" + e + "'");
                }
            }
            spec["edges"] = std::move(edges);
        }
        Doc out;
        mdk_status st = mdk_generate(spec.dump().c_str(), &out.ptr);
        return emit(gen_opts, st, out);
    }
    if (cmd_check->parsed()) {
        Doc in;
        bool have_input = cmd_check->count("--input") > 0 && !check_corpus;
        if (have_input) {
            if (int rc = parse_input(check_opts, &in)) return rc;
        }
        Doc card;
        mdk_status st = mdk_check(have_input ? in.ptr : nullptr,
                                  check_filter.empty() ? nullptr : check_filter.c_str(),
                                  check_opts.guard, &card.ptr);
        return emit(check_opts, st, card);
    }
    if (cmd_demo->parsed()) {
        Doc report;
        mdk_status st = mdk_demo_staircase(std::uint32_t(demo_kmax), &report.ptr);
        return emit(demo_opts, st, report);
    }
    return fail_usage("no subcommand");
}
