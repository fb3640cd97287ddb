#pragma once

// Command-line front end. Every run prints one JSON document on stdout.
//
// Exit status: 0 yes/true, 1 no/false, 2 unknown, 64 and above for errors
// (see exit_code()).

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "embed2k/cocycle.hpp"
#include "embed2k/complex.hpp"
#include "embed2k/decide.hpp"
#include "embed2k/errors.hpp"
#include "embed2k/geometry.hpp"
#include "embed2k/linalg.hpp"

namespace embed2k::cli {

enum ExitCode : int {
    kYes = 0,
    kNo = 1,
    kUnknown = 2,
    kUsage = 64,
    kParse = 65,
    kFileNotFound = 66,
    kInvalidComplex = 67,
    kInvalidArgument = 68,
    kDimensionMismatch = 69,
    kRingMismatch = 70,
    kDegenerate = 71,
    kNonUnitHat = 72,
    kPrecondition = 73,
    kSizeCap = 74,
    kInternal = 75,
};

inline int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return kParse;
        case ErrorKind::InvalidComplex: return kInvalidComplex;
        case ErrorKind::InvalidArgument: return kInvalidArgument;
        case ErrorKind::DimensionMismatch: return kDimensionMismatch;
        case ErrorKind::RingMismatch: return kRingMismatch;
        case ErrorKind::DegenerateConfiguration: return kDegenerate;
        case ErrorKind::NonUnitHat: return kNonUnitHat;
        case ErrorKind::PreconditionFailed: return kPrecondition;
        case ErrorKind::SizeCapExceeded: return kSizeCap;
    }
    return kInternal;
}

struct FileNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
inline std::string inline_or_file(const std::string& arg) {
    const auto pos = arg.find_first_not_of(" \t\n");
    if (pos != std::string::npos && (arg[pos] == '{' || arg[pos] == '[')) return arg;
    return read_file(arg);
}

inline int verdict_exit(Verdict v) {
    return v == Verdict::Yes ? kYes : v == Verdict::No ? kNo : kUnknown;
}

inline nlohmann::json cocycle_json(const Cocycle2& c) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < c.size(); ++i) j.push_back(c.values.get(i) ? 1 : 0);
    return j;
}

inline nlohmann::json cocycle_json(const CocycleZ& c) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : c.values) j.push_back(to_json_value(v));
    return j;
}

inline nlohmann::json pairs_json(const SimplicialComplex& K, const DeletedProduct& dp, bool ordered) {
    nlohmann::json j = nlohmann::json::array();
    if (ordered)
        for (const auto& p : dp.ordered()) j.push_back({to_json(K.face(p.first)), to_json(K.face(p.second))});
    else
        for (const auto& p : dp.pairs()) j.push_back({to_json(K.face(p.first)), to_json(K.face(p.second))});
    return j;
}

struct SelftestCase {
    std::string name;
    std::function<bool()> check;
};

/// Bundled instances with known answers.
inline std::vector<SelftestCase> selftest_cases() {
    const auto k4 = complete_graph(4);
    const auto k5 = complete_graph(5);
    const auto k33 = complete_bipartite(3, 3);
    const auto d26 = simplex_skeleton(2, 7);
    const auto two_k5 = disjoint_union(k5, k5);
    return {
        {"vk K4 trivial", [=] { return van_kampen_trivial(k4); }},
        {"vk K5 nontrivial", [=] { return !van_kampen_trivial(k5); }},
        {"vk K3,3 nontrivial", [=] { return !van_kampen_trivial(k33); }},
        {"vk Delta^2_6 nontrivial", [=] { return !van_kampen_trivial(d26); }},
        {"decide-z2 K5 (0, even) no",
         [=] { return decide_z2(k5, FormSpec::z2(0, FormType::Even)).verdict == Verdict::No; }},
        {"decide-z2 K5 (1, odd) yes", [=] { return decide_z2(k5, FormSpec::z2(1, FormType::Odd)).verdict == Verdict::Yes; }},
        {"decide-z2 K5+K5 (2, even) no",
         [=] { return decide_z2(two_k5, FormSpec::z2(2, FormType::Even)).verdict == Verdict::No; }},
        {"z2-rank K5 = 1", [=] { return z2_rank(k5).rank == std::size_t{1}; }},
        {"z2-rank K5+K5 = 2", [=] { return z2_rank(two_k5).rank == std::size_t{2}; }},
        {"decide-z K5 g=1 bound 1 yes", [=] { return decide_z_skew(k5, 1, DecideOptions::with_bound(1)).verdict == Verdict::Yes; }},
        {"decide-z K5 g=0 no", [=] { return decide_z_skew(k5, 0).verdict == Verdict::No; }},
        {"oracle K5 odd min rank 1", [=] { return min_rank_bruteforce(k5, FormType::Odd) == 1; }},
    };
}

/// Runs one invocation; returns the exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Embeddability of k-complexes into 2k-manifolds via intersection cocycles", "embed2k"};
    app.require_subcommand(1);

    std::string complex_path, form_arg, type_arg = "even", ring_arg = "Z2", cocycle_arg;
    long rank = -1, bound = 3;
    std::uint64_t seed = 0, size_cap = 1u << 24;
    bool json_witness = false;

    auto add_complex = [&](CLI::App* sub) {
        sub->add_option("complex", complex_path, "complex JSON file")->required();
        sub->add_option("--seed", seed, "moment-curve seed (default 0)");
    };
    auto* vk = app.add_subcommand("vk", "is the van Kampen class trivial");
    add_complex(vk);
    vk->add_flag("--json-witness", json_witness, "include the coboundary witness");

    auto* cocycle = app.add_subcommand("cocycle", "dump the intersection cocycle of the moment-curve map");
    add_complex(cocycle);
    cocycle->add_option("--ring", ring_arg, "Z2 (unordered pairs) or Z (ordered pairs)")->check(CLI::IsMember({"Z2", "Z"}));

    auto add_rank_type = [&](CLI::App* sub) {
        sub->add_option("--rank", rank, "rank of the intersection form")->required();
        sub->add_option("--type", type_arg, "even or odd")->check(CLI::IsMember({"even", "odd"}));
        sub->add_flag("--json-witness", json_witness, "include the coboundary witness");
    };
    auto* dz2 = app.add_subcommand("decide-z2", "Z2-embeddability for a mod-2 form of given rank and type");
    add_complex(dz2);
    add_rank_type(dz2);
    auto* dez2 = app.add_subcommand("decide-even-z2", "even Z2-embeddability for a mod-2 form of given rank and type");
    add_complex(dez2);
    add_rank_type(dez2);

    auto* rk = app.add_subcommand("z2-rank", "minimal rank of a mod-2 form realizing the complex");
    add_complex(rk);
    rk->add_option("--rank", rank, "largest rank scanned (default: first Betti number)");
    rk->add_flag("--json-witness", json_witness, "include the coboundary witness");

    auto* dz = app.add_subcommand("decide-z", "bounded search for integer realizability by a form");
    add_complex(dz);
    dz->add_option("--form", form_arg, "form spec, inline JSON or file")->required();
    dz->add_option("--bound", bound, "entry bound for the search (default 3)");
    dz->add_flag("--json-witness", json_witness, "include the coboundary witness");

    auto* hc = app.add_subcommand("homotopy-class", "is a cocycle cohomologous to zero");
    add_complex(hc);
    hc->add_option("--cocycle", cocycle_arg, "cocycle array (inline or file); default the moment-curve cocycle");
    hc->add_option("--ring", ring_arg, "Z2 or Z")->check(CLI::IsMember({"Z2", "Z"}));
    hc->add_flag("--json-witness", json_witness, "include the coboundary witness");

    auto* orc = app.add_subcommand("oracle-minrank", "brute-force minimal rank of a compatible matrix");
    add_complex(orc);
    orc->add_option("--type", type_arg, "even or odd")->check(CLI::IsMember({"even", "odd"}));
    orc->add_option("--size-cap", size_cap, "search node cap");

    auto* self = app.add_subcommand("selftest", "run the bundled instance suite");

    auto error_json = [&](const std::string& kind, const std::string& message, int code) {
        out << nlohmann::json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
        err << "embed2k: " << message << "\n";
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << nlohmann::json{{"help", app.help()}}.dump() << "\n";
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << nlohmann::json{{"help", app.help("", CLI::AppFormatMode::All)}}.dump() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        return error_json("usage", e.what(), kUsage);
    }

    try {
        nlohmann::json result;
        int code = kYes;
        const CLI::App* cmd = app.get_subcommands().front();
        result["command"] = cmd->get_name();
        DecideOptions opt;
        opt.seed = seed;
        opt.bound = bound;

        if (cmd == self) {
            nlohmann::json rows = nlohmann::json::array();
            bool all = true;
            for (const auto& c : selftest_cases()) {
                const auto t0 = std::chrono::steady_clock::now();
                bool ok = false;
                std::string note;
                try {
                    ok = c.check();
                } catch (const std::exception& e) {
                    note = e.what();
                }
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                // timings go to stderr so stdout stays byte-identical across runs
                err << (ok ? "PASS " : "FAIL ") << c.name << " (" << secs << " s)\n";
                nlohmann::json row{{"case", c.name}, {"pass", ok}};
                if (!note.empty()) row["error"] = note;
                rows.push_back(std::move(row));
                all = all && ok;
            }
            result["cases"] = std::move(rows);
            result["pass"] = all;
            out << result.dump() << "\n";
            return all ? kYes : kNo;
        }

        const SimplicialComplex K = parse_complex(read_file(complex_path));
        result["k"] = K.k();
        result["faces"] = K.size();
        result["seed"] = seed;

        if (cmd == vk) {
            const auto r = van_kampen(K, seed);
            result["trivial"] = r.trivial;
            result["nu"] = cocycle_json(r.nu);
            if (json_witness) result["witness"] = r.trivial ? to_json(r.witness) : nlohmann::json(nullptr);
            code = r.trivial ? kYes : kNo;
        } else if (cmd == cocycle) {
            const auto f = moment_map(K, seed);
            const DeletedProduct dp(K);
            result["ring"] = ring_arg;
            result["map_seed"] = f.seed();
            result["parameters"] = f.parameters;
            if (ring_arg == "Z2") {
                result["pairs"] = pairs_json(K, dp, false);
                result["nu"] = cocycle_json(intersection_cocycle2(K, f));
            } else {
                result["pairs"] = pairs_json(K, dp, true);
                result["nu"] = cocycle_json(intersection_cocycle_z(K, f));
            }
        } else if (cmd == dz2 || cmd == dez2) {
            if (rank < 0) throw Error(ErrorKind::InvalidArgument, "--rank must be nonnegative");
            const auto spec = FormSpec::z2(static_cast<std::size_t>(rank), parse_form_type(type_arg));
            const Decision d = cmd == dz2 ? decide_z2(K, spec, opt) : decide_even_z2(K, spec, opt);
            result["decision"] = to_json(d, json_witness);
            code = verdict_exit(d.verdict);
        } else if (cmd == rk) {
            std::optional<std::size_t> cap;
            if (rank >= 0) cap = static_cast<std::size_t>(rank);
            const RankResult r = z2_rank(K, cap, opt);
            result["rank"] = r.rank ? nlohmann::json(*r.rank) : nlohmann::json(nullptr);
            result["even"] = r.even;
            result["odd"] = r.odd;
            result["cap"] = r.cap;
            if (r.rank) {
                result["decision"] = to_json(r.decision, json_witness);
                code = kYes;
            } else {
                code = kUnknown;
            }
        } else if (cmd == dz) {
            const FormSpec spec = parse_form_spec(inline_or_file(form_arg));
            const Decision d = decide_z_form(K, spec, opt);
            result["decision"] = to_json(d, json_witness);
            code = verdict_exit(d.verdict);
        } else if (cmd == hc) {
            const DeletedProduct dp(K);
            nlohmann::json values;
            if (!cocycle_arg.empty()) {
                try {
                    values = nlohmann::json::parse(inline_or_file(cocycle_arg));
                } catch (const nlohmann::json::exception& e) {
                    throw Error(ErrorKind::Parse, std::string("cocycle is not JSON: ") + e.what());
                }
                if (!values.is_array()) throw Error(ErrorKind::Parse, "cocycle must be a JSON array");
            }
            CohomologyResult r;
            if (ring_arg == "Z2") {
                Cocycle2 nu = intersection_cocycle2(K, moment_map(K, seed));
                if (!values.is_null()) {
                    if (values.size() != dp.size()) throw Error(ErrorKind::DimensionMismatch, "cocycle length differs from |K*|");
                    nu = Cocycle2{gf2::BitVector(dp.size())};
                    for (std::size_t i = 0; i < dp.size(); ++i) {
                        if (!values[i].is_number_integer()) throw Error(ErrorKind::Parse, "cocycle entries must be integers");
                        if (values[i].get<long long>() % 2 != 0) nu.values.set(i);
                    }
                }
                r = decide_in_homotopy_class2(K, nu);
            } else {
                CocycleZ nu = intersection_cocycle_z(K, moment_map(K, seed));
                if (!values.is_null()) {
                    if (values.size() != dp.ordered_size())
                        throw Error(ErrorKind::DimensionMismatch, "integer cocycle needs one entry per ordered pair");
                    for (std::size_t i = 0; i < dp.ordered_size(); ++i) {
                        if (!values[i].is_number_integer()) throw Error(ErrorKind::Parse, "cocycle entries must be integers");
                        nu.values[i] = values[i].get<long long>();
                    }
                }
                r = decide_in_homotopy_class_z(K, nu);
            }
            result["ring"] = ring_arg;
            result["cohomologous_to_zero"] = r.cohomologous;
            if (json_witness) result["witness"] = r.cohomologous ? to_json(r.witness) : nlohmann::json(nullptr);
            code = r.cohomologous ? kYes : kNo;
        } else if (cmd == orc) {
            const FormType type = parse_form_type(type_arg);
            result["type"] = to_string(type);
            result["min_rank"] = min_rank_bruteforce(K, type, size_cap, seed);
        }
        out << result.dump() << "\n";
        return code;
    } catch (const FileNotFound& e) {
        return error_json("file-not-found", e.what(), kFileNotFound);
    } catch (const Error& e) {
        return error_json(to_string(e.kind()), e.what(), exit_code(e.kind()));
    } catch (const std::exception& e) {
        return error_json("internal", e.what(), kInternal);
    }
}

}  // namespace embed2k::cli
