#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sepred/bounds.hpp"
#include "sepred/construct.hpp"
#include "sepred/errors.hpp"
#include "sepred/geometry.hpp"
#include "sepred/parallel.hpp"
#include "sepred/report_format.hpp"
#include "sepred/separation.hpp"

#ifndef SEPRED_DATA_DIR
#define SEPRED_DATA_DIR "data"
#endif

using namespace sepred;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

struct CodeSource {
    std::string preset;
    std::string code_file;
    std::uint32_t n = 0, k = 0, d = 0, ddual = 0, q = 0;

    void add(CLI::App* app) {
        app->add_option("--preset", preset, "Catalog code (golay24, bch41, qr12, exthamming8, ...)");
        app->add_option("--code", code_file, "GFMAT parity-check matrix defining the code");
        app->add_option("--n", n, "Length");
        app->add_option("--k", k, "Dimension");
        app->add_option("--d", d, "Minimum distance");
        app->add_option("--ddual", ddual, "Dual distance");
        app->add_option("--q", q, "Field order");
    }

    bool has_params() const { return n || k || d || ddual || q; }
    bool given() const { return !preset.empty() || !code_file.empty() || has_params(); }

    Preset resolve() const {
        const int sources = !preset.empty() + !code_file.empty() + has_params();
        if (sources != 1) throw UsageError("give exactly one code source: --preset, --code or --n/--k/--d/--ddual/--q");
        if (!preset.empty()) return sepred::preset(preset);
        if (!code_file.empty()) {
            LinearCode code = LinearCode::from_parity_check(read_gfmat_file(code_file), code_file);
            return {code.params(), code, code_file, std::nullopt};
        }
        if (!n || !k || !d || !ddual || !q) throw UsageError("a parameter tuple needs all of --n --k --d --ddual --q");
        CodeParams p{n, k, d, ddual, q};
        p.validate();
        return {p, std::nullopt, to_string(p), std::nullopt};
    }
};

const LinearCode& concrete(const Preset& p) {
    if (!p.code) throw UsageError("'" + p.name + "' has parameters only; this command needs a parity-check matrix");
    return *p.code;
}

// "3", "1..7" or "1,2,5".
std::vector<std::uint32_t> parse_ls(const std::string& text, std::uint32_t max_default) {
    std::vector<std::uint32_t> out;
    if (text.empty()) {
        for (std::uint32_t l = 1; l <= max_default; ++l) out.push_back(l);
        return out;
    }
    try {
        if (const auto dots = text.find(".."); dots != std::string::npos) {
            const auto lo = std::stoul(text.substr(0, dots));
            const auto hi = std::stoul(text.substr(dots + 2));
            if (lo > hi) throw UsageError("empty l range " + text);
            for (auto l = lo; l <= hi; ++l) out.push_back(static_cast<std::uint32_t>(l));
            return out;
        }
        std::istringstream in(text);
        for (std::string part; std::getline(in, part, ',');) out.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse l value '" + text + "'");
    }
    return out;
}

Subset parse_set(const std::string& text) {
    Subset s;
    std::string body = text;
    std::erase_if(body, [](char c) { return c == '{' || c == '}' || c == ' '; });
    std::istringstream in(body);
    try {
        for (std::string part; std::getline(in, part, ',');)
            if (!part.empty()) s.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse coordinate set '" + text + "'");
    }
    return s;
}

std::string set_string(const Subset& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    fn(out);
}

struct TableConfig {
    std::string format = "tsv";
    std::string covering_table = std::string(SEPRED_DATA_DIR) + "/covering_sizes.txt";
    bool explicit_table = false;
    bool no_table = false;
    bool greedy = false;

    void add(CLI::App* app) {
        app->add_option("--format", format, "tsv or markdown")->check(CLI::IsMember({"tsv", "markdown"}));
        app->add_option("--covering-table", covering_table, "Covering-size table")
            ->each([this](const std::string&) { explicit_table = true; });
        app->add_flag("--no-covering-table", no_table, "Ignore the covering-size table");
        app->add_flag("--greedy", greedy, "Fill missing covering sizes with greedy coverings");
    }

    std::optional<CoveringTable> load() const {
        if (no_table) return std::nullopt;
        if (!explicit_table && !std::filesystem::exists(covering_table)) {
            std::cerr << "warning: covering table " << covering_table << " not found; covering bounds need --greedy\n";
            return std::nullopt;
        }
        return load_covering_table(covering_table);
    }

    TableFormat table_format() const { return format == "markdown" ? TableFormat::markdown : TableFormat::tsv; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separating redundancy of linear codes: bounds, verification and constructions"};
    app.require_subcommand(1);
    int threads_flag = 0;
    app.fallthrough();
    app.add_option("--threads", threads_flag, "Worker count (default SEPRED_THREADS or all cores)");

    std::function<int()> action;

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Table of bounds, one column per l");
    CodeSource bounds_code;
    bounds_code.add(bounds);
    std::string bounds_l;
    TableConfig bounds_table;
    bounds->add_option("--l", bounds_l, "l, l range a..b or list (default 1..min(d,n-k)-1)");
    bounds_table.add(bounds);
    bounds->callback([&] {
        action = [&] {
            const Preset p = bounds_code.resolve();
            const auto ls = parse_ls(bounds_l, p.params.max_l());
            for (auto l : ls) require_bound_l(p.params, l);
            const auto table = bounds_table.load();
            CoveringOptions options{table ? &*table : nullptr, bounds_table.greedy, {}};
            const auto reports = report(p.params, ls, options, resolve_threads(threads_flag));
            std::cout << format_bounds(reports, bounds_table.table_format(), p.name);
            return kOk;
        };
    });

    // tables
    auto* tables = app.add_subcommand("tables", "Bounds for golay24, bch41 and qr12");
    TableConfig tables_table;
    tables_table.add(tables);
    tables->callback([&] {
        action = [&] {
            const auto table = tables_table.load();
            CoveringOptions options{table ? &*table : nullptr, tables_table.greedy, {}};
            const std::vector<std::pair<std::string, std::uint32_t>> runs = {{"golay24", 7}, {"bch41", 4}, {"qr12", 5}};
            for (std::size_t i = 0; i < runs.size(); ++i) {
                const Preset p = preset(runs[i].first);
                const auto reports = report(p.params, parse_ls("1.." + std::to_string(runs[i].second), 0), options,
                                            resolve_threads(threads_flag));
                if (i) std::cout << '\n';
                std::cout << format_bounds(reports, tables_table.table_format(), p.name + " " + to_string(p.params));
            }
            return kOk;
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Check S- or l-separation of a parity-check matrix");
    CodeSource verify_code;
    verify_code.add(verify);
    std::string verify_matrix, verify_set;
    std::uint32_t verify_l = 0;
    bool verify_all = false;
    verify->add_option("--matrix", verify_matrix, "GFMAT matrix to check")->required();
    verify->add_option("--l", verify_l, "Check l-separation");
    verify->add_option("--set", verify_set, "Check S-separation for S = {i,j,...} (0-based)");
    verify->add_flag("--all-sizes", verify_all, "Check every size 0..l instead of size l only");
    verify->callback([&] {
        action = [&] {
            const GFMatrix h = read_gfmat_file(verify_matrix);
            const LinearCode code = verify_code.given() ? concrete(verify_code.resolve())
                                                        : LinearCode::from_parity_check(h, verify_matrix);
            if ((verify_l == 0) == verify_set.empty()) throw UsageError("give exactly one of --l and --set");
            SeparationVerdict v;
            if (!verify_set.empty()) v = is_s_separating(code, h, parse_set(verify_set));
            else if (verify_all) v = is_l_separating_all_sizes(code, h, verify_l);
            else v = is_l_separating(code, h, verify_l, resolve_threads(threads_flag));
            std::cout << "code " << to_string(code.params()) << ", matrix " << h.rows() << " x " << h.cols() << '\n';
            std::cout << (v.separating ? "separating" : "not separating") << '\n';
            if (v.witness) std::cout << "witness " << set_string(*v.witness) << '\n';
            std::cout << "rank " << v.achieved_rank << " of required " << v.required_rank << '\n';
            if (!v.note.empty()) std::cout << "note: " << v.note << '\n';
            return v.separating ? kOk : kFailed;
        };
    });

    // exact
    auto* exact = app.add_subcommand("exact", "Exact separating redundancy by exhaustive search (tiny codes)");
    CodeSource exact_code;
    exact_code.add(exact);
    std::uint32_t exact_l = 1, exact_max_rows = 16;
    std::string exact_out;
    ExactSearchLimits exact_limits;
    exact->add_option("--l", exact_l, "l")->required();
    exact->add_option("--max-rows", exact_max_rows, "Largest row count searched");
    exact->add_option("--max-projective", exact_limits.max_projective, "Guard on projective dual words");
    exact->add_option("--max-subsets", exact_limits.max_subsets_per_level, "Guard on candidate row sets per size");
    exact->add_option("--out", exact_out, "Write the optimal matrix (GFMAT)");
    exact->callback([&] {
        action = [&] {
            const LinearCode code = concrete(exact_code.resolve());
            const auto r = exact_separating_redundancy(code, exact_l, exact_max_rows, exact_limits,
                                                       resolve_threads(threads_flag));
            std::cout << r.redundancy << '\n';
            if (!exact_out.empty())
                write_gfmat_file(exact_out, r.matrix,
                                 {"exact " + std::to_string(exact_l) + "-separating redundancy of " + code.name() +
                                  ": " + std::to_string(r.redundancy)});
            return kOk;
        };
    });

    // construct
    auto* construct = app.add_subcommand("construct", "Build a certified l-separating parity-check matrix");
    CodeSource construct_code;
    construct_code.add(construct);
    std::uint32_t construct_l = 1, construct_mu = 0;
    std::string construct_method = "covering", construct_covering, construct_sampling = "uniform", construct_out;
    std::uint64_t construct_t = 0, construct_seed = 1;
    construct->add_option("--l", construct_l, "l")->required();
    construct->add_option("--method", construct_method, "covering, random, generic or hybrid")
        ->check(CLI::IsMember({"covering", "random", "generic", "hybrid"}));
    construct->add_option("--mu", construct_mu, "Block size for a greedy covering");
    construct->add_option("--covering", construct_covering, "COVER or GCOVER file to use instead of --mu");
    construct->add_option("--t", construct_t, "Sampled rows (default: the minimizing t of the bound)");
    construct->add_option("--seed", construct_seed, "Sampling seed");
    construct->add_option("--sampling", construct_sampling, "uniform or nonzero")
        ->check(CLI::IsMember({"uniform", "nonzero"}));
    construct->add_option("--out", construct_out, "GFMAT output (default stdout)");
    construct->callback([&] {
        action = [&] {
            const LinearCode code = concrete(construct_code.resolve());
            const unsigned workers = resolve_threads(threads_flag);
            const ConstructionResult r = [&]() -> ConstructionResult {
                if (construct_method == "covering") {
                    if (construct_covering.empty()) {
                        if (!construct_mu) throw UsageError("covering method needs --mu or --covering");
                        const Covering c = greedy_covering(code.params().n, construct_mu, construct_l);
                        return construct_covering_based(code, construct_l, c, {true, false, workers});
                    } else {
                        std::ifstream in(construct_covering);
                        if (!in) throw UsageError("cannot read " + construct_covering);
                        std::string tag;
                        in >> tag;
                        in.seekg(0);
                        if (tag == "GCOVER")
                            return construct_covering_based(code, construct_l, read_generalized_covering(in),
                                                         {true, false, workers});
                        else
                            return construct_covering_based(code, construct_l, read_covering(in), {true, false, workers});
                    }
                } else if (construct_method == "generic") {
                    return construct_generic(code, construct_l, workers);
                } else if (construct_method == "random") {
                    const auto mode = construct_sampling == "nonzero" ? SamplingMode::nonzero : SamplingMode::uniform;
                    std::uint64_t t = construct_t;
                    if (!t) {
                        const auto scan = mode == SamplingMode::nonzero ? upper_prob_nonzero(code.params(), construct_l)
                                                                        : upper_prob_basic(code.params(), construct_l);
                        t = scan.t;
                    }
                    return construct_randomized(code, construct_l, t, construct_seed, mode, workers);
                } else {
                    const std::uint64_t t = construct_t ? construct_t : upper_prob_hybrid(code.params(), construct_l).t;
                    return construct_hybrid(code, construct_l, t, construct_seed, workers);
                }
            }();
            with_output(construct_out, [&](std::ostream& out) { write_gfmat(out, r.matrix, r.comment_block()); });
            std::cerr << r.method << ": " << r.rows() << " rows, " << (r.verified ? "verified" : "NOT verified");
            if (r.stated_bound) std::cerr << ", bound " << r.stated_bound->get_str();
            std::cerr << '\n';
            return r.verified ? kOk : kFailed;
        };
    });

    // covering
    auto* covering = app.add_subcommand("covering", "Greedy coverings and covering verification");
    std::uint32_t cov_n = 0, cov_mu = 0, cov_l = 0, cov_lambda = 1;
    std::string cov_verify, cov_out;
    GreedyOptions cov_options;
    covering->add_option("--n", cov_n, "Points");
    covering->add_option("--mu", cov_mu, "Block size");
    covering->add_option("--l", cov_l, "Covered subset size");
    covering->add_option("--lambda", cov_lambda, "Multiplicity");
    covering->add_flag("--randomized", cov_options.randomized, "Seeded tie-breaking");
    covering->add_option("--seed", cov_options.seed, "Tie-break seed");
    covering->add_option("--verify", cov_verify, "Verify a COVER or GCOVER file instead of building");
    covering->add_option("--out", cov_out, "COVER output (default stdout)");
    covering->callback([&] {
        action = [&] {
            const unsigned workers = resolve_threads(threads_flag);
            if (!cov_verify.empty()) {
                std::ifstream in(cov_verify);
                if (!in) throw UsageError("cannot read " + cov_verify);
                std::string tag;
                in >> tag;
                in.seekg(0);
                const CoverageResult r = tag == "GCOVER" ? verify_covering(read_generalized_covering(in), workers)
                                                         : verify_covering(read_covering(in), workers);
                std::cout << (r.covered ? "covering" : "not a covering") << '\n';
                if (r.uncovered) std::cout << "uncovered " << set_string(*r.uncovered) << '\n';
                return r.covered ? kOk : kFailed;
            }
            if (!cov_n || !cov_mu || !cov_l) throw UsageError("building needs --n --mu --l");
            const Covering c = greedy_covering(cov_n, cov_mu, cov_l, cov_lambda, cov_options);
            with_output(cov_out, [&](std::ostream& out) { write_covering(out, c); });
            std::cerr << c.blocks.size() << " blocks, lower bound "
                      << schonheim_lower(cov_n, cov_mu, cov_l, cov_lambda).get_str() << '\n';
            return kOk;
        };
    });

    // ag
    auto* ag = app.add_subcommand("ag", "5-separating matrix for the AG(2,2^h) incidence code");
    std::uint32_t ag_h = 3;
    GeometryOptions ag_options;
    std::string ag_blocks, ag_matrix, ag_report;
    ag->add_option("--exponent", ag_h, "Plane exponent h, q = 2^h");
    ag->add_option("--seed", ag_options.seed, "Spot-check seed");
    ag->add_option("--spot-checks", ag_options.spot_checks, "Random rank checks per kind");
    ag->add_option("--blocks-out", ag_blocks, "GCOVER file of the blocks");
    ag->add_option("--matrix-out", ag_matrix, "GFMAT file of the stacked matrix (omitted by default)");
    ag->add_option("--report", ag_report, "Certification report (default stdout)");
    ag->callback([&] {
        action = [&] {
            ag_options.threads = resolve_threads(threads_flag);
            ag_options.keep_matrix = !ag_matrix.empty();
            const AffinePlane plane = build_plane(ag_h);
            if (!check_plane_axioms(plane)) throw CertificateFailure("affine plane axioms fail");
            const auto r = build_5separating(plane, ag_options);
            if (!ag_blocks.empty())
                with_output(ag_blocks, [&](std::ostream& out) {
                    write_generalized_covering(out, r.blocks.covering(plane.points()));
                });
            if (r.matrix) write_gfmat_file(ag_matrix, *r.matrix, r.certificate.lines());
            with_output(ag_report, [&](std::ostream& out) {
                for (const auto& line : r.certificate.lines()) out << line << '\n';
            });
            return r.certificate.passed() ? kOk : kFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const LimitExceeded& e) {
        std::cerr << "limit: " << e.what() << '\n';
        return kUsage;
    } catch (const CertificateFailure& e) {
        std::cerr << "certificate failed: " << e.what() << '\n';
        return kFailed;
    }
}
