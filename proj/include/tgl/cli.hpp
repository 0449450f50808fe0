#pragma once

// Command line surface. Exit codes: 0 success, 2 usage error, 3 size limit,
// 4 malformed input.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgl/common.hpp"
#include "tgl/construct.hpp"
#include "tgl/extremal.hpp"
#include "tgl/lights.hpp"
#include "tgl/optimize.hpp"
#include "tgl/render.hpp"
#include "tgl/tanglegram.hpp"
#include "tgl/tree.hpp"

namespace tgl {

namespace detail {

inline std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& bytes, std::ostream& out) {
    if (path == "-") {
        out << bytes;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot write '" + path + "'");
    f << bytes;
}

inline std::string sign_line(const std::vector<int8_t>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += v[i] > 0 ? "+1" : "-1";
    }
    return s;
}

} // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tanglegram crossing number toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "emit a tanglegram instance in .tgl format");
    std::string gen_family, gen_out = "-";
    int gen_i = -1, gen_size = 0;
    uint64_t gen_seed = 0;
    bool gen_fig4 = false, gen_random = false;
    gen->add_option("--family", gen_family, "named family (ti)");
    gen->add_option("--i", gen_i, "family level");
    gen->add_flag("--fig4", gen_fig4, "built-in size-8 instance of maximum crossing number");
    gen->add_flag("--random", gen_random, "random instance");
    gen->add_option("--size", gen_size, "random instance size");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output path ('-' = stdout)");

    // crt
    auto* crt = app.add_subcommand("crt", "crossing number of a .tgl instance");
    std::string crt_in, crt_method = "exact", crt_witness;
    int crt_jobs = 1;
    crt->add_option("input", crt_in, "input .tgl file")->required();
    crt->add_option("--method", crt_method, "exact|brute|heuristic")
        ->check(CLI::IsMember({"exact", "brute", "heuristic"}));
    crt->add_option("--jobs", crt_jobs, "worker threads")->envname("TGL_JOBS");
    crt->add_option("--witness", crt_witness, "write the achieving layout here");

    // render
    auto* render = app.add_subcommand("render", "render a .tgl layout as SVG");
    std::string render_in, render_out = "-";
    RenderSpec spec;
    render->add_option("input", render_in, "input .tgl file")->required();
    render->add_option("--out", render_out, "output path ('-' = stdout)");
    render->add_option("--width", spec.width, "canvas width in px");
    render->add_option("--height", spec.height, "canvas height in px");
    render->add_option("--leaf-gap", spec.leaf_gap, "vertical gap between leaves in px");
    render->add_flag("--show-crossing-count", spec.show_crossing_count, "caption with the crossing count");

    // h
    auto* hcmd = app.add_subcommand("h", "tabulate exact vs closed-form minimum special-vertex counts");
    int h_max_n = 0;
    hcmd->add_option("--max-n", h_max_n, "largest leaf count")->required();

    // gb
    auto* gb = app.add_subcommand("gb", "Gale-Berlekamp switching game");
    std::string gb_in = "-";
    int gb_size = 0, gb_trials = 1;
    uint64_t gb_seed = 0;
    bool gb_exact_flag = false, gb_greedy_flag = false, gb_random = false;
    gb->add_option("--in", gb_in, "matrix file of +-1 rows ('-' = stdin)");
    gb->add_option("--size", gb_size, "expected (or generated) dimension");
    gb->add_flag("--exact", gb_exact_flag, "exact maximization");
    gb->add_flag("--greedy", gb_greedy_flag, "random-column majority-row strategy");
    gb->add_flag("--random", gb_random, "generate a random matrix instead of reading one");
    gb->add_option("--seed", gb_seed, "random seed");
    gb->add_option("--trials", gb_trials, "greedy trials to average");

    // search-max
    auto* sm = app.add_subcommand("search-max", "exhaustive maximum crossing number over all classes");
    int sm_n = 0, sm_jobs = 1;
    std::string sm_hist;
    sm->add_option("--n", sm_n, "tanglegram size")->required();
    sm->add_option("--jobs", sm_jobs, "worker threads")->envname("TGL_JOBS");
    sm->add_option("--hist", sm_hist, "write the crossing-number histogram here");

    // iso
    auto* iso = app.add_subcommand("iso", "compare two .tgl files as tanglegrams");
    std::string iso_a, iso_b;
    iso->add_option("first", iso_a, "first .tgl file")->required();
    iso->add_option("second", iso_b, "second .tgl file")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (app.got_subcommand(gen)) {
            int ways = (gen_family.empty() ? 0 : 1) + (gen_fig4 ? 1 : 0) + (gen_random ? 1 : 0);
            if (ways != 1) throw CLI::ValidationError("gen", "pick exactly one of --family, --fig4, --random");
            Layout d = make_layout(make_tanglegram(single_leaf(), single_leaf(), {0}));
            if (!gen_family.empty()) {
                if (gen_family != "ti") throw CLI::ValidationError("gen", "unknown family '" + gen_family + "'");
                if (gen_i < 0) throw CLI::ValidationError("gen", "--family ti requires --i");
                d = d_star(gen_i);
            } else if (gen_fig4) {
                d = fig4_layout();
            } else {
                if (gen_size < 1) throw CLI::ValidationError("gen", "--random requires --size >= 1");
                if (gen_size > 1000000) throw size_limit_error("gen: random size capped at 1000000");
                d = random_instance(gen_size, gen_seed);
            }
            detail::write_file(gen_out, to_tgl(d), out);
            return 0;
        }

        if (app.got_subcommand(crt)) {
            Layout d = parse_tgl(detail::read_file(crt_in));
            if (crt_method == "heuristic") {
                if (d.tg.size() > 4096) throw size_limit_error("crt heuristic: size capped at 4096");
                if (d.tg.size() < 2) {
                    out << "ub 0 guarantee 0\n";
                    if (!crt_witness.empty()) detail::write_file(crt_witness, to_tgl(d), out);
                    return 0;
                }
                auto [best, rep] = switching_chain(d.tg);
                out << "ub " << rep.best_value << " guarantee " << rep.guarantee_bound << "\n";
                if (!crt_witness.empty()) detail::write_file(crt_witness, to_tgl(best), out);
                return 0;
            }
            CrtResult res = crt_method == "exact" ? crt_exact(d.tg, std::max(1, crt_jobs)) : crt_bruteforce(d.tg);
            out << "crt " << res.value << "\n";
            if (!crt_witness.empty()) detail::write_file(crt_witness, to_tgl(res.witness), out);
            return 0;
        }

        if (app.got_subcommand(render)) {
            Layout d = parse_tgl(detail::read_file(render_in));
            detail::write_file(render_out, render_svg(d, spec), out);
            return 0;
        }

        if (app.got_subcommand(hcmd)) {
            if (h_max_n < 1) throw CLI::ValidationError("h", "--max-n must be >= 1");
            if (h_max_n > 14) throw size_limit_error("h: exhaustive range capped at 14");
            for (int n = 1; n <= h_max_n; ++n) {
                HExactResult ex = h_exact(n);
                int f = h_formula(n);
                out << "n " << n << " exact " << ex.value << " formula " << f << " "
                    << (ex.value == f ? "match" : "MISMATCH") << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(gb)) {
            if (gb_exact_flag == gb_greedy_flag)
                throw CLI::ValidationError("gb", "pick exactly one of --exact, --greedy");
            SignMatrix m = gb_random ? random_sign_matrix(gb_size, gb_seed) : parse_sign_matrix(detail::read_file(gb_in));
            if (!gb_random && gb_size > 0 && m.n != gb_size)
                throw parse_error("gb: matrix dimension " + std::to_string(m.n) + " does not match --size");
            if (gb_exact_flag) {
                GbResult r = gb_exact(m);
                out << "value " << r.value << "\n";
                out << "x " << detail::sign_line(r.x) << "\n";
                out << "y " << detail::sign_line(r.y) << "\n";
            } else if (gb_trials <= 1) {
                GbResult r = gb_greedy(m, gb_seed);
                out << "value " << r.value << "\n";
                out << "x " << detail::sign_line(r.x) << "\n";
                out << "y " << detail::sign_line(r.y) << "\n";
            } else {
                SplitMix64 g(gb_seed);
                long long sum = 0;
                for (int t = 0; t < gb_trials; ++t) sum += gb_greedy(m, g.split().state).value;
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(sum) / gb_trials);
                out << "trials " << gb_trials << "\n";
                out << "mean " << buf << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(sm)) {
            ExtremalReport rep = max_crt(sm_n, std::max(1, sm_jobs));
            BoundVerdicts v = bound_check(rep);
            out << "n " << rep.n << "\n";
            out << "classes " << rep.tanglegram_count << "\n";
            out << "max " << rep.max_value << "\n";
            out << "witnesses " << rep.witnesses.size() << "\n";
            for (const std::string& w : rep.witnesses) out << "witness " << w << "\n";
            out << "bound_strict " << (v.strict_upper ? "ok" : "violated") << "\n";
            out << "bound_claimed " << (v.claimed_upper ? "ok" : "violated") << "\n";
            out << "bound_family " << (v.family_lower_applies ? (v.family_lower ? "ok" : "violated") : "n/a") << "\n";
            std::string hist;
            for (auto [value, count] : rep.histogram)
                hist += std::to_string(value) + " " + std::to_string(count) + "\n";
            for (auto [value, count] : rep.histogram)
                out << "hist " << value << " " << count << "\n";
            if (!sm_hist.empty()) detail::write_file(sm_hist, hist, out);
            err << "wall_seconds " << rep.wall_seconds << "\n";
            return 0;
        }

        if (app.got_subcommand(iso)) {
            Layout a = parse_tgl(detail::read_file(iso_a));
            Layout b = parse_tgl(detail::read_file(iso_b));
            // canonicalization enumerates automorphism groups of size up to 2^{n-1}
            if (a.tg.size() > 12 || b.tg.size() > 12) throw size_limit_error("iso: size capped at 12");
            out << (is_isomorphic(a.tg, b.tg) ? "isomorphic" : "not isomorphic") << "\n";
            return 0;
        }

        return 0;
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const size_limit_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(std::move(args), std::cout, std::cerr);
}

} // namespace tgl
