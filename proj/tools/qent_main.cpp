// qent: analyze degrees of entanglement of multipartite pure states through
// determinantal indicators, decide separability, and simulate measurement
// collapse. See README.md for the command reference.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qent/indicators.hpp"
#include "qent/io.hpp"
#include "qent/ket.hpp"
#include "qent/separability.hpp"
#include "qent/state.hpp"
#include "qent/tables.hpp"

using namespace qent;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitUnrealizable = 4;
constexpr int kExitIo = 5;

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt_complex(const cx& a) {
    if (a.imag() == 0.0) return fmt12(a.real());
    std::string s = fmt12(a.real());
    s += a.imag() < 0 ? " - " : " + ";
    s += fmt12(std::abs(a.imag()));
    s += "i";
    return s;
}

std::string fraction(long long num, long long den) {
    if (num == 0) return "0";
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string dims_string(const std::vector<int>& dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(dims[i]);
    }
    return s + "]";
}

std::string format_state(const PureState& state) {
    const bool wide = *std::max_element(state.dims.begin(), state.dims.end()) > 10;
    std::ostringstream out;
    bool any = false;
    std::vector<int> index(state.dims.size(), 0);
    for (std::size_t off = 0; off < state.size(); ++off) {
        if (state.amps[off] != cx(0, 0)) {
            if (any) out << " + ";
            out << "(" << fmt_complex(state.amps[off]) << ")|";
            for (std::size_t i = 0; i < index.size(); ++i) {
                if (wide && i) out << ",";
                out << index[i];
            }
            out << ">";
            any = true;
        }
        for (int slot = static_cast<int>(index.size()) - 1; slot >= 0; --slot) {
            if (++index[static_cast<std::size_t>(slot)] < state.dims[static_cast<std::size_t>(slot)]) break;
            index[static_cast<std::size_t>(slot)] = 0;
        }
    }
    if (!any) out << "0";
    return out.str();
}

std::string pattern_string(const LevelReport& level) {
    std::string s = "[";
    for (std::size_t i = 0; i < level.minors.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(level.minors[i].binary);
    }
    return s + "]";
}

std::string branch_string(const std::vector<int>& branch) {
    std::string s = "(";
    for (std::size_t i = 0; i < branch.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(branch[i]);
    }
    return s + ")";
}

long long ones_count(const LevelReport& level) {
    long long ones = 0;
    for (const MinorRecord& rec : level.minors) ones += rec.binary;
    return ones;
}

struct CommonOptions {
    std::string expression;
    std::string file;
    std::string expr_file;
    std::string format = "text";
    std::string mode = "binary";
    double tolerance = eps_zero;
};

void add_state_source(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("expression", opt.expression, "ket expression, e.g. \"(1/sqrt(2))(|000>+|111>)\"");
    cmd->add_option("--file", opt.file, "state file (JSON with dims and amps)");
    cmd->add_option("--expr-file", opt.expr_file,
                    "file holding one ket expression (one per line, '#' comments; exactly one expected)");
}

void add_format(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
}

void add_mode(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--mode", opt.mode, "determinant display: binarized patterns or raw magnitudes")
        ->check(CLI::IsMember({"binary", "raw"}));
}

void add_tolerance(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--tolerance", opt.tolerance, "zero threshold for binarization and rank decisions");
}

// Source precedence: positional ket expression, else --file, else --expr-file.
PureState load_source(const CommonOptions& opt) {
    if (opt.expression.empty() && opt.file.empty() && opt.expr_file.empty()) {
        throw validation_error("no state given: pass a ket expression, --file, or --expr-file");
    }
    if (!opt.expression.empty()) return ket::evaluate_expression(opt.expression);
    if (!opt.file.empty()) return load_state_file(opt.file);

    std::ifstream in(opt.expr_file);
    if (!in) throw io_error("cannot open expression file: " + opt.expr_file);
    const auto lines = ket::read_expression_lines(in);
    if (lines.size() != 1) {
        throw validation_error("expression file must hold exactly one expression, found " +
                               std::to_string(lines.size()));
    }
    return ket::evaluate_expression(lines[0].first);
}

void print_profile_text(const AnalysisReport& profile, const SeparabilityReport& sep, bool raw_mode) {
    for (const LevelReport& level : profile.levels) {
        std::cout << "level m=" << level.level << ": " << level.count
                  << (level.count == 1 ? " determinant\n" : " determinants\n");
        std::cout << "  binary pattern: " << pattern_string(level) << "\n";
        std::cout << "  C_" << level.level << " (binary) = " << fraction(ones_count(level), level.count)
                  << "\n";
        if (raw_mode) {
            std::cout << "  C_" << level.level << " (raw mean |det|) = " << fmt12(level.coarse_raw) << "\n";
            for (const MinorRecord& rec : level.minors) {
                std::cout << "    branch " << branch_string(rec.branch) << " rows (" << rec.row_pair.first
                          << "," << rec.row_pair.second << ") cols (" << rec.col_pair.first << ","
                          << rec.col_pair.second << "): " << fmt_complex(rec.value)
                          << "  |det| = " << fmt12(rec.magnitude) << "\n";
            }
            std::cout << "  branch probabilities:";
            for (double p : level.branch_probabilities) std::cout << " " << fmt12(p);
            std::cout << "\n";
        }
    }
    std::cout << "coarse (binary): [";
    for (std::size_t i = 0; i < profile.levels.size(); ++i) {
        if (i) std::cout << "; ";
        std::cout << fraction(ones_count(profile.levels[i]), profile.levels[i].count);
    }
    std::cout << "]\n";
    if (raw_mode) {
        std::cout << "coarse (raw): [";
        for (std::size_t i = 0; i < profile.coarse_raw.size(); ++i) {
            if (i) std::cout << "; ";
            std::cout << fmt12(profile.coarse_raw[i]);
        }
        std::cout << "]\n";
    }
    if (profile.concurrence) std::cout << "concurrence: " << fmt12(*profile.concurrence) << "\n";
    if (profile.cayley) {
        std::cout << "cayley hyperdeterminant: " << fmt_complex(*profile.cayley) << "\n";
        std::cout << "tangle: " << fmt12(*profile.tangle) << "\n";
    }

    std::cout << "per-site separable: [";
    for (std::size_t i = 0; i < sep.per_site_separable.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << (sep.per_site_separable[i] ? "yes" : "no");
        if (sep.per_site_marginal[i]) std::cout << " (marginal)";
    }
    std::cout << "]\n";
    std::cout << "completely separable: " << (sep.completely_separable ? "yes" : "no") << "\n";

    const Factorization& f = sep.factorization;
    if (!f.factors.empty()) {
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            const int site = static_cast<int>(sep.per_site_separable.size() - i);
            std::cout << "factor (site " << site << "): "
                      << format_state(PureState{{static_cast<int>(f.factors[i].size())}, f.factors[i]})
                      << "\n";
        }
    }
    if (f.core) {
        std::cout << "entangled core on sites 1.." << f.core_sites << ": " << format_state(*f.core) << "\n";
    }
}

int cmd_analyze(const CommonOptions& opt, bool factor_only) {
    const PureState input = load_source(opt);
    const double input_norm = norm(input);
    const PureState state = normalize(input);

    if (state.sites() < 2) {
        throw validation_error("analysis needs at least 2 sites; got a single-site state");
    }
    const AnalysisReport profile = full_profile(state, opt.tolerance);
    const SeparabilityReport sep = classify(state, opt.tolerance);

    if (opt.format == "json") {
        std::cout << report_document_json(state, profile, sep) << "\n";
        return 0;
    }
    std::cout << "state: " << state.sites() << " sites, dims " << dims_string(state.dims) << "\n";
    std::cout << "input norm: " << fmt12(input_norm) << " (analysis uses the normalized state)\n";
    if (factor_only) {
        std::cout << "completely separable: " << (sep.completely_separable ? "yes" : "no") << "\n";
        const Factorization& f = sep.factorization;
        if (f.factors.empty()) std::cout << "no factor splits off the last site\n";
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            const int site = static_cast<int>(state.dims.size() - i);
            std::cout << "factor (site " << site << "): "
                      << format_state(PureState{{static_cast<int>(f.factors[i].size())}, f.factors[i]})
                      << "\n";
        }
        if (f.core) {
            std::cout << "entangled core on sites 1.." << f.core_sites << ": " << format_state(*f.core)
                      << "\n";
        }
        return 0;
    }
    print_profile_text(profile, sep, opt.mode == "raw");
    return 0;
}

struct MeasureOptions {
    CommonOptions common;
    int site = 0;
    int outcome = -1;
    std::string direction;
    std::string chain;
};

std::vector<cx> parse_direction(const std::string& text, int d) {
    if (text == "x-plus" || text == "x-minus") {
        if (d != 2) throw validation_error("named x-basis directions need a 2-dimensional site");
        const double r = 1.0 / std::sqrt(2.0);
        return text == "x-plus" ? std::vector<cx>{cx(r, 0), cx(r, 0)} : std::vector<cx>{cx(r, 0), cx(-r, 0)};
    }
    std::vector<cx> dir;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (part.empty()) throw validation_error("empty component in --direction");
        dir.push_back(ket::evaluate_scalar(part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return dir;
}

std::vector<std::pair<int, int>> parse_chain(const std::string& text) {
    std::vector<std::pair<int, int>> steps;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string part = text.substr(start, comma - start);
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos) {
            throw validation_error("--chain expects site:outcome pairs, e.g. \"1:0,2:1\"");
        }
        try {
            steps.emplace_back(std::stoi(part.substr(0, colon)), std::stoi(part.substr(colon + 1)));
        } catch (const std::exception&) {
            throw validation_error("--chain expects integer site:outcome pairs");
        }
        start = comma + 1;
    }
    if (steps.empty()) throw validation_error("--chain is empty");
    return steps;
}

int cmd_measure(const MeasureOptions& opt) {
    PureState state = normalize(load_source(opt.common));

    struct Step {
        int site;
        std::string what;
        double probability;
    };
    std::vector<Step> steps;
    PureState raw = state; // raw collapsed state of the last step

    auto apply_step = [&](int site, int outcome, const std::string& direction) {
        if (state.sites() < 2) {
            throw validation_error("cannot measure: only one site remains");
        }
        std::string what;
        if (direction.empty()) {
            raw = collapse(state, site, outcome);
            what = "outcome " + std::to_string(outcome);
        } else {
            raw = project_site(state, site, parse_direction(direction, state.dims[static_cast<std::size_t>(site - 1)]));
            what = "direction " + direction;
        }
        const double probability = squared_norm(raw);
        if (probability < 1e-12) {
            throw unrealizable_branch_error("branch has probability " + fmt12(probability) +
                                            " (site " + std::to_string(site) + ", " + what + ")");
        }
        steps.push_back({site, what, probability});
        state = normalize(raw);
    };

    if (!opt.chain.empty()) {
        if (opt.site != 0 || opt.outcome != -1 || !opt.direction.empty()) {
            throw validation_error("--chain cannot be combined with --site/--outcome/--direction");
        }
        for (const auto& [site, outcome] : parse_chain(opt.chain)) apply_step(site, outcome, "");
    } else {
        if (opt.site == 0) throw validation_error("measure needs --site (or --chain)");
        if ((opt.outcome < 0) == opt.direction.empty()) {
            throw validation_error("measure needs exactly one of --outcome or --direction");
        }
        apply_step(opt.site, opt.outcome, opt.direction);
    }

    // profile of the renormalized remainder, when it still has structure
    std::optional<AnalysisReport> profile;
    std::optional<SeparabilityReport> sep;
    if (state.sites() >= 2) {
        profile = full_profile(state, opt.common.tolerance);
        sep = classify(state, opt.common.tolerance);
    }

    if (opt.common.format == "json") {
        ordered_json j;
        ordered_json jsteps = ordered_json::array();
        for (const Step& s : steps) {
            jsteps.push_back({{"site", s.site}, {"measurement", s.what}, {"probability", s.probability}});
        }
        j["steps"] = std::move(jsteps);
        j["collapsed_raw"] = ordered_json::parse(state_json(raw));
        j["remainder"] = ordered_json::parse(state_json(state));
        if (profile) {
            ordered_json doc = ordered_json::parse(
                report_document_json(state, *profile, *sep));
            j["analysis"] = std::move(doc);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::cout << "step " << (i + 1) << ": site " << steps[i].site << ", " << steps[i].what
                  << ", probability " << fmt12(steps[i].probability) << "\n";
    }
    std::cout << "collapsed (raw): " << format_state(raw) << "\n";
    std::cout << "remainder (normalized): " << format_state(state) << "\n";
    if (profile) {
        print_profile_text(*profile, *sep, opt.common.mode == "raw");
    } else {
        std::cout << "single-site remainder: no entanglement structure left\n";
    }
    return 0;
}

int cmd_tables(int which, const CommonOptions& opt) {
    if (which != 1 && which != 2) {
        throw validation_error("no classification table " + std::to_string(which) + "; pick 1 or 2");
    }
    const TableResult result = check_classification_table(which, opt.tolerance);

    if (opt.format == "json") {
        ordered_json j;
        j["table"] = result.table;
        j["pass"] = result.pass;
        ordered_json rows = ordered_json::array();
        for (const RowResult& row : result.rows) {
            ordered_json jr;
            jr["label"] = row.label;
            jr["pass"] = row.pass;
            ordered_json cells = ordered_json::array();
            for (const CellResult& cell : row.cells) {
                ordered_json jc;
                jc["name"] = cell.name;
                jc["pass"] = cell.pass;
                jc["computed"] = cell.computed;
                jc["expected"] = cell.expected;
                if (cell.flagged) jc["note"] = cell.note;
                cells.push_back(std::move(jc));
            }
            jr["cells"] = std::move(cells);
            rows.push_back(std::move(jr));
        }
        j["rows"] = std::move(rows);
        std::cout << j.dump(2) << "\n";
        return result.pass ? 0 : 1;
    }

    int passed = 0;
    for (const RowResult& row : result.rows) {
        std::cout << (row.pass ? "ok   " : "FAIL ") << row.label << "\n";
        for (const CellResult& cell : row.cells) {
            std::cout << "     " << cell.name << ": " << (cell.pass ? "match" : "MISMATCH") << "  computed "
                      << cell.computed;
            if (!cell.pass) std::cout << "  expected " << cell.expected;
            if (cell.flagged) std::cout << "  [" << cell.note << "]";
            std::cout << "\n";
        }
        if (row.pass) ++passed;
    }
    std::cout << passed << "/" << result.rows.size() << " rows match\n";
    return result.pass ? 0 : 1;
}

int cmd_count(int qubits, const std::vector<int>& dims, int m, const std::string& format) {
    std::vector<int> d = dims;
    if (qubits > 0 && !d.empty()) throw validation_error("give either --qubits or --dims, not both");
    if (qubits > 0) d.assign(static_cast<std::size_t>(qubits), 2);
    if (d.empty()) throw validation_error("count needs --qubits or --dims");
    if (d.size() < 2) throw validation_error("count needs at least 2 sites");
    for (int di : d) {
        if (di < 2) throw validation_error("every local dimension must be >= 2");
    }

    const int n = static_cast<int>(d.size());
    std::vector<std::pair<int, long long>> counts; // (m, l_m) for m = N..2
    if (m > 0) {
        counts.emplace_back(m, minor_count(d, m)); // range-checked inside
    } else {
        for (int level = n; level >= 2; --level) counts.emplace_back(level, minor_count(d, level));
    }

    // distinct minors: one branch's worth per level
    long long distinct = 0;
    for (const auto& [level, lm] : counts) {
        long long branches = 1;
        for (std::size_t j = static_cast<std::size_t>(level); j < d.size(); ++j) branches *= d[j];
        distinct += lm / branches;
    }

    const bool all_qubits = qubits > 0 || std::all_of(d.begin(), d.end(), [](int x) { return x == 2; });

    if (format == "json") {
        ordered_json j;
        j["dims"] = d;
        ordered_json jl = ordered_json::array();
        for (const auto& [level, lm] : counts) jl.push_back({{"m", level}, {"l_m", lm}});
        j["l"] = std::move(jl);
        if (m <= 0) {
            j["total_distinct"] = distinct;
            if (all_qubits) j["gaussian_binomial"] = total_distinct_minors(n);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    for (const auto& [level, lm] : counts) {
        std::cout << "l_" << level << " = " << lm << "\n";
    }
    if (m <= 0) {
        std::cout << "total distinct minors = " << distinct << "\n";
        if (all_qubits) {
            std::cout << "gaussian binomial [" << n << ",2]_(q=2) = " << total_distinct_minors(n) << "\n";
        }
    }
    return 0;
}

int cmd_random(const std::vector<int>& dims, std::uint64_t seed, int count, const std::string& out) {
    if (dims.empty()) throw validation_error("random needs --dims");
    if (count < 1) throw validation_error("--count must be >= 1");
    if (out.empty() && count != 1) throw validation_error("--count > 1 needs --out");

    for (int k = 0; k < count; ++k) {
        const PureState s = random_state(dims, seed + static_cast<std::uint64_t>(k));
        if (out.empty()) {
            std::cout << state_json(s) << "\n";
            continue;
        }
        std::string path = out;
        if (count > 1) {
            const std::size_t dot = path.rfind('.');
            const std::string suffix = "." + std::to_string(k);
            if (dot == std::string::npos || dot == 0) {
                path += suffix;
            } else {
                path.insert(dot, suffix);
            }
        }
        save_state_file(s, path);
        std::cout << "wrote " << path << " (seed " << seed + static_cast<std::uint64_t>(k) << ")\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"determinantal entanglement indicators for multipartite pure states"};
    app.require_subcommand(1);

    CommonOptions analyze_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "full determinant profile and separability report");
    add_state_source(analyze, analyze_opt);
    add_format(analyze, analyze_opt);
    add_mode(analyze, analyze_opt);
    add_tolerance(analyze, analyze_opt);

    CommonOptions factor_opt;
    CLI::App* factor = app.add_subcommand("factor", "recursive last-site factorization");
    add_state_source(factor, factor_opt);
    add_format(factor, factor_opt);
    add_tolerance(factor, factor_opt);

    MeasureOptions measure_opt;
    CLI::App* measure = app.add_subcommand("measure", "collapse or project one site and profile the rest");
    add_state_source(measure, measure_opt.common);
    measure->add_option("--site", measure_opt.site, "1-based site to measure");
    measure->add_option("--outcome", measure_opt.outcome, "computational-basis outcome");
    measure->add_option("--direction", measure_opt.direction,
                        "projection direction: comma-separated amplitudes, or x-plus/x-minus");
    measure->add_option("--chain", measure_opt.chain, "sequence of site:outcome steps, e.g. \"1:0,2:1\"");
    add_format(measure, measure_opt.common);
    add_mode(measure, measure_opt.common);
    add_tolerance(measure, measure_opt.common);

    int table_which = 0;
    CommonOptions tables_opt;
    CLI::App* tables = app.add_subcommand("tables", "recompute the bundled classification tables");
    tables->add_option("which", table_which, "table number: 1 (tripartite) or 2 (4-qubit)")->required();
    add_format(tables, tables_opt);
    add_tolerance(tables, tables_opt);

    int count_qubits = 0;
    std::vector<int> count_dims;
    int count_m = 0;
    std::string count_format = "text";
    CLI::App* count = app.add_subcommand("count", "determinant counting laws");
    count->add_option("--qubits", count_qubits, "number of qubits");
    count->add_option("--dims", count_dims, "local dimensions, e.g. 3,3,3")->delimiter(',');
    count->add_option("--m", count_m, "only this level");
    count->add_option("--format", count_format)->check(CLI::IsMember({"text", "json"}));

    std::vector<int> random_dims;
    std::uint64_t random_seed = 0;
    int random_count = 1;
    std::string random_out;
    CLI::App* random = app.add_subcommand("random", "write seeded Haar-random states");
    random->add_option("--dims", random_dims, "local dimensions")->delimiter(',')->required();
    random->add_option("--seed", random_seed, "RNG seed (state k uses seed+k)");
    random->add_option("--count", random_count, "how many states");
    random->add_option("--out", random_out, "output path (indexed when count > 1; stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_opt, false);
        if (*factor) return cmd_analyze(factor_opt, true);
        if (*measure) return cmd_measure(measure_opt);
        if (*tables) return cmd_tables(table_which, tables_opt);
        if (*count) return cmd_count(count_qubits, count_dims, count_m, count_format);
        if (*random) return cmd_random(random_dims, random_seed, random_count, random_out);
    } catch (const unrealizable_branch_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnrealizable;
    } catch (const degenerate_state_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
