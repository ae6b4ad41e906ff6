// cgcodes command line: search, enumerate, evaluate, table and estimate
// with JSON (default) or CSV output.
//
// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgcodes/cgcodes.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

int g_precision = 6;

double rounded(double v) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    double mag = std::pow(10.0, g_precision - 1 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
    return std::round(v * mag) / mag;
}

std::vector<double> rounded(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(rounded(x));
    return out;
}

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(g_precision);
    os << rounded(v);
    return os.str();
}

ordered_json basis_json(const cgcodes::IntMatrix& T) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < T.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < T.cols(); ++j)
            row.push_back(static_cast<std::int64_t>(T(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::string group_name(const cgcodes::GroupPresentation& p) {
    if (p.invariant_factors.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < p.invariant_factors.size(); ++i) {
        if (i) s += "+";
        s += "Z" + std::to_string(p.invariant_factors[i]);
    }
    return s;
}

ordered_json presentation_json(const cgcodes::GroupPresentation& p) {
    ordered_json j;
    j["group"] = group_name(p);
    j["invariant_factors"] = p.invariant_factors;
    j["generators"] = p.generators;
    return j;
}

ordered_json record_json(const cgcodes::CodeRecord& r) {
    ordered_json j;
    j["points"] = r.order;
    j["dimension"] = r.dimension;
    j["min_distance"] = rounded(r.min_distance);
    j["deltas"] = rounded(r.initial_vector.deltas);
    j["group"] = group_name(r.presentation);
    j["invariant_factors"] = r.presentation.invariant_factors;
    j["generators"] = r.presentation.generators;
    j["basis"] = basis_json(r.basis);
    return j;
}

ordered_json envelope(const std::string& command, ordered_json params, ordered_json result,
                      ordered_json counts, double ms) {
    ordered_json j;
    j["schema_version"] = "1.0";
    j["command"] = command;
    j["params"] = std::move(params);
    j["result"] = std::move(result);
    j["counts"] = std::move(counts);
    j["timing_ms"] = std::round(ms * 1000.0) / 1000.0;
    return j;
}

std::string join_reals(const std::vector<double>& v, char sep = ';') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += format_real(v[i]);
    }
    return s;
}

std::string join_ints(const std::vector<std::int64_t>& v, char sep = ';') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

constexpr const char* kCsvHeader = "M,n,d_min,deltas,factors,generators";

std::string csv_row(std::int64_t M, std::size_t n, double d, const std::vector<double>& deltas,
                    const cgcodes::GroupPresentation& pres) {
    std::string gens;
    for (std::size_t i = 0; i < pres.generators.size(); ++i) {
        if (i) gens += '|';
        for (std::size_t j = 0; j < pres.generators[i].size(); ++j) {
            if (j) gens += ' ';
            gens += std::to_string(pres.generators[i][j]);
        }
    }
    std::ostringstream os;
    os << M << ',' << n << ',' << format_real(d) << ',' << join_reals(deltas) << ','
       << join_ints(pres.invariant_factors) << ',' << gens;
    return os.str();
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoll(tok));
    return out;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

std::vector<std::vector<std::int64_t>> parse_generators(const std::string& s) {
    std::vector<std::vector<std::int64_t>> out;
    std::stringstream ss(s);
    std::string vec;
    while (std::getline(ss, vec, ';'))
        if (!vec.empty()) out.push_back(parse_int_list(vec));
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

int cmd_search(std::int64_t M, std::size_t n, const std::string& format, bool list_candidates,
               bool no_dedupe, std::size_t threads) {
    if (M < 2 || n < 2) {
        std::cerr << "error: --points >= 2 and --dim >= 2 required\n";
        return 2;
    }
    if (n % 2 == 1 && M % 2 == 1) {
        std::cerr << "error: odd dimension requires even order\n";
        return 2;
    }
    Timer timer;
    cgcodes::SearchParams params{M, n, !no_dedupe, threads, list_candidates};
    ordered_json params_json{{"points", M}, {"dim", n}, {"dedupe", !no_dedupe}, {"threads", threads}};

    if (n % 2 == 0) {
        cgcodes::SearchResult res = cgcodes::search_optimum(params);
        if (format == "csv") {
            std::cout << kCsvHeader << "\n"
                      << csv_row(M, n, res.best.min_distance, res.best.initial_vector.deltas,
                                 res.best.presentation)
                      << "\n";
            return 0;
        }
        ordered_json result = record_json(res.best);
        if (list_candidates) {
            ordered_json all = ordered_json::array();
            for (const auto& t : res.tested) {
                ordered_json item;
                item["basis"] = basis_json(t.basis);
                item["min_distance"] = rounded(t.min_distance);
                all.push_back(std::move(item));
            }
            result["candidates"] = std::move(all);
        }
        ordered_json counts{{"raw", res.best.raw_count}, {"tested", res.best.tested_count}};
        std::cout << envelope("search", params_json, result, counts, timer.ms()).dump(2) << "\n";
        return 0;
    }

    cgcodes::OddDimCode odd = cgcodes::search_optimum_odd(params);
    if (format == "csv") {
        std::vector<double> ambient;
        for (double d : odd.base.initial_vector.deltas)
            ambient.push_back(std::cos(odd.theta) * d);
        ambient.push_back(std::sin(odd.theta));
        std::cout << kCsvHeader << "\n"
                  << csv_row(M, n, odd.min_distance, ambient, odd.base.presentation) << "\n";
        return 0;
    }
    ordered_json result;
    result["points"] = M;
    result["dimension"] = n;
    result["min_distance"] = rounded(odd.min_distance);
    result["theta"] = rounded(odd.theta);
    result["initial_vector"] = rounded(odd.initial_vector);
    result["base"] = record_json(odd.base);
    ordered_json counts{{"raw", odd.base.raw_count}, {"tested", odd.base.tested_count}};
    std::cout << envelope("search", params_json, result, counts, timer.ms()).dump(2) << "\n";
    return 0;
}

int cmd_enumerate(std::int64_t M, std::size_t n, bool count_only, bool no_dedupe) {
    if (M < 2 || n < 2) {
        std::cerr << "error: --points >= 2 and --dim >= 2 required\n";
        return 2;
    }
    if (n % 2 == 1) {
        std::cerr << "error: enumerate requires an even dimension\n";
        return 2;
    }
    Timer timer;
    const std::size_t k = n / 2;
    std::size_t raw = 0;
    std::vector<cgcodes::CandidateLattice> all;
    std::map<std::string, std::size_t> seen;
    for (const auto& prof : cgcodes::enumerate_diagonals(M, k)) {
        cgcodes::EnumerationResult er = cgcodes::enumerate_candidates(prof, !no_dedupe);
        raw += er.raw_count;
        for (auto& c : er.candidates) {
            if (!no_dedupe) {
                auto it = seen.find(c.signature);
                if (it != seen.end()) continue;
                seen.emplace(c.signature, all.size());
            }
            all.push_back(std::move(c));
        }
    }
    ordered_json params_json{{"points", M}, {"dim", n}, {"dedupe", !no_dedupe}};
    ordered_json result;
    if (count_only) {
        result = ordered_json{{"raw", raw}, {"deduped", no_dedupe ? raw : all.size()}};
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& c : all) arr.push_back(basis_json(c.basis));
        result["candidates"] = std::move(arr);
    }
    ordered_json counts{{"raw", raw}, {"tested", no_dedupe ? raw : all.size()}};
    std::cout << envelope("enumerate", params_json, result, counts, timer.ms()).dump(2) << "\n";
    return 0;
}

int cmd_evaluate(std::int64_t M, const std::string& generators, const std::string& initial_vector,
                 const std::string& format) {
    if (M < 2) {
        std::cerr << "error: --points >= 2 required\n";
        return 2;
    }
    Timer timer;
    auto gens = parse_generators(generators);
    if (gens.empty()) {
        std::cerr << "error: --generators is empty\n";
        return 2;
    }
    const std::size_t k = gens[0].size();
    for (const auto& g : gens)
        if (g.size() != k || k == 0) {
            std::cerr << "error: generator vectors must share a positive length\n";
            return 2;
        }

    // closure of the generators in Z_M^k
    std::set<std::vector<std::int64_t>> closure;
    std::vector<std::vector<std::int64_t>> frontier{std::vector<std::int64_t>(k, 0)};
    closure.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                std::vector<std::int64_t> ne(k);
                for (std::size_t j = 0; j < k; ++j)
                    ne[j] = ((e[j] + g[j]) % M + M) % M;
                if (closure.insert(ne).second) next.push_back(std::move(ne));
            }
        frontier = std::move(next);
    }
    if (closure.size() != static_cast<std::size_t>(M)) {
        std::cerr << "error: generators generate a group of order " << closure.size()
                  << ", expected " << M << "\n";
        return 2;
    }
    cgcodes::GroupElementTable tab;
    tab.order = M;
    tab.block_count = k;
    tab.elements.assign(closure.begin(), closure.end());

    // Hermite basis of the generated lattice for the isomorphism class
    std::vector<std::vector<cgcodes::Int>> lat;
    for (const auto& g : gens) {
        std::vector<cgcodes::Int> row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = g[j];
        lat.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<cgcodes::Int> e(k);
        e[i] = M;
        lat.push_back(std::move(e));
    }
    cgcodes::IntMatrix T = cgcodes::hermite_basis(std::move(lat), k);
    cgcodes::GroupPresentation pres = cgcodes::isomorphism_class(T, M);

    cgcodes::InitialVector x0;
    double d = 0.0;
    if (!initial_vector.empty()) {
        x0.deltas = parse_real_list(initial_vector);
        if (x0.deltas.size() != k) {
            std::cerr << "error: --initial-vector needs " << k << " values\n";
            return 2;
        }
        double norm = std::sqrt(x0.norm_sq());
        if (norm <= 0.0) {
            std::cerr << "error: --initial-vector must be nonzero\n";
            return 2;
        }
        for (double& v : x0.deltas) v /= norm;  // project onto the sphere
        d = cgcodes::min_distance(tab, M, x0);
    } else {
        auto [opt, dist] = cgcodes::optimal_initial_vector(tab, M);
        x0 = std::move(opt);
        d = dist;
    }

    ordered_json params_json{{"points", M}, {"generators", generators}};
    if (!initial_vector.empty()) params_json["initial_vector"] = initial_vector;
    if (format == "csv") {
        std::cout << kCsvHeader << "\n" << csv_row(M, 2 * k, d, x0.deltas, pres) << "\n";
        return 0;
    }
    ordered_json result;
    result["points"] = M;
    result["dimension"] = 2 * k;
    result["min_distance"] = rounded(d);
    result["deltas"] = rounded(x0.deltas);
    result["group"] = group_name(pres);
    result["invariant_factors"] = pres.invariant_factors;
    result["generators"] = pres.generators;
    std::cout << envelope("evaluate", params_json, result, nullptr, timer.ms()).dump(2) << "\n";
    return 0;
}

int cmd_table(const std::vector<std::int64_t>& points, std::size_t n, const std::string& format,
              std::size_t threads) {
    if (n < 2) {
        std::cerr << "error: --dim >= 2 required\n";
        return 2;
    }
    for (auto M : points)
        if (M < 2 || (n % 2 == 1 && M % 2 == 1)) {
            std::cerr << "error: invalid order " << M << " for dimension " << n << "\n";
            return 2;
        }
    Timer timer;
    ordered_json rows = ordered_json::array();
    std::vector<std::string> csv_rows;
    for (auto M : points) {
        cgcodes::SearchParams params{M, n, true, threads, false};
        if (n % 2 == 0) {
            cgcodes::SearchResult res = cgcodes::search_optimum(params);
            ordered_json row;
            row["points"] = M;
            row["min_distance"] = rounded(res.best.min_distance);
            row["deltas"] = rounded(res.best.initial_vector.deltas);
            row["group"] = group_name(res.best.presentation);
            row["invariant_factors"] = res.best.presentation.invariant_factors;
            row["generators"] = res.best.presentation.generators;
            row["bound"] = nullptr;  // upper-bound column intentionally not computed
            rows.push_back(std::move(row));
            csv_rows.push_back(csv_row(M, n, res.best.min_distance,
                                       res.best.initial_vector.deltas, res.best.presentation));
        } else {
            cgcodes::OddDimCode odd = cgcodes::search_optimum_odd(params);
            ordered_json row;
            row["points"] = M;
            row["min_distance"] = rounded(odd.min_distance);
            row["theta"] = rounded(odd.theta);
            row["initial_vector"] = rounded(odd.initial_vector);
            row["group"] = group_name(odd.base.presentation);
            row["invariant_factors"] = odd.base.presentation.invariant_factors;
            row["generators"] = odd.base.presentation.generators;
            row["bound"] = nullptr;
            rows.push_back(std::move(row));
            std::vector<double> ambient;
            for (double dd : odd.base.initial_vector.deltas)
                ambient.push_back(std::cos(odd.theta) * dd);
            ambient.push_back(std::sin(odd.theta));
            csv_rows.push_back(csv_row(M, n, odd.min_distance, ambient, odd.base.presentation));
        }
    }
    if (format == "csv") {
        std::cout << kCsvHeader << "\n";
        for (const auto& r : csv_rows) std::cout << r << "\n";
        return 0;
    }
    ordered_json params_json{{"points", points}, {"dim", n}};
    ordered_json result{{"rows", std::move(rows)}};
    std::cout << envelope("table", params_json, result, nullptr, timer.ms()).dump(2) << "\n";
    return 0;
}

int cmd_estimate(const std::vector<std::int64_t>& points, std::size_t n, const std::string& format) {
    if (n < 2 || n % 2 != 0) {
        std::cerr << "error: --dim must be even and >= 2\n";
        return 2;
    }
    for (auto M : points)
        if (M < 2) {
            std::cerr << "error: --points entries must be >= 2\n";
            return 2;
        }
    Timer timer;
    ordered_json rows = ordered_json::array();
    std::vector<std::string> csv_rows;
    for (auto M : points) {
        cgcodes::CountEstimates est = cgcodes::count_estimates(M, n);
        ordered_json row;
        row["points"] = M;
        row["binomial"] = est.binomial;
        row["adam_estimate"] = est.adam_estimate;
        row["tested_cyclic"] = est.tested_cyclic;
        row["tested_commutative"] = est.tested_commutative;
        row["raw"] = est.raw;
        rows.push_back(std::move(row));
        std::ostringstream os;
        os << M << ',' << est.binomial << ',' << est.adam_estimate << ',' << est.tested_cyclic
           << ',' << est.tested_commutative;
        csv_rows.push_back(os.str());
    }
    if (format == "csv") {
        std::cout << "M,binomial,adam_estimate,tested_cyclic,tested_commutative\n";
        for (const auto& r : csv_rows) std::cout << r << "\n";
        return 0;
    }
    ordered_json params_json{{"points", points}, {"dim", n}};
    ordered_json result{{"rows", std::move(rows)}};
    std::cout << envelope("estimate", params_json, result, nullptr, timer.ms()).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimum commutative group codes on the sphere"};
    app.require_subcommand(1);

    std::int64_t points = 0;
    std::size_t dim = 0;
    std::string format = "json";
    std::string points_list;
    std::string generators;
    std::string initial_vector;
    bool list_candidates = false;
    bool no_dedupe = false;
    bool count_only = false;
    std::size_t threads = 1;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--precision", g_precision, "significant digits for printed reals")
            ->check(CLI::Range(1, 17));
    };

    CLI::App* search = app.add_subcommand("search", "find the optimum code for (M, n)");
    search->add_option("--points", points, "number of codewords M")->required();
    search->add_option("--dim", dim, "ambient dimension n")->required();
    search->add_flag("--list-candidates", list_candidates, "emit every tested candidate");
    search->add_flag("--no-dedupe", no_dedupe, "skip isometry dedup");
    search->add_option("--threads", threads, "parallel candidate evaluation width");
    add_format(search);

    CLI::App* enumerate = app.add_subcommand("enumerate", "list candidate lattices for (M, n)");
    enumerate->add_option("--points", points, "number of codewords M")->required();
    enumerate->add_option("--dim", dim, "ambient dimension n")->required();
    enumerate->add_flag("--count-only", count_only, "emit counts only");
    enumerate->add_flag("--no-dedupe", no_dedupe, "skip isometry dedup");
    add_format(enumerate);

    CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate a given group, optionally at a given vector");
    evaluate->add_option("--points", points, "number of codewords M")->required();
    evaluate->add_option("--generators", generators, "semicolon-separated exponent vectors, e.g. \"1,11\"")
        ->required();
    evaluate->add_option("--initial-vector", initial_vector, "comma-separated deltas (projected to the sphere)");
    add_format(evaluate);

    CLI::App* table = app.add_subcommand("table", "optimum codes for a list of orders");
    table->add_option("--points", points_list, "comma-separated list of M values")->required();
    table->add_option("--dim", dim, "ambient dimension n")->required();
    table->add_option("--threads", threads, "parallel candidate evaluation width");
    add_format(table);

    CLI::App* estimate = app.add_subcommand("estimate", "candidate-count estimates for a list of orders");
    estimate->add_option("--points", points_list, "comma-separated list of M values")->required();
    estimate->add_option("--dim", dim, "ambient dimension n")->required();
    add_format(estimate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (search->parsed())
            return cmd_search(points, dim, format, list_candidates, no_dedupe, std::max<std::size_t>(threads, 1));
        if (enumerate->parsed()) return cmd_enumerate(points, dim, count_only, no_dedupe);
        if (evaluate->parsed()) return cmd_evaluate(points, generators, initial_vector, format);
        if (table->parsed())
            return cmd_table(parse_int_list(points_list), dim, format, std::max<std::size_t>(threads, 1));
        if (estimate->parsed()) return cmd_estimate(parse_int_list(points_list), dim, format);
    } catch (const cgcodes::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const cgcodes::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
