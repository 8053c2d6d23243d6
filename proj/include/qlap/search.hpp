#ifndef QLAP_SEARCH_HPP
#define QLAP_SEARCH_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlap/exact.hpp"
#include "qlap/graph.hpp"
#include "qlap/graph_analysis.hpp"
#include "qlap/spectra.hpp"
#include "qlap/theorems.hpp"

namespace qlap {

// ---------------------------------------------------------------------------
// Suites and configuration.
// ---------------------------------------------------------------------------

enum class Suite { th1, th2, th3, th4, weyl, das, k1t };

inline constexpr std::array<Suite, 7> kAllSuites{Suite::th1, Suite::th2, Suite::th3, Suite::th4,
                                                 Suite::weyl, Suite::das, Suite::k1t};

inline std::string_view suite_name(Suite s) {
    switch (s) {
        case Suite::th1: return "th1";
        case Suite::th2: return "th2";
        case Suite::th3: return "th3";
        case Suite::th4: return "th4";
        case Suite::weyl: return "weyl";
        case Suite::das: return "das";
        case Suite::k1t: return "k1t";
    }
    return "?";
}

inline std::optional<Suite> parse_suite(std::string_view name) {
    for (Suite s : kAllSuites)
        if (suite_name(s) == name) return s;
    return std::nullopt;
}

/// Deduplicated suites in canonical declaration order.
inline std::vector<Suite> canonical_suites(const std::vector<Suite>& suites) {
    std::vector<Suite> out;
    for (Suite s : kAllSuites)
        if (std::find(suites.begin(), suites.end(), s) != suites.end()) out.push_back(s);
    return out;
}

struct SearchConfig {
    enum class Source { labeled, file };

    int n_min = 2;
    int n_max = 6;
    Source source = Source::labeled;
    std::string input_path;  // file source only; echoed in reports
    bool dedupe = false;
    std::vector<Suite> suites;
    int jobs = 1;                // <= 0 picks hardware concurrency
    bool include_timing = true;  // false pins wall_ms to 0 for byte-stable output

    bool operator==(const SearchConfig&) const = default;
};

inline constexpr int kMaxEnumerationOrder = 8;

// ---------------------------------------------------------------------------
// Graph sources.
// ---------------------------------------------------------------------------

/// All 2^(n(n-1)/2) labeled graphs of one order, in edge-bitmask order (bit k
/// of the mask is the k-th pair in the shared column-major pair order).
class LabeledEnumeration {
public:
    explicit LabeledEnumeration(int n) : n_(n) {
        if (n < 1 || n > kMaxEnumerationOrder)
            throw std::invalid_argument("enumerate_labeled: order must be in 1..8");
        end_ = std::uint64_t{1} << pair_count(n);
    }

    std::optional<Graph> next() {
        if (mask_ == end_) return std::nullopt;
        return graph_from_edge_mask(n_, mask_++);
    }

private:
    int n_;
    std::uint64_t mask_ = 0;
    std::uint64_t end_;
};

inline LabeledEnumeration enumerate_labeled(int n) { return LabeledEnumeration(n); }

class Graph6StreamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Line-oriented graph6 reader. Lines starting with ">>" are format headers
/// and are skipped, as are blank lines. Parse failures either abort with the
/// line number (fail_fast) or are counted and skipped.
class Graph6StreamReader {
public:
    explicit Graph6StreamReader(std::istream& in, bool fail_fast = true)
        : in_(in), fail_fast_(fail_fast) {}

    std::optional<Graph> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line.rfind(">>", 0) == 0) continue;
            try {
                return parse_graph6(line);
            } catch (const Graph6Error& e) {
                if (fail_fast_)
                    throw Graph6StreamError("line " + std::to_string(line_number_) + ": " + e.what());
                ++skipped_;
            }
        }
        return std::nullopt;
    }

    int line_number() const { return line_number_; }
    int skipped() const { return skipped_; }

private:
    std::istream& in_;
    bool fail_fast_;
    int line_number_ = 0;
    int skipped_ = 0;
};

inline Graph6StreamReader read_graph6_stream(std::istream& in, bool fail_fast = true) {
    return Graph6StreamReader(in, fail_fast);
}

// ---------------------------------------------------------------------------
// Report structures.
// ---------------------------------------------------------------------------

struct SuiteCounters {
    std::uint64_t checked = 0;
    std::uint64_t holds = 0;
    std::uint64_t exceptions = 0;
    std::uint64_t violations = 0;

    SuiteCounters& operator+=(const SuiteCounters& o) {
        checked += o.checked;
        holds += o.holds;
        exceptions += o.exceptions;
        violations += o.violations;
        return *this;
    }
    bool operator==(const SuiteCounters&) const = default;
};

struct FindingRecord {
    std::string graph6;
    Suite suite = Suite::th1;
    std::vector<std::pair<std::string, std::string>> detail;  // ordered key/value, decimal strings

    bool operator==(const FindingRecord&) const = default;
};

struct CorpusReport {
    SearchConfig config;
    std::map<Suite, std::map<int, SuiteCounters>> by_n;  // per graph order, for the csv view
    std::vector<FindingRecord> counterexamples;          // sorted by (graph6, suite)
    std::vector<FindingRecord> paper_exceptions;         // sorted by (graph6, suite)
    std::uint64_t wall_ms = 0;

    SuiteCounters totals(Suite s) const {
        SuiteCounters acc;
        const auto it = by_n.find(s);
        if (it != by_n.end())
            for (const auto& [n, c] : it->second) acc += c;
        return acc;
    }

    std::uint64_t total_violations() const {
        std::uint64_t acc = 0;
        for (Suite s : canonical_suites(config.suites)) acc += totals(s).violations;
        return acc;
    }
};

/// Equality on the serialized content: corpus-identity config fields (jobs
/// and timing mode are execution details and never serialize), per-suite
/// totals, records, and wall time. The per-order split only feeds the csv
/// view and is excluded.
inline bool operator==(const CorpusReport& a, const CorpusReport& b) {
    const SearchConfig& x = a.config;
    const SearchConfig& y = b.config;
    if (x.n_min != y.n_min || x.n_max != y.n_max || x.source != y.source ||
        x.input_path != y.input_path || x.dedupe != y.dedupe ||
        canonical_suites(x.suites) != canonical_suites(y.suites))
        return false;
    if (a.wall_ms != b.wall_ms) return false;
    if (a.counterexamples != b.counterexamples || a.paper_exceptions != b.paper_exceptions) return false;
    for (Suite s : kAllSuites)
        if (!(a.totals(s) == b.totals(s))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Per-graph evaluation. A scratch object memoizes the expensive shared pieces
// (complement, profiles, Q, characteristic polynomial, root counter) so each
// enabled suite reuses them.
// ---------------------------------------------------------------------------

namespace detail {

class GraphScratch {
public:
    explicit GraphScratch(const Graph& g) : g_(g) {}

    const Graph& graph() const { return g_; }
    int order() const { return g_.order(); }

    const Graph& comp() {
        if (!comp_) comp_ = complement(g_);
        return *comp_;
    }
    const BipartiteProfile& profile() {
        if (!profile_) profile_ = bipartite_profile(g_);
        return *profile_;
    }
    const BipartiteProfile& comp_profile() {
        if (!comp_profile_) comp_profile_ = bipartite_profile(comp());
        return *comp_profile_;
    }
    const IntMatrix& q() {
        if (!q_) q_ = q_matrix(g_);
        return *q_;
    }
    const IntPolynomial& poly() {
        if (!poly_) poly_ = char_poly(q());
        return *poly_;
    }
    const RealRootCounter& counter() {
        if (!counter_) counter_.emplace(poly());
        return *counter_;
    }
    const SpectralIndexCount& sic() {
        if (!sic_) sic_ = spectral_index_count_from(q(), counter());
        return *sic_;
    }
    int structural_m2() {
        const BipartiteProfile& p = comp_profile();
        return std::max({p.balanced_count, p.bipartite_count - 1, 0});
    }

private:
    const Graph& g_;
    std::optional<Graph> comp_;
    std::optional<BipartiteProfile> profile_, comp_profile_;
    std::optional<IntMatrix> q_;
    std::optional<IntPolynomial> poly_;
    std::optional<RealRootCounter> counter_;
    std::optional<SpectralIndexCount> sic_;
};

struct Accumulator {
    std::map<Suite, std::map<int, SuiteCounters>> by_n;
    std::vector<FindingRecord> counterexamples;
    std::vector<FindingRecord> paper_exceptions;

    void merge_into(Accumulator& target) const {
        for (const auto& [suite, per_n] : by_n)
            for (const auto& [n, c] : per_n) target.by_n[suite][n] += c;
        target.counterexamples.insert(target.counterexamples.end(), counterexamples.begin(),
                                      counterexamples.end());
        target.paper_exceptions.insert(target.paper_exceptions.end(), paper_exceptions.begin(),
                                       paper_exceptions.end());
    }
};

inline void record_sort(std::vector<FindingRecord>& records) {
    std::sort(records.begin(), records.end(), [](const FindingRecord& a, const FindingRecord& b) {
        if (a.graph6 != b.graph6) return a.graph6 < b.graph6;
        return static_cast<int>(a.suite) < static_cast<int>(b.suite);
    });
}

inline std::string rat_string(const Rat& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline void evaluate_th1(GraphScratch& x, const std::string& g6, Accumulator& acc) {
    SuiteCounters& c = acc.by_n[Suite::th1][x.order()];
    if (x.order() < 2) return;
    const int structural_k = x.structural_m2();
    TheoremVerdict v = make_th1_verdict(x.sic(), structural_k);
    if (v.structural) v.certificates = certificate_vectors(x.graph(), x.comp_profile());
    ++c.checked;
    if (v.agree) {
        ++c.holds;
        return;
    }
    ++c.violations;
    acc.counterexamples.push_back(
        {g6,
         Suite::th1,
         {{"structural", v.structural ? "true" : "false"},
          {"spectral", v.spectral ? "true" : "false"},
          {"a", std::to_string(x.sic().above)},
          {"m", std::to_string(x.sic().multiplicity)},
          {"m2_structural", std::to_string(structural_k)}}});
}

inline void evaluate_th2(GraphScratch& x, const std::string& g6, Accumulator& acc) {
    SuiteCounters& c = acc.by_n[Suite::th2][x.order()];
    if (x.order() < 2) return;
    const int spectral_m2 = x.sic().m2;
    const int structural_m2 = x.structural_m2();
    ++c.checked;
    if (spectral_m2 == structural_m2) {
        ++c.holds;
        return;
    }
    ++c.violations;
    acc.counterexamples.push_back({g6,
                                   Suite::th2,
                                   {{"m2_spectral", std::to_string(spectral_m2)},
                                    {"m2_structural", std::to_string(structural_m2)},
                                    {"a", std::to_string(x.sic().above)},
                                    {"m", std::to_string(x.sic().multiplicity)}}});
}

inline void evaluate_th3(GraphScratch& x, const std::string& g6, Accumulator& acc) {
    SuiteCounters& c = acc.by_n[Suite::th3][x.order()];
    if (x.order() < 2 || is_complete(x.graph())) return;
    const Th3Outcome out = make_th3_outcome(x.graph(), x.q(), x.counter());
    ++c.checked;
    if (out.violation) {
        ++c.violations;
        std::string why = out.verdict.notes.empty() ? "" : out.verdict.notes.front();
        acc.counterexamples.push_back({g6,
                                       Suite::th3,
                                       {{"min_degree", std::to_string(out.min_degree)},
                                        {"equality", out.equality ? "true" : "false"},
                                        {"class", std::string(equality_class_name(out.eq_class))},
                                        {"why", std::move(why)}}});
        return;
    }
    if (out.exception) {
        ++c.exceptions;
        acc.paper_exceptions.push_back({g6,
                                        Suite::th3,
                                        {{"class", std::string(equality_class_name(out.eq_class))},
                                         {"min_degree", std::to_string(out.min_degree)},
                                         {"edges", std::to_string(x.graph().edge_count())}}});
        return;
    }
    ++c.holds;
}

inline void evaluate_th4(GraphScratch& x, const std::string& g6, Accumulator& acc) {
    SuiteCounters& c = acc.by_n[Suite::th4][x.order()];
    const int nullity = int_eigen_multiplicity(x.q(), Int(0));
    const int bip = x.profile().bipartite_count;
    ++c.checked;
    if (nullity == bip) {
        ++c.holds;
        return;
    }
    ++c.violations;
    acc.counterexamples.push_back({g6,
                                   Suite::th4,
                                   {{"nullity", std::to_string(nullity)},
                                    {"bipartite_components", std::to_string(bip)}}});
}

inline void evaluate_das(GraphScratch& x, const std::string& g6, Accumulator& acc) {
    SuiteCounters& c = acc.by_n[Suite::das][x.order()];
    if (x.order() < 2) return;
    const DasBounds bounds = das_bounds_from(x.graph(), x.counter());
    ++c.checked;
    if (bounds.holds_average && bounds.holds_second_max) {
        ++c.holds;
        return;
    }
    ++c.violations;
    acc.counterexamples.push_back({g6,
                                   Suite::das,
                                   {{"holds_average", bounds.holds_average ? "true" : "false"},
                                    {"holds_second_max", bounds.holds_second_max ? "true" : "false"},
                                    {"average_threshold", rat_string(bounds.average_threshold)},
                                    {"second_max_threshold", rat_string(bounds.second_max_threshold)}}});
}

inline void evaluate_weyl(GraphScratch& x, const std::string& g6, Accumulator& acc) {
    SuiteCounters& c = acc.by_n[Suite::weyl][x.order()];
    const int n = x.order();
    if (n < 2) return;

    const ExactEigenProfile pa(x.q(), x.poly());
    const ExactEigenProfile pb(q_matrix(x.comp()));
    IntMatrix sum(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum(i, j) = pa.matrix()(i, j) + pb.matrix()(i, j);
    const ExactEigenProfile pc(std::move(sum));

    ++c.checked;
    bool undecided = false;
    for (int i = 1; i <= n; ++i) {
        for (int j = n + 1 - i; j <= n; ++j) {
            const WeylVerdict v = weyl_one_side(pa, pb, pc, WeylSide::upper_bound, i, j);
            const bool missing_certificate = v.exact && v.equality && !v.certificate;
            if ((!v.holds && !v.undecided) || missing_certificate) {
                ++c.violations;
                acc.counterexamples.push_back(
                    {g6,
                     Suite::weyl,
                     {{"i", std::to_string(i)},
                      {"j", std::to_string(j)},
                      {"side", std::string(weyl_side_name(v.side))},
                      {"lhs", v.exact_lhs ? v.exact_lhs->str() : std::to_string(v.lhs)},
                      {"rhs", v.exact_rhs ? v.exact_rhs->str() : std::to_string(v.rhs)},
                      {"why", missing_certificate ? "equality without common eigenvector" : "inequality violated"}}});
                return;
            }
            if (v.undecided) undecided = true;
        }
    }

    // Constructive equality at (2, n): q_2 = n-2 forces lhs = rhs there, with
    // an exactly verified common eigenvector.
    if (x.sic().m2 >= 1) {
        const WeylVerdict v = weyl_one_side(pa, pb, pc, WeylSide::upper_bound, 2, n);
        if (!(v.exact && v.equality && v.certificate)) {
            ++c.violations;
            acc.counterexamples.push_back({g6,
                                           Suite::weyl,
                                           {{"i", "2"},
                                            {"j", std::to_string(n)},
                                            {"side", "upper"},
                                            {"why", "expected certified equality at (2, n)"}}});
            return;
        }
    }

    if (undecided)
        ++c.exceptions;  // float tie on an irrational pair; not exactly decidable here
    else
        ++c.holds;
}

inline void evaluate_k1t(GraphScratch& x, const std::string& g6, Accumulator& acc) {
    SuiteCounters& c = acc.by_n[Suite::k1t][x.order()];
    const auto parts_opt = is_complete_multipartite(x.graph());
    if (!parts_opt) return;
    const std::vector<int>& parts = *parts_opt;
    if (parts.size() < 3 || parts[0] != 1 || parts[1] < 2) return;
    for (std::size_t i = 2; i < parts.size(); ++i)
        if (parts[i] != parts[1]) return;
    const K1tSpec spec{parts[1], static_cast<int>(parts.size()) - 1};

    ++c.checked;
    std::string why;
    if (k1t_charpoly(spec) != x.poly()) {
        why = "closed-form characteristic polynomial mismatch";
    } else {
        const K1tValues values = k1t_q1_q2(spec);
        const SpectrumReport float_spec = sym_eigen(to_real(x.q()));
        if (std::abs(values.q1 - float_spec.values[0]) > 1e-9 ||
            std::abs(values.q2 - float_spec.values[1]) > 1e-9) {
            why = "closed-form eigenvalues disagree with eigensolver";
        } else {
            const int delta = degree_stats(x.graph()).min_degree;
            const bool equality = second_eigenvalue_at_least(x.counter(), Rat(delta)) &&
                                  x.counter().count_above(Rat(delta)) <= 1;
            if (equality != values.q2_is_delta) why = "q2-equals-delta flag disagrees with exact check";
        }
    }
    if (why.empty()) {
        ++c.holds;
        return;
    }
    ++c.violations;
    acc.counterexamples.push_back({g6,
                                   Suite::k1t,
                                   {{"t", std::to_string(spec.t)},
                                    {"r", std::to_string(spec.r)},
                                    {"why", std::move(why)}}});
}

inline void evaluate_suite(Suite s, GraphScratch& x, const std::string& g6, Accumulator& acc) {
    switch (s) {
        case Suite::th1: evaluate_th1(x, g6, acc); return;
        case Suite::th2: evaluate_th2(x, g6, acc); return;
        case Suite::th3: evaluate_th3(x, g6, acc); return;
        case Suite::th4: evaluate_th4(x, g6, acc); return;
        case Suite::weyl: evaluate_weyl(x, g6, acc); return;
        case Suite::das: evaluate_das(x, g6, acc); return;
        case Suite::k1t: evaluate_k1t(x, g6, acc); return;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Parallel driver. Workers pull fixed-size chunks from the (sequential)
// source under a mutex, evaluate independently, and merge additively; a final
// sort makes the report independent of scheduling.
// ---------------------------------------------------------------------------

inline CorpusReport run_verification(const SearchConfig& cfg,
                                     const std::function<std::optional<Graph>()>& source) {
    const std::vector<Suite> suites = canonical_suites(cfg.suites);
    if (suites.empty()) throw std::invalid_argument("run_verification: no suites enabled");

    const auto start = std::chrono::steady_clock::now();

    int jobs = cfg.jobs;
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;

    std::mutex source_mutex;
    std::unordered_set<std::string> seen_keys;
    bool exhausted = false;
    auto pull_chunk = [&](std::vector<Graph>& out) {
        constexpr int kChunk = 256;
        out.clear();
        std::lock_guard<std::mutex> lock(source_mutex);
        if (exhausted) return;
        while (static_cast<int>(out.size()) < kChunk) {
            std::optional<Graph> g = source();
            if (!g) {
                exhausted = true;
                return;
            }
            if (cfg.dedupe && !seen_keys.insert(canonical_key(*g)).second) continue;
            out.push_back(std::move(*g));
        }
    };

    std::mutex merge_mutex;
    detail::Accumulator total;
    std::string first_error;

    auto worker = [&]() {
        detail::Accumulator local;
        std::vector<Graph> chunk;
        std::string error;
        try {
            while (true) {
                pull_chunk(chunk);
                if (chunk.empty()) break;
                for (const Graph& g : chunk) {
                    const std::string g6 = write_graph6(g);
                    detail::GraphScratch scratch(g);
                    try {
                        for (Suite s : suites) detail::evaluate_suite(s, scratch, g6, local);
                    } catch (const std::exception& e) {
                        throw std::runtime_error("graph " + g6 + ": " + e.what());
                    }
                }
            }
        } catch (const std::exception& e) {
            error = e.what();
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        local.merge_into(total);
        if (!error.empty() && first_error.empty()) first_error = error;
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (!first_error.empty()) throw std::runtime_error("run_verification: " + first_error);

    CorpusReport report;
    report.config = cfg;
    report.config.suites = suites;
    report.by_n = std::move(total.by_n);
    report.counterexamples = std::move(total.counterexamples);
    report.paper_exceptions = std::move(total.paper_exceptions);
    detail::record_sort(report.counterexamples);
    detail::record_sort(report.paper_exceptions);

    // Zero rows for every (suite, order) pair in range keep the csv shape
    // independent of which orders happened to produce checks.
    if (cfg.source == SearchConfig::Source::labeled)
        for (Suite s : suites)
            for (int n = cfg.n_min; n <= cfg.n_max; ++n) report.by_n[s][n];

    if (cfg.include_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        report.wall_ms =
            static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
    }
    return report;
}

inline CorpusReport run_verification(const SearchConfig& cfg) {
    if (cfg.source == SearchConfig::Source::file)
        throw std::invalid_argument("run_verification: file sources need an explicit stream");
    if (cfg.n_min < 1 || cfg.n_max > kMaxEnumerationOrder || cfg.n_min > cfg.n_max)
        throw std::invalid_argument("run_verification: order range must satisfy 1 <= n_min <= n_max <= 8");

    int n = cfg.n_min;
    std::optional<LabeledEnumeration> current{LabeledEnumeration(n)};
    auto source = [&, n]() mutable -> std::optional<Graph> {
        while (true) {
            std::optional<Graph> g = current->next();
            if (g) return g;
            if (n == cfg.n_max) return std::nullopt;
            current.emplace(++n);
        }
    };
    return run_verification(cfg, source);
}

// ---------------------------------------------------------------------------
// Report emission: json (canonical schema), csv (per order and suite), text.
// ---------------------------------------------------------------------------

enum class ReportFormat { json, csv, text };

inline std::optional<ReportFormat> parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "text") return ReportFormat::text;
    return std::nullopt;
}

inline nlohmann::ordered_json report_to_json(const CorpusReport& report) {
    nlohmann::ordered_json config;
    config["n_min"] = report.config.n_min;
    config["n_max"] = report.config.n_max;
    config["source"] = report.config.source == SearchConfig::Source::labeled ? "labeled" : "file";
    if (report.config.source == SearchConfig::Source::file) config["input"] = report.config.input_path;
    config["dedupe"] = report.config.dedupe;
    nlohmann::ordered_json suite_names = nlohmann::ordered_json::array();
    for (Suite s : canonical_suites(report.config.suites)) suite_names.push_back(std::string(suite_name(s)));
    config["suites"] = std::move(suite_names);

    nlohmann::ordered_json suites;
    for (Suite s : canonical_suites(report.config.suites)) {
        const SuiteCounters c = report.totals(s);
        nlohmann::ordered_json entry;
        entry["checked"] = c.checked;
        entry["holds"] = c.holds;
        entry["exceptions"] = c.exceptions;
        entry["violations"] = c.violations;
        suites[std::string(suite_name(s))] = std::move(entry);
    }

    auto records_json = [](const std::vector<FindingRecord>& records) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const FindingRecord& r : records) {
            nlohmann::ordered_json entry;
            entry["graph6"] = r.graph6;
            entry["suite"] = std::string(suite_name(r.suite));
            nlohmann::ordered_json detail;
            for (const auto& [key, value] : r.detail) detail[key] = value;
            entry["detail"] = std::move(detail);
            arr.push_back(std::move(entry));
        }
        return arr;
    };

    nlohmann::ordered_json out;
    out["config"] = std::move(config);
    out["suites"] = std::move(suites);
    out["counterexamples"] = records_json(report.counterexamples);
    out["paper_exceptions"] = records_json(report.paper_exceptions);
    out["wall_ms"] = report.wall_ms;
    return out;
}

/// Inverse of report_to_json up to the per-order split (totals land on a
/// single synthetic order row, which report equality ignores).
inline CorpusReport report_from_json(const nlohmann::ordered_json& j) {
    CorpusReport report;
    const auto& config = j.at("config");
    report.config.n_min = config.at("n_min").get<int>();
    report.config.n_max = config.at("n_max").get<int>();
    report.config.source = config.at("source").get<std::string>() == "file" ? SearchConfig::Source::file
                                                                            : SearchConfig::Source::labeled;
    if (config.contains("input")) report.config.input_path = config.at("input").get<std::string>();
    report.config.dedupe = config.at("dedupe").get<bool>();
    for (const auto& name : config.at("suites")) {
        const auto suite = parse_suite(name.get<std::string>());
        if (!suite) throw std::invalid_argument("report: unknown suite in config");
        report.config.suites.push_back(*suite);
    }

    for (const auto& [name, entry] : j.at("suites").items()) {
        const auto suite = parse_suite(name);
        if (!suite) throw std::invalid_argument("report: unknown suite in counters");
        SuiteCounters c;
        c.checked = entry.at("checked").get<std::uint64_t>();
        c.holds = entry.at("holds").get<std::uint64_t>();
        c.exceptions = entry.at("exceptions").get<std::uint64_t>();
        c.violations = entry.at("violations").get<std::uint64_t>();
        report.by_n[*suite][0] = c;
    }

    auto parse_records = [](const nlohmann::ordered_json& arr) {
        std::vector<FindingRecord> out;
        for (const auto& entry : arr) {
            FindingRecord r;
            r.graph6 = entry.at("graph6").get<std::string>();
            const auto suite = parse_suite(entry.at("suite").get<std::string>());
            if (!suite) throw std::invalid_argument("report: unknown suite in record");
            r.suite = *suite;
            for (const auto& [key, value] : entry.at("detail").items())
                r.detail.emplace_back(key, value.get<std::string>());
            out.push_back(std::move(r));
        }
        return out;
    };
    report.counterexamples = parse_records(j.at("counterexamples"));
    report.paper_exceptions = parse_records(j.at("paper_exceptions"));
    report.wall_ms = j.at("wall_ms").get<std::uint64_t>();
    return report;
}

inline std::string report_to_csv(const CorpusReport& report) {
    std::ostringstream out;
    out << "n,suite,checked,holds,exceptions,violations\n";
    std::vector<int> orders;
    for (const auto& [suite, per_n] : report.by_n)
        for (const auto& [n, c] : per_n)
            if (std::find(orders.begin(), orders.end(), n) == orders.end()) orders.push_back(n);
    std::sort(orders.begin(), orders.end());
    for (int n : orders)
        for (Suite s : canonical_suites(report.config.suites)) {
            const auto it = report.by_n.find(s);
            SuiteCounters c;
            if (it != report.by_n.end()) {
                const auto nit = it->second.find(n);
                if (nit != it->second.end()) c = nit->second;
            }
            out << n << ',' << suite_name(s) << ',' << c.checked << ',' << c.holds << ','
                << c.exceptions << ',' << c.violations << '\n';
        }
    return out.str();
}

inline std::string report_to_text(const CorpusReport& report) {
    std::ostringstream out;
    out << "corpus: n=" << report.config.n_min << ".." << report.config.n_max << ", source "
        << (report.config.source == SearchConfig::Source::labeled ? "labeled" : "file")
        << (report.config.dedupe ? ", deduped" : "") << "\n";
    for (Suite s : canonical_suites(report.config.suites)) {
        const SuiteCounters c = report.totals(s);
        out << "suite " << suite_name(s) << ": checked " << c.checked << ", holds " << c.holds
            << ", exceptions " << c.exceptions << ", violations " << c.violations << "\n";
    }
    constexpr std::size_t kListCap = 20;
    if (!report.paper_exceptions.empty()) {
        out << "paper exceptions (" << report.paper_exceptions.size() << "):\n";
        for (std::size_t i = 0; i < report.paper_exceptions.size() && i < kListCap; ++i)
            out << "  " << report.paper_exceptions[i].graph6 << " ["
                << suite_name(report.paper_exceptions[i].suite) << "]\n";
        if (report.paper_exceptions.size() > kListCap)
            out << "  ... " << (report.paper_exceptions.size() - kListCap) << " more\n";
    }
    if (!report.counterexamples.empty()) {
        out << "counterexamples (" << report.counterexamples.size() << "):\n";
        for (std::size_t i = 0; i < report.counterexamples.size() && i < kListCap; ++i) {
            const FindingRecord& r = report.counterexamples[i];
            out << "  " << r.graph6 << " [" << suite_name(r.suite) << "]";
            for (const auto& [key, value] : r.detail) out << " " << key << "=" << value;
            out << "\n";
        }
        if (report.counterexamples.size() > kListCap)
            out << "  ... " << (report.counterexamples.size() - kListCap) << " more\n";
    }
    if (report.wall_ms > 0) out << "wall time: " << report.wall_ms << " ms\n";
    out << "VIOLATIONS: " << report.total_violations() << "\n";
    return out.str();
}

inline void emit_report(const CorpusReport& report, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::json: out << report_to_json(report).dump(2) << "\n"; return;
        case ReportFormat::csv: out << report_to_csv(report); return;
        case ReportFormat::text: out << report_to_text(report); return;
    }
}

} // namespace qlap

#endif // QLAP_SEARCH_HPP
