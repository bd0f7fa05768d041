// brandtlab: Brandt matrices, theta series and Hecke eigenforms at prime level.

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "brandtlab/record.hpp"

namespace {

using namespace brandtlab;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct Flags {
    bool json = false;
    std::string cache_dir = "brandtlab-cache";
    std::uint64_t seed = 42;
    bool oracle = false;
    long max_oracle_level = kDefaultMaxOracleLevel;
    long coeffs = 0;
};

AnalysisOptions options_for(const Flags& f) {
    AnalysisOptions o;
    if (f.coeffs > 0) o.coefficient_bound = f.coeffs;
    o.seed = f.seed;
    o.oracle = f.oracle;
    o.max_oracle_level = f.max_oracle_level;
    return o;
}

std::string join(const std::vector<long>& v, const char* sep = " ") {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

std::string label_set(const std::vector<std::size_t>& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
    os << "}";
    return os.str();
}

void print_matrix(std::ostream& os, const std::string& name, const SmallIntMatrix& m) {
    os << name << " =\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "    [";
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << std::setw(3) << m(i, j);
        os << " ]\n";
    }
}

void print_report(std::ostream& os, const Analysis& a) {
    const auto& c = a.brandt;
    const auto& s = a.spectral;
    const auto& t = a.theta;
    const auto& alg = a.classes.order.algebra();
    os << "level N = " << c.level << "   algebra (" << alg.a << ", " << alg.b << ")   n = " << c.n
       << "   M = " << c.bound << "\n";
    os << "weights: " << join(c.weights) << "   mass " << a.classes.mass().get_str() << "\n\n";
    for (long m = 2; m <= std::min(c.bound, 5L); ++m) print_matrix(os, "B(" + std::to_string(m) + ")", c(m));
    print_matrix(os, "B(" + std::to_string(c.level) + ")", c.level_matrix);

    os << "\neigenforms (alpha_k(T_m), m = 1.." << c.bound << "; T_N last)\n";
    for (std::size_t k = 0; k < s.n; ++k) {
        os << "  f" << k + 1 << (s.is_cuspidal(k) ? "  " : "* ");
        for (long m = 1; m <= c.bound; ++m) os << " " << std::setw(10) << detail::format_real(s.alpha(k, m));
        os << "  | " << detail::format_real(s.alpha(k, c.level)) << "\n";
    }
    os << "  (* Eisenstein)\n\n";
    os << "class  dim  Sigma(i)\n";
    for (std::size_t i = 0; i < c.n; ++i)
        os << std::setw(5) << i + 1 << std::setw(5) << t.dims[i] << "  " << label_set(t.sigma[i]) << "\n";
    os << "dims multiset {" << join(t.dims_multiset(), ",") << "}   Hecke conjecture "
       << (t.hecke_conjecture_holds() ? "holds" : "fails") << "   rho = " << t.rho << "   field probe "
       << (t.field_verdict ? to_string(*t.field_verdict) : "-") << "\n\n";
    os << "checks\n";
    for (const auto& ch : a.checks)
        os << "  [" << (ch.passed ? "pass" : "FAIL") << "] " << ch.name << (ch.detail.empty() ? "" : "  (" + ch.detail + ")") << "\n";
    for (const auto& n : a.notes) os << "note: " << n << "\n";
}

int run_analyze(long level, const Flags& f) {
    const auto opt = options_for(f);
    Analysis a;
    try {
        a = analyze(level, opt);
    } catch (const Error& e) {
        std::cerr << "analyze " << level << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::invalid_argument || e.kind() == ErrorKind::insufficient_precision ? kExitUsage
                                                                                                        : kExitCheckFailure;
    }
    const Json record = to_record(a, opt);
    if (f.json) std::cout << record.dump(2) << "\n";
    else print_report(std::cout, a);
    try {
        const auto path = write_record(record, f.cache_dir);
        if (!f.json) std::cout << "record: " << path.string() << "\n";
    } catch (const Error& e) {
        std::cerr << "cache: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return a.passed() ? kExitPass : kExitCheckFailure;
}

struct SweepRow {
    long level = 0;
    bool ok = false;
    std::string error;
    Json record;
};

int run_sweep(long from, long to, const Flags& f) {
    std::vector<long> levels;
    for (long p = std::max(from, 2L); p <= to; ++p)
        if (is_prime(p)) levels.push_back(p);
    std::vector<SweepRow> rows(levels.size());
    const auto opt = options_for(f);
    std::atomic<std::size_t> next{0};
    std::mutex cache_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < levels.size(); k = next++) {
            SweepRow& row = rows[k];
            row.level = levels[k];
            try {
                const Analysis a = analyze(row.level, opt);
                row.record = to_record(a, opt);
                row.ok = a.passed();
                std::lock_guard lock(cache_mutex);
                write_record(row.record, f.cache_dir);
            } catch (const Error& e) {
                row.ok = false;
                row.error = std::string(to_string(e.kind())) + ": " + e.what();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool all_ok = true;
    Json summary = Json::array();
    if (!f.json) std::cout << "    N    n  dims                    Hecke  rho  field         checks\n";
    for (const auto& row : rows) {
        all_ok = all_ok && row.ok;
        if (!row.error.empty()) {
            if (f.json) summary.push_back(Json{{"level", row.level}, {"error", row.error}});
            else std::cout << std::setw(5) << row.level << "  error: " << row.error << "\n";
            continue;
        }
        const auto& t = row.record.at("theta");
        const auto dims = t.at("dims_multiset").get<std::vector<long>>();
        const std::string verdict = t.at("field_verdict").is_null() ? "-" : t.at("field_verdict").get<std::string>();
        const bool holds = t.at("hecke_conjecture_holds").get<bool>();
        if (f.json) {
            summary.push_back(Json{{"level", row.level},
                                   {"n", row.record.at("classes").at("n")},
                                   {"dims_multiset", dims},
                                   {"hecke_conjecture_holds", holds},
                                   {"rho", t.at("rho")},
                                   {"field_verdict", t.at("field_verdict")},
                                   {"passed", row.ok}});
        } else {
            std::cout << std::setw(5) << row.level << std::setw(5) << row.record.at("classes").at("n").get<long>() << "  "
                      << std::left << std::setw(22) << ("{" + join(dims, ",") + "}") << std::setw(7) << (holds ? "holds" : "FAILS")
                      << std::right << std::setw(4) << t.at("rho").get<long>() << "  " << std::left << std::setw(14) << verdict
                      << std::right << (row.ok ? "pass" : "FAIL") << "\n";
        }
    }
    if (f.json) std::cout << summary.dump(2) << "\n";
    return all_ok ? kExitPass : kExitCheckFailure;
}

int run_verify(const std::string& path, const Flags& f) {
    std::vector<CheckResult> checks;
    try {
        checks = verify_record(read_record(path));
    } catch (const Error& e) {
        std::cerr << "verify " << path << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
        return kExitCheckFailure;
    }
    const bool ok = all_passed(checks);
    if (f.json) {
        Json out{{"path", path}, {"passed", ok}, {"checks", detail::checks_json(checks)}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& c : checks)
            std::cout << "[" << (c.passed ? "pass" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
        std::cout << (ok ? "record verified" : "record FAILED verification") << "\n";
    }
    return ok ? kExitPass : kExitCheckFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brandt matrices and theta series of definite quaternion algebras at prime level"};
    app.require_subcommand(1);
    Flags f;
    app.add_flag("--json", f.json, "machine-readable output");
    app.add_option("--cache-dir", f.cache_dir, "directory for cached records")->capture_default_str();
    app.add_option("--seed", f.seed, "seed for the generic Hecke combination")->capture_default_str();
    app.add_flag("--oracle", f.oracle, "cross-check against supersingular j-invariants");
    app.add_option("--max-oracle-level", f.max_oracle_level, "largest level for the oracle")->capture_default_str();
    app.add_option("--coeffs", f.coeffs, "number of q-expansion coefficients M (default: Sturm bound + 2)");

    long level = 0, from = 0, to = 0;
    std::string path;
    auto* analyze_cmd = app.add_subcommand("analyze", "full analysis of one prime level");
    analyze_cmd->add_option("N", level, "prime level")->required();
    auto* sweep_cmd = app.add_subcommand("sweep", "summary over all primes in [A, B]");
    sweep_cmd->add_option("A", from, "lower end")->required();
    sweep_cmd->add_option("B", to, "upper end")->required();
    auto* verify_cmd = app.add_subcommand("verify", "re-check a cached record");
    verify_cmd->add_option("path", path, "record file")->required();
    for (auto* sub : {analyze_cmd, sweep_cmd, verify_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*analyze_cmd) {
            if (level < 2 || !is_prime(level)) {
                std::cerr << "analyze: " << level << " is not prime\n";
                return kExitUsage;
            }
            if (f.coeffs != 0 && f.coeffs < sturm_bound(level)) {
                std::cerr << "analyze: --coeffs " << f.coeffs << " is below the Sturm bound " << sturm_bound(level) << "\n";
                return kExitUsage;
            }
            return run_analyze(level, f);
        }
        if (*sweep_cmd) {
            if (from > to) {
                std::cerr << "sweep: empty range " << from << ".." << to << "\n";
                return kExitUsage;
            }
            return run_sweep(from, to, f);
        }
        return run_verify(path, f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}
