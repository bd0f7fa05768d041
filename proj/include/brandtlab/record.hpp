#ifndef BRANDTLAB_RECORD_HPP
#define BRANDTLAB_RECORD_HPP

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ss_oracle.hpp"
#include "theta_report.hpp"

namespace brandtlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct AnalysisOptions {
    std::optional<long> coefficient_bound;
    std::uint64_t seed = 42;
    bool oracle = false;
    long max_oracle_level = kDefaultMaxOracleLevel;
    bool probe_field = true;
};

struct Analysis {
    ClassList classes;
    BrandtCollection brandt;
    SpectralData spectral;
    ThetaReport theta;
    std::optional<SupersingularSet> oracle;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool passed() const { return all_passed(checks); }
};

/// Full pipeline for one prime level.
inline Analysis analyze(long level, const AnalysisOptions& opt = {}) {
    if (level < 2 || !is_prime(level)) fail(ErrorKind::invalid_argument, std::to_string(level) + " is not prime");
    const long bound = opt.coefficient_bound.value_or(default_coefficient_bound(level));
    if (bound < sturm_bound(level))
        fail(ErrorKind::insufficient_precision, "coefficient bound " + std::to_string(bound) + " is below the Sturm bound " +
                                                    std::to_string(sturm_bound(level)));
    Analysis a;
    const auto alg = construct_algebra(level);
    a.classes = enumerate_classes(construct_maximal_order(alg), level);
    a.brandt = compute_brandt(a.classes, bound);
    for (auto& c : structural_checks(a.brandt)) a.checks.push_back(std::move(c));
    a.spectral = eigendecompose(a.brandt, opt.seed);
    for (auto& c : spectral_checks(a.spectral, a.brandt)) a.checks.push_back(std::move(c));
    a.theta = build_theta_report(a.brandt, a.spectral, opt.probe_field);
    for (const auto& c : a.theta.checks) a.checks.push_back(c);
    for (const auto& n : a.theta.notes) a.notes.push_back(n);
    if (opt.oracle) {
        if (level > opt.max_oracle_level) {
            a.notes.push_back("supersingular oracle skipped above level " + std::to_string(opt.max_oracle_level));
        } else {
            a.oracle = supersingular_set(level);
            try {
                for (auto& c : cross_validate(*a.oracle, a.brandt)) a.checks.push_back(std::move(c));
            } catch (const Error& e) {
                a.checks.push_back({"supersingular_oracle", false, e.what()});
            }
        }
    }
    return a;
}

namespace detail {

inline std::string format_real(double x) {
    if (std::abs(x) < 1e-10) x = 0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string format_residual(double x) { return format_sci(x); }

inline std::string rational_pq(Rational r) {
    r.canonicalize();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Json lattice_json(const QuatLattice& lat) {
    Int den = 1;
    for (const auto& e : lat.basis())
        for (std::size_t t = 0; t < 4; ++t) den = lcm(den, Int(e[t].get_den()));
    Json rows = Json::array();
    for (const auto& e : lat.basis()) {
        Json row = Json::array();
        for (std::size_t t = 0; t < 4; ++t) row.push_back(Int(e[t] * den).get_str());
        rows.push_back(row);
    }
    return Json{{"denominator", den.get_str()}, {"basis", rows}};
}

inline Json matrix_json(const SmallIntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline SmallIntMatrix matrix_from_json(const Json& rows, std::size_t n) {
    if (!rows.is_array() || rows.size() != n) fail(ErrorKind::schema_mismatch, "matrix has the wrong number of rows");
    SmallIntMatrix m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) fail(ErrorKind::schema_mismatch, "matrix row has the wrong length");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j].get<long long>();
    }
    return m;
}

template <class C>
Json one_based(const C& labels) {
    Json out = Json::array();
    for (auto k : labels) out.push_back(k + 1);
    return out;
}

inline Json checks_json(const std::vector<CheckResult>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return out;
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

/// Self-describing record. Everything but generated_at is a function of
/// (level, bound, seed, options).
inline Json to_record(const Analysis& a, const AnalysisOptions& opt) {
    const auto& c = a.brandt;
    const auto& s = a.spectral;
    const auto& t = a.theta;
    Json r;
    r["schema_version"] = kSchemaVersion;
    r["tool_version"] = kToolVersion;
    r["generated_at"] = detail::utc_timestamp();
    r["level"] = c.level;
    r["seed"] = opt.seed;
    r["coefficient_bound"] = c.bound;
    r["weights"] = c.weights;
    r["algebra"] = Json{{"a", a.classes.order.algebra().a}, {"b", a.classes.order.algebra().b}};
    r["order"] = detail::lattice_json(a.classes.order.lattice());

    Json ideals = Json::array();
    for (const auto& i : a.classes.ideals) {
        Json e = detail::lattice_json(i.lattice());
        e["norm"] = detail::rational_pq(i.norm());
        ideals.push_back(e);
    }
    r["classes"] = Json{{"n", c.n},
                        {"weights", c.weights},
                        {"mass", detail::rational_pq(a.classes.mass())},
                        {"neighbor_primes", a.classes.neighbor_primes},
                        {"ideals", ideals}};

    Json b0 = Json::array();
    for (std::size_t i = 0; i < c.n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < c.n; ++j) row.push_back(detail::rational_pq(c.b0(i, j)));
        b0.push_back(row);
    }
    Json mats = Json::array();
    for (long m = 1; m <= c.bound; ++m) mats.push_back(Json{{"m", m}, {"matrix", detail::matrix_json(c(m))}});
    r["brandt"] = Json{{"b0", b0}, {"matrices", mats}, {"level_matrix", detail::matrix_json(c.level_matrix)}};

    Json forms = Json::array();
    for (std::size_t k = 0; k < s.n; ++k) {
        Json chars = Json::array();
        for (long m = 1; m <= s.bound; ++m) chars.push_back(detail::format_real(s.alpha(k, m)));
        Json fp = Json::object();
        for (long p = 2; p <= s.bound; ++p)
            if (is_prime(p) && p != s.level) fp[std::to_string(p)] = detail::format_real(s.alpha(k, p));
        Json vec = Json::array();
        for (std::size_t i = 0; i < s.n; ++i) vec.push_back(detail::format_real(s.eigenvectors(i, k)));
        forms.push_back(Json{{"label", k + 1},
                             {"cuspidal", s.is_cuspidal(k)},
                             {"characters", chars},
                             {"level_character", detail::format_real(s.alpha(k, s.level))},
                             {"fingerprint", fp},
                             {"eigenvector", vec}});
    }
    Json combo = Json::array();
    for (const auto& [p, cp] : s.combination) combo.push_back(Json::array({p, cp}));
    r["spectral"] = Json{{"combination", combo},
                         {"eisenstein_label", s.eisenstein_index + 1},
                         {"diagonalization_residual", detail::format_residual(s.residual)},
                         {"orthonormality_residual", detail::format_residual(s.orthonormality_residual)},
                         {"eigenforms", forms}};

    Json sigma = Json::array();
    for (const auto& set : t.sigma) sigma.push_back(detail::one_based(set));
    Json tols = Json::array();
    for (double tol : t.sigma_tolerance) tols.push_back(detail::format_residual(tol));
    r["theta"] = Json{{"dims", t.dims},
                      {"dims_multiset", t.dims_multiset()},
                      {"sigma", sigma},
                      {"sigma_tolerance", tols},
                      {"hecke_conjecture_holds", t.hecke_conjecture_holds()},
                      {"rho", t.rho},
                      {"frobenius_fixed", detail::one_based(t.frobenius_fixed)},
                      {"span_rank", t.span_rank},
                      {"field_verdict", t.field_verdict ? Json(to_string(*t.field_verdict)) : Json(nullptr)},
                      {"expansion_residual", detail::format_residual(t.max_expansion_residual)},
                      {"eigenform_residual", detail::format_residual(t.max_eigenform_residual)}};

    if (a.oracle) {
        Json js = Json::array();
        for (const auto& [x, y] : a.oracle->j_list) js.push_back(Json::array({x, y}));
        r["oracle"] = Json{{"nonresidue", a.oracle->nonresidue}, {"j_list", js}, {"rational_count", a.oracle->rational_count}};
    }
    r["notes"] = a.notes;
    r["checks"] = detail::checks_json(a.checks);
    r["passed"] = a.passed();
    return r;
}

inline std::string record_filename(long level) { return "level_" + std::to_string(level) + ".json"; }

inline std::filesystem::path write_record(const Json& record, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::io, "cannot create cache directory " + dir.string() + ": " + ec.message());
    const auto path = dir / record_filename(record.at("level").get<long>());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::io, "cannot write " + tmp);
        out << record.dump(2) << '\n';
        if (!out) fail(ErrorKind::io, "write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(ErrorKind::io, "cannot move record into place: " + ec.message());
    return path;
}

inline Json read_record(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::io, "malformed record " + path.string() + ": " + e.what());
    }
}

/// Rebuilds the Brandt collection stored in a record.
inline BrandtCollection brandt_from_record(const Json& r) {
    BrandtCollection c;
    c.level = r.at("level").get<long>();
    c.n = r.at("classes").at("n").get<std::size_t>();
    c.weights = r.at("classes").at("weights").get<std::vector<long>>();
    c.bound = r.at("coefficient_bound").get<long>();
    if (c.weights.size() != c.n) fail(ErrorKind::schema_mismatch, "weights do not match n");
    const auto& b = r.at("brandt");
    c.b0 = RatMatrix(c.n, c.n);
    const auto& b0 = b.at("b0");
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = 0; j < c.n; ++j) c.b0(i, j) = parse_rational(b0.at(i).at(j).get<std::string>());
    const auto& mats = b.at("matrices");
    if (mats.size() != static_cast<std::size_t>(c.bound)) fail(ErrorKind::schema_mismatch, "record holds the wrong number of Brandt matrices");
    for (long m = 1; m <= c.bound; ++m) {
        const auto& e = mats.at(static_cast<std::size_t>(m - 1));
        if (e.at("m").get<long>() != m) fail(ErrorKind::schema_mismatch, "Brandt matrices out of order");
        c.matrices.push_back(detail::matrix_from_json(e.at("matrix"), c.n));
    }
    c.level_matrix = detail::matrix_from_json(b.at("level_matrix"), c.n);
    return c;
}

/// Re-checks a cached record from its stored data alone: the exact Brandt
/// identities, the Eisenstein vector, exact dimensions and span rank, the
/// Atkin-Lehner bound and the stored ledger.
inline std::vector<CheckResult> verify_record(const Json& r) {
    if (!r.contains("schema_version") || !r.at("schema_version").is_number_integer())
        fail(ErrorKind::schema_mismatch, "record has no schema_version; migration required");
    const int version = r.at("schema_version").get<int>();
    if (version != kSchemaVersion)
        fail(ErrorKind::schema_mismatch, "record schema_version " + std::to_string(version) + " differs from supported version " +
                                             std::to_string(kSchemaVersion) + "; migration required");
    std::vector<CheckResult> out;
    try {
        const BrandtCollection c = brandt_from_record(r);
        out = structural_checks(c);
        out.push_back({"weights_consistent", r.at("weights").get<std::vector<long>>() == c.weights, "top-level weights match class data"});

        bool eis = true;
        std::string eis_detail = "B(m) v = sigma(m)_N v with v_i = 1/w_i";
        try {
            eisenstein_vector(c.weights, &c);
        } catch (const Error& e) {
            eis = false;
            eis_detail = e.what();
        }
        out.push_back({"eisenstein_vector", eis, eis_detail});

        const auto& t = r.at("theta");
        const auto dims = t.at("dims").get<std::vector<long>>();
        bool dims_ok = dims.size() == c.n;
        for (std::size_t i = 0; i < c.n && dims_ok; ++i)
            if (dim_theta_exact(c, i) != dims[i]) dims_ok = false;
        out.push_back({"stored_dims", dims_ok, "stored dim Theta_i agree with exact ranks"});

        const auto& sigma = t.at("sigma");
        bool sigma_ok = sigma.size() == c.n;
        for (std::size_t i = 0; i < c.n && sigma_ok; ++i)
            if (static_cast<long>(sigma.at(i).size()) != dims[i]) sigma_ok = false;
        out.push_back({"sigma_matches_exact_dim", sigma_ok, "|Sigma(i)| = dim Theta_i"});

        const long span = theta_span_rank(c);
        out.push_back({"theta_span", span == static_cast<long>(c.n) && t.at("span_rank").get<long>() == span,
                       "rank " + std::to_string(span)});

        const long rho = t.at("rho").get<long>();
        bool al = dims_ok;
        for (std::size_t i : frobenius_fixed_points(c))
            if (al && static_cast<long>(c.n) - dims[i] < rho) al = false;
        out.push_back({"atkin_lehner_bound", al, "rho = " + std::to_string(rho)});

        bool ledger = r.at("passed").get<bool>();
        std::string failed;
        for (const auto& e : r.at("checks"))
            if (!e.at("passed").get<bool>()) {
                ledger = false;
                failed += " " + e.at("name").get<std::string>();
            }
        out.push_back({"recorded_ledger", ledger, failed.empty() ? "all recorded checks passed" : "failed:" + failed});
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::schema_mismatch, std::string("record does not match schema: ") + e.what());
    }
    return out;
}

} // namespace brandtlab

#endif // BRANDTLAB_RECORD_HPP
