#pragma once

// Instance generation, seeded fuzzing, sharpness scans, the hard-coded
// reproduction set, and the flat-file formats for instances and reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "anr/catalog.hpp"

namespace anr {

inline constexpr const char* kToolVersion = "0.1.0";

struct Instance {
    int dim = 0;
    CMat A;
    std::map<std::string, CMat> operators;  // keys among T, X, Y, P, Q
    std::uint64_t seed = 0;
    std::string note;
};

/// Builds the frame and checks every operator is dim x dim, finite and A-adjointable.
/// Throws InvalidInput, NotHermitian, NotPSD, DimensionMismatch or NoAdjoint.
Frame validate_instance(const Instance& inst, double rank_tol = kDefaultRankTol);

/// Random PSD matrix of exact numerical rank `rank`, eigenvalues in [1e-3, 1e3].
CMat gen_psd(int n, int rank, std::uint64_t seed);

/// Random operator leaving N(A) invariant, hence A-adjointable.
CMat gen_compatible(const Frame& f, std::uint64_t seed);

/// Operator whose reduced form is nilpotent. With `square_zero` its literal square vanishes.
CMat gen_nilpotent(const Frame& f, std::uint64_t seed, bool square_zero);

/// A-normal operator whose reduced eigenvalues lie on one ray from 0;
/// with `equal_moduli` they coincide (a multiple of the identity on R(A)).
CMat gen_ray_normal(const Frame& f, std::uint64_t seed, bool equal_moduli);

enum class RankPolicy { full, mixed, degenerate_heavy };
enum class Bias { none, nilpotent, normal };

RankPolicy parse_rank_policy(const std::string& s);
Bias parse_bias(const std::string& s);
std::string to_string(RankPolicy p);
std::string to_string(Bias b);

struct FuzzConfig {
    int n_min = 2;
    int n_max = 6;
    RankPolicy rank_policy = RankPolicy::mixed;
    int trials = 100;
    std::uint64_t master_seed = 0;
    double tol = kDefaultCheckTol;
    std::string checks = "all";
    bool force_identity = false;  // A = I in every trial
    Bias bias = Bias::none;       // shapes T only
    int top_k = 0;                // near-equality cases kept per check
    unsigned jobs = 1;
    SweepConfig sweep;

    void validate(bool allow_zero_trials) const;
};

/// Instance of trial `index`: everything derives from child_seed(master_seed, index).
Instance generate_trial(const FuzzConfig& cfg, int index);

struct ReportRow {
    int trial = 0;
    std::uint64_t seed = 0;
    std::string check_id;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
    bool pass = true;
    bool skipped = false;
    std::string note;  // skip reason or error text
};

struct CheckSummary {
    std::string check_id;
    int evaluated = 0;
    int violations = 0;
    int skipped = 0;
    int errors = 0;
    std::optional<double> min_slack;
    std::optional<double> min_rel_slack;
    std::optional<int> sharpest_trial;
    std::uint64_t sharpest_seed = 0;
    std::vector<std::pair<std::uint64_t, double>> top;  // (seed, relative slack), ascending
};

struct Report {
    std::string tool_version = kToolVersion;
    std::uint64_t master_seed = 0;
    int trials = 0;
    std::vector<ReportRow> rows;  // ordered by (trial, check_id)
    std::vector<CheckSummary> summary;

    int violations() const;
    int skipped() const;
};

Report fuzz(const FuzzConfig& cfg);

/// fuzz with top_k (default 10) near-equality instances per check; 0 trials gives an empty report.
Report scan_sharpness(FuzzConfig cfg);

/// Recomputes the hard-coded worked examples. Throws ReproMismatch naming the quantity that disagrees.
Report repro_examples(double tol = 1e-9);

/// Aggregates rows into per-check summaries.
std::vector<CheckSummary> summarize(const std::vector<ReportRow>& rows, int top_k);

// Wire format: complex numbers as [re, im], matrices as row-major nested arrays.
nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j, const std::string& what);
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);
nlohmann::json report_to_json(const Report& r);
std::string report_to_csv(const Report& r);

} // namespace anr
