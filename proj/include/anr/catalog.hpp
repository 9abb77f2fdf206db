#pragma once

// Registry of numerical-radius inequalities as executable checks. Each check
// evaluates lhs <= rhs (or lhs == rhs) on a concrete frame and operand set and
// reports the slack together with every intermediate gauge it used.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anr/frame.hpp"
#include "anr/gauges.hpp"

namespace anr {

inline constexpr double kDefaultCheckTol = 1e-8;

enum class CheckKind { inequality, equality };

/// Hypotheses a check may require beyond T, X, Y, P, Q admitting A-adjoints.
enum Hypothesis : unsigned {
    kNoHypothesis = 0,
    kStrictlyPositive = 1u << 0,  // A > 0
    kNonzeroNorm = 1u << 1,       // ||T||_A != 0
    kSquareZero = 1u << 2,        // T^2 = 0
    kCubeZero = 1u << 3,          // T^3 = 0
    kIntegerOrPositive = 1u << 4, // exponent integral, or A > 0
};

struct CheckResult {
    std::string check_id;
    CheckKind kind = CheckKind::inequality;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;  // rhs - lhs, or -|rhs - lhs| for equalities
    double tol = kDefaultCheckTol;
    bool pass = true;
    bool hypothesis_met = true;
    std::map<std::string, double> metadata;
    std::map<std::string, std::string> notes;  // skip reason, error text

    bool skipped() const { return !hypothesis_met; }
    bool violated() const { return hypothesis_met && !pass; }
    /// slack / (1 + |rhs|), the scale-free quantity pass/fail is judged on.
    double relative_slack() const;
};

/// Pass/fail rule shared by every check.
bool check_passes(CheckKind kind, double lhs, double rhs, double tol, bool absolute = false);

struct CheckDef {
    std::string check_id;
    std::string family;                 // id up to the first ':'
    std::vector<std::string> operands;  // roles read from the operand map
    unsigned hypothesis = kNoHypothesis;
    std::string lhs_formula;
    std::string rhs_formula;
    CheckKind kind = CheckKind::inequality;
    double tol_floor = 0;        // effective tol = max(tol, tol_floor)
    bool absolute_tol = false;   // compare |rhs - lhs| without the (1 + |rhs|) scale
};

/// Operands by role (T, X, Y, P, Q). Missing X, Y default to T; P, Q to I.
using OperandMap = std::map<std::string, CMat>;

struct CheckParams {
    std::optional<double> r;      // exponent for the generic thm_power_r
    std::uint64_t seed = 0;       // sampling seed for lem_pointwise
    int pointwise_samples = 50;
    int sup_grid_points = 64;     // theta grid for lem_sup_theta
};

/// Every registered check, ordered by check_id. Ids are unique.
const std::vector<CheckDef>& registry();

const CheckDef* find_check(const std::string& check_id);

/// Atomic ids selected by `filter`: "all", an exact id, or a family name.
std::vector<std::string> select_checks(const std::string& filter);

/// Runs one check. Besides registry ids, accepts the generic "thm_power_r"
/// driven by params.r. Throws UnknownCheckId, NoAdjoint, UnsupportedExponent.
CheckResult run_check(const std::string& check_id, const Frame& f, const OperandMap& operands,
                      const CheckParams& params = {}, const SweepConfig& cfg = {}, double tol = kDefaultCheckTol);

/// Runs the selected checks (all when `ids` is empty) sharing one gauge cache.
/// Errors are captured per check as failed results; the batch never aborts.
std::vector<CheckResult> run_all(const Frame& f, const OperandMap& operands, const CheckParams& params = {},
                                 const SweepConfig& cfg = {}, double tol = kDefaultCheckTol,
                                 const std::vector<std::string>& ids = {});

} // namespace anr
