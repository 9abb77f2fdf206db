#include "anr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "anr/adjoint.hpp"
#include "anr/rng.hpp"

namespace anr {

Frame validate_instance(const Instance& inst, double rank_tol) {
    if (inst.dim < 0) throw Error(ErrorCode::InvalidInput, "dim must be non-negative");
    if (inst.A.rows() != inst.dim || inst.A.cols() != inst.dim)
        throw Error(ErrorCode::DimensionMismatch, "A must be dim x dim");
    Frame f = new_frame(inst.A, rank_tol);
    if (inst.operators.find("T") == inst.operators.end())
        throw Error(ErrorCode::InvalidInput, "instance has no operator T");
    for (const auto& [name, m] : inst.operators) {
        if (name != "T" && name != "X" && name != "Y" && name != "P" && name != "Q")
            throw Error(ErrorCode::InvalidInput, "unknown operator '" + name + "'");
        if (m.rows() != inst.dim || m.cols() != inst.dim)
            throw Error(ErrorCode::DimensionMismatch, "operator " + name + " must be dim x dim");
        require_finite(m, ("operator " + name).c_str());
        if (!admits_a_adjoint(f, m)) throw Error(ErrorCode::NoAdjoint, "operator " + name + " has no A-adjoint");
    }
    return f;
}

CMat gen_psd(int n, int rank, std::uint64_t seed) {
    if (n < 0 || rank < 0 || rank > n)
        throw Error(ErrorCode::BadRank, "rank " + std::to_string(rank) + " outside [0, " + std::to_string(n) + "]");
    CMat a = CMat::Zero(n, n);
    if (rank == 0) return a;
    Rng rng(seed);
    const CMat g = rng.gaussian(n, rank);
    Eigen::JacobiSVD<CMat> svd(g, Eigen::ComputeThinU);
    const CMat& u = svd.matrixU();
    RVec lam(rank);
    for (int k = 0; k < rank; ++k) lam(k) = std::clamp(svd.singularValues()(k) * svd.singularValues()(k), 1e-3, 1e3);
    a = u * lam.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    return hermitian_part(a);
}

namespace {

/// Orthonormal basis [range | null] of the frame.
CMat frame_basis(const Frame& f) {
    CMat w(f.dim(), f.dim());
    w << f.rangeU(), f.nullU();
    return w;
}

} // namespace

CMat gen_compatible(const Frame& f, std::uint64_t seed) {
    Rng rng(seed);
    const auto n = f.dim(), r = f.rank();
    CMat m = rng.gaussian(n, n);
    if (r == 0 || r == n) return m;
    m.block(0, r, r, n - r).setZero();
    const CMat w = frame_basis(f);
    return w * m * w.adjoint();
}

CMat gen_nilpotent(const Frame& f, std::uint64_t seed, bool square_zero) {
    Rng rng(seed);
    const auto r = f.rank();
    if (r == 0) return CMat::Zero(f.dim(), f.dim());
    CMat core = CMat::Zero(r, r);
    if (square_zero) {
        if (r >= 2) {
            // u v* with v orthogonal to u
            const CMat q = random_unitary(rng, r);
            core = rng.uniform(0.2, 3.0) * q.col(0) * q.col(1).adjoint();
        }
    } else {
        core = rng.gaussian(r, r).triangularView<Eigen::StrictlyUpper>();
    }
    const CMat v = random_unitary(rng, r);
    return lift(f, ReducedOp<double>{v * core * v.adjoint(), f.dim()});
}

CMat gen_ray_normal(const Frame& f, std::uint64_t seed, bool equal_moduli) {
    Rng rng(seed);
    const auto r = f.rank();
    if (r == 0) return CMat::Zero(f.dim(), f.dim());
    const std::complex<double> phase = std::polar(1.0, rng.uniform(0, 2 * std::numbers::pi));
    const double base = rng.uniform(0.5, 2.0);
    CVec d(r);
    for (Eigen::Index k = 0; k < r; ++k) d(k) = phase * (equal_moduli ? base : rng.uniform(0.2, 2.0));
    const CMat v = random_unitary(rng, r);
    return lift(f, ReducedOp<double>{v * d.asDiagonal() * v.adjoint(), f.dim()});
}

RankPolicy parse_rank_policy(const std::string& s) {
    if (s == "full") return RankPolicy::full;
    if (s == "mixed") return RankPolicy::mixed;
    if (s == "degenerate-heavy" || s == "degenerate_heavy") return RankPolicy::degenerate_heavy;
    throw Error(ErrorCode::InvalidInput, "unknown rank policy '" + s + "'");
}

Bias parse_bias(const std::string& s) {
    if (s == "none") return Bias::none;
    if (s == "nilpotent") return Bias::nilpotent;
    if (s == "normal") return Bias::normal;
    throw Error(ErrorCode::InvalidInput, "unknown bias '" + s + "'");
}

std::string to_string(RankPolicy p) {
    switch (p) {
        case RankPolicy::full: return "full";
        case RankPolicy::mixed: return "mixed";
        case RankPolicy::degenerate_heavy: return "degenerate-heavy";
    }
    return "?";
}

std::string to_string(Bias b) {
    switch (b) {
        case Bias::none: return "none";
        case Bias::nilpotent: return "nilpotent";
        case Bias::normal: return "normal";
    }
    return "?";
}

void FuzzConfig::validate(bool allow_zero_trials) const {
    if (n_min < 1 || n_max < n_min) throw Error(ErrorCode::InvalidInput, "need 1 <= n_min <= n_max");
    if (trials < 0 || (trials == 0 && !allow_zero_trials)) throw Error(ErrorCode::InvalidInput, "trials must be >= 1");
    if (!(tol >= 0)) throw Error(ErrorCode::InvalidInput, "tol must be >= 0");
    if (top_k < 0) throw Error(ErrorCode::InvalidInput, "top must be >= 0");
    sweep.validate();
}

Instance generate_trial(const FuzzConfig& cfg, int index) {
    Instance inst;
    inst.seed = child_seed(cfg.master_seed, std::uint64_t(index));
    Rng rng(inst.seed);
    const int n = int(rng.integer(cfg.n_min, cfg.n_max));
    int rank = n;
    switch (cfg.rank_policy) {
        case RankPolicy::full: break;
        case RankPolicy::mixed: rank = int(rng.integer(1, n)); break;
        case RankPolicy::degenerate_heavy: rank = int(rng.integer(1, std::max(1, n / 2))); break;
    }
    inst.dim = n;
    const std::uint64_t a_seed = rng.next();
    inst.A = cfg.force_identity ? CMat::Identity(n, n) : gen_psd(n, rank, a_seed);
    const Frame f = new_frame(inst.A);
    for (const char* name : {"T", "X", "Y", "P", "Q"}) inst.operators[name] = gen_compatible(f, rng.next());
    const std::uint64_t bias_seed = rng.next();
    const bool flavour = rng.uniform() < 0.5;
    if (cfg.bias == Bias::nilpotent) inst.operators["T"] = gen_nilpotent(f, bias_seed, flavour || f.rank() == 2);
    if (cfg.bias == Bias::normal) inst.operators["T"] = gen_ray_normal(f, bias_seed, flavour);
    inst.note = "trial " + std::to_string(index) + ", rank " + std::to_string(f.rank());
    return inst;
}

int Report::violations() const {
    return int(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.pass && !r.skipped; }));
}

int Report::skipped() const {
    return int(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.skipped; }));
}

std::vector<CheckSummary> summarize(const std::vector<ReportRow>& rows, int top_k) {
    std::map<std::string, CheckSummary> by_id;
    std::map<std::string, std::vector<std::pair<double, const ReportRow*>>> ranked;
    for (const auto& row : rows) {
        auto& s = by_id[row.check_id];
        s.check_id = row.check_id;
        if (row.skipped) {
            ++s.skipped;
            continue;
        }
        ++s.evaluated;
        if (!row.pass) ++s.violations;
        if (!std::isfinite(row.slack)) {
            ++s.errors;
            continue;
        }
        const double rel = row.slack / (1.0 + std::abs(row.rhs));
        if (!s.min_slack || row.slack < *s.min_slack) s.min_slack = row.slack;
        if (!s.min_rel_slack || rel < *s.min_rel_slack) {
            s.min_rel_slack = rel;
            s.sharpest_trial = row.trial;
            s.sharpest_seed = row.seed;
        }
        ranked[row.check_id].emplace_back(rel, &row);
    }
    std::vector<CheckSummary> out;
    for (auto& [id, s] : by_id) {
        auto& list = ranked[id];
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int k = 0; k < top_k && k < int(list.size()); ++k) s.top.emplace_back(list[k].second->seed, list[k].first);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::vector<ReportRow> run_trial(const FuzzConfig& cfg, int index, const std::vector<std::string>& ids) {
    std::vector<ReportRow> rows;
    const std::uint64_t seed = child_seed(cfg.master_seed, std::uint64_t(index));
    try {
        const Instance inst = generate_trial(cfg, index);
        const Frame f = validate_instance(inst);
        CheckParams params;
        params.seed = inst.seed;
        for (const auto& res : run_all(f, inst.operators, params, cfg.sweep, cfg.tol, ids)) {
            ReportRow row;
            row.trial = index;
            row.seed = seed;
            row.check_id = res.check_id;
            row.lhs = res.lhs;
            row.rhs = res.rhs;
            row.slack = res.slack;
            row.pass = res.pass;
            row.skipped = res.skipped();
            if (auto it = res.notes.find("skip_reason"); it != res.notes.end()) row.note = it->second;
            if (auto it = res.notes.find("error"); it != res.notes.end()) row.note = it->second;
            rows.push_back(std::move(row));
        }
    } catch (const std::exception& ex) {
        rows.clear();
        for (const auto& id : ids) {
            ReportRow row;
            row.trial = index;
            row.seed = seed;
            row.check_id = id;
            row.lhs = row.rhs = row.slack = std::numeric_limits<double>::quiet_NaN();
            row.pass = false;
            row.note = ex.what();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace

Report fuzz(const FuzzConfig& cfg) {
    cfg.validate(false);
    const auto ids = select_checks(cfg.checks);
    std::vector<std::vector<ReportRow>> per_trial(cfg.trials);
    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, unsigned(cfg.trials)));
    if (jobs == 1) {
        for (int i = 0; i < cfg.trials; ++i) per_trial[i] = run_trial(cfg, i, ids);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (int i = next++; i < cfg.trials; i = next++) per_trial[i] = run_trial(cfg, i, ids);
            });
        for (auto& t : pool) t.join();
    }
    Report rep;
    rep.master_seed = cfg.master_seed;
    rep.trials = cfg.trials;
    for (auto& rows : per_trial)
        for (auto& row : rows) rep.rows.push_back(std::move(row));
    rep.summary = summarize(rep.rows, cfg.top_k);
    return rep;
}

Report scan_sharpness(FuzzConfig cfg) {
    cfg.validate(true);
    if (cfg.top_k == 0) cfg.top_k = 10;
    if (cfg.trials == 0) {
        select_checks(cfg.checks);
        Report rep;
        rep.master_seed = cfg.master_seed;
        return rep;
    }
    return fuzz(cfg);
}

namespace {

void expect(std::vector<ReportRow>& rows, int example, const std::string& quantity, double got, double want,
            double tol) {
    ReportRow row;
    row.trial = example;
    row.check_id = quantity;
    row.lhs = got;
    row.rhs = want;
    row.slack = -std::abs(got - want);
    row.pass = std::abs(got - want) <= tol;
    rows.push_back(row);
    if (!row.pass)
        throw Error(ErrorCode::ReproMismatch, quantity + ": got " + std::to_string(got) + ", expected " +
                                                  std::to_string(want));
}

CMat real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    CMat m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

} // namespace

Report repro_examples(double tol) {
    Report rep;
    rep.trials = 3;
    auto& rows = rep.rows;

    {
        const Frame f = new_frame(real_matrix({{0, 0}, {0, 1}}));
        const CMat t = real_matrix({{0, 1}, {1, 0}});
        expect(rows, 0, "no_adjoint:admits_a_adjoint", admits_a_adjoint(f, t) ? 1.0 : 0.0, 0.0, 0.0);
    }
    {
        const Frame f = new_frame(CMat(CMat::Identity(3, 3)));
        const OperandMap ops{{"T", real_matrix({{0, 1, 0}, {0, 0, 2}, {0, 0, 0}})}};
        const auto res = run_check("thm_refined_fourth", f, ops);
        expect(rows, 1, "refined_fourth:rhs", res.rhs, 39.0 / 16.0, tol);
        expect(rows, 1, "refined_fourth:comparison", res.metadata.at("zamani_rhs"), 49.0 / 16.0, tol);
        expect(rows, 1, "refined_fourth:w_A(T^2)", res.metadata.at("w_A(T^2)"), 1.0, tol);
        expect(rows, 1, "refined_fourth:w_A(T^2P+PT^2)", res.metadata.at("w_A(T^2P+PT^2)"), 5.0, tol);
        expect(rows, 1, "refined_fourth:||P||_A", res.metadata.at("||P||_A"), 5.0, tol);
    }
    {
        const Frame f = new_frame(CMat(CMat::Identity(3, 3)));
        const OperandMap ops{{"T", real_matrix({{0, 2, 0}, {0, 0, 0}, {0, 0, 1}})}};
        const auto res = run_check("thm_cubic", f, ops);
        expect(rows, 2, "cubic_remark:w_A(T)", res.metadata.at("w_A(T)"), 1.0, tol);
        expect(rows, 2, "cubic_remark:half_sqrt_norm", res.metadata.at("half_sqrt_norm"), 1.0, tol);
        expect(rows, 2, "cubic_remark:||T^2||_F", res.metadata.at("||T^2||_F"), 1.0, tol);
        expect(rows, 2, "cubic_remark:equality_without_nilpotency", res.metadata.at("equality_without_nilpotency"),
               1.0, 0.0);
    }
    rep.summary = summarize(rep.rows, 0);
    return rep;
}

} // namespace anr
